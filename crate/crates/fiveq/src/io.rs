//! State files: exact JSON serialization of [`PureState5`].
//!
//! The on-disk format is a single JSON object
//!
//! ```json
//! {
//!   "radicand": 2,
//!   "amplitudes": {
//!     "11111": { "a": "0", "b": "1" },
//!     "00001": { "a": "1/2" }
//!   }
//! }
//! ```
//!
//! where each amplitude is `a + b*sqrt(radicand)`, `a` and `b` are exact
//! fraction strings (optional sign, optional `/denominator`), keys are 5-bit
//! strings matching `^[01]{5}$` (first character = first tensor factor), and
//! omitted keys or fields are zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_qrat, q_is_zero, qrat_string, QRat, QuadExt, Scalar};
use crate::state::PureState5;
use crate::vars::{amp_index, NUM_AMPLITUDES};

#[derive(Debug, Serialize, Deserialize)]
struct AmplitudeEntry {
    #[serde(default = "zero_string", skip_serializing_if = "is_zero_string")]
    a: String,
    #[serde(default = "zero_string", skip_serializing_if = "is_zero_string")]
    b: String,
}

fn zero_string() -> String {
    "0".to_owned()
}

#[allow(clippy::ptr_arg)]
fn is_zero_string(s: &String) -> bool {
    s == "0"
}

#[derive(Debug, Serialize, Deserialize)]
struct StateFile {
    radicand: u64,
    amplitudes: BTreeMap<String, AmplitudeEntry>,
}

fn parse_bits(key: &str) -> Result<usize> {
    if key.len() != 5 || !key.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::StateFile(format!(
            "amplitude key {key:?} is not a 5-character bitstring"
        )));
    }
    let bits: [u8; 5] = std::array::from_fn(|i| key.as_bytes()[i] - b'0');
    Ok(amp_index(bits))
}

fn parse_fraction(key: &str, field: &str, text: &str) -> Result<QRat> {
    parse_qrat(text).map_err(|e| {
        Error::StateFile(format!(
            "amplitude {key}: field {field:?} is not an exact fraction ({e})"
        ))
    })
}

/// Parse a state from JSON text.
pub fn state_from_json(text: &str) -> Result<PureState5> {
    let file: StateFile = serde_json::from_str(text)
        .map_err(|e| Error::StateFile(format!("invalid state JSON: {e}")))?;
    let mut amps = vec![QuadExt::zero(); NUM_AMPLITUDES];
    for (key, entry) in &file.amplitudes {
        let index = parse_bits(key)?;
        let a = parse_fraction(key, "a", &entry.a)?;
        let b = parse_fraction(key, "b", &entry.b)?;
        amps[index] = QuadExt::new(a, b, file.radicand)?;
    }
    PureState5::from_amplitudes(amps)
}

/// Render a state as canonical JSON text (sorted keys, zero amplitudes
/// omitted, trailing newline).
pub fn state_to_json(psi: &PureState5) -> String {
    let mut amplitudes = BTreeMap::new();
    for (index, amp) in psi.amplitudes().iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        let mut key = String::with_capacity(5);
        for bit in (0..5).rev() {
            let _ = write!(key, "{}", (index >> bit) & 1);
        }
        amplitudes.insert(
            key,
            AmplitudeEntry {
                a: qrat_string(amp.rat_part()),
                b: if q_is_zero(amp.surd_part()) {
                    zero_string()
                } else {
                    qrat_string(amp.surd_part())
                },
            },
        );
    }
    let file = StateFile {
        radicand: psi.radicand(),
        amplitudes,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("in-memory serialization");
    text.push('\n');
    text
}

/// Load a state from a JSON file.
pub fn load_state(path: impl AsRef<Path>) -> Result<PureState5> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.as_ref().display())))?;
    state_from_json(&text)
}

/// Write a state to a JSON file in canonical form.
pub fn save_state(path: impl AsRef<Path>, psi: &PureState5) -> Result<()> {
    std::fs::write(path.as_ref(), state_to_json(psi))
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.as_ref().display())))?;
    Ok(())
}
