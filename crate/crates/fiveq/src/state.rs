//! Five-qubit pure states and the local unimodular group action.
//!
//! A state is the exact coefficient tensor `A[i1 i2 i3 i4 i5]` of
//! `|psi> = sum A[i...] |i1 i2 i3 i4 i5>`, with entries in a single quadratic
//! extension `Q(sqrt(n))`.  The group of five-tuples of determinant-one 2x2
//! matrices acts slot by slot:
//!
//! ```text
//! A'[i1..i5] = sum_j  g1[i1][j1] ... g5[i5][j5] A[j1..j5]
//! ```
//!
//! Working over the *rational* points of the group is enough for every claim
//! in this crate: the polynomial identities being tested are Zariski-closed
//! conditions, and exactness is what makes the zero tests meaningful.
//!
//! The module also houses the four benchmark states `Phi_1..Phi_4` (in
//! unnormalized integer/surd form — every implemented claim is scale-free)
//! and the nine-row covariant fingerprint that separates their orbits.

use crate::error::{Error, Result};
use crate::scalar::{q_is_zero, q_one, q_zero, qint, QRat, QuadExt, Scalar};
use crate::transvect;
use crate::vars::{amp_index, NUM_AMPLITUDES, NUM_SLOTS};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// A 2x2 matrix of exact rationals, row-major.
pub type Mat2 = [[QRat; 2]; 2];

/// Determinant of a 2x2 rational matrix.
pub fn det2(m: &Mat2) -> QRat {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// The identity 2x2 matrix.
pub fn mat2_identity() -> Mat2 {
    [[q_one(), q_zero()], [q_zero(), q_one()]]
}

/// Product of two 2x2 rational matrices.
pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[q_zero(), q_zero()], [q_zero(), q_zero()]];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        }
    }
    out
}

/// The unimodular matrix `[[1,b],[0,1]] * [[1,0],[c,1]] * [[1,b'],[0,1]]`.
///
/// Products of elementary shears have determinant exactly 1 by construction,
/// and generic choices of `(b, c, b')` reach a dense subset of SL(2, Q).
pub fn sl2_from_shears(b: &QRat, c: &QRat, bp: &QRat) -> Mat2 {
    let upper = |t: &QRat| -> Mat2 { [[q_one(), t.clone()], [q_zero(), q_one()]] };
    let lower: Mat2 = [[q_one(), q_zero()], [c.clone(), q_one()]];
    mat2_mul(&mat2_mul(&upper(b), &lower), &upper(bp))
}

/// A deterministic RNG for the given seed; all "random" data in the crate is
/// drawn through this, so every experiment is reproducible from its seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`.
fn random_qrat(rng: &mut impl Rng, bound: i64) -> QRat {
    debug_assert!(bound >= 1);
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    QRat::new(num.into(), den.into())
}

/// A random element of SL(2, Q) with determinant exactly 1, built from three
/// elementary shears with entries bounded by `bound`.
pub fn random_sl2(rng: &mut impl Rng, bound: i64) -> Mat2 {
    assert!(bound >= 1, "bound must be at least 1");
    let b = random_qrat(rng, bound);
    let c = random_qrat(rng, bound);
    let bp = random_qrat(rng, bound);
    sl2_from_shears(&b, &c, &bp)
}

/// One determinant-one matrix per slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOperation {
    mats: [Mat2; NUM_SLOTS],
}

impl LocalOperation {
    /// Validates that every slot matrix has determinant exactly 1.
    pub fn new(mats: [Mat2; NUM_SLOTS]) -> Result<Self> {
        for (slot, m) in mats.iter().enumerate() {
            let d = det2(m);
            if d != qint(1) {
                return Err(Error::NotUnimodular {
                    slot,
                    det: crate::scalar::qrat_string(&d),
                });
            }
        }
        Ok(LocalOperation { mats })
    }

    pub fn identity() -> Self {
        LocalOperation {
            mats: std::array::from_fn(|_| mat2_identity()),
        }
    }

    pub fn matrix(&self, slot: usize) -> &Mat2 {
        &self.mats[slot]
    }
}

/// A random five-tuple of unimodular matrices.
pub fn random_local_operation(rng: &mut impl Rng, bound: i64) -> LocalOperation {
    let mats = std::array::from_fn(|_| random_sl2(rng, bound));
    LocalOperation { mats }
}

/// The exact amplitude tensor of a five-qubit pure state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureState5 {
    amplitudes: Vec<QuadExt>,
    radicand: u64,
}

impl PureState5 {
    /// Build a state from its 32 amplitudes; they must all live in a single
    /// quadratic extension (radicand 1 mixes with anything).
    pub fn from_amplitudes(amplitudes: Vec<QuadExt>) -> Result<Self> {
        if amplitudes.len() != NUM_AMPLITUDES {
            return Err(Error::StateFile(format!(
                "expected {} amplitudes, got {}",
                NUM_AMPLITUDES,
                amplitudes.len()
            )));
        }
        let mut radicand = 1u64;
        for a in &amplitudes {
            let r = a.radicand();
            if r == 1 {
                continue;
            }
            if radicand == 1 {
                radicand = r;
            } else if radicand != r {
                return Err(Error::RadicandMismatch {
                    left: radicand,
                    right: r,
                });
            }
        }
        Ok(PureState5 {
            amplitudes,
            radicand,
        })
    }

    /// Build a purely rational state.
    pub fn from_rationals(values: Vec<QRat>) -> Result<Self> {
        PureState5::from_amplitudes(values.into_iter().map(QuadExt::from_rational).collect())
    }

    /// The zero state (useful as an accumulator; rejected by `fingerprint`).
    pub fn zero() -> Self {
        PureState5 {
            amplitudes: vec![QuadExt::zero(); NUM_AMPLITUDES],
            radicand: 1,
        }
    }

    /// The basis state `|i1 i2 i3 i4 i5>`.
    pub fn basis(bits: [u8; NUM_SLOTS]) -> Self {
        let mut amplitudes = vec![QuadExt::zero(); NUM_AMPLITUDES];
        amplitudes[amp_index(bits)] = QuadExt::one();
        PureState5 {
            amplitudes,
            radicand: 1,
        }
    }

    pub fn amplitudes(&self) -> &[QuadExt] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> &QuadExt {
        &self.amplitudes[index]
    }

    /// The shared radicand (1 when the state is purely rational).
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().all(Scalar::is_zero)
    }

    /// Purely rational amplitude vector, if the state has radicand 1.
    pub fn rational_amplitudes(&self) -> Option<Vec<QRat>> {
        self.amplitudes.iter().map(QuadExt::to_rational).collect()
    }
}

impl fmt::Display for PureState5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("({a})|{i:05b}>"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Act with a local operation on a state, slot by slot:
/// `A'[i..] = sum_j g[i][j] A[..j..]` in every slot.
pub fn apply_slocc(g: &LocalOperation, psi: &PureState5) -> PureState5 {
    let mut amps = psi.amplitudes.clone();
    for slot in 0..NUM_SLOTS {
        let m = &g.mats[slot];
        let stride = 1usize << (NUM_SLOTS - 1 - slot);
        let mut next = vec![QuadExt::zero(); NUM_AMPLITUDES];
        for (idx, out) in next.iter_mut().enumerate() {
            let bit = (idx / stride) % 2;
            let base = idx - bit * stride;
            // sum over the source value j of this slot
            for j in 0..2 {
                let src = &amps[base + j * stride];
                if src.is_zero() {
                    continue;
                }
                let coeff = QuadExt::from_rational(m[bit][j].clone());
                let term = coeff
                    .try_mul(src)
                    .expect("rational matrix entries are radicand-compatible");
                *out = out
                    .try_add(&term)
                    .expect("amplitudes share a single radicand");
            }
        }
        amps = next;
    }
    PureState5 {
        amplitudes: amps,
        radicand: psi.radicand,
    }
}

/// A random state with rational amplitudes bounded by `bound`; guaranteed
/// nonzero.
pub fn random_rational_state(rng: &mut impl Rng, bound: i64) -> PureState5 {
    loop {
        let values: Vec<QRat> = (0..NUM_AMPLITUDES)
            .map(|_| random_qrat(rng, bound))
            .collect();
        if values.iter().any(|v| !q_is_zero(v)) {
            return PureState5::from_rationals(values).expect("32 rational amplitudes");
        }
    }
}

/// The four benchmark states (unnormalized):
///
/// * `k = 1`: `|11111> + |00000>`
/// * `k = 2`: `|11111> + |11100> + |00010> + |00001>`
/// * `k = 3`: `sqrt(2)|11111> + |11000> + |00100> + |00010> + |00001>`
/// * `k = 4`: `sqrt(3)|11111> + |10000> + |01000> + |00100> + |00010> + |00001>`
pub fn osterloh_state(k: u8) -> Result<PureState5> {
    let one = QuadExt::one;
    let mut amplitudes = vec![QuadExt::zero(); NUM_AMPLITUDES];
    match k {
        1 => {
            amplitudes[amp_index([0, 0, 0, 0, 0])] = one();
            amplitudes[amp_index([1, 1, 1, 1, 1])] = one();
        }
        2 => {
            for bits in [[1, 1, 1, 1, 1], [1, 1, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]] {
                amplitudes[amp_index(bits)] = one();
            }
        }
        3 => {
            amplitudes[amp_index([1, 1, 1, 1, 1])] = QuadExt::sqrt_of(2)?;
            for bits in [[1, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]] {
                amplitudes[amp_index(bits)] = one();
            }
        }
        4 => {
            amplitudes[amp_index([1, 1, 1, 1, 1])] = QuadExt::sqrt_of(3)?;
            for bits in [
                [1, 0, 0, 0, 0],
                [0, 1, 0, 0, 0],
                [0, 0, 1, 0, 0],
                [0, 0, 0, 1, 0],
                [0, 0, 0, 0, 1],
            ] {
                amplitudes[amp_index(bits)] = one();
            }
        }
        _ => {
            return Err(Error::OutOfRange(format!(
                "benchmark state index must be 1..=4, got {k}"
            )))
        }
    }
    PureState5::from_amplitudes(amplitudes)
}

/// Row labels of the covariant fingerprint, in order.
pub const FINGERPRINT_ROWS: [&str; 9] =
    ["Dx", "Dy", "Dz", "Dt", "Du", "F", "Bx", "C31111", "E11111"];

/// Nonzero-ness of the nine covariant rows for one state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub rows: [bool; 9],
}

impl Fingerprint {
    /// Value of a row by label.
    pub fn row(&self, label: &str) -> Option<bool> {
        FINGERPRINT_ROWS
            .iter()
            .position(|&r| r == label)
            .map(|i| self.rows[i])
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = FINGERPRINT_ROWS
            .iter()
            .zip(self.rows)
            .map(|(label, nz)| format!("{}={}", label, if nz { "nonzero" } else { "0" }))
            .collect();
        write!(f, "{}", cells.join(" "))
    }
}

/// Evaluate the nine fingerprint rows of `psi` exactly.
///
/// Rows, in order: the five quartic invariants `Dx..Du`, the sextic
/// invariant `F`, and the covariants `Bx`, `C31111`, `E11111` (nonzero-ness
/// of the full body polynomial).  The `C31111` row reports the reduced
/// covariant `C31111 - b_x*f`, the new-generator part left once the product
/// of earlier covariants with the same multidegree is subtracted; see
/// [`transvect::reduced_c31111`].
pub fn fingerprint(psi: &PureState5) -> Result<Fingerprint> {
    if psi.is_zero() {
        return Err(Error::ZeroState);
    }
    let ground = transvect::ground_form_from_state(psi)?;
    let mut rows = [false; 9];
    for (i, slot) in crate::vars::Slot::ALL.iter().enumerate() {
        let b = transvect::slot_quadratic(&ground, *slot)?;
        let d = transvect::discriminant(&b)?;
        rows[i] = !d.is_zero();
        if *slot == crate::vars::Slot::X {
            rows[6] = !b.body().is_zero();
        }
    }
    rows[5] = !transvect::invariant_f(&ground)?.is_zero();
    let chain = transvect::covariant_chain(&ground)?;
    rows[7] = !transvect::reduced_c31111(&ground)?.body().is_zero();
    rows[8] = !chain.e11111.body().is_zero();
    Ok(Fingerprint { rows })
}
