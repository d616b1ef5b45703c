//! Global variable registry.
//!
//! Every polynomial in the crate indexes its variables through one fixed
//! table, so monomials from different pipeline stages always agree on what
//! variable 37 means.  The layout:
//!
//! * `0..32` — the 32 amplitudes `A[i1 i2 i3 i4 i5]`, indexed by the binary
//!   word `i1*16 + i2*8 + i3*4 + i4*2 + i5`;
//! * `32..62` — the binary-form variables: for each of the five slots
//!   (`x`, `y`, `z`, `t`, `u`) there are three copies (base, primed, doubly
//!   primed) of the component pair, e.g. `x0, x1, x0', x1', x0'', x1''`;
//! * `62` — the auxiliary series variable `t` of the residue engine;
//! * `63..68` — the residue integration variables `u1..u5`.

/// Index into the global variable table.
pub type VarId = u16;

/// Number of amplitude variables (2^5).
pub const NUM_AMPLITUDES: usize = 32;

/// Number of qubits / slots.
pub const NUM_SLOTS: usize = 5;

/// The five tensor slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    X = 0,
    Y = 1,
    Z = 2,
    T = 3,
    U = 4,
}

impl Slot {
    pub const ALL: [Slot; NUM_SLOTS] = [Slot::X, Slot::Y, Slot::Z, Slot::T, Slot::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Slot {
        Slot::ALL[i]
    }

    pub fn letter(self) -> char {
        match self {
            Slot::X => 'x',
            Slot::Y => 'y',
            Slot::Z => 'z',
            Slot::T => 't',
            Slot::U => 'u',
        }
    }
}

/// Which copy of a slot's variable pair a polynomial refers to.  The Omega
/// process temporarily doubles variables into primed and doubly primed
/// copies; ordinary covariants only use `Base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarCopy {
    Base = 0,
    Prime = 1,
    DoublePrime = 2,
}

/// Amplitude variable for the 5-bit word `(i1 i2 i3 i4 i5)` given as an
/// index `0..32` (most significant bit = first qubit).
pub fn amp_var(index: usize) -> VarId {
    assert!(index < NUM_AMPLITUDES, "amplitude index out of range");
    index as VarId
}

/// The binary-form variable `comp` (0 or 1) of `slot` in the given copy.
pub fn slot_var(slot: Slot, copy: VarCopy, comp: usize) -> VarId {
    assert!(comp < 2, "slot component must be 0 or 1");
    (NUM_AMPLITUDES + slot.index() * 6 + (copy as usize) * 2 + comp) as VarId
}

/// The residue series variable `t`.
pub const RESIDUE_T: VarId = 62;

/// The residue integration variable `u_i`, `i` in `1..=5`.
pub fn residue_u(i: usize) -> VarId {
    assert!((1..=NUM_SLOTS).contains(&i), "residue variable index out of range");
    (63 + i - 1) as VarId
}

/// Decompose a slot variable id into `(slot, copy, component)`, if it is one.
pub fn decode_slot_var(v: VarId) -> Option<(Slot, VarCopy, usize)> {
    let v = v as usize;
    if !(NUM_AMPLITUDES..NUM_AMPLITUDES + 30).contains(&v) {
        return None;
    }
    let off = v - NUM_AMPLITUDES;
    let slot = Slot::from_index(off / 6);
    let copy = match (off % 6) / 2 {
        0 => VarCopy::Base,
        1 => VarCopy::Prime,
        _ => VarCopy::DoublePrime,
    };
    Some((slot, copy, off % 2))
}

/// Human-readable name of a variable, used by `Display` impls.
pub fn var_name(v: VarId) -> String {
    let idx = v as usize;
    if idx < NUM_AMPLITUDES {
        return format!("A{:05b}", idx);
    }
    if let Some((slot, copy, comp)) = decode_slot_var(v) {
        let ticks = match copy {
            VarCopy::Base => "",
            VarCopy::Prime => "'",
            VarCopy::DoublePrime => "''",
        };
        return format!("{}{}{}", slot.letter(), comp, ticks);
    }
    if v == RESIDUE_T {
        return "t".to_string();
    }
    if (63..68).contains(&idx) {
        return format!("u{}", idx - 62);
    }
    format!("v{}", idx)
}

/// The amplitude index addressed by the 5 bits `(i1, ..., i5)`.
pub fn amp_index(bits: [u8; NUM_SLOTS]) -> usize {
    bits.iter().fold(0usize, |acc, &b| {
        debug_assert!(b < 2);
        acc * 2 + b as usize
    })
}
