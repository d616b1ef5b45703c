//! Crate-wide error type.
//!
//! Everything in this crate computes over exact scalar domains, so the only
//! runtime failures are *domain* failures (mixing incompatible quadratic
//! extensions, evaluating a Laurent monomial at a point where a negative
//! power is undefined, ...) and *input* failures (malformed state files,
//! malformed table data, invalid group elements).  All of them are collected
//! in one enum so the CLI can map them onto its exit-code contract.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arithmetic tried to combine scalars that live in different quadratic
    /// extensions Q(sqrt(m)) and Q(sqrt(n)) with m, n both nontrivial.
    #[error("incompatible radicands: sqrt({left}) vs sqrt({right})")]
    RadicandMismatch { left: u64, right: u64 },

    /// A quadratic-extension scalar was requested with a radicand that is
    /// not a square-free positive integer.
    #[error("radicand {0} is not a square-free positive integer")]
    NotSquareFree(u64),

    /// A polynomial was evaluated with a negative exponent at a variable
    /// whose assigned value makes the monomial undefined, or a scalar
    /// division that must be exact was not.
    #[error("undefined exact division: {0}")]
    UndefinedDivision(String),

    /// A covariant did not have the shape an operation requires (e.g. the
    /// discriminant of something that is not a binary quadratic in exactly
    /// one slot).
    #[error("covariant has the wrong shape: {0}")]
    Shape(String),

    /// A local operation matrix does not have determinant one.
    #[error("local operation in slot {slot} has determinant {det}, expected 1")]
    NotUnimodular { slot: usize, det: String },

    /// A state file could not be parsed or violates the format contract.
    #[error("invalid state file: {0}")]
    StateFile(String),

    /// An operation that needs a nonzero state was handed the zero state.
    #[error("state has all amplitudes zero")]
    ZeroState,

    /// Jet-based differentiation is only available over the rationals.
    #[error("operation requires purely rational amplitudes (radicand 1), got radicand {0}")]
    IrrationalPoint(u64),

    /// Character of mismatched sizes: |lambda| must equal |mu|.
    #[error("character size mismatch: |lambda| = {lambda}, |mu| = {mu}")]
    CharacterSize { lambda: u32, mu: u32 },

    /// A partition was not weakly decreasing / had zero parts.
    #[error("invalid partition: {0}")]
    Partition(String),

    /// Table data file could not be parsed.
    #[error("invalid table data: {0}")]
    TableFormat(String),

    /// The residue engine met a pole configuration it cannot solve exactly
    /// (root of the pole equation is not rational in the remaining ring).
    #[error("unsupported pole configuration: {0}")]
    UnsupportedPole(String),

    /// Generic index/argument out of range.
    #[error("{0}")]
    OutOfRange(String),

    /// Underlying I/O error (file loading in the CLI helpers).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
