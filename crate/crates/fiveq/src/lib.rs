//! Exact computer algebra for the local (SL(2)) invariants of five-qubit
//! pure states.
//!
//! The crate has three cooperating layers:
//!
//! 1. **Algebra core** — exact scalars ([`scalar`]), a global variable
//!    registry ([`vars`]), and sparse multivariate Laurent polynomials
//!    ([`poly`]).
//! 2. **Covariant engine** — ground forms, transvections via the Omega
//!    process, and the named invariants `Dx, Dy, Dz, Dt, Du, F`
//!    ([`transvect`]), together with states and group actions ([`state`]),
//!    serialization ([`io`]), and exact Jacobian ranks ([`jacobian`]).
//! 3. **Counting engine** — partitions and symmetric-group characters
//!    ([`partitions`], [`characters`]), Hilbert-series dimensions and table
//!    validation ([`hilbert`]), and an independent iterated-residue
//!    computation of the same series ([`residue`]).
//!
//! Everything is exact: no floating point appears anywhere in the crate.

pub mod characters;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod jacobian;
pub mod partitions;
pub mod poly;
pub mod residue;
pub mod scalar;
pub mod state;
pub mod transvect;
pub mod vars;

pub use error::{Error, Result};
