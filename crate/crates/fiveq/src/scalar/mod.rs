//! Scalar domains for exact computation.
//!
//! Every polynomial, covariant, and invariant in this crate is generic over a
//! [`Scalar`] coefficient domain.  Three concrete domains are provided:
//!
//! * [`QRat`] — arbitrary-precision rationals (re-exported from
//!   `num-rational`), the workhorse domain;
//! * [`QuadExt`] — elements `a + b*sqrt(n)` of a real quadratic extension of
//!   the rationals, for states such as `sqrt(2)|11111> + ...`;
//! * [`Jet`] — first-order jets over the rationals, carrying a value together
//!   with all 32 partial derivatives with respect to the amplitudes, used for
//!   exact Jacobian computations.
//!
//! Arithmetic is *fallible* at the trait level because quadratic extensions
//! with different radicands must not be mixed; the rational and jet domains
//! never fail.

mod jet;
mod quadext;

pub use jet::Jet;
pub use quadext::QuadExt;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational number, the base field of the crate.
pub type QRat = BigRational;

// `QRat` implements both `num_traits::Zero` and our `Scalar`, whose method
// names collide; these fully qualified helpers keep call sites unambiguous.
pub(crate) fn q_zero() -> QRat {
    <QRat as Zero>::zero()
}

pub(crate) fn q_one() -> QRat {
    <QRat as One>::one()
}

pub(crate) fn q_is_zero(q: &QRat) -> bool {
    <QRat as Zero>::is_zero(q)
}

/// Build a rational from an integer.
pub fn qint(n: i64) -> QRat {
    QRat::from_integer(BigInt::from(n))
}

/// Build the rational `n / d`.  Panics if `d == 0`.
pub fn qrat(n: i64, d: i64) -> QRat {
    QRat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from a string of the form `p`, `p/q`, `-p/q`.
pub fn parse_qrat(s: &str) -> Result<QRat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::StateFile(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(QRat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::StateFile(format!("zero denominator in {s:?}")));
            }
            Ok(QRat::new(num, den))
        }
    }
}

/// An exact coefficient domain.
///
/// Addition and multiplication are fallible so that [`QuadExt`] can reject
/// mixed radicands; implementations over a genuine ring never return `Err`.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn neg_ref(&self) -> Self;

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg_ref())
    }

    /// Exact division by a nonzero integer.
    fn div_int(&self, n: i64) -> Result<Self>;

    /// Integer power with non-negative exponent.
    fn pow_u(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }
}

impl Scalar for QRat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        qint(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::UndefinedDivision("division by zero".into()));
        }
        Ok(self / qint(n))
    }
}

/// Render a rational as `p/q` (or just `p` when `q == 1`), with sign on the
/// numerator.  This is the canonical form used in state files and CLI output.
pub fn qrat_string(q: &QRat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// True if `q` is a non-negative rational with an exact rational square root;
/// returns the root.
pub fn qrat_sqrt(q: &QRat) -> Option<QRat> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
        Some(QRat::new(num, den))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_qrat("3/4").unwrap(), qrat(3, 4));
        assert_eq!(parse_qrat("-3/4").unwrap(), qrat(-3, 4));
        assert_eq!(parse_qrat("7").unwrap(), qint(7));
        assert_eq!(parse_qrat(" -7 ").unwrap(), qint(-7));
        assert!(parse_qrat("1/0").is_err());
        assert!(parse_qrat("x").is_err());
        assert_eq!(qrat_string(&qrat(-6, 4)), "-3/2");
        assert_eq!(qrat_string(&qint(5)), "5");
    }

    #[test]
    fn rational_scalar_ops() {
        let a = qrat(1, 2);
        let b = qrat(1, 3);
        assert_eq!(a.try_add(&b).unwrap(), qrat(5, 6));
        assert_eq!(a.try_mul(&b).unwrap(), qrat(1, 6));
        assert_eq!(a.try_sub(&b).unwrap(), qrat(1, 6));
        assert_eq!(a.div_int(2).unwrap(), qrat(1, 4));
        assert!(a.div_int(0).is_err());
        assert_eq!(qrat(2, 3).pow_u(3).unwrap(), qrat(8, 27));
        assert_eq!(qrat(2, 3).pow_u(0).unwrap(), qint(1));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(qrat_sqrt(&qrat(9, 4)), Some(qrat(3, 2)));
        assert_eq!(qrat_sqrt(&qint(0)), Some(qint(0)));
        assert_eq!(qrat_sqrt(&qint(2)), None);
        assert_eq!(qrat_sqrt(&qint(-4)), None);
    }
}
