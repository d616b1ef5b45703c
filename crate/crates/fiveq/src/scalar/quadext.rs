//! Elements of a real quadratic extension `Q(sqrt(n))`.
//!
//! A [`QuadExt`] is `rat + surd * sqrt(radicand)` with both coefficients
//! exact rationals.  The radicand is a square-free positive integer; a value
//! with `surd == 0` is normalised to radicand 1, so "purely rational" and
//! "radicand 1" coincide.  A single computation works inside *one* extension:
//! combining two nontrivial radicands is a domain error, never a silent
//! coercion.

use crate::error::{Error, Result};
use crate::scalar::{q_is_zero, q_one, q_zero, qint, qrat_string, QRat, Scalar};
use std::fmt;

/// `rat + surd * sqrt(radicand)`, with square-free `radicand >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rat: QRat,
    surd: QRat,
    radicand: u64,
}

/// True if `n` is square-free (and positive).
pub fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

impl QuadExt {
    /// Construct `rat + surd*sqrt(radicand)`, normalising so that a zero
    /// surd part always carries radicand 1 and radicand 1 folds
    /// `sqrt(1) = 1` into the rational part.
    pub fn new(rat: QRat, surd: QRat, radicand: u64) -> Result<Self> {
        if !is_square_free(radicand) {
            return Err(Error::NotSquareFree(radicand));
        }
        if radicand == 1 {
            return Ok(QuadExt {
                rat: rat + surd,
                surd: q_zero(),
                radicand: 1,
            });
        }
        if q_is_zero(&surd) {
            return Ok(QuadExt {
                rat,
                surd,
                radicand: 1,
            });
        }
        Ok(QuadExt {
            rat,
            surd,
            radicand,
        })
    }

    /// Embed a rational.
    pub fn from_rational(rat: QRat) -> Self {
        QuadExt {
            rat,
            surd: q_zero(),
            radicand: 1,
        }
    }

    /// `sqrt(radicand)` itself.
    pub fn sqrt_of(radicand: u64) -> Result<Self> {
        QuadExt::new(q_zero(), q_one(), radicand)
    }

    pub fn rat_part(&self) -> &QRat {
        &self.rat
    }

    pub fn surd_part(&self) -> &QRat {
        &self.surd
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    /// The rational value, when there is no surd part.
    pub fn to_rational(&self) -> Option<QRat> {
        if self.is_rational() {
            Some(self.rat.clone())
        } else {
            None
        }
    }

    /// The common radicand for an operation mixing `self` and `other`,
    /// or an error if both are nontrivial and different.
    fn join_radicand(&self, other: &Self) -> Result<u64> {
        match (self.radicand, other.radicand) {
            (1, r) | (r, 1) => Ok(r),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::RadicandMismatch { left: a, right: b }),
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if q_is_zero(&self.surd) {
            write!(f, "{}", qrat_string(&self.rat))
        } else if q_is_zero(&self.rat) {
            write!(f, "{}*sqrt({})", qrat_string(&self.surd), self.radicand)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                qrat_string(&self.rat),
                qrat_string(&self.surd),
                self.radicand
            )
        }
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::from_rational(q_zero())
    }

    fn one() -> Self {
        QuadExt::from_rational(q_one())
    }

    fn from_int(n: i64) -> Self {
        QuadExt::from_rational(qint(n))
    }

    fn is_zero(&self) -> bool {
        q_is_zero(&self.rat) && q_is_zero(&self.surd)
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        let radicand = self.join_radicand(rhs)?;
        QuadExt::new(&self.rat + &rhs.rat, &self.surd + &rhs.surd, radicand)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let radicand = self.join_radicand(rhs)?;
        // (a + b sqrt(n)) (c + d sqrt(n)) = ac + bd n + (ad + bc) sqrt(n).
        let n = qint(radicand as i64);
        let rat = &self.rat * &rhs.rat + &self.surd * &rhs.surd * &n;
        let surd = &self.rat * &rhs.surd + &self.surd * &rhs.rat;
        QuadExt::new(rat, surd, radicand)
    }

    fn neg_ref(&self) -> Self {
        QuadExt {
            rat: -&self.rat,
            surd: -&self.surd,
            radicand: self.radicand,
        }
    }

    fn div_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::UndefinedDivision("division by zero".into()));
        }
        let d = qint(n);
        QuadExt::new(&self.rat / &d, &self.surd / &d, self.radicand)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qrat;

    fn qe(a: (i64, i64), b: (i64, i64), n: u64) -> QuadExt {
        QuadExt::new(qrat(a.0, a.1), qrat(b.0, b.1), n).unwrap()
    }

    #[test]
    fn square_free_check() {
        assert!(is_square_free(1));
        assert!(is_square_free(2));
        assert!(is_square_free(30));
        assert!(!is_square_free(4));
        assert!(!is_square_free(12));
        assert!(!is_square_free(0));
        assert!(QuadExt::new(qint(1), qint(1), 8).is_err());
    }

    #[test]
    fn normalisation() {
        // zero surd part collapses to radicand 1
        let x = QuadExt::new(qint(3), qint(0), 5).unwrap();
        assert_eq!(x.radicand(), 1);
        assert!(x.is_rational());
        // radicand 1 folds sqrt(1) = 1
        let y = QuadExt::new(qint(3), qint(2), 1).unwrap();
        assert_eq!(y.to_rational().unwrap(), qint(5));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let r2 = QuadExt::sqrt_of(2).unwrap();
        let sq = r2.try_mul(&r2).unwrap();
        assert_eq!(sq.to_rational().unwrap(), qint(2));
    }

    #[test]
    fn arithmetic_in_one_extension() {
        let a = qe((1, 2), (1, 3), 3);
        let b = qe((2, 1), (-1, 1), 3);
        let sum = a.try_add(&b).unwrap();
        assert_eq!(sum, qe((5, 2), (-2, 3), 3));
        // (1/2 + 1/3 s)(2 - s) = 1 - 1 + (-1/2 + 2/3) s = 2/3 s *with* s^2 = 3:
        // rat: 1/2*2 + 1/3*(-1)*3 = 1 - 1 = 0; surd: 1/2*(-1) + 1/3*2 = 1/6.
        let prod = a.try_mul(&b).unwrap();
        assert_eq!(prod, qe((0, 1), (1, 6), 3));
        assert_eq!(a.div_int(2).unwrap(), qe((1, 4), (1, 6), 3));
    }

    #[test]
    fn mixed_radicands_error() {
        let a = QuadExt::sqrt_of(2).unwrap();
        let b = QuadExt::sqrt_of(3).unwrap();
        assert!(matches!(
            a.try_add(&b),
            Err(Error::RadicandMismatch { left: 2, right: 3 })
        ));
        assert!(a.try_mul(&b).is_err());
        // rational values are compatible with everything
        let c = QuadExt::from_int(7);
        assert_eq!(
            a.try_mul(&c).unwrap(),
            QuadExt::new(qint(0), qint(7), 2).unwrap()
        );
    }

    #[test]
    fn rationality_witness() {
        // (1 + sqrt(2))(1 - sqrt(2)) = -1 is rational again
        let p = qe((1, 1), (1, 1), 2);
        let q = qe((1, 1), (-1, 1), 2);
        let prod = p.try_mul(&q).unwrap();
        assert!(prod.is_rational());
        assert_eq!(prod.to_rational().unwrap(), qint(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(qe((1, 2), (0, 1), 2).to_string(), "1/2");
        assert_eq!(qe((0, 1), (3, 2), 2).to_string(), "3/2*sqrt(2)");
        assert_eq!(qe((1, 1), (-1, 3), 5).to_string(), "1 + -1/3*sqrt(5)");
    }
}
