//! First-order jets over the rationals.
//!
//! A [`Jet`] carries a value together with the gradient with respect to the
//! 32 state amplitudes.  Running any polynomial pipeline with jet scalars
//! therefore produces the exact value *and* all 32 exact partial derivatives
//! in a single pass (forward-mode differentiation), without ever forming a
//! symbolic polynomial in the amplitudes.

use crate::error::{Error, Result};
use crate::scalar::{q_is_zero, q_one, q_zero, qint, qrat_string, QRat, Scalar};
use crate::vars::NUM_AMPLITUDES;
use std::fmt;

/// Value plus gradient with respect to the amplitude variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    value: QRat,
    partials: Vec<QRat>,
}

impl Jet {
    /// A constant jet: value with zero gradient.
    pub fn constant(value: QRat) -> Self {
        Jet {
            value,
            partials: vec![q_zero(); NUM_AMPLITUDES],
        }
    }

    /// The jet of the `index`-th amplitude variable at value `value`:
    /// gradient is the `index`-th unit vector.
    pub fn variable(index: usize, value: QRat) -> Self {
        assert!(index < NUM_AMPLITUDES, "amplitude index out of range");
        let mut partials = vec![q_zero(); NUM_AMPLITUDES];
        partials[index] = q_one();
        Jet { value, partials }
    }

    pub fn value(&self) -> &QRat {
        &self.value
    }

    pub fn partials(&self) -> &[QRat] {
        &self.partials
    }

    pub fn partial(&self, index: usize) -> &QRat {
        &self.partials[index]
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", qrat_string(&self.value))?;
        let nonzero: Vec<String> = self
            .partials
            .iter()
            .enumerate()
            .filter(|(_, p)| !q_is_zero(p))
            .map(|(i, p)| format!("d{}={}", i, qrat_string(p)))
            .collect();
        if !nonzero.is_empty() {
            write!(f, " [{}]", nonzero.join(", "))?;
        }
        Ok(())
    }
}

impl Scalar for Jet {
    fn zero() -> Self {
        Jet::constant(q_zero())
    }

    fn one() -> Self {
        Jet::constant(q_one())
    }

    fn from_int(n: i64) -> Self {
        Jet::constant(qint(n))
    }

    fn is_zero(&self) -> bool {
        q_is_zero(&self.value) && self.partials.iter().all(q_is_zero)
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        let partials = self
            .partials
            .iter()
            .zip(&rhs.partials)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Jet {
            value: &self.value + &rhs.value,
            partials,
        })
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        // product rule: d(fg) = f dg + g df
        let partials = self
            .partials
            .iter()
            .zip(&rhs.partials)
            .map(|(df, dg)| &self.value * dg + &rhs.value * df)
            .collect();
        Ok(Jet {
            value: &self.value * &rhs.value,
            partials,
        })
    }

    fn neg_ref(&self) -> Self {
        Jet {
            value: -&self.value,
            partials: self.partials.iter().map(|p| -p).collect(),
        }
    }

    fn div_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::UndefinedDivision("division by zero".into()));
        }
        let d = qint(n);
        Ok(Jet {
            value: &self.value / &d,
            partials: self.partials.iter().map(|p| p / &d).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qrat;

    #[test]
    fn product_rule() {
        // f = x0, g = x1 at point x0 = 2, x1 = 3: d(fg) = (3, 2) in slots 0, 1
        let f = Jet::variable(0, qint(2));
        let g = Jet::variable(1, qint(3));
        let fg = f.try_mul(&g).unwrap();
        assert_eq!(fg.value(), &qint(6));
        assert_eq!(fg.partial(0), &qint(3));
        assert_eq!(fg.partial(1), &qint(2));
        assert_eq!(fg.partial(2), &qint(0));
    }

    #[test]
    fn square_derivative() {
        // d/dx x^2 = 2x at x = 5/2
        let x = Jet::variable(4, qrat(5, 2));
        let sq = x.try_mul(&x).unwrap();
        assert_eq!(sq.value(), &qrat(25, 4));
        assert_eq!(sq.partial(4), &qint(5));
    }

    #[test]
    fn linearity_and_constants() {
        let x = Jet::variable(1, qint(7));
        let c = Jet::from_int(10);
        let y = x.try_add(&c).unwrap().try_mul(&Jet::from_int(3)).unwrap();
        assert_eq!(y.value(), &qint(51));
        assert_eq!(y.partial(1), &qint(3));
        let z = y.try_sub(&y).unwrap();
        assert!(z.is_zero());
    }
}
