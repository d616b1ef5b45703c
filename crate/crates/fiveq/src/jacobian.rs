//! Named invariants, their exact evaluation, and Jacobian ranks at rational
//! points via forward-mode jets.
//!
//! The six named invariants are the five quartics `Dx..Du` (discriminants of
//! the slot quadratics) and the sextic `F` (tail of the transvectant chain).
//! For independence checks we evaluate them on jet coefficients — each of the
//! 32 amplitudes seeded as an independent differentiation direction — and read
//! the full gradient off the jet, then take the exact rank of the stacked
//! gradients by fraction-free (Bareiss) elimination over the integers after
//! clearing row denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Jet, QRat, QuadExt, Scalar};
use crate::state::PureState5;
use crate::transvect::{ground_form_from_coeffs, invariant_d, invariant_f};
use crate::vars::Slot;

/// One of the six polynomial invariants evaluated by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedInvariant {
    Dx,
    Dy,
    Dz,
    Dt,
    Du,
    F,
}

impl NamedInvariant {
    /// All six, in fingerprint row order.
    pub const ALL: [NamedInvariant; 6] = [
        NamedInvariant::Dx,
        NamedInvariant::Dy,
        NamedInvariant::Dz,
        NamedInvariant::Dt,
        NamedInvariant::Du,
        NamedInvariant::F,
    ];

    /// The five quartic discriminant invariants.
    pub const QUARTICS: [NamedInvariant; 5] = [
        NamedInvariant::Dx,
        NamedInvariant::Dy,
        NamedInvariant::Dz,
        NamedInvariant::Dt,
        NamedInvariant::Du,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedInvariant::Dx => "Dx",
            NamedInvariant::Dy => "Dy",
            NamedInvariant::Dz => "Dz",
            NamedInvariant::Dt => "Dt",
            NamedInvariant::Du => "Du",
            NamedInvariant::F => "F",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|inv| inv.name() == name)
    }

    /// Degree in the amplitudes (4 for the discriminants, 6 for F).
    pub fn degree(self) -> u32 {
        match self {
            NamedInvariant::F => 6,
            _ => 4,
        }
    }

    fn slot(self) -> Option<Slot> {
        match self {
            NamedInvariant::Dx => Some(Slot::X),
            NamedInvariant::Dy => Some(Slot::Y),
            NamedInvariant::Dz => Some(Slot::Z),
            NamedInvariant::Dt => Some(Slot::T),
            NamedInvariant::Du => Some(Slot::U),
            NamedInvariant::F => None,
        }
    }
}

/// Evaluate a named invariant on an arbitrary 32-coefficient vector.
pub fn eval_named<S: Scalar>(inv: NamedInvariant, coeffs: &[S]) -> Result<S> {
    let form = ground_form_from_coeffs(coeffs)?;
    match inv.slot() {
        Some(slot) => invariant_d(&form, slot),
        None => invariant_f(&form),
    }
}

/// Evaluate a named invariant exactly on a state.
pub fn eval_invariant(inv: NamedInvariant, psi: &PureState5) -> Result<QuadExt> {
    eval_named(inv, psi.amplitudes())
}

/// The gradient rows (one per invariant, 32 columns) at a rational point.
fn gradient_rows(invariants: &[NamedInvariant], point: &PureState5) -> Result<Vec<Vec<QRat>>> {
    let amplitudes = point
        .rational_amplitudes()
        .ok_or(Error::IrrationalPoint(point.radicand()))?;
    let jets: Vec<Jet> = amplitudes
        .into_iter()
        .enumerate()
        .map(|(i, a)| Jet::variable(i, a))
        .collect();
    invariants
        .iter()
        .map(|inv| Ok(eval_named(*inv, &jets)?.partials().to_vec()))
        .collect()
}

/// Exact rank of a rational matrix by clearing denominators per row and
/// running fraction-free (Bareiss) elimination over the integers.
fn rational_rank(rows: Vec<Vec<QRat>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.into_iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(pivot_row) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let pivot = m[row][col].clone();
        for r in (row + 1)..nrows {
            for c in (col + 1)..ncols {
                let val = (&pivot * &m[r][c] - &m[r][col] * &m[row][c]) / &prev_pivot;
                m[r][c] = val;
            }
            m[r][col] = BigInt::zero();
        }
        prev_pivot = pivot;
        rank += 1;
        row += 1;
    }
    rank
}

/// Exact rank over the rationals of the Jacobian of `invariants` at `point`.
///
/// The point must be rational (radicand 1): jets carry rational partials.
pub fn jacobian_rank(invariants: &[NamedInvariant], point: &PureState5) -> Result<usize> {
    Ok(rational_rank(gradient_rows(invariants, point)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qint, qrat};
    use crate::state::{osterloh_state, random_rational_state, seeded_rng, PureState5};
    use crate::vars::NUM_AMPLITUDES;

    #[test]
    fn named_invariant_round_trips_names() {
        for inv in NamedInvariant::ALL {
            assert_eq!(NamedInvariant::from_name(inv.name()), Some(inv));
        }
        assert_eq!(NamedInvariant::from_name("G"), None);
        assert_eq!(NamedInvariant::Dx.degree(), 4);
        assert_eq!(NamedInvariant::F.degree(), 6);
    }

    #[test]
    fn eval_matches_hand_oracles_on_phi1() {
        let phi1 = osterloh_state(1).unwrap();
        assert_eq!(
            eval_invariant(NamedInvariant::Dx, &phi1).unwrap(),
            QuadExt::from_int(4)
        );
        assert!(eval_invariant(NamedInvariant::F, &phi1).unwrap().is_zero());
    }

    #[test]
    fn rational_rank_oracles() {
        // rank 2 with a dependent third row
        let rows = vec![
            vec![qint(1), qint(2), qint(3)],
            vec![qint(0), qint(1), qint(1)],
            vec![qint(1), qint(4), qint(5)],
        ];
        assert_eq!(rational_rank(rows), 2);
        // fractions clear exactly: (3/2, 1) = 3 * (1/2, 1/3)
        let rows = vec![
            vec![qrat(1, 2), qrat(1, 3)],
            vec![qrat(3, 2), qint(1)],
        ];
        assert_eq!(rational_rank(rows), 1);
        let rows = vec![
            vec![qrat(1, 2), qrat(1, 3)],
            vec![qrat(1, 5), qrat(1, 7)],
        ];
        assert_eq!(rational_rank(rows), 2);
        // zero matrix
        let rows = vec![vec![qint(0); 4]; 3];
        assert_eq!(rational_rank(rows), 0);
        assert_eq!(rational_rank(vec![]), 0);
    }

    #[test]
    fn zero_state_has_rank_zero() {
        let rank = jacobian_rank(&NamedInvariant::ALL, &PureState5::zero()).unwrap();
        assert_eq!(rank, 0);
    }

    #[test]
    fn irrational_points_are_rejected() {
        let phi3 = osterloh_state(3).unwrap();
        assert!(matches!(
            jacobian_rank(&NamedInvariant::ALL, &phi3),
            Err(Error::IrrationalPoint(2))
        ));
    }

    #[test]
    fn generic_rational_points_have_full_rank() {
        let mut rng = seeded_rng(11);
        let psi = random_rational_state(&mut rng, 4);
        assert_eq!(jacobian_rank(&NamedInvariant::QUARTICS, &psi).unwrap(), 5);
        assert_eq!(jacobian_rank(&NamedInvariant::ALL, &psi).unwrap(), 6);
    }

    #[test]
    fn gradient_of_dx_matches_finite_structure_on_a_simple_point() {
        // On the two-amplitude state a|00000> + b|11111> one finds
        // D_x = (2ab)^2, so the gradient is (8ab^2, 8a^2 b) in (a, b).
        let mut amps = vec![QuadExt::zero(); NUM_AMPLITUDES];
        amps[0] = QuadExt::from_rational(qint(3));
        amps[31] = QuadExt::from_rational(qint(5));
        let psi = PureState5::from_amplitudes(amps).unwrap();
        let rows = gradient_rows(&[NamedInvariant::Dx], &psi).unwrap();
        assert_eq!(rows[0][0], qint(8 * 3 * 25));
        assert_eq!(rows[0][31], qint(8 * 9 * 5));
        let interior: Vec<_> = (1..31)
            .filter(|&i| rows[0][i] != qint(0))
            .collect();
        assert!(interior.is_empty(), "unexpected nonzero partials: {interior:?}");
    }
}
