//! Sparse multivariate Laurent polynomials over an arbitrary [`Scalar`].
//!
//! Monomials map variable ids to integer exponents (negative exponents are
//! allowed — the residue engine works with genuine Laurent monomials) and are
//! kept in a canonical sorted, zero-free form.  A polynomial is a `BTreeMap`
//! from monomials to nonzero coefficients, so equal polynomials are
//! structurally equal and iteration order is deterministic.
//!
//! Because `Poly<S>` itself implements [`Scalar`], polynomials can serve as
//! the coefficients of other polynomials; the transvection engine uses this
//! to run one generic pipeline in numeric mode (`S = QRat`/`QuadExt`/`Jet`)
//! and in symbolic-amplitude mode (`S = Poly<QRat>`).

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vars::{var_name, VarId};
use std::collections::BTreeMap;
use std::fmt;

/// A power product `prod_i v_i^{e_i}` with integer (possibly negative)
/// exponents, stored sorted by variable id with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarId, i32)>,
}

impl Monomial {
    /// The empty power product (the monomial `1`).
    pub fn one() -> Self {
        Monomial::default()
    }

    /// A single variable to the first power.
    pub fn var(v: VarId) -> Self {
        Monomial::var_pow(v, 1)
    }

    /// `v^e`; `e == 0` gives the empty monomial.
    pub fn var_pow(v: VarId, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial {
                exps: vec![(v, e)],
            }
        }
    }

    /// Build from arbitrary (variable, exponent) pairs, merging duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Self {
        let mut map: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps: map.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponent of `v` (zero when absent).
    pub fn exponent_of(&self, v: VarId) -> i32 {
        match self.exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    /// Iterate over `(variable, exponent)` pairs in id order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.exps.iter().copied()
    }

    /// Merge two power products (add exponents).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        // merge of two sorted lists
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    exps.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    exps.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if ea + eb != 0 {
                        exps.push((va, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    /// Raise every exponent to the `n`-th multiple (works for negative `n`).
    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * n)).collect(),
        }
    }

    /// The reciprocal power product.
    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Remove `v`, returning its exponent and the remaining product.
    pub fn split_var(&self, v: VarId) -> (i32, Monomial) {
        let mut rest = Vec::with_capacity(self.exps.len());
        let mut e = 0;
        for &(w, ew) in &self.exps {
            if w == v {
                e = ew;
            } else {
                rest.push((w, ew));
            }
        }
        (e, Monomial { exps: rest })
    }

    /// Total degree restricted to variables satisfying the predicate.
    pub fn degree_where(&self, pred: impl Fn(VarId) -> bool) -> i32 {
        self.exps
            .iter()
            .filter(|&&(v, _)| pred(v))
            .map(|&(_, e)| e)
            .sum()
    }

    /// Total degree over all variables.
    pub fn total_degree(&self) -> i32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// True if any exponent is negative.
    pub fn has_negative_exponent(&self) -> bool {
        self.exps.iter().any(|&(_, e)| e < 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    var_name(v)
                } else {
                    format!("{}^{}", var_name(v), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial: canonical map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for Poly<S> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), S::one())
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, S)>) -> Result<Self> {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: S) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().try_add(&c)?;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.try_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    /// Multiply by a single scaled monomial.
    pub fn mul_term(&self, m: &Monomial, c: &S) -> Result<Self> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            out.add_term(ma.mul(m), ca.try_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Result<Self> {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Poly<T>> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?)?;
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `v` (Laurent rule
    /// `d/dv v^e = e v^{e-1}` for any integer `e`).
    pub fn partial(&self, v: VarId) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent_of(v);
            if e == 0 {
                continue;
            }
            let (_, rest) = m.split_var(v);
            let dm = rest.mul(&Monomial::var_pow(v, e - 1));
            let dc = c
                .try_mul(&S::from_int(e as i64))
                .expect("integer scaling cannot mix domains");
            out.add_term(dm, dc)
                .expect("derivative terms share the domain of the source");
        }
        out
    }

    /// Substitute scalar values for some variables.  Variables not present in
    /// `assign` survive.  A negative exponent on an assigned variable is a
    /// domain error (the trait has no multiplicative inverse).
    pub fn eval(&self, assign: &BTreeMap<VarId, S>) -> Result<Self> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.iter() {
                match assign.get(&v) {
                    None => rest.push((v, e)),
                    Some(val) => {
                        if e < 0 {
                            return Err(Error::UndefinedDivision(format!(
                                "negative exponent {} of {} at evaluation",
                                e,
                                var_name(v)
                            )));
                        }
                        coeff = coeff.try_mul(&val.pow_u(e as u32)?)?;
                    }
                }
            }
            out.add_term(Monomial::from_pairs(rest), coeff)?;
        }
        Ok(out)
    }

    /// Evaluate to a single scalar; all variables of the polynomial must be
    /// assigned.
    pub fn eval_constant(&self, assign: &BTreeMap<VarId, S>) -> Result<S> {
        let evaluated = self.eval(assign)?;
        evaluated.as_constant().ok_or_else(|| {
            Error::UndefinedDivision("evaluation left free variables".into())
        })
    }

    /// The coefficient view of a constant polynomial, if it is one.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Rename variables through `f`, merging any collisions.
    pub fn rename_vars(&self, f: impl Fn(VarId) -> VarId) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let renamed = Monomial::from_pairs(m.iter().map(|(v, e)| (f(v), e)));
            out.add_term(renamed, c.clone())
                .expect("renaming preserves the coefficient domain");
        }
        out
    }

    /// Maximum degree over variables satisfying `pred` (zero polynomial
    /// reports 0).
    pub fn degree_where(&self, pred: impl Fn(VarId) -> bool + Copy) -> i32 {
        self.terms
            .keys()
            .map(|m| m.degree_where(pred))
            .max()
            .unwrap_or(0)
    }

    /// If every term has the same degree in the variables selected by
    /// `pred`, return it; `None` when the polynomial is inhomogeneous there.
    /// The zero polynomial is homogeneous of degree 0.
    pub fn uniform_degree_where(&self, pred: impl Fn(VarId) -> bool + Copy) -> Option<i32> {
        let mut degs = self.terms.keys().map(|m| m.degree_where(pred));
        match degs.next() {
            None => Some(0),
            Some(d) => {
                if degs.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = c.to_string();
                let cs = if cs.contains(' ') || cs.contains('+') {
                    format!("({cs})")
                } else {
                    cs
                };
                if m.is_one() {
                    cs
                } else if cs == "1" {
                    m.to_string()
                } else if cs == "-1" {
                    format!("-{m}")
                } else {
                    format!("{cs}*{m}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Polynomials over a scalar domain form a scalar domain themselves; this is
/// what powers symbolic-amplitude covariants.
impl<S: Scalar> Scalar for Poly<S> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn from_int(n: i64) -> Self {
        Poly::constant(S::from_int(n))
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.add(rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn div_int(&self, n: i64) -> Result<Self> {
        self.map_coeffs(|c| c.div_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qint, qrat, QRat};

    fn x(v: VarId) -> Poly<QRat> {
        Poly::var(v)
    }

    #[test]
    fn monomial_canonical_form() {
        let m = Monomial::from_pairs([(3, 2), (1, 1), (3, -2), (2, 0)]);
        assert_eq!(m, Monomial::var(1));
        let n = Monomial::var_pow(5, 3).mul(&Monomial::var_pow(5, -3));
        assert!(n.is_one());
    }

    #[test]
    fn monomial_algebra() {
        let a = Monomial::from_pairs([(1, 2), (4, -1)]);
        let b = Monomial::from_pairs([(1, 1), (2, 3)]);
        let ab = a.mul(&b);
        assert_eq!(ab.exponent_of(1), 3);
        assert_eq!(ab.exponent_of(2), 3);
        assert_eq!(ab.exponent_of(4), -1);
        assert_eq!(ab.total_degree(), 5);
        assert!(ab.has_negative_exponent());
        assert_eq!(a.pow(2).exponent_of(4), -2);
        assert_eq!(a.mul(&a.inv()), Monomial::one());
        let (e, rest) = ab.split_var(2);
        assert_eq!(e, 3);
        assert_eq!(rest.exponent_of(2), 0);
        assert_eq!(rest.exponent_of(1), 3);
    }

    #[test]
    fn poly_arithmetic() {
        // (x0 + x1)^2 = x0^2 + 2 x0 x1 + x1^2
        let s = x(0).add(&x(1)).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(
            sq.coefficient(&Monomial::from_pairs([(0, 1), (1, 1)])),
            qint(2)
        );
        let diff = sq.sub(&sq).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.num_terms(), 0);
    }

    #[test]
    fn partial_derivatives() {
        // d/dx0 (x0^3 x1 + 2 x0) = 3 x0^2 x1 + 2
        let p = Poly::term(Monomial::from_pairs([(0, 3), (1, 1)]), qint(1))
            .add(&x(0).scale(&qint(2)).unwrap())
            .unwrap();
        let dp = p.partial(0);
        assert_eq!(
            dp.coefficient(&Monomial::from_pairs([(0, 2), (1, 1)])),
            qint(3)
        );
        assert_eq!(dp.coefficient(&Monomial::one()), qint(2));
        // Laurent rule: d/dv v^-1 = -v^-2
        let l = Poly::term(Monomial::var_pow(7, -1), qint(1));
        let dl = l.partial(7);
        assert_eq!(dl.coefficient(&Monomial::var_pow(7, -2)), qint(-1));
    }

    #[test]
    fn evaluation() {
        let p = x(0).mul(&x(1)).unwrap().add(&Poly::constant(qint(5))).unwrap();
        let mut assign = BTreeMap::new();
        assign.insert(0, qrat(1, 2));
        assign.insert(1, qint(4));
        assert_eq!(p.eval_constant(&assign).unwrap(), qint(7));
        // partial substitution keeps the free variable
        let mut half = BTreeMap::new();
        half.insert(0, qint(3));
        let q = p.eval(&half).unwrap();
        assert_eq!(q.coefficient(&Monomial::var(1)), qint(3));
        // negative exponent at evaluation is a domain error
        let l = Poly::term(Monomial::var_pow(0, -2), qint(1));
        assert!(l.eval(&half).is_err());
    }

    #[test]
    fn renaming_merges() {
        // x0 * x2  with both renamed to x1 gives x1^2
        let p = x(0).mul(&x(2)).unwrap();
        let q = p.rename_vars(|_| 1);
        assert_eq!(q.coefficient(&Monomial::var_pow(1, 2)), qint(1));
    }

    #[test]
    fn homogeneity_probes() {
        let p = x(0).mul(&x(1)).unwrap().add(&x(2).mul(&x(2)).unwrap()).unwrap();
        assert_eq!(p.uniform_degree_where(|_| true), Some(2));
        let q = p.add(&x(0)).unwrap();
        assert_eq!(q.uniform_degree_where(|_| true), None);
        assert_eq!(q.degree_where(|_| true), 2);
        assert_eq!(Poly::<QRat>::zero().uniform_degree_where(|_| true), Some(0));
    }

    #[test]
    fn nested_polynomial_scalars() {
        // coefficients that are themselves polynomials
        let inner = x(0).add(&Poly::one()).unwrap(); // x0 + 1
        let outer: Poly<Poly<QRat>> = Poly::term(Monomial::var(40), inner.clone());
        let sq = outer.mul(&outer).unwrap();
        let coeff = sq.coefficient(&Monomial::var_pow(40, 2));
        assert_eq!(coeff, inner.mul(&inner).unwrap());
    }

    #[test]
    fn display_readably() {
        let p = x(0)
            .mul(&x(0))
            .unwrap()
            .scale(&qrat(-3, 2))
            .unwrap()
            .add(&Poly::one())
            .unwrap();
        assert_eq!(p.to_string(), "1 + -3/2*A00000^2");
        assert_eq!(Poly::<QRat>::zero().to_string(), "0");
    }
}
