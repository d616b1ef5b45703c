//! Iterated-residue evaluation of the Molien–Weyl integral.
//!
//! The Hilbert series of the invariant ring for `k` qubits is the constant
//! term, in the torus variables `u_1 .. u_k`, of
//!
//! ```text
//!            prod_i (1 - u_i^{-2}) u_i^{-1}
//!   h(t) =  --------------------------------      (du_i / 2 pi i u_i each)
//!            prod_{a in {+-1}^k} (1 - t u^a)
//! ```
//!
//! where `u^a = u_1^{a_1} ... u_k^{a_k}`.  The numerator is the Weyl-measure
//! factor `prod (1 - u_i^2) du_i / u_i` rewritten with one factor `(1 -
//! u_i^{-2}) u_i^{-1}` per torus direction; the sign in front of `u_i^{-2}`
//! is **negative** — the `k = 1` case closes to `h(t) = 1` only with this
//! sign, and every larger `k` is cross-checked against the character-theoretic
//! dimension count in [`crate::hilbert`].
//!
//! Evaluation is exact and works on a *sum of factored rational terms*
//!
//! ```text
//!   N(t, u) / prod_j (1 - c_j M_j)^{e_j}
//! ```
//!
//! with `N` a Laurent polynomial, `c_j` rational and `M_j` a Laurent
//! monomial.  One torus variable at a time is eliminated by summing the
//! residues at the poles *inside* its contour.  The contours are nested:
//! `|t| << |u_k| << ... << |u_1| << 1`, made precise as an iterated Laurent
//! hierarchy (each variable is infinitesimal with respect to the next).  A
//! candidate pole location `p` (a scaled Laurent monomial in `t` and the
//! not-yet-integrated variables) lies inside the contour of `u` exactly when
//! `p / u` is infinitesimal: scanning exponents in hierarchy order (`t`
//! first, then the `u_i` from smallest to largest), the first nonzero
//! exponent of `p / u` is positive.
//!
//! Per variable the residues are:
//!  * at `u = 0` (from the measure and the numerator): exact coefficient
//!    extraction of `u^{-1}` after rewriting every pole-at-zero factor with a
//!    positive exponent,
//!  * at each inside pole `p` of multiplicity `m`: the derivative formula
//!    `res = (d/du)^{m-1} [ (u - p)^m F ] / (m - 1)!` evaluated at `u = p`.
//!
//! Factors whose exponent in the active variable is `±2` are first split
//! rationally, `(1 - B^2) = (1 - B)(1 + B)`, so that inside poles always
//! come from exponent-one factors; a configuration that cannot be reduced to
//! rational pole locations is reported as [`Error::UnsupportedPole`] rather
//! than silently approximated.
//!
//! Everything here is independent of the character-theoretic series: the two
//! must agree coefficient by coefficient, and the module also exposes the
//! *naive* constant-term reading (geometric expansion against
//! `prod (1 + u_i^{-2})`, no contour analysis) precisely because it is wrong
//! — it yields 122 for `k = 5`, `d = 2` where the true dimension is 0, which
//! pins down that the residue bookkeeping above is not optional.

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::scalar::{qint, QRat};
use crate::vars::{residue_u, var_name, VarId, RESIDUE_T};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomials over the rationals in `t, u_1 .. u_k`.
pub type TPoly = Poly<QRat>;

/// `q^n` for integer `n` (negative allowed; `q` must be nonzero then).
fn qrat_pow(q: &QRat, n: i32) -> QRat {
    let mut base = q.clone();
    let mut e = n;
    if e < 0 {
        assert!(!base.is_zero(), "negative power of zero");
        base = base.recip();
        e = -e;
    }
    let mut acc = QRat::one();
    for _ in 0..e {
        acc *= base.clone();
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact integer.
fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn qrat_from_bigint(n: BigInt) -> QRat {
    QRat::from_integer(n)
}

// ---------------------------------------------------------------------------
// Scaled monomials
// ---------------------------------------------------------------------------

/// A nonzero rational multiple of a Laurent monomial, `c * M`.
///
/// These are the exact pole locations and factor "bodies" the engine moves
/// around: closed under multiplication and integer powers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScaledMonomial {
    coeff: QRat,
    mono: Monomial,
}

impl ScaledMonomial {
    fn new(coeff: QRat, mono: Monomial) -> Self {
        assert!(!coeff.is_zero(), "scaled monomial with zero coefficient");
        ScaledMonomial { coeff, mono }
    }

    fn one() -> Self {
        ScaledMonomial::new(QRat::one(), Monomial::one())
    }

    /// The coefficient `c`.
    pub fn coeff(&self) -> &QRat {
        &self.coeff
    }

    /// The monomial part `M`.
    pub fn monomial(&self) -> &Monomial {
        &self.mono
    }

    fn mul(&self, other: &ScaledMonomial) -> ScaledMonomial {
        ScaledMonomial::new(self.coeff.clone() * other.coeff.clone(), self.mono.mul(&other.mono))
    }

    fn pow(&self, n: i32) -> ScaledMonomial {
        ScaledMonomial::new(qrat_pow(&self.coeff, n), self.mono.pow(n))
    }

    fn neg(&self) -> ScaledMonomial {
        ScaledMonomial::new(-self.coeff.clone(), self.mono.clone())
    }

    /// Is this literally the scalar `1`?
    fn is_unit_one(&self) -> bool {
        self.mono.is_one() && self.coeff.is_one()
    }

    /// Square root if the coefficient is a rational square and every
    /// exponent is even.
    fn sqrt(&self) -> Option<ScaledMonomial> {
        let root = crate::scalar::qrat_sqrt(&self.coeff)?;
        if self.mono.iter().any(|(_, e)| e % 2 != 0) {
            return None;
        }
        let half = Monomial::from_pairs(self.mono.iter().map(|(v, e)| (v, e / 2)));
        Some(ScaledMonomial::new(root, half))
    }
}

impl fmt::Display for ScaledMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "{}", self.coeff);
        }
        let m: Vec<String> = self
            .mono
            .iter()
            .map(|(v, e)| {
                if e == 1 {
                    var_name(v)
                } else {
                    format!("{}^{}", var_name(v), e)
                }
            })
            .collect();
        if self.coeff.is_one() {
            write!(f, "{}", m.join("*"))
        } else {
            write!(f, "{}*{}", self.coeff, m.join("*"))
        }
    }
}

// ---------------------------------------------------------------------------
// Factored rational terms
// ---------------------------------------------------------------------------

/// One denominator factor `(1 - c M)^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    base: ScaledMonomial,
    multiplicity: u32,
}

impl Factor {
    fn new(base: ScaledMonomial, multiplicity: u32) -> Self {
        assert!(multiplicity > 0);
        Factor { base, multiplicity }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity == 1 {
            write!(f, "(1 - {})", self.base)
        } else {
            write!(f, "(1 - {})^{}", self.base, self.multiplicity)
        }
    }
}

/// A single exact term `numerator / prod_j (1 - c_j M_j)^{e_j}`.
///
/// The engine never recombines different terms over a common denominator;
/// sums stay sums ([`RationalSum`]), which keeps every intermediate object
/// small.
#[derive(Clone, Debug)]
pub struct FactoredTerm {
    numerator: TPoly,
    factors: Vec<Factor>,
}

impl FactoredTerm {
    /// Build a term, normalising the factor list (equal bases merged, the
    /// order canonical).
    pub fn new(numerator: TPoly, factors: Vec<Factor>) -> Result<Self> {
        let mut merged: BTreeMap<ScaledMonomial, u32> = BTreeMap::new();
        let mut term = FactoredTerm { numerator, factors: Vec::new() };
        for f in factors {
            if f.base.mono.is_one() {
                // A constant factor (1 - c)^e is a scalar: fold it into the
                // numerator (c = 1 would be a genuine zero denominator).
                let c = QRat::one() - f.base.coeff.clone();
                if c.is_zero() {
                    return Err(Error::UnsupportedPole(
                        "denominator factor (1 - 1) is identically zero".into(),
                    ));
                }
                let scale = qrat_pow(&c, -(f.multiplicity as i32));
                term.numerator = term.numerator.scale(&scale)?;
            } else {
                *merged.entry(f.base).or_insert(0) += f.multiplicity;
            }
        }
        term.factors =
            merged.into_iter().map(|(base, multiplicity)| Factor { base, multiplicity }).collect();
        Ok(term)
    }

    /// The constant term `c` (no denominator).
    pub fn constant(c: QRat) -> Self {
        FactoredTerm { numerator: TPoly::constant(c), factors: Vec::new() }
    }

    /// Numerator polynomial.
    pub fn numerator(&self) -> &TPoly {
        &self.numerator
    }

    /// Denominator factors.
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Does the variable `v` occur anywhere in this term?
    pub fn mentions_var(&self, v: VarId) -> bool {
        self.numerator.terms().any(|(m, _)| m.exponent_of(v) != 0)
            || self.factors.iter().any(|f| f.base.mono.exponent_of(v) != 0)
    }

    /// Substitute `var := p` (a scaled monomial in the *other* variables).
    fn substitute(&self, var: VarId, p: &ScaledMonomial) -> Result<FactoredTerm> {
        assert_eq!(p.mono.exponent_of(var), 0, "substitution value mentions the variable");
        let mut numerator = TPoly::zero();
        for (m, c) in self.numerator.terms() {
            let (a, rest) = m.split_var(var);
            let coeff = c.clone() * qrat_pow(&p.coeff, a);
            numerator.add_term(rest.mul(&p.mono.pow(a)), coeff)?;
        }
        let mut factors = Vec::new();
        for f in &self.factors {
            let (d, rest) = f.base.mono.split_var(var);
            if d == 0 {
                factors.push(f.clone());
                continue;
            }
            let base = ScaledMonomial::new(
                f.base.coeff.clone() * qrat_pow(&p.coeff, d),
                rest.mul(&p.mono.pow(d)),
            );
            if base.is_unit_one() {
                return Err(Error::UnsupportedPole(format!(
                    "factor {} vanishes identically at {} = {}",
                    f,
                    var_name(var),
                    p
                )));
            }
            factors.push(Factor::new(base, f.multiplicity));
        }
        FactoredTerm::new(numerator, factors)
    }

    /// d/d`var` of this term, as a single term over the common denominator
    /// in which every `var`-dependent factor gains one extra power.
    fn derivative(&self, var: VarId) -> Result<FactoredTerm> {
        let dep: Vec<usize> = (0..self.factors.len())
            .filter(|&i| self.factors[i].base.mono.exponent_of(var) != 0)
            .collect();
        // prod_{i in dep} (1 - M_i) with factor i omitted, as a polynomial.
        let product_without = |skip: Option<usize>| -> Result<TPoly> {
            let mut acc = TPoly::one();
            for &i in &dep {
                if Some(i) == skip {
                    continue;
                }
                let b = &self.factors[i].base;
                let lin = TPoly::one().sub(&TPoly::term(b.mono.clone(), b.coeff.clone()))?;
                acc = acc.mul(&lin)?;
            }
            Ok(acc)
        };
        let mut numerator = self.numerator.partial(var).mul(&product_without(None)?)?;
        for &i in &dep {
            let f = &self.factors[i];
            let (d, rest) = f.base.mono.split_var(var);
            // d/du (c S u^d) = c d S u^{d-1}
            let dcoeff = f.base.coeff.clone() * qint(i64::from(d)) * qint(i64::from(f.multiplicity));
            let dmono = rest.mul(&Monomial::var_pow(var, d - 1));
            let piece = self
                .numerator
                .mul(&TPoly::term(dmono, dcoeff))?
                .mul(&product_without(Some(i))?)?;
            numerator = numerator.add(&piece)?;
        }
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let extra = if dep.contains(&i) { 1 } else { 0 };
                Factor::new(f.base.clone(), f.multiplicity + extra)
            })
            .collect();
        FactoredTerm::new(numerator, factors)
    }

    fn scale(&self, c: &QRat) -> Result<FactoredTerm> {
        Ok(FactoredTerm { numerator: self.numerator.scale(c)?, factors: self.factors.clone() })
    }

    /// Exact power-series coefficients in `t` of this (univariate) term:
    /// returns `(offset, coeffs)` where `coeffs[i]` multiplies
    /// `t^{offset + i}` and everything above `n_max` is truncated.
    fn t_series(&self, n_max: u32) -> Result<(i64, Vec<QRat>)> {
        let mut numerator = self.numerator.clone();
        let mut positive: Vec<(QRat, u32, u32)> = Vec::new(); // (c, a, mult): (1 - c t^a)^{-mult}
        for f in &self.factors {
            let a = f.base.mono.exponent_of(RESIDUE_T);
            if f.base.mono != Monomial::var_pow(RESIDUE_T, a) {
                return Err(Error::UnsupportedPole(format!(
                    "series requested for a term that still depends on a torus variable: {}",
                    f
                )));
            }
            assert!(a != 0, "constant factors are folded at construction");
            if a > 0 {
                positive.push((f.base.coeff.clone(), a as u32, f.multiplicity));
            } else {
                // (1 - c t^{-b})^{-e} = (-c)^{-e} t^{be} (1 - c^{-1} t^{b})^{-e}
                let b = (-a) as u32;
                let e = f.multiplicity;
                let scale = qrat_pow(&(-f.base.coeff.clone()), -(e as i32));
                let shift = Monomial::var_pow(RESIDUE_T, (b * e) as i32);
                numerator = numerator.mul_term(&shift, &scale)?;
                positive.push((qrat_pow(&f.base.coeff, -1), b, e));
            }
        }
        let offset = numerator
            .terms()
            .map(|(m, _)| i64::from(m.exponent_of(RESIDUE_T)))
            .min()
            .unwrap_or(0);
        if numerator.is_zero() {
            return Ok((0, vec![]));
        }
        let len = (i64::from(n_max) - offset + 1).max(0) as usize;
        let mut series = vec![QRat::zero(); len];
        for (m, c) in numerator.terms() {
            let idx = i64::from(m.exponent_of(RESIDUE_T)) - offset;
            if (idx as usize) < len {
                series[idx as usize] += c.clone();
            }
        }
        // Divide by each (1 - c t^a) via the prefix recurrence b_i += c b_{i-a}.
        for (c, a, mult) in positive {
            for _ in 0..mult {
                for i in (a as usize)..len {
                    let prev = series[i - a as usize].clone() * c.clone();
                    series[i] += prev;
                }
            }
        }
        Ok((offset, series))
    }
}

impl fmt::Display for FactoredTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        let den: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) / [{}]", self.numerator, den.join(" "))
    }
}

/// A finite sum of [`FactoredTerm`]s — the working representation of every
/// intermediate stage of the integration.
#[derive(Clone, Debug, Default)]
pub struct RationalSum {
    terms: Vec<FactoredTerm>,
}

impl RationalSum {
    fn push(&mut self, t: FactoredTerm) {
        if !t.is_zero() {
            self.terms.push(t);
        }
    }

    /// The terms of the sum.
    pub fn terms(&self) -> &[FactoredTerm] {
        &self.terms
    }

    /// Does any term mention `v`?
    pub fn mentions_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|t| t.mentions_var(v))
    }

    /// Exact coefficients of `t^0 .. t^{n_max}`.
    ///
    /// Individual terms typically have Laurent tails in `t`; those must
    /// cancel in the sum, and this checks that they do.
    pub fn t_series(&self, n_max: u32) -> Result<Vec<QRat>> {
        let mut offset: i64 = 0;
        let mut acc: Vec<QRat> = Vec::new();
        for term in &self.terms {
            let (off, coeffs) = term.t_series(n_max)?;
            if coeffs.is_empty() {
                continue;
            }
            if off < offset {
                let shift = (offset - off) as usize;
                let mut next = vec![QRat::zero(); shift];
                next.extend(acc);
                acc = next;
                offset = off;
            }
            for (i, c) in coeffs.into_iter().enumerate() {
                let idx = (off - offset) as usize + i;
                if idx >= acc.len() {
                    acc.resize(idx + 1, QRat::zero());
                }
                acc[idx] += c;
            }
        }
        // Everything below t^0 must cancel exactly.
        for (i, c) in acc.iter().enumerate() {
            let deg = offset + i as i64;
            if deg < 0 && !c.is_zero() {
                return Err(Error::UnsupportedPole(format!(
                    "residue sum has a non-cancelling pole in t: coefficient {} at t^{}",
                    c, deg
                )));
            }
        }
        let mut out = vec![QRat::zero(); n_max as usize + 1];
        for (i, c) in acc.into_iter().enumerate() {
            let deg = offset + i as i64;
            if (0..=i64::from(n_max)).contains(&deg) {
                out[deg as usize] = c;
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Contour orders
// ---------------------------------------------------------------------------

/// A nested-contour hierarchy for the iterated residue.
///
/// `vars()[0]` is always `t` (the innermost scale); after it come the torus
/// variables from smallest magnitude to largest.  Integration eliminates the
/// torus variables in ascending order (smallest contour first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContourOrder {
    vars: Vec<VarId>,
}

impl ContourOrder {
    /// The standard hierarchy `|t| << |u_k| << ... << |u_1|`.
    pub fn standard(k: usize) -> Result<Self> {
        if !(1..=5).contains(&k) {
            return Err(Error::OutOfRange(format!("qubit count {} out of range 1..=5", k)));
        }
        let mut vars = vec![RESIDUE_T];
        for i in (1..=k).rev() {
            vars.push(residue_u(i));
        }
        Ok(ContourOrder { vars })
    }

    /// A custom hierarchy: torus indices listed from smallest magnitude to
    /// largest (e.g. `[2, 1]` reproduces [`ContourOrder::standard`] for
    /// `k = 2`, `[1, 2]` swaps the two contours).
    pub fn from_ascending(u_indices: &[usize]) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut vars = vec![RESIDUE_T];
        for &i in u_indices {
            if !(1..=5).contains(&i) || !seen.insert(i) {
                return Err(Error::OutOfRange(format!(
                    "torus indices must be distinct and within 1..=5, got {:?}",
                    u_indices
                )));
            }
            vars.push(residue_u(i));
        }
        Ok(ContourOrder { vars })
    }

    /// The hierarchy, smallest magnitude first (starts with `t`).
    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    /// The torus variables in the order they are integrated out.
    pub fn integration_sequence(&self) -> &[VarId] {
        &self.vars[1..]
    }

    /// Is the scaled monomial `p` infinitesimal relative to `var` under this
    /// hierarchy?  Scans exponents of `p / var` smallest scale first; the
    /// first nonzero exponent decides.
    fn is_inside(&self, p: &ScaledMonomial, var: VarId) -> bool {
        let q = p.mono.mul(&Monomial::var_pow(var, -1));
        for &v in &self.vars {
            let e = q.exponent_of(v);
            if e != 0 {
                return e > 0;
            }
        }
        // p / var == 1 is not infinitesimal.
        false
    }
}

// ---------------------------------------------------------------------------
// Integrand construction
// ---------------------------------------------------------------------------

/// The full Molien–Weyl integrand for `k` qubits as a single factored term:
/// numerator `prod_i (1 - u_i^{-2}) u_i^{-1}`, denominator `prod_{a} (1 - t
/// u^a)` over all sign vectors `a` in `{+-1}^k`.
pub fn build_integrand(k: usize) -> Result<FactoredTerm> {
    if !(1..=5).contains(&k) {
        return Err(Error::OutOfRange(format!("qubit count {} out of range 1..=5", k)));
    }
    let mut numerator = TPoly::one();
    for i in 1..=k {
        let u = residue_u(i);
        let measure = TPoly::term(Monomial::var_pow(u, -1), QRat::one())
            .sub(&TPoly::term(Monomial::var_pow(u, -3), QRat::one()))?;
        numerator = numerator.mul(&measure)?;
    }
    let mut factors = Vec::new();
    for bits in 0..(1u32 << k) {
        let mut mono = Monomial::var(RESIDUE_T);
        for i in 1..=k {
            let sign = if bits >> (i - 1) & 1 == 0 { 1 } else { -1 };
            mono = mono.mul(&Monomial::var_pow(residue_u(i), sign));
        }
        factors.push(Factor::new(ScaledMonomial::new(QRat::one(), mono), 1));
    }
    FactoredTerm::new(numerator, factors)
}

// ---------------------------------------------------------------------------
// The single-variable residue step
// ---------------------------------------------------------------------------

/// Split factors with `|exponent of var| >= 2` into exponent-one pieces where
/// this is rationally possible: `(1 - B^2)^e = (1 - B)^e (1 + B)^e`.
/// Unsplittable factors are kept; they only become an error if one of their
/// roots turns out to lie inside the contour.
fn split_factors(factors: &[Factor], var: VarId) -> Vec<Factor> {
    let mut out = Vec::new();
    let mut queue: Vec<Factor> = factors.to_vec();
    while let Some(f) = queue.pop() {
        let d = f.base.mono.exponent_of(var);
        if d.abs() < 2 {
            out.push(f);
            continue;
        }
        match f.base.sqrt() {
            Some(b) => {
                queue.push(Factor::new(b.clone(), f.multiplicity));
                queue.push(Factor::new(b.neg(), f.multiplicity));
            }
            None => out.push(f),
        }
    }
    out
}

/// The residue of `term` at `u = 0` (`u` = `var`): exact extraction of the
/// coefficient of `u^{-1}` after rewriting every factor with a pole at the
/// origin in the form `(1 - B u^d)^{-e}` with `d > 0`.
fn origin_residue(term: &FactoredTerm, var: VarId) -> Result<FactoredTerm> {
    let mut numerator = term.numerator.clone();
    let mut expanding: Vec<(ScaledMonomial, u32, u32)> = Vec::new(); // (B, d, e)
    let mut kept: Vec<Factor> = Vec::new();
    for f in &term.factors {
        let (d, rest) = f.base.mono.split_var(var);
        match d.cmp(&0) {
            std::cmp::Ordering::Equal => kept.push(f.clone()),
            std::cmp::Ordering::Greater => {
                let b = ScaledMonomial::new(f.base.coeff.clone(), rest);
                expanding.push((b, d as u32, f.multiplicity));
            }
            std::cmp::Ordering::Less => {
                // (1 - S u^{-b})^{-e} = (-S)^{-e} u^{be} (1 - S^{-1} u^{b})^{-e}
                let b = (-d) as u32;
                let e = f.multiplicity;
                let s = ScaledMonomial::new(f.base.coeff.clone(), rest);
                let prefactor = s.neg().pow(-(e as i32));
                let shift = Monomial::var_pow(var, (b * e) as i32).mul(&prefactor.mono);
                numerator = numerator.mul_term(&shift, &prefactor.coeff)?;
                expanding.push((s.pow(-1), b, e));
            }
        }
    }
    // For each numerator term c * R * u^a we need the coefficient of
    // u^{-1 - a} in prod (1 - B_i u^{d_i})^{-e_i}  (zero unless -1 - a >= 0),
    // i.e. a finite sum over exponent vectors (j_i) with sum j_i d_i = -1 - a
    // weighted by prod C(e_i - 1 + j_i, j_i) B_i^{j_i}.
    let mut result = TPoly::zero();
    for (m, c) in numerator.terms() {
        let (a, rest) = m.split_var(var);
        let need = -1 - i64::from(a);
        if need < 0 {
            continue;
        }
        let mut stack: Vec<(usize, i64, ScaledMonomial)> =
            vec![(0, need, ScaledMonomial::one())];
        while let Some((i, remaining, acc)) = stack.pop() {
            if i == expanding.len() {
                if remaining == 0 {
                    result.add_term(rest.mul(&acc.mono), c.clone() * acc.coeff.clone())?;
                }
                continue;
            }
            let (b, d, e) = &expanding[i];
            let mut j: i64 = 0;
            while j * i64::from(*d) <= remaining {
                let weight =
                    qrat_from_bigint(binomial(u64::from(*e) - 1 + j as u64, j as u64));
                let contrib = ScaledMonomial::new(
                    acc.coeff.clone() * weight * qrat_pow(&b.coeff, j as i32),
                    acc.mono.mul(&b.mono.pow(j as i32)),
                );
                stack.push((i + 1, remaining - j * i64::from(*d), contrib));
                j += 1;
            }
        }
    }
    FactoredTerm::new(result, kept)
}

/// The residue of `term` at the inside pole `u = p` (`u` = `var`) of total
/// multiplicity `m`:  `(d/du)^{m-1} [(u - p)^m F] / (m-1)!` at `u = p`.
fn pole_residue(term: &FactoredTerm, var: VarId, p: &ScaledMonomial, m: u32) -> Result<FactoredTerm> {
    let mut numerator = term.numerator.clone();
    let mut rest: Vec<Factor> = Vec::new();
    for f in &term.factors {
        let (d, s) = f.base.mono.split_var(var);
        let body = ScaledMonomial::new(f.base.coeff.clone(), s);
        if d == -1 && body == *p {
            // (1 - p/u)^{-e} = u^e (u - p)^{-e}
            numerator = numerator.mul_term(&Monomial::var_pow(var, f.multiplicity as i32), &QRat::one())?;
        } else if d == 1 && body == p.pow(-1) {
            // (1 - u/p)^{-e} = (-p)^e (u - p)^{-e}
            let pre = p.neg().pow(f.multiplicity as i32);
            numerator = numerator.mul_term(&pre.mono, &pre.coeff)?;
        } else {
            // Any other factor must stay nonzero at u = p.
            if d != 0 && body.mul(&p.pow(d)).is_unit_one() {
                return Err(Error::UnsupportedPole(format!(
                    "pole at {} = {} is shared with factor {} of incompatible shape",
                    var_name(var),
                    p,
                    f
                )));
            }
            rest.push(f.clone());
        }
    }
    let mut g = FactoredTerm::new(numerator, rest)?;
    for _ in 1..m {
        g = g.derivative(var)?;
    }
    g = g.substitute(var, p)?;
    let mut fact = QRat::one();
    for i in 2..=i64::from(m - 1).max(1) {
        fact *= qint(i);
    }
    g.scale(&fact.recip())
}

/// The joint residue of `term` at a conjugate pair of simple poles `u = ±r`
/// with `r^2 = x` (`x` a scaled monomial whose square root is irrational —
/// otherwise the factor would have been split).
///
/// With the pair factor normalised to `(1 - u^2/x)^{-1}` and the remaining
/// denominator split into a `u`-free part and `u`-dependent factors with
/// expanded product `D(u)`, the sum of the two residues is
///
/// ```text
///   res_r + res_{-r} = -x H(x) / (u-free part * prod_l gamma_l)
/// ```
///
/// where `H` collects the odd-in-`u` terms of `N(u) D(-u)` via
/// `u^{2g+1} -> x^g`, and `gamma_l = (1 - B_l(r))(1 - B_l(-r))` is again of
/// the factor shape `(1 - c M)`: for `B_l = c S u^{2g}` it is
/// `(1 - c S x^g)^2`, for odd exponent `2g+1` it is `(1 - c^2 S^2 x^{2g+1})`.
/// Everything is symmetric in `r <-> -r`, so only integer powers of `x`
/// appear and the result stays inside the factored representation.
fn pair_residue(term: &FactoredTerm, var: VarId, x: &ScaledMonomial) -> Result<FactoredTerm> {
    let mut numerator = term.numerator.clone();
    let mut u_dep: Vec<Factor> = Vec::new();
    let mut u_free: Vec<Factor> = Vec::new();
    let mut found = false;
    for f in &term.factors {
        let (d, s) = f.base.mono.split_var(var);
        let body = ScaledMonomial::new(f.base.coeff.clone(), s);
        if !found && d.abs() == 2 && f.multiplicity == 1 && body.pow(-d.signum()) == *x {
            found = true;
            if d == -2 {
                // (1 - x u^{-2})^{-1} = (-x)^{-1} u^2 (1 - u^2/x)^{-1}
                let pre = x.neg().pow(-1);
                numerator =
                    numerator.mul_term(&pre.mono.mul(&Monomial::var_pow(var, 2)), &pre.coeff)?;
            }
            // d == +2 is already of the form (1 - u^2/x).
            continue;
        }
        if d == 0 {
            u_free.push(f.clone());
        } else {
            u_dep.push(f.clone());
        }
    }
    assert!(found, "pair residue requested for a location no factor produces");

    // Expanded D(-u) over the u-dependent rest factors.
    let mut d_neg = TPoly::one();
    for f in &u_dep {
        let (d, s) = f.base.mono.split_var(var);
        let sign = if d % 2 == 0 { QRat::one() } else { -QRat::one() };
        let lin = TPoly::one().sub(&TPoly::term(
            s.mul(&Monomial::var_pow(var, d)),
            f.base.coeff.clone() * sign,
        ))?;
        for _ in 0..f.multiplicity {
            d_neg = d_neg.mul(&lin)?;
        }
    }
    let q_poly = numerator.mul(&d_neg)?;

    // H(x): odd part of q(u), with u^{2g+1} -> x^g.
    let mut h = TPoly::zero();
    for (m, c) in q_poly.terms() {
        let (j, rest) = m.split_var(var);
        if j.rem_euclid(2) == 1 {
            let g = (j - 1) / 2;
            h.add_term(rest.mul(&x.mono.pow(g)), c.clone() * qrat_pow(&x.coeff, g))?;
        }
    }
    let result_numerator = h.mul_term(&x.mono, &(-x.coeff.clone()))?;

    // gamma factors.
    let mut factors = u_free;
    for f in &u_dep {
        let (d, s) = f.base.mono.split_var(var);
        let body = ScaledMonomial::new(f.base.coeff.clone(), s);
        if d % 2 == 0 {
            factors.push(Factor::new(body.mul(&x.pow(d / 2)), 2 * f.multiplicity));
        } else {
            factors.push(Factor::new(body.pow(2).mul(&x.pow(d)), f.multiplicity));
        }
    }
    FactoredTerm::new(result_numerator, factors)
}

/// Integrate one torus variable out of one term: the sum of the residues at
/// `u = 0` and at every pole (or conjugate pole pair) inside the `var`
/// contour of `order`.
pub fn inner_residue(term: &FactoredTerm, var: VarId, order: &ContourOrder) -> Result<RationalSum> {
    let factors = split_factors(&term.factors, var);
    let term = FactoredTerm::new(term.numerator.clone(), factors)?;

    // Classify poles: rational locations from exponent-one factors are
    // grouped by location; unsplittable exponent-two factors contribute
    // conjugate pairs grouped by the square `x = r^2` of their roots.
    let mut inside: BTreeMap<ScaledMonomial, u32> = BTreeMap::new();
    let mut pairs: BTreeMap<ScaledMonomial, u32> = BTreeMap::new();
    for f in &term.factors {
        let (d, s) = f.base.mono.split_var(var);
        if d == 0 {
            continue;
        }
        let body = ScaledMonomial::new(f.base.coeff.clone(), s);
        // Roots satisfy u^{|d|} = body^{-sign(d)}; they are inside exactly
        // when body^{-sign(d)} u^{-|d|} is infinitesimal.
        let root_test = ScaledMonomial::new(
            QRat::one(),
            body.mono.pow(-d.signum()).mul(&Monomial::var_pow(var, -d.abs())),
        );
        if !order.is_inside(&root_test, var) {
            continue;
        }
        match d.abs() {
            1 => {
                *inside.entry(body.pow(-d)).or_insert(0) += f.multiplicity;
            }
            2 => {
                *pairs.entry(body.pow(-d.signum())).or_insert(0) += f.multiplicity;
            }
            n => {
                return Err(Error::UnsupportedPole(format!(
                    "factor {} has an inside pole of degree {} in {} that does not split rationally",
                    f,
                    n,
                    var_name(var)
                )));
            }
        }
    }

    let mut sum = RationalSum::default();
    sum.push(origin_residue(&term, var)?);
    for (p, m) in inside {
        sum.push(pole_residue(&term, var, &p, m)?);
    }
    for (x, m) in pairs {
        if m > 1 {
            return Err(Error::UnsupportedPole(format!(
                "conjugate pole pair at {}^2 = {} has multiplicity {} > 1",
                var_name(var),
                x,
                m
            )));
        }
        sum.push(pair_residue(&term, var, &x)?);
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

/// Compute the Hilbert series of the `k`-qubit invariant ring by iterated
/// residues under the given contour hierarchy, as an exact sum of univariate
/// rational terms in `t`.
pub fn hilbert_series_residue(k: usize, order: &ContourOrder) -> Result<RationalSum> {
    if order.integration_sequence().len() != k {
        return Err(Error::OutOfRange(format!(
            "contour order lists {} torus variables, expected {}",
            order.integration_sequence().len(),
            k
        )));
    }
    let mut sum = RationalSum::default();
    sum.push(build_integrand(k)?);
    for &var in order.integration_sequence() {
        let mut next = RationalSum::default();
        for term in &sum.terms {
            for out in inner_residue(term, var, order)?.terms {
                next.push(out);
            }
        }
        debug_assert!(!next.mentions_var(var));
        sum = next;
    }
    Ok(sum)
}

/// Convenience wrapper: the series coefficients `h_0 .. h_{n_max}` under the
/// standard contour hierarchy.
pub fn residue_series(k: usize, n_max: u32) -> Result<Vec<QRat>> {
    let order = ContourOrder::standard(k)?;
    hilbert_series_residue(k, &order)?.t_series(n_max)
}

// ---------------------------------------------------------------------------
// The naive (wrong) constant-term reading
// ---------------------------------------------------------------------------

/// The *naive* constant-term value at degree `d`: expand `1 / prod (1 - t
/// u^a)` as a geometric series, pair the coefficient of `t^d` against
/// `prod_i (1 + u_i^{-2})`, and take the constant term in every `u_i` — no
/// contour analysis, sign flipped to `+` as in the plain-text reading of the
/// integrand.
///
/// This is **not** the dimension of the degree-`d` invariants.  For `k = 5`,
/// `d = 2` it produces 122 where the true dimension is 0; the discrepancy is
/// the falsifier that forces the contour bookkeeping in
/// [`hilbert_series_residue`].
pub fn naive_constant_term_dimension(k: usize, d: u32) -> Result<BigInt> {
    if !(1..=5).contains(&k) {
        return Err(Error::OutOfRange(format!("qubit count {} out of range 1..=5", k)));
    }
    // Coefficient of t^d in the geometric expansion: sum over multisets of
    // size d drawn from the 2^k sign vectors.  Pairing against
    // prod (1 + u_i^{-2}) and taking the constant term keeps exactly the
    // multisets whose component sums all lie in {0, 2}.
    let vectors: Vec<Vec<i64>> = (0..(1u32 << k))
        .map(|bits| {
            (0..k).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect()
        })
        .collect();
    let mut count = BigInt::zero();
    // Multisets as weakly increasing index sequences.
    let mut stack: Vec<(usize, u32, Vec<i64>)> = vec![(0, 0, vec![0; k])];
    while let Some((min_idx, chosen, sums)) = stack.pop() {
        if chosen == d {
            if sums.iter().all(|&s| s == 0 || s == 2) {
                count += 1;
            }
            continue;
        }
        for idx in min_idx..vectors.len() {
            let mut next = sums.clone();
            for (i, v) in vectors[idx].iter().enumerate() {
                next[i] += v;
            }
            stack.push((idx, chosen + 1, next));
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
