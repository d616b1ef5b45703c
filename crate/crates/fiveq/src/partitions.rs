//! Integer partitions and centralizer orders for symmetric-group sums.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A partition of a non-negative integer: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Partition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Partition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The partitioned integer (sum of parts).
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Map part value → multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, largest-first parts, in descending lexicographic
/// order — `(n)` first, `(1,1,…,1)` last. Deterministic.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= 1 {
            current.push(part);
            recurse(remaining - part, part, current, out);
            current.pop();
            part -= 1;
        }
    }
    recurse(n, n.max(1), &mut current, &mut out);
    out
}

/// Centralizer order z_μ = ∏ᵢ iᵐⁱ·mᵢ! over part values i with multiplicity
/// mᵢ; the conjugacy class of cycle type μ in S_n has n!/z_μ elements.
pub fn z_mu(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (part, mult) in mu.multiplicities() {
        for _ in 0..mult {
            z *= part;
        }
        for j in 1..=mult {
            z *= j;
        }
    }
    z
}

/// n! as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![3, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
        assert_eq!(Partition::new(vec![2, 2]).unwrap().n(), 4);
    }

    #[test]
    fn partition_counts_match_the_classical_sequence() {
        // p(0..20), OEIS A000041
        let p = [
            1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627,
        ];
        for (n, &count) in p.iter().enumerate() {
            assert_eq!(partitions_of(n as u32).len(), count, "p({n})");
        }
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let parts = partitions_of(6);
        // strictly descending lex, (n) first, all-ones last
        assert_eq!(parts.first().unwrap().parts(), &[6]);
        assert_eq!(parts.last().unwrap().parts(), &[1; 6]);
        for w in parts.windows(2) {
            assert!(w[0] > w[1]);
        }
        for mu in &parts {
            assert_eq!(mu.n(), 6);
        }
    }

    #[test]
    fn z_mu_examples() {
        let z = |parts: &[u32]| z_mu(&Partition::new(parts.to_vec()).unwrap());
        assert_eq!(z(&[1, 1, 1, 1]), BigInt::from(24));
        assert_eq!(z(&[2, 2]), BigInt::from(8));
        assert_eq!(z(&[4]), BigInt::from(4));
        assert_eq!(z(&[3, 1]), BigInt::from(3));
        assert_eq!(z(&[2, 1, 1]), BigInt::from(4));
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 0..=10u32 {
            let nf = factorial(n);
            let mut total = BigInt::zero();
            for mu in partitions_of(n) {
                let z = z_mu(&mu);
                assert!((&nf % &z).is_zero(), "z_mu must divide n!");
                total += &nf / z;
            }
            assert_eq!(total, nf, "classes of S_{n}");
        }
    }
}
