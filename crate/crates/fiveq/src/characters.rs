//! Symmetric-group characters via the Murnaghan–Nakayama rule.
//!
//! `mn_character(λ, μ)` evaluates the irreducible character χ^λ on the
//! conjugacy class of cycle type μ by recursive border-strip removal. Shapes
//! are handled through their beta-number (first-column hook) encoding:
//! removing a border strip of length `r` from λ is exactly replacing a beta
//! number `b` by `b − r` (when `b − r` is free), with sign (−1) to the number
//! of beta numbers strictly between them. Results are memoized on
//! (shape, remaining cycles).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Beta numbers of a shape with `k` rows: λᵢ + (k − i), strictly decreasing.
fn beta_numbers(parts: &[u32]) -> Vec<u32> {
    let k = parts.len() as u32;
    parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - 1 - i as u32))
        .collect()
}

/// Rebuild the (zero-stripped, sorted) partition from an unsorted beta set.
fn partition_from_betas(mut betas: Vec<u32>) -> Vec<u32> {
    betas.sort_unstable_by(|a, b| b.cmp(a));
    let k = betas.len() as u32;
    betas
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (k - 1 - i as u32))
        .filter(|&p| p > 0)
        .collect()
}

type Memo = HashMap<(Vec<u32>, Vec<u32>), i64>;

fn mn_recurse(shape: &[u32], cycles: &[u32], memo: &mut Memo) -> i64 {
    if cycles.is_empty() {
        debug_assert!(shape.is_empty());
        return 1;
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&value) = memo.get(&key) {
        return value;
    }
    let r = cycles[0];
    let rest = &cycles[1..];
    let betas = beta_numbers(shape);
    let mut total = 0i64;
    for (pos, &b) in betas.iter().enumerate() {
        if b < r || betas.contains(&(b - r)) {
            continue;
        }
        // height of the strip = number of beta numbers strictly between
        // b − r and b (they all shift down one row).
        let height = betas
            .iter()
            .filter(|&&c| b - r < c && c < b)
            .count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut next = betas.clone();
        next[pos] = b - r;
        let next_shape = partition_from_betas(next);
        total += sign * mn_recurse(&next_shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// A reusable Murnaghan–Nakayama evaluator with a shared memo table.
#[derive(Default)]
pub struct CharacterTable {
    memo: Memo,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// χ^λ(μ); both partitions must have the same size.
    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> Result<i64> {
        if lambda.n() != mu.n() {
            return Err(Error::CharacterSize {
                lambda: lambda.n(),
                mu: mu.n(),
            });
        }
        Ok(mn_recurse(lambda.parts(), mu.parts(), &mut self.memo))
    }
}

/// One-shot χ^λ(μ).
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    CharacterTable::new().character(lambda, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{factorial, partitions_of, z_mu};
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn chi(lambda: &[u32], mu: &[u32]) -> i64 {
        mn_character(&part(lambda), &part(mu)).unwrap()
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert!(matches!(
            mn_character(&part(&[2, 1]), &part(&[2, 2])),
            Err(Error::CharacterSize { lambda: 3, mu: 4 })
        ));
    }

    #[test]
    fn trivial_character_is_all_ones() {
        for n in 1..=8 {
            for mu in partitions_of(n) {
                assert_eq!(chi(&[n], mu.parts()), 1, "n={n}, mu={mu}");
            }
        }
    }

    #[test]
    fn sign_character_is_the_parity() {
        for n in 1..=8 {
            for mu in partitions_of(n) {
                let expected = if (n as usize - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(chi(&[1; 8][..n as usize].to_vec().as_slice(), mu.parts()), expected);
            }
        }
    }

    #[test]
    fn pinned_s4_values() {
        assert_eq!(chi(&[2, 2], &[1, 1, 1, 1]), 2);
        assert_eq!(chi(&[2, 2], &[3, 1]), -1);
        assert_eq!(chi(&[2, 2], &[2, 1, 1]), 0);
        assert_eq!(chi(&[2, 2], &[2, 2]), 2);
        assert_eq!(chi(&[2, 2], &[4]), 0);
    }

    /// Independent oracle for χ^{(2,2)}: S₄ permutes the three pairings of
    /// {0,1,2,3} into two unordered pairs, and that permutation character is
    /// triv + χ^{(2,2)}, so χ^{(2,2)}(σ) = fix(σ) − 1. Brute-forced over all
    /// 24 permutations.
    #[test]
    fn chi_22_matches_the_pairing_action_oracle() {
        // the three pairings, each as "partner of element i"
        let pairings = [[1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        let perms = all_permutations(4);
        for mu in partitions_of(4) {
            // any permutation with cycle type mu
            let sigma = perms
                .iter()
                .find(|p| cycle_type(p) == mu.parts())
                .expect("every type occurs");
            let fixed = pairings
                .iter()
                .filter(|&&pairing| {
                    (0..4).all(|i| pairing[sigma[i]] == sigma[pairing[i]])
                })
                .count() as i64;
            assert_eq!(chi(&[2, 2], mu.parts()), fixed - 1, "mu={mu}");
        }
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for i in 0..n {
            let mut next = Vec::new();
            for p in out {
                for pos in 0..=i {
                    let mut q = p.clone();
                    q.insert(pos, i);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    fn cycle_type(perm: &[usize]) -> Vec<u32> {
        let mut seen = vec![false; perm.len()];
        let mut cycles = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        cycles
    }

    /// Dimension check: χ^λ(1ⁿ) equals the hook-length formula for all λ ⊢ n ≤ 8.
    #[test]
    fn dimensions_match_hook_lengths() {
        for n in 1..=8u32 {
            let identity = part(&vec![1; n as usize]);
            for lambda in partitions_of(n) {
                let dim = chi(lambda.parts(), identity.parts());
                assert_eq!(BigInt::from(dim), hook_dimension(&lambda), "λ={lambda}");
            }
        }
    }

    fn hook_dimension(lambda: &Partition) -> BigInt {
        let parts = lambda.parts();
        let conj_len = |col: u32| parts.iter().filter(|&&p| p > col).count() as u32;
        let mut hooks = BigInt::from(1);
        for (i, &p) in parts.iter().enumerate() {
            for j in 0..p {
                let arm = p - 1 - j;
                let leg = conj_len(j) - 1 - i as u32;
                hooks *= arm + leg + 1;
            }
        }
        let nf = factorial(lambda.n());
        assert!((&nf % &hooks).is_zero());
        nf / hooks
    }

    /// First orthogonality relation, Σ_μ χ^λ(μ)χ^κ(μ)/z_μ = δ_{λκ}, for all
    /// pairs of shapes of size ≤ 8.
    #[test]
    fn orthogonality_up_to_n_8() {
        use num_rational::BigRational;
        for n in 1..=8u32 {
            let shapes = partitions_of(n);
            let classes: Vec<_> = partitions_of(n)
                .into_iter()
                .map(|mu| {
                    let z = z_mu(&mu);
                    (mu, z)
                })
                .collect();
            let mut table = CharacterTable::new();
            for a in &shapes {
                for b in &shapes {
                    let mut sum = BigRational::zero();
                    for (mu, z) in &classes {
                        let xa = table.character(a, mu).unwrap();
                        let xb = table.character(b, mu).unwrap();
                        sum += BigRational::new(BigInt::from(xa * xb), z.clone());
                    }
                    let expected = if a == b { 1 } else { 0 };
                    assert_eq!(sum, BigRational::from(BigInt::from(expected)));
                }
            }
        }
    }
}
