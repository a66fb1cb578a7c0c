//! Enumeration of effective divisors of fixed degree.
//!
//! A divisor in `Div_+^k` is walked as a nondecreasing sequence of `k`
//! vertices; sequences come out in lexicographic order, so `k·v0` is first
//! and `k·v_{n-1}` last. The rank search and the obstruction listings all
//! use this order when they speak of the "least" divisor.

use crate::divisor::Divisor;
use crate::error::{Error, Result};

/// `C(n + k - 1, k)`, saturating.
pub fn multiset_count(n: usize, k: usize) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = match acc.checked_mul(n as u128 + i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn check_cap(context: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::EnumerationCapExceeded { context, needed, cap })
    } else {
        Ok(())
    }
}

/// Iterator over effective divisors of degree `k` supported on `allowed`.
#[derive(Debug, Clone)]
pub struct EffectiveDivisors {
    n: usize,
    allowed: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl EffectiveDivisors {
    /// All of `Div_+^k` on `n` vertices.
    pub fn new(n: usize, k: usize) -> EffectiveDivisors {
        EffectiveDivisors::supported_on(n, (0..n).collect(), k)
    }

    /// Effective divisors of degree `k` with support inside `allowed`
    /// (which should be sorted and duplicate-free).
    pub fn supported_on(n: usize, allowed: Vec<usize>, k: usize) -> EffectiveDivisors {
        let done = allowed.is_empty() && k > 0;
        EffectiveDivisors {
            n,
            allowed,
            idx: vec![0; k],
            done,
        }
    }

    /// Number of divisors the iterator will produce.
    pub fn count_total(&self) -> u128 {
        multiset_count(self.allowed.len(), self.idx.len())
    }
}

impl Iterator for EffectiveDivisors {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        if self.done {
            return None;
        }
        let mut d = Divisor::zero(self.n);
        for &i in &self.idx {
            d[self.allowed[i]] += 1;
        }
        let m = self.allowed.len();
        match (0..self.idx.len()).rev().find(|&i| self.idx[i] + 1 < m) {
            Some(i) => {
                let next = self.idx[i] + 1;
                for slot in &mut self.idx[i..] {
                    *slot = next;
                }
            }
            None => self.done = true,
        }
        Some(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        assert_eq!(multiset_count(4, 0), 1);
        assert_eq!(multiset_count(4, 2), 10);
        assert_eq!(multiset_count(6, 13), 8568);
        for n in 1..6 {
            for k in 0..6 {
                assert_eq!(EffectiveDivisors::new(n, k).count() as u128, multiset_count(n, k));
            }
        }
    }

    #[test]
    fn lexicographic_order() {
        let all: Vec<Vec<i64>> = EffectiveDivisors::new(3, 2).map(|d| d.into_inner()).collect();
        assert_eq!(
            all,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn restricted_support() {
        let all: Vec<Divisor> = EffectiveDivisors::supported_on(4, vec![1, 3], 3).collect();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|d| d[0] == 0 && d[2] == 0 && d.degree() == 3));
        assert_eq!(EffectiveDivisors::supported_on(4, vec![], 0).count(), 1);
        assert_eq!(EffectiveDivisors::supported_on(4, vec![], 2).count(), 0);
    }

    #[test]
    fn cap_check() {
        assert!(check_cap("x", 10, 10).is_ok());
        assert!(matches!(check_cap("x", 11, 10), Err(Error::EnumerationCapExceeded { .. })));
    }
}
