//! Baker–Norine rank, winnability, Riemann–Roch checks and obstruction
//! sets.
//!
//! `r(D) >= k` iff `D - E` is winnable for every effective `E` of degree
//! `k`. Walking `E` as a nondecreasing vertex sequence gives the recursion
//!
//! ```text
//! m(C, i) = 0                                   if C is unwinnable
//!         = min(m(C, i + 1), 1 + m(C - v_i, i))  otherwise
//! ```
//!
//! where `m(C, i)` is the least degree of an effective `E` supported on
//! `v_i, v_{i+1}, ...` with `C - E` unwinnable. Then `r(D) = m(D, 0) - 1`.
//! Winnability and `m` are class functions, so states are keyed by the
//! reduced representative and shared across queries on the same graph.
//! The same walk, taken greedily, yields the lexicographically least
//! obstruction.

use std::collections::HashMap;

use serde::Serialize;

use crate::divisor::Divisor;
use crate::enumerate::{check_cap, EffectiveDivisors};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::jacobian::DEFAULT_ENUMERATION_CAP;
use crate::reduce::Reducer;

const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub divisor: Divisor,
    pub rank: i64,
    /// Least effective divisor `E` of degree `rank + 1` with `divisor - E`
    /// not equivalent to any effective divisor.
    pub obstruction: Option<Divisor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionSet {
    pub divisor: Divisor,
    pub vertex: usize,
    /// `r(divisor) + 1`
    pub degree: i64,
    pub all_obstructions: Vec<Divisor>,
    /// Members whose support avoids `vertex`.
    pub p_free: Vec<Divisor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct StateKey {
    class: Vec<i64>,
    start: u32,
    excluded: Option<u32>,
}

/// Rank computations on one graph, with a shared memo table.
#[derive(Debug)]
pub struct RankEngine<'g> {
    reducer: Reducer<'g>,
    cap: u64,
    memo: HashMap<StateKey, u32>,
}

impl<'g> RankEngine<'g> {
    pub fn new(g: &'g Graph) -> Result<RankEngine<'g>> {
        RankEngine::with_cap(g, DEFAULT_ENUMERATION_CAP)
    }

    /// `cap` bounds the number of memoized search states.
    pub fn with_cap(g: &'g Graph, cap: u64) -> Result<RankEngine<'g>> {
        Ok(RankEngine {
            reducer: Reducer::new(g, 0)?,
            cap,
            memo: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.reducer.graph()
    }

    pub fn reducer(&self) -> &Reducer<'g> {
        &self.reducer
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn states(&self) -> usize {
        self.memo.len()
    }

    fn check_len(&self, d: &Divisor) -> Result<()> {
        let n = self.graph().vertex_count();
        if d.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: d.len(),
            })
        }
    }

    pub fn canonical(&self, d: &Divisor) -> Result<Vec<i64>> {
        self.check_len(d)?;
        self.reducer.canonical(d.coefficients())
    }

    /// Equivalent to an effective divisor iff the reduced form is
    /// nonnegative at the base too.
    pub fn winnable(&self, d: &Divisor) -> Result<bool> {
        Ok(self.canonical(d)?[self.reducer.base()] >= 0)
    }

    /// Reduced form of `class - v` for a reduced `class`.
    fn minus_vertex(&self, class: &[i64], v: usize) -> Result<Vec<i64>> {
        let mut next = class.to_vec();
        next[v] -= 1;
        // removing a chip keeps a reduced divisor reduced unless it goes negative
        if v != self.reducer.base() && next[v] < 0 {
            self.reducer.reduce_in_place(&mut next, None)?;
        }
        Ok(next)
    }

    /// `allowed` is every vertex except `excluded`, ascending.
    fn min_obstruction(
        &mut self,
        class: &[i64],
        start: usize,
        allowed: &[usize],
        excluded: Option<usize>,
    ) -> Result<u32> {
        if class[self.reducer.base()] < 0 {
            return Ok(0);
        }
        if start == allowed.len() {
            return Ok(UNREACHABLE);
        }
        let excluded_key = excluded.map(|p| p as u32);
        let key = StateKey {
            class: class.to_vec(),
            start: start as u32,
            excluded: excluded_key,
        };
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let skip = self.min_obstruction(class, start + 1, allowed, excluded)?;
        let child = self.minus_vertex(class, allowed[start])?;
        let take = self
            .min_obstruction(&child, start, allowed, excluded)?
            .saturating_add(1);
        let value = skip.min(take);
        check_cap("rank search states", self.memo.len() as u128 + 1, self.cap)?;
        self.memo.insert(key, value);
        Ok(value)
    }

    fn allowed(&self, excluded: Option<usize>) -> Vec<usize> {
        (0..self.graph().vertex_count())
            .filter(|&v| Some(v) != excluded)
            .collect()
    }

    pub fn rank(&mut self, d: &Divisor) -> Result<i64> {
        let class = self.canonical(d)?;
        let allowed = self.allowed(None);
        Ok(self.min_obstruction(&class, 0, &allowed, None)? as i64 - 1)
    }

    /// Least (in enumeration order) effective `E` avoiding `excluded`,
    /// of degree exactly `r(d) + 1`, with `d - E` unwinnable. `None` when no
    /// such `E` exists, which can only happen with an exclusion.
    pub fn least_obstruction(&mut self, d: &Divisor, excluded: Option<usize>) -> Result<Option<Divisor>> {
        if let Some(p) = excluded {
            self.graph().check_vertex(p)?;
        }
        let mut class = self.canonical(d)?;
        let full = self.allowed(None);
        let target = self.min_obstruction(&class, 0, &full, None)?;
        let allowed = self.allowed(excluded);
        if self.min_obstruction(&class, 0, &allowed, excluded)? != target {
            return Ok(None);
        }
        let mut e = Divisor::zero(self.graph().vertex_count());
        let mut start = 0;
        let mut remaining = target;
        while remaining > 0 {
            let v = allowed[start];
            let child = self.minus_vertex(&class, v)?;
            let through = self.min_obstruction(&child, start, &allowed, excluded)?;
            if through.saturating_add(1) == remaining {
                e[v] += 1;
                class = child;
                remaining -= 1;
            } else {
                start += 1;
            }
        }
        Ok(Some(e))
    }

    pub fn certificate(&mut self, d: &Divisor) -> Result<RankCertificate> {
        let rank = self.rank(d)?;
        let obstruction = self.least_obstruction(d, None)?;
        Ok(RankCertificate {
            divisor: d.clone(),
            rank,
            obstruction,
        })
    }

    /// Checks `r(D) = deg(D) + 1 - g + r(K - D)`.
    pub fn riemann_roch_holds(&mut self, d: &Divisor) -> Result<bool> {
        let g = self.graph();
        let genus = g.genus()? as i64;
        let k_minus_d = &g.canonical_divisor() - d;
        let lhs = self.rank(d)?;
        let rhs = d.degree() + 1 - genus + self.rank(&k_minus_d)?;
        Ok(lhs == rhs)
    }

    /// Exhaustive `Obstr(αP)` and its `P`-free part.
    pub fn obstructions(&mut self, p: usize, alpha: i64) -> Result<ObstructionSet> {
        let g = self.graph();
        g.check_vertex(p)?;
        let n = g.vertex_count();
        let divisor = Divisor::point(n, p, alpha);
        let degree = self.rank(&divisor)? + 1;
        let all = EffectiveDivisors::new(n, degree as usize);
        check_cap("obstruction listing", all.count_total(), self.cap)?;
        let mut all_obstructions = Vec::new();
        for e in all {
            if !self.winnable(&(&divisor - &e))? {
                all_obstructions.push(e);
            }
        }
        let p_free = all_obstructions.iter().filter(|e| e[p] == 0).cloned().collect();
        Ok(ObstructionSet {
            divisor,
            vertex: p,
            degree,
            all_obstructions,
            p_free,
        })
    }
}

impl RankCertificate {
    /// Re-verifies the certificate by enumeration: every `E` of degree
    /// `rank` leaves `divisor - E` winnable, and the stored obstruction
    /// does not.
    pub fn verify(&self, engine: &RankEngine<'_>) -> Result<bool> {
        let n = engine.graph().vertex_count();
        if self.rank >= 0 {
            let level = EffectiveDivisors::new(n, self.rank as usize);
            check_cap("certificate check", level.count_total(), engine.cap())?;
            for e in level {
                if !engine.winnable(&(&self.divisor - &e))? {
                    return Ok(false);
                }
            }
        }
        match &self.obstruction {
            Some(e) => Ok(e.is_effective()
                && e.degree() == self.rank + 1
                && !engine.winnable(&(&self.divisor - e))?),
            None => Ok(false),
        }
    }
}

pub fn winnable(g: &Graph, d: &Divisor) -> Result<bool> {
    RankEngine::new(g)?.winnable(d)
}

pub fn rank(g: &Graph, d: &Divisor) -> Result<RankCertificate> {
    RankEngine::new(g)?.certificate(d)
}

pub fn verify_riemann_roch(g: &Graph, d: &Divisor) -> Result<bool> {
    RankEngine::new(g)?.riemann_roch_holds(d)
}

pub fn obstructions(g: &Graph, p: usize, alpha: i64, cap: u64) -> Result<ObstructionSet> {
    RankEngine::with_cap(g, cap)?.obstructions(p, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn negative_degree_is_unwinnable() {
        let (g, _) = families::complete(4).unwrap();
        let d = Divisor::new(vec![3, 2, -1, -5]);
        assert!(!winnable(&g, &d).unwrap());
        let cert = rank(&g, &d).unwrap();
        assert_eq!(cert.rank, -1);
        assert_eq!(cert.obstruction, Some(Divisor::zero(4)));
    }

    #[test]
    fn effective_is_winnable() {
        let (g, _) = families::wheel(5).unwrap();
        assert!(winnable(&g, &Divisor::new(vec![0, 2, 0, 1, 0, 0])).unwrap());
    }

    #[test]
    fn triangle_nontrivial_class_is_unwinnable() {
        let (g, _) = families::cycle(3).unwrap();
        assert!(!winnable(&g, &Divisor::new(vec![-1, 1, 0])).unwrap());
    }

    #[test]
    fn tree_rank_equals_degree() {
        let (g, _) = families::random_tree(7, 11).unwrap();
        let mut engine = RankEngine::new(&g).unwrap();
        for p in 0..7 {
            for alpha in 0..6 {
                assert_eq!(engine.rank(&Divisor::point(7, p, alpha)).unwrap(), alpha);
            }
        }
    }

    #[test]
    fn wheel_ranks() {
        let (g, hub) = families::wheel(4).unwrap();
        let mut engine = RankEngine::new(&g).unwrap();
        let c3 = engine.certificate(&Divisor::point(5, hub, 3)).unwrap();
        assert_eq!(c3.rank, 0);
        assert!(c3.verify(&engine).unwrap());
        let c4 = engine.certificate(&Divisor::point(5, hub, 4)).unwrap();
        assert_eq!(c4.rank, 1);
        assert!(c4.verify(&engine).unwrap());
    }

    #[test]
    fn riemann_roch_examples() {
        let (tree, p) = families::path(5).unwrap();
        for alpha in 0..6 {
            assert!(verify_riemann_roch(&tree, &Divisor::point(5, p, alpha)).unwrap());
        }
        let (uni, _) = families::unicyclic(4, &[0, 1]).unwrap();
        let mut engine = RankEngine::new(&uni).unwrap();
        assert_eq!(engine.rank(&uni.canonical_divisor()).unwrap(), 0);
        assert!(engine.riemann_roch_holds(&Divisor::zero(6)).unwrap());

        let (w, hub) = families::wheel(4).unwrap();
        let mut engine = RankEngine::new(&w).unwrap();
        let d = Divisor::point(5, hub, 3);
        assert!(engine.riemann_roch_holds(&d).unwrap());
        assert_eq!(engine.rank(&(&w.canonical_divisor() - &d)).unwrap(), 0);
    }

    #[test]
    fn tree_obstructions_include_far_multiples() {
        let (g, p) = families::star(4).unwrap();
        for alpha in 0..4 {
            let obs = obstructions(&g, p, alpha, 1_000_000).unwrap();
            assert_eq!(obs.degree, alpha + 1);
            for q in 1..4 {
                assert!(obs.p_free.contains(&Divisor::point(4, q, alpha + 1)));
            }
            // on a tree every divisor of degree α + 1 obstructs
            assert_eq!(obs.all_obstructions.len() as u128, crate::enumerate::multiset_count(4, alpha as usize + 1));
        }
    }

    #[test]
    fn cycle_degree_one_obstructions() {
        let (g, p) = families::cycle(4).unwrap();
        let obs = obstructions(&g, p, 1, 1000).unwrap();
        assert_eq!(obs.degree, 1);
        let expected: Vec<Divisor> = (1..4).map(|q| Divisor::point(4, q, 1)).collect();
        assert_eq!(obs.all_obstructions, expected);
        assert_eq!(obs.p_free, expected);
    }

    #[test]
    fn least_obstruction_respects_exclusion() {
        let (g, p) = families::complete(4).unwrap();
        let mut engine = RankEngine::new(&g).unwrap();
        for alpha in 0..8 {
            let d = Divisor::point(4, p, alpha);
            if let Some(e) = engine.least_obstruction(&d, Some(p)).unwrap() {
                assert_eq!(e[p], 0);
                assert_eq!(e.degree(), engine.rank(&d).unwrap() + 1);
                assert!(!engine.winnable(&(&d - &e)).unwrap());
            }
        }
    }

    #[test]
    fn state_cap_is_enforced() {
        let (g, _) = families::complete(5).unwrap();
        let mut engine = RankEngine::with_cap(&g, 20).unwrap();
        assert!(matches!(
            engine.rank(&Divisor::point(5, 0, 12)),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }
}
