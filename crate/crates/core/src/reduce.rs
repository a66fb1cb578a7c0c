//! q-reduced divisors (G-parking functions), linear equivalence and
//! principality.
//!
//! Reduction runs in two stages. First, debt is pushed towards `q`: for the
//! distance layers `L = ecc(q), ..., 1`, the ball `{v : dist(v, q) < L}` is
//! fired until layer `L` is out of debt. Firing that ball only moves chips
//! from layer `L - 1` to layer `L`, so layers already settled stay settled
//! and `q` ends up holding all remaining debt. Second, Dhar's burning
//! algorithm is run from `q`; while some set `U` stays unburnt, `U` is fired
//! (as many times at once as keeps it nonnegative) and the burn restarts.

use serde::Serialize;

use crate::divisor::{divisor_of, Divisor, FiringScript};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Result of reducing a divisor against base vertex `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedForm {
    pub base: usize,
    pub reduced: Divisor,
    /// `reduced = input + Δ(script)`, normalized so `script[base] = 0`.
    pub script: FiringScript,
    /// Dhar certificate: the order in which vertices burn on `reduced`,
    /// starting with `base`. Covers every vertex.
    pub burn_order: Vec<usize>,
}

/// Reduction machinery for a fixed graph and base vertex, with the BFS
/// layering precomputed. Cheap to reuse across many divisors.
#[derive(Debug, Clone)]
pub struct Reducer<'g> {
    graph: &'g Graph,
    base: usize,
    /// `layers[L]` = vertices at distance `L` from the base.
    layers: Vec<Vec<usize>>,
    dist: Vec<usize>,
    /// number of neighbors one layer closer to the base
    down_degree: Vec<i64>,
    /// number of neighbors one layer further from the base
    up_degree: Vec<i64>,
}

impl<'g> Reducer<'g> {
    pub fn new(graph: &'g Graph, base: usize) -> Result<Reducer<'g>> {
        graph.check_vertex(base)?;
        graph.require_connected()?;
        let n = graph.vertex_count();
        let dist: Vec<usize> = graph
            .distances(base)
            .into_iter()
            .map(|d| d.expect("connected"))
            .collect();
        let ecc = dist.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); ecc + 1];
        for v in 0..n {
            layers[dist[v]].push(v);
        }
        let mut down_degree = vec![0; n];
        let mut up_degree = vec![0; n];
        for v in 0..n {
            for &w in graph.neighbors(v) {
                if dist[w] + 1 == dist[v] {
                    down_degree[v] += 1;
                } else if dist[w] == dist[v] + 1 {
                    up_degree[v] += 1;
                }
            }
        }
        Ok(Reducer {
            graph,
            base,
            layers,
            dist,
            down_degree,
            up_degree,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn base(&self) -> usize {
        self.base
    }

    fn check_size(&self, d: &[i64]) -> Result<()> {
        let n = self.graph.vertex_count();
        if d.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: d.len(),
            });
        }
        let l1: u128 = d.iter().map(|&a| a.unsigned_abs() as u128).sum();
        // keeps every intermediate value and script entry far from i64 range
        if l1.saturating_mul((n as u128) * (n as u128)) > 1u128 << 60 {
            return Err(Error::CoefficientOverflow { l1_norm: l1 });
        }
        Ok(())
    }

    /// Reduces `d` in place. If `script` is given, the firing script is
    /// accumulated into it (`d_out = d_in + Δ(script)`).
    pub fn reduce_in_place(&self, d: &mut [i64], mut script: Option<&mut [i64]>) -> Result<()> {
        self.check_size(d)?;
        self.clear_debt(d, script.as_deref_mut());
        self.burn_and_fire(d, script);
        Ok(())
    }

    fn clear_debt(&self, d: &mut [i64], mut script: Option<&mut [i64]>) {
        for layer in (1..self.layers.len()).rev() {
            let mut times = 0i64;
            for &v in &self.layers[layer] {
                if d[v] < 0 {
                    let c = self.down_degree[v];
                    times = times.max((-d[v] + c - 1) / c);
                }
            }
            if times == 0 {
                continue;
            }
            for &v in &self.layers[layer] {
                d[v] += times * self.down_degree[v];
            }
            for &u in &self.layers[layer - 1] {
                d[u] -= times * self.up_degree[u];
            }
            if let Some(s) = script.as_deref_mut() {
                for v in 0..s.len() {
                    if self.dist[v] < layer {
                        s[v] -= times;
                    }
                }
            }
        }
    }

    /// Runs Dhar's burning from the base on a divisor that is nonnegative
    /// away from it. Returns the burn order and, per vertex, the number of
    /// burnt neighbors when the fire stopped.
    fn burn(&self, d: &[i64], burnt: &mut [bool], count: &mut [i64], order: &mut Vec<usize>) {
        burnt.fill(false);
        count.fill(0);
        order.clear();
        burnt[self.base] = true;
        order.push(self.base);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in self.graph.neighbors(u) {
                if burnt[w] {
                    continue;
                }
                count[w] += 1;
                if count[w] > d[w] {
                    burnt[w] = true;
                    order.push(w);
                }
            }
        }
    }

    fn burn_and_fire(&self, d: &mut [i64], mut script: Option<&mut [i64]>) -> Vec<usize> {
        let n = d.len();
        let mut burnt = vec![false; n];
        let mut count = vec![0i64; n];
        let mut order = Vec::with_capacity(n);
        loop {
            self.burn(d, &mut burnt, &mut count, &mut order);
            if order.len() == n {
                return order;
            }
            // every unburnt v has d[v] >= count[v] = edges from v into the fire
            let times = (0..n)
                .filter(|&v| !burnt[v] && count[v] > 0)
                .map(|v| d[v] / count[v])
                .min()
                .expect("connected graph has an unburnt vertex next to the fire");
            debug_assert!(times >= 1);
            for v in 0..n {
                if burnt[v] {
                    continue;
                }
                d[v] -= times * count[v];
                for &w in self.graph.neighbors(v) {
                    if burnt[w] {
                        d[w] += times;
                    }
                }
                if let Some(s) = script.as_deref_mut() {
                    s[v] -= times;
                }
            }
        }
    }

    pub fn reduce(&self, d: &Divisor) -> Result<ReducedForm> {
        let n = self.graph.vertex_count();
        let mut coeffs = d.coefficients().to_vec();
        self.check_size(&coeffs)?;
        let mut script = vec![0i64; n];
        self.clear_debt(&mut coeffs, Some(&mut script));
        let order = self.burn_and_fire(&mut coeffs, Some(&mut script));
        Ok(ReducedForm {
            base: self.base,
            reduced: Divisor::new(coeffs),
            script: FiringScript::new(script).normalized_at(self.base),
            burn_order: order,
        })
    }

    /// The reduced representative only, without script bookkeeping.
    pub fn canonical(&self, d: &[i64]) -> Result<Vec<i64>> {
        let mut out = d.to_vec();
        self.reduce_in_place(&mut out, None)?;
        Ok(out)
    }

    pub fn is_reduced(&self, d: &[i64]) -> bool {
        let n = self.graph.vertex_count();
        if d.len() != n || (0..n).any(|v| v != self.base && d[v] < 0) {
            return false;
        }
        let mut burnt = vec![false; n];
        let mut count = vec![0; n];
        let mut order = Vec::new();
        self.burn(d, &mut burnt, &mut count, &mut order);
        order.len() == n
    }
}

/// Whether `d` is a G-parking function relative to `q`: nonnegative off
/// `q` and every nonempty `A ⊆ V - q` has a vertex with fewer chips than
/// edges leaving `A`. Decided by Dhar's burning algorithm.
pub fn is_g_parking(g: &Graph, d: &Divisor, q: usize) -> bool {
    let n = g.vertex_count();
    if q >= n || d.len() != n || (0..n).any(|v| v != q && d[v] < 0) {
        return false;
    }
    // burning does not need connectivity; an unreachable vertex never burns
    let mut burnt = vec![false; n];
    let mut count = vec![0i64; n];
    burnt[q] = true;
    let mut queue = vec![q];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &w in g.neighbors(u) {
            if !burnt[w] {
                count[w] += 1;
                if count[w] > d[w] {
                    burnt[w] = true;
                    queue.push(w);
                }
            }
        }
    }
    queue.len() == n
}

/// The unique `q`-reduced divisor linearly equivalent to `d`.
pub fn reduce(g: &Graph, d: &Divisor, q: usize) -> Result<ReducedForm> {
    Reducer::new(g, q)?.reduce(d)
}

/// `Some(f)` with `Δ(f) = d` if `d` is principal.
pub fn is_principal(g: &Graph, d: &Divisor) -> Result<Option<FiringScript>> {
    if d.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            found: d.len(),
        });
    }
    if d.degree() != 0 {
        return Ok(None);
    }
    let form = reduce(g, d, 0)?;
    if form.reduced.is_zero() {
        Ok(Some(-&form.script))
    } else {
        Ok(None)
    }
}

/// `Some(s)` with `d2 = d1 + Δ(s)` if the divisors are linearly
/// equivalent. `s.firing_counts()` gives the chip-firing moves.
pub fn linearly_equivalent(g: &Graph, d1: &Divisor, d2: &Divisor) -> Result<Option<FiringScript>> {
    if d1.degree() != d2.degree() {
        return Ok(None);
    }
    let reducer = Reducer::new(g, 0)?;
    let r1 = reducer.reduce(d1)?;
    let r2 = reducer.reduce(d2)?;
    if r1.reduced != r2.reduced {
        return Ok(None);
    }
    let script = &r1.script - &r2.script;
    debug_assert_eq!(&(d1 + &divisor_of(g, &script)?), d2);
    Ok(Some(script))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Subset-quantifier definition of a G-parking function.
    fn parking_by_subsets(g: &Graph, d: &Divisor, q: usize) -> bool {
        let n = g.vertex_count();
        if (0..n).any(|v| v != q && d[v] < 0) {
            return false;
        }
        let others: Vec<usize> = (0..n).filter(|&v| v != q).collect();
        (1u32..1 << others.len()).all(|mask| {
            let in_a = |v: usize| {
                others
                    .iter()
                    .position(|&x| x == v)
                    .is_some_and(|i| mask & (1 << i) != 0)
            };
            others.iter().enumerate().any(|(i, &v)| {
                mask & (1 << i) != 0
                    && d[v] < g.neighbors(v).iter().filter(|&&w| !in_a(w)).count() as i64
            })
        })
    }

    #[test]
    fn zero_divisor_is_parking() {
        for spec in ["cycle:5", "complete:4", "wheel:4", "path:4"] {
            let (g, _) = families::from_spec(spec).unwrap();
            for q in 0..g.vertex_count() {
                assert!(is_g_parking(&g, &Divisor::zero(g.vertex_count()), q));
            }
        }
    }

    #[test]
    fn triangle_with_two_chips_is_not_parking() {
        let (g, _) = families::cycle(3).unwrap();
        let d = Divisor::new(vec![0, 1, 1]);
        let oracle = parking_by_subsets(&g, &d, 0);
        assert!(!oracle);
        assert_eq!(is_g_parking(&g, &d, 0), oracle);
    }

    #[test]
    fn star_leaves_empty_is_parking() {
        let (g, hub) = families::star(6).unwrap();
        assert!(is_g_parking(&g, &Divisor::point(6, hub, -3), hub));
    }

    #[test]
    fn dhar_matches_subset_oracle_exhaustively() {
        for spec in ["cycle:4", "complete:4", "wheel:4", "path:4", "star:5", "unicyclic:3:0,1"] {
            let (g, _) = families::from_spec(spec).unwrap();
            let n = g.vertex_count();
            for code in 0..4usize.pow(n as u32) {
                let coeffs: Vec<i64> = (0..n).map(|i| ((code / 4usize.pow(i as u32)) % 4) as i64).collect();
                let d = Divisor::new(coeffs);
                for q in 0..n {
                    assert_eq!(is_g_parking(&g, &d, q), parking_by_subsets(&g, &d, q), "{spec} {d} q={q}");
                }
            }
        }
    }

    #[test]
    fn reduced_input_is_returned_unchanged() {
        let (g, _) = families::complete(4).unwrap();
        let d = Divisor::new(vec![5, 0, 1, 2]);
        assert!(is_g_parking(&g, &d, 0));
        let form = reduce(&g, &d, 0).unwrap();
        assert_eq!(form.reduced, d);
        assert_eq!(form.script, FiringScript::zero(4));
    }

    #[test]
    fn wheel_pole_reduces_to_effective() {
        let (g, hub) = families::wheel(4).unwrap();
        for q in 1..5 {
            let form = reduce(&g, &Divisor::point(5, hub, 4), q).unwrap();
            assert!(form.reduced.is_effective(), "q={q}: {}", form.reduced);
        }
    }

    #[test]
    fn reduction_invariants_hold() {
        let (g, _) = families::cycle(4).unwrap();
        let d = Divisor::new(vec![2, 0, -1, 0]);
        let form = reduce(&g, &d, 0).unwrap();
        assert_eq!(&d + &divisor_of(&g, &form.script).unwrap(), form.reduced);
        assert!(is_g_parking(&g, &form.reduced, 0));
        assert_eq!(form.burn_order.len(), 4);
        assert_eq!(form.burn_order[0], 0);
    }

    #[test]
    fn triangle_principal_divisors() {
        let (g, _) = families::cycle(3).unwrap();
        let d = Divisor::new(vec![-3, 3, 0]);
        let f = is_principal(&g, &d).unwrap().expect("3(v1 - v0) is principal on C_3");
        assert_eq!(divisor_of(&g, &f).unwrap(), d);
        assert_eq!(is_principal(&g, &Divisor::new(vec![-1, 1, 0])).unwrap(), None);
        assert_eq!(is_principal(&g, &Divisor::new(vec![1, 0, 0])).unwrap(), None);
        let zero = is_principal(&g, &Divisor::zero(3)).unwrap().unwrap();
        assert!(divisor_of(&g, &zero).unwrap().is_zero());
    }

    #[test]
    fn wheel_equivalences() {
        let (g, hub) = families::wheel(4).unwrap();
        let pole = Divisor::point(5, hub, 4);
        let rim = Divisor::new(vec![0, 1, 1, 1, 1]);
        let s = linearly_equivalent(&g, &pole, &rim).unwrap().unwrap();
        assert_eq!(&pole + &divisor_of(&g, &s).unwrap(), rim);
        // firing the hub once
        assert_eq!(s.normalized_at(1).firing_counts(), vec![1, 0, 0, 0, 0]);

        let d = Divisor::new(vec![1, 0, 0, 0, 0]);
        let same = linearly_equivalent(&g, &d, &d).unwrap().unwrap();
        assert!(divisor_of(&g, &same).unwrap().is_zero());
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(reduce(&g, &Divisor::zero(4), 0), Err(Error::DisconnectedGraph));
    }

    #[test]
    fn oversized_coefficients_rejected() {
        let (g, _) = families::cycle(3).unwrap();
        let d = Divisor::new(vec![i64::MAX / 2, 0, 0]);
        assert!(matches!(reduce(&g, &d, 0), Err(Error::CoefficientOverflow { .. })));
    }
}
