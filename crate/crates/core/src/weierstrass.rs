//! The semigroups `H_f(P)`, `H_r(P)` and `H_r^red(P)` of a vertex, computed
//! exactly on a window `[0, B]`, and the containment checks between them.
//!
//! `α ∈ H_f(P)` iff the class of `αP` contains an effective divisor whose
//! support avoids `P`. The set of classes of such divisors of degree `α` is
//! grown one chip at a time (at most `|Jac(G)|` classes per degree), and a
//! representative is kept for each class so that a monopole can be written
//! down for every member.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::connectivity::{self, edge_connectivity};
use crate::divisor::{monopole_witness_valid, Divisor};
use crate::enumerate::check_cap;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rank::RankEngine;
use crate::reduce::linearly_equivalent;
use crate::semigroup::{SemigroupKind, SemigroupWindow, Witness};

pub const DEFAULT_HF_CAP: u64 = 1_000_000;

/// Smallest window in which the gap law and the min-degree statement are
/// both decidable: `max(2g, deg P) + 2`.
pub fn default_bound(g: &Graph, p: usize) -> Result<u64> {
    g.check_vertex(p)?;
    let genus = g.genus()? as u64;
    Ok((2 * genus).max(g.degree(p) as u64) + 2)
}

/// Semigroup computations for one graph. Rank states are cached across
/// vertices and windows.
#[derive(Debug)]
pub struct Weierstrass<'g> {
    engine: RankEngine<'g>,
    hf_cap: u64,
}

impl<'g> Weierstrass<'g> {
    pub fn new(g: &'g Graph) -> Result<Weierstrass<'g>> {
        Weierstrass::with_caps(g, crate::jacobian::DEFAULT_ENUMERATION_CAP, DEFAULT_HF_CAP)
    }

    pub fn with_caps(g: &'g Graph, rank_cap: u64, hf_cap: u64) -> Result<Weierstrass<'g>> {
        Ok(Weierstrass {
            engine: RankEngine::with_cap(g, rank_cap)?,
            hf_cap,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.engine.graph()
    }

    pub fn engine(&mut self) -> &mut RankEngine<'g> {
        &mut self.engine
    }

    pub fn hf_window(&mut self, p: usize, bound: u64) -> Result<SemigroupWindow> {
        let g = self.graph();
        g.check_vertex(p)?;
        let n = g.vertex_count();
        let reducer = self.engine.reducer();
        let mut window = SemigroupWindow::new(SemigroupKind::Hf, bound);
        // reduced class -> effective representative avoiding p
        let mut level: BTreeMap<Vec<i64>, Divisor> = BTreeMap::new();
        level.insert(reducer.canonical(&vec![0; n])?, Divisor::zero(n));
        for alpha in 0..=bound {
            if alpha > 0 {
                let mut next: BTreeMap<Vec<i64>, Divisor> = BTreeMap::new();
                for (class, rep) in &level {
                    for v in (0..n).filter(|&v| v != p) {
                        let mut c = class.clone();
                        c[v] += 1;
                        reducer.reduce_in_place(&mut c, None)?;
                        next.entry(c).or_insert_with(|| {
                            let mut r = rep.clone();
                            r[v] += 1;
                            r
                        });
                    }
                    check_cap("H_f classes per degree", next.len() as u128, self.hf_cap)?;
                }
                level = next;
            }
            let pole = Divisor::point(n, p, alpha as i64);
            let target = reducer.canonical(pole.coefficients())?;
            let Some(rep) = level.get(&target) else { continue };
            let script = linearly_equivalent(g, &pole, rep)?
                .ok_or_else(|| Error::TheoremViolation("class lookup disagrees with reduction".into()))?
                .normalized_at(p);
            let check = monopole_witness_valid(g, &script, p)?;
            if !check.ok || check.alpha != alpha as i64 {
                return Err(Error::TheoremViolation(format!(
                    "monopole witness for {alpha} at vertex {p} failed validation: {check:?}"
                )));
            }
            window.insert(
                alpha,
                Witness::Monopole {
                    script,
                    divisor: rep - &pole,
                },
            );
        }
        Ok(window)
    }

    /// Ranks `r(αP)` for `α = 0..=bound`.
    pub fn pole_ranks(&mut self, p: usize, bound: u64) -> Result<Vec<i64>> {
        let n = self.graph().vertex_count();
        (0..=bound)
            .map(|alpha| self.engine.rank(&Divisor::point(n, p, alpha as i64)))
            .collect()
    }

    pub fn hr_window(&mut self, p: usize, bound: u64) -> Result<SemigroupWindow> {
        self.graph().check_vertex(p)?;
        let ranks = self.pole_ranks(p, bound)?;
        let mut window = SemigroupWindow::new(SemigroupKind::Hr, bound);
        let mut previous = -1;
        for (alpha, &current) in ranks.iter().enumerate() {
            if current == previous + 1 {
                window.insert(alpha as u64, Witness::RankJump { previous, current });
            }
            previous = current;
        }
        Ok(window)
    }

    pub fn hred_window(&mut self, p: usize, bound: u64) -> Result<SemigroupWindow> {
        let hr = self.hr_window(p, bound)?;
        let n = self.graph().vertex_count();
        let mut window = SemigroupWindow::new(SemigroupKind::Hred, bound);
        for (&alpha, witness) in &hr.witnesses {
            let Witness::RankJump { previous, current } = *witness else {
                unreachable!("H_r windows only carry rank jumps")
            };
            let before = Divisor::point(n, p, alpha as i64 - 1);
            if let Some(e) = self.engine.least_obstruction(&before, Some(p))? {
                window.insert(
                    alpha,
                    Witness::ReducedRankJump {
                        previous,
                        current,
                        p_free_obstruction: e,
                    },
                );
            }
        }
        Ok(window)
    }

    pub fn containment_report(&mut self, p: usize, bound: u64) -> Result<ContainmentReport> {
        let g = self.graph();
        g.check_vertex(p)?;
        let genus = g.genus()?;
        if bound < 2 * genus as u64 {
            return Err(Error::BadParameter(format!(
                "window bound {bound} is below 2g = {}",
                2 * genus
            )));
        }
        let hf = self.hf_window(p, bound)?;
        let hr = self.hr_window(p, bound)?;
        let hred = self.hred_window(p, bound)?;
        let min = MinNonzero::evaluate(g, p, &hf)?;
        let hr_gaps = hr.gaps();
        let degree_one_case =
            g.degree(p) == 1 || g.neighbors(p).iter().any(|&w| g.degree(w) == 1);
        let checks = Checks {
            containment_hred_hf: hred.is_subset_of(&hf),
            hred_subset_hr: hred.is_subset_of(&hr),
            hr_subset_hf: hr.is_subset_of(&hf),
            conjecture_counterexamples: hr.difference(&hf),
            hf_minus_hr: hf.difference(&hr),
            min_hf: min.min_nonzero,
            deg_p: g.degree(p),
            lambda: min.edge_connectivity,
            genus,
            is_cut_vertex: min.is_cut_vertex,
            min_degree_theorem: min.holds(),
            hr_gap_count: hr_gaps.len(),
            hr_gap_law: hr_gaps.len() == genus && hr_gaps.iter().all(|&a| a < 2 * genus as u64),
            degree_one_case,
            hred_equals_hr: hred.same_members(&hr),
            hf_closed: hf.is_closed(),
            hr_closed: hr.is_closed(),
        };
        Ok(ContainmentReport {
            graph: g.clone(),
            vertex: p,
            bound,
            hf,
            hr,
            hred,
            checks,
        })
    }
}

/// Smallest nonzero pole order of a monopole at `P`, with the statements
/// that pin it down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinNonzero {
    pub min_nonzero: u64,
    pub degree: usize,
    pub is_cut_vertex: bool,
    /// edges from `P` into each component of `G - P`
    pub component_degrees: Vec<usize>,
    pub edge_connectivity: usize,
}

impl MinNonzero {
    pub fn evaluate(g: &Graph, p: usize, hf: &SemigroupWindow) -> Result<MinNonzero> {
        let degree = g.degree(p);
        if hf.bound < degree as u64 {
            return Err(Error::BadParameter(format!(
                "window bound {} is below deg(P) = {degree}",
                hf.bound
            )));
        }
        let min_nonzero = hf
            .min_nonzero()
            .ok_or_else(|| Error::TheoremViolation(format!("deg(P) = {degree} missing from H_f(P)")))?;
        let components = connectivity::components_of(g, p)?;
        let component_degrees = components
            .iter()
            .map(|comp| g.neighbors(p).iter().filter(|w| comp.binary_search(w).is_ok()).count())
            .collect();
        Ok(MinNonzero {
            min_nonzero,
            degree,
            is_cut_vertex: components.len() >= 2,
            component_degrees,
            edge_connectivity: edge_connectivity(g)?,
        })
    }

    /// min = deg(P) iff P is not a cut vertex; min ≤ deg into every
    /// component; λ(G) ≤ min.
    pub fn holds(&self) -> bool {
        let min = self.min_nonzero as usize;
        let equals_degree = min == self.degree;
        equals_degree != self.is_cut_vertex
            && self.component_degrees.iter().all(|&d| min <= d)
            && self.edge_connectivity <= min
    }
}

/// `min{a ∈ H_f(P) : a ≠ 0}`, failing if any of the statements in
/// [`MinNonzero::holds`] is violated.
pub fn min_nonzero_hf(g: &Graph, p: usize, hf: &SemigroupWindow) -> Result<MinNonzero> {
    let m = MinNonzero::evaluate(g, p, hf)?;
    if !m.holds() {
        return Err(Error::TheoremViolation(format!("minimum nonzero H_f checks failed: {m:?}")));
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checks {
    /// `H_r^red ⊆ H_f` (theorem)
    pub containment_hred_hf: bool,
    /// `H_r^red ⊆ H_r` (definition)
    pub hred_subset_hr: bool,
    /// `H_r ⊆ H_f` (conjecture)
    pub hr_subset_hf: bool,
    pub conjecture_counterexamples: Vec<u64>,
    pub hf_minus_hr: Vec<u64>,
    pub min_hf: u64,
    #[serde(rename = "deg_P")]
    pub deg_p: usize,
    pub lambda: usize,
    pub genus: usize,
    pub is_cut_vertex: bool,
    pub min_degree_theorem: bool,
    pub hr_gap_count: usize,
    /// `|G_r(P)| = g` and `G_r(P) ⊆ [0, 2g-1]`
    pub hr_gap_law: bool,
    /// `P` or a neighbor of `P` has degree one
    pub degree_one_case: bool,
    pub hred_equals_hr: bool,
    pub hf_closed: bool,
    pub hr_closed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentReport {
    pub graph: Graph,
    pub vertex: usize,
    #[serde(rename = "B")]
    pub bound: u64,
    pub hf: SemigroupWindow,
    pub hr: SemigroupWindow,
    pub hred: SemigroupWindow,
    pub checks: Checks,
}

impl ContainmentReport {
    /// Proven statements that failed on this instance. Any entry here is a
    /// bug in the computation, not a mathematical finding.
    pub fn theorem_violations(&self) -> Vec<&'static str> {
        let c = &self.checks;
        let mut out = Vec::new();
        if !c.containment_hred_hf {
            out.push("H_r^red not contained in H_f");
        }
        if !c.hred_subset_hr {
            out.push("H_r^red not contained in H_r");
        }
        if !c.min_degree_theorem {
            out.push("minimum nonzero H_f statements");
        }
        if !c.hr_gap_law {
            out.push("H_r gap law");
        }
        if c.degree_one_case && !c.hred_equals_hr {
            out.push("H_r^red = H_r at degree-one configurations");
        }
        if !c.hf_closed {
            out.push("H_f additive closure");
        }
        out
    }

    pub fn is_conjecture_violation(&self) -> bool {
        !self.checks.hr_subset_hf
    }
}

pub fn hf_window(g: &Graph, p: usize, bound: u64) -> Result<SemigroupWindow> {
    Weierstrass::new(g)?.hf_window(p, bound)
}

pub fn hr_window(g: &Graph, p: usize, bound: u64) -> Result<SemigroupWindow> {
    Weierstrass::new(g)?.hr_window(p, bound)
}

pub fn hred_window(g: &Graph, p: usize, bound: u64) -> Result<SemigroupWindow> {
    Weierstrass::new(g)?.hred_window(p, bound)
}

pub fn containment_report(g: &Graph, p: usize, bound: u64) -> Result<ContainmentReport> {
    Weierstrass::new(g)?.containment_report(p, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn range(b: u64) -> Vec<u64> {
        (0..=b).collect()
    }

    #[test]
    fn tree_windows_are_full() {
        let (g, _) = families::random_tree(7, 5).unwrap();
        let mut w = Weierstrass::new(&g).unwrap();
        for p in 0..7 {
            assert_eq!(w.hf_window(p, 6).unwrap().members(), range(6));
            assert_eq!(w.hr_window(p, 6).unwrap().members(), range(6));
            assert_eq!(w.hred_window(p, 6).unwrap().members(), range(6));
        }
    }

    #[test]
    fn k4_hf_is_three_four() {
        let (g, _) = families::complete(4).unwrap();
        for p in 0..4 {
            assert_eq!(hf_window(&g, p, 10).unwrap().members(), vec![0, 3, 4, 6, 7, 8, 9, 10]);
        }
    }

    #[test]
    fn cycle_vertex_misses_one() {
        let (g, p) = families::cycle(5).unwrap();
        assert_eq!(hf_window(&g, p, 5).unwrap().members(), vec![0, 2, 3, 4, 5]);
    }

    #[test]
    fn unicyclic_hr() {
        let (g, _) = families::unicyclic(4, &[0, 2, 5]).unwrap();
        let mut w = Weierstrass::new(&g).unwrap();
        for p in 0..g.vertex_count() {
            assert_eq!(w.hr_window(p, 4).unwrap().members(), vec![0, 2, 3, 4]);
        }
    }

    #[test]
    fn bridged_triangles() {
        let (g, p) = families::from_spec("bridged:triangle,triangle").unwrap();
        let report = containment_report(&g, p, 4).unwrap();
        assert_eq!(report.hf.members(), range(4));
        assert_eq!(report.hr.gaps().len(), 2);
        assert!(report.hr.gaps().iter().all(|&a| a <= 3));
        assert_eq!(report.checks.hf_minus_hr.len(), 2);
        assert!(report.theorem_violations().is_empty());
    }

    #[test]
    fn degree_one_vertex_hred_equals_hr() {
        let (g, _) = families::clique_plus_pendant(4).unwrap();
        let pendant = 4;
        let bound = default_bound(&g, pendant).unwrap();
        let mut w = Weierstrass::new(&g).unwrap();
        let hr = w.hr_window(pendant, bound).unwrap();
        let hred = w.hred_window(pendant, bound).unwrap();
        assert!(hr.same_members(&hred));
    }

    #[test]
    fn k4_hred_inside_hr_and_hf() {
        let (g, p) = families::complete(4).unwrap();
        let report = containment_report(&g, p, 10).unwrap();
        assert!(report.hred.is_subset_of(&report.hr));
        assert!(report.hred.is_subset_of(&report.hf));
    }

    #[test]
    fn min_nonzero_examples() {
        let (w, hub) = families::wheel(4).unwrap();
        let hf = hf_window(&w, hub, 6).unwrap();
        let m = min_nonzero_hf(&w, hub, &hf).unwrap();
        assert_eq!((m.min_nonzero, m.degree), (4, 4));

        let (g, p) = families::clique_plus_pendant(3).unwrap();
        let hf = hf_window(&g, p, 5).unwrap();
        let m = min_nonzero_hf(&g, p, &hf).unwrap();
        assert_eq!(m.min_nonzero, 1);
        assert!(m.is_cut_vertex);

        let (k4, p) = families::complete(4).unwrap();
        let hf = hf_window(&k4, p, 5).unwrap();
        let m = min_nonzero_hf(&k4, p, &hf).unwrap();
        assert_eq!((m.min_nonzero, m.edge_connectivity), (3, 3));

        let small = hf_window(&k4, p, 2).unwrap();
        assert!(matches!(min_nonzero_hf(&k4, p, &small), Err(Error::BadParameter(_))));
    }

    #[test]
    fn report_rejects_small_window() {
        let (g, p) = families::complete(4).unwrap();
        assert!(matches!(containment_report(&g, p, 5), Err(Error::BadParameter(_))));
    }

    #[test]
    fn report_json_schema() {
        let (g, p) = families::cycle(3).unwrap();
        let report = containment_report(&g, p, 4).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        for key in ["graph", "vertex", "B", "hf", "hr", "hred", "checks"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        for key in ["containment_hred_hf", "hr_subset_hf", "min_hf", "deg_P", "lambda", "genus"] {
            assert!(v["checks"].get(key).is_some(), "missing checks.{key}");
        }
        assert_eq!(v["hf"]["members"], serde_json::json!([0, 2, 3, 4]));
        assert_eq!(v["hf"]["gaps"], serde_json::json!([1]));
        assert_eq!(v["graph"]["n"], 3);
    }
}
