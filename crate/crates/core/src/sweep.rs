//! Batch runs of [`containment_report`](crate::weierstrass::Weierstrass::containment_report)
//! over graph families, looking for vertices with `H_r(P) ⊄ H_f(P)`.
//!
//! Graphs are drawn from one seeded generator before any work starts, so
//! the output does not depend on thread scheduling.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::graph::Graph;
use crate::jacobian::DEFAULT_ENUMERATION_CAP;
use crate::weierstrass::{default_bound, ContainmentReport, Weierstrass, DEFAULT_HF_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    RandomTrees,
    RandomConnected,
    /// every labelled tree for each order in range; `count` is ignored
    AllTrees,
    Cycles,
    Complete,
    /// rim sizes in range
    Wheels,
    /// fixed list of generator specs
    Named(Vec<String>),
}

impl Family {
    pub fn parse(name: &str) -> Result<Family> {
        Ok(match name {
            "random-tree" | "random-trees" => Family::RandomTrees,
            "random-connected" => Family::RandomConnected,
            "all-trees" | "trees" => Family::AllTrees,
            "cycle" | "cycles" => Family::Cycles,
            "complete" => Family::Complete,
            "wheel" | "wheels" => Family::Wheels,
            other => Family::Named(other.split(';').map(str::to_owned).collect()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundPolicy {
    /// `max(2g, deg P) + 2` per instance
    Default,
    Fixed(u64),
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub family: Family,
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub bound: BoundPolicy,
    pub seed: u64,
    pub rank_cap: u64,
    pub hf_cap: u64,
}

impl SweepConfig {
    pub fn new(family: Family, n_min: usize, n_max: usize, count: usize, seed: u64) -> SweepConfig {
        SweepConfig {
            family,
            count,
            n_min,
            n_max,
            bound: BoundPolicy::Default,
            seed,
            rank_cap: DEFAULT_ENUMERATION_CAP,
            hf_cap: DEFAULT_HF_CAP,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min > self.n_max {
            return Err(Error::BadParameter(format!(
                "empty size range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.rank_cap == 0 || self.hf_cap == 0 {
            return Err(Error::BadParameter("caps must be positive".into()));
        }
        Ok(())
    }

    /// The graphs of the sweep, in output order.
    pub fn graphs(&self) -> Result<Vec<Graph>> {
        self.validate()?;
        let sizes = self.n_min..=self.n_max;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let graphs = match &self.family {
            Family::RandomTrees => (0..self.count)
                .map(|_| {
                    let n = rng.gen_range(sizes.clone());
                    families::random_tree_with(n, &mut rng).map(|r| r.0)
                })
                .collect::<Result<Vec<_>>>()?,
            Family::RandomConnected => (0..self.count)
                .map(|_| {
                    let n = rng.gen_range(sizes.clone());
                    families::random_connected_with(n, &mut rng).map(|r| r.0)
                })
                .collect::<Result<Vec<_>>>()?,
            Family::AllTrees => {
                let mut out = Vec::new();
                for n in sizes {
                    out.extend(families::all_trees(n)?);
                }
                out
            }
            Family::Cycles => sizes.map(|k| families::cycle(k).map(|r| r.0)).collect::<Result<_>>()?,
            Family::Complete => sizes.map(|n| families::complete(n).map(|r| r.0)).collect::<Result<_>>()?,
            Family::Wheels => sizes.map(|m| families::wheel(m).map(|r| r.0)).collect::<Result<_>>()?,
            Family::Named(specs) => specs
                .iter()
                .map(|s| families::from_spec(s).map(|r| r.0))
                .collect::<Result<_>>()?,
        };
        Ok(graphs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    /// `H_r(P) ⊄ H_f(P)` in the window
    #[serde(rename = "VIOLATION")]
    Violation,
    #[serde(rename = "theorem_failure")]
    TheoremFailure,
    #[serde(rename = "cap_exceeded")]
    CapExceeded,
    #[serde(rename = "error")]
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub graph_index: usize,
    pub vertex: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub theorem_violations: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ContainmentReport>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub graphs: usize,
    pub pairs: usize,
    pub ok: usize,
    pub violations: usize,
    pub theorem_failures: usize,
    pub cap_exceeded: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn violations(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| r.status == Status::Violation)
    }

    /// One JSON object per (graph, vertex) pair.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for record in &self.records {
            serde_json::to_writer(&mut out, record)?;
            out.write_all(b"\n")?;
        }
        out.flush()
    }
}

fn run_vertex(w: &mut Weierstrass<'_>, config: &SweepConfig, index: usize, p: usize) -> SweepRecord {
    let mut record = SweepRecord {
        graph_index: index,
        vertex: p,
        status: Status::Ok,
        theorem_violations: Vec::new(),
        error: None,
        report: None,
    };
    let bound = match config.bound {
        BoundPolicy::Default => default_bound(w.graph(), p),
        BoundPolicy::Fixed(b) => Ok(b),
    };
    match bound.and_then(|b| w.containment_report(p, b)) {
        Ok(report) => {
            record.theorem_violations = report.theorem_violations();
            record.status = if !record.theorem_violations.is_empty() {
                Status::TheoremFailure
            } else if report.is_conjecture_violation() {
                Status::Violation
            } else {
                Status::Ok
            };
            record.report = Some(report);
        }
        Err(e) => {
            record.status = match e {
                Error::EnumerationCapExceeded { .. } => Status::CapExceeded,
                Error::TheoremViolation(_) => Status::TheoremFailure,
                _ => Status::Error,
            };
            record.error = Some(e.to_string());
        }
    }
    record
}

fn run_graph(g: &Graph, config: &SweepConfig, index: usize) -> Vec<SweepRecord> {
    let mut w = match Weierstrass::with_caps(g, config.rank_cap, config.hf_cap) {
        Ok(w) => w,
        Err(e) => {
            return (0..g.vertex_count())
                .map(|p| SweepRecord {
                    graph_index: index,
                    vertex: p,
                    status: Status::Error,
                    theorem_violations: Vec::new(),
                    error: Some(e.to_string()),
                    report: None,
                })
                .collect()
        }
    };
    (0..g.vertex_count()).map(|p| run_vertex(&mut w, config, index, p)).collect()
}

/// Runs every vertex of every graph. Per-instance failures are recorded in
/// the matching line; only configuration errors abort the sweep.
pub fn conjecture_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let graphs = config.graphs()?;
    let records: Vec<SweepRecord> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| run_graph(g, config, i))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let mut summary = SweepSummary {
        graphs: graphs.len(),
        pairs: records.len(),
        ..SweepSummary::default()
    };
    for r in &records {
        match r.status {
            Status::Ok => summary.ok += 1,
            Status::Violation => summary.violations += 1,
            Status::TheoremFailure => summary.theorem_failures += 1,
            Status::CapExceeded => summary.cap_exceeded += 1,
            Status::Error => summary.errors += 1,
        }
    }
    Ok(SweepReport { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_have_no_violations() {
        let config = SweepConfig::new(Family::Cycles, 3, 6, 0, 0);
        let report = conjecture_sweep(&config).unwrap();
        assert_eq!(report.summary.graphs, 4);
        assert_eq!(report.summary.pairs, 3 + 4 + 5 + 6);
        assert_eq!(report.summary.ok, report.summary.pairs);
    }

    #[test]
    fn deterministic_under_seed() {
        let config = SweepConfig::new(Family::RandomConnected, 3, 5, 6, 11);
        let mut a = Vec::new();
        let mut b = Vec::new();
        conjecture_sweep(&config).unwrap().write_jsonl(&mut a).unwrap();
        conjecture_sweep(&config).unwrap().write_jsonl(&mut b).unwrap();
        assert_eq!(a, b);
        let lines = String::from_utf8(a).unwrap();
        let pairs = config.graphs().unwrap().iter().map(Graph::vertex_count).sum::<usize>();
        assert_eq!(lines.lines().count(), pairs);
    }

    #[test]
    fn cap_is_recorded_not_fatal() {
        let mut config = SweepConfig::new(Family::Complete, 5, 5, 0, 0);
        config.hf_cap = 2;
        let report = conjecture_sweep(&config).unwrap();
        assert_eq!(report.summary.cap_exceeded, 5);
        assert!(report.records.iter().all(|r| r.error.is_some()));
    }

    #[test]
    fn small_fixed_bound_is_an_error_record() {
        let mut config = SweepConfig::new(Family::Complete, 4, 4, 0, 0);
        config.bound = BoundPolicy::Fixed(2);
        let report = conjecture_sweep(&config).unwrap();
        assert_eq!(report.summary.errors, 4);
    }

    #[test]
    fn named_and_bad_ranges() {
        let family = Family::parse("bridged:triangle,triangle;wheel:4").unwrap();
        let config = SweepConfig::new(family, 0, 0, 0, 0);
        assert_eq!(conjecture_sweep(&config).unwrap().summary.graphs, 2);
        assert!(conjecture_sweep(&SweepConfig::new(Family::Cycles, 5, 4, 0, 0)).is_err());
    }
}
