//! Windows `[0, B]` onto subsets of ℕ, numerical semigroup utilities.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::divisor::{Divisor, FiringScript};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemigroupKind {
    /// pole orders of monopoles
    Hf,
    /// rank jumps of `αP`
    Hr,
    /// rank jumps with a `P`-free obstruction one step earlier
    Hred,
    Generated,
}

/// Why an integer was admitted to a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `Δ(script) = divisor`, nonnegative off `P`, `-α` at `P`.
    Monopole { script: FiringScript, divisor: Divisor },
    /// `r((α-1)P)` and `r(αP)`.
    RankJump { previous: i64, current: i64 },
    ReducedRankJump {
        previous: i64,
        current: i64,
        p_free_obstruction: Divisor,
    },
    /// `α = sum c_i a_i`.
    Combination { coefficients: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Member,
    Gap,
    /// beyond the window; never extrapolated
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub gaps: Vec<u64>,
    pub count: usize,
    pub max_gap: Option<u64>,
}

/// Exact membership of a subset of ℕ on `[0, bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupWindow {
    pub kind: SemigroupKind,
    pub bound: u64,
    pub members: BTreeSet<u64>,
    pub witnesses: BTreeMap<u64, Witness>,
}

impl SemigroupWindow {
    pub fn new(kind: SemigroupKind, bound: u64) -> SemigroupWindow {
        SemigroupWindow {
            kind,
            bound,
            members: BTreeSet::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, alpha: u64, witness: Witness) {
        debug_assert!(alpha <= self.bound);
        self.members.insert(alpha);
        self.witnesses.insert(alpha, witness);
    }

    pub fn contains(&self, alpha: u64) -> bool {
        self.members.contains(&alpha)
    }

    pub fn status(&self, alpha: u64) -> Membership {
        if alpha > self.bound {
            Membership::Unknown
        } else if self.contains(alpha) {
            Membership::Member
        } else {
            Membership::Gap
        }
    }

    pub fn members(&self) -> Vec<u64> {
        self.members.iter().copied().collect()
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..=self.bound).filter(|a| !self.contains(*a)).collect()
    }

    pub fn gap_report(&self) -> GapReport {
        let gaps = self.gaps();
        GapReport {
            count: gaps.len(),
            max_gap: gaps.last().copied(),
            gaps,
        }
    }

    pub fn min_nonzero(&self) -> Option<u64> {
        self.members.iter().copied().find(|&a| a > 0)
    }

    /// Pairs `(a, b)` of members with `a + b` in the window but missing.
    pub fn closure_violations(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for &a in &self.members {
            for &b in self.members.range(a..) {
                if a + b <= self.bound && !self.contains(a + b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.closure_violations().is_empty()
    }

    /// Members of `self` missing from `other`, over the common window.
    pub fn difference(&self, other: &SemigroupWindow) -> Vec<u64> {
        let bound = self.bound.min(other.bound);
        self.members
            .iter()
            .copied()
            .filter(|&a| a <= bound && !other.contains(a))
            .collect()
    }

    pub fn is_subset_of(&self, other: &SemigroupWindow) -> bool {
        self.difference(other).is_empty()
    }

    /// Same members on the common window.
    pub fn same_members(&self, other: &SemigroupWindow) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }
}

#[derive(Serialize)]
struct WindowRepr<'a> {
    kind: SemigroupKind,
    bound: u64,
    members: Vec<u64>,
    gaps: Vec<u64>,
    witnesses: &'a BTreeMap<u64, Witness>,
}

impl Serialize for SemigroupWindow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WindowRepr {
            kind: self.kind,
            bound: self.bound,
            members: self.members(),
            gaps: self.gaps(),
            witnesses: &self.witnesses,
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratedSemigroup {
    pub generators: Vec<u64>,
    pub window: SemigroupWindow,
    /// gcd of the generators is 1, so the complement in ℕ is finite
    pub finite_complement: bool,
}

/// `<a_1, ..., a_k> ∩ [0, bound]` by a reachability sieve; each member
/// carries one representation.
pub fn generated_semigroup(generators: &[u64], bound: u64) -> Result<GeneratedSemigroup> {
    if generators.is_empty() {
        return Err(Error::BadParameter("need at least one generator".into()));
    }
    if generators.contains(&0) {
        return Err(Error::BadParameter("generators must be positive".into()));
    }
    let size = bound as usize + 1;
    // predecessor generator index for each reachable value
    let mut via: Vec<Option<usize>> = vec![None; size];
    let mut reachable = vec![false; size];
    reachable[0] = true;
    for x in 1..size {
        if let Some(i) = generators
            .iter()
            .position(|&a| a as usize <= x && reachable[x - a as usize])
        {
            reachable[x] = true;
            via[x] = Some(i);
        }
    }
    let mut window = SemigroupWindow::new(SemigroupKind::Generated, bound);
    for x in 0..size {
        if !reachable[x] {
            continue;
        }
        let mut coefficients = vec![0u64; generators.len()];
        let mut rest = x;
        while rest > 0 {
            let i = via[rest].expect("reachable");
            coefficients[i] += 1;
            rest -= generators[i] as usize;
        }
        window.insert(x as u64, Witness::Combination { coefficients });
    }
    let gcd = generators.iter().fold(0u64, |acc, &a| acc.gcd(&a));
    Ok(GeneratedSemigroup {
        generators: generators.to_vec(),
        window,
        finite_complement: gcd == 1,
    })
}
