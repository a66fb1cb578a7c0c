//! Divisors, firing scripts and the Laplacian action `f -> Δ(f)`.
//!
//! Sign convention used throughout the crate: a script `s` moves a divisor
//! `D` to `D + Δ(s)`. A vertex with `s(v) = -1` gives one chip to each
//! neighbor; `s(v) = +1` takes one chip from each neighbor. Firing a set `S`
//! in the usual sense (every vertex of `S` gives) is the script `-1_S`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An integer vector indexed by vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(coefficients: Vec<i64>) -> Divisor {
        Divisor(coefficients)
    }

    pub fn zero(n: usize) -> Divisor {
        Divisor(vec![0; n])
    }

    /// `c * v` on a graph with `n` vertices.
    pub fn point(n: usize, v: usize, c: i64) -> Divisor {
        let mut d = Divisor::zero(n);
        d.0[v] = c;
        d
    }

    pub fn from_sparse(n: usize, terms: &[(usize, i64)]) -> Result<Divisor> {
        let mut d = Divisor::zero(n);
        for &(v, c) in terms {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            d.0[v] += c;
        }
        Ok(d)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] != 0).collect()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.0.len(),
            })
        }
    }
}

impl Index<usize> for Divisor {
    type Output = i64;

    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl IndexMut<usize> for Divisor {
    fn index_mut(&mut self, v: usize) -> &mut i64 {
        &mut self.0[v]
    }
}

impl AddAssign<&Divisor> for Divisor {
    fn add_assign(&mut self, rhs: &Divisor) {
        assert_eq!(self.0.len(), rhs.0.len(), "divisor length mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Divisor> for Divisor {
    fn sub_assign(&mut self, rhs: &Divisor) {
        assert_eq!(self.0.len(), rhs.0.len(), "divisor length mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Add for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        Divisor(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", terms.join(", "))
    }
}

/// An integer-valued function on the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiringScript(Vec<i64>);

impl FiringScript {
    pub fn new(values: Vec<i64>) -> FiringScript {
        FiringScript(values)
    }

    pub fn zero(n: usize) -> FiringScript {
        FiringScript(vec![0; n])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Shifts by a constant so the value at `v` is zero. `Δ` is unchanged.
    pub fn normalized_at(mut self, v: usize) -> FiringScript {
        let shift = self.0[v];
        for x in &mut self.0 {
            *x -= shift;
        }
        self
    }

    /// Net number of times each vertex gives chips, i.e. `-s`.
    pub fn firing_counts(&self) -> Vec<i64> {
        self.0.iter().map(|x| -x).collect()
    }
}

impl Index<usize> for FiringScript {
    type Output = i64;

    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl IndexMut<usize> for FiringScript {
    fn index_mut(&mut self, v: usize) -> &mut i64 {
        &mut self.0[v]
    }
}

impl Sub for &FiringScript {
    type Output = FiringScript;

    fn sub(self, rhs: &FiringScript) -> FiringScript {
        FiringScript(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &FiringScript {
    type Output = FiringScript;

    fn neg(self) -> FiringScript {
        FiringScript(self.0.iter().map(|a| -a).collect())
    }
}

/// `Δ(f)`, with `Δ_v(f) = f(v) deg(v) - sum_{w ~ v} f(w)`.
pub fn divisor_of(g: &Graph, f: &FiringScript) -> Result<Divisor> {
    if f.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            found: f.len(),
        });
    }
    Ok(Divisor(
        (0..g.vertex_count())
            .map(|v| g.neighbors(v).iter().map(|&w| f[v] - f[w]).sum())
            .collect(),
    ))
}

/// The function equal to `-1` at `p` and `0` elsewhere.
pub fn indicator(g: &Graph, p: usize) -> Result<FiringScript> {
    g.check_vertex(p)?;
    let mut f = FiringScript::zero(g.vertex_count());
    f[p] = -1;
    Ok(f)
}

/// Every vertex of `set` gives one chip along each edge leaving `set`.
pub fn fire_set(g: &Graph, d: &Divisor, set: &[usize]) -> Result<Divisor> {
    d.check_len(g.vertex_count())?;
    let mut script = FiringScript::zero(g.vertex_count());
    for &v in set {
        g.check_vertex(v)?;
        script[v] = -1;
    }
    let mut out = d.clone();
    out += &divisor_of(g, &script)?;
    Ok(out)
}

/// Outcome of checking a candidate monopole at `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonopoleCheck {
    /// `-Δ_p(f)`.
    pub alpha: i64,
    pub ok: bool,
    /// True when `G` and `G - p` are both connected and `alpha > 0`; then
    /// `f` must attain a strict unique minimum at `p`.
    pub strict_minimum_required: bool,
    pub strict_minimum_at_pole: bool,
}

/// Checks that `Δ(f)` is nonnegative away from `p`, and, where `G - p` is
/// connected, that `f` is strictly smallest at `p`.
pub fn monopole_witness_valid(g: &Graph, f: &FiringScript, p: usize) -> Result<MonopoleCheck> {
    g.check_vertex(p)?;
    let div = divisor_of(g, f)?;
    let alpha = -div[p];
    let off_pole_ok = (0..g.vertex_count()).all(|v| v == p || div[v] >= 0);
    let mut removed = vec![false; g.vertex_count()];
    removed[p] = true;
    let strict_minimum_required =
        alpha > 0 && g.is_connected() && g.components_without(&removed).len() == 1;
    let strict_minimum_at_pole = (0..g.vertex_count()).all(|v| v == p || f[v] > f[p]);
    let ok = off_pole_ok && (!strict_minimum_required || strict_minimum_at_pole);
    Ok(MonopoleCheck {
        alpha,
        ok,
        strict_minimum_required,
        strict_minimum_at_pole,
    })
}
