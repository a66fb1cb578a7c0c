//! Connectivity invariants: edge connectivity λ(G), vertex connectivity
//! κ(G), minimum degree δ(G), algebraic connectivity λ₂(G), cut vertices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;

/// Global minimum cut by Stoer–Wagner with unit edge weights.
pub fn edge_connectivity(g: &Graph) -> Result<usize> {
    g.require_connected()?;
    let n = g.vertex_count();
    let mut w = vec![vec![0usize; n]; n];
    for &(u, v) in g.edges() {
        w[u][v] = 1;
        w[v][u] = 1;
    }
    // active super-vertices; merged ones are dropped from the list
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    while active.len() > 1 {
        let m = active.len();
        let mut in_a = vec![false; m];
        let mut key = vec![0usize; m];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..m {
            let mut sel = usize::MAX;
            for i in 0..m {
                if !in_a[i] && (sel == usize::MAX || key[i] > key[sel]) {
                    sel = i;
                }
            }
            in_a[sel] = true;
            if step == m - 1 {
                best = best.min(key[sel]);
                last = sel;
            } else {
                prev = sel;
                for i in 0..m {
                    if !in_a[i] {
                        key[i] += w[active[sel]][active[i]];
                    }
                }
            }
        }
        let (s, t) = (active[prev], active[last]);
        for &x in &active {
            w[s][x] += w[t][x];
            w[x][s] = w[s][x];
        }
        w[s][s] = 0;
        active.remove(last);
    }
    Ok(best)
}

/// Exact κ(G) by trying every vertex subset of size below δ(G).
///
/// Exponential in δ(G); intended for graphs with at most a dozen or so
/// vertices. `K_n` returns `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    g.require_connected()?;
    let n = g.vertex_count();
    if g.is_complete() {
        return Ok(n - 1);
    }
    let delta = g.min_degree();
    for size in 0..delta {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let mut removed = vec![false; n];
            for &v in &subset {
                removed[v] = true;
            }
            if g.components_without(&removed).len() >= 2 {
                return Ok(size);
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(delta)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    for _sweep in 0..200 {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].abs())
            .fold(0.0, f64::max);
        if off < 1e-12 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Second smallest Laplacian eigenvalue.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    g.require_connected()?;
    let lap = g.laplacian();
    let m: Vec<Vec<f64>> = lap
        .entries()
        .iter()
        .map(|row| row.iter().map(|&x| x as f64).collect())
        .collect();
    Ok(symmetric_eigenvalues(&m)[1])
}

/// Components of `G - v`.
pub fn components_of(g: &Graph, v: usize) -> Result<Vec<Vec<usize>>> {
    g.check_vertex(v)?;
    let mut removed = vec![false; g.vertex_count()];
    removed[v] = true;
    Ok(g.components_without(&removed))
}

pub fn is_cut_vertex(g: &Graph, v: usize) -> Result<bool> {
    Ok(components_of(g, v)?.len() >= 2)
}

pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    (0..g.vertex_count())
        .filter(|&v| components_of(g, v).map(|c| c.len() >= 2).unwrap_or(false))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectivityReport {
    pub edge_connectivity: usize,
    pub vertex_connectivity: usize,
    pub min_degree: usize,
    pub algebraic_connectivity: f64,
    pub complete: bool,
    pub cut_vertices: Vec<usize>,
    pub components_after_removal: BTreeMap<usize, Vec<Vec<usize>>>,
}

impl ConnectivityReport {
    /// `λ₂ ≤ κ ≤ λ ≤ δ`, with tolerance on the floating-point leg. The
    /// first inequality fails for `K_n` (`λ₂ = n`, `κ = n - 1`), which is
    /// checked against `λ₂ = n` instead.
    pub fn chain_holds(&self) -> bool {
        let spectral = if self.complete {
            (self.algebraic_connectivity - (self.vertex_connectivity + 1) as f64).abs() <= 1e-6
        } else {
            self.algebraic_connectivity <= self.vertex_connectivity as f64 + 1e-6
        };
        spectral
            && self.vertex_connectivity <= self.edge_connectivity
            && self.edge_connectivity <= self.min_degree
    }
}

pub fn connectivity_report(g: &Graph) -> Result<ConnectivityReport> {
    let edge = edge_connectivity(g)?;
    let vertex = vertex_connectivity(g)?;
    let lambda2 = algebraic_connectivity(g)?;
    let mut comps = BTreeMap::new();
    for v in 0..g.vertex_count() {
        comps.insert(v, components_of(g, v)?);
    }
    Ok(ConnectivityReport {
        edge_connectivity: edge,
        vertex_connectivity: vertex,
        min_degree: g.min_degree(),
        algebraic_connectivity: lambda2,
        complete: g.is_complete(),
        cut_vertices: cut_vertices(g),
        components_after_removal: comps,
    })
}
