//! Simple undirected graphs, their combinatorial Laplacian, and the edge-list
//! text format.
//!
//! Vertices are `0..n`. Neighbor lists are kept sorted so that every
//! traversal in the crate visits vertices in ascending index order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// Wire form of a graph: `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::new(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Builds a simple graph on `n >= 2` vertices. Loops, repeated edges
    /// (in either orientation) and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!("need at least 2 vertices, got {n}")));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u} {v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u} {v}")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components of the graph with the vertices in `removed`
    /// deleted. Each component is sorted; components are ordered by their
    /// smallest vertex.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&vec![false; self.n]).len() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::DisconnectedGraph)
        }
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        let mut entries = vec![vec![0i64; self.n]; self.n];
        for v in 0..self.n {
            entries[v][v] = self.degree(v) as i64;
            for &w in &self.adj[v] {
                entries[v][w] = -1;
            }
        }
        LaplacianMatrix { entries }
    }

    /// Cycle rank `|E| - |V| + 1`.
    pub fn genus(&self) -> Result<usize> {
        self.require_connected()?;
        Ok(self.edges.len() + 1 - self.n)
    }

    /// `K = sum (deg(v) - 2) v`.
    pub fn canonical_divisor(&self) -> Divisor {
        Divisor::new((0..self.n).map(|v| self.degree(v) as i64 - 2).collect())
    }

    /// Writes the edge-list text format: first line `n`, then `u v` per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list format. Blank lines and `#` comments (whole-line
    /// or trailing) are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut n = None;
        let mut edges = Vec::new();
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(parse_err("expected vertex count".into()));
                    }
                    let count: usize = fields[0]
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex count `{}`", fields[0])))?;
                    n = Some(count);
                }
                Some(count) => {
                    if fields.len() != 2 {
                        return Err(parse_err("expected `u v`".into()));
                    }
                    let u: usize = fields[0]
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex `{}`", fields[0])))?;
                    let v: usize = fields[1]
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex `{}`", fields[1])))?;
                    if u >= count || v >= count {
                        return Err(parse_err(format!("vertex out of range in `{line}`")));
                    }
                    if u == v {
                        return Err(parse_err(format!("loop at vertex {u}")));
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(parse_err(format!("duplicate edge {u} {v}")));
                    }
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "empty input".into(),
        })?;
        Graph::new(n, edges)
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        Graph::parse_edge_list(s)
    }
}

/// `D - A`, exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaplacianMatrix {
    entries: Vec<Vec<i64>>,
}

impl LaplacianMatrix {
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row][col]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn rows_sum_to_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().sum::<i64>() == 0)
    }

    /// The Laplacian with row and column `q` deleted.
    pub fn reduced(&self, q: usize) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != q)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != q)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for LaplacianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
