//! Generators for the graph families used throughout the crate.
//!
//! Every generator returns the graph together with a distinguished vertex
//! `P`: the vertex the family's statements are about (the hub of a star or
//! wheel, the joining vertex of a bridged graph, vertex 0 otherwise).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rooted = (Graph, usize);

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameter(msg.into())
}

pub fn path(n: usize) -> Result<Rooted> {
    if n < 2 {
        return Err(bad(format!("path needs n >= 2, got {n}")));
    }
    Ok((Graph::new(n, (1..n).map(|v| (v - 1, v)))?, 0))
}

/// Star on `n` vertices; the hub is vertex 0.
pub fn star(n: usize) -> Result<Rooted> {
    if n < 2 {
        return Err(bad(format!("star needs n >= 2, got {n}")));
    }
    Ok((Graph::new(n, (1..n).map(|v| (0, v)))?, 0))
}

pub fn cycle(k: usize) -> Result<Rooted> {
    if k < 3 {
        return Err(bad(format!("cycle needs k >= 3, got {k}")));
    }
    Ok((Graph::new(k, (0..k).map(|v| (v, (v + 1) % k)))?, 0))
}

pub fn complete(n: usize) -> Result<Rooted> {
    if n < 2 {
        return Err(bad(format!("complete graph needs n >= 2, got {n}")));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Ok((Graph::new(n, edges)?, 0))
}

/// Wheel with `rim` cycle vertices `1..=rim` and hub 0.
pub fn wheel(rim: usize) -> Result<Rooted> {
    if rim < 3 {
        return Err(bad(format!("wheel needs a rim of at least 3 vertices, got {rim}")));
    }
    let spokes = (1..=rim).map(|v| (0, v));
    let rim_edges = (1..=rim).map(|v| (v, v % rim + 1));
    Ok((Graph::new(rim + 1, spokes.chain(rim_edges))?, 0))
}

/// Cycle on `0..k` plus pendant vertices: the `i`-th entry of `pendants`
/// attaches the new vertex `k + i` to an existing vertex, so pendant trees
/// of any shape can be grown.
pub fn unicyclic(k: usize, pendants: &[usize]) -> Result<Rooted> {
    if k < 3 {
        return Err(bad(format!("unicyclic graph needs a cycle of length >= 3, got {k}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..k).map(|v| (v, (v + 1) % k)).collect();
    for (i, &attach) in pendants.iter().enumerate() {
        let new = k + i;
        if attach >= new {
            return Err(bad(format!(
                "pendant {i} attaches to vertex {attach}, which does not exist yet"
            )));
        }
        edges.push((attach, new));
    }
    Ok((Graph::new(k + pendants.len(), edges)?, 0))
}

/// `K_m` on `0..m` with a new vertex `m` joined to vertex 0.
pub fn clique_plus_pendant(m: usize) -> Result<Rooted> {
    if m < 2 {
        return Err(bad(format!("clique needs m >= 2, got {m}")));
    }
    let clique = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
    Ok((Graph::new(m + 1, clique.chain([(0, m)]))?, 0))
}

/// A new vertex `P = 0` joined by one edge to the distinguished vertex of
/// each of the two given graphs. The first graph occupies `1..=n1`, the
/// second the vertices after it.
pub fn bridged(first: &Rooted, second: &Rooted) -> Result<Rooted> {
    let (g1, p1) = first;
    let (g2, p2) = second;
    let n1 = g1.vertex_count();
    let n = 1 + n1 + g2.vertex_count();
    let mut edges = vec![(0, 1 + p1), (0, 1 + n1 + p2)];
    edges.extend(g1.edges().iter().map(|&(u, v)| (1 + u, 1 + v)));
    edges.extend(g2.edges().iter().map(|&(u, v)| (1 + n1 + u, 1 + n1 + v)));
    Ok((Graph::new(n, edges)?, 0))
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2`.
pub fn tree_from_pruefer(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad_entry) = seq.iter().find(|&&x| x >= n) {
        return Err(bad(format!("Prüfer entry {bad_entry} out of range for n = {n}")));
    }
    let mut remaining = vec![1usize; n];
    for &x in seq {
        remaining[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| remaining[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, x));
        remaining[x] -= 1;
        if remaining[x] == 1 {
            leaves.insert(x);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph::new(n, edges)
}

/// Uniformly random labelled tree, deterministic in `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<Rooted> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n, &mut rng)
}

pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Result<Rooted> {
    if n < 2 {
        return Err(bad(format!("tree needs n >= 2, got {n}")));
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Ok((tree_from_pruefer(&seq)?, 0))
}

/// Random connected graph: a random spanning tree plus a uniformly chosen
/// number of extra edges drawn without replacement from the non-edges.
pub fn random_connected(n: usize, seed: u64) -> Result<Rooted> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_with(n, &mut rng)
}

pub fn random_connected_with<R: Rng>(n: usize, rng: &mut R) -> Result<Rooted> {
    let (tree, _) = random_tree_with(n, rng)?;
    let mut non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !tree.has_edge(u, v))
        .collect();
    let extra = rng.gen_range(0..=non_edges.len());
    non_edges.shuffle(rng);
    let edges = tree
        .edges()
        .iter()
        .copied()
        .chain(non_edges.into_iter().take(extra));
    Ok((Graph::new(n, edges)?, 0))
}

/// All labelled trees on `n` vertices, one per Prüfer sequence.
pub fn all_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n < 2 {
        return Err(bad(format!("tree needs n >= 2, got {n}")));
    }
    let len = n - 2;
    let total = n.checked_pow(len as u32).ok_or_else(|| bad("too many trees"))?;
    Ok((0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        tree_from_pruefer(&seq).expect("valid Prüfer sequence")
    }))
}

fn parse_num(field: &str, what: &str) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad {what} `{field}`")))
}

/// Builds a graph from a generator spec such as `wheel:4`, `complete:5`,
/// `random-tree:8:42`, `unicyclic:4:0,0,4` or `bridged:triangle,cycle:4`.
pub fn from_spec(spec: &str) -> Result<Rooted> {
    let spec = spec.trim();
    if spec == "triangle" {
        return cycle(3);
    }
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
    let arity = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(bad(format!("`{name}` takes {k} parameter(s), got `{spec}`")))
        }
    };
    match name {
        "path" => {
            arity(1)?;
            path(parse_num(args[0], "n")?)
        }
        "star" => {
            arity(1)?;
            star(parse_num(args[0], "n")?)
        }
        "cycle" => {
            arity(1)?;
            cycle(parse_num(args[0], "k")?)
        }
        "complete" => {
            arity(1)?;
            complete(parse_num(args[0], "n")?)
        }
        "wheel" => {
            arity(1)?;
            wheel(parse_num(args[0], "rim size")?)
        }
        "clique-plus-pendant" => {
            arity(1)?;
            clique_plus_pendant(parse_num(args[0], "m")?)
        }
        "random-tree" => {
            arity(2)?;
            random_tree(parse_num(args[0], "n")?, parse_num(args[1], "seed")? as u64)
        }
        "random-connected" => {
            arity(2)?;
            random_connected(parse_num(args[0], "n")?, parse_num(args[1], "seed")? as u64)
        }
        "unicyclic" => {
            if args.is_empty() || args.len() > 2 {
                return Err(bad(format!("`unicyclic` takes k[:a,b,..], got `{spec}`")));
            }
            let k = parse_num(args[0], "k")?;
            let pendants = match args.get(1) {
                Some(list) if !list.trim().is_empty() => list
                    .split(',')
                    .map(|x| parse_num(x, "attachment vertex"))
                    .collect::<Result<Vec<_>>>()?,
                _ => Vec::new(),
            };
            unicyclic(k, &pendants)
        }
        "bridged" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err(bad(format!("`bridged` takes two component specs, got `{spec}`")));
            }
            bridged(&from_spec(parts[0])?, &from_spec(parts[1])?)
        }
        _ => Err(bad(format!("unknown generator `{name}`"))),
    }
}
