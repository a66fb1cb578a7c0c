//! Independent oracles, each working straight from a definition by
//! exhaustive search. The rank and semigroup oracles decide winnability
//! through the library's reduction, which is itself checked against script
//! search here.

#![allow(dead_code)]

use graph_weierstrass::rank;
use graph_weierstrass::{Divisor, Graph};

/// `Δ(f)(v) = deg(v) f(v) - Σ_{w ~ v} f(w)`, from the edge list.
pub fn laplacian_apply(g: &Graph, f: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; g.vertex_count()];
    for &(u, v) in g.edges() {
        out[u] += f[u] - f[v];
        out[v] += f[v] - f[u];
    }
    out
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `q`-reduced by the subset definition: nonnegative off `q`, and every
/// nonempty `S ⊆ V - q` has a vertex with fewer chips than edges leaving `S`.
pub fn parking_by_subsets(g: &Graph, d: &[i64], q: usize) -> bool {
    let n = g.vertex_count();
    if (0..n).any(|v| v != q && d[v] < 0) {
        return false;
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != q).collect();
    for mask in 1u32..(1 << others.len()) {
        let in_s = |v: usize| others.iter().position(|&w| w == v).is_some_and(|i| mask >> i & 1 == 1);
        let can_fire = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).all(|(_, &v)| {
            let out = g.neighbors(v).iter().filter(|&&w| !in_s(w)).count() as i64;
            d[v] >= out
        });
        if can_fire {
            return false;
        }
    }
    true
}

/// Calls `visit` on every script with `s[fixed] = 0` and other entries in
/// `[-k, k]`; stops when `visit` returns true.
pub fn for_each_script(n: usize, fixed: usize, k: i64, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    let free: Vec<usize> = (0..n).filter(|&v| v != fixed).collect();
    let mut s = vec![0i64; n];
    for &v in &free {
        s[v] = -k;
    }
    loop {
        if visit(&s) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                return false;
            }
            let v = free[i];
            if s[v] < k {
                s[v] += 1;
                break;
            }
            s[v] = -k;
            i += 1;
        }
    }
}

/// All `q`-reduced divisors `d + Δ(s)` over scripts in the box, with the
/// scripts that reach them.
pub fn reduce_by_script_search(g: &Graph, d: &[i64], q: usize, k: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut found: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for_each_script(g.vertex_count(), q, k, |s| {
        let c = add(d, &laplacian_apply(g, s));
        if parking_by_subsets(g, &c, q) && !found.iter().any(|(r, _)| r == &c) {
            found.push((c, s.to_vec()));
        }
        false
    });
    found
}

/// Script search over growing boxes until a reduced divisor shows up.
pub fn reduce_by_deepening(g: &Graph, d: &[i64], q: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    for k in [2, 4, 8, 16, 32] {
        let found = reduce_by_script_search(g, d, q, k);
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

/// Some `d + Δ(s)` with `s` in the box is effective.
pub fn winnable_by_script_search(g: &Graph, d: &[i64], k: i64) -> bool {
    if d.iter().sum::<i64>() < 0 {
        return false;
    }
    for_each_script(g.vertex_count(), 0, k, |s| {
        add(d, &laplacian_apply(g, s)).iter().all(|&x| x >= 0)
    })
}

/// Winnability by script search with boxes up to `[-16, 16]`.
pub fn winnable_by_deepening(g: &Graph, d: &[i64]) -> bool {
    [2, 4, 8, 16].into_iter().any(|k| winnable_by_script_search(g, d, k))
}

/// Number of spanning trees, by testing every `(n-1)`-subset of edges.
pub fn spanning_tree_count(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut count = 0;
    let mut pick: Vec<usize> = (0..n - 1).collect();
    if edges.len() < n - 1 {
        return 0;
    }
    loop {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut acyclic = true;
        for &i in &pick {
            let (a, b) = edges[i];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                acyclic = false;
                break;
            }
            parent[ra] = rb;
        }
        if acyclic {
            count += 1;
        }
        // next combination
        let m = edges.len();
        let k = pick.len();
        let mut i = k;
        while i > 0 && pick[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return count;
        }
        pick[i - 1] += 1;
        for j in i..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Minimum number of edges leaving a nonempty proper vertex subset.
pub fn edge_connectivity_by_subsets(g: &Graph) -> usize {
    let n = g.vertex_count();
    (1u32..(1 << (n - 1)))
        .map(|mask| {
            g.edges()
                .iter()
                .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count()
        })
        .min()
        .unwrap()
}

/// Effective divisors of degree `k` as nondecreasing vertex sequences, in
/// lexicographic order of the sequences.
pub fn effective_divisors(n: usize, k: usize, allowed: &[bool]) -> Vec<Vec<i64>> {
    fn go(n: usize, k: usize, start: usize, allowed: &[bool], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if allowed[v] {
                cur[v] += 1;
                go(n, k - 1, v, allowed, cur, out);
                cur[v] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, allowed, &mut vec![0; n], &mut out);
    out
}

fn winnable(g: &Graph, d: &[i64]) -> bool {
    rank::winnable(g, &Divisor::new(d.to_vec())).unwrap()
}

/// Rank by the level-by-level definition, with the least obstruction in
/// enumeration order. Winnability comes from reduction, which is checked
/// against script search separately.
pub fn naive_rank(g: &Graph, d: &[i64]) -> (i64, Option<Vec<i64>>) {
    let n = g.vertex_count();
    let everyone = vec![true; n];
    if !winnable(g, d) {
        return (-1, Some(vec![0; n]));
    }
    for k in 1.. {
        for e in effective_divisors(n, k, &everyone) {
            let rest: Vec<i64> = d.iter().zip(&e).map(|(a, b)| a - b).collect();
            if !winnable(g, &rest) {
                return (k as i64 - 1, Some(e));
            }
        }
    }
    unreachable!()
}

/// `α ∈ H_f(P)` by searching effective `A` with `A(P) = 0` equivalent to `αP`.
pub fn naive_hf(g: &Graph, p: usize, bound: u64) -> Vec<u64> {
    let n = g.vertex_count();
    let mut allowed = vec![true; n];
    allowed[p] = false;
    (0..=bound)
        .filter(|&alpha| {
            effective_divisors(n, alpha as usize, &allowed).into_iter().any(|mut a| {
                a[p] -= alpha as i64;
                winnable_degree_zero_is_principal(g, &a)
            })
        })
        .collect()
}

/// A degree-zero divisor is principal iff it is winnable.
fn winnable_degree_zero_is_principal(g: &Graph, d: &[i64]) -> bool {
    debug_assert_eq!(d.iter().sum::<i64>(), 0);
    winnable(g, d)
}

/// `H_r(P)` from naive ranks.
pub fn naive_hr(g: &Graph, p: usize, bound: u64) -> Vec<u64> {
    let n = g.vertex_count();
    let mut prev = -1;
    let mut out = Vec::new();
    for alpha in 0..=bound {
        let mut d = vec![0; n];
        d[p] = alpha as i64;
        let r = naive_rank(g, &d).0;
        if r == prev + 1 {
            out.push(alpha);
        }
        prev = r;
    }
    out
}

/// `H_r^red(P)`: rank jumps where some obstruction of `(α-1)P` avoids `P`.
pub fn naive_hred(g: &Graph, p: usize, bound: u64) -> Vec<u64> {
    let n = g.vertex_count();
    let mut allowed = vec![true; n];
    allowed[p] = false;
    naive_hr(g, p, bound)
        .into_iter()
        .filter(|&alpha| {
            let mut d = vec![0; n];
            d[p] = alpha as i64 - 1;
            let r = naive_rank(g, &d).0;
            effective_divisors(n, (r + 1) as usize, &allowed).into_iter().any(|e| {
                let rest: Vec<i64> = d.iter().zip(&e).map(|(a, b)| a - b).collect();
                !winnable(g, &rest)
            })
        })
        .collect()
}

/// Every `q`-reduced divisor of degree `deg`: `0 <= c(v) < deg(v)` off
/// `q`, filtered by the subset definition.
pub fn reduced_divisors_of_degree(g: &Graph, q: usize, deg: i64) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        let off: i64 = (0..n).filter(|&v| v != q).map(|v| c[v]).sum();
        let mut d = c.clone();
        d[q] = deg - off;
        if parking_by_subsets(g, &d, q) {
            out.push(d);
        }
        let mut v = 0;
        loop {
            if v == n {
                return out;
            }
            if v != q && c[v] + 1 < g.degree(v) as i64 {
                c[v] += 1;
                break;
            }
            c[v] = 0;
            v += 1;
        }
    }
}
