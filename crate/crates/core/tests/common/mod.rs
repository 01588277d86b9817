//! Brute-force oracles written independently of the library's search code.
//! They enumerate subsets directly and are only meant for small graphs.

#![allow(dead_code)]

use mmvc_core::graph::{Graph, VertexSet};

fn subset_ok(g: &Graph, mask: u32, f: impl Fn(usize, usize, bool, bool) -> bool) -> bool {
    g.edges().all(|(u, v)| f(u, v, mask >> u & 1 == 1, mask >> v & 1 == 1))
}

fn is_cover(g: &Graph, mask: u32) -> bool {
    subset_ok(g, mask, |_, _, a, b| a || b)
}

/// Largest minimal vertex cover, straight from the definition.
pub fn brute_mmvc(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    (0u32..1 << g.n())
        .filter(|&m| is_cover(g, m))
        .filter(|&m| {
            (0..g.n())
                .filter(|&v| m >> v & 1 == 1)
                .all(|v| g.neighbors(v).iter().any(|&u| m >> u & 1 == 0))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn brute_min_vc(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    (0u32..1 << g.n()).filter(|&m| is_cover(g, m)).map(|m| m.count_ones() as usize).min().unwrap_or(0)
}

pub fn brute_alpha(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    (0u32..1 << g.n())
        .filter(|&m| subset_ok(g, m, |_, _, a, b| !(a && b)))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn brute_omega(g: &Graph) -> usize {
    brute_alpha(&g.complement())
}

/// Every clique found greedily from each start vertex, scanning ids upward.
pub fn greedy_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = Vec::new();
    for s in g.vertices() {
        let mut c = vec![s];
        for v in g.vertices() {
            if v != s && c.iter().all(|&u| g.has_edge(u, v)) {
                c.push(v);
            }
        }
        let c = VertexSet::from_iter_unsorted(c);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Exact `⌊n^(p/q)⌋` by integer search.
pub fn floor_root(n: u64, p: u32, q: u32) -> u64 {
    let target = (n as u128).pow(p);
    let mut s = 0u64;
    while ((s + 1) as u128).pow(q) <= target {
        s += 1;
    }
    s
}

pub fn ceil_sqrt(n: u64) -> u64 {
    let mut s = 0;
    while s * s < n {
        s += 1;
    }
    s
}
