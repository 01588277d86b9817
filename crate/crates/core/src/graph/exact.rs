//! Exact maximum clique / independent set by branch and bound.
//!
//! Vertices are branched in increasing id order, include-first, and the
//! incumbent is only replaced on strict improvement, so the result is the
//! lexicographically least optimum. Greedy coloring of the candidate set
//! bounds the clique that can still be added.

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Default size cap for the exact oracles.
pub const DEFAULT_EXACT_CAP: usize = 28;
/// Bitset width; no override may exceed it.
pub const HARD_EXACT_CAP: usize = 64;

pub(crate) fn adjacency_masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(HARD_EXACT_CAP) {
        return Err(Error::TooLarge { n, cap: cap.min(HARD_EXACT_CAP) });
    }
    Ok(())
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

struct CliqueSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_len: u32,
}

impl CliqueSearch<'_> {
    /// Number of color classes in a first-fit coloring of `cand`.
    fn color_bound(&self, cand: u64) -> u32 {
        let mut rest = cand;
        let mut colors = 0;
        while rest != 0 {
            colors += 1;
            let mut class_avail = rest;
            while class_avail != 0 {
                let v = class_avail.trailing_zeros() as usize;
                rest &= !(1 << v);
                class_avail &= !(1 << v) & !self.adj[v];
            }
        }
        colors
    }

    fn expand(&mut self, current: u64, cand: u64) {
        let size = current.count_ones();
        if size > self.best_len {
            self.best = current;
            self.best_len = size;
        }
        if cand == 0 || size + self.color_bound(cand) <= self.best_len {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        self.expand(current | 1 << v, rest & self.adj[v]);
        self.expand(current, rest);
    }
}

fn max_clique_masks(adj: &[u64]) -> VertexSet {
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut s = CliqueSearch { adj, best: 0, best_len: 0 };
    s.expand(0, all);
    bits(s.best).collect()
}

/// Maximum clique, lexicographically least among optima.
pub fn max_clique_exact(g: &Graph) -> Result<VertexSet> {
    max_clique_with_cap(g, DEFAULT_EXACT_CAP)
}

pub fn max_clique_with_cap(g: &Graph, cap: usize) -> Result<VertexSet> {
    check_cap(g.n(), cap)?;
    Ok(max_clique_masks(&adjacency_masks(g)))
}

/// Maximum independent set, lexicographically least among optima.
pub fn max_independent_set_exact(g: &Graph) -> Result<VertexSet> {
    max_independent_set_with_cap(g, DEFAULT_EXACT_CAP)
}

pub fn max_independent_set_with_cap(g: &Graph, cap: usize) -> Result<VertexSet> {
    check_cap(g.n(), cap)?;
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let co: Vec<u64> = adjacency_masks(g)
        .into_iter()
        .enumerate()
        .map(|(v, m)| !m & all & !(1 << v))
        .collect();
    Ok(max_clique_masks(&co))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_alpha(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&s| g.edges().all(|(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn independent_set_examples() {
        // Brute force over all 32 subsets of C5 gives α = 2.
        assert_eq!(brute_alpha(&Graph::cycle(5)), 2);
        assert_eq!(max_independent_set_exact(&Graph::cycle(5)).unwrap().len(), 2);
        assert_eq!(max_independent_set_exact(&Graph::complete(4)).unwrap().len(), 1);
        assert_eq!(max_independent_set_exact(&Graph::new(6)).unwrap().len(), 6);
        assert_eq!(max_independent_set_exact(&Graph::new(0)).unwrap().len(), 0);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(max_clique_exact(&Graph::cycle(5)).unwrap().len(), 2);
        assert_eq!(max_clique_exact(&Graph::complete(4)).unwrap().len(), 4);
        assert_eq!(max_clique_exact(&Graph::new(6)).unwrap().len(), 1);
    }

    #[test]
    fn lexicographic_tie_break() {
        assert_eq!(max_independent_set_exact(&Graph::cycle(5)).unwrap(), VertexSet::from([0, 2]));
        assert_eq!(max_independent_set_exact(&Graph::path(4)).unwrap(), VertexSet::from([0, 2]));
        assert_eq!(max_clique_exact(&Graph::cycle(5)).unwrap(), VertexSet::from([0, 1]));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::new(29);
        assert!(matches!(max_independent_set_exact(&g), Err(Error::TooLarge { n: 29, cap: 28 })));
        assert_eq!(max_independent_set_with_cap(&g, 40).unwrap().len(), 29);
        assert!(max_clique_with_cap(&Graph::new(65), 100).is_err());
        assert_eq!(max_clique_with_cap(&Graph::complete(64), 64).unwrap().len(), 64);
    }
}
