//! Minimal vertex covers: recognition, greedy minimalization, the
//! neighbourhood-extension construction, and the exact `mmvc` oracle.
//!
//! A set `X` is a minimal vertex cover iff it covers every edge and every
//! `v ∈ X` keeps a neighbour outside `X`. Complements of minimal vertex covers
//! are exactly the independent dominating sets, which is what the exact
//! oracle searches over.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default cap for [`mmvc_exact`].
pub const DEFAULT_MMVC_CAP: usize = 20;

/// A verified minimal vertex cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalVcWitness {
    pub cover: VertexSet,
    pub size: usize,
}

impl MinimalVcWitness {
    fn new(cover: VertexSet) -> Self {
        MinimalVcWitness { size: cover.len(), cover }
    }
}

pub fn is_vertex_cover(g: &Graph, x: &VertexSet) -> bool {
    g.edges().all(|(u, v)| x.contains(u) || x.contains(v))
}

pub fn is_minimal_vc(g: &Graph, x: &VertexSet) -> bool {
    is_vertex_cover(g, x) && x.iter().all(|v| g.neighbors(v).iter().any(|&u| !x.contains(u)))
}

/// Deletes vertices of `x` in `order` while the rest still covers every edge.
/// `x` must be a vertex cover; one pass suffices because removals only make
/// the remaining vertices harder to remove.
fn minimalize(g: &Graph, x: &mut [bool], order: impl IntoIterator<Item = usize>) {
    for v in order {
        if x[v] && g.neighbors(v).iter().all(|&u| x[u]) {
            x[v] = false;
        }
    }
}

fn members(mask: &[bool]) -> VertexSet {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
}

/// Starts from `V(G)` and scans vertices in increasing id order.
pub fn greedy_minimal_vc(g: &Graph) -> MinimalVcWitness {
    let mut x = vec![true; g.n()];
    minimalize(g, &mut x, g.vertices());
    MinimalVcWitness::new(members(&x))
}

/// A minimal vertex cover containing `N(S)` for an independent set `S`,
/// obtained by minimalizing `V(G) \ S`.
pub fn extend_nbhd_to_minimal_vc(g: &Graph, s: &VertexSet) -> Result<MinimalVcWitness> {
    s.check_range(g.n())?;
    if !g.is_independent(s) {
        return Err(Error::Precondition(format!("{s} is not an independent set")));
    }
    let mut x = vec![true; g.n()];
    for v in s.iter() {
        x[v] = false;
    }
    minimalize(g, &mut x, g.vertices());
    let w = MinimalVcWitness::new(members(&x));
    debug_assert!(g.open_neighborhood(s).is_subset_of(&w.cover));
    Ok(w)
}

/// Adds the smaller endpoint of every uncovered edge (edges in lexicographic
/// order), then minimalizes starting from the most recently added vertex;
/// the original members of `x0` are scanned last, highest id first.
pub fn complete_and_minimalize(g: &Graph, x0: &VertexSet) -> Result<MinimalVcWitness> {
    x0.check_range(g.n())?;
    let mut x = vec![false; g.n()];
    for v in x0.iter() {
        x[v] = true;
    }
    let mut added = Vec::new();
    for (u, v) in g.edges() {
        if !x[u] && !x[v] {
            x[u] = true;
            added.push(u);
        }
    }
    let order: Vec<usize> = added.iter().rev().copied().chain(x0.iter().rev()).collect();
    minimalize(g, &mut x, order);
    Ok(MinimalVcWitness::new(members(&x)))
}

/// Maximum minimal vertex cover with the default size cap.
pub fn mmvc_exact(g: &Graph) -> Result<MinimalVcWitness> {
    mmvc_exact_with_cap(g, DEFAULT_MMVC_CAP)
}

/// Maximum minimal vertex cover as the complement of a minimum independent
/// dominating set. Branching always resolves the lowest undominated vertex
/// by choosing one of its undominated closed neighbours, in increasing id
/// order; the first optimum found is kept.
pub fn mmvc_exact_with_cap(g: &Graph, cap: usize) -> Result<MinimalVcWitness> {
    crate::graph::exact_cap_check(g.n(), cap)?;
    let n = g.n();
    let all = full_mask(n);
    let closed: Vec<u64> = crate::graph::adjacency_masks_of(g)
        .into_iter()
        .enumerate()
        .map(|(v, m)| m | 1 << v)
        .collect();
    let max_closed = closed.iter().map(|m| m.count_ones()).max().unwrap_or(1);

    struct Ids<'a> {
        closed: &'a [u64],
        all: u64,
        max_closed: u32,
        best: u64,
        best_len: u32,
    }
    impl Ids<'_> {
        fn search(&mut self, chosen: u64, dominated: u64) {
            let size = chosen.count_ones();
            let open = self.all & !dominated;
            if open == 0 {
                if size < self.best_len {
                    self.best = chosen;
                    self.best_len = size;
                }
                return;
            }
            let need = open.count_ones().div_ceil(self.max_closed);
            if size + need >= self.best_len {
                return;
            }
            let v = open.trailing_zeros() as usize;
            let mut cands = self.closed[v] & open;
            while cands != 0 {
                let u = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                self.search(chosen | 1 << u, dominated | self.closed[u]);
            }
        }
    }

    let mut s = Ids { closed: &closed, all, max_closed, best: all, best_len: n as u32 + 1 };
    s.search(0, 0);
    let ids: VertexSet = (0..n).filter(|&v| s.best >> v & 1 == 1).collect();
    Ok(MinimalVcWitness::new(ids.complement(n)))
}

/// Every minimal vertex cover, via Bron–Kerbosch enumeration of the maximal
/// independent sets. Output sorted.
pub fn minimal_vertex_covers(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    crate::graph::exact_cap_check(g.n(), cap)?;
    let n = g.n();
    let adj = crate::graph::adjacency_masks_of(g);
    let mut out = Vec::new();
    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        // Non-neighbours play the role of neighbours for independent sets.
        let pivot = (p | x).trailing_zeros() as usize;
        let mut branch = p & (adj[pivot] | 1 << pivot);
        while branch != 0 {
            let v = branch.trailing_zeros() as usize;
            branch &= branch - 1;
            let keep = !adj[v] & !(1 << v);
            bk(adj, r | 1 << v, p & keep, x & keep, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut found = Vec::new();
    bk(&adj, 0, full_mask(n), 0, &mut found);
    for is in found {
        out.push((0..n).filter(|&v| is >> v & 1 == 0).collect::<VertexSet>());
    }
    out.sort();
    Ok(out)
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
