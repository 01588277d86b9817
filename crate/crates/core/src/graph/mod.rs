//! Undirected simple graphs over dense vertex ids `0..n`.
//!
//! Every other module in the crate works on [`Graph`]; the submodules hold
//! the structural queries built on top of it.

mod exact;
mod io;
mod pattern;
mod structure;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exact::{max_clique_exact, max_clique_with_cap, max_independent_set_exact,
    max_independent_set_with_cap, DEFAULT_EXACT_CAP, HARD_EXACT_CAP};
pub(crate) use exact::{adjacency_masks as adjacency_masks_of, check_cap as exact_cap_check};
pub use io::{parse_graph, write_graph};
pub use pattern::{ensure_free, find_induced, find_induced_containing, is_free, PatternId, MAX_PATTERN_VERTICES};
pub use structure::{
    connected_components, greedy_coloring, is_bipartite, is_proper_coloring, maximum_matching,
    remove_isolated, spanning_tree_levels, Coloring, Relabeled,
};

/// Sorted, duplicate-free list of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from arbitrary ids, sorting and deduplicating.
    pub fn from_iter_unsorted<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Checks that every member is a vertex of a graph on `n` vertices.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last >= n => Err(Error::Precondition(format!(
                "vertex {last} out of range for a graph on {n} vertices"
            ))),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Maps every member through `map` (e.g. a relabelling back to host ids).
    pub fn map(&self, map: &[usize]) -> VertexSet {
        VertexSet::from_iter_unsorted(self.iter().map(|v| map[v]))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter_unsorted(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    /// All of `0..n` except the members of `self`.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|&v| !self.contains(v)).collect())
    }

    /// 1-indexed rendering, the convention of the graph file format.
    pub fn to_one_indexed(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_iter_unsorted(iter)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::from_iter_unsorted(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        VertexSet::from_iter_unsorted(v)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph. Adjacency lists are kept sorted, and a bit
/// matrix backs constant-time adjacency tests.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    words: usize,
    matrix: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            adj: vec![Vec::new(); n],
            words,
            matrix: vec![0; n * words],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts `{u, v}`. Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Precondition(format!(
                "edge {{{u},{v}}} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::Precondition(format!("self-loop on vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.set_bit(u, v);
        self.set_bit(v, u);
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(true)
    }

    /// Removes `{u, v}` if present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() || !self.has_edge(u, v) {
            return false;
        }
        self.matrix[u * self.words + v / 64] &= !(1u64 << (v % 64));
        self.matrix[v * self.words + u / 64] &= !(1u64 << (u % 64));
        self.adj[u].retain(|&x| x != v);
        self.adj[v].retain(|&x| x != u);
        self.m -= 1;
        true
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.matrix[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.n()).collect())
    }

    /// Open neighbourhood `N(S) = N[S] \ S`.
    pub fn open_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut mark = vec![false; self.n()];
        for v in set.iter() {
            for &u in self.neighbors(v) {
                mark[u] = true;
            }
        }
        for v in set.iter() {
            mark[v] = false;
        }
        VertexSet(mark.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
    }

    /// `N(v) ∩ within`.
    pub fn neighbors_in(&self, v: usize, within: &VertexSet) -> VertexSet {
        VertexSet(self.neighbors(v).iter().copied().filter(|&u| within.contains(u)).collect())
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        let s = set.as_slice();
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let s = set.as_slice();
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// `G[S]`, with vertex `i` of the result standing for `set[i]`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Relabeled {
        let map: Vec<usize> = set.iter().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(map.len());
        for (i, &v) in map.iter().enumerate() {
            for &u in self.neighbors(v) {
                let j = index[u];
                if j != usize::MAX && j > i {
                    g.set_bit(i, j);
                    g.set_bit(j, i);
                    g.adj[i].push(j);
                    g.adj[j].push(i);
                    g.m += 1;
                }
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Relabeled { graph: g, to_host: map }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("in range");
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = Graph::new(off + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("in range");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).expect("in range");
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).expect("in range");
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).expect("in range");
        }
        g
    }

    /// `K_{1,p}` with centre 0.
    pub fn star(p: usize) -> Graph {
        let mut g = Graph::new(p + 1);
        for v in 1..=p {
            g.add_edge(0, v).expect("in range");
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::complete_multipartite(&[a, b])
    }

    /// Parts are consecutive id ranges of the given sizes.
    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let n = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (i, &s) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, s));
        }
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v).expect("in range");
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        Repr {
            n: self.n(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let r = Repr::deserialize(d)?;
        Graph::from_edges(r.n, &r.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_symmetric_and_deduplicated() {
        let mut g = Graph::new(4);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        g.add_edge(2, 1).unwrap();
        assert!(g.has_edge(1, 0) && g.has_edge(0, 1));
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.m(), 2);
        assert!(g.add_edge(3, 3).is_err());
        assert!(g.add_edge(0, 4).is_err());
    }

    #[test]
    fn remove_edge_updates_everything() {
        let mut g = Graph::cycle(4);
        assert!(g.remove_edge(3, 0));
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.m(), 3);
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn neighborhoods() {
        let g = Graph::path(5);
        let s = VertexSet::from([1, 3]);
        assert_eq!(g.open_neighborhood(&s), VertexSet::from([0, 2, 4]));
        assert!(g.is_independent(&s));
        assert!(!g.is_clique(&VertexSet::from([0, 2])));
        assert!(g.is_clique(&VertexSet::from([2, 3])));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::cycle(5);
        let sub = g.induced_subgraph(&VertexSet::from([0, 1, 3]));
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.m(), 1);
        assert_eq!(sub.to_host, vec![0, 1, 3]);
    }

    #[test]
    fn wide_graphs_use_several_words() {
        let mut g = Graph::new(130);
        g.add_edge(0, 129).unwrap();
        g.add_edge(64, 65).unwrap();
        assert!(g.has_edge(129, 0));
        assert!(!g.has_edge(0, 65));
        assert_eq!(g.complement().m(), 130 * 129 / 2 - 2);
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::complete(4).m(), 6);
        assert_eq!(Graph::star(5).degree(0), 5);
        assert_eq!(Graph::complete_multipartite(&[3, 3, 3]).m(), 27);
        assert_eq!(Graph::cycle(5).m(), 5);
    }
}
