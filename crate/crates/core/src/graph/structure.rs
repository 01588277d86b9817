use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// A graph derived from a host graph, with `to_host[i]` the host id of
/// vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relabeled {
    pub graph: Graph,
    pub to_host: Vec<usize>,
}

impl Relabeled {
    pub fn identity(g: &Graph) -> Self {
        Relabeled {
            graph: g.clone(),
            to_host: (0..g.n()).collect(),
        }
    }

    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        set.map(&self.to_host)
    }
}

/// `color[v]` for every vertex; colors are `0..count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub color: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn from_colors(color: Vec<usize>) -> Self {
        let count = color.iter().map(|&c| c + 1).max().unwrap_or(0);
        Coloring { color, count }
    }

    /// The color classes `S_1, …, S_c` (possibly empty ones included).
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.color.iter().enumerate() {
            out[c].push(v);
        }
        out.into_iter().map(VertexSet::from).collect()
    }
}

/// Drops every isolated vertex; surviving vertices keep their relative order.
pub fn remove_isolated(g: &Graph) -> Relabeled {
    let keep: VertexSet = g.vertices().filter(|&v| g.degree(v) > 0).collect();
    g.induced_subgraph(&keep)
}

/// A proper 2-coloring, or `None` when `g` has an odd cycle.
pub fn is_bipartite(g: &Graph) -> Option<Coloring> {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if color[s] != usize::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == usize::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(Coloring {
        count: if g.m() > 0 { 2 } else { usize::from(n > 0) },
        color,
    })
}

pub fn is_proper_coloring(g: &Graph, coloring: &Coloring) -> bool {
    coloring.color.len() == g.n()
        && coloring.color.iter().all(|&c| c < coloring.count)
        && g.edges().all(|(u, v)| coloring.color[u] != coloring.color[v])
}

/// First-fit coloring in the given vertex order.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Result<Coloring> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::Precondition("coloring order is not a permutation".into()));
    }
    let mut color = vec![usize::MAX; n];
    let mut taken = vec![usize::MAX; g.max_degree() + 2];
    for &v in order {
        for &u in g.neighbors(v) {
            if color[u] != usize::MAX {
                taken[color[u]] = v;
            }
        }
        color[v] = (0..).find(|&c| taken[c] != v).expect("some color is free");
    }
    Ok(Coloring::from_colors(color))
}

/// Connected components, each sorted, listed by smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        out.push(VertexSet::from(comp));
    }
    out
}

/// Splits a connected graph by parity of depth in the BFS tree rooted at
/// `root` (neighbours visited in increasing id order).
pub fn spanning_tree_levels(g: &Graph, root: usize) -> Result<(VertexSet, VertexSet)> {
    let n = g.n();
    if root >= n {
        return Err(Error::Precondition(format!("root {root} out of range")));
    }
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(Error::NotConnected);
    }
    let even = (0..n).filter(|&v| depth[v] % 2 == 0).collect();
    let odd = (0..n).filter(|&v| depth[v] % 2 == 1).collect();
    Ok((even, odd))
}

/// Maximum matching of a bipartite graph by augmenting paths.
pub fn maximum_matching(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let sides = is_bipartite(g)
        .ok_or_else(|| Error::Precondition("maximum matching requires a bipartite graph".into()))?;
    let n = g.n();
    let mut mate = vec![usize::MAX; n];

    fn augment(g: &Graph, u: usize, mate: &mut [usize], visited: &mut [bool]) -> bool {
        for &w in g.neighbors(u) {
            if visited[w] {
                continue;
            }
            visited[w] = true;
            if mate[w] == usize::MAX || augment(g, mate[w], mate, visited) {
                mate[w] = u;
                mate[u] = w;
                return true;
            }
        }
        false
    }

    for u in (0..n).filter(|&u| sides.color[u] == 0) {
        let mut visited = vec![false; n];
        augment(g, u, &mut mate, &mut visited);
    }
    Ok((0..n)
        .filter(|&u| sides.color[u] == 0 && mate[u] != usize::MAX)
        .map(|u| (u.min(mate[u]), u.max(mate[u])))
        .collect())
}
