//! Induced-pattern search for small fixed graphs.
//!
//! Host vertices are added in increasing order; a partial selection survives
//! only while the subgraph it induces (in selection order) is an induced
//! subgraph of the pattern under some injective labelling. The set of such
//! labelled prefixes is precomputed once per pattern, so the pruning is
//! exact and the first complete selection is the lexicographically least
//! embedding.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Largest pattern accepted by [`find_induced`].
pub const MAX_PATTERN_VERTICES: usize = 8;

/// Small forbidden graphs used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    /// Complete graph `K_t`.
    Clique(usize),
    /// Star `K_{1,t}` (t leaves).
    Claw(usize),
    /// Path `P_t` on t vertices.
    Path(usize),
    /// Triangle with pendants on two of its vertices.
    Bull,
    /// `K_t` with pendants on two of its vertices.
    TBull(usize),
    /// Triangle with one pendant.
    Paw,
    /// `K_4` minus an edge.
    Diamond,
    /// Cycle `C_t`.
    Cycle(usize),
}

impl PatternId {
    pub fn vertex_count(self) -> usize {
        match self {
            PatternId::Clique(t) | PatternId::Path(t) | PatternId::Cycle(t) => t,
            PatternId::Claw(t) => t + 1,
            PatternId::Bull => 5,
            PatternId::TBull(t) => t + 2,
            PatternId::Paw | PatternId::Diamond => 4,
        }
    }

    /// The pattern itself as a graph.
    pub fn graph(self) -> Graph {
        match self {
            PatternId::Clique(t) => Graph::complete(t),
            PatternId::Claw(t) => Graph::star(t),
            PatternId::Path(t) => Graph::path(t),
            PatternId::Cycle(t) => Graph::cycle(t),
            PatternId::Bull => PatternId::TBull(3).graph(),
            PatternId::TBull(t) => {
                let mut g = Graph::complete(t).disjoint_union(&Graph::new(2));
                if t >= 2 {
                    g.add_edge(0, t).expect("in range");
                    g.add_edge(1, t + 1).expect("in range");
                }
                g
            }
            PatternId::Paw => Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).expect("valid"),
            PatternId::Diamond => {
                Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid")
            }
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternId::Clique(t) => write!(f, "k:{t}"),
            PatternId::Claw(t) => write!(f, "k1t:{t}"),
            PatternId::Path(t) => write!(f, "p:{t}"),
            PatternId::Cycle(t) => write!(f, "c:{t}"),
            PatternId::Bull => write!(f, "bull"),
            PatternId::TBull(t) => write!(f, "tbull:{t}"),
            PatternId::Paw => write!(f, "paw"),
            PatternId::Diamond => write!(f, "diamond"),
        }
    }
}

impl FromStr for PatternId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unknown pattern '{s}'"));
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        match (name.to_ascii_lowercase().as_str(), arg) {
            ("bull", None) => Ok(PatternId::Bull),
            ("paw", None) => Ok(PatternId::Paw),
            ("diamond", None) => Ok(PatternId::Diamond),
            ("k" | "kt", Some(t)) if t >= 1 => Ok(PatternId::Clique(t)),
            ("k1t" | "claw", Some(t)) if t >= 1 => Ok(PatternId::Claw(t)),
            ("p" | "path", Some(t)) if t >= 1 => Ok(PatternId::Path(t)),
            ("c" | "cycle", Some(t)) if t >= 3 => Ok(PatternId::Cycle(t)),
            ("tbull", Some(t)) if t >= 2 => Ok(PatternId::TBull(t)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for PatternId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PatternId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Labelled prefixes of a pattern, keyed by `(length, adjacency bits)`.
struct PrefixIndex {
    size: usize,
    prefixes: HashSet<u64>,
}

#[inline]
fn key(len: usize, bits: u32) -> u64 {
    ((len as u64) << 32) | bits as u64
}

#[inline]
fn offset(pos: usize) -> usize {
    pos * pos.saturating_sub(1) / 2
}

impl PrefixIndex {
    fn build(p: &Graph) -> Self {
        let size = p.n();
        let mut prefixes = HashSet::new();
        let mut used = vec![false; size];
        let mut seq = Vec::with_capacity(size);
        fn rec(
            p: &Graph,
            seq: &mut Vec<usize>,
            used: &mut [bool],
            bits: u32,
            out: &mut HashSet<u64>,
        ) {
            out.insert(key(seq.len(), bits));
            if seq.len() == p.n() {
                return;
            }
            let pos = seq.len();
            for w in 0..p.n() {
                if used[w] {
                    continue;
                }
                let mut b = bits;
                for (h, &x) in seq.iter().enumerate() {
                    if p.has_edge(x, w) {
                        b |= 1 << (offset(pos) + h);
                    }
                }
                used[w] = true;
                seq.push(w);
                rec(p, seq, used, b, out);
                seq.pop();
                used[w] = false;
            }
        }
        rec(p, &mut seq, &mut used, 0, &mut prefixes);
        PrefixIndex { size, prefixes }
    }

    fn admits(&self, len: usize, bits: u32) -> bool {
        self.prefixes.contains(&key(len, bits))
    }
}

thread_local! {
    static INDEX_CACHE: RefCell<HashMap<PatternId, Rc<PrefixIndex>>> = RefCell::new(HashMap::new());
}

fn index_for(pattern: PatternId) -> Result<Rc<PrefixIndex>> {
    let size = pattern.vertex_count();
    if size > MAX_PATTERN_VERTICES {
        return Err(Error::UnsupportedPattern {
            pattern,
            vertices: size,
            max: MAX_PATTERN_VERTICES,
        });
    }
    Ok(INDEX_CACHE.with(|c| {
        c.borrow_mut()
            .entry(pattern)
            .or_insert_with(|| Rc::new(PrefixIndex::build(&pattern.graph())))
            .clone()
    }))
}

struct Search<'a> {
    g: &'a Graph,
    idx: &'a PrefixIndex,
    seq: Vec<usize>,
}

impl Search<'_> {
    fn bits_with(&self, bits: u32, w: usize) -> u32 {
        let pos = self.seq.len();
        let mut b = bits;
        for (h, &x) in self.seq.iter().enumerate() {
            if self.g.has_edge(x, w) {
                b |= 1 << (offset(pos) + h);
            }
        }
        b
    }

    /// Extends `seq` with candidates from `start..` (skipping `skip`).
    fn extend(&mut self, bits: u32, start: usize, skip: &[usize]) -> bool {
        if self.seq.len() == self.idx.size {
            return true;
        }
        let n = self.g.n();
        let remaining = self.idx.size - self.seq.len();
        for w in start..n {
            if n - w < remaining {
                break;
            }
            if skip.contains(&w) {
                continue;
            }
            let b = self.bits_with(bits, w);
            if !self.idx.admits(self.seq.len() + 1, b) {
                continue;
            }
            self.seq.push(w);
            if self.extend(b, w + 1, skip) {
                return true;
            }
            self.seq.pop();
        }
        false
    }
}

/// Lexicographically least vertex set inducing a copy of `pattern`, if any.
pub fn find_induced(g: &Graph, pattern: PatternId) -> Result<Option<VertexSet>> {
    let idx = index_for(pattern)?;
    if idx.size == 0 {
        return Ok(Some(VertexSet::new()));
    }
    let mut s = Search { g, idx: &idx, seq: Vec::with_capacity(idx.size) };
    Ok(s.extend(0, 0, &[]).then(|| VertexSet::from_iter_unsorted(s.seq)))
}

/// Some induced copy of `pattern` that uses every vertex of `required`.
pub fn find_induced_containing(
    g: &Graph,
    pattern: PatternId,
    required: &[usize],
) -> Result<Option<VertexSet>> {
    let idx = index_for(pattern)?;
    if required.len() > idx.size {
        return Ok(None);
    }
    let mut s = Search { g, idx: &idx, seq: Vec::with_capacity(idx.size) };
    let mut bits = 0;
    for &r in required {
        if r >= g.n() {
            return Err(Error::Precondition(format!("vertex {r} out of range")));
        }
        if s.seq.contains(&r) {
            continue;
        }
        bits = s.bits_with(bits, r);
        if !idx.admits(s.seq.len() + 1, bits) {
            return Ok(None);
        }
        s.seq.push(r);
    }
    Ok(s.extend(bits, 0, required).then(|| VertexSet::from_iter_unsorted(s.seq)))
}

pub fn is_free(g: &Graph, pattern: PatternId) -> Result<bool> {
    Ok(find_induced(g, pattern)?.is_none())
}

/// `Ok` when `g` is `pattern`-free, otherwise a [`Error::NotInClass`]
/// carrying the lexicographically least copy.
pub fn ensure_free(g: &Graph, pattern: PatternId) -> Result<()> {
    match find_induced(g, pattern)? {
        None => Ok(()),
        Some(witness) => Err(Error::NotInClass { pattern, witness }),
    }
}
