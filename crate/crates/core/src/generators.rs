//! Seeded random graphs for each studied class, random monotone CNF, and
//! the spanning-tree counterexample fixture.
//!
//! Every generator draws from its own `ChaCha8Rng` seeded with the caller's
//! seed, so equal inputs give identical outputs on every platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_induced_containing, spanning_tree_levels, Graph, PatternId, VertexSet, MAX_PATTERN_VERTICES};
use crate::mvc::{complete_and_minimalize, mmvc_exact_with_cap};
use crate::reductions::{CnfFormula, Literal};

/// Largest `n` for the generators that add edges by rejection.
pub const REJECTION_CAP: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenClass {
    Any,
    Bipartite,
    TriangleFree,
    KtFree(usize),
    PawFree,
    BullFree,
    K1tFree(usize),
}

impl GenClass {
    /// Pattern every output avoids, if the class is defined by one.
    pub fn forbidden(self) -> Option<PatternId> {
        match self {
            GenClass::Any | GenClass::Bipartite => None,
            GenClass::TriangleFree => Some(PatternId::Clique(3)),
            GenClass::KtFree(t) => Some(PatternId::Clique(t)),
            GenClass::PawFree => Some(PatternId::Paw),
            GenClass::BullFree => Some(PatternId::Bull),
            GenClass::K1tFree(t) => Some(PatternId::Claw(t)),
        }
    }
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenClass::Any => f.write_str("any"),
            GenClass::Bipartite => f.write_str("bipartite"),
            GenClass::TriangleFree => f.write_str("triangle-free"),
            GenClass::KtFree(t) => write!(f, "kt-free:{t}"),
            GenClass::PawFree => f.write_str("paw-free"),
            GenClass::BullFree => f.write_str("bull-free"),
            GenClass::K1tFree(t) => write!(f, "k1t-free:{t}"),
        }
    }
}

impl FromStr for GenClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let param = |p: &str| {
            p.parse::<usize>()
                .map_err(|_| Error::Config(format!("bad class parameter in '{s}'")))
        };
        let class = match s.split_once(':') {
            None => match s {
                "any" => GenClass::Any,
                "bipartite" => GenClass::Bipartite,
                "triangle-free" => GenClass::TriangleFree,
                "paw-free" => GenClass::PawFree,
                "bull-free" => GenClass::BullFree,
                _ => return Err(Error::Config(format!("unknown generator class '{s}'"))),
            },
            Some(("kt-free", p)) => GenClass::KtFree(param(p)?),
            Some(("k1t-free", p)) => GenClass::K1tFree(param(p)?),
            Some(_) => return Err(Error::Config(format!("unknown generator class '{s}'"))),
        };
        match class {
            GenClass::KtFree(t) if t < 2 => Err(Error::Config("kt-free needs t >= 2".into())),
            GenClass::K1tFree(t) if t < 1 => Err(Error::Config("k1t-free needs t >= 1".into())),
            c => Ok(c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub class: GenClass,
    pub n: usize,
    pub edge_density: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(class: GenClass, n: usize, edge_density: f64, seed: u64) -> Self {
        GenSpec { class, n, edge_density, seed }
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Erdős–Rényi `G(n, p)`.
fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for (u, v) in all_pairs(n) {
        if rng.gen_bool(p) {
            g.add_edge(u, v).expect("fresh pair");
        }
    }
    g
}

/// Random `parts`-partite graph: uniform part labels, cross edges with
/// probability `p`.
fn random_partite(n: usize, parts: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let label: Vec<usize> = (0..n).map(|_| rng.gen_range(0..parts.max(1))).collect();
    let mut g = Graph::new(n);
    for (u, v) in all_pairs(n) {
        if label[u] != label[v] && rng.gen_bool(p) {
            g.add_edge(u, v).expect("fresh pair");
        }
    }
    g
}

/// Visits the pairs in random order and keeps each with probability `p`
/// unless it would create an induced copy of `pattern`. An added edge can
/// only create copies through both its endpoints, so the check is local.
fn avoiding(n: usize, pattern: PatternId, p: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut pairs = all_pairs(n);
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        if !rng.gen_bool(p) {
            continue;
        }
        g.add_edge(u, v)?;
        if find_induced_containing(&g, pattern, &[u, v])?.is_some() {
            g.remove_edge(u, v);
        }
    }
    Ok(g)
}

fn check_rejection_cap(class: GenClass, n: usize) -> Result<()> {
    if n > REJECTION_CAP {
        return Err(Error::GenerationFailed(format!(
            "{class} generation is capped at n = {REJECTION_CAP}, got {n}"
        )));
    }
    Ok(())
}

fn relabel(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = g.vertices().collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.n(), &edges).expect("permutation keeps the graph simple")
}

/// Disjoint union of components, each triangle-free or complete
/// multipartite.
fn paw_free(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut g = Graph::new(0);
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left);
        left -= size;
        let part = if rng.gen_bool(0.5) {
            let mut sizes = Vec::new();
            let mut rest = size;
            while rest > 0 {
                let s = rng.gen_range(1..=rest);
                sizes.push(s);
                rest -= s;
            }
            Graph::complete_multipartite(&sizes)
        } else if size <= REJECTION_CAP {
            avoiding(size, PatternId::Clique(3), p, rng)?
        } else {
            random_partite(size, 2, p, rng)
        };
        g = g.disjoint_union(&part);
    }
    Ok(relabel(&g, rng))
}

/// A random graph of the requested class.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    let p = spec.edge_density;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(format!("edge density {p} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    match spec.class {
        GenClass::Any => Ok(erdos_renyi(n, p, &mut rng)),
        GenClass::Bipartite => Ok(random_partite(n, 2, p, &mut rng)),
        GenClass::TriangleFree => {
            if n <= REJECTION_CAP && rng.gen_bool(0.5) {
                avoiding(n, PatternId::Clique(3), p, &mut rng)
            } else {
                Ok(random_partite(n, 2, p, &mut rng))
            }
        }
        GenClass::KtFree(t) => {
            if t <= MAX_PATTERN_VERTICES && n <= REJECTION_CAP && rng.gen_bool(0.5) {
                avoiding(n, PatternId::Clique(t), p, &mut rng)
            } else {
                Ok(random_partite(n, t - 1, p, &mut rng))
            }
        }
        GenClass::PawFree => paw_free(n, p, &mut rng),
        GenClass::BullFree => {
            check_rejection_cap(spec.class, n)?;
            avoiding(n, PatternId::Bull, p, &mut rng)
        }
        GenClass::K1tFree(t) => {
            check_rejection_cap(spec.class, n)?;
            if t + 1 > MAX_PATTERN_VERTICES {
                return Err(Error::UnsupportedPattern {
                    pattern: PatternId::Claw(t),
                    vertices: t + 1,
                    max: MAX_PATTERN_VERTICES,
                });
            }
            avoiding(n, PatternId::Claw(t), p, &mut rng)
        }
    }
}

/// `m` clauses over `n` variables, each with 1 to 3 distinct variables
/// (never more than `n`) and a single polarity chosen by coin flip.
pub fn generate_monotone_cnf(n: usize, m: usize, seed: u64) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 0 {
        return CnfFormula::new(0, Vec::new()).expect("empty formula");
    }
    let vars: Vec<usize> = (0..n).collect();
    let clauses = (0..m)
        .map(|_| {
            let width = rng.gen_range(1..=3.min(n));
            let positive = rng.gen_bool(0.5);
            vars.choose_multiple(&mut rng, width)
                .map(|&var| Literal { var, positive })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("variables are in range")
}

/// A triangle `u, v, w` (ids 0, 1, 2) with `p` pendants on each corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FernauFixture {
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// Pendants of `u`, `v` and `w`, in that order.
    pub pendants: [VertexSet; 3],
}

pub fn fernau_counterexample(p: usize) -> Result<FernauFixture> {
    if p < 2 {
        return Err(Error::Precondition(format!("the fixture needs p >= 2, got {p}")));
    }
    let mut g = Graph::complete(3).disjoint_union(&Graph::new(3 * p));
    let mut pendants: [VertexSet; 3] = Default::default();
    for (corner, group) in pendants.iter_mut().enumerate() {
        let start = 3 + corner * p;
        for leaf in start..start + p {
            g.add_edge(corner, leaf)?;
        }
        *group = (start..start + p).collect();
    }
    Ok(FernauFixture { graph: g, u: 0, v: 1, w: 2, pendants })
}

/// What happens when the larger spanning-tree level of the fixture is
/// completed to a minimal vertex cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FernauDemo {
    pub p: usize,
    pub n: usize,
    pub v0: VertexSet,
    pub v1: VertexSet,
    pub completion: VertexSet,
    /// `|V(G)| / 2` as a fraction `(3 + 3p) / 2`.
    pub half_n_numer: usize,
    pub half_n_denom: usize,
    pub completion_below_half: bool,
    pub mmvc: Option<usize>,
}

/// Roots the BFS tree at `u` (the tree drops the edge `vw`), takes the
/// larger level `V0`, and completes it. Runs the exact oracle when the
/// fixture has at most `oracle_cap` vertices.
pub fn fernau_demo(p: usize, oracle_cap: usize) -> Result<FernauDemo> {
    let fx = fernau_counterexample(p)?;
    let g = &fx.graph;
    let (v0, v1) = spanning_tree_levels(g, fx.u)?;
    let (larger, smaller) = if v0.len() >= v1.len() { (v0, v1) } else { (v1, v0) };
    let completion = complete_and_minimalize(g, &larger)?.cover;
    let n = g.n();
    let mmvc = if n <= oracle_cap { Some(mmvc_exact_with_cap(g, oracle_cap)?.size) } else { None };
    Ok(FernauDemo {
        p,
        n,
        completion_below_half: 2 * completion.len() < n,
        v0: larger,
        v1: smaller,
        completion,
        half_n_numer: n,
        half_n_denom: 2,
        mmvc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_induced, is_bipartite};

    #[test]
    fn class_examples() {
        let g = generate(&GenSpec::new(GenClass::KtFree(3), 6, 1.0, 7)).unwrap();
        assert!(find_induced(&g, PatternId::Clique(3)).unwrap().is_none());
        let g = generate(&GenSpec::new(GenClass::PawFree, 9, 0.5, 3)).unwrap();
        assert!(find_induced(&g, PatternId::Paw).unwrap().is_none());
        assert_eq!(generate(&GenSpec::new(GenClass::Any, 0, 0.5, 1)).unwrap().n(), 0);
        let g = generate(&GenSpec::new(GenClass::Bipartite, 12, 0.6, 9)).unwrap();
        assert!(is_bipartite(&g).is_some());
    }

    #[test]
    fn same_seed_same_graph() {
        for class in [GenClass::Any, GenClass::BullFree, GenClass::PawFree, GenClass::K1tFree(3)] {
            let a = generate(&GenSpec::new(class, 14, 0.4, 42)).unwrap();
            let b = generate(&GenSpec::new(class, 14, 0.4, 42)).unwrap();
            assert_eq!(a, b, "{class}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(generate(&GenSpec::new(GenClass::Any, 3, 1.5, 0)).is_err());
        assert!(matches!(
            generate(&GenSpec::new(GenClass::BullFree, 41, 0.5, 0)),
            Err(Error::GenerationFailed(_))
        ));
        assert!("kt-free:1".parse::<GenClass>().is_err());
        assert_eq!("k1t-free:3".parse::<GenClass>().unwrap(), GenClass::K1tFree(3));
    }

    #[test]
    fn cnf_examples() {
        assert_eq!(generate_monotone_cnf(0, 0, 1).clause_count(), 0);
        let f = generate_monotone_cnf(3, 4, 11);
        assert_eq!(f.clause_count(), 4);
        assert!(f.is_monotone());
        assert!(f.clauses.iter().all(|c| (1..=3).contains(&c.len())));
        assert_eq!(f, generate_monotone_cnf(3, 4, 11));
    }

    #[test]
    fn fixture_shape() {
        let fx = fernau_counterexample(2).unwrap();
        assert_eq!((fx.graph.n(), fx.graph.m()), (9, 9));
        assert!([0, 1, 2].iter().all(|&c| fx.graph.degree(c) == 4));
        assert!(fernau_counterexample(1).is_err());
        let demo = fernau_demo(2, 20).unwrap();
        assert_eq!((demo.v0.len(), demo.v1.len()), (5, 4));
        assert_eq!(demo.completion, VertexSet::from([0, 1, 7, 8]));
        assert!(demo.completion_below_half);
    }
}
