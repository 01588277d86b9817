//! Checks of the clique-neighbourhood structure that the bull, t-bull and
//! paw kernels rely on.
//!
//! Given a clique `C` and an independent set `S` disjoint from it, bull-free
//! graphs split `N_S(C)` into a part `S¹` whose `C`-neighbourhoods form a
//! chain and a part `S²` whose members all see one of a few vertices of `C`
//! that `S¹` misses. In paw-free graphs every vertex of `N_S(C)` sees all but
//! at most one vertex of `C`. A failure of either property exposes an
//! induced copy of the forbidden graph, which the report locates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_induced, Graph, PatternId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticClass {
    Bull,
    TBull(usize),
    Paw,
}

impl DiagnosticClass {
    pub fn pattern(self) -> PatternId {
        match self {
            DiagnosticClass::Bull => PatternId::Bull,
            DiagnosticClass::TBull(t) => PatternId::TBull(t),
            DiagnosticClass::Paw => PatternId::Paw,
        }
    }

    /// Number of clique vertices `S¹` must leave uncovered.
    fn gap(self) -> usize {
        match self {
            DiagnosticClass::Bull => 1,
            DiagnosticClass::TBull(t) => t - 2,
            DiagnosticClass::Paw => 1,
        }
    }
}

impl fmt::Display for DiagnosticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagnosticClass::Bull => f.write_str("bull"),
            DiagnosticClass::TBull(t) => write!(f, "tbull:{t}"),
            DiagnosticClass::Paw => f.write_str("paw"),
        }
    }
}

impl FromStr for DiagnosticClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bull" => Ok(DiagnosticClass::Bull),
            "paw" => Ok(DiagnosticClass::Paw),
            _ => match s.strip_prefix("tbull:").map(str::parse::<usize>) {
                Some(Ok(t)) if t >= 3 => Ok(DiagnosticClass::TBull(t)),
                _ => Err(Error::Config(format!("unknown diagnostic class '{s}'"))),
            },
        }
    }
}

impl Serialize for DiagnosticClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DiagnosticClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Two vertices of `S¹` with incomparable `C`-neighbourhoods.
    NotAChain,
    /// `S¹` is non-empty but no clique vertex is adjacent to all of it.
    NoCommonNeighbor,
    /// A vertex of `S²` adjacent to none of the `z` vertices.
    Uncovered,
    /// A vertex of `N_S(C)` missing two or more clique vertices.
    MissesTwo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticViolation {
    pub kind: ViolationKind,
    /// The vertices involved in the failed property.
    pub vertices: VertexSet,
    /// An induced copy of the forbidden pattern, when one could be found.
    pub located: Option<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub class: DiagnosticClass,
    pub clique: VertexSet,
    pub outside: VertexSet,
    pub s1: VertexSet,
    pub s2: VertexSet,
    pub common_neighbor: Option<usize>,
    pub covering: VertexSet,
    pub violations: Vec<DiagnosticViolation>,
}

impl DiagnosticReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the structural checks for clique `c` against the independent set
/// `outside`.
pub fn clique_neighborhood_diagnostic(
    g: &Graph,
    c: &VertexSet,
    outside: &VertexSet,
    class: DiagnosticClass,
) -> Result<DiagnosticReport> {
    c.check_range(g.n())?;
    outside.check_range(g.n())?;
    if !g.is_clique(c) {
        return Err(Error::Precondition(format!("{c} is not a clique")));
    }
    if !g.is_independent(outside) || outside.iter().any(|v| c.contains(v)) {
        return Err(Error::Precondition("outside set must be independent and disjoint from the clique".into()));
    }
    let ns: Vec<usize> = outside.iter().filter(|&v| g.neighbors(v).iter().any(|&u| c.contains(u))).collect();
    let nc = |v: usize| g.neighbors_in(v, c);
    let mut report = DiagnosticReport {
        class,
        clique: c.clone(),
        outside: outside.clone(),
        s1: VertexSet::new(),
        s2: VertexSet::new(),
        common_neighbor: None,
        covering: VertexSet::new(),
        violations: Vec::new(),
    };
    let locate = |vs: &VertexSet| -> Result<Option<VertexSet>> {
        let sub = g.induced_subgraph(vs);
        if let Some(w) = find_induced(&sub.graph, class.pattern())? {
            return Ok(Some(sub.lift(&w)));
        }
        find_induced(g, class.pattern())
    };

    if class == DiagnosticClass::Paw {
        if c.len() >= 2 {
            for &v in &ns {
                let seen = nc(v);
                if seen.len() + 1 < c.len() {
                    let missed = c.difference(&seen);
                    let w = seen.as_slice()[0];
                    let vs = VertexSet::from([v, w, missed.as_slice()[0], missed.as_slice()[1]]);
                    let located = locate(&vs)?;
                    report.violations.push(DiagnosticViolation { kind: ViolationKind::MissesTwo, vertices: vs, located });
                }
            }
        }
        report.s2 = ns.into();
        return Ok(report);
    }

    let limit = c.len().saturating_sub(class.gap());
    let mut s1: Vec<usize> = Vec::new();
    let mut s2: Vec<usize> = Vec::new();
    for &x in &ns {
        let nx = nc(x);
        let fits = nx.len() <= limit && s1.iter().all(|&y| nx.union(&nc(y)).len() <= limit);
        if fits {
            s1.push(x);
        } else {
            s2.push(x);
        }
    }

    for (i, &x) in s1.iter().enumerate() {
        for &y in &s1[i + 1..] {
            let (nx, ny) = (nc(x), nc(y));
            if nx.is_subset_of(&ny) || ny.is_subset_of(&nx) {
                continue;
            }
            let u = nx.difference(&ny).as_slice()[0];
            let v = ny.difference(&nx).as_slice()[0];
            let free = c.difference(&nx.union(&ny));
            let mut vs: Vec<usize> = vec![x, y, u, v];
            vs.extend(free.iter().take(class.gap()));
            let vs = VertexSet::from_iter_unsorted(vs);
            let located = locate(&vs)?;
            report.violations.push(DiagnosticViolation { kind: ViolationKind::NotAChain, vertices: vs, located });
        }
    }

    if let Some((&first, rest)) = s1.split_first() {
        let common = rest.iter().fold(nc(first), |acc, &y| {
            let ny = nc(y);
            acc.iter().filter(|&v| ny.contains(v)).collect()
        });
        report.common_neighbor = common.iter().next();
        if report.common_neighbor.is_none() {
            let vs = VertexSet::from(s1.clone());
            let located = find_induced(g, class.pattern())?;
            report.violations.push(DiagnosticViolation { kind: ViolationKind::NoCommonNeighbor, vertices: vs, located });
        }
    }

    let seen_by_s1 = s1.iter().fold(VertexSet::new(), |acc, &y| acc.union(&nc(y)));
    report.covering = c.difference(&seen_by_s1).iter().take(class.gap()).collect();
    for &x in &s2 {
        if report.covering.iter().all(|z| !g.has_edge(x, z)) {
            let located = find_induced(g, class.pattern())?;
            report.violations.push(DiagnosticViolation {
                kind: ViolationKind::Uncovered,
                vertices: VertexSet::from([x]),
                located,
            });
        }
    }
    report.s1 = VertexSet::from_iter_unsorted(s1);
    report.s2 = VertexSet::from_iter_unsorted(s2);
    Ok(report)
}

/// [`clique_neighborhood_diagnostic`] with `outside` chosen as the greedy
/// maximal independent set of `V \ C` in increasing id order.
pub fn diagnose_clique(g: &Graph, c: &VertexSet, class: DiagnosticClass) -> Result<DiagnosticReport> {
    c.check_range(g.n())?;
    let mut outside: Vec<usize> = Vec::new();
    for v in g.vertices().filter(|&v| !c.contains(v)) {
        if outside.iter().all(|&u| !g.has_edge(u, v)) {
            outside.push(v);
        }
    }
    clique_neighborhood_diagnostic(g, c, &VertexSet::from(outside), class)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paw_is_located() {
        let g = PatternId::Paw.graph();
        let tri: VertexSet = g.vertices().filter(|&v| g.degree(v) >= 2).collect();
        let r = diagnose_clique(&g, &tri, DiagnosticClass::Paw).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::MissesTwo);
        assert_eq!(r.violations[0].located, Some(VertexSet::from([0, 1, 2, 3])));
    }

    #[test]
    fn singleton_clique_is_consistent() {
        let g = Graph::star(4);
        let r = diagnose_clique(&g, &VertexSet::from([0]), DiagnosticClass::Bull).unwrap();
        assert!(r.is_consistent());
        let r = diagnose_clique(&g, &VertexSet::from([1]), DiagnosticClass::TBull(4)).unwrap();
        assert!(r.is_consistent());
    }

    #[test]
    fn bull_breaks_the_chain() {
        // Triangle {0,1,2}, with 3 seeing only 0 and 4 seeing only 1: the
        // bull itself.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]).unwrap();
        let r = clique_neighborhood_diagnostic(&g, &VertexSet::from([0, 1, 2]), &VertexSet::from([3, 4]), DiagnosticClass::Bull)
            .unwrap();
        assert_eq!(r.s1, VertexSet::from([3, 4]));
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::NotAChain));
        assert_eq!(r.violations[0].located, Some(VertexSet::from([0, 1, 2, 3, 4])));
    }

    #[test]
    fn nested_neighborhoods_pass() {
        // K4 with outside vertices seeing {0} and {0,1}.
        let mut g = Graph::complete(4).disjoint_union(&Graph::new(2));
        for (u, v) in [(0, 4), (0, 5), (1, 5)] {
            g.add_edge(u, v).unwrap();
        }
        let r = diagnose_clique(&g, &VertexSet::from([0, 1, 2, 3]), DiagnosticClass::Bull).unwrap();
        assert!(r.is_consistent());
        assert_eq!(r.common_neighbor, Some(0));
        assert_eq!(r.covering, VertexSet::from([2]));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = Graph::path(3);
        assert!(diagnose_clique(&g, &VertexSet::from([0, 2]), DiagnosticClass::Paw).is_err());
        let c = VertexSet::from([0]);
        assert!(clique_neighborhood_diagnostic(&g, &c, &VertexSet::from([1, 2]), DiagnosticClass::Paw).is_err());
        assert!("tbull:2".parse::<DiagnosticClass>().is_err());
        assert_eq!("tbull:5".parse::<DiagnosticClass>().unwrap(), DiagnosticClass::TBull(5));
    }
}
