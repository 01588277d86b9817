//! Constructive Erdős–Hajnal extraction and the greedy clique /
//! independent-set partition built from it.
//!
//! An [`Extractor`] promises, on graphs of its class, a clique or an
//! independent set of size at least `⌊n^δ⌋`. Repeatedly removing such sets
//! partitions the vertex set into at most `⌈n^{1−δ} / (2^{1−δ} − 1)⌉` parts.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    connected_components, ensure_free, find_induced, max_clique_with_cap,
    max_independent_set_with_cap, Graph, PatternId, VertexSet, DEFAULT_EXACT_CAP,
    MAX_PATTERN_VERTICES,
};
use crate::numeric::{ceil_with_slack, floor_pow, icbrt, ratio_to_f64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomogeneousKind {
    Clique,
    IndependentSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousSet {
    pub kind: HomogeneousKind,
    pub vertices: VertexSet,
}

impl HomogeneousSet {
    /// Classifies `vertices`; singletons count as independent sets.
    fn classify(g: &Graph, vertices: VertexSet) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Precondition("homogeneous sets are non-empty".into()));
        }
        let kind = if g.is_independent(&vertices) {
            HomogeneousKind::IndependentSet
        } else if g.is_clique(&vertices) {
            HomogeneousKind::Clique
        } else {
            return Err(Error::StructureViolation(format!(
                "{vertices} is neither a clique nor an independent set"
            )));
        };
        Ok(HomogeneousSet { kind, vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks the kind against `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        match self.kind {
            HomogeneousKind::Clique => g.is_clique(&self.vertices),
            HomogeneousKind::IndependentSet => g.is_independent(&self.vertices),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhPartition {
    pub cliques: Vec<HomogeneousSet>,
    pub indep_sets: Vec<HomogeneousSet>,
    pub delta: Rational64,
}

impl EhPartition {
    pub fn part_count(&self) -> usize {
        self.cliques.len() + self.indep_sets.len()
    }

    pub fn parts(&self) -> impl Iterator<Item = &HomogeneousSet> {
        self.cliques.iter().chain(&self.indep_sets)
    }
}

/// `⌈n^{1−δ} / (2^{1−δ} − 1)⌉`; for `δ = 1` a single extraction takes
/// everything, so the bound is `min(n, 1)`.
pub fn partition_bound(n: usize, delta: Rational64) -> usize {
    if n == 0 {
        return 0;
    }
    if delta >= Rational64::from_integer(1) {
        return 1;
    }
    let e = 1.0 - ratio_to_f64(delta);
    ceil_with_slack((n as f64).powf(e) / (2f64.powf(e) - 1.0)) as usize
}

/// Size every extraction must reach: `max(1, ⌊n^δ⌋)` for non-empty graphs.
pub fn required_size(n: usize, delta: Rational64) -> usize {
    if n == 0 {
        0
    } else {
        floor_pow(n as u64, delta).max(1) as usize
    }
}

pub trait Extractor: Send + Sync {
    fn name(&self) -> String;

    fn delta(&self) -> Rational64;

    /// Verifies that `g` belongs to the class this extractor is sound for.
    fn check_class(&self, g: &Graph) -> Result<()>;

    /// Extraction on a graph already known to be in the class.
    fn extract_in_class(&self, g: &Graph) -> Result<HomogeneousSet>;

    fn extract(&self, g: &Graph) -> Result<HomogeneousSet> {
        self.check_class(g)?;
        self.extract_in_class(g)
    }
}

impl fmt::Debug for dyn Extractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(δ={})", self.name(), self.delta())
    }
}

fn ensure_nonempty(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::Precondition("cannot extract from the empty graph".into()));
    }
    Ok(())
}

/// Independent set of a `K_t`-free graph of size at least `⌊n^{1/(t−1)}⌋`.
///
/// Membership in the class is checked when `K_t` is small enough to search
/// for; otherwise it is assumed, and a non-independent result is reported
/// as a class violation.
pub fn ramsey_is_extract(g: &Graph, t: usize) -> Result<VertexSet> {
    if t < 2 {
        return Err(Error::Precondition(format!("ramsey extraction needs t >= 2, got {t}")));
    }
    if t <= MAX_PATTERN_VERTICES {
        ensure_free(g, PatternId::Clique(t))?;
    }
    ramsey_unchecked(g, t)
}

fn ramsey_unchecked(g: &Graph, t: usize) -> Result<VertexSet> {
    let out = VertexSet::from(ramsey_within(g, g.all_vertices().into_vec(), t));
    if !g.is_independent(&out) {
        return Err(Error::StructureViolation(format!("graph contains a K_{t}")));
    }
    Ok(out)
}

fn ramsey_within(g: &Graph, verts: Vec<usize>, t: usize) -> Vec<usize> {
    if t <= 2 || verts.is_empty() {
        return verts;
    }
    let inside = VertexSet::from(verts.clone());
    let degree = |v: usize| g.neighbors(v).iter().filter(|&&u| inside.contains(u)).count();
    let (hub, max_deg) = verts
        .iter()
        .map(|&v| (v, degree(v)))
        .fold((verts[0], 0), |best, cur| if cur.1 > best.1 { cur } else { best });

    let n = verts.len() as u128;
    let sparse = (max_deg as u128)
        .checked_pow(t as u32 - 1)
        .zip(n.checked_pow(t as u32 - 2))
        .is_some_and(|(lhs, rhs)| lhs < rhs);
    if sparse {
        let mut alive = inside.clone().into_vec();
        let mut picked = Vec::new();
        while let Some(&v) = alive.first() {
            picked.push(v);
            alive.retain(|&u| u != v && !g.has_edge(u, v));
        }
        picked
    } else {
        let nbhd: Vec<usize> = g.neighbors(hub).iter().copied().filter(|&u| inside.contains(u)).collect();
        ramsey_within(g, nbhd, t - 1)
    }
}

fn contains_triangle(g: &Graph) -> bool {
    g.edges().any(|(u, v)| {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    })
}

/// Parts of `g` when it is complete multipartite, ordered by smallest member.
fn multipartite_parts(g: &Graph) -> Option<Vec<VertexSet>> {
    let all = g.all_vertices();
    let mut part_of = vec![usize::MAX; g.n()];
    let mut parts: Vec<VertexSet> = Vec::new();
    for v in g.vertices() {
        if part_of[v] != usize::MAX {
            continue;
        }
        let part = all.difference(&VertexSet::from(g.neighbors(v).to_vec()));
        if !g.is_independent(&part) {
            return None;
        }
        for u in part.iter() {
            if part_of[u] != usize::MAX {
                return None;
            }
            part_of[u] = parts.len();
        }
        parts.push(part);
    }
    // Every vertex must see exactly the vertices outside its own part.
    g.vertices()
        .all(|v| g.degree(v) == g.n() - parts[part_of[v]].len())
        .then_some(parts)
}

/// Connected paw-free graphs are triangle-free or complete multipartite;
/// this checks that structure on every component and locates a paw when it
/// fails.
fn check_paw_free(g: &Graph) -> Result<()> {
    for comp in connected_components(g) {
        let sub = g.induced_subgraph(&comp);
        if !contains_triangle(&sub.graph) || multipartite_parts(&sub.graph).is_some() {
            continue;
        }
        return match find_induced(&sub.graph, PatternId::Paw)? {
            Some(w) => Err(Error::NotInClass { pattern: PatternId::Paw, witness: sub.lift(&w) }),
            None => Err(Error::StructureViolation(format!(
                "component {comp} has a triangle but is not complete multipartite"
            ))),
        };
    }
    Ok(())
}

/// Clique or independent set of size at least `⌊n^{1/3}⌋` in a paw-free
/// graph.
pub fn paw_olariu_extract(g: &Graph) -> Result<HomogeneousSet> {
    check_paw_free(g)?;
    olariu_unchecked(g)
}

fn olariu_unchecked(g: &Graph) -> Result<HomogeneousSet> {
    ensure_nonempty(g)?;
    let q = icbrt(g.n() as u64) as usize;
    let comps = connected_components(g);
    if comps.len() >= q {
        let reps: VertexSet = comps.iter().map(|c| c.as_slice()[0]).collect();
        return HomogeneousSet::classify(g, reps);
    }
    let largest = comps
        .iter()
        .fold(&comps[0], |best, c| if c.len() > best.len() { c } else { best });
    let sub = g.induced_subgraph(largest);
    let local = if !contains_triangle(&sub.graph) {
        ramsey_unchecked(&sub.graph, 3)?
    } else {
        let parts = multipartite_parts(&sub.graph).ok_or_else(|| {
            Error::StructureViolation("component is neither triangle-free nor complete multipartite".into())
        })?;
        let big = parts
            .iter()
            .fold(&parts[0], |best, p| if p.len() > best.len() { p } else { best });
        if big.len() >= parts.len() {
            big.clone()
        } else {
            parts.iter().map(|p| p.as_slice()[0]).collect()
        }
    };
    HomogeneousSet::classify(g, sub.lift(&local))
}

/// The larger of a maximum independent set and a maximum clique (ties go to
/// the independent set), rejected when smaller than `⌊n^δ⌋`.
pub fn brute_optimal_extract(g: &Graph, delta: Rational64, cap: usize) -> Result<HomogeneousSet> {
    ensure_nonempty(g)?;
    let is = max_independent_set_with_cap(g, cap)?;
    let clique = max_clique_with_cap(g, cap)?;
    let best = if is.len() >= clique.len() { is } else { clique };
    let required = required_size(g.n(), delta);
    if best.len() < required {
        return Err(Error::EhViolation { found: best.len(), required });
    }
    HomogeneousSet::classify(g, best)
}

#[derive(Clone, Debug)]
pub struct RamseyExtractor {
    t: usize,
}

impl RamseyExtractor {
    pub fn new(t: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::Config(format!("ramsey extractor needs t >= 2, got {t}")));
        }
        Ok(RamseyExtractor { t })
    }
}

impl Extractor for RamseyExtractor {
    fn name(&self) -> String {
        format!("ramsey:{}", self.t)
    }

    fn delta(&self) -> Rational64 {
        Rational64::new(1, self.t as i64 - 1)
    }

    fn check_class(&self, g: &Graph) -> Result<()> {
        if self.t <= MAX_PATTERN_VERTICES {
            ensure_free(g, PatternId::Clique(self.t))?;
        }
        Ok(())
    }

    fn extract_in_class(&self, g: &Graph) -> Result<HomogeneousSet> {
        ensure_nonempty(g)?;
        HomogeneousSet::classify(g, ramsey_unchecked(g, self.t)?)
    }
}

#[derive(Clone, Debug, Default)]
pub struct OlariuExtractor;

impl Extractor for OlariuExtractor {
    fn name(&self) -> String {
        "olariu".into()
    }

    fn delta(&self) -> Rational64 {
        Rational64::new(1, 3)
    }

    fn check_class(&self, g: &Graph) -> Result<()> {
        check_paw_free(g)
    }

    fn extract_in_class(&self, g: &Graph) -> Result<HomogeneousSet> {
        olariu_unchecked(g)
    }
}

/// Exact search; sound for any class with the EH property, at desk scale.
#[derive(Clone, Debug)]
pub struct BruteExtractor {
    pub delta: Rational64,
    pub forbidden: Option<PatternId>,
    pub cap: usize,
}

impl Extractor for BruteExtractor {
    fn name(&self) -> String {
        "brute".into()
    }

    fn delta(&self) -> Rational64 {
        self.delta
    }

    fn check_class(&self, g: &Graph) -> Result<()> {
        match self.forbidden {
            Some(p) if p.vertex_count() <= MAX_PATTERN_VERTICES => ensure_free(g, p),
            _ => Ok(()),
        }
    }

    fn extract_in_class(&self, g: &Graph) -> Result<HomogeneousSet> {
        brute_optimal_extract(g, self.delta, self.cap)
    }
}

/// Parameters an extractor may be built from; each strategy reads the
/// fields it needs.
#[derive(Clone, Debug)]
pub struct ExtractorSpec {
    pub t: usize,
    pub delta: Rational64,
    pub forbidden: Option<PatternId>,
    pub exact_cap: usize,
}

impl Default for ExtractorSpec {
    fn default() -> Self {
        ExtractorSpec {
            t: 3,
            delta: Rational64::new(1, 2),
            forbidden: None,
            exact_cap: DEFAULT_EXACT_CAP,
        }
    }
}

type ExtractorFactory = dyn Fn(&ExtractorSpec) -> Result<Box<dyn Extractor>> + Send + Sync;

/// Extraction strategies by name.
pub struct ExtractorRegistry {
    factories: BTreeMap<String, Box<ExtractorFactory>>,
}

impl ExtractorRegistry {
    pub fn empty() -> Self {
        ExtractorRegistry { factories: BTreeMap::new() }
    }

    pub fn register(
        &mut self,
        name: impl Into<String>,
        factory: impl Fn(&ExtractorSpec) -> Result<Box<dyn Extractor>> + Send + Sync + 'static,
    ) {
        self.factories.insert(name.into(), Box::new(factory));
    }

    pub fn build(&self, name: &str, spec: &ExtractorSpec) -> Result<Box<dyn Extractor>> {
        let factory = self.factories.get(name).ok_or_else(|| {
            Error::Config(format!("unknown extractor '{name}' (known: {})", self.names().join(", ")))
        })?;
        factory(spec)
    }

    pub fn names(&self) -> Vec<&str> {
        self.factories.keys().map(String::as_str).collect()
    }
}

impl Default for ExtractorRegistry {
    fn default() -> Self {
        let mut r = ExtractorRegistry::empty();
        r.register("ramsey", |s| Ok(Box::new(RamseyExtractor::new(s.t)?) as Box<dyn Extractor>));
        r.register("olariu", |_| Ok(Box::new(OlariuExtractor) as Box<dyn Extractor>));
        r.register("brute", |s| {
            Ok(Box::new(BruteExtractor { delta: s.delta, forbidden: s.forbidden, cap: s.exact_cap })
                as Box<dyn Extractor>)
        });
        r
    }
}

impl fmt::Debug for ExtractorRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

/// Partitions `V(g)` into cliques and independent sets by repeated
/// extraction from the residual graph.
pub fn eh_partition(g: &Graph, extractor: &dyn Extractor) -> Result<EhPartition> {
    extractor.check_class(g)?;
    eh_partition_in_class(g, extractor)
}

/// As [`eh_partition`], for callers that have already checked the class.
pub fn eh_partition_in_class(g: &Graph, extractor: &dyn Extractor) -> Result<EhPartition> {
    let delta = extractor.delta();
    let mut out = EhPartition { cliques: Vec::new(), indep_sets: Vec::new(), delta };
    let mut rest = g.all_vertices();
    while !rest.is_empty() {
        let sub = g.induced_subgraph(&rest);
        let found = extractor.extract_in_class(&sub.graph)?;
        let required = required_size(rest.len(), delta);
        if found.len() < required || !found.holds_in(&sub.graph) {
            return Err(Error::EhViolation { found: found.len(), required });
        }
        let part = HomogeneousSet { kind: found.kind, vertices: sub.lift(&found.vertices) };
        rest = rest.difference(&part.vertices);
        match part.kind {
            HomogeneousKind::Clique => out.cliques.push(part),
            HomogeneousKind::IndependentSet => out.indep_sets.push(part),
        }
    }
    let bound = partition_bound(g.n(), delta);
    if out.part_count() > bound {
        return Err(Error::TheoremContradiction(format!(
            "{} parts exceed the partition bound {bound} for n={}",
            out.part_count(),
            g.n()
        )));
    }
    Ok(out)
}
