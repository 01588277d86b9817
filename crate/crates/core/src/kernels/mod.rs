//! Kernelization for MMVC on general and H-free graphs, plus the trivial
//! lop-kernel for Maximum Independent Set on `K_t`-free graphs.
//!
//! None of these kernels rewrites edges. Every rule either decides the
//! instance or deletes isolated vertices; the class theorems then guarantee
//! that an undecided instance is small. A reduced instance larger than its
//! declared bound is reported as [`Error::TheoremContradiction`].

mod class;
mod diagnostic;
mod hfree;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eh::{ExtractorRegistry, ExtractorSpec};
use crate::error::{Error, Result};
use crate::graph::{
    ensure_free, is_proper_coloring, remove_isolated, Coloring, Graph, VertexSet,
    DEFAULT_EXACT_CAP, MAX_PATTERN_VERTICES,
};
use crate::mvc::{extend_nbhd_to_minimal_vc, greedy_minimal_vc};

pub use class::{tbull_delta, ClassBound, GraphClass};
pub use diagnostic::{
    clique_neighborhood_diagnostic, diagnose_clique, DiagnosticClass, DiagnosticReport,
    DiagnosticViolation, ViolationKind,
};
pub use hfree::kernel_hfree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmvcInstance {
    pub graph: Graph,
    pub k: usize,
}

impl MmvcInstance {
    pub fn new(graph: Graph, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("the parameter k must be positive".into()));
        }
        Ok(MmvcInstance { graph, k })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    RemoveIsolated,
    HighDegree,
    GreedyCover,
    IndependentPartNeighborhood,
    ColorClassNeighborhood,
    RamseySize,
    BussHighDegree,
    BussParameterExhausted,
    BussEdgeCount,
    BussVertexCount,
}

/// A reduced instance together with how it maps back to the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub k: usize,
    /// Input id of every reduced vertex.
    pub to_host: Vec<usize>,
    /// Vertices committed to the solution by the rules (input ids).
    pub forced: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum KernelOutcome {
    DecidedYes { witness: VertexSet, rule: RuleId },
    DecidedNo { rule: RuleId },
    Reduced { instance: ReducedInstance, declared_bound: u64, fired_rules: Vec<RuleId> },
}

impl KernelOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, KernelOutcome::DecidedYes { .. })
    }
}

/// Deletes isolated vertices and wraps the rest as a reduced instance whose
/// size is checked against `bound`.
fn reduce_to_bound(g: &Graph, k: usize, bound: u64, context: &str) -> Result<KernelOutcome> {
    let kept = remove_isolated(g);
    let mut fired_rules = Vec::new();
    if kept.graph.n() < g.n() {
        fired_rules.push(RuleId::RemoveIsolated);
    }
    if kept.graph.n() as u64 > bound {
        return Err(Error::TheoremContradiction(format!(
            "{context}: reduced instance has {} vertices, declared bound is {bound}",
            kept.graph.n()
        )));
    }
    Ok(KernelOutcome::Reduced {
        instance: ReducedInstance { graph: kept.graph, k, to_host: kept.to_host, forced: VertexSet::new() },
        declared_bound: bound,
        fired_rules,
    })
}

/// Rules shared by every MMVC kernel: a vertex of degree at least `k`, or a
/// greedy minimal vertex cover of size at least `k`, decides yes. Otherwise
/// returns the greedy cover for later rules.
fn degree_and_greedy_rules(inst: &MmvcInstance) -> Result<std::result::Result<KernelOutcome, VertexSet>> {
    let g = &inst.graph;
    if let Some(v) = g.vertices().find(|&v| g.degree(v) >= inst.k) {
        let w = extend_nbhd_to_minimal_vc(g, &VertexSet::from([v]))?;
        return Ok(Ok(KernelOutcome::DecidedYes { witness: w.cover, rule: RuleId::HighDegree }));
    }
    let x = greedy_minimal_vc(g).cover;
    if x.len() >= inst.k {
        return Ok(Ok(KernelOutcome::DecidedYes { witness: x, rule: RuleId::GreedyCover }));
    }
    Ok(Err(x))
}

/// Quadratic kernel: an undecided instance has maximum degree below `k` and
/// a vertex cover of fewer than `k` vertices, hence at most `k² − 1`
/// non-isolated vertices.
pub fn kernel_general(inst: &MmvcInstance) -> Result<KernelOutcome> {
    match degree_and_greedy_rules(inst)? {
        Ok(decided) => Ok(decided),
        Err(_) => reduce_to_bound(&inst.graph, inst.k, ClassBound::for_class(GraphClass::General).bound(inst.k), "general kernel"),
    }
}

fn ensure_in_class(g: &Graph, class: GraphClass) -> Result<()> {
    match class.forbidden() {
        Some(p) if p.vertex_count() <= MAX_PATTERN_VERTICES => ensure_free(g, p),
        _ => Ok(()),
    }
}

/// Linear kernel on `K_{1,t}`-free graphs.
pub fn kernel_k1t(inst: &MmvcInstance, t: usize) -> Result<KernelOutcome> {
    let class = GraphClass::K1t(t);
    if t == 0 {
        return Err(Error::Config("k1t needs t >= 1".into()));
    }
    ensure_in_class(&inst.graph, class)?;
    match degree_and_greedy_rules(inst)? {
        Ok(decided) => Ok(decided),
        Err(_) => reduce_to_bound(&inst.graph, inst.k, ClassBound::for_class(class).bound(inst.k), "K1t kernel"),
    }
}

/// Linear kernel for graphs given with a proper `c`-coloring: some color
/// class has at least `k` neighbours, or the graph has at most `c(k − 1)`
/// non-isolated vertices.
pub fn kernel_colored(inst: &MmvcInstance, coloring: &Coloring) -> Result<KernelOutcome> {
    let g = &inst.graph;
    if !is_proper_coloring(g, coloring) {
        return Err(Error::Precondition("coloring is not proper".into()));
    }
    for class in coloring.classes() {
        if g.open_neighborhood(&class).len() >= inst.k {
            let w = extend_nbhd_to_minimal_vc(g, &class)?;
            return Ok(KernelOutcome::DecidedYes { witness: w.cover, rule: RuleId::ColorClassNeighborhood });
        }
    }
    let bound = ClassBound::for_class(GraphClass::Colored(coloring.count)).bound(inst.k);
    reduce_to_bound(g, inst.k, bound, "colored kernel")
}

/// Lop-kernel for Maximum Independent Set on `K_t`-free graphs: a graph
/// with at least `k^{t−1}` vertices has an independent set of size `k`.
/// Here `k = 0` is allowed and always decides yes.
pub fn mis_ktfree_lop_kernel(g: &Graph, k: usize, t: usize) -> Result<KernelOutcome> {
    if t < 2 {
        return Err(Error::Config(format!("mis-ktfree needs t >= 2, got {t}")));
    }
    let threshold = (k as u64).saturating_pow(t as u32 - 1);
    if g.n() as u64 >= threshold {
        let witness = crate::eh::ramsey_is_extract(g, t)?;
        if witness.len() < k {
            return Err(Error::TheoremContradiction(format!(
                "independent set of size {} on {} vertices, below k = {k}",
                witness.len(),
                g.n()
            )));
        }
        return Ok(KernelOutcome::DecidedYes { witness, rule: RuleId::RamseySize });
    }
    if t <= MAX_PATTERN_VERTICES {
        ensure_free(g, crate::graph::PatternId::Clique(t))?;
    }
    Ok(KernelOutcome::Reduced {
        instance: ReducedInstance { graph: g.clone(), k, to_host: g.vertices().collect(), forced: VertexSet::new() },
        declared_bound: threshold.saturating_sub(1),
        fired_rules: Vec::new(),
    })
}

/// Settings a kernelizer may need besides the class.
#[derive(Clone, Debug, Default)]
pub struct KernelConfig {
    /// Extraction strategy name; the class default when absent.
    pub extractor: Option<String>,
    /// Coloring for the colored kernel; greedy in id order when absent.
    pub coloring: Option<Coloring>,
    /// Cap for exact-search extraction.
    pub exact_cap: Option<usize>,
}

pub trait Kernelizer: Send + Sync {
    fn class(&self) -> GraphClass;

    fn kernelize(&self, inst: &MmvcInstance) -> Result<KernelOutcome>;

    fn bound(&self) -> ClassBound {
        ClassBound::for_class(self.class())
    }
}

impl fmt::Debug for dyn Kernelizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernelizer({})", self.class())
    }
}

struct GeneralKernel;

impl Kernelizer for GeneralKernel {
    fn class(&self) -> GraphClass {
        GraphClass::General
    }

    fn kernelize(&self, inst: &MmvcInstance) -> Result<KernelOutcome> {
        kernel_general(inst)
    }
}

struct HFreeKernel {
    class: GraphClass,
    extractor: Box<dyn crate::eh::Extractor>,
}

impl Kernelizer for HFreeKernel {
    fn class(&self) -> GraphClass {
        self.class
    }

    fn kernelize(&self, inst: &MmvcInstance) -> Result<KernelOutcome> {
        kernel_hfree(inst, self.class, self.extractor.as_ref())
    }
}

struct K1tKernel(usize);

impl Kernelizer for K1tKernel {
    fn class(&self) -> GraphClass {
        GraphClass::K1t(self.0)
    }

    fn kernelize(&self, inst: &MmvcInstance) -> Result<KernelOutcome> {
        kernel_k1t(inst, self.0)
    }
}

struct ColoredKernel(Option<Coloring>);

impl Kernelizer for ColoredKernel {
    fn class(&self) -> GraphClass {
        GraphClass::Colored(self.0.as_ref().map_or(0, |c| c.count))
    }

    fn kernelize(&self, inst: &MmvcInstance) -> Result<KernelOutcome> {
        match &self.0 {
            Some(c) => kernel_colored(inst, c),
            None => {
                let order: Vec<usize> = inst.graph.vertices().collect();
                kernel_colored(inst, &crate::graph::greedy_coloring(&inst.graph, &order)?)
            }
        }
    }
}

/// The extractor a class uses by default, and the parameters it is built
/// from.
pub fn default_extractor(class: GraphClass) -> Result<(&'static str, ExtractorSpec)> {
    let spec = |t, delta| ExtractorSpec { t, delta, forbidden: class.forbidden(), exact_cap: DEFAULT_EXACT_CAP };
    match class {
        GraphClass::Kt(t) => Ok(("ramsey", spec(t, ClassBound::for_class(class).delta.unwrap()))),
        GraphClass::Paw => Ok(("olariu", spec(3, num_rational::Rational64::new(1, 3)))),
        GraphClass::Bull | GraphClass::TBull(_) => {
            Ok(("brute", spec(3, ClassBound::for_class(class).delta.unwrap())))
        }
        other => Err(Error::Config(format!("class '{other}' does not use an extractor"))),
    }
}

type KernelFactory = dyn Fn(GraphClass, &KernelConfig) -> Result<Box<dyn Kernelizer>> + Send + Sync;

/// Kernelizers by class family.
pub struct KernelRegistry {
    factories: BTreeMap<&'static str, Box<KernelFactory>>,
    extractors: ExtractorRegistry,
}

impl KernelRegistry {
    pub fn register(
        &mut self,
        family: &'static str,
        factory: impl Fn(GraphClass, &KernelConfig) -> Result<Box<dyn Kernelizer>> + Send + Sync + 'static,
    ) {
        self.factories.insert(family, Box::new(factory));
    }

    pub fn extractors(&self) -> &ExtractorRegistry {
        &self.extractors
    }

    pub fn families(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }

    pub fn build(&self, class: GraphClass, config: &KernelConfig) -> Result<Box<dyn Kernelizer>> {
        if let Some(factory) = self.factories.get(class.family()) {
            return factory(class, config);
        }
        let (default_name, mut spec) = default_extractor(class)?;
        if let Some(cap) = config.exact_cap {
            spec.exact_cap = cap;
        }
        let name = config.extractor.as_deref().unwrap_or(default_name);
        let extractor = self.extractors.build(name, &spec)?;
        Ok(Box::new(HFreeKernel { class, extractor }))
    }
}

impl Default for KernelRegistry {
    fn default() -> Self {
        let mut r = KernelRegistry { factories: BTreeMap::new(), extractors: ExtractorRegistry::default() };
        r.register("general", |_, _| Ok(Box::new(GeneralKernel) as Box<dyn Kernelizer>));
        r.register("k1t", |class, _| match class {
            GraphClass::K1t(t) => Ok(Box::new(K1tKernel(t)) as Box<dyn Kernelizer>),
            _ => unreachable!("registered under k1t"),
        });
        r.register("colored", |_, cfg| Ok(Box::new(ColoredKernel(cfg.coloring.clone())) as Box<dyn Kernelizer>));
        r
    }
}

impl fmt::Debug for KernelRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelRegistry")
            .field("families", &self.families())
            .field("extractors", &self.extractors)
            .finish()
    }
}
