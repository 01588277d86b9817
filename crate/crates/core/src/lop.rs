//! From kernels to approximation: a kernel whose rules never lose more
//! optimum than they lower the parameter answers the dual question "is
//! `opt ≥ k`, or `opt < f(k)`?" (resp. "`opt > k`, or `opt ≤ f(k)`?"), and
//! scanning `k` turns those answers into a value approximation.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{max_independent_set_with_cap, remove_isolated, Graph, VertexSet, DEFAULT_EXACT_CAP};
use crate::kernels::{kernel_general, mis_ktfree_lop_kernel, KernelOutcome, MmvcInstance, ReducedInstance, RuleId};
use crate::mvc::{is_vertex_cover, mmvc_exact_with_cap, DEFAULT_MMVC_CAP};
use crate::numeric::ratio_to_f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Max,
    Min,
}

/// A problem on graphs together with a kernel of size `s(k) ≤ β·k^c` and
/// the upper bound `u(n) = n` on solution values.
pub trait ProblemAdapter: Send + Sync {
    fn name(&self) -> String;

    fn orientation(&self) -> Orientation;

    /// Instance size `|I|`, here the vertex count.
    fn size(&self, g: &Graph) -> usize {
        g.n()
    }

    /// Upper bound `u` on optimum (max) or on any solution value (min).
    fn upper(&self, n: u64) -> u64 {
        n
    }

    /// Kernel size function `s`.
    fn kernel_size(&self, k: u64) -> u64;

    /// `(β, c)` with `s(k) ≤ β·k^c` for `k ≥ 1`.
    fn kernel_shape(&self) -> (Rational64, Rational64);

    fn kernel(&self, g: &Graph, k: usize) -> Result<KernelOutcome>;

    /// Exact optimum; only feasible on small instances.
    fn exact_value(&self, g: &Graph, cap: usize) -> Result<usize>;

    /// Default cap for [`ProblemAdapter::exact_value`].
    fn default_cap(&self) -> usize;

    /// `u(s(k)) + k + 1` for maximization, `u(s(k)) + k` for minimization.
    fn f(&self, k: u64) -> u64 {
        let base = self.upper(self.kernel_size(k)) + k;
        match self.orientation() {
            Orientation::Max => base + 1,
            Orientation::Min => base,
        }
    }
}

impl fmt::Debug for dyn ProblemAdapter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProblemAdapter({})", self.name())
    }
}

/// Maximum Minimal Vertex Cover with the quadratic kernel, `s(k) = k²`.
#[derive(Clone, Debug, Default)]
pub struct MmvcAdapter;

impl ProblemAdapter for MmvcAdapter {
    fn name(&self) -> String {
        "mmvc".into()
    }

    fn orientation(&self) -> Orientation {
        Orientation::Max
    }

    fn kernel_size(&self, k: u64) -> u64 {
        k * k
    }

    fn kernel_shape(&self) -> (Rational64, Rational64) {
        (Rational64::from_integer(1), Rational64::from_integer(2))
    }

    fn kernel(&self, g: &Graph, k: usize) -> Result<KernelOutcome> {
        kernel_general(&MmvcInstance::new(g.clone(), k)?)
    }

    fn exact_value(&self, g: &Graph, cap: usize) -> Result<usize> {
        Ok(mmvc_exact_with_cap(g, cap)?.size)
    }

    fn default_cap(&self) -> usize {
        DEFAULT_MMVC_CAP
    }
}

/// Maximum Independent Set on `K_t`-free graphs, `s(k) = k^{t−1}`.
#[derive(Clone, Debug)]
pub struct MisKtFreeAdapter {
    pub t: usize,
}

impl ProblemAdapter for MisKtFreeAdapter {
    fn name(&self) -> String {
        format!("mis-ktfree:{}", self.t)
    }

    fn orientation(&self) -> Orientation {
        Orientation::Max
    }

    fn kernel_size(&self, k: u64) -> u64 {
        k.saturating_pow(self.t as u32 - 1)
    }

    fn kernel_shape(&self) -> (Rational64, Rational64) {
        (Rational64::from_integer(1), Rational64::from_integer(self.t as i64 - 1))
    }

    fn kernel(&self, g: &Graph, k: usize) -> Result<KernelOutcome> {
        mis_ktfree_lop_kernel(g, k, self.t)
    }

    fn exact_value(&self, g: &Graph, cap: usize) -> Result<usize> {
        Ok(max_independent_set_with_cap(g, cap)?.len())
    }

    fn default_cap(&self) -> usize {
        DEFAULT_EXACT_CAP
    }
}

/// Minimum Vertex Cover with the high-degree kernel, `s(k) = k² + k`.
#[derive(Clone, Debug, Default)]
pub struct MinVcAdapter;

impl ProblemAdapter for MinVcAdapter {
    fn name(&self) -> String {
        "minvc".into()
    }

    fn orientation(&self) -> Orientation {
        Orientation::Min
    }

    fn kernel_size(&self, k: u64) -> u64 {
        k * k + k
    }

    fn kernel_shape(&self) -> (Rational64, Rational64) {
        (Rational64::from_integer(2), Rational64::from_integer(2))
    }

    fn kernel(&self, g: &Graph, k: usize) -> Result<KernelOutcome> {
        Ok(buss_min_vc_kernel(g, k))
    }

    fn exact_value(&self, g: &Graph, cap: usize) -> Result<usize> {
        Ok(g.n() - max_independent_set_with_cap(g, cap)?.len())
    }

    fn default_cap(&self) -> usize {
        DEFAULT_EXACT_CAP
    }
}

type AdapterFactory = dyn Fn(Option<usize>) -> Result<Box<dyn ProblemAdapter>> + Send + Sync;

/// Problem adapters by name; names may carry a `:t` parameter.
pub struct AdapterRegistry {
    factories: BTreeMap<&'static str, Box<AdapterFactory>>,
}

impl AdapterRegistry {
    pub fn register(
        &mut self,
        name: &'static str,
        factory: impl Fn(Option<usize>) -> Result<Box<dyn ProblemAdapter>> + Send + Sync + 'static,
    ) {
        self.factories.insert(name, Box::new(factory));
    }

    pub fn build(&self, spec: &str) -> Result<Box<dyn ProblemAdapter>> {
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => {
                let p = p.parse().map_err(|_| Error::Config(format!("bad parameter in '{spec}'")))?;
                (n, Some(p))
            }
            None => (spec, None),
        };
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| Error::Config(format!("unknown problem '{name}'")))?;
        factory(param)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }
}

impl Default for AdapterRegistry {
    fn default() -> Self {
        let mut r = AdapterRegistry { factories: BTreeMap::new() };
        let no_param = |name: &'static str, p: Option<usize>| match p {
            None => Ok(()),
            Some(_) => Err(Error::Config(format!("problem '{name}' takes no parameter"))),
        };
        r.register("mmvc", move |p| no_param("mmvc", p).map(|_| Box::new(MmvcAdapter) as Box<dyn ProblemAdapter>));
        r.register("minvc", move |p| no_param("minvc", p).map(|_| Box::new(MinVcAdapter) as Box<dyn ProblemAdapter>));
        r.register("mis-ktfree", |p| match p {
            Some(t) if t >= 2 => Ok(Box::new(MisKtFreeAdapter { t }) as Box<dyn ProblemAdapter>),
            _ => Err(Error::Config("mis-ktfree needs a parameter t >= 2, e.g. mis-ktfree:3".into())),
        });
        r
    }
}

impl fmt::Debug for AdapterRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

/// High-degree kernel for minimum Vertex Cover.
///
/// A vertex of degree above the remaining budget belongs to every small
/// cover, so it is committed and the budget drops by one. Afterwards every
/// vertex has degree at most `k'`, so a yes-instance has at most `k'²` edges
/// and `k'² + k'` non-isolated vertices.
pub fn buss_min_vc_kernel(g: &Graph, k: usize) -> KernelOutcome {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut budget = k as i64;
    let mut forced = Vec::new();
    while let Some(v) = (0..n).find(|&v| alive[v] && degree[v] as i64 > budget) {
        alive[v] = false;
        for &u in g.neighbors(v) {
            degree[u] -= 1;
        }
        forced.push(v);
        budget -= 1;
        if budget < 0 {
            return KernelOutcome::DecidedNo { rule: RuleId::BussParameterExhausted };
        }
    }
    let k2 = budget as u64;
    let rest: VertexSet = (0..n).filter(|&v| alive[v]).collect();
    let sub = g.induced_subgraph(&rest);
    let kept = remove_isolated(&sub.graph);
    if kept.graph.m() as u64 > k2 * k2 {
        return KernelOutcome::DecidedNo { rule: RuleId::BussEdgeCount };
    }
    if kept.graph.n() as u64 > k2 * k2 + k2 {
        return KernelOutcome::DecidedNo { rule: RuleId::BussVertexCount };
    }
    let mut fired_rules = Vec::new();
    if !forced.is_empty() {
        fired_rules.push(RuleId::BussHighDegree);
    }
    if kept.graph.n() < rest.len() {
        fired_rules.push(RuleId::RemoveIsolated);
    }
    let to_host: Vec<usize> = kept.to_host.iter().map(|&v| sub.to_host[v]).collect();
    KernelOutcome::Reduced {
        instance: ReducedInstance {
            graph: kept.graph,
            k: k2 as usize,
            to_host,
            forced: VertexSet::from_iter_unsorted(forced),
        },
        declared_bound: k2 * k2 + k2,
        fired_rules,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualConclusion {
    /// `opt ≥ k` (maximization).
    AtLeastK,
    /// `opt < f(k)` (maximization).
    BelowF,
    /// `opt ≤ f(k)` (minimization).
    AtMostF,
    /// `opt > k` (minimization).
    AboveK,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualAnswer {
    pub conclusion: DualConclusion,
    pub k: u64,
    pub f_value: u64,
    pub witness: Option<VertexSet>,
}

/// Answers the dual question for `k` by running the adapter's kernel.
pub fn dual_from_kernel(adapter: &dyn ProblemAdapter, g: &Graph, k: usize) -> Result<DualAnswer> {
    let f_value = adapter.f(k as u64);
    let answer = |conclusion, witness| DualAnswer { conclusion, k: k as u64, f_value, witness };
    let out = adapter.kernel(g, k)?;
    Ok(match (adapter.orientation(), out) {
        (Orientation::Max, KernelOutcome::DecidedYes { witness, .. }) => answer(DualConclusion::AtLeastK, Some(witness)),
        (Orientation::Max, _) => answer(DualConclusion::BelowF, None),
        (Orientation::Min, KernelOutcome::DecidedNo { .. }) => answer(DualConclusion::AboveK, None),
        (Orientation::Min, KernelOutcome::DecidedYes { witness, .. }) => answer(DualConclusion::AtMostF, Some(witness)),
        (Orientation::Min, KernelOutcome::Reduced { instance, .. }) => {
            // Forced vertices plus everything left cover every edge.
            let witness = instance.forced.union(&VertexSet::from_iter_unsorted(instance.to_host.iter().copied()));
            debug_assert!(is_vertex_cover(g, &witness));
            answer(DualConclusion::AtMostF, Some(witness))
        }
    })
}

/// Closed-form approximation ratio predicted from the kernel shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioPrediction {
    pub orientation: Orientation,
    /// `(ac − 1)/c` when `ac > 1`: the ratio is `O(n^exponent)`.
    pub exponent: Option<Rational64>,
    /// The constant ratio when `ac ≤ 1`.
    pub constant: Option<f64>,
    pub formula: String,
    /// The ratio evaluated at `n`, without the hidden constant.
    pub evaluated: f64,
    /// Vertex-problem form with `a = 1`: exponent `(c − 1)/c` for `c > 1`.
    pub vertex_exponent: Option<Rational64>,
    /// Vertex-problem form for linear kernels: `β + 1 + ε` (max) or
    /// `β + 1` (min).
    pub vertex_linear_constant: Option<f64>,
    pub vertex_formula: String,
}

/// Evaluates the ratio formulas for a kernel of size `β·k^c` and a size
/// bound `u(n) = α·n^a`.
pub fn predict_ratio(
    orientation: Orientation,
    a: Rational64,
    c: Rational64,
    alpha: Rational64,
    beta: Rational64,
    epsilon: Rational64,
    n: u64,
) -> Result<RatioPrediction> {
    let zero = Rational64::from_integer(0);
    if a <= zero || c <= zero {
        return Err(Error::Precondition("a and c must be positive".into()));
    }
    let one = Rational64::from_integer(1);
    let (af, cf) = (ratio_to_f64(a), ratio_to_f64(c));
    let lambda = ratio_to_f64(alpha) * ratio_to_f64(beta).powf(af);
    let (exponent, constant, formula, evaluated) = if a * c > one {
        let e = (a * c - one) / c;
        (Some(e), None, format!("O(n^({e}))"), (n as f64).powf(ratio_to_f64(e)))
    } else {
        let k = match orientation {
            Orientation::Max => lambda * 2f64.powf(af * cf) + 3.0,
            Orientation::Min => lambda + 1.0,
        };
        let text = match orientation {
            Orientation::Max => format!("alpha*beta^a*2^(ac) + 3 = {k}"),
            Orientation::Min => format!("alpha*beta^a + 1 = {k}"),
        };
        (None, Some(k), text, k)
    };
    let (vertex_exponent, vertex_linear_constant, vertex_formula) = if c > one {
        let e = (c - one) / c;
        (Some(e), None, format!("O(n^({e}))"))
    } else {
        let b = ratio_to_f64(beta);
        match orientation {
            Orientation::Max => (None, Some(b + 1.0 + ratio_to_f64(epsilon)), format!("beta + 1 + eps = {b} + 1 + {epsilon}")),
            Orientation::Min => (None, Some(b + 1.0), format!("beta + 1 = {}", b + 1.0)),
        }
    };
    Ok(RatioPrediction {
        orientation,
        exponent,
        constant,
        formula,
        evaluated,
        vertex_exponent,
        vertex_linear_constant,
        vertex_formula,
    })
}

#[derive(Clone, Debug)]
pub struct ApproxOptions {
    /// Keep witnesses in the report.
    pub constructive: bool,
    /// Cap for the exact oracle; `None` uses the adapter default.
    pub oracle_cap: Option<usize>,
    /// Skip the exact comparison entirely.
    pub skip_oracle: bool,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions { constructive: true, oracle_cap: None, skip_oracle: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub problem: String,
    pub orientation: Orientation,
    pub n: usize,
    pub k0: u64,
    /// `k0` (max) or `f(k0)` (min).
    pub claimed_value: u64,
    pub witness: Option<VertexSet>,
    /// Whether `k0` came from the small-optimum fallback instead of a dual
    /// answer.
    pub used_fallback: bool,
    pub dual_calls: usize,
    pub exact_opt: Option<u64>,
    /// `opt / k0` (max) or `f(k0) / opt` (min), when the oracle ran.
    pub realized_ratio: Option<Rational64>,
    pub predicted: RatioPrediction,
}

fn ratio(num: u64, den: u64) -> Rational64 {
    if den == 0 {
        Rational64::from_integer(if num == 0 { 1 } else { i64::MAX })
    } else {
        Rational64::new(num as i64, den as i64)
    }
}

/// Value approximation by a linear scan over the dual answers.
///
/// Maximization takes the largest `k ≤ u(n)` answered `opt ≥ k`; when even
/// `k = 1` is answered `opt < f(1)`, the optimum is a small constant and the
/// exact oracle settles it. Minimization takes the smallest `k` answered
/// `opt ≤ f(k)` and reports `f(k)`.
pub fn value_approx(adapter: &dyn ProblemAdapter, g: &Graph, opts: &ApproxOptions) -> Result<ApproxReport> {
    let n = adapter.size(g);
    let top = adapter.upper(n as u64);
    let cap = opts.oracle_cap.unwrap_or_else(|| adapter.default_cap());
    let mut dual_calls = 0;
    let mut chosen: Option<DualAnswer> = None;
    match adapter.orientation() {
        Orientation::Max => {
            for k in 1..=top {
                dual_calls += 1;
                let ans = dual_from_kernel(adapter, g, k as usize)?;
                if ans.conclusion == DualConclusion::AtLeastK {
                    chosen = Some(ans);
                }
            }
        }
        Orientation::Min => {
            for k in 0..=top {
                dual_calls += 1;
                let ans = dual_from_kernel(adapter, g, k as usize)?;
                if ans.conclusion == DualConclusion::AtMostF {
                    chosen = Some(ans);
                    break;
                }
            }
        }
    }

    let mut exact_opt = None;
    let oracle = |exact_opt: &mut Option<u64>| -> Result<u64> {
        if let Some(v) = *exact_opt {
            return Ok(v);
        }
        let v = adapter.exact_value(g, cap)? as u64;
        *exact_opt = Some(v);
        Ok(v)
    };

    let (k0, claimed_value, witness, used_fallback) = match (adapter.orientation(), chosen) {
        (Orientation::Max, Some(ans)) => (ans.k, ans.k, ans.witness, false),
        (Orientation::Max, None) => {
            let v = oracle(&mut exact_opt)?;
            (v, v, None, true)
        }
        (Orientation::Min, Some(ans)) => (ans.k, ans.f_value, ans.witness, false),
        (Orientation::Min, None) => {
            return Err(Error::TheoremContradiction(format!(
                "no k in 0..={top} was answered opt <= f(k)"
            )))
        }
    };
    if !opts.skip_oracle && n <= cap {
        oracle(&mut exact_opt)?;
    }
    let realized_ratio = exact_opt.map(|opt| match adapter.orientation() {
        Orientation::Max => ratio(opt, k0),
        Orientation::Min => ratio(claimed_value, opt),
    });
    let (beta, c) = adapter.kernel_shape();
    let one = Rational64::from_integer(1);
    let predicted = predict_ratio(adapter.orientation(), one, c, one, beta, Rational64::new(1, 10), n as u64)?;
    Ok(ApproxReport {
        problem: adapter.name(),
        orientation: adapter.orientation(),
        n,
        k0,
        claimed_value,
        witness: if opts.constructive { witness } else { None },
        used_fallback,
        dual_calls,
        exact_opt,
        realized_ratio,
        predicted,
    })
}
