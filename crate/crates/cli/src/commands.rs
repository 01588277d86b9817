use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Subcommand};
use mmvc_core::eh::{eh_partition, partition_bound, ExtractorRegistry, ExtractorSpec};
use mmvc_core::generators::{fernau_demo, generate, generate_monotone_cnf, GenClass, GenSpec};
use mmvc_core::graph::{
    greedy_coloring, is_bipartite, maximum_matching, parse_graph, write_graph, Coloring, Graph, PatternId,
};
use mmvc_core::kernels::{
    diagnose_clique, DiagnosticClass, GraphClass, KernelConfig, KernelOutcome, KernelRegistry, MmvcInstance,
};
use mmvc_core::lop::{value_approx, AdapterRegistry, ApproxOptions, Orientation};
use mmvc_core::mvc::{is_minimal_vc, mmvc_exact_with_cap, DEFAULT_MMVC_CAP};
use mmvc_core::reductions::{monotone_to_mmvc, parse_dimacs, sat_bruteforce, sat_to_monotone, write_dimacs};
use mmvc_core::{Error, Result, VertexSet};
use num_rational::Rational64;
use serde_json::json;

use crate::report::{ms_since, BoundCheck, InputDigest, Report};

/// Oracle cap used by `kernelize --verify` unless overridden.
const VERIFY_CAP: usize = 16;
/// Gadget graphs reach 26 vertices at the largest desk-scale formulas.
const REDUCE_VERIFY_CAP: usize = 26;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact maximum minimal vertex cover.
    Solve(SolveArgs),
    /// Run a kernel on (G, k).
    Kernelize(KernelizeArgs),
    /// Value approximation through the dual answers of a kernel.
    Approx(ApproxArgs),
    /// Reduce a CNF formula to Monotone SAT or to MMVC.
    Reduce(ReduceArgs),
    /// Partition a graph into cliques and independent sets.
    Partition(PartitionArgs),
    /// Write a random graph or monotone CNF.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check the clique-neighbourhood structure of bull-, t-bull- or paw-free graphs.
    Diagnose(DiagnoseArgs),
    /// The triangle-with-pendants fixture where spanning-tree completion falls below n/2.
    Fernau(FernauArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// general, bull, paw, kt:T, tbull:T, k1t:T, colored or colored:C.
    #[arg(long, default_value = "general")]
    pub class: String,
    /// ramsey, olariu or brute; the class default when omitted.
    #[arg(long)]
    pub extractor: Option<String>,
    /// Size cap for exact-search extraction.
    #[arg(long)]
    pub exact_cap: Option<usize>,
    /// Compare against the exact oracle when n is within the oracle cap.
    #[arg(long)]
    pub verify: bool,
    /// Write the reduced graph here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    pub graph: PathBuf,
    /// mmvc, minvc or mis-ktfree:T.
    #[arg(long, default_value = "mmvc")]
    pub problem: String,
    /// Skip the exact comparison.
    #[arg(long)]
    pub no_oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReduceTarget {
    Monotone,
    Mmvc,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// DIMACS cnf file.
    pub cnf: PathBuf,
    #[arg(long, value_enum)]
    pub to: ReduceTarget,
    /// Split variables first so a non-monotone formula can go to MMVC.
    #[arg(long)]
    pub split: bool,
    /// Check SAT against the MMVC optimum when the gadget graph is small.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    pub graph: PathBuf,
    #[arg(long, default_value = "brute")]
    pub extractor: String,
    /// Rational exponent such as 1/2; ramsey derives it from --t instead.
    #[arg(long, default_value = "1/2")]
    pub delta: String,
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    /// Pattern the brute extractor checks the input against (e.g. bull, paw, k3).
    #[arg(long)]
    pub forbidden: Option<String>,
    #[arg(long)]
    pub exact_cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Graph {
        /// any, bipartite, triangle-free, kt-free:T, paw-free, bull-free, k1t-free:T.
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Cnf {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    pub graph: PathBuf,
    /// bull, paw or tbull:T.
    #[arg(long)]
    pub class: String,
    /// Clique as comma-separated 1-based ids; every greedy clique when omitted.
    #[arg(long)]
    pub clique: Option<String>,
}

#[derive(Debug, Args)]
pub struct FernauArgs {
    #[arg(long, default_value_t = 2)]
    pub p: usize,
}

fn one_based(set: &VertexSet) -> String {
    set.to_one_indexed().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn read_input(path: &Path, report: &mut Report) -> Result<String> {
    let data = fs::read(path)?;
    report.input = Some(InputDigest::of(&path.display().to_string(), &data));
    String::from_utf8(data).map_err(|_| Error::Parse { line: 0, msg: "input is not UTF-8".into() })
}

fn load_graph(path: &Path, report: &mut Report) -> Result<Graph> {
    let t = Instant::now();
    let text = read_input(path, report)?;
    let g = parse_graph(&text)?;
    report.timings.parse_ms = ms_since(t);
    Ok(g)
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

/// Runs one command, filling `report`; the return value is the exit code
/// for a run that did not error.
pub fn run(cmd: &Command, oracle_cap: Option<usize>, report: &mut Report) -> Result<u8> {
    match cmd {
        Command::Solve(a) => solve(a, oracle_cap, report),
        Command::Kernelize(a) => kernelize(a, oracle_cap, report),
        Command::Approx(a) => approx(a, oracle_cap, report),
        Command::Reduce(a) => reduce(a, oracle_cap, report),
        Command::Partition(a) => partition(a, report),
        Command::Gen(a) => gen(a, report),
        Command::Diagnose(a) => diagnose(a, report),
        Command::Fernau(a) => fernau(a, oracle_cap, report),
    }
}

fn solve(a: &SolveArgs, oracle_cap: Option<usize>, report: &mut Report) -> Result<u8> {
    let g = load_graph(&a.graph, report)?;
    let cap = oracle_cap.unwrap_or(DEFAULT_MMVC_CAP);
    let t = Instant::now();
    let w = mmvc_exact_with_cap(&g, cap)?;
    report.timings.run_ms = ms_since(t);
    report.outcome = json!({ "value": w.size, "n": g.n(), "m": g.m(), "cap": cap });
    report.summary = format!("mmvc = {} on n = {}, m = {}; cover: {}", w.size, g.n(), g.m(), one_based(&w.cover));
    report.witness = Some(w.cover.into_vec());
    Ok(0)
}

/// Class and, for the colored kernel, the coloring to use.
fn kernel_class(spec: &str, g: &Graph) -> Result<(GraphClass, Option<Coloring>)> {
    let order: Vec<usize> = g.vertices().collect();
    match spec {
        "colored" => {
            let c = greedy_coloring(g, &order)?;
            Ok((GraphClass::Colored(c.count), Some(c)))
        }
        "colored:2" => {
            let c = is_bipartite(g)
                .ok_or_else(|| Error::StructureViolation("graph is not bipartite (no proper 2-coloring)".into()))?;
            Ok((GraphClass::Colored(2), Some(c)))
        }
        _ => {
            let class: GraphClass = spec.parse()?;
            if let GraphClass::Colored(want) = class {
                let c = greedy_coloring(g, &order)?;
                if c.count > want {
                    return Err(Error::StructureViolation(format!(
                        "greedy coloring needs {} colors, more than {want}",
                        c.count
                    )));
                }
                return Ok((class, Some(c)));
            }
            Ok((class, None))
        }
    }
}

fn kernelize(a: &KernelizeArgs, oracle_cap: Option<usize>, report: &mut Report) -> Result<u8> {
    let g = load_graph(&a.graph, report)?;
    let (class, coloring) = kernel_class(&a.class, &g)?;
    let config = KernelConfig { extractor: a.extractor.clone(), coloring, exact_cap: a.exact_cap };
    let kernel = KernelRegistry::default().build(class, &config)?;
    let inst = MmvcInstance::new(g.clone(), a.k)?;
    let t = Instant::now();
    let out = kernel.kernelize(&inst)?;
    report.timings.run_ms = ms_since(t);
    let bound = kernel.bound();

    let mut code = 0;
    let verification = if a.verify {
        let cap = oracle_cap.unwrap_or(VERIFY_CAP);
        if g.n() > cap {
            json!({ "skipped": format!("n = {} exceeds the oracle cap {cap}", g.n()) })
        } else {
            let opt = mmvc_exact_with_cap(&g, cap)?.size;
            let agrees = match &out {
                KernelOutcome::DecidedYes { witness, .. } => {
                    opt >= a.k && witness.len() >= a.k && is_minimal_vc(&g, witness)
                }
                KernelOutcome::DecidedNo { .. } => opt < a.k,
                KernelOutcome::Reduced { instance, .. } => mmvc_exact_with_cap(&instance.graph, cap)?.size == opt,
            };
            if !agrees {
                code = 5;
            }
            json!({ "oracle": opt, "agrees": agrees })
        }
    } else {
        serde_json::Value::Null
    };

    let summary = match &out {
        KernelOutcome::DecidedYes { witness, rule } => {
            report.witness = Some(witness.as_slice().to_vec());
            format!("yes ({rule:?}): minimal vertex cover of size {} >= k = {}: {}", witness.len(), a.k, one_based(witness))
        }
        KernelOutcome::DecidedNo { rule } => format!("no ({rule:?})"),
        KernelOutcome::Reduced { instance, declared_bound, .. } => {
            report.bound_checks.push(BoundCheck::at_most(
                "kernel_vertices",
                bound.formula(),
                *declared_bound,
                instance.graph.n() as u64,
            ));
            if let Some(path) = &a.out {
                write_out(path, &write_graph(&instance.graph))?;
            }
            format!(
                "reduced to n' = {}, k' = {} (bound {} = {})",
                instance.graph.n(),
                instance.k,
                bound.formula(),
                declared_bound
            )
        }
    };
    if report.bound_checks.iter().any(|b| !b.holds) {
        code = 5;
    }
    report.outcome = json!({
        "class": class,
        "k": a.k,
        "extractor": a.extractor,
        "bound_formula": bound.formula(),
        "bound_evaluated": bound.bound(a.k),
        "result": to_json(&out),
        "verification": verification,
    });
    report.summary = summary;
    Ok(code)
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut s = (n as f64).sqrt() as u64;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

fn approx(a: &ApproxArgs, oracle_cap: Option<usize>, report: &mut Report) -> Result<u8> {
    let g = load_graph(&a.graph, report)?;
    let adapter = AdapterRegistry::default().build(&a.problem)?;
    let opts = ApproxOptions { constructive: true, oracle_cap, skip_oracle: a.no_oracle };
    let t = Instant::now();
    let r = value_approx(adapter.as_ref(), &g, &opts)?;
    report.timings.run_ms = ms_since(t);
    if let Some(opt) = r.exact_opt {
        match r.orientation {
            Orientation::Max if a.problem == "mmvc" && r.k0 > 0 => {
                report.bound_checks.push(BoundCheck::at_most(
                    "ratio_opt_over_k0",
                    "ceil(sqrt(n))".into(),
                    ceil_sqrt(g.n() as u64),
                    ceil_div(opt, r.k0),
                ));
            }
            Orientation::Max => {}
            Orientation::Min => {
                report.bound_checks.push(BoundCheck::at_most("optimum_below_claim", "claimed value".into(), r.claimed_value, opt));
            }
        }
    }
    let ratio = r.realized_ratio.map_or("n/a".to_string(), |q| q.to_string());
    report.summary = format!(
        "{}: k0 = {}, claimed {}, exact {:?}, ratio {ratio}, predicted {}",
        r.problem, r.k0, r.claimed_value, r.exact_opt, r.predicted.formula
    );
    report.witness = r.witness.as_ref().map(|w| w.as_slice().to_vec());
    report.outcome = to_json(&r);
    Ok(if report.bound_checks.iter().all(|b| b.holds) { 0 } else { 5 })
}

fn reduce(a: &ReduceArgs, oracle_cap: Option<usize>, report: &mut Report) -> Result<u8> {
    let t = Instant::now();
    let text = read_input(&a.cnf, report)?;
    let cnf = parse_dimacs(&text)?;
    report.timings.parse_ms = ms_since(t);
    let t = Instant::now();
    match a.to {
        ReduceTarget::Monotone => {
            let (m, _) = sat_to_monotone(&cnf);
            let out = write_dimacs(&m);
            if let Some(path) = &a.out {
                write_out(path, &out)?;
            }
            report.outcome = json!({ "vars": m.var_count, "clauses": m.clause_count(), "cnf": out });
            report.summary = format!("monotone formula with {} variables, {} clauses", m.var_count, m.clause_count());
        }
        ReduceTarget::Mmvc => {
            let monotone = if a.split { sat_to_monotone(&cnf).0 } else { cnf };
            let art = monotone_to_mmvc(&monotone)?;
            let g = &art.graph;
            let n = art.variables.len();
            let matching = maximum_matching(g)?;
            report.bound_checks.push(BoundCheck {
                name: "maximum_matching".into(),
                formula: "2n".into(),
                evaluated: 2 * n as u64,
                observed: matching.len() as u64,
                holds: matching.len() == 2 * n,
            });
            if let Some(path) = &a.out {
                write_out(path, &write_graph(g))?;
            }
            let mut verification = serde_json::Value::Null;
            if a.verify {
                let cap = oracle_cap.unwrap_or(REDUCE_VERIFY_CAP);
                verification = if g.n() > cap {
                    json!({ "skipped": format!("gadget graph has {} vertices, above {cap}", g.n()) })
                } else {
                    let sat = sat_bruteforce(&art.formula)?.is_some();
                    let opt = mmvc_exact_with_cap(g, cap)?.size;
                    json!({ "satisfiable": sat, "mmvc": opt, "agrees": sat == (opt >= art.k) })
                };
            }
            report.outcome = json!({
                "k": art.k,
                "vertices": g.n(),
                "edges": g.m(),
                "bipartite": is_bipartite(g).is_some(),
                "variables": to_json(&art.variables),
                "clause_vertices": art.clauses,
                "verification": verification,
            });
            report.summary = format!("MMVC instance with {} vertices, {} edges, k = {}", g.n(), g.m(), art.k);
            if verification.get("agrees") == Some(&json!(false)) {
                report.timings.run_ms = ms_since(t);
                return Ok(5);
            }
        }
    }
    report.timings.run_ms = ms_since(t);
    Ok(if report.bound_checks.iter().all(|b| b.holds) { 0 } else { 5 })
}

fn partition(a: &PartitionArgs, report: &mut Report) -> Result<u8> {
    let g = load_graph(&a.graph, report)?;
    let delta: Rational64 = a.delta.parse().map_err(|_| Error::Config(format!("bad delta '{}'", a.delta)))?;
    let forbidden = a.forbidden.as_deref().map(str::parse::<PatternId>).transpose()?;
    let mut spec = ExtractorSpec { t: a.t, delta, forbidden, ..ExtractorSpec::default() };
    if let Some(cap) = a.exact_cap {
        spec.exact_cap = cap;
    }
    let extractor = ExtractorRegistry::default().build(&a.extractor, &spec)?;
    let t = Instant::now();
    let p = eh_partition(&g, extractor.as_ref())?;
    report.timings.run_ms = ms_since(t);
    let bound = partition_bound(g.n(), p.delta);
    report.bound_checks.push(BoundCheck::at_most(
        "part_count",
        format!("ceil(n^(1-{0}) / (2^(1-{0}) - 1))", p.delta),
        bound as u64,
        p.part_count() as u64,
    ));
    let all_verified = p.parts().all(|part| part.holds_in(&g));
    report.outcome = json!({
        "extractor": extractor.name(),
        "delta": p.delta.to_string(),
        "part_count": p.part_count(),
        "cliques": p.cliques.len(),
        "independent_sets": p.indep_sets.len(),
        "parts_verified": all_verified,
        "partition": to_json(&p),
    });
    report.summary = format!(
        "{} parts ({} cliques, {} independent sets), bound {bound}",
        p.part_count(),
        p.cliques.len(),
        p.indep_sets.len()
    );
    Ok(if all_verified && p.part_count() <= bound { 0 } else { 5 })
}

fn gen(cmd: &GenCommand, report: &mut Report) -> Result<u8> {
    let t = Instant::now();
    let (text, outcome, out) = match cmd {
        GenCommand::Graph { class, n, density, seed, out } => {
            let class: GenClass = class.parse()?;
            let g = generate(&GenSpec::new(class, *n, *density, *seed))?;
            report.summary = format!("{class} graph with n = {}, m = {}", g.n(), g.m());
            let text = write_graph(&g);
            (text.clone(), json!({ "class": class.to_string(), "n": g.n(), "m": g.m(), "seed": seed, "text": text }), out)
        }
        GenCommand::Cnf { vars, clauses, seed, out } => {
            let f = generate_monotone_cnf(*vars, *clauses, *seed);
            report.summary = format!("monotone CNF with {vars} variables, {clauses} clauses");
            let text = write_dimacs(&f);
            (text.clone(), json!({ "vars": vars, "clauses": clauses, "seed": seed, "text": text }), out)
        }
    };
    if let Some(path) = out {
        write_out(path, &text)?;
    }
    report.timings.run_ms = ms_since(t);
    report.outcome = outcome;
    Ok(0)
}

fn parse_clique(spec: &str, n: usize) -> Result<VertexSet> {
    let ids = spec
        .split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            _ => Err(Error::Config(format!("bad clique vertex '{s}' (ids are 1..={n})"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexSet::from_iter_unsorted(ids))
}

/// One clique per start vertex, grown greedily by increasing id.
fn greedy_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = Vec::new();
    for s in g.vertices() {
        let mut c = vec![s];
        for v in g.vertices() {
            if v != s && c.iter().all(|&u| g.has_edge(u, v)) {
                c.push(v);
            }
        }
        let c = VertexSet::from_iter_unsorted(c);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn diagnose(a: &DiagnoseArgs, report: &mut Report) -> Result<u8> {
    let g = load_graph(&a.graph, report)?;
    let class: DiagnosticClass = a.class.parse()?;
    let cliques = match &a.clique {
        Some(s) => vec![parse_clique(s, g.n())?],
        None => greedy_cliques(&g),
    };
    let t = Instant::now();
    let reports = cliques.iter().map(|c| diagnose_clique(&g, c, class)).collect::<Result<Vec<_>>>()?;
    report.timings.run_ms = ms_since(t);
    let violations: Vec<_> = reports.iter().flat_map(|r| &r.violations).collect();
    report.summary = match violations.first() {
        None => format!("{} cliques checked against {class}: no violations", reports.len()),
        Some(v) => format!(
            "{} violations; first {:?} on vertices {}{}",
            violations.len(),
            v.kind,
            one_based(&v.vertices),
            v.located.as_ref().map_or(String::new(), |l| format!(", {} located on {}", class.pattern(), one_based(l)))
        ),
    };
    report.outcome = json!({ "class": class, "cliques": reports.len(), "violations": violations.len(), "reports": to_json(&reports) });
    Ok(if violations.is_empty() { 0 } else { 3 })
}

fn fernau(a: &FernauArgs, oracle_cap: Option<usize>, report: &mut Report) -> Result<u8> {
    let t = Instant::now();
    let d = fernau_demo(a.p, oracle_cap.unwrap_or(DEFAULT_MMVC_CAP))?;
    report.timings.run_ms = ms_since(t);
    report.bound_checks.push(BoundCheck {
        name: "completion_below_half".into(),
        formula: "2 * |completion| < n".into(),
        evaluated: d.n as u64,
        observed: 2 * d.completion.len() as u64,
        holds: d.completion_below_half,
    });
    report.summary = format!(
        "p = {}: |V0| = {}, |V1| = {}, completion size {} vs n/2 = {}; mmvc = {}",
        d.p,
        d.v0.len(),
        d.v1.len(),
        d.completion.len(),
        d.n as f64 / 2.0,
        d.mmvc.map_or("n/a".into(), |v| v.to_string())
    );
    report.witness = Some(d.completion.as_slice().to_vec());
    report.outcome = to_json(&d);
    Ok(0)
}
