//! Monotone SAT to MMVC on bipartite graphs, and the SAT to Monotone SAT
//! step in front of it.
//!
//! Variable `i` becomes the path `ℓ_i − x_i^+ − x_i^− − r_i` on ids
//! `4i .. 4i+3`; clause `j` becomes vertex `4n + j`, adjacent to `x_i^+`
//! for each positive literal and to `x_i^−` for each negative one. The
//! formula is satisfiable iff the graph has a minimal vertex cover of size
//! `2n + m`.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::mvc::{is_minimal_vc, MinimalVcWitness};

/// Variable count above which [`sat_bruteforce`] refuses to run.
pub const SAT_BRUTEFORCE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// From a non-zero DIMACS integer (1-indexed, sign is polarity).
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        (lit != 0).then(|| Literal { var: lit.unsigned_abs() as usize - 1, positive: lit > 0 })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub var_count: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Validates variable ids and removes duplicate literals (each clause is
    /// kept sorted).
    pub fn new(var_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (j, mut clause) in clauses.into_iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= var_count) {
                return Err(Error::Precondition(format!(
                    "clause {j} uses variable {} but there are only {var_count}",
                    l.var
                )));
            }
            clause.sort();
            clause.dedup();
            out.push(clause);
        }
        Ok(CnfFormula { var_count, clauses: out })
    }

    /// From DIMACS-style signed integers.
    pub fn from_ints(var_count: usize, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Literal::from_dimacs(l).ok_or_else(|| Error::Precondition("literal 0".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(var_count, clauses)
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Every clause is all-positive or all-negative.
    pub fn is_monotone(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().all(|l| l.positive) || c.iter().all(|l| !l.positive))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("⊤");
        }
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                f.write_str(" ∧ ")?;
            }
            f.write_str("(")?;
            for (i, l) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ∨ ")?;
                }
                write!(f, "{}x{}", if l.positive { "" } else { "¬" }, l.var)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn value(&self, lit: Literal) -> bool {
        self.values[lit.var] == lit.positive
    }

    pub fn satisfies(&self, cnf: &CnfFormula) -> bool {
        self.values.len() == cnf.var_count && cnf.clauses.iter().all(|c| c.iter().any(|&l| self.value(l)))
    }
}

/// Least satisfying assignment in binary order, with variable 0 as the most
/// significant bit.
pub fn sat_bruteforce(cnf: &CnfFormula) -> Result<Option<Assignment>> {
    let n = cnf.var_count;
    if n > SAT_BRUTEFORCE_CAP {
        return Err(Error::TooLarge { n, cap: SAT_BRUTEFORCE_CAP });
    }
    if cnf.clauses.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    for mask in 0u32..1 << n {
        let a = Assignment { values: (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect() };
        if a.satisfies(cnf) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        last_line = line_no;
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            let tok: Vec<&str> = rest.split_whitespace().collect();
            match tok.as_slice() {
                ["cnf", n, m] => {
                    let n = n.parse().map_err(|_| Error::parse(line_no, "invalid variable count"))?;
                    let m = m.parse().map_err(|_| Error::parse(line_no, "invalid clause count"))?;
                    header = Some((n, m));
                }
                _ => return Err(Error::parse(line_no, "expected 'p cnf <vars> <clauses>'")),
            }
            continue;
        }
        let (n, _) = header.ok_or_else(|| Error::parse(line_no, "clause before 'p cnf' header"))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| Error::parse(line_no, format!("invalid literal '{tok}'")))?;
            match Literal::from_dimacs(lit) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var >= n => {
                    return Err(Error::parse(line_no, format!("variable {} out of range 1..={n}", l.var + 1)))
                }
                Some(l) => current.push(l),
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing 'p cnf' header"))?;
    if !current.is_empty() {
        return Err(Error::parse(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(Error::parse(0, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses)
}

pub fn write_dimacs(cnf: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.var_count, cnf.clauses.len());
    for c in &cnf.clauses {
        for l in c {
            write!(out, "{} ", l.to_dimacs()).expect("writing to a String");
        }
        out.push_str("0\n");
    }
    out
}

/// Where each source variable went in the monotone formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableSplit {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl VariableSplit {
    /// Assignment of the monotone formula induced by a source assignment.
    pub fn lift(&self, a: &Assignment) -> Assignment {
        let mut values = vec![false; 2 * a.values.len()];
        for (i, &b) in a.values.iter().enumerate() {
            values[self.plus[i]] = b;
            values[self.minus[i]] = !b;
        }
        Assignment { values }
    }

    /// Source assignment read off the positive copies.
    pub fn project(&self, a: &Assignment) -> Assignment {
        Assignment { values: self.plus.iter().map(|&p| a.values[p]).collect() }
    }
}

/// Replaces `x` by `x⁺` (ids `2x`) and `¬x` by `x⁻` (ids `2x + 1`), then
/// forces `x⁻ = ¬x⁺` with `(x⁺ ∨ x⁻)` and `(¬x⁺ ∨ ¬x⁻)`.
pub fn sat_to_monotone(cnf: &CnfFormula) -> (CnfFormula, VariableSplit) {
    let n = cnf.var_count;
    let split = VariableSplit { plus: (0..n).map(|i| 2 * i).collect(), minus: (0..n).map(|i| 2 * i + 1).collect() };
    let mut clauses: Vec<Vec<Literal>> = cnf
        .clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|l| Literal::pos(if l.positive { split.plus[l.var] } else { split.minus[l.var] }))
                .collect()
        })
        .collect();
    for i in 0..n {
        clauses.push(vec![Literal::pos(split.plus[i]), Literal::pos(split.minus[i])]);
        clauses.push(vec![Literal::neg(split.plus[i]), Literal::neg(split.minus[i])]);
    }
    let out = CnfFormula::new(2 * n, clauses).expect("ids are in range by construction");
    (out, split)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableGadget {
    pub left: usize,
    pub plus: usize,
    pub minus: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmvcReductionArtifact {
    pub graph: Graph,
    pub k: usize,
    pub variables: Vec<VariableGadget>,
    pub clauses: Vec<usize>,
    pub formula: CnfFormula,
}

impl MmvcReductionArtifact {
    /// `{x_i^+, x_i^−}`: a vertex cover of size `2n`.
    pub fn declared_cover(&self) -> VertexSet {
        self.variables.iter().flat_map(|g| [g.plus, g.minus]).collect()
    }

    /// `{(ℓ_i, x_i^+), (x_i^−, r_i)}`: a matching of size `2n`.
    pub fn declared_matching(&self) -> Vec<(usize, usize)> {
        self.variables.iter().flat_map(|g| [(g.left, g.plus), (g.minus, g.right)]).collect()
    }
}

pub fn monotone_to_mmvc(cnf: &CnfFormula) -> Result<MmvcReductionArtifact> {
    if !cnf.is_monotone() {
        return Err(Error::Precondition("formula is not monotone".into()));
    }
    if let Some(j) = cnf.clauses.iter().position(Vec::is_empty) {
        return Err(Error::Precondition(format!("clause {j} is empty")));
    }
    let (n, m) = (cnf.var_count, cnf.clause_count());
    let mut g = Graph::new(4 * n + m);
    let variables: Vec<VariableGadget> = (0..n)
        .map(|i| VariableGadget { left: 4 * i, plus: 4 * i + 1, minus: 4 * i + 2, right: 4 * i + 3 })
        .collect();
    for v in &variables {
        g.add_edge(v.left, v.plus)?;
        g.add_edge(v.plus, v.minus)?;
        g.add_edge(v.minus, v.right)?;
    }
    let clauses: Vec<usize> = (0..m).map(|j| 4 * n + j).collect();
    for (j, clause) in cnf.clauses.iter().enumerate() {
        for l in clause {
            let gadget = variables[l.var];
            g.add_edge(clauses[j], if l.positive { gadget.plus } else { gadget.minus })?;
        }
    }
    Ok(MmvcReductionArtifact { graph: g, k: 2 * n + m, variables, clauses, formula: cnf.clone() })
}

/// The cover from a satisfying assignment: every clause vertex, plus
/// `x_i^−, ℓ_i` for true variables and `x_i^+, r_i` for false ones.
pub fn encode_assignment(art: &MmvcReductionArtifact, sigma: &Assignment) -> Result<MinimalVcWitness> {
    if !sigma.satisfies(&art.formula) {
        return Err(Error::Precondition("assignment does not satisfy the formula".into()));
    }
    let mut x: Vec<usize> = art.clauses.clone();
    for (i, v) in art.variables.iter().enumerate() {
        if sigma.values[i] {
            x.extend([v.minus, v.left]);
        } else {
            x.extend([v.plus, v.right]);
        }
    }
    let cover = VertexSet::from_iter_unsorted(x);
    if !is_minimal_vc(&art.graph, &cover) || cover.len() != art.k {
        return Err(Error::TheoremContradiction(format!("encoded set {cover} is not a minimal vertex cover of size {}", art.k)));
    }
    Ok(MinimalVcWitness { size: cover.len(), cover })
}

/// Reads an assignment off a minimal vertex cover of size at least `k`:
/// `x_i` is true when `x_i^+` is outside the cover, false when `x_i^−` is,
/// and true when both are inside.
pub fn decode_assignment(art: &MmvcReductionArtifact, cover: &VertexSet) -> Result<Assignment> {
    if !is_minimal_vc(&art.graph, cover) {
        return Err(Error::Precondition(format!("{cover} is not a minimal vertex cover")));
    }
    if cover.len() < art.k {
        return Err(Error::Precondition(format!("cover has size {} < k = {}", cover.len(), art.k)));
    }
    let values = art
        .variables
        .iter()
        .map(|v| !cover.contains(v.plus) || cover.contains(v.minus))
        .collect();
    let sigma = Assignment { values };
    if !sigma.satisfies(&art.formula) {
        return Err(Error::TheoremContradiction("decoded assignment violates a clause".into()));
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_bipartite;
    use crate::mvc::mmvc_exact_with_cap;

    fn cnf(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_ints(n, clauses).unwrap()
    }

    #[test]
    fn monotone_split_examples() {
        let (m, split) = sat_to_monotone(&cnf(1, &[&[1]]));
        assert_eq!(m, cnf(2, &[&[1], &[1, 2], &[-1, -2]]));
        assert!(m.is_monotone());
        assert!(sat_bruteforce(&m).unwrap().is_some());
        let a = Assignment { values: vec![true] };
        assert!(split.lift(&a).satisfies(&m));

        let (m, _) = sat_to_monotone(&cnf(1, &[&[1], &[-1]]));
        assert!(sat_bruteforce(&m).unwrap().is_none());
    }

    #[test]
    fn gadget_counts() {
        let art = monotone_to_mmvc(&cnf(2, &[&[1, 2]])).unwrap();
        assert_eq!((art.graph.n(), art.graph.m(), art.k), (9, 8, 5));
        assert!(is_bipartite(&art.graph).is_some());

        let art = monotone_to_mmvc(&cnf(1, &[&[1], &[-1]])).unwrap();
        assert_eq!((art.graph.n(), art.k), (6, 4));
        assert!(mmvc_exact_with_cap(&art.graph, 26).unwrap().size < 4);

        let art = monotone_to_mmvc(&cnf(0, &[])).unwrap();
        assert_eq!((art.graph.n(), art.k), (0, 0));

        assert!(monotone_to_mmvc(&cnf(2, &[&[1, -2]])).is_err());
        assert!(monotone_to_mmvc(&cnf(1, &[&[]])).is_err());
    }

    #[test]
    fn encode_examples() {
        let art = monotone_to_mmvc(&cnf(1, &[&[1]])).unwrap();
        let w = encode_assignment(&art, &Assignment { values: vec![true] }).unwrap();
        assert_eq!(w.cover, VertexSet::from([0, 2, 4]));
        assert_eq!(decode_assignment(&art, &w.cover).unwrap().values, vec![true]);

        let art = monotone_to_mmvc(&cnf(2, &[&[1, 2]])).unwrap();
        let w = encode_assignment(&art, &Assignment { values: vec![true, true] }).unwrap();
        assert_eq!(w.size, 5);
        let w = encode_assignment(&art, &Assignment { values: vec![true, false] }).unwrap();
        assert!(decode_assignment(&art, &w.cover).unwrap().satisfies(&art.formula));

        let art = monotone_to_mmvc(&cnf(1, &[&[-1]])).unwrap();
        let w = encode_assignment(&art, &Assignment { values: vec![false] }).unwrap();
        assert_eq!(w.cover, VertexSet::from([1, 3, 4]));
        assert!(encode_assignment(&art, &Assignment { values: vec![true] }).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(sat_bruteforce(&cnf(1, &[&[1], &[-1]])).unwrap(), None);
        assert_eq!(sat_bruteforce(&cnf(2, &[&[1], &[]])).unwrap(), None);
        let a = sat_bruteforce(&cnf(2, &[&[1, 2], &[-1, -2]])).unwrap().unwrap();
        assert_eq!(a.values, vec![false, true]);
        assert!(sat_bruteforce(&CnfFormula::new(21, vec![]).unwrap()).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let f = parse_dimacs("c demo\np cnf 3 2\n1 -2 0\n3\n 2 0\n").unwrap();
        assert_eq!(f, cnf(3, &[&[1, -2], &[2, 3]]));
        assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
        assert_eq!(cnf(2, &[&[1, 1, 2]]).clauses[0].len(), 2);
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 3 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
        assert!(parse_dimacs("1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
    }
}
