use super::{degree_and_greedy_rules, ensure_in_class, reduce_to_bound, ClassBound, GraphClass, KernelOutcome, MmvcInstance, RuleId};
use crate::eh::{eh_partition_in_class, Extractor};
use crate::error::{Error, Result};
use crate::mvc::extend_nbhd_to_minimal_vc;

/// Subquadratic kernel for an H-free class with the Erdős–Hajnal property.
///
/// After the degree and greedy rules fail, the greedy cover `X` has fewer
/// than `k` vertices and `S = V \ X` is independent. Partitioning `G[X]`
/// into cliques and independent sets, any independent part `I` with
/// `|N_S(I)| ≥ k` yields a minimal vertex cover containing `N(I)`. When no
/// part does, the class theorem bounds `|V|`.
pub fn kernel_hfree(inst: &MmvcInstance, class: GraphClass, extractor: &dyn Extractor) -> Result<KernelOutcome> {
    let bound = ClassBound::for_class(class);
    if bound.constant.is_none() {
        return Err(Error::Config(format!("class '{class}' has no Erdős–Hajnal kernel")));
    }
    let g = &inst.graph;
    ensure_in_class(g, class)?;

    let x = match degree_and_greedy_rules(inst)? {
        Ok(decided) => return Ok(decided),
        Err(x) => x,
    };
    let sub = g.induced_subgraph(&x);
    let partition = eh_partition_in_class(&sub.graph, extractor)?;
    for part in &partition.indep_sets {
        let i = sub.lift(&part.vertices);
        let outside = g.open_neighborhood(&i).difference(&x);
        if outside.len() >= inst.k {
            let w = extend_nbhd_to_minimal_vc(g, &i)?;
            return Ok(KernelOutcome::DecidedYes { witness: w.cover, rule: RuleId::IndependentPartNeighborhood });
        }
    }
    reduce_to_bound(g, inst.k, bound.bound(inst.k), &format!("{class} kernel"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eh::RamseyExtractor;
    use crate::graph::Graph;

    #[test]
    fn cycle_decided_by_greedy() {
        let ex = RamseyExtractor::new(3).unwrap();
        let out = kernel_hfree(&MmvcInstance::new(Graph::cycle(5), 3).unwrap(), GraphClass::Kt(3), &ex).unwrap();
        assert!(matches!(out, KernelOutcome::DecidedYes { rule: RuleId::GreedyCover, .. }));
    }

    #[test]
    fn edgeless_reduces_to_empty() {
        let ex = RamseyExtractor::new(3).unwrap();
        let out = kernel_hfree(&MmvcInstance::new(Graph::new(10), 2).unwrap(), GraphClass::Kt(3), &ex).unwrap();
        match out {
            KernelOutcome::Reduced { instance, fired_rules, .. } => {
                assert_eq!(instance.graph.n(), 0);
                assert_eq!(fired_rules, vec![RuleId::RemoveIsolated]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_bipartite_trace() {
        let ex = RamseyExtractor::new(3).unwrap();
        let g = Graph::complete_bipartite(3, 3);
        let out = kernel_hfree(&MmvcInstance::new(g, 4).unwrap(), GraphClass::Kt(3), &ex).unwrap();
        match out {
            KernelOutcome::Reduced { instance, declared_bound, .. } => {
                assert_eq!(instance.graph.n(), 6);
                assert_eq!(declared_bound, 29);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_class_input() {
        let ex = RamseyExtractor::new(3).unwrap();
        let out = kernel_hfree(&MmvcInstance::new(Graph::complete(4), 9).unwrap(), GraphClass::Kt(3), &ex);
        assert!(matches!(out, Err(Error::NotInClass { .. })));
        let out = kernel_hfree(&MmvcInstance::new(Graph::new(2), 1).unwrap(), GraphClass::General, &ex);
        assert!(matches!(out, Err(Error::Config(_))));
    }
}
