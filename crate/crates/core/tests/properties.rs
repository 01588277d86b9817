mod common;

use common::{brute_alpha, brute_min_vc, brute_mmvc, brute_omega};
use mmvc_core::eh::{eh_partition, partition_bound, ExtractorRegistry, ExtractorSpec};
use mmvc_core::generators::{generate, generate_monotone_cnf, GenClass, GenSpec};
use mmvc_core::graph::{
    find_induced, max_clique_exact, max_independent_set_exact, parse_graph, write_graph, Graph, VertexSet,
};
use mmvc_core::kernels::{kernel_general, KernelOutcome, MmvcInstance};
use mmvc_core::lop::{buss_min_vc_kernel, dual_from_kernel, DualConclusion, MinVcAdapter, MmvcAdapter, ProblemAdapter};
use mmvc_core::mvc::{
    extend_nbhd_to_minimal_vc, greedy_minimal_vc, is_minimal_vc, is_vertex_cover, minimal_vertex_covers, mmvc_exact,
};
use mmvc_core::reductions::{
    monotone_to_mmvc, parse_dimacs, sat_bruteforce, sat_to_monotone, write_dimacs, CnfFormula, Literal,
};
use num_rational::Rational64;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn cnf_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = CnfFormula> {
    (1..=max_n).prop_flat_map(move |n| {
        let lit = (0..n, any::<bool>()).prop_map(|(var, positive)| Literal { var, positive });
        proptest::collection::vec(proptest::collection::vec(lit, 1..=3), 0..=max_m)
            .prop_map(move |clauses| CnfFormula::new(n, clauses).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_mmvc_matches_definition(g in graph_strategy(10)) {
        let w = mmvc_exact(&g).unwrap();
        prop_assert!(is_minimal_vc(&g, &w.cover));
        prop_assert_eq!(w.size, brute_mmvc(&g));
    }

    #[test]
    fn exact_is_and_clique_match_brute_force(g in graph_strategy(11)) {
        let is = max_independent_set_exact(&g).unwrap();
        prop_assert!(g.is_independent(&is));
        prop_assert_eq!(is.len(), brute_alpha(&g));
        let c = max_clique_exact(&g).unwrap();
        prop_assert!(g.is_clique(&c));
        prop_assert_eq!(c.len(), brute_omega(&g));
    }

    #[test]
    fn greedy_and_extension_give_minimal_covers(g in graph_strategy(12), seed in any::<u64>()) {
        prop_assert!(is_minimal_vc(&g, &greedy_minimal_vc(&g).cover));
        // A greedy independent set from a seeded start.
        let n = g.n();
        let mut s: Vec<usize> = Vec::new();
        for i in 0..n {
            let v = (i + seed as usize % n.max(1)) % n.max(1);
            if s.iter().all(|&u| u != v && !g.has_edge(u, v)) {
                s.push(v);
            }
        }
        let s = VertexSet::from_iter_unsorted(s);
        let w = extend_nbhd_to_minimal_vc(&g, &s).unwrap();
        prop_assert!(is_minimal_vc(&g, &w.cover));
        prop_assert!(g.open_neighborhood(&s).is_subset_of(&w.cover));
    }

    #[test]
    fn enumeration_lists_every_minimal_cover(g in graph_strategy(8)) {
        let listed = minimal_vertex_covers(&g, 20).unwrap();
        let n = g.n();
        let mut brute: Vec<VertexSet> = (0u32..1 << n)
            .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect::<VertexSet>())
            .filter(|x| is_minimal_vc(&g, x))
            .collect();
        brute.sort();
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn general_kernel_rules_preserve_the_optimum(g in graph_strategy(10), k in 1usize..12) {
        let opt = mmvc_exact(&g).unwrap().size;
        match kernel_general(&MmvcInstance::new(g.clone(), k).unwrap()).unwrap() {
            KernelOutcome::DecidedYes { witness, .. } => {
                prop_assert!(is_minimal_vc(&g, &witness));
                prop_assert!(witness.len() >= k);
            }
            KernelOutcome::DecidedNo { .. } => prop_assert!(false, "the MMVC kernel never answers no"),
            KernelOutcome::Reduced { instance, declared_bound, .. } => {
                let h = &instance.graph;
                prop_assert_eq!(mmvc_exact(h).unwrap().size, opt);
                prop_assert!(h.max_degree() < k);
                prop_assert!(h.vertices().all(|v| h.degree(v) > 0));
                prop_assert!(h.n() as u64 <= declared_bound);
                prop_assert_eq!(declared_bound, (k * k - 1) as u64);
            }
        }
    }

    #[test]
    fn buss_kernel_agrees_with_min_vc(g in graph_strategy(10), k in 0usize..8) {
        let opt = brute_min_vc(&g);
        match buss_min_vc_kernel(&g, k) {
            KernelOutcome::DecidedNo { .. } => prop_assert!(opt > k),
            KernelOutcome::DecidedYes { .. } => prop_assert!(false, "the VC kernel never answers yes"),
            KernelOutcome::Reduced { instance, .. } => {
                let h = &instance.graph;
                let k2 = instance.k;
                prop_assert!(h.n() <= k2 * (k2 + 1));
                prop_assert!(h.m() <= k2 * k2);
                prop_assert_eq!(instance.forced.len(), k - k2);
                prop_assert!(is_vertex_cover(&g, &instance.forced.union(&VertexSet::from_iter_unsorted(instance.to_host.iter().copied()))));
                if opt <= k {
                    // Forced vertices lie in every cover of size ≤ k.
                    prop_assert_eq!(opt, brute_min_vc(h) + instance.forced.len());
                } else {
                    prop_assert!(brute_min_vc(h) + (k - k2) >= opt);
                }
            }
        }
    }

    #[test]
    fn dual_answers_are_sound(g in graph_strategy(9)) {
        let opt = brute_mmvc(&g) as u64;
        for k in 1..=g.n().max(1) {
            let a = dual_from_kernel(&MmvcAdapter, &g, k).unwrap();
            match a.conclusion {
                DualConclusion::AtLeastK => prop_assert!(opt >= k as u64),
                DualConclusion::BelowF => prop_assert!(opt < a.f_value),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
        let min = brute_min_vc(&g) as u64;
        for k in 0..=g.n() {
            let a = dual_from_kernel(&MinVcAdapter, &g, k).unwrap();
            match a.conclusion {
                DualConclusion::AboveK => prop_assert!(min > k as u64),
                DualConclusion::AtMostF => {
                    prop_assert!(min <= a.f_value);
                    prop_assert_eq!(a.f_value, MinVcAdapter.f(k as u64));
                    let w = a.witness.unwrap();
                    prop_assert!(is_vertex_cover(&g, &w) && w.len() as u64 <= a.f_value);
                }
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy(15)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trips(f in cnf_strategy(6, 8)) {
        prop_assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn monotone_split_is_equisatisfiable(f in cnf_strategy(4, 6)) {
        let (m, split) = sat_to_monotone(&f);
        prop_assert!(m.is_monotone());
        prop_assert_eq!(m.var_count, 2 * f.var_count);
        let src = sat_bruteforce(&f).unwrap();
        let dst = sat_bruteforce(&m).unwrap();
        prop_assert_eq!(src.is_some(), dst.is_some());
        if let Some(a) = dst {
            prop_assert!(split.project(&a).satisfies(&f));
        }
    }

    #[test]
    fn large_covers_use_two_vertices_per_gadget(n in 1usize..=3, m in 0usize..=4, seed in any::<u64>()) {
        let f = generate_monotone_cnf(n, m, seed);
        let art = monotone_to_mmvc(&f).unwrap();
        for x in minimal_vertex_covers(&art.graph, 20).unwrap() {
            if x.len() < art.k {
                continue;
            }
            for v in &art.variables {
                let inside = [v.left, v.plus, v.minus, v.right].iter().filter(|&&u| x.contains(u)).count();
                prop_assert_eq!(inside, 2);
            }
            prop_assert!(art.clauses.iter().all(|&c| x.contains(c)));
        }
    }

    #[test]
    fn generators_stay_in_class(n in 0usize..=18, density in 0.0f64..=1.0, seed in any::<u64>(), which in 0usize..7) {
        let class = [
            GenClass::Any,
            GenClass::Bipartite,
            GenClass::TriangleFree,
            GenClass::KtFree(4),
            GenClass::PawFree,
            GenClass::BullFree,
            GenClass::K1tFree(3),
        ][which];
        let spec = GenSpec::new(class, n, density, seed);
        let g = generate(&spec).unwrap();
        prop_assert_eq!(g.n(), n);
        prop_assert_eq!(&generate(&spec).unwrap(), &g);
        if let Some(p) = class.forbidden() {
            prop_assert!(find_induced(&g, p).unwrap().is_none());
        }
    }

    #[test]
    fn partitions_cover_each_vertex_once(g in graph_strategy(12)) {
        let ex = ExtractorRegistry::default()
            .build("brute", &ExtractorSpec { delta: Rational64::new(1, 4), ..ExtractorSpec::default() })
            .unwrap();
        let p = eh_partition(&g, ex.as_ref()).unwrap();
        let mut seen = vec![0; g.n()];
        for part in p.parts() {
            prop_assert!(part.holds_in(&g));
            for v in part.vertices.iter() {
                seen[v] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert!(p.part_count() <= partition_bound(g.n(), p.delta));
    }

    #[test]
    fn set_algebra(a in proptest::collection::vec(0usize..20, 0..10), b in proptest::collection::vec(0usize..20, 0..10)) {
        let (a, b) = (VertexSet::from_iter_unsorted(a), VertexSet::from_iter_unsorted(b));
        let u = a.union(&b);
        prop_assert!(a.is_subset_of(&u) && b.is_subset_of(&u));
        let d = a.difference(&b);
        prop_assert!(d.iter().all(|v| a.contains(v) && !b.contains(v)));
        prop_assert_eq!(d.union(&b), u);
        prop_assert_eq!(a.complement(20).complement(20), a);
    }
}
