mod common;

use std::collections::HashSet;

use common::{binomial, g, odd_product};
use graphop::multigraph::{degree_vector, double_factorial, names};
use graphop::{
    build_graph, canonical_form, disjoint_union, enumerate_classes, enumerate_degree_vectors,
    enumerate_matchings, orbits, parametrize, symmetry_generators, DegreeVector, Multigraph,
    PerfectMatching,
};
use proptest::prelude::*;

fn arb_multigraph() -> impl Strategy<Value = Multigraph> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=6)
            .prop_map(move |edges| Multigraph::new(n, edges).unwrap())
    })
}

fn arb_relabeled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

#[test]
fn matchings_are_distinct_and_counted_by_odd_products() {
    for p in 0..=5 {
        let ms = enumerate_matchings(p);
        assert_eq!(ms.len() as u128, odd_product(p));
        assert_eq!(double_factorial(p), odd_product(p));
        assert!(
            ms.windows(2).all(|w| w[0] < w[1]),
            "lexicographic and distinct"
        );
        for (i, m) in ms.iter().enumerate() {
            assert_eq!(m.lex_index(), i);
        }
    }
}

#[test]
fn orbits_partition_matchings_and_biject_with_classes() {
    for p in 0..=4 {
        let mut seen_graphs = HashSet::new();
        for beta in enumerate_degree_vectors(p) {
            let os = orbits(&beta);
            let mut covered = HashSet::new();
            for o in &os {
                assert!(o.graph.is_canonical());
                assert!(
                    seen_graphs.insert(o.graph.clone()),
                    "class {} repeated",
                    o.graph
                );
                for rho in &o.members {
                    assert!(covered.insert(rho.clone()));
                    let built = canonical_form(&build_graph(rho, &beta).unwrap());
                    assert_eq!(built, o.graph);
                }
            }
            assert_eq!(covered.len() as u128, odd_product(p));
            let sizes: usize = os.iter().map(|o| o.size()).sum();
            assert_eq!(sizes as u128, odd_product(p));
        }
    }
}

#[test]
fn group_order_formula_matches_closure() {
    for p in 1..=3 {
        for beta in enumerate_degree_vectors(p) {
            let grp = symmetry_generators(&beta);
            let closure = grp.elements(1_000_000).unwrap();
            assert_eq!(closure.len() as u128, grp.order(), "{beta}");
        }
    }
}

#[test]
fn class_counts_by_edge_number() {
    let connected: Vec<usize> = (1..=3)
        .map(|p| enumerate_classes(p, true, 0).len())
        .collect();
    assert_eq!(connected, vec![2, 4, 11]);
    let all: Vec<usize> = (0..=4)
        .map(|p| enumerate_classes(p, false, 0).len())
        .collect();
    assert_eq!(all, vec![1, 2, 7, 23, 79]);
}

#[test]
fn degree_vector_counts_are_partition_numbers() {
    let counts: Vec<usize> = (0..=5).map(|p| enumerate_degree_vectors(p).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 11, 22, 42]);
}

#[test]
fn named_classes_have_the_listed_grading() {
    for (name, cls) in names::named_classes() {
        let beta = degree_vector(&cls);
        assert_eq!(beta.order(), cls.max_degree(), "{name}");
        assert_eq!(
            2 * beta.edges(),
            cls.degrees().iter().sum::<usize>(),
            "{name}"
        );
        assert_eq!(beta.vertices(), cls.num_vertices(), "{name}");
        assert!(cls.is_connected(), "{name}");
    }
    assert_eq!(names::named_classes().len(), 19);
}

#[test]
fn parametrize_then_build_recovers_every_small_class() {
    for p in 0..=3 {
        for cls in enumerate_classes(p, false, 2) {
            let (rho, beta) = parametrize(&cls);
            assert_eq!(beta, degree_vector(&cls));
            let back = build_graph(&rho, &beta).unwrap();
            assert_eq!(back, cls, "exact labels for canonical input");
        }
    }
}

#[test]
fn build_then_parametrize_stays_in_the_orbit() {
    for beta in enumerate_degree_vectors(3) {
        let os = orbits(&beta);
        for rho in enumerate_matchings(3) {
            let built = build_graph(&rho, &beta).unwrap();
            let (rho2, beta2) = parametrize(&built);
            assert_eq!(beta2, beta);
            let orbit = os.iter().find(|o| o.contains(&rho)).unwrap();
            assert!(orbit.contains(&rho2));
        }
    }
}

#[test]
fn build_graph_rejects_size_mismatch() {
    let beta = DegreeVector::new(0, vec![0, 2]).unwrap();
    let rho = PerfectMatching::from_one_based(&[(1, 2), (3, 4), (5, 6)]).unwrap();
    assert!(build_graph(&rho, &beta).is_err());
}

#[test]
fn binomial_helper_agrees_with_matching_recurrence() {
    // (2p-1)!! * 2^p * p! = (2p)!
    for p in 1..=8u64 {
        let fact = |n: u64| (1..=n).product::<u64>();
        assert_eq!(
            odd_product(p as usize) as u64 * (1 << p) * fact(p),
            fact(2 * p)
        );
        assert_eq!(binomial(2 * p, p) * fact(p) * fact(p), fact(2 * p));
    }
}

#[test]
fn path_example_parametrization() {
    let path = g(3, &[(0, 1), (1, 2)]);
    let (rho, beta) = parametrize(&path);
    assert_eq!(beta, DegreeVector::new(0, vec![2, 1]).unwrap());
    assert_eq!(rho.to_one_based_string(), "{1,3}{2,4}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(gr in arb_multigraph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let canon = canonical_form(&gr);
        prop_assert_eq!(degree_vector(&canon), degree_vector(&gr));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..gr.num_vertices()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            prop_assert_eq!(canonical_form(&gr.relabel(&perm).unwrap()), canon.clone());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(gr in arb_multigraph()) {
        let c = canonical_form(&gr);
        prop_assert!(c.is_canonical());
        prop_assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn degree_vectors_add_under_disjoint_union(a in arb_multigraph(), b in arb_multigraph()) {
        prop_assert_eq!(degree_vector(&disjoint_union(&a, &b)), &degree_vector(&a) + &degree_vector(&b));
    }

    #[test]
    fn relabeling_keeps_parametrized_orbit(gr in arb_multigraph(), perm in (1usize..=6).prop_flat_map(arb_relabeled)) {
        prop_assume!(perm.len() == gr.num_vertices());
        let (rho, beta) = parametrize(&gr);
        let (rho2, beta2) = parametrize(&gr.relabel(&perm).unwrap());
        prop_assert_eq!(&beta, &beta2);
        let orbit = orbits(&beta).into_iter().find(|o| o.contains(&rho)).unwrap();
        prop_assert!(orbit.contains(&rho2));
    }

    #[test]
    fn multigraph_json_round_trip(gr in arb_multigraph()) {
        let s = serde_json::to_string(&gr).unwrap();
        let back: Multigraph = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, gr);
    }

    #[test]
    fn matching_json_round_trip(p in 0usize..=4, idx in any::<prop::sample::Index>()) {
        let ms = enumerate_matchings(p);
        let m = &ms[idx.index(ms.len())];
        let s = serde_json::to_string(m).unwrap();
        let back: PerfectMatching = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, m);
    }

    #[test]
    fn degree_vector_json_round_trip(gr in arb_multigraph()) {
        let beta = degree_vector(&gr);
        let back: DegreeVector = serde_json::from_str(&serde_json::to_string(&beta).unwrap()).unwrap();
        prop_assert_eq!(back, beta);
    }
}
