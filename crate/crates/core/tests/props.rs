//! Property tests over randomly shaped inputs; the seeded sweeps in the
//! acceptance suite cover the curated corpora, these cover the odd shapes.

use domatic_core::budget::Budget;
use domatic_core::cfsp::{
    delta_min, delta_min_bruteforce, is_valid_schedule, switch_count, TaskMatrix,
};
use domatic_core::dimacs::{read_dimacs, write_dimacs};
use domatic_core::exact_set::ExactSet;
use domatic_core::graph::{build_graph, disjoint_union, join, Graph};
use domatic_core::sat::{nae3_decide, nae_closure, one_in_three_decide, Cnf3, Lit, TripleSystem};
use domatic_core::srp::{
    check_partition, exact_domatic_in_set, exact_partition_decision, is_sigma_rho_set,
    SigmaRhoSpec,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let count = pairs.len();
        proptest::bits::bitset::sampled(0..=count, 0..count.max(1)).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| bits.contains(*i)).map(|(_, &e)| e).collect();
            build_graph(n, &edges).unwrap()
        })
    })
}

fn arb_matrix() -> impl Strategy<Value = TaskMatrix> {
    ((1usize..=3), (1usize..=4)).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), n)
            .prop_map(|cells| TaskMatrix::new(cells).unwrap())
    })
}

fn arb_cnf(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = Cnf3> {
    (1..=max_vars).prop_flat_map(move |vars| {
        let lit = (0..vars, any::<bool>()).prop_map(|(v, neg)| if neg { Lit::neg(v) } else { Lit::pos(v) });
        proptest::collection::vec([lit.clone(), lit.clone(), lit], 0..=max_clauses)
            .prop_map(move |clauses| Cnf3::new(vars, clauses).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_counts_and_union_counts(a in arb_graph(6), b in arb_graph(6)) {
        let j = join(&a, &b);
        prop_assert_eq!(j.n(), a.n() + b.n());
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.n() * b.n());
        let u = disjoint_union(&a, &b);
        prop_assert_eq!(u.n(), a.n() + b.n());
        prop_assert_eq!(u.edge_count(), a.edge_count() + b.edge_count());
    }

    #[test]
    fn join_is_associative_structurally(a in arb_graph(4), b in arb_graph(4), c in arb_graph(4)) {
        let left = join(&join(&a, &b), &c);
        let right = join(&a, &join(&b, &c));
        prop_assert!(left.same_structure(&right));
    }

    #[test]
    fn dimacs_round_trip(g in arb_graph(8)) {
        let text = write_dimacs(&g);
        let back = read_dimacs(&text).unwrap();
        prop_assert!(g.same_structure(&back));
        prop_assert_eq!(write_dimacs(&back), text);
    }

    #[test]
    fn graph_json_round_trip(g in arb_graph(8)) {
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(g, back);
    }

    #[test]
    fn sigma_rho_set_matches_double_loop(g in arb_graph(5), mask in 0u32..32) {
        let members: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        for sigma in SigmaRhoSpec::MENU {
            for rho in SigmaRhoSpec::MENU {
                let fast = is_sigma_rho_set(&g, &members, sigma, rho).unwrap();
                let slow = (0..g.n()).all(|v| {
                    let count = (0..g.n())
                        .filter(|&w| members.contains(&w) && g.has_edge(v, w))
                        .count();
                    if members.contains(&v) { sigma.contains(count) } else { rho.contains(count) }
                });
                prop_assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn exact_domatic_matches_exact_partition_level(g in arb_graph(5), t in 2usize..5) {
        let set = ExactSet::new(vec![t as u64]).unwrap();
        let via_set = exact_domatic_in_set(&g, &set, Budget::unlimited()).unwrap();
        let via_level =
            exact_partition_decision(&g, t, SigmaRhoSpec::NATS, SigmaRhoSpec::POS, Budget::unlimited())
                .unwrap();
        prop_assert_eq!(via_set, via_level);
    }

    #[test]
    fn cfsp_solver_matches_oracle_on_random_matrices(m in arb_matrix()) {
        prop_assume!(m.task_count() <= 10);
        let (d, s) = delta_min(&m).unwrap();
        prop_assert!(is_valid_schedule(&m, &s));
        prop_assert_eq!(switch_count(&s), d);
        prop_assert_eq!(d, delta_min_bruteforce(&m).unwrap());
    }

    #[test]
    fn closure_preserves_nae_status(f in arb_cnf(4, 4)) {
        let closed = nae_closure(&f);
        prop_assert_eq!(closed.clauses.len(), 2 * f.clauses.len());
        prop_assert_eq!(
            nae3_decide(&f).unwrap().is_some(),
            nae3_decide(&closed).unwrap().is_some()
        );
    }

    #[test]
    fn one_in_three_witnesses_verify(sets in proptest::collection::vec([0usize..4, 0usize..4, 0usize..4], 1..4)) {
        let sets: Vec<[Lit; 3]> = sets
            .into_iter()
            .map(|[a, b, c]| [Lit::pos(a), Lit::pos(b), Lit::pos(c)])
            .collect();
        let system = TripleSystem::new(4, sets).unwrap();
        if let Some(witness) = one_in_three_decide(&system).unwrap() {
            for set in &system.sets {
                prop_assert_eq!(set.iter().filter(|l| witness.contains(l)).count(), 1);
            }
        }
    }

    #[test]
    fn solver_witnesses_check_out(g in arb_graph(6), k in 1usize..4) {
        use domatic_core::srp::exists_partition;
        use domatic_core::budget::SolveOutcome;
        for sigma in [SigmaRhoSpec::NATS, SigmaRhoSpec::ZERO_ONE] {
            for rho in [SigmaRhoSpec::POS, SigmaRhoSpec::NATS] {
                if let SolveOutcome::Yes(p) = exists_partition(&g, k, sigma, rho, Budget::unlimited()) {
                    prop_assert_eq!(check_partition(&g, &p, sigma, rho), Ok(true));
                }
            }
        }
    }
}
