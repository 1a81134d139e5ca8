//! Seeded instance generators. Everything is driven by a ChaCha stream so
//! identical seeds reproduce identical instances across platforms.

use crate::graph::{build_graph, has_isolated_vertex, is_two_colorable, Graph};
use crate::cfsp::TaskMatrix;
use crate::sat::{Cnf3, Lit, TripleSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `lo..=hi` off the shared stream, so downstream crates
/// need no rand dependency of their own.
pub fn range(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// Random graph: each pair independently an edge with probability `p`.
pub fn gen_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build_graph(n, &edges).unwrap()
}

pub fn gen_graph_seeded(n: usize, p: f64, seed: u64) -> Graph {
    gen_graph(n, p, &mut rng(seed))
}

/// `count` graphs with 1..=max_n vertices, pairwise distinct as labeled
/// edge sets (distinct by construction, not by isomorphism).
pub fn distinct_small_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = rng(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=max_n);
        let p = rng.gen_range(0.15..0.85);
        let g = gen_graph(n, p, &mut rng);
        let sig = (g.n(), g.edges().to_vec());
        if seen.insert(sig) {
            out.push(g);
        }
    }
    out
}

/// Graphs suitable for the subdivision construction: no isolated vertex,
/// not 2-colorable.
pub fn non_bipartite_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = rng(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=max_n);
        let p = rng.gen_range(0.35..0.9);
        let g = gen_graph(n, p, &mut rng);
        if has_isolated_vertex(&g) || is_two_colorable(&g) {
            continue;
        }
        let sig = (g.n(), g.edges().to_vec());
        if seen.insert(sig) {
            out.push(g);
        }
    }
    out
}

/// Random 3-clause CNF; literals drawn uniformly, repeats allowed.
pub fn gen_cnf3(vars: usize, clauses: usize, rng: &mut ChaCha8Rng) -> Cnf3 {
    assert!(vars >= 1);
    let mut cs = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let mut lit = || {
            let v = rng.gen_range(0..vars);
            if rng.gen_bool(0.5) {
                Lit::pos(v)
            } else {
                Lit::neg(v)
            }
        };
        cs.push([lit(), lit(), lit()]);
    }
    Cnf3::new(vars, cs).unwrap()
}

pub fn gen_cnf3_seeded(vars: usize, clauses: usize, seed: u64) -> Cnf3 {
    gen_cnf3(vars, clauses, &mut rng(seed))
}

/// Random positive triple system.
pub fn gen_triples(vars: usize, sets: usize, rng: &mut ChaCha8Rng) -> TripleSystem {
    assert!(vars >= 1);
    let mut out = Vec::with_capacity(sets);
    for _ in 0..sets {
        let mut lit = || Lit::pos(rng.gen_range(0..vars));
        out.push([lit(), lit(), lit()]);
    }
    TripleSystem::new(vars, out).unwrap()
}

pub fn gen_triples_seeded(vars: usize, sets: usize, seed: u64) -> TripleSystem {
    gen_triples(vars, sets, &mut rng(seed))
}

/// Random task matrix with the given cell density.
pub fn gen_matrix(n: usize, m: usize, density: f64, rng: &mut ChaCha8Rng) -> TaskMatrix {
    let cells = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_bool(density)).collect())
        .collect();
    TaskMatrix::new(cells).unwrap()
}

pub fn gen_matrix_seeded(n: usize, m: usize, density: f64, seed: u64) -> TaskMatrix {
    gen_matrix(n, m, density, &mut rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::srp::{brute_force_partition, exists_partition, SigmaRhoSpec};

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_graph_seeded(6, 0.5, 7), gen_graph_seeded(6, 0.5, 7));
        assert_eq!(gen_cnf3_seeded(4, 3, 7), gen_cnf3_seeded(4, 3, 7));
        assert_eq!(gen_triples_seeded(4, 3, 7), gen_triples_seeded(4, 3, 7));
        assert_eq!(gen_matrix_seeded(3, 3, 0.6, 7), gen_matrix_seeded(3, 3, 0.6, 7));
        assert_ne!(gen_graph_seeded(6, 0.5, 7), gen_graph_seeded(6, 0.5, 8));
    }

    #[test]
    fn non_bipartite_filter_holds() {
        for g in non_bipartite_graphs(10, 6, 3) {
            assert!(!crate::graph::has_isolated_vertex(&g));
            assert!(!crate::graph::is_two_colorable(&g));
        }
    }

    #[test]
    fn solver_matches_oracle_on_seeded_sample() {
        // a fast slice of the full acceptance sweep
        for (i, g) in distinct_small_graphs(40, 5, 11).into_iter().enumerate() {
            for sigma in SigmaRhoSpec::MENU {
                for rho in SigmaRhoSpec::MENU {
                    for k in 1..=3 {
                        let fast = exists_partition(&g, k, sigma, rho, Budget::unlimited());
                        let slow = brute_force_partition(&g, k, sigma, rho).unwrap();
                        assert_eq!(
                            fast.is_yes(),
                            slow.is_some(),
                            "graph {i} k={k} sigma={sigma} rho={rho}"
                        );
                    }
                }
            }
        }
    }
}
