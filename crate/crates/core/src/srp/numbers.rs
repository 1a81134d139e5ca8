//! Graph numbers derived from (k,σ,ρ)-partition levels, and the exact
//! decision problems over them.

use super::{exists_partition, SigmaRhoSpec, SrpError};
use crate::budget::{Budget, SolveOutcome};
use crate::exact_set::ExactSet;
use crate::graph::{degree_stats, Graph};

/// Monotonicity class of a (σ,ρ) pair: minimum problems stay solvable as k
/// grows (an empty class can always be added when rho admits zero); maximum
/// problems stay solvable as k shrinks (two classes can be merged when rho
/// only demands presence). Pairs that are neither have no exact version.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemClass {
    Minimum,
    Maximum,
    Neither,
}

pub fn classify(sigma: SigmaRhoSpec, rho: SigmaRhoSpec) -> ProblemClass {
    if rho == SigmaRhoSpec::NATS || rho == SigmaRhoSpec::ZERO_ONE {
        ProblemClass::Minimum
    } else if rho == SigmaRhoSpec::POS
        && (sigma == SigmaRhoSpec::NATS || sigma == SigmaRhoSpec::POS)
    {
        ProblemClass::Maximum
    } else {
        ProblemClass::Neither
    }
}

fn solve(g: &Graph, k: usize, sigma: SigmaRhoSpec, rho: SigmaRhoSpec, budget: Budget) -> Result<bool, SrpError> {
    match exists_partition(g, k, sigma, rho, budget) {
        SolveOutcome::Yes(_) => Ok(true),
        SolveOutcome::No => Ok(false),
        SolveOutcome::TimedOut => Err(SrpError::TimedOut),
    }
}

/// The domatic number: the largest k admitting a partition into k dominating
/// sets. Searches downward from the min-degree + 1 upper bound; the first
/// hit is the answer by maximum-problem monotonicity.
pub fn domatic_number(g: &Graph, budget: Budget) -> Result<usize, SrpError> {
    let (min_deg, _) = degree_stats(g)?;
    for k in (1..=min_deg + 1).rev() {
        if solve(g, k, SigmaRhoSpec::NATS, SigmaRhoSpec::POS, budget)? {
            return Ok(k);
        }
    }
    unreachable!("every nonempty graph has a (1, N, N+)-partition")
}

/// The total domatic analogue: largest k admitting a partition into classes
/// every vertex has a neighbor in. `None` when not even one class works,
/// i.e. when the graph has an isolated vertex.
pub fn gamma(g: &Graph, budget: Budget) -> Result<Option<usize>, SrpError> {
    if g.n() == 0 {
        return Ok(None);
    }
    let (min_deg, _) = degree_stats(g)?;
    for k in (1..=min_deg.max(1)).rev() {
        if solve(g, k, SigmaRhoSpec::POS, SigmaRhoSpec::POS, budget)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Smallest k splitting the graph into classes of in-class degree at most 1.
/// Always defined: singletons work at k = n.
pub fn alpha(g: &Graph, budget: Budget) -> Result<usize, SrpError> {
    for k in 1..=g.n().max(1) {
        if solve(g, k, SigmaRhoSpec::ZERO_ONE, SigmaRhoSpec::NATS, budget)? {
            return Ok(k);
        }
    }
    unreachable!("singleton classes satisfy sigma = {{0,1}} at k = n")
}

/// Smallest k splitting the graph into classes that induce perfect
/// matchings on themselves; `None` when no k up to n works.
pub fn beta(g: &Graph, budget: Budget) -> Result<Option<usize>, SrpError> {
    for k in 1..=g.n().max(1) {
        if solve(g, k, SigmaRhoSpec::ONE, SigmaRhoSpec::NATS, budget)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Chromatic number via the partition solver: smallest k with a
/// (k,{0},N)-partition.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Result<usize, SrpError> {
    for k in 1..=g.n().max(1) {
        if solve(g, k, SigmaRhoSpec::ZERO, SigmaRhoSpec::NATS, budget)? {
            return Ok(k);
        }
    }
    unreachable!("singleton classes are independent at k = n")
}

/// Independent classic colorer used to cross-check [`chromatic_number`]:
/// plain backtracking over vertices in index order, no shared machinery
/// with the partition solver.
pub fn chromatic_number_classic(g: &Graph) -> usize {
    fn colorable(g: &Graph, k: usize, colors: &mut [usize], v: usize, used: usize) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..=used.min(k - 1) {
            if g.neighbors(v).iter().all(|&w| colors[w as usize] != c) {
                colors[v] = c;
                if colorable(g, k, colors, v + 1, used.max(c + 1)) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    for k in 1..=g.n().max(1) {
        let mut colors = vec![usize::MAX; g.n()];
        if colorable(g, k, &mut colors, 0, 0) {
            return k;
        }
    }
    unreachable!()
}

/// Exact level decision: for minimum problems, in level k but not k-1; for
/// maximum problems, in level k but not k+1. Rejects non-monotone pairs.
pub fn exact_partition_decision(
    g: &Graph,
    k: usize,
    sigma: SigmaRhoSpec,
    rho: SigmaRhoSpec,
    budget: Budget,
) -> Result<bool, SrpError> {
    match classify(sigma, rho) {
        ProblemClass::Minimum => {
            if k < 2 {
                return Err(SrpError::BadLevel(k));
            }
            Ok(solve(g, k, sigma, rho, budget)? && !solve(g, k - 1, sigma, rho, budget)?)
        }
        ProblemClass::Maximum => {
            if k < 1 {
                return Err(SrpError::BadLevel(k));
            }
            Ok(solve(g, k, sigma, rho, budget)? && !solve(g, k + 1, sigma, rho, budget)?)
        }
        ProblemClass::Neither => Err(SrpError::NotMonotone),
    }
}

/// True iff the domatic number lands in the (noncontiguous) target set.
pub fn exact_domatic_in_set(g: &Graph, targets: &ExactSet, budget: Budget) -> Result<bool, SrpError> {
    Ok(targets.contains(domatic_number(g, budget)? as u64))
}

pub fn dnp_odd(g: &Graph, budget: Budget) -> Result<bool, SrpError> {
    Ok(domatic_number(g, budget)? % 2 == 1)
}

pub fn dnp_equ(g: &Graph, h: &Graph, budget: Budget) -> Result<bool, SrpError> {
    Ok(domatic_number(g, budget)? == domatic_number(h, budget)?)
}

pub fn dnp_geq(g: &Graph, h: &Graph, budget: Budget) -> Result<bool, SrpError> {
    Ok(domatic_number(g, budget)? >= domatic_number(h, budget)?)
}
