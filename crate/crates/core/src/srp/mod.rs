//! Generalized dominating sets: a vertex set `U` is a (σ,ρ)-set when every
//! member of `U` has its in-`U` neighbor count in σ and every non-member has
//! its in-`U` neighbor count in ρ. Partition problems over these subsume
//! domatic-number style packing and coloring style splitting, depending on
//! the (σ,ρ) pair.

mod numbers;
mod solver;

pub use numbers::*;
pub use solver::{brute_force_partition, exists_partition};

use crate::graph::{Graph, GraphError, Partition};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SrpError {
    #[error("search budget exhausted")]
    TimedOut,
    #[error("instance too large for exhaustive enumeration ({0})")]
    TooLarge(String),
    #[error("(sigma, rho) pair is neither a minimum nor a maximum problem")]
    NotMonotone,
    #[error("level k = {0} out of range for this problem class")]
    BadLevel(usize),
    #[error("partition covers {0} vertices but the graph has {1}")]
    PartitionMismatch(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Membership predicate over neighbor counts: a small finite part plus an
/// optional cofinite tail ("all counts >= t").
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SigmaRhoSpec {
    finite: u64,
    cofinite_from: Option<u32>,
}

impl SigmaRhoSpec {
    /// All nonnegative counts.
    pub const NATS: SigmaRhoSpec = SigmaRhoSpec { finite: 0, cofinite_from: Some(0) };
    /// All positive counts.
    pub const POS: SigmaRhoSpec = SigmaRhoSpec { finite: 0, cofinite_from: Some(1) };
    /// Exactly zero.
    pub const ZERO: SigmaRhoSpec = SigmaRhoSpec { finite: 1 << 0, cofinite_from: None };
    /// Exactly one.
    pub const ONE: SigmaRhoSpec = SigmaRhoSpec { finite: 1 << 1, cofinite_from: None };
    /// Zero or one.
    pub const ZERO_ONE: SigmaRhoSpec = SigmaRhoSpec { finite: 0b11, cofinite_from: None };

    /// The five-spec menu, in token order `N`, `N+`, `0`, `1`, `01`.
    pub const MENU: [SigmaRhoSpec; 5] = [
        SigmaRhoSpec::NATS,
        SigmaRhoSpec::POS,
        SigmaRhoSpec::ZERO,
        SigmaRhoSpec::ONE,
        SigmaRhoSpec::ZERO_ONE,
    ];

    pub fn contains(&self, count: usize) -> bool {
        if let Some(t) = self.cofinite_from {
            if count >= t as usize {
                return true;
            }
        }
        count < 64 && self.finite >> count & 1 == 1
    }

    /// True iff some value in `[count, count + slack]` belongs to the set.
    /// This is the forward-checking primitive: `count` is the realized
    /// in-class neighbor count, `slack` the number of still-unassigned
    /// neighbors.
    pub fn feasible(&self, count: usize, slack: usize) -> bool {
        let hi = count + slack;
        if let Some(t) = self.cofinite_from {
            if hi >= t as usize {
                return true;
            }
        }
        if count >= 64 {
            return false;
        }
        let window = if hi >= 63 { !0u64 << count } else { (!0u64 << count) & !(!0u64 << (hi + 1)) };
        self.finite & window != 0
    }

    /// True iff zero is not a member, i.e. the class must be "hit".
    pub fn requires_positive(&self) -> bool {
        !self.contains(0)
    }

    /// Largest member of a finite set; `None` when a cofinite tail makes the
    /// set unbounded (or when the set is empty).
    pub fn finite_cap(&self) -> Option<u32> {
        match (self.cofinite_from, self.finite) {
            (Some(_), _) | (None, 0) => None,
            (None, mask) => Some(63 - mask.leading_zeros()),
        }
    }

    /// CLI token: one of `N`, `N+`, `0`, `1`, `01`.
    pub fn parse_token(tok: &str) -> Result<Self, String> {
        match tok {
            "N" => Ok(Self::NATS),
            "N+" => Ok(Self::POS),
            "0" => Ok(Self::ZERO),
            "1" => Ok(Self::ONE),
            "01" => Ok(Self::ZERO_ONE),
            other => Err(format!("unknown sigma/rho token `{other}` (expected N, N+, 0, 1, 01)")),
        }
    }

    pub fn token(&self) -> &'static str {
        match *self {
            Self::NATS => "N",
            Self::POS => "N+",
            Self::ZERO => "0",
            Self::ONE => "1",
            Self::ZERO_ONE => "01",
            _ => "custom",
        }
    }
}

impl std::fmt::Display for SigmaRhoSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl TryFrom<String> for SigmaRhoSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        SigmaRhoSpec::parse_token(&s)
    }
}

impl From<SigmaRhoSpec> for String {
    fn from(s: SigmaRhoSpec) -> String {
        s.token().to_string()
    }
}

/// A (k,σ,ρ)-partition instance.
#[derive(Clone, Debug)]
pub struct PartitionProblem {
    pub graph: Graph,
    pub k: usize,
    pub sigma: SigmaRhoSpec,
    pub rho: SigmaRhoSpec,
}

/// True iff `u_set` is a (σ,ρ)-set of `g`. Duplicate entries are collapsed.
pub fn is_sigma_rho_set(
    g: &Graph,
    u_set: &[usize],
    sigma: SigmaRhoSpec,
    rho: SigmaRhoSpec,
) -> Result<bool, GraphError> {
    let mut member = vec![false; g.n()];
    for &v in u_set {
        if v >= g.n() {
            return Err(GraphError::VertexOutOfRange(v, g.n()));
        }
        member[v] = true;
    }
    Ok((0..g.n()).all(|v| {
        let count = g.neighbors(v).iter().filter(|&&w| member[w as usize]).count();
        if member[v] {
            sigma.contains(count)
        } else {
            rho.contains(count)
        }
    }))
}

/// True iff every class of `p` (including empty ones) is a (σ,ρ)-set of `g`.
pub fn check_partition(
    g: &Graph,
    p: &Partition,
    sigma: SigmaRhoSpec,
    rho: SigmaRhoSpec,
) -> Result<bool, SrpError> {
    if p.len() != g.n() {
        return Err(SrpError::PartitionMismatch(p.len(), g.n()));
    }
    for v in 0..g.n() {
        let mut counts = vec![0usize; p.k()];
        for &w in g.neighbors(v) {
            counts[p.class_of(w as usize)] += 1;
        }
        let own = p.class_of(v);
        for (c, &count) in counts.iter().enumerate() {
            let ok = if c == own { sigma.contains(count) } else { rho.contains(count) };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, complete, cycle};

    #[test]
    fn spec_membership_matches_menu() {
        assert!(SigmaRhoSpec::NATS.contains(0) && SigmaRhoSpec::NATS.contains(17));
        assert!(!SigmaRhoSpec::POS.contains(0) && SigmaRhoSpec::POS.contains(1));
        assert!(SigmaRhoSpec::ZERO.contains(0) && !SigmaRhoSpec::ZERO.contains(1));
        assert!(!SigmaRhoSpec::ONE.contains(0) && SigmaRhoSpec::ONE.contains(1) && !SigmaRhoSpec::ONE.contains(2));
        assert!(SigmaRhoSpec::ZERO_ONE.contains(1) && !SigmaRhoSpec::ZERO_ONE.contains(2));
    }

    #[test]
    fn feasible_is_interval_membership() {
        for spec in SigmaRhoSpec::MENU {
            for count in 0..8usize {
                for slack in 0..8usize {
                    let expect = (count..=count + slack).any(|t| spec.contains(t));
                    assert_eq!(spec.feasible(count, slack), expect, "{spec} count={count} slack={slack}");
                }
            }
        }
    }

    #[test]
    fn finite_caps() {
        assert_eq!(SigmaRhoSpec::NATS.finite_cap(), None);
        assert_eq!(SigmaRhoSpec::POS.finite_cap(), None);
        assert_eq!(SigmaRhoSpec::ZERO.finite_cap(), Some(0));
        assert_eq!(SigmaRhoSpec::ONE.finite_cap(), Some(1));
        assert_eq!(SigmaRhoSpec::ZERO_ONE.finite_cap(), Some(1));
    }

    #[test]
    fn token_round_trip() {
        for spec in SigmaRhoSpec::MENU {
            assert_eq!(SigmaRhoSpec::parse_token(spec.token()).unwrap(), spec);
        }
        assert!(SigmaRhoSpec::parse_token("nope").is_err());
    }

    #[test]
    fn sigma_rho_set_examples() {
        // a single clique vertex dominates
        assert!(is_sigma_rho_set(&complete(3), &[0], SigmaRhoSpec::NATS, SigmaRhoSpec::POS).unwrap());
        // adjacent pair on C4, each with one in-class neighbor
        assert!(is_sigma_rho_set(&cycle(4), &[0, 1], SigmaRhoSpec::ONE, SigmaRhoSpec::NATS).unwrap());
        // the empty set fails whenever rho excludes zero and vertices exist
        assert!(!is_sigma_rho_set(&complete(1), &[], SigmaRhoSpec::NATS, SigmaRhoSpec::POS).unwrap());
        assert_eq!(
            is_sigma_rho_set(&complete(2), &[5], SigmaRhoSpec::NATS, SigmaRhoSpec::NATS).unwrap_err(),
            GraphError::VertexOutOfRange(5, 2)
        );
    }

    #[test]
    fn check_partition_examples() {
        let c4 = cycle(4);
        let p = Partition::new(2, vec![0, 1, 0, 1]).unwrap();
        assert!(check_partition(&c4, &p, SigmaRhoSpec::NATS, SigmaRhoSpec::POS).unwrap());

        let k3 = complete(3);
        let coloring = Partition::new(3, vec![0, 1, 2]).unwrap();
        assert!(check_partition(&k3, &coloring, SigmaRhoSpec::ZERO, SigmaRhoSpec::NATS).unwrap());
        let lump = Partition::new(1, vec![0, 0, 0]).unwrap();
        assert!(!check_partition(&k3, &lump, SigmaRhoSpec::ZERO, SigmaRhoSpec::NATS).unwrap());

        let short = Partition::new(1, vec![0]).unwrap();
        assert_eq!(
            check_partition(&k3, &short, SigmaRhoSpec::NATS, SigmaRhoSpec::NATS).unwrap_err(),
            SrpError::PartitionMismatch(1, 3)
        );
    }

    #[test]
    fn empty_class_validity_follows_rho() {
        // an empty class is a valid (sigma, rho)-set exactly when rho admits 0
        let g = build_graph(2, &[(0, 1)]).unwrap();
        let p = Partition::new(2, vec![0, 0]).unwrap();
        assert!(check_partition(&g, &p, SigmaRhoSpec::ONE, SigmaRhoSpec::NATS).unwrap());
        assert!(!check_partition(&g, &p, SigmaRhoSpec::NATS, SigmaRhoSpec::POS).unwrap());
    }
}
