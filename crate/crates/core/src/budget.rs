//! Wall-clock budgets for the exact solvers. A budget is checked every fixed
//! number of search nodes; running out is a result, not an error, so
//! verification campaigns can report coverage honestly.

use crate::graph::Partition;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(secs: f64) -> Self {
        Budget { deadline: Some(Instant::now() + Duration::from_secs_f64(secs)) }
    }

    pub fn expired(&self) -> bool {
        matches!(self.deadline, Some(d) if Instant::now() >= d)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// Outcome of a budgeted partition search. `No` means the search space was
/// exhausted; `TimedOut` means the budget ran out first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Yes(Partition),
    No,
    TimedOut,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveOutcome::Yes(_))
    }

    pub fn witness(&self) -> Option<&Partition> {
        match self {
            SolveOutcome::Yes(p) => Some(p),
            _ => None,
        }
    }
}
