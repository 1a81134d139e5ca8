//! Noncontiguous sets of positive integers. The exact decision problems take
//! their target values from these: contiguous runs would collapse to easier
//! problems, so contiguity is rejected up front.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactSetError {
    #[error("target set must be nonempty")]
    Empty,
    #[error("target set elements must be >= 1 (got {0})")]
    NonPositive(u64),
    #[error("target set elements {0} and {1} are contiguous")]
    ContiguousSet(u64, u64),
}

/// Sorted, duplicate-free, with no two members differing by 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ExactSet {
    values: Vec<u64>,
}

impl ExactSet {
    pub fn new(mut values: Vec<u64>) -> Result<Self, ExactSetError> {
        if values.is_empty() {
            return Err(ExactSetError::Empty);
        }
        values.sort_unstable();
        values.dedup();
        if values[0] == 0 {
            return Err(ExactSetError::NonPositive(0));
        }
        if let Some(w) = values.windows(2).find(|w| w[1] - w[0] == 1) {
            return Err(ExactSetError::ContiguousSet(w[0], w[1]));
        }
        Ok(ExactSet { values })
    }

    pub fn contains(&self, v: u64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<u64>> for ExactSet {
    type Error = ExactSetError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        ExactSet::new(v)
    }
}

impl From<ExactSet> for Vec<u64> {
    fn from(s: ExactSet) -> Self {
        s.values
    }
}

impl std::fmt::Display for ExactSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_contiguous() {
        assert_eq!(
            ExactSet::new(vec![2, 3]).unwrap_err(),
            ExactSetError::ContiguousSet(2, 3)
        );
    }

    #[test]
    fn rejects_empty_and_zero() {
        assert_eq!(ExactSet::new(vec![]).unwrap_err(), ExactSetError::Empty);
        assert_eq!(ExactSet::new(vec![0, 2]).unwrap_err(), ExactSetError::NonPositive(0));
    }

    #[test]
    fn accepts_odd_spaced() {
        let s = ExactSet::new(vec![9, 11]).unwrap();
        assert!(s.contains(9) && s.contains(11) && !s.contains(10));
    }
}
