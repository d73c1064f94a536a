//! The result record shared by every solver.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::data::FeatureSubset;

/// What a solve produced: the chosen subset, its quality, and how much work
/// the search did.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub subset: FeatureSubset,
    /// `|POS_subset|`, the number of objects the subset classifies
    /// unambiguously.
    pub pos_size: usize,
    /// Total cost of the subset under the query's schedule.
    pub cost: f64,
    /// Whether some explored subset within budget preserved the full
    /// feature set's positive region. When true the budget was slack
    /// enough that the cheapest sufficient subset was reachable.
    pub coincides_with_mtr: bool,
    /// Search effort: examined subsets for the exact solvers, addition
    /// iterations for the greedy ones.
    pub steps: u64,
    pub elapsed: Duration,
}

impl SearchOutcome {
    /// Whether two outcomes agree on result quality: positive-region size
    /// and total cost. Distinct subsets can tie here, and ties count as
    /// the same answer.
    pub fn matches_quality(&self, other: &SearchOutcome) -> bool {
        self.pos_size == other.pos_size && self.cost == other.cost
    }

    /// Full equality minus timing.
    pub fn same_result(&self, other: &SearchOutcome) -> bool {
        self.subset == other.subset
            && self.pos_size == other.pos_size
            && self.cost == other.cost
            && self.coincides_with_mtr == other.coincides_with_mtr
            && self.steps == other.steps
    }

    /// Lexicographic quality comparison: larger positive region first,
    /// cheaper cost second. `Greater` means `self` is strictly better.
    pub fn compare_quality(&self, other: &SearchOutcome) -> std::cmp::Ordering {
        self.pos_size
            .cmp(&other.pos_size)
            .then_with(|| other.cost.partial_cmp(&self.cost).unwrap())
    }
}
