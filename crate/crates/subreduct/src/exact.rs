//! Exact solvers for budget-constrained positive-region maximization.
//!
//! Given per-feature costs and a budget, find a feature subset whose total
//! cost stays within the budget and whose positive region is as large as
//! possible; among those, the cheapest wins. [`backtracking`] searches the
//! subset lattice depth-first with cost pruning; [`brute_force`] enumerates
//! everything and exists to cross-check it; [`minimal_cost_reduct`] is the
//! slack-budget special case that returns the cheapest sufficient subset.

use std::time::Instant;

use crate::cost::{Budget, CostSchedule};
use crate::data::{DecisionSystem, FeatureSubset};
use crate::error::{Error, Result};
use crate::kernel::Condensed;
use crate::outcome::SearchOutcome;

/// Feature count above which [`brute_force`] refuses to run.
pub const BRUTE_FORCE_LIMIT: usize = 20;

struct SearchState<'a> {
    system: &'a DecisionSystem,
    schedule: &'a CostSchedule,
    budget: f64,
    full_pos: usize,
    best: Vec<usize>,
    best_pos: usize,
    best_cost: f64,
    coincides: bool,
    steps: u64,
}

impl SearchState<'_> {
    fn consider(&mut self, subset: &[usize], pos: usize, cost: f64) {
        if pos == self.full_pos {
            self.coincides = true;
        }
        if pos > self.best_pos || (pos == self.best_pos && cost < self.best_cost) {
            self.best = subset.to_vec();
            self.best_pos = pos;
            self.best_cost = cost;
        }
    }

    fn descend(&mut self, state: &Condensed, path: &mut Vec<usize>, cost: f64, lower: usize) {
        for feature in lower..self.system.num_features() {
            self.steps += 1;
            let child_cost = cost + self.schedule.cost(feature);
            if child_cost > self.budget {
                continue;
            }
            // Once the incumbent preserves the full positive region, no
            // extension of an equally-or-more-expensive subset can beat
            // it: supersets never cost less and never exceed full_pos.
            if self.best_pos == self.full_pos && child_cost >= self.best_cost {
                continue;
            }
            let child = state.refine(self.system, feature);
            path.push(feature);
            self.consider(path, child.positive_region_size(), child_cost);
            self.descend(&child, path, child_cost, feature + 1);
            path.pop();
        }
    }
}

/// Depth-first search over the subset lattice in feature-index order.
///
/// Every branch whose cost would exceed the budget is cut. Features are
/// only ever added along a branch, so a feature useless alone still gets
/// explored in combination. The incumbent improves only on a strictly
/// larger positive region, or an equal region at strictly lower cost, so
/// ties keep the first subset reached. `coincides_with_mtr` reports whether
/// any affordable subset preserved the full feature set's positive region,
/// in which case the answer is also the cheapest sufficient subset.
pub fn backtracking(
    system: &DecisionSystem,
    schedule: &CostSchedule,
    budget: Budget,
) -> Result<SearchOutcome> {
    schedule.check_against(system)?;
    let start = Instant::now();
    let universe = Condensed::universe(system);
    let full_pos = full_positive_region_size(system, &universe);
    let root_pos = universe.positive_region_size();
    let mut search = SearchState {
        system,
        schedule,
        budget: budget.value(),
        full_pos,
        best: Vec::new(),
        best_pos: root_pos,
        best_cost: 0.0,
        coincides: root_pos == full_pos,
        steps: 0,
    };
    let mut path = Vec::new();
    search.descend(&universe, &mut path, 0.0, 0);
    let subset = FeatureSubset::from_indices(search.best.iter().copied());
    let cost = schedule.subset_cost(&subset);
    Ok(SearchOutcome {
        pos_size: search.best_pos,
        cost,
        coincides_with_mtr: search.coincides,
        steps: search.steps,
        elapsed: start.elapsed(),
        subset,
    })
}

fn full_positive_region_size(system: &DecisionSystem, universe: &Condensed) -> usize {
    let mut state = universe.clone();
    for feature in 0..system.num_features() {
        if state.is_fully_pure() {
            break;
        }
        state = state.refine(system, feature);
    }
    state.positive_region_size()
}

/// Examines all `2^|C|` subsets and keeps the best under the same
/// objective and tie-break as [`backtracking`] (first in depth-first
/// preorder, which is lexicographic order on sorted index lists). Exists
/// as an independent correctness oracle, so it shares no search logic with
/// the pruned solver. Refuses systems with more than
/// [`BRUTE_FORCE_LIMIT`] features.
pub fn brute_force(
    system: &DecisionSystem,
    schedule: &CostSchedule,
    budget: Budget,
) -> Result<SearchOutcome> {
    schedule.check_against(system)?;
    let n = system.num_features();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyFeatures {
            count: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let start = Instant::now();
    let universe = Condensed::universe(system);
    let full_pos = full_positive_region_size(system, &universe);
    let mut best: Option<(usize, f64, Vec<usize>)> = None;
    let mut coincides = false;
    let mut steps = 0u64;
    for mask in 0u32..(1u32 << n) {
        steps += 1;
        let features: Vec<usize> = (0..n).filter(|&f| mask & (1 << f) != 0).collect();
        let cost: f64 = features.iter().map(|&f| schedule.cost(f)).sum();
        if cost > budget.value() {
            continue;
        }
        let mut state = universe.clone();
        for &f in &features {
            state = state.refine(system, f);
        }
        let pos = state.positive_region_size();
        if pos == full_pos {
            coincides = true;
        }
        let better = match &best {
            None => true,
            Some((best_pos, best_cost, best_features)) => {
                pos > *best_pos
                    || (pos == *best_pos && cost < *best_cost)
                    || (pos == *best_pos && cost == *best_cost && features < *best_features)
            }
        };
        if better {
            best = Some((pos, cost, features));
        }
    }
    let (pos_size, _, features) = best.expect("mask 0 is always affordable");
    let subset = FeatureSubset::from_indices(features);
    let cost = schedule.subset_cost(&subset);
    Ok(SearchOutcome {
        subset,
        pos_size,
        cost,
        coincides_with_mtr: coincides,
        steps,
        elapsed: start.elapsed(),
    })
}

/// The cheapest subset preserving the full feature set's positive region:
/// the budget-constrained search run with the one budget nothing can
/// exceed, the total cost of all features.
pub fn minimal_cost_reduct(
    system: &DecisionSystem,
    schedule: &CostSchedule,
) -> Result<SearchOutcome> {
    backtracking(system, schedule, Budget::unlimited(schedule))
}

/// A budget scaled from the cheapest sufficient subset, with the
/// computation that produced it.
#[derive(Clone, Debug)]
pub struct BudgetDerivation {
    pub budget: Budget,
    /// Cost of the cheapest subset preserving the full positive region.
    pub reference_cost: f64,
    /// The minimal-cost search itself, for reporting.
    pub reference: SearchOutcome,
    /// Whether the derived budget admits that cheapest sufficient subset,
    /// making the budget constraint redundant.
    pub slack: bool,
}

/// Derives the benchmark budget `floor(factor * c)` where `c` is the
/// minimal cost of a fully sufficient subset. Factors below 1 make the
/// constraint bind; factors of 1 or more leave it slack.
pub fn derive_budget(
    system: &DecisionSystem,
    schedule: &CostSchedule,
    factor: f64,
) -> Result<BudgetDerivation> {
    if !factor.is_finite() || factor <= 0.0 {
        return Err(Error::InvalidBudgetFactor(factor));
    }
    let reference = minimal_cost_reduct(system, schedule)?;
    let reference_cost = reference.cost;
    let budget = Budget::new((factor * reference_cost).floor())?;
    Ok(BudgetDerivation {
        slack: budget.admits(reference_cost),
        budget,
        reference_cost,
        reference,
    })
}
