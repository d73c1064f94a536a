//! Greedy budget-constrained selection guided by cost-weighted information
//! gain, plus the competition strategy that races a grid of weight
//! exponents and keeps the best result.
//!
//! One greedy run adds the feature maximizing `gain(a) * cost(a)^λ` until
//! no candidate fits the remaining budget, undoing additions that turn out
//! entropy-redundant along the way, and finishes with a positive-region
//! minimization pass. λ = 0 ignores costs entirely; more negative λ leans
//! harder toward cheap features. No single λ wins everywhere, so
//! [`competition`] tries each value in a grid and picks the best outcome.

use std::time::Instant;

use crate::cost::{Budget, CostSchedule};
use crate::data::{DecisionSystem, FeatureSubset};
use crate::entropy::{ENTROPY_EPSILON, GAIN_EPSILON};
use crate::error::{Error, Result};
use crate::kernel::Condensed;
use crate::outcome::SearchOutcome;

/// An ordered list of non-positive weight exponents for [`competition`].
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaGrid {
    values: Vec<f64>,
}

impl LambdaGrid {
    /// Validates that the grid is nonempty, duplicate-free, and entirely
    /// non-positive.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidLambdaGrid("empty grid".into()));
        }
        for &lambda in &values {
            check_lambda(lambda)?;
        }
        for (i, &a) in values.iter().enumerate() {
            if values[i + 1..].contains(&a) {
                return Err(Error::InvalidLambdaGrid(format!("duplicate value {a}")));
            }
        }
        Ok(LambdaGrid { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Default for LambdaGrid {
    /// 0 to -3 in steps of 0.25, thirteen values.
    fn default() -> Self {
        LambdaGrid {
            // The subtraction keeps the first value +0.0, not -0.0,
            // which matters once the grid reaches serialized output.
            values: (0..13).map(|i| 0.0 - 0.25 * i as f64).collect(),
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_nan() || lambda > 0.0 {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(())
}

/// The selection score `gain * cost^λ`.
///
/// λ = 0 returns the gain unchanged. For λ < 0 the score decays as cost
/// grows; a zero-cost feature with positive gain scores infinite, the
/// limit of `cost^λ` as cost approaches zero from above.
pub fn lambda_weight(gain: f64, cost: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(gain);
    }
    if cost == 0.0 {
        return Ok(if gain > 0.0 { f64::INFINITY } else { 0.0 });
    }
    Ok(gain * cost.powf(lambda))
}

struct Candidate {
    feature: usize,
    cost: f64,
    gain: f64,
    weight: f64,
}

/// Whether `a` should be picked over `b`: higher weight first; among
/// infinite weights (zero-cost features) higher raw gain; then cheaper
/// cost; then smaller index.
fn beats(a: &Candidate, b: &Candidate) -> bool {
    if a.weight != b.weight {
        return a.weight > b.weight;
    }
    if a.weight.is_infinite() && a.gain != b.gain {
        return a.gain > b.gain;
    }
    if a.cost != b.cost {
        return a.cost < b.cost;
    }
    a.feature < b.feature
}

fn condensed_of(system: &DecisionSystem, subset: &FeatureSubset) -> Condensed {
    let mut state = Condensed::universe(system);
    for feature in subset.iter() {
        state = state.refine(system, feature);
    }
    state
}

fn entropy_of(system: &DecisionSystem, subset: &FeatureSubset) -> f64 {
    condensed_of(system, subset).entropy_bits(system)
}

/// Members in the order deletion passes visit them: most expensive first,
/// ties by index. Removing expensive features first frees the most budget.
fn deletion_order(subset: &FeatureSubset, schedule: &CostSchedule) -> Vec<usize> {
    let mut order: Vec<usize> = subset.iter().collect();
    order.sort_by(|&a, &b| {
        schedule
            .cost(b)
            .partial_cmp(&schedule.cost(a))
            .unwrap()
            .then(a.cmp(&b))
    });
    order
}

/// One greedy addition-deletion run at a fixed weight exponent.
///
/// Repeats until no unprocessed feature fits the remaining budget: add the
/// affordable feature with the best weighted gain, then drop any member
/// whose removal leaves the conditional entropy unchanged (within
/// tolerance), refunding its cost. Features keep only one shot at
/// admission; a deleted feature does not become a candidate again. A final
/// pass removes members whose removal leaves the positive region intact,
/// so the result cannot shed a feature for free. The result always costs
/// at most the budget. `steps` counts additions.
pub fn lambda_greedy(
    system: &DecisionSystem,
    schedule: &CostSchedule,
    budget: Budget,
    lambda: f64,
) -> Result<SearchOutcome> {
    schedule.check_against(system)?;
    check_lambda(lambda)?;
    let start = Instant::now();

    let mut subset = FeatureSubset::empty();
    let mut candidates: Vec<usize> = (0..system.num_features()).collect();
    let mut state = Condensed::universe(system);
    let mut current_entropy = state.entropy_bits(system);
    let mut steps = 0u64;

    loop {
        let remaining = budget.value() - schedule.subset_cost(&subset);
        let mut best: Option<Candidate> = None;
        for &feature in &candidates {
            let cost = schedule.cost(feature);
            if cost > remaining {
                continue;
            }
            let refined_entropy = state.refine(system, feature).entropy_bits(system);
            let mut gain = (current_entropy - refined_entropy).max(0.0);
            if gain < GAIN_EPSILON {
                gain = 0.0;
            }
            let weight = if lambda < 0.0 && cost == 0.0 {
                if gain > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            } else {
                lambda_weight(gain, cost, lambda)?
            };
            let candidate = Candidate {
                feature,
                cost,
                gain,
                weight,
            };
            if best.as_ref().is_none_or(|b| beats(&candidate, b)) {
                best = Some(candidate);
            }
        }
        let Some(chosen) = best else { break };

        subset.insert(chosen.feature);
        candidates.retain(|&f| f != chosen.feature);
        steps += 1;
        state = state.refine(system, chosen.feature);
        current_entropy = state.entropy_bits(system);

        let mut removed_any = false;
        for feature in deletion_order(&subset, schedule) {
            let mut without = subset.clone();
            without.remove(feature);
            let entropy_without = entropy_of(system, &without);
            if (entropy_without - current_entropy).abs() <= ENTROPY_EPSILON {
                subset = without;
                current_entropy = entropy_without;
                removed_any = true;
            }
        }
        if removed_any {
            state = condensed_of(system, &subset);
        }

        let remaining = budget.value() - schedule.subset_cost(&subset);
        candidates.retain(|&f| schedule.cost(f) <= remaining);
        if candidates.is_empty() {
            break;
        }
    }

    let pos = state.positive_region_size();
    for feature in deletion_order(&subset, schedule) {
        let mut without = subset.clone();
        without.remove(feature);
        // Shrinking the subset can only shrink the positive region, so
        // equal sizes mean equal sets.
        if condensed_of(system, &without).positive_region_size() == pos {
            subset = without;
        }
    }

    let full_pos = {
        let full = FeatureSubset::from_indices(0..system.num_features());
        condensed_of(system, &full).positive_region_size()
    };
    let cost = schedule.subset_cost(&subset);
    Ok(SearchOutcome {
        pos_size: pos,
        cost,
        coincides_with_mtr: pos == full_pos,
        steps,
        elapsed: start.elapsed(),
        subset,
    })
}

/// What a competition produced: the winning outcome plus every per-λ run.
#[derive(Clone, Debug)]
pub struct CompetitionOutcome {
    pub winner: SearchOutcome,
    /// The grid value that produced the winner.
    pub winner_lambda: f64,
    /// One entry per grid value, in grid order.
    pub per_lambda: Vec<(f64, SearchOutcome)>,
}

/// Runs [`lambda_greedy`] once per grid value and keeps the best outcome:
/// largest positive region, then cheapest, then smallest subset, then
/// earliest grid position.
pub fn competition(
    system: &DecisionSystem,
    schedule: &CostSchedule,
    budget: Budget,
    grid: &LambdaGrid,
) -> Result<CompetitionOutcome> {
    let mut per_lambda = Vec::with_capacity(grid.len());
    for &lambda in grid.values() {
        let outcome = lambda_greedy(system, schedule, budget, lambda)?;
        per_lambda.push((lambda, outcome));
    }
    Ok(select_winner(per_lambda))
}

/// Winner selection as a deterministic fold in grid order, shared with
/// callers that produce the per-λ outcomes themselves.
pub(crate) fn select_winner(per_lambda: Vec<(f64, SearchOutcome)>) -> CompetitionOutcome {
    let (mut winner_lambda, mut winner) = per_lambda[0].clone();
    for (lambda, outcome) in per_lambda.iter().skip(1) {
        let better = outcome.pos_size > winner.pos_size
            || (outcome.pos_size == winner.pos_size && outcome.cost < winner.cost)
            || (outcome.pos_size == winner.pos_size
                && outcome.cost == winner.cost
                && outcome.subset.len() < winner.subset.len());
        if better {
            winner = outcome.clone();
            winner_lambda = *lambda;
        }
    }
    CompetitionOutcome {
        winner,
        winner_lambda,
        per_lambda,
    }
}
