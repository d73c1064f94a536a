//! Reduct and consistency predicates.
//!
//! A subset `B` is sufficient when it preserves the positive region of the
//! full feature set; it is a reduct when additionally no member can be
//! removed without shrinking that region. A system is consistent when the
//! full feature set already places every object in the positive region,
//! which is equivalent to the decision's conditional entropy vanishing.

use crate::data::{DecisionSystem, FeatureSubset};
use crate::entropy::{conditional_entropy, ENTROPY_EPSILON};
use crate::error::Result;
use crate::partition::positive_region_size;

fn full_subset(system: &DecisionSystem) -> FeatureSubset {
    FeatureSubset::from_indices(0..system.num_features())
}

/// Whether `POS_B` equals `POS_C` by size. Positive regions are monotone
/// under subset growth and `B ⊆ C`, so equal sizes force equal sets.
pub fn is_sufficient(system: &DecisionSystem, subset: &FeatureSubset) -> Result<bool> {
    let full = positive_region_size(system, &full_subset(system))?;
    Ok(positive_region_size(system, subset)? == full)
}

/// Whether `B` is a decision reduct: sufficient, and every single-feature
/// removal loses part of the positive region.
pub fn is_reduct(system: &DecisionSystem, subset: &FeatureSubset) -> Result<bool> {
    let full = positive_region_size(system, &full_subset(system))?;
    if positive_region_size(system, subset)? != full {
        return Ok(false);
    }
    for feature in subset.iter() {
        let mut without = subset.clone();
        without.remove(feature);
        if positive_region_size(system, &without)? == full {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the full feature set determines the decision everywhere, i.e.
/// `POS_C = U`.
pub fn is_consistent(system: &DecisionSystem) -> bool {
    let full = full_subset(system);
    positive_region_size(system, &full)
        .map(|size| size == system.num_objects())
        .unwrap_or(false)
}

/// Consistency restated through entropy: `H(d | C)` below the comparison
/// tolerance. Agrees with [`is_consistent`] on every system; the positive
/// region covers `U` exactly when every block of `U/C` is pure, which is
/// exactly when the conditional entropy is zero.
pub fn is_consistent_by_entropy(system: &DecisionSystem) -> bool {
    conditional_entropy(system, &full_subset(system))
        .map(|h| h < ENTROPY_EPSILON)
        .unwrap_or(false)
}
