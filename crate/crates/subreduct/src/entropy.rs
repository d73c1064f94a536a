//! Conditional entropy of the decision and the information gain of adding a
//! feature.
//!
//! All entropies are in bits (base-2 logarithm) with the convention
//! `0 * log 0 = 0`. The decision's conditional entropy given a subset `B`
//! is the block-size-weighted average of the decision entropy inside each
//! block of `U/B`; it is zero exactly when every block is pure.

use crate::data::{DecisionSystem, FeatureSubset};
use crate::error::Result;
use crate::kernel::Condensed;

/// Absolute tolerance for comparing entropies, in bits. Refinement chains
/// accumulate floating-point noise well below this.
pub const ENTROPY_EPSILON: f64 = 1e-9;

/// Threshold below which an information gain counts as zero.
pub const GAIN_EPSILON: f64 = 1e-12;

/// `H(d | B)` in bits.
pub fn conditional_entropy(system: &DecisionSystem, subset: &FeatureSubset) -> Result<f64> {
    subset.validate(system)?;
    let mut state = Condensed::universe(system);
    for feature in subset.iter() {
        state = state.refine(system, feature);
    }
    Ok(state.entropy_bits(system))
}

/// `H(d | B) - H(d | B ∪ {a})`, clamped to be nonnegative.
///
/// Refining a partition can only reduce conditional entropy, so a negative
/// difference is pure rounding noise and is reported as zero.
pub fn information_gain(
    system: &DecisionSystem,
    subset: &FeatureSubset,
    feature: usize,
) -> Result<f64> {
    system.check_feature(feature)?;
    let base = conditional_entropy(system, subset)?;
    let mut extended = subset.clone();
    extended.insert(feature);
    let refined = conditional_entropy(system, &extended)?;
    Ok((base - refined).max(0.0))
}
