//! Shared fixtures and independent reference implementations.
//!
//! The reference functions here deliberately share no code with the
//! library: the positive region is computed by pairwise object
//! comparison and the entropy by hash-grouping, so agreement with the
//! library's partition-refinement kernel is meaningful evidence.

// Each integration test target compiles this module independently and
// uses a different slice of it.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subreduct::{CostSchedule, DecisionSystem, FeatureSubset};

pub const INTERLOCKING_CSV: &str = "\
a1,a2,a3,d
Y,Y,Y,A
N,Y,N,B
Y,N,N,B
N,N,Y,A
Y,Y,Y,B
";

pub fn interlocking() -> DecisionSystem {
    DecisionSystem::from_rows(
        &["a1", "a2", "a3"],
        "d",
        &[
            (&["Y", "Y", "Y"], "A"),
            (&["N", "Y", "N"], "B"),
            (&["Y", "N", "N"], "B"),
            (&["N", "N", "Y"], "A"),
            (&["Y", "Y", "Y"], "B"),
        ],
    )
    .unwrap()
}

pub fn interlocking_costs() -> CostSchedule {
    CostSchedule::new(vec![2.0, 3.0, 10.0]).unwrap()
}

fn agree(system: &DecisionSystem, x: usize, y: usize, features: &[usize]) -> bool {
    features
        .iter()
        .all(|&f| system.value_code(x, f) == system.value_code(y, f))
}

/// Positive region by pairwise comparison: an object is in it exactly
/// when every object indiscernible from it shares its decision.
pub fn naive_positive_region(system: &DecisionSystem, features: &[usize]) -> Vec<usize> {
    let n = system.num_objects();
    (0..n)
        .filter(|&x| {
            (0..n).all(|y| {
                !agree(system, x, y, features)
                    || system.decisions()[x] == system.decisions()[y]
            })
        })
        .collect()
}

/// Conditional entropy by hash-grouping rows on their feature values.
pub fn naive_conditional_entropy(system: &DecisionSystem, features: &[usize]) -> f64 {
    let n = system.num_objects();
    let mut groups: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    for x in 0..n {
        let key: Vec<u32> = features.iter().map(|&f| system.value_code(x, f)).collect();
        groups.entry(key).or_default().push(system.decisions()[x]);
    }
    let mut total = 0.0;
    for decisions in groups.values() {
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for &d in decisions {
            *counts.entry(d).or_default() += 1;
        }
        let size = decisions.len() as f64;
        let mut h = 0.0;
        for &count in counts.values() {
            let p = count as f64 / size;
            h -= p * p.log2();
        }
        total += (size / n as f64) * h;
    }
    total
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random nominal table: up to 12 objects, up to 8 features with at
/// most 3 values each, 2 or 3 classes.
pub fn random_system(rng: &mut ChaCha8Rng) -> DecisionSystem {
    let num_objects = rng.random_range(1..=12);
    let num_features = rng.random_range(1..=8);
    let num_classes = rng.random_range(2..=3);
    let domain_sizes: Vec<u32> = (0..num_features).map(|_| rng.random_range(1..=3)).collect();

    let names: Vec<String> = (0..num_features).map(|f| format!("f{f}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let tokens = ["v0", "v1", "v2"];
    let classes = ["c0", "c1", "c2"];
    let rows: Vec<(Vec<&str>, &str)> = (0..num_objects)
        .map(|_| {
            let cells: Vec<&str> = domain_sizes
                .iter()
                .map(|&size| tokens[rng.random_range(0..size) as usize])
                .collect();
            (cells, classes[rng.random_range(0..num_classes)])
        })
        .collect();
    let borrowed: Vec<(&[&str], &str)> = rows
        .iter()
        .map(|(cells, class)| (cells.as_slice(), *class))
        .collect();
    DecisionSystem::from_rows(&name_refs, "class", &borrowed).unwrap()
}

/// Integer costs in [1, 10], one per feature.
pub fn random_costs(rng: &mut ChaCha8Rng, num_features: usize) -> CostSchedule {
    CostSchedule::new(
        (0..num_features)
            .map(|_| rng.random_range(1..=10) as f64)
            .collect(),
    )
    .unwrap()
}

/// Budgets covering a starved, a binding, and a slack regime for the
/// given schedule.
pub fn budget_regimes(rng: &mut ChaCha8Rng, schedule: &CostSchedule) -> Vec<f64> {
    let total = schedule.total();
    vec![0.0, rng.random_range(1..=total.max(1.0) as u64) as f64, total]
}

/// All feature index subsets of a small system, smallest first.
pub fn all_subsets(num_features: usize) -> Vec<FeatureSubset> {
    assert!(num_features <= 12);
    (0u32..(1 << num_features))
        .map(|mask| {
            FeatureSubset::from_indices((0..num_features).filter(|&f| mask & (1 << f) != 0))
        })
        .collect()
}
