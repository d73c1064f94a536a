//! Test costs and budgets.
//!
//! Each feature carries a nonnegative acquisition cost; the cost of a
//! subset is the sum of its members' costs. Budgets bound the total a
//! solver may spend. Costs are plain `f64` so callers can use any scale,
//! but the bundled generator follows the common benchmarking setup of
//! uniform integers drawn from a closed range.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{DecisionSystem, FeatureSubset};
use crate::error::{Error, Result};

/// Per-feature test costs, indexed like the system's features.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CostSchedule {
    costs: Vec<f64>,
}

impl CostSchedule {
    /// Validates that every cost is finite and nonnegative.
    pub fn new(costs: Vec<f64>) -> Result<Self> {
        for (index, &cost) in costs.iter().enumerate() {
            if !cost.is_finite() || cost < 0.0 {
                return Err(Error::InvalidCost {
                    name: format!("feature {index}"),
                    value: cost,
                });
            }
        }
        Ok(CostSchedule { costs })
    }

    /// A schedule of all-equal costs, making every solver cost-blind.
    pub fn uniform(num_features: usize, cost: f64) -> Result<Self> {
        CostSchedule::new(vec![cost; num_features])
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn cost(&self, feature: usize) -> f64 {
        self.costs[feature]
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// Total cost of a subset.
    pub fn subset_cost(&self, subset: &FeatureSubset) -> f64 {
        subset.iter().map(|f| self.costs[f]).sum()
    }

    /// Total cost of the full feature set.
    pub fn total(&self) -> f64 {
        self.costs.iter().sum()
    }

    pub(crate) fn check_against(&self, system: &DecisionSystem) -> Result<()> {
        if self.len() != system.num_features() {
            return Err(Error::ScheduleMismatch {
                expected: system.num_features(),
                found: self.len(),
            });
        }
        Ok(())
    }

    /// Reads a two-column `feature,cost` file with a header row. Every
    /// feature of the system must appear exactly once.
    pub fn load<R: Read>(reader: R, system: &DecisionSystem) -> Result<Self> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut seen: HashMap<usize, f64> = HashMap::new();
        for record in csv_reader.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.len() != 2 {
                return Err(Error::Parse(format!(
                    "expected 2 columns per cost row, found {}",
                    record.len()
                )));
            }
            let name = record.get(0).unwrap();
            let feature = system
                .feature_index(name)
                .ok_or_else(|| Error::UnknownColumn {
                    name: name.to_string(),
                })?;
            let value: f64 = record
                .get(1)
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cost value for {name}")))?;
            if seen.insert(feature, value).is_some() {
                return Err(Error::DuplicateColumn {
                    name: name.to_string(),
                });
            }
        }
        let mut costs = Vec::with_capacity(system.num_features());
        for feature in 0..system.num_features() {
            match seen.get(&feature) {
                Some(&value) => costs.push(value),
                None => {
                    return Err(Error::UnknownColumn {
                        name: format!("{} (no cost given)", system.feature(feature).name()),
                    })
                }
            }
        }
        CostSchedule::new(costs)
    }

    /// See [`CostSchedule::load`].
    pub fn load_path(path: impl AsRef<Path>, system: &DecisionSystem) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::load(std::io::BufReader::new(file), system)
    }

    /// Writes the two-column `feature,cost` format accepted by
    /// [`CostSchedule::load`].
    pub fn write<W: std::io::Write>(&self, writer: W, system: &DecisionSystem) -> Result<()> {
        self.check_against(system)?;
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(["feature", "cost"])
            .map_err(|e| Error::Parse(e.to_string()))?;
        for feature in 0..self.len() {
            out.write_record([
                system.feature(feature).name(),
                &format_cost(self.costs[feature]),
            ])
            .map_err(|e| Error::Parse(e.to_string()))?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

/// Formats a cost without a trailing `.0` when it is integral, matching the
/// generator's output domain.
pub fn format_cost(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e15 {
        format!("{}", value as i64)
    } else {
        format!("{value}")
    }
}

/// Draws one integer cost per feature, uniformly from `low..=high`, using a
/// seeded generator so runs are reproducible across platforms.
pub fn generate_uniform_costs(
    system: &DecisionSystem,
    seed: u64,
    low: u32,
    high: u32,
) -> Result<CostSchedule> {
    if low > high {
        return Err(Error::InvalidCostRange { low, high });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let costs = (0..system.num_features())
        .map(|_| rng.random_range(low..=high) as f64)
        .collect();
    CostSchedule::new(costs)
}

/// A validated spending limit.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Budget(f64);

impl Budget {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidBudget(value));
        }
        Ok(Budget(value))
    }

    /// A budget no subset can exceed: the total cost of all features.
    pub fn unlimited(schedule: &CostSchedule) -> Self {
        Budget(schedule.total())
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// Whether a total spend fits within the budget.
    pub fn admits(&self, cost: f64) -> bool {
        cost <= self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::DecisionSystem;

    fn two_feature_system() -> DecisionSystem {
        DecisionSystem::from_rows(
            &["a1", "a2"],
            "d",
            &[(&["x", "y"], "p"), (&["y", "x"], "q")],
        )
        .unwrap()
    }

    #[test]
    fn subset_cost_is_additive() {
        let schedule = CostSchedule::new(vec![2.0, 3.0, 10.0]).unwrap();
        assert_eq!(schedule.subset_cost(&FeatureSubset::empty()), 0.0);
        assert_eq!(
            schedule.subset_cost(&FeatureSubset::from_indices([0, 1])),
            5.0
        );
        assert_eq!(
            schedule.subset_cost(&FeatureSubset::from_indices([0, 1, 2])),
            15.0
        );
        assert_eq!(schedule.total(), 15.0);
    }

    #[test]
    fn negative_and_non_finite_costs_rejected() {
        assert!(CostSchedule::new(vec![1.0, -0.5]).is_err());
        assert!(CostSchedule::new(vec![f64::NAN]).is_err());
        assert!(CostSchedule::new(vec![f64::INFINITY]).is_err());
        assert!(CostSchedule::new(vec![0.0, 7.5]).is_ok());
    }

    #[test]
    fn generated_costs_land_in_range_and_are_integral() {
        let ds = two_feature_system();
       let schedule = generate_uniform_costs(&ds, 42, 1, 100).unwrap();
        assert_eq!(schedule.len(), 2);
        for &c in schedule.costs() {
            assert!((1.0..=100.0).contains(&c));
            assert_eq!(c.fract(), 0.0);
        }
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let ds = two_feature_system();
        let a = generate_uniform_costs(&ds, 7, 1, 100).unwrap();
        let b = generate_uniform_costs(&ds, 7, 1, 100).unwrap();
        let c = generate_uniform_costs(&ds, 8, 1, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn inverted_range_rejected() {
        let ds = two_feature_system();
        assert!(generate_uniform_costs(&ds, 0, 50, 10).is_err());
    }

    #[test]
    fn cost_file_round_trip() {
        let ds = two_feature_system();
        let schedule = CostSchedule::new(vec![4.0, 17.0]).unwrap();
        let mut buffer = Vec::new();
        schedule.write(&mut buffer, &ds).unwrap();
        let text = String::from_utf8(buffer.clone()).unwrap();
        assert!(text.starts_with("feature,cost\n"));
        assert!(text.contains("a1,4\n"));
        let reloaded = CostSchedule::load(buffer.as_slice(), &ds).unwrap();
        assert_eq!(reloaded, schedule);
    }

    #[test]
    fn cost_file_order_does_not_matter() {
        let ds = two_feature_system();
        let text = "feature,cost\na2,9\na1,3\n";
        let schedule = CostSchedule::load(text.as_bytes(), &ds).unwrap();
        assert_eq!(schedule.costs(), &[3.0, 9.0]);
    }

    #[test]
    fn cost_file_missing_or_duplicate_feature_rejected() {
        let ds = two_feature_system();
        assert!(CostSchedule::load("feature,cost\na1,3\n".as_bytes(), &ds).is_err());
        assert!(CostSchedule::load(
            "feature,cost\na1,3\na1,4\na2,5\n".as_bytes(),
            &ds
        )
        .is_err());
        assert!(CostSchedule::load(
            "feature,cost\na1,3\nbogus,4\na2,5\n".as_bytes(),
            &ds
        )
        .is_err());
    }

    #[test]
    fn budget_validation() {
        assert!(Budget::new(-1.0).is_err());
        assert!(Budget::new(f64::NAN).is_err());
        let b = Budget::new(6.0).unwrap();
        assert!(b.admits(6.0));
        assert!(b.admits(0.0));
        assert!(!b.admits(6.0001));
    }
}
