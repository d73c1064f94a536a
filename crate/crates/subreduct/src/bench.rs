//! Seeded benchmark harness: many random cost settings on one table,
//! exact against greedy on every one, aggregated into plot-ready reports.
//!
//! Each trial draws its own cost schedule from a per-trial seed, derives a
//! budget from it, and solves with the exact search, with every grid λ,
//! and with the competition winner picked from those runs. Trials are
//! independent and run in parallel; records are returned in trial order,
//! and everything except wall-clock timings is deterministic given the
//! configuration.

use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::{format_cost, generate_uniform_costs, Budget, CostSchedule};
use crate::data::DecisionSystem;
use crate::error::{Error, Result};
use crate::exact::{backtracking, derive_budget};
use crate::heuristic::{lambda_greedy, select_winner, LambdaGrid};
use crate::outcome::SearchOutcome;

/// Exact solves get slow well before this, but stay feasible; callers
/// should surface a warning above it rather than refuse.
pub const EXACT_FEATURE_WARN_LIMIT: usize = 24;

/// Where each trial's cost schedule comes from.
#[derive(Clone, Debug)]
pub enum CostSource {
    /// Fresh uniform integer costs per trial, from the trial's seed.
    Generated { low: u32, high: u32 },
    /// One fixed schedule shared by every trial.
    Fixed(CostSchedule),
}

/// How each trial's budget is chosen.
#[derive(Clone, Copy, Debug)]
pub enum BudgetPolicy {
    /// Scale the trial schedule's minimal sufficient cost by this factor.
    Factor(f64),
    /// The same absolute budget for every trial.
    Fixed(f64),
}

/// One benchmark run: how many trials, how they are seeded, costed, and
/// budgeted, and which λ grid competes.
#[derive(Clone, Debug)]
pub struct TrialConfig {
    pub trials: usize,
    pub master_seed: u64,
    pub cost_source: CostSource,
    pub budget_policy: BudgetPolicy,
    pub lambdas: LambdaGrid,
}

impl TrialConfig {
    /// The standard protocol: uniform integer costs in [1, 100] drawn per
    /// trial, budget at 0.8 of the minimal sufficient cost so the
    /// constraint binds, and the default λ grid.
    pub fn protocol(trials: usize, master_seed: u64) -> Self {
        TrialConfig {
            trials,
            master_seed,
            cost_source: CostSource::Generated { low: 1, high: 100 },
            budget_policy: BudgetPolicy::Factor(0.8),
            lambdas: LambdaGrid::default(),
        }
    }

    fn validate(&self, system: &DecisionSystem) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidTrialConfig("trial count must be at least 1".into()));
        }
        match &self.cost_source {
            CostSource::Generated { low, high } => {
                if low > high {
                    return Err(Error::InvalidCostRange {
                        low: *low,
                        high: *high,
                    });
                }
            }
            CostSource::Fixed(schedule) => schedule.check_against(system)?,
        }
        match self.budget_policy {
            BudgetPolicy::Factor(factor) => {
                if !factor.is_finite() || factor <= 0.0 {
                    return Err(Error::InvalidBudgetFactor(factor));
                }
            }
            BudgetPolicy::Fixed(value) => {
                Budget::new(value)?;
            }
        }
        Ok(())
    }
}

/// Everything one trial produced.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// Seed the trial's schedule was generated from (the master seed
    /// mixed with the trial index; recorded even for fixed schedules).
    pub cost_seed: u64,
    /// The budget the trial solved under.
    pub budget: f64,
    pub exact: SearchOutcome,
    /// One greedy outcome per grid value, in grid order.
    pub per_lambda: Vec<(f64, SearchOutcome)>,
    /// The competition winner among `per_lambda`.
    pub competition: SearchOutcome,
    /// The grid value that won the competition.
    pub competition_lambda: f64,
    /// Whether each per-λ outcome ties the exact one on size and cost.
    pub per_lambda_optimal: Vec<bool>,
    pub competition_optimal: bool,
}

impl TrialRecord {
    /// Field-for-field equality ignoring wall-clock timings.
    pub fn same_result(&self, other: &TrialRecord) -> bool {
        self.trial == other.trial
            && self.cost_seed == other.cost_seed
            && self.budget == other.budget
            && self.exact.same_result(&other.exact)
            && self.per_lambda.len() == other.per_lambda.len()
            && self
                .per_lambda
                .iter()
                .zip(&other.per_lambda)
                .all(|((la, oa), (lb, ob))| la == lb && oa.same_result(ob))
            && self.competition.same_result(&other.competition)
            && self.competition_lambda == other.competition_lambda
            && self.per_lambda_optimal == other.per_lambda_optimal
            && self.competition_optimal == other.competition_optimal
    }
}

/// Runs the configured number of trials against one table. Trials run in
/// parallel but the returned records are in trial order, and every field
/// except timings is reproducible from the configuration.
pub fn run_trials(system: &DecisionSystem, config: &TrialConfig) -> Result<Vec<TrialRecord>> {
    config.validate(system)?;
    (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            run_one_trial(system, config, trial).map_err(|source| Error::Trial {
                index: trial,
                source: Box::new(source),
            })
        })
        .collect()
}

fn run_one_trial(
    system: &DecisionSystem,
    config: &TrialConfig,
    trial: usize,
) -> Result<TrialRecord> {
    let cost_seed = config.master_seed ^ trial as u64;
    let schedule = match &config.cost_source {
        CostSource::Generated { low, high } => {
            generate_uniform_costs(system, cost_seed, *low, *high)?
        }
        CostSource::Fixed(schedule) => schedule.clone(),
    };
    let budget = match config.budget_policy {
        BudgetPolicy::Factor(factor) => derive_budget(system, &schedule, factor)?.budget,
        BudgetPolicy::Fixed(value) => Budget::new(value)?,
    };

    let exact = backtracking(system, &schedule, budget)?;
    let mut per_lambda = Vec::with_capacity(config.lambdas.len());
    for &lambda in config.lambdas.values() {
        let outcome = lambda_greedy(system, &schedule, budget, lambda)?;
        per_lambda.push((lambda, outcome));
    }
    let competition = select_winner(per_lambda.clone());

    let per_lambda_optimal = per_lambda
        .iter()
        .map(|(_, outcome)| outcome.matches_quality(&exact))
        .collect();
    let competition_optimal = competition.winner.matches_quality(&exact);
    Ok(TrialRecord {
        trial,
        cost_seed,
        budget: budget.value(),
        exact,
        per_lambda,
        competition: competition.winner,
        competition_lambda: competition.winner_lambda,
        per_lambda_optimal,
        competition_optimal,
    })
}

/// Minimum, maximum, and mean of one statistic across trials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatRange {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

fn stat_range(values: impl Iterator<Item = f64> + Clone) -> StatRange {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values {
        min = min.min(v);
        max = max.max(v);
        sum += v;
        count += 1;
    }
    StatRange {
        min,
        max,
        mean: sum / count as f64,
    }
}

/// How often one grid value tied the exact optimum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaStat {
    pub lambda: f64,
    pub probability: f64,
}

/// Aggregates over a record list: exact-search effort, result sizes, and
/// how often each method matched the exact optimum on (size, cost).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    /// Exact-search step counts across trials.
    pub steps: StatRange,
    /// Exact result subset sizes across trials.
    pub subset_size: StatRange,
    /// Optimality frequency per grid value, in grid order.
    pub per_lambda: Vec<LambdaStat>,
    /// Frequency for λ = 0 (plain information gain), when the grid has it.
    pub unweighted_probability: Option<f64>,
    /// The grid value with the highest frequency (earliest wins ties).
    pub best_lambda: f64,
    pub best_lambda_probability: f64,
    pub competition_probability: f64,
    pub mean_exact_seconds: f64,
    /// Mean over every single-λ run of every trial.
    pub mean_single_lambda_seconds: f64,
    /// Mean per-trial total across the grid: what a whole competition
    /// costs.
    pub mean_competition_seconds: f64,
}

/// Aggregates a nonempty record list produced by [`run_trials`].
pub fn summarize(records: &[TrialRecord]) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let trials = records.len();
    let steps = stat_range(records.iter().map(|r| r.exact.steps as f64));
    let subset_size = stat_range(records.iter().map(|r| r.exact.subset.len() as f64));

    let grid: Vec<f64> = records[0].per_lambda.iter().map(|(l, _)| *l).collect();
    for record in records {
        let same = record.per_lambda.len() == grid.len()
            && record.per_lambda.iter().zip(&grid).all(|((l, _), g)| l == g);
        if !same {
            return Err(Error::InvalidTrialConfig(
                "records disagree on the lambda grid".into(),
            ));
        }
    }
    let per_lambda: Vec<LambdaStat> = grid
        .iter()
        .enumerate()
        .map(|(i, &lambda)| {
            let hits = records.iter().filter(|r| r.per_lambda_optimal[i]).count();
            LambdaStat {
                lambda,
                probability: hits as f64 / trials as f64,
            }
        })
        .collect();
    let unweighted_probability = per_lambda
        .iter()
        .find(|s| s.lambda == 0.0)
        .map(|s| s.probability);
    let best = per_lambda
        .iter()
        .fold(per_lambda[0], |best, &s| {
            if s.probability > best.probability {
                s
            } else {
                best
            }
        });
    let competition_hits = records.iter().filter(|r| r.competition_optimal).count();

    let mean_exact_seconds = records
        .iter()
        .map(|r| r.exact.elapsed.as_secs_f64())
        .sum::<f64>()
        / trials as f64;
    let lambda_runs: usize = records.iter().map(|r| r.per_lambda.len()).sum();
    let lambda_total: f64 = records
        .iter()
        .flat_map(|r| r.per_lambda.iter())
        .map(|(_, o)| o.elapsed.as_secs_f64())
        .sum();
    let mean_competition_seconds = records
        .iter()
        .map(|r| {
            r.per_lambda
                .iter()
                .map(|(_, o)| o.elapsed)
                .sum::<Duration>()
                .as_secs_f64()
        })
        .sum::<f64>()
        / trials as f64;

    Ok(Summary {
        trials,
        steps,
        subset_size,
        per_lambda,
        unweighted_probability,
        best_lambda: best.lambda,
        best_lambda_probability: best.probability,
        competition_probability: competition_hits as f64 / trials as f64,
        mean_exact_seconds,
        mean_single_lambda_seconds: lambda_total / lambda_runs as f64,
        mean_competition_seconds,
    })
}

/// On-disk report flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Writes the records and summary under `destination` and returns the
/// paths written.
///
/// CSV produces three files: `trials.csv` (one row per trial: trial,
/// seed, m, the exact result, then size/cost/optimal per grid value, then
/// the competition result — no timing columns, so identical runs produce
/// identical bytes), `lambda_probabilities.csv` (one row per grid value),
/// and `summary.csv` (field, value). JSON produces `trials.json` and
/// `summary.json` mirroring the same data.
pub fn emit_report(
    records: &[TrialRecord],
    summary: &Summary,
    format: ReportFormat,
    destination: impl AsRef<Path>,
) -> Result<Vec<PathBuf>> {
    let destination = destination.as_ref();
    std::fs::create_dir_all(destination).map_err(|e| Error::io(destination, e))?;
    match format {
        ReportFormat::Csv => {
            let trials = destination.join("trials.csv");
            write_trials_csv(records, &trials)?;
            let lambdas = destination.join("lambda_probabilities.csv");
            write_lambda_csv(summary, &lambdas)?;
            let sum = destination.join("summary.csv");
            write_summary_csv(summary, &sum)?;
            Ok(vec![trials, lambdas, sum])
        }
        ReportFormat::Json => {
            let trials = destination.join("trials.json");
            let file = std::fs::File::create(&trials).map_err(|e| Error::io(&trials, e))?;
            serde_json::to_writer_pretty(std::io::BufWriter::new(file), records)
                .map_err(|e| Error::Parse(e.to_string()))?;
            let sum = destination.join("summary.json");
            let file = std::fs::File::create(&sum).map_err(|e| Error::io(&sum, e))?;
            serde_json::to_writer_pretty(std::io::BufWriter::new(file), summary)
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(vec![trials, sum])
        }
    }
}

fn write_trials_csv(records: &[TrialRecord], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse(format!("{other:?}")),
    })?;
    let grid: Vec<f64> = records
        .first()
        .map(|r| r.per_lambda.iter().map(|(l, _)| *l).collect())
        .unwrap_or_default();
    let mut header = vec![
        "trial".to_string(),
        "seed".to_string(),
        "m".to_string(),
        "exact_pos".to_string(),
        "exact_cost".to_string(),
        "exact_steps".to_string(),
    ];
    for lambda in &grid {
        header.push(format!("lambda_{lambda}_pos"));
        header.push(format!("lambda_{lambda}_cost"));
        header.push(format!("lambda_{lambda}_optimal"));
    }
    header.extend([
        "competition_pos".to_string(),
        "competition_cost".to_string(),
        "competition_optimal".to_string(),
    ]);
    writer
        .write_record(&header)
        .map_err(|e| Error::Parse(e.to_string()))?;
    for record in records {
        let mut row = vec![
            record.trial.to_string(),
            record.cost_seed.to_string(),
            format_cost(record.budget),
            record.exact.pos_size.to_string(),
            format_cost(record.exact.cost),
            record.exact.steps.to_string(),
        ];
        for (i, (_, outcome)) in record.per_lambda.iter().enumerate() {
            row.push(outcome.pos_size.to_string());
            row.push(format_cost(outcome.cost));
            row.push(record.per_lambda_optimal[i].to_string());
        }
        row.push(record.competition.pos_size.to_string());
        row.push(format_cost(record.competition.cost));
        row.push(record.competition_optimal.to_string());
        writer
            .write_record(&row)
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn write_lambda_csv(summary: &Summary, path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse(format!("{other:?}")),
    })?;
    writer
        .write_record(["lambda", "probability"])
        .map_err(|e| Error::Parse(e.to_string()))?;
    for stat in &summary.per_lambda {
        writer
            .write_record([stat.lambda.to_string(), stat.probability.to_string()])
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn write_summary_csv(summary: &Summary, path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse(format!("{other:?}")),
    })?;
    let mut rows: Vec<(String, String)> = vec![
        ("trials".into(), summary.trials.to_string()),
        ("steps_min".into(), summary.steps.min.to_string()),
        ("steps_max".into(), summary.steps.max.to_string()),
        ("steps_mean".into(), summary.steps.mean.to_string()),
        ("subset_size_min".into(), summary.subset_size.min.to_string()),
        ("subset_size_max".into(), summary.subset_size.max.to_string()),
        ("subset_size_mean".into(), summary.subset_size.mean.to_string()),
    ];
    for stat in &summary.per_lambda {
        rows.push((
            format!("optimal_probability_lambda_{}", stat.lambda),
            stat.probability.to_string(),
        ));
    }
    if let Some(p) = summary.unweighted_probability {
        rows.push(("unweighted_probability".into(), p.to_string()));
    }
    rows.push(("best_lambda".into(), summary.best_lambda.to_string()));
    rows.push((
        "best_lambda_probability".into(),
        summary.best_lambda_probability.to_string(),
    ));
    rows.push((
        "competition_probability".into(),
        summary.competition_probability.to_string(),
    ));
    rows.push((
        "mean_exact_seconds".into(),
        summary.mean_exact_seconds.to_string(),
    ));
    rows.push((
        "mean_single_lambda_seconds".into(),
        summary.mean_single_lambda_seconds.to_string(),
    ));
    rows.push((
        "mean_competition_seconds".into(),
        summary.mean_competition_seconds.to_string(),
    ));
    writer
        .write_record(["field", "value"])
        .map_err(|e| Error::Parse(e.to_string()))?;
    for (field, value) in rows {
        writer
            .write_record([field, value])
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// One solver result with names resolved, as written by machine-readable
/// front ends and read back by [`SolveReport::from_json`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDocument {
    pub subset: Vec<String>,
    pub pos_size: usize,
    pub cost: f64,
    pub coincides_with_mtr: bool,
    pub steps: u64,
    pub elapsed_seconds: f64,
}

impl OutcomeDocument {
    pub fn new(outcome: &SearchOutcome, system: &DecisionSystem) -> Self {
        OutcomeDocument {
            subset: outcome
                .subset
                .names(system)
                .into_iter()
                .map(|s| s.to_string())
                .collect(),
            pos_size: outcome.pos_size,
            cost: outcome.cost,
            coincides_with_mtr: outcome.coincides_with_mtr,
            steps: outcome.steps,
            elapsed_seconds: outcome.elapsed.as_secs_f64(),
        }
    }

    /// Equality ignoring the timing field.
    pub fn same_result(&self, other: &OutcomeDocument) -> bool {
        self.subset == other.subset
            && self.pos_size == other.pos_size
            && self.cost == other.cost
            && self.coincides_with_mtr == other.coincides_with_mtr
            && self.steps == other.steps
    }
}

/// The machine-readable result document for one solve invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: String,
    pub budget: f64,
    pub result: OutcomeDocument,
    /// The λ the result came from, for heuristic and competition runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner_lambda: Option<f64>,
    /// Per-λ breakdown for competition runs; empty otherwise.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_lambda: Vec<(f64, OutcomeDocument)>,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
