//! `subreduct`: inspect decision tables, generate cost files, solve
//! budgeted feature selection, and run benchmark suites.
//!
//! Exit codes: 0 on success, 1 for data or solver errors, 2 for flag
//! misuse, 3 for file errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use subreduct::bench::{
    emit_report, run_trials, summarize, BudgetPolicy, CostSource, OutcomeDocument, ReportFormat,
    SolveReport, Summary, TrialConfig, EXACT_FEATURE_WARN_LIMIT,
};
use subreduct::cost::{format_cost, generate_uniform_costs};
use subreduct::exact::{backtracking, brute_force, derive_budget};
use subreduct::heuristic::{competition, lambda_greedy, LambdaGrid};
use subreduct::partition::positive_region_size;
use subreduct::reduct::is_consistent;
use subreduct::{
    Budget, CostSchedule, DecisionColumn, DecisionSystem, FeatureSubset, LoadOptions,
};

#[derive(Parser)]
#[command(
    name = "subreduct",
    version,
    about = "Budget-constrained feature selection on nominal decision tables"
)]
struct Cli {
    /// Worker threads for parallel benchmark trials (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a decision table.
    Inspect(InspectArgs),
    /// Draw uniform integer feature costs and write them as a cost file.
    GenCosts(GenCostsArgs),
    /// Select features under a test-cost budget.
    Solve(SolveArgs),
    /// Run seeded benchmark trials and write reports.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Decision table: delimited text with a header row.
    #[arg(value_name = "DATA")]
    data: PathBuf,
    /// Field delimiter (a single byte, or \t).
    #[arg(long, default_value = ",", value_parser = parse_delimiter, value_name = "CHAR")]
    delimiter: u8,
    /// Decision column name (default: the last column).
    #[arg(long, value_name = "COLUMN")]
    decision: Option<String>,
    /// Column to ignore, e.g. a row identifier; repeat for several.
    #[arg(long = "drop", value_name = "COLUMN")]
    drop: Vec<String>,
}

impl InputArgs {
    fn load(&self) -> anyhow::Result<DecisionSystem> {
        let options = LoadOptions {
            delimiter: self.delimiter,
            decision: self
                .decision
                .clone()
                .map(DecisionColumn::Named)
                .unwrap_or_default(),
            drop_columns: self.drop.clone(),
        };
        DecisionSystem::load_path(&self.data, &options)
            .with_context(|| format!("loading {}", self.data.display()))
    }
}

fn parse_delimiter(raw: &str) -> Result<u8, String> {
    match raw.as_bytes() {
        [b] => Ok(*b),
        [b'\\', b't'] => Ok(b'\t'),
        _ => Err(r"delimiter must be one byte (or \t)".into()),
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("costsource").required(true).args(["costs", "cost_seed"])))]
struct CostArgs {
    /// Cost file: `feature,cost` rows covering every feature.
    #[arg(long, value_name = "FILE")]
    costs: Option<PathBuf>,
    /// Generate per-feature integer costs from this seed instead.
    #[arg(long, value_name = "SEED")]
    cost_seed: Option<u64>,
    /// Smallest generated cost.
    #[arg(long, default_value_t = 1, requires = "cost_seed", value_name = "N")]
    low: u32,
    /// Largest generated cost.
    #[arg(long, default_value_t = 100, requires = "cost_seed", value_name = "N")]
    high: u32,
}

impl CostArgs {
    fn schedule(&self, system: &DecisionSystem) -> anyhow::Result<CostSchedule> {
        match (&self.costs, self.cost_seed) {
            (Some(path), _) => CostSchedule::load_path(path, system)
                .with_context(|| format!("loading {}", path.display())),
            (None, Some(seed)) => {
                Ok(generate_uniform_costs(system, seed, self.low, self.high)?)
            }
            (None, None) => unreachable!("clap enforces one cost source"),
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("budgetsource").required(true).args(["budget", "budget_factor"])))]
struct BudgetArgs {
    /// Absolute test-cost budget.
    #[arg(long, value_name = "M")]
    budget: Option<f64>,
    /// Budget as a fraction of the cheapest fully-discerning subset's cost.
    #[arg(long, value_name = "F")]
    budget_factor: Option<f64>,
}

impl BudgetArgs {
    fn resolve(
        &self,
        system: &DecisionSystem,
        schedule: &CostSchedule,
    ) -> anyhow::Result<Budget> {
        match (self.budget, self.budget_factor) {
            (Some(value), _) => Ok(Budget::new(value)?),
            (None, Some(factor)) => Ok(derive_budget(system, schedule, factor)?.budget),
            (None, None) => unreachable!("clap enforces one budget source"),
        }
    }
}

#[derive(Args)]
struct InspectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file (default: stdout).
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenCostsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Seed for the cost draw.
    #[arg(long, value_name = "SEED")]
    seed: u64,
    /// Smallest cost.
    #[arg(long, default_value_t = 1, value_name = "N")]
    low: u32,
    /// Largest cost.
    #[arg(long, default_value_t = 100, value_name = "N")]
    high: u32,
    /// Output file (default: stdout).
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    cost: CostArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Method::Competition)]
    method: Method,
    /// Cost-weighting exponent for `--method heuristic`.
    #[arg(long, allow_negative_numbers = true, value_name = "L")]
    lambda: Option<f64>,
    /// Comma-separated λ grid for `--method competition`
    /// (default: 0,-0.25,…,-3).
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        value_name = "L,L,…"
    )]
    lambdas: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file (default: stdout).
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of trials.
    #[arg(long, default_value_t = 100, value_name = "N")]
    trials: usize,
    /// Master seed; each trial mixes in its index.
    #[arg(long, value_name = "SEED")]
    seed: u64,
    /// Fixed cost file for every trial (default: per-trial generated costs).
    #[arg(long, value_name = "FILE")]
    costs: Option<PathBuf>,
    /// Smallest generated cost.
    #[arg(long, default_value_t = 1, conflicts_with = "costs", value_name = "N")]
    low: u32,
    /// Largest generated cost.
    #[arg(long, default_value_t = 100, conflicts_with = "costs", value_name = "N")]
    high: u32,
    /// Absolute budget for every trial.
    #[arg(long, conflicts_with = "budget_factor", value_name = "M")]
    budget: Option<f64>,
    /// Budget factor applied per trial to the cheapest fully-discerning cost.
    #[arg(long, default_value_t = 0.8, value_name = "F")]
    budget_factor: f64,
    /// Comma-separated λ grid (default: 0,-0.25,…,-3).
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        value_name = "L,L,…"
    )]
    lambdas: Option<Vec<f64>>,
    /// Report format; `text` prints a summary instead of writing files.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Report directory.
    #[arg(long, short, default_value = "reports", value_name = "DIR")]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Backtrack,
    Brute,
    Heuristic,
    Competition,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Backtrack => "backtrack",
            Method::Brute => "brute",
            Method::Heuristic => "heuristic",
            Method::Competition => "competition",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            usage_error("--jobs must be at least 1");
        }
        // Ignore failure: the pool can only be configured once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(classify(&error))
        }
    }
}

/// Maps an error chain to the documented exit codes: 3 when the root
/// trouble is a file operation, 1 otherwise.
fn classify(error: &anyhow::Error) -> u8 {
    for cause in error.chain() {
        if let Some(lib) = cause.downcast_ref::<subreduct::Error>() {
            return if lib.is_io() { 3 } else { 1 };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 3;
        }
    }
    1
}

/// Rejects a semantically invalid flag combination with clap's usage
/// diagnostics and exit code.
fn usage_error(message: &str) -> ! {
    Cli::command()
        .error(ErrorKind::ArgumentConflict, message)
        .exit()
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Inspect(args) => inspect(args),
        Command::GenCosts(args) => gen_costs(args),
        Command::Solve(args) => solve(args),
        Command::Bench(args) => bench(args),
    }
}

/// Writes `content` to the file in `output`, or to stdout.
fn deliver(output: Option<&PathBuf>, content: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn inspect(args: InspectArgs) -> anyhow::Result<()> {
    let system = args.input.load()?;
    let everything = FeatureSubset::from_indices(0..system.num_features());
    let pos = positive_region_size(&system, &everything)?;
    let consistent = is_consistent(&system);

    let content = match args.format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("objects: {}\n", system.num_objects()));
            out.push_str(&format!("features: {}\n", system.num_features()));
            for feature in system.features() {
                out.push_str(&format!(
                    "  {}: {} values\n",
                    feature.name(),
                    feature.domain_size()
                ));
            }
            out.push_str(&format!(
                "decision: {} ({} values)\n",
                system.decision_name(),
                system.decision_domain_size()
            ));
            out.push_str(&format!("consistent: {consistent}\n"));
            out.push_str(&format!(
                "positive region: {pos} of {}\n",
                system.num_objects()
            ));
            out
        }
        Format::Json => {
            let features: Vec<_> = system
                .features()
                .iter()
                .map(|f| serde_json::json!({"name": f.name(), "values": f.domain_size()}))
                .collect();
            let doc = serde_json::json!({
                "objects": system.num_objects(),
                "features": features,
                "decision": {
                    "name": system.decision_name(),
                    "values": system.decision_domain_size(),
                },
                "consistent": consistent,
                "positive_region": pos,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["field", "value"])?;
            writer.write_record(["objects", &system.num_objects().to_string()])?;
            writer.write_record(["features", &system.num_features().to_string()])?;
            for feature in system.features() {
                writer.write_record([
                    &format!("values:{}", feature.name()),
                    &feature.domain_size().to_string(),
                ])?;
            }
            writer.write_record(["decision", system.decision_name()])?;
            writer.write_record([
                "decision_values",
                &system.decision_domain_size().to_string(),
            ])?;
            writer.write_record(["consistent", &consistent.to_string()])?;
            writer.write_record(["positive_region", &pos.to_string()])?;
            String::from_utf8(writer.into_inner()?)?
        }
    };
    deliver(args.output.as_ref(), &content)
}

fn gen_costs(args: GenCostsArgs) -> anyhow::Result<()> {
    let system = args.input.load()?;
    let schedule = generate_uniform_costs(&system, args.seed, args.low, args.high)?;
    let mut buffer = Vec::new();
    schedule.write(&mut buffer, &system)?;
    deliver(args.output.as_ref(), std::str::from_utf8(&buffer)?)
}

fn solve(args: SolveArgs) -> anyhow::Result<()> {
    if args.method != Method::Heuristic && args.lambda.is_some() {
        usage_error("--lambda only applies to --method heuristic");
    }
    if args.method != Method::Competition && args.lambdas.is_some() {
        usage_error("--lambdas only applies to --method competition");
    }
    let system = args.input.load()?;
    let schedule = args.cost.schedule(&system)?;
    let budget = args.budget.resolve(&system, &schedule)?;

    let mut winner_lambda = None;
    let mut per_lambda = Vec::new();
    let outcome = match args.method {
        Method::Backtrack => backtracking(&system, &schedule, budget)?,
        Method::Brute => brute_force(&system, &schedule, budget)?,
        Method::Heuristic => {
            let lambda = args.lambda.unwrap_or(-1.0);
            winner_lambda = Some(lambda);
            lambda_greedy(&system, &schedule, budget, lambda)?
        }
        Method::Competition => {
            let grid = match &args.lambdas {
                Some(values) => LambdaGrid::new(values.clone())?,
                None => LambdaGrid::default(),
            };
            let result = competition(&system, &schedule, budget, &grid)?;
            winner_lambda = Some(result.winner_lambda);
            per_lambda = result
                .per_lambda
                .iter()
                .map(|(l, o)| (*l, OutcomeDocument::new(o, &system)))
                .collect();
            result.winner
        }
    };

    let report = SolveReport {
        method: args.method.name().to_string(),
        budget: budget.value(),
        result: OutcomeDocument::new(&outcome, &system),
        winner_lambda,
        per_lambda,
    };
    let content = match args.format {
        Format::Text => render_solve_text(&report, system.num_objects()),
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => render_solve_csv(&report)?,
    };
    deliver(args.output.as_ref(), &content)
}

fn render_solve_text(report: &SolveReport, objects: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("method: {}", report.method));
    if let Some(lambda) = report.winner_lambda {
        out.push_str(&format!(" (λ = {lambda})"));
    }
    out.push('\n');
    out.push_str(&format!("budget: {}\n", format_cost(report.budget)));
    let doc = &report.result;
    out.push_str(&format!("subset: {}\n", doc.subset.join(", ")));
    out.push_str(&format!("pos_size: {} of {objects}\n", doc.pos_size));
    out.push_str(&format!("cost: {}\n", format_cost(doc.cost)));
    out.push_str(&format!("steps: {}\n", doc.steps));
    out.push_str(&format!("coincides_with_mtr: {}\n", doc.coincides_with_mtr));
    out.push_str(&format!(
        "elapsed: {:?}\n",
        Duration::from_secs_f64(doc.elapsed_seconds)
    ));
    if !report.per_lambda.is_empty() {
        out.push_str("per-λ results:\n");
        for (lambda, entry) in &report.per_lambda {
            out.push_str(&format!(
                "  λ {lambda}: subset {} | pos {} | cost {}\n",
                entry.subset.join(", "),
                entry.pos_size,
                format_cost(entry.cost)
            ));
        }
    }
    out
}

fn render_solve_csv(report: &SolveReport) -> anyhow::Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["field", "value"])?;
    writer.write_record(["method", &report.method])?;
    if let Some(lambda) = report.winner_lambda {
        writer.write_record(["lambda", &lambda.to_string()])?;
    }
    writer.write_record(["budget", &format_cost(report.budget)])?;
    let doc = &report.result;
    writer.write_record(["subset", &doc.subset.join("; ")])?;
    writer.write_record(["pos_size", &doc.pos_size.to_string()])?;
    writer.write_record(["cost", &format_cost(doc.cost)])?;
    writer.write_record(["steps", &doc.steps.to_string()])?;
    writer.write_record(["coincides_with_mtr", &doc.coincides_with_mtr.to_string()])?;
    writer.write_record(["elapsed_seconds", &doc.elapsed_seconds.to_string()])?;
    for (lambda, entry) in &report.per_lambda {
        writer.write_record([
            &format!("lambda_{lambda}_result"),
            &format!(
                "subset {}; pos {}; cost {}",
                entry.subset.join(" "),
                entry.pos_size,
                format_cost(entry.cost)
            ),
        ])?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

fn bench(args: BenchArgs) -> anyhow::Result<()> {
    let system = args.input.load()?;
    if system.num_features() > EXACT_FEATURE_WARN_LIMIT {
        eprintln!(
            "warning: {} features; the exact pass enumerates subsets and may not finish",
            system.num_features()
        );
    }
    let cost_source = match &args.costs {
        Some(path) => CostSource::Fixed(
            CostSchedule::load_path(path, &system)
                .with_context(|| format!("loading {}", path.display()))?,
        ),
        None => CostSource::Generated {
            low: args.low,
            high: args.high,
        },
    };
    let budget_policy = match args.budget {
        Some(value) => BudgetPolicy::Fixed(value),
        None => BudgetPolicy::Factor(args.budget_factor),
    };
    let lambdas = match &args.lambdas {
        Some(values) => LambdaGrid::new(values.clone())?,
        None => LambdaGrid::default(),
    };
    let config = TrialConfig {
        trials: args.trials,
        master_seed: args.seed,
        cost_source,
        budget_policy,
        lambdas,
    };
    let records = run_trials(&system, &config)?;
    let summary = summarize(&records)?;

    match args.format {
        Format::Text => print!("{}", render_summary_text(&summary)),
        Format::Csv | Format::Json => {
            let format = if args.format == Format::Csv {
                ReportFormat::Csv
            } else {
                ReportFormat::Json
            };
            let files = emit_report(&records, &summary, format, &args.output)?;
            for file in files {
                println!("wrote {}", file.display());
            }
            println!(
                "{} trials; competition optimality {:.3}",
                summary.trials, summary.competition_probability
            );
        }
    }
    Ok(())
}

fn render_summary_text(summary: &Summary) -> String {
    let mut out = String::new();
    out.push_str(&format!("trials: {}\n", summary.trials));
    out.push_str(&format!(
        "exact steps: min {} / max {} / mean {:.1}\n",
        summary.steps.min, summary.steps.max, summary.steps.mean
    ));
    out.push_str(&format!(
        "exact subset size: min {} / max {} / mean {:.2}\n",
        summary.subset_size.min, summary.subset_size.max, summary.subset_size.mean
    ));
    out.push_str("optimality by λ:\n");
    for stat in &summary.per_lambda {
        out.push_str(&format!("  λ {}: {:.3}\n", stat.lambda, stat.probability));
    }
    out.push_str(&format!(
        "best λ: {} ({:.3})\n",
        summary.best_lambda, summary.best_lambda_probability
    ));
    out.push_str(&format!(
        "competition: {:.3}\n",
        summary.competition_probability
    ));
    out.push_str(&format!(
        "mean seconds: exact {:.6} / single λ {:.6} / competition {:.6}\n",
        summary.mean_exact_seconds,
        summary.mean_single_lambda_seconds,
        summary.mean_competition_seconds
    ));
    out
}
