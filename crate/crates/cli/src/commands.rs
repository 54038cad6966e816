//! Argument definitions and command dispatch.

use std::path::{Path, PathBuf};

use alphafair_core as core;
use alphafair_core::{
    alpha_fair_rates, audit, builtin_scenario, demographic_parity_alpha, figure5_table,
    greedy_select, parity_report, sample_population, sweep_alpha_table, Alpha,
    EmpiricalParityReport, ParityAlphaOutcome, QualificationRates, ScenarioOverrides,
    ScenarioSpec, SelectionResult, TwoGroupModel, DEFAULT_ALPHA_CEILING, DEFAULT_PARITY_TOL,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{resolve, ConfigMap};
use crate::output::{Cell, OutputFormat, Table};
use crate::population::{read_population, write_population};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Io(m)
            | CliError::Parse(m)
            | CliError::Domain(m)
            | CliError::Internal(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Parse(_) => 3,
            CliError::Domain(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<core::Error> for CliError {
    fn from(e: core::Error) -> Self {
        match e {
            core::Error::Domain(m) => CliError::Domain(m),
            core::Error::InvalidArgument(m) => CliError::Usage(m),
            core::Error::Internal(m) => CliError::Internal(m),
        }
    }
}

// Model construction from flags: any core rejection is an argument problem.
fn usage(e: core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "alphafair",
    version,
    about = "Alpha-fair selection policies and group-parity analysis"
)]
pub struct Cli {
    /// Flat `key = value` config file mirroring the flag names; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Thread count for parallel sweeps (output order is unaffected).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output format for emitted tables.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    /// Write the emitted table here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Select m individuals maximizing alpha welfare and audit the result
    Select(SelectArgs),
    /// Print the alpha-fair selection-rate pair of a two-group model
    Rates(RatesArgs),
    /// Find the alpha whose fair policy achieves demographic parity
    ParityAlpha(ParityAlphaArgs),
    /// Parity metrics and verdicts at one alpha
    Report(ReportArgs),
    /// Rates and parity metrics over an alpha grid
    Sweep(SweepArgs),
    /// Instantiate a built-in scenario and run a subcommand on it
    Scenario(ScenarioArgs),
}

/// Two-group model options; either `--scenario` (1, 2, or 3) with optional
/// overrides, or the full set of explicit parameters.
#[derive(Args, Debug, Default)]
pub struct ModelArgs {
    /// Built-in scenario id (1, 2, or 3).
    #[arg(long)]
    pub scenario: Option<u8>,
    /// Protected fraction of the population, in (0,1).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Overall selection rate, in (0,1).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Smallest nonprotected selection benefit.
    #[arg(long = "A-min")]
    pub benefit_min_nonprotected: Option<f64>,
    /// Largest nonprotected selection benefit.
    #[arg(long = "A-max")]
    pub benefit_max_nonprotected: Option<f64>,
    /// Nonprotected baseline utility.
    #[arg(long = "B")]
    pub baseline_nonprotected: Option<f64>,
    /// Smallest protected selection benefit.
    #[arg(long = "a-min")]
    pub benefit_min_protected: Option<f64>,
    /// Largest protected selection benefit.
    #[arg(long = "a-max")]
    pub benefit_max_protected: Option<f64>,
    /// Protected baseline utility.
    #[arg(long = "b")]
    pub baseline_protected: Option<f64>,
    /// Qualified fraction of the nonprotected group, in (0,1].
    #[arg(long = "Q")]
    pub qualified_nonprotected: Option<f64>,
    /// Qualified fraction of the protected group, in (0,1].
    #[arg(long = "q")]
    pub qualified_protected: Option<f64>,
}

pub struct ResolvedModel {
    pub model: TwoGroupModel,
    pub qual: Option<QualificationRates>,
    pub spec: Option<ScenarioSpec>,
}

impl ModelArgs {
    fn resolve(&self, cfg: &ConfigMap) -> Result<ResolvedModel, CliError> {
        let scenario = resolve(self.scenario, cfg.u8("scenario"))?;
        let sigma = resolve(self.sigma, cfg.f64("sigma"))?;
        let beta = resolve(self.beta, cfg.f64("beta"))?;
        let a_min_np = resolve(self.benefit_min_nonprotected, cfg.f64("A-min"))?;
        let a_max_np = resolve(self.benefit_max_nonprotected, cfg.f64("A-max"))?;
        let base_np = resolve(self.baseline_nonprotected, cfg.f64("B"))?;
        let a_min_p = resolve(self.benefit_min_protected, cfg.f64("a-min"))?;
        let a_max_p = resolve(self.benefit_max_protected, cfg.f64("a-max"))?;
        let base_p = resolve(self.baseline_protected, cfg.f64("b"))?;
        let q_np = resolve(self.qualified_nonprotected, cfg.f64("Q"))?;
        let q_p = resolve(self.qualified_protected, cfg.f64("q"))?;

        if let Some(id) = scenario {
            let sigma = sigma
                .ok_or_else(|| CliError::Usage("--sigma is required with --scenario".into()))?;
            let overrides = ScenarioOverrides {
                beta,
                nonprotected_baseline: base_np,
                protected_baseline: base_p,
                nonprotected_benefits: benefit_pair(a_min_np, a_max_np, "A")?,
                protected_benefits: benefit_pair(a_min_p, a_max_p, "a")?,
                qualified_nonprotected: q_np,
                qualified_protected: q_p,
                ..Default::default()
            };
            let spec = builtin_scenario(id, sigma, Some(&overrides)).map_err(usage)?;
            Ok(ResolvedModel {
                model: spec.model.clone(),
                qual: Some(spec.qual),
                spec: Some(spec),
            })
        } else {
            let mut missing = Vec::new();
            let mut need = |name: &'static str, v: Option<f64>| {
                if v.is_none() {
                    missing.push(name);
                }
                v.unwrap_or(0.0)
            };
            let beta = need("--beta", beta);
            let sigma = need("--sigma", sigma);
            let a_min_np = need("--A-min", a_min_np);
            let a_max_np = need("--A-max", a_max_np);
            let base_np = need("--B", base_np);
            let a_min_p = need("--a-min", a_min_p);
            let a_max_p = need("--a-max", a_max_p);
            let base_p = need("--b", base_p);
            if !missing.is_empty() {
                return Err(CliError::Usage(format!(
                    "missing model options: {} (or use --scenario)",
                    missing.join(", ")
                )));
            }
            let model = TwoGroupModel::new(
                core::GroupParams::new(a_min_np, a_max_np, base_np).map_err(usage)?,
                core::GroupParams::new(a_min_p, a_max_p, base_p).map_err(usage)?,
                beta,
                sigma,
            )
            .map_err(usage)?;
            let qual = match (q_np, q_p) {
                (Some(np), Some(p)) => Some(QualificationRates::new(np, p).map_err(usage)?),
                (None, None) => None,
                _ => {
                    return Err(CliError::Usage(
                        "--Q and --q must be given together".into(),
                    ))
                }
            };
            Ok(ResolvedModel {
                model,
                qual,
                spec: None,
            })
        }
    }
}

fn benefit_pair(
    min: Option<f64>,
    max: Option<f64>,
    which: &str,
) -> Result<Option<(f64, f64)>, CliError> {
    match (min, max) {
        (Some(lo), Some(hi)) => Ok(Some((lo, hi))),
        (None, None) => Ok(None),
        _ => Err(CliError::Usage(format!(
            "--{which}-min and --{which}-max must be given together"
        ))),
    }
}

#[derive(Args, Debug)]
pub struct SelectArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Population file (.csv or .json); omit to sample from a model.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Number of individuals to select.
    #[arg(long)]
    pub m: Option<usize>,
    /// Inequality-aversion parameter.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Population size when sampling from a model.
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed for the sampled identifier permutation.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write the population used (handy with sampling).
    #[arg(long)]
    pub save_population: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RatesArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ParityAlphaArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Search ceiling for the parity alpha.
    #[arg(long = "alpha-max")]
    pub alpha_max: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Tolerance on metric gaps.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// First alpha of the grid.
    #[arg(long, default_value_t = 0.0)]
    pub alpha_start: f64,
    /// Last alpha of the grid.
    #[arg(long, default_value_t = 10.0)]
    pub alpha_stop: f64,
    /// Grid step.
    #[arg(long, default_value_t = 0.05)]
    pub alpha_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioCmd {
    Rates,
    ParityAlpha,
    Report,
    Sweep,
    Figure5,
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    /// Built-in scenario id (1, 2, or 3); figure5 defaults to all three.
    #[arg(long)]
    pub id: Option<u8>,
    /// Overall selection rate.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// What to run on the instantiated scenario.
    #[arg(long, value_enum)]
    pub cmd: ScenarioCmd,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "alpha-max")]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => ConfigMap::load(path)?,
        None => ConfigMap::default(),
    };
    let threads = resolve(cli.threads, cfg.usize("threads"))?;
    if let Some(n) = threads {
        configure_threads(n);
    }
    let format = cli.format;
    let output = cli.output.as_deref();
    match &cli.command {
        Command::Select(args) => run_select(args, &cfg, format, output),
        Command::Rates(args) => run_rates(args, &cfg, format, output),
        Command::ParityAlpha(args) => run_parity_alpha(args, &cfg, format, output),
        Command::Report(args) => run_report(args, &cfg, format, output),
        Command::Sweep(args) => run_sweep(args, &cfg, format, output),
        Command::Scenario(args) => run_scenario(args, &cfg, format, output),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(n: usize) {
    // ignore failure: the global pool can only be configured once
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_n: usize) {}

fn parse_alpha(value: Option<f64>, cfg: &ConfigMap) -> Result<Alpha, CliError> {
    let raw = resolve(value, cfg.f64("alpha"))?
        .ok_or_else(|| CliError::Usage("--alpha is required".into()))?;
    Alpha::new(raw).map_err(usage)
}

fn run_select(
    args: &SelectArgs,
    cfg: &ConfigMap,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let alpha = parse_alpha(args.alpha, cfg)?;
    let m_flag = resolve(args.m, cfg.usize("m"))?;
    let (population, default_m) = match &args.input {
        Some(path) => (read_population(path)?, None),
        None => {
            let resolved = args.model.resolve(cfg)?;
            let n = resolve(args.n, cfg.usize("n"))?.ok_or_else(|| {
                CliError::Usage("either --input or a model with --n is required".into())
            })?;
            let seed = resolve(args.seed, cfg.u64("seed"))?.unwrap_or(0);
            let population =
                sample_population(&resolved.model, n, seed, resolved.qual.as_ref()).map_err(usage)?;
            let default_m = (resolved.model.sigma() * n as f64).round() as usize;
            (population, Some(default_m))
        }
    };
    let m = m_flag
        .or(default_m)
        .ok_or_else(|| CliError::Usage("--m is required with --input".into()))?;

    let result = greedy_select(&population, m, alpha)?;
    let report = audit(&population, &result)?;
    if let Some(path) = &args.save_population {
        write_population(path, &population)?;
    }
    select_table(alpha, &result, &report).emit(format, output)
}

fn select_table(alpha: Alpha, result: &SelectionResult, report: &EmpiricalParityReport) -> Table {
    let mut table = Table::new(vec![
        "quota",
        "alpha",
        "welfare",
        "selected_ids",
        "selection_rate_nonprotected",
        "selection_rate_protected",
        "odds_ratio_nonprotected",
        "odds_ratio_protected",
        "predictive_rate_nonprotected",
        "predictive_rate_protected",
    ]);
    table.push(vec![
        Cell::Num(result.quota() as f64),
        Cell::Num(alpha.value()),
        Cell::Num(result.welfare()),
        Cell::Str(result.selected_ids().join(";")),
        Cell::OptNum(report.selection_rate_nonprotected),
        Cell::OptNum(report.selection_rate_protected),
        Cell::OptNum(report.odds_ratio_nonprotected),
        Cell::OptNum(report.odds_ratio_protected),
        Cell::OptNum(report.predictive_rate_nonprotected),
        Cell::OptNum(report.predictive_rate_protected),
    ]);
    table
}

fn run_rates(
    args: &RatesArgs,
    cfg: &ConfigMap,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let alpha = parse_alpha(args.alpha, cfg)?;
    let resolved = args.model.resolve(cfg)?;
    let rates = alpha_fair_rates(&resolved.model, alpha)?;
    println!(
        "S={:.3}, s={:.3}, case={}",
        rates.nonprotected_rate, rates.protected_rate, rates.case
    );
    if output.is_some() {
        let mut table = Table::new(vec!["alpha", "S", "s", "case"]);
        table.push(vec![
            Cell::Num(alpha.value()),
            Cell::Num(rates.nonprotected_rate),
            Cell::Num(rates.protected_rate),
            Cell::Str(rates.case.to_string()),
        ]);
        table.emit(format, output)?;
    }
    Ok(())
}

fn describe_outcome(outcome: &ParityAlphaOutcome) -> String {
    match outcome {
        ParityAlphaOutcome::Root(a) => format!("alpha={a:.6}"),
        ParityAlphaOutcome::NoneBelowCeiling { ceiling } => {
            format!("none (no sign change below alpha-max={ceiling})")
        }
        ParityAlphaOutcome::StructuralNone { harm_cap } => {
            format!("none (structural: harm cap at s={harm_cap:.4})")
        }
    }
}

fn outcome_cells(outcome: &ParityAlphaOutcome) -> (Cell, Cell, Cell) {
    match outcome {
        ParityAlphaOutcome::Root(a) => (Cell::Str("root".into()), Cell::Num(*a), Cell::Empty),
        ParityAlphaOutcome::NoneBelowCeiling { .. } => {
            (Cell::Str("none-below-ceiling".into()), Cell::Empty, Cell::Empty)
        }
        ParityAlphaOutcome::StructuralNone { harm_cap } => (
            Cell::Str("structural-none".into()),
            Cell::Empty,
            Cell::Num(*harm_cap),
        ),
    }
}

fn parity_alpha_for(
    model: &TwoGroupModel,
    alpha_max: f64,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let outcome = demographic_parity_alpha(model, alpha_max)?;
    println!("{}", describe_outcome(&outcome));
    if output.is_some() {
        let mut table = Table::new(vec!["sigma", "alpha_max", "status", "alpha", "harm_cap"]);
        let (status, alpha, harm_cap) = outcome_cells(&outcome);
        table.push(vec![
            Cell::Num(model.sigma()),
            Cell::Num(alpha_max),
            status,
            alpha,
            harm_cap,
        ]);
        table.emit(format, output)?;
    }
    Ok(())
}

fn run_parity_alpha(
    args: &ParityAlphaArgs,
    cfg: &ConfigMap,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let resolved = args.model.resolve(cfg)?;
    let alpha_max =
        resolve(args.alpha_max, cfg.f64("alpha-max"))?.unwrap_or(DEFAULT_ALPHA_CEILING);
    parity_alpha_for(&resolved.model, alpha_max, format, output)
}

fn report_for(
    model: &TwoGroupModel,
    qual: &QualificationRates,
    alpha: Alpha,
    tol: f64,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let report = parity_report(model, qual, alpha, tol)?;
    println!(
        "alpha={:.6} rho={:.6}\nS={:.6} s={:.6} case={}\nodds_ratio: nonprotected={:.6} protected={:.6}\npredictive_rate: nonprotected={:.6} protected={:.6}\ndemographic_parity={} equalized_odds={} predictive_rate_parity={}",
        alpha.value(),
        report.rho,
        report.rates.nonprotected_rate,
        report.rates.protected_rate,
        report.rates.case,
        report.odds_ratio_nonprotected,
        report.odds_ratio_protected,
        report.predictive_rate_nonprotected,
        report.predictive_rate_protected,
        report.demographic_parity,
        report.equalized_odds,
        report.predictive_rate_parity,
    );
    if output.is_some() {
        let mut table = Table::new(vec![
            "alpha", "S", "s", "case", "rho", "odds_np", "odds_p", "pred_np", "pred_p",
            "demographic_parity", "equalized_odds", "predictive_rate_parity",
        ]);
        table.push(vec![
            Cell::Num(alpha.value()),
            Cell::Num(report.rates.nonprotected_rate),
            Cell::Num(report.rates.protected_rate),
            Cell::Str(report.rates.case.to_string()),
            Cell::Num(report.rho),
            Cell::Num(report.odds_ratio_nonprotected),
            Cell::Num(report.odds_ratio_protected),
            Cell::Num(report.predictive_rate_nonprotected),
            Cell::Num(report.predictive_rate_protected),
            Cell::Bool(report.demographic_parity),
            Cell::Bool(report.equalized_odds),
            Cell::Bool(report.predictive_rate_parity),
        ]);
        table.emit(format, output)?;
    }
    Ok(())
}

fn run_report(
    args: &ReportArgs,
    cfg: &ConfigMap,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let alpha = parse_alpha(args.alpha, cfg)?;
    let resolved = args.model.resolve(cfg)?;
    let qual = resolved
        .qual
        .ok_or_else(|| CliError::Usage("--Q and --q are required for a parity report".into()))?;
    let tol = resolve(args.tol, cfg.f64("tol"))?.unwrap_or(DEFAULT_PARITY_TOL);
    report_for(&resolved.model, &qual, alpha, tol, format, output)
}

fn sweep_table_rows(spec: &ScenarioSpec) -> Table {
    let mut table = Table::new(vec![
        "alpha", "S", "s", "case", "odds_np", "odds_p", "pred_np", "pred_p", "error",
    ]);
    for row in sweep_alpha_table(spec) {
        match row.point {
            Some(p) => table.push(vec![
                Cell::Num(row.alpha),
                Cell::Num(p.rates.nonprotected_rate),
                Cell::Num(p.rates.protected_rate),
                Cell::Str(p.rates.case.to_string()),
                Cell::Num(p.odds_ratio_nonprotected),
                Cell::Num(p.odds_ratio_protected),
                Cell::Num(p.predictive_rate_nonprotected),
                Cell::Num(p.predictive_rate_protected),
                Cell::Empty,
            ]),
            None => table.push(vec![
                Cell::Num(row.alpha),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Str(row.error.unwrap_or_default()),
            ]),
        }
    }
    table
}

fn run_sweep(
    args: &SweepArgs,
    cfg: &ConfigMap,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let resolved = args.model.resolve(cfg)?;
    let qual = resolved
        .qual
        .ok_or_else(|| CliError::Usage("--Q and --q are required for a sweep".into()))?;
    let spec = match resolved.spec {
        Some(mut spec) => {
            if grid_flags_given(args) {
                spec.alpha_grid = build_grid(args.alpha_start, args.alpha_stop, args.alpha_step)?;
            }
            spec
        }
        None => ScenarioSpec {
            name: "custom".into(),
            model: resolved.model,
            qual,
            alpha_grid: build_grid(args.alpha_start, args.alpha_stop, args.alpha_step)?,
            sigma_list: core::default_sigma_grid(),
        },
    };
    sweep_table_rows(&spec).emit(format, output)
}

fn grid_flags_given(args: &SweepArgs) -> bool {
    args.alpha_start != 0.0 || args.alpha_stop != 10.0 || args.alpha_step != 0.05
}

fn build_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if step <= 0.0 || step.is_nan() || stop < start {
        return Err(CliError::Usage(format!(
            "invalid alpha grid: start={start} stop={stop} step={step}"
        )));
    }
    let count = ((stop - start) / step).round() as usize;
    Ok((0..=count).map(|k| start + k as f64 * step).collect())
}

fn run_scenario(
    args: &ScenarioArgs,
    cfg: &ConfigMap,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let id = resolve(args.id, cfg.u8("scenario"))?;
    let sigma = resolve(args.sigma, cfg.f64("sigma"))?;
    let alpha_max =
        resolve(args.alpha_max, cfg.f64("alpha-max"))?.unwrap_or(DEFAULT_ALPHA_CEILING);
    let tol = resolve(args.tol, cfg.f64("tol"))?.unwrap_or(DEFAULT_PARITY_TOL);

    if args.cmd == ScenarioCmd::Figure5 {
        // sigma is swept from the grid, so the template value is immaterial
        let ids: Vec<u8> = match id {
            Some(i) => vec![i],
            None => vec![1, 2, 3],
        };
        let specs: Vec<ScenarioSpec> = ids
            .into_iter()
            .map(|i| builtin_scenario(i, sigma.unwrap_or(0.5), None).map_err(usage))
            .collect::<Result<_, _>>()?;
        let sigma_grid = specs[0].sigma_list.clone();
        let mut table = Table::new(vec![
            "scenario", "sigma", "status", "alpha", "harm_cap", "error",
        ]);
        for row in figure5_table(&specs, &sigma_grid, alpha_max) {
            let (status, alpha, harm_cap) = match &row.outcome {
                Some(o) => outcome_cells(o),
                None => (Cell::Empty, Cell::Empty, Cell::Empty),
            };
            table.push(vec![
                Cell::Str(row.scenario),
                Cell::Num(row.sigma),
                status,
                alpha,
                harm_cap,
                row.error.map(Cell::Str).unwrap_or(Cell::Empty),
            ]);
        }
        return table.emit(format, output);
    }

    let id = id.ok_or_else(|| CliError::Usage("--id is required".into()))?;
    let sigma = sigma.ok_or_else(|| CliError::Usage("--sigma is required".into()))?;
    let spec = builtin_scenario(id, sigma, None).map_err(usage)?;
    match args.cmd {
        ScenarioCmd::Rates => {
            let alpha = parse_alpha(args.alpha, cfg)?;
            let rates = alpha_fair_rates(&spec.model, alpha)?;
            println!(
                "S={:.3}, s={:.3}, case={}",
                rates.nonprotected_rate, rates.protected_rate, rates.case
            );
            Ok(())
        }
        ScenarioCmd::ParityAlpha => parity_alpha_for(&spec.model, alpha_max, format, output),
        ScenarioCmd::Report => {
            let alpha = parse_alpha(args.alpha, cfg)?;
            report_for(&spec.model, &spec.qual, alpha, tol, format, output)
        }
        ScenarioCmd::Sweep => sweep_table_rows(&spec).emit(format, output),
        ScenarioCmd::Figure5 => unreachable!("handled above"),
    }
}
