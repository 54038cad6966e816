//! Alpha-fair selection policies and group-parity analysis.
//!
//! The library solves the problem of selecting a fixed number of individuals
//! to maximize the alpha-fairness social welfare function, in two forms:
//!
//! - a discrete form over explicit populations, where the optimum is the set
//!   of individuals with the largest welfare differentials
//!   ([`selection::greedy_select`]), checked against an exhaustive oracle;
//! - a continuous two-group form where benefits slide linearly within each
//!   group, solved in closed form or by bisection
//!   ([`group_model::alpha_fair_rates`]).
//!
//! On top of the continuous model, [`parity`] decides whether the optimal
//! policy at a given alpha achieves demographic parity, equalized odds, or
//! predictive rate parity, and searches for the alpha achieving demographic
//! parity. [`scenarios`] bundles three representative parameterizations and
//! produces plot-ready sweep tables.
//!
//! Grid sweeps and the exhaustive oracle parallelize with rayon by default;
//! build with `--no-default-features` for the sequential fallback. Either
//! way, outputs are deterministic.

pub mod error;
pub mod group_model;
mod numeric;
mod par;
pub mod parity;
pub mod scenarios;
pub mod selection;
pub mod swf;

pub use error::{Error, Result};
pub use group_model::{
    alpha_fair_rates, classify_case, complement_rate, feasible_rate_range, marginal_benefit,
    group_differential, sample_population, CaseLabel, GroupParams, RateSolution, TwoGroupModel,
};
pub use parity::{
    demographic_parity_alpha, parity_alpha_curve, parity_report, rho, sweep_sigma_parity,
    ParityAlphaOutcome, ParityMetric, ParityReport, QualificationRates, SigmaParityRow,
    DEFAULT_ALPHA_CEILING, DEFAULT_PARITY_TOL,
};
pub use scenarios::{
    builtin_scenario, default_alpha_grid, default_sigma_grid, figure5_table, sweep_alpha_table,
    Figure5Row, ScenarioOverrides, ScenarioSpec, SweepPoint, SweepRow,
};
pub use selection::{
    audit, brute_force_select, greedy_select, EmpiricalParityReport, Individual, SelectionResult,
    BRUTE_FORCE_MAX,
};
pub use swf::{alpha_welfare, welfare_differential, Alpha, UtilityPair};
