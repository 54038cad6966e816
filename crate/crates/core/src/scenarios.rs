//! The three built-in scenarios and the sweep tables derived from them.
//!
//! Scenario 1: protected individuals benefit somewhat less from selection.
//! Scenario 2: some protected individuals benefit more than anyone else.
//! Scenario 3: a sizable share of the protected group is harmed by selection.

use crate::error::{Error, Result};
use crate::group_model::{GroupParams, RateSolution, TwoGroupModel};
use crate::par;
use crate::parity::{
    demographic_parity_alpha, parity_report, ParityAlphaOutcome, QualificationRates,
    DEFAULT_PARITY_TOL,
};
use crate::swf::Alpha;

/// A named model plus the grids its tables sweep over.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub name: String,
    pub model: TwoGroupModel,
    pub qual: QualificationRates,
    pub alpha_grid: Vec<f64>,
    pub sigma_list: Vec<f64>,
}

/// Optional replacements for the built-in defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioOverrides {
    pub beta: Option<f64>,
    pub nonprotected_baseline: Option<f64>,
    pub protected_baseline: Option<f64>,
    /// (benefit_min, benefit_max)
    pub nonprotected_benefits: Option<(f64, f64)>,
    pub protected_benefits: Option<(f64, f64)>,
    pub qualified_nonprotected: Option<f64>,
    pub qualified_protected: Option<f64>,
    pub alpha_grid: Option<Vec<f64>>,
    pub sigma_list: Option<Vec<f64>>,
}

/// Alphas 0 through 10 in steps of 0.05.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..=200).map(|k| k as f64 * 0.05).collect()
}

/// Selection rates 0.05 through 0.95 in steps of 0.01.
pub fn default_sigma_grid() -> Vec<f64> {
    (5..=95).map(|k| k as f64 / 100.0).collect()
}

/// Instantiate one of the three built-in scenarios at the given overall
/// selection rate. Defaults: beta 1/3, baselines 1.0 and 0.5, qualified
/// fractions (0.65, 0.5).
pub fn builtin_scenario(
    which: u8,
    sigma: f64,
    overrides: Option<&ScenarioOverrides>,
) -> Result<ScenarioSpec> {
    let (np_range, p_range) = match which {
        1 => ((0.5, 1.5), (0.2, 1.0)),
        2 => ((0.5, 0.8), (0.2, 1.0)),
        3 => ((0.5, 1.0), (-0.5, 1.0)),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown scenario {other}, expected 1, 2, or 3"
            )))
        }
    };
    let defaults = ScenarioOverrides::default();
    let ov = overrides.unwrap_or(&defaults);
    let (np_min, np_max) = ov.nonprotected_benefits.unwrap_or(np_range);
    let (p_min, p_max) = ov.protected_benefits.unwrap_or(p_range);
    let model = TwoGroupModel::new(
        GroupParams::new(np_min, np_max, ov.nonprotected_baseline.unwrap_or(1.0))?,
        GroupParams::new(p_min, p_max, ov.protected_baseline.unwrap_or(0.5))?,
        ov.beta.unwrap_or(1.0 / 3.0),
        sigma,
    )?;
    let qual = QualificationRates::new(
        ov.qualified_nonprotected.unwrap_or(0.65),
        ov.qualified_protected.unwrap_or(0.5),
    )?;
    Ok(ScenarioSpec {
        name: format!("scenario-{which}"),
        model,
        qual,
        alpha_grid: ov.alpha_grid.clone().unwrap_or_else(default_alpha_grid),
        sigma_list: ov.sigma_list.clone().unwrap_or_else(default_sigma_grid),
    })
}

/// Rates and parity metrics at one grid alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub rates: RateSolution,
    pub odds_ratio_nonprotected: f64,
    pub odds_ratio_protected: f64,
    pub predictive_rate_nonprotected: f64,
    pub predictive_rate_protected: f64,
}

/// One row of an alpha sweep; failed rows carry the error instead.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub point: Option<SweepPoint>,
    pub error: Option<String>,
}

/// One row per grid alpha, in grid order. Rows are computed independently
/// (in parallel when enabled) and the table is identical across runs.
pub fn sweep_alpha_table(spec: &ScenarioSpec) -> Vec<SweepRow> {
    par::map_range(spec.alpha_grid.len(), |i| {
        let alpha = spec.alpha_grid[i];
        let result = Alpha::new(alpha)
            .and_then(|a| parity_report(&spec.model, &spec.qual, a, DEFAULT_PARITY_TOL));
        match result {
            Ok(report) => SweepRow {
                alpha,
                point: Some(SweepPoint {
                    rates: report.rates,
                    odds_ratio_nonprotected: report.odds_ratio_nonprotected,
                    odds_ratio_protected: report.odds_ratio_protected,
                    predictive_rate_nonprotected: report.predictive_rate_nonprotected,
                    predictive_rate_protected: report.predictive_rate_protected,
                }),
                error: None,
            },
            Err(e) => SweepRow {
                alpha,
                point: None,
                error: Some(e.to_string()),
            },
        }
    })
}

/// One row of the parity-alpha-versus-sigma table.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure5Row {
    pub scenario: String,
    pub sigma: f64,
    pub outcome: Option<ParityAlphaOutcome>,
    pub error: Option<String>,
}

/// Parity-achieving alpha per (scenario, sigma) cell, scenarios in input
/// order and sigmas in grid order.
pub fn figure5_table(
    scenarios: &[ScenarioSpec],
    sigma_grid: &[f64],
    alpha_max: f64,
) -> Vec<Figure5Row> {
    let mut rows = Vec::with_capacity(scenarios.len() * sigma_grid.len());
    for spec in scenarios {
        let per_sigma = par::map_range(sigma_grid.len(), |i| {
            let sigma = sigma_grid[i];
            match spec
                .model
                .with_sigma(sigma)
                .and_then(|m| demographic_parity_alpha(&m, alpha_max))
            {
                Ok(outcome) => Figure5Row {
                    scenario: spec.name.clone(),
                    sigma,
                    outcome: Some(outcome),
                    error: None,
                },
                Err(e) => Figure5Row {
                    scenario: spec.name.clone(),
                    sigma,
                    outcome: None,
                    error: Some(e.to_string()),
                },
            }
        });
        rows.extend(per_sigma);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parameters_match_their_definitions() {
        let s1 = builtin_scenario(1, 0.6, None).unwrap();
        assert_eq!(s1.model.nonprotected().benefit_min(), 0.5);
        assert_eq!(s1.model.nonprotected().benefit_max(), 1.5);
        assert_eq!(s1.model.protected_group().benefit_min(), 0.2);
        assert_eq!(s1.model.protected_group().benefit_max(), 1.0);
        assert_eq!(s1.model.nonprotected().baseline(), 1.0);
        assert_eq!(s1.model.protected_group().baseline(), 0.5);
        assert_eq!(s1.qual.nonprotected(), 0.65);
        assert_eq!(s1.qual.protected_rate(), 0.5);
        assert_eq!(s1.alpha_grid.len(), 201);

        let s2 = builtin_scenario(2, 0.25, None).unwrap();
        assert_eq!(s2.model.nonprotected().benefit_max(), 0.8);

        let s3 = builtin_scenario(3, 0.8, None).unwrap();
        assert_eq!(s3.model.protected_group().benefit_min(), -0.5);
    }

    #[test]
    fn unknown_scenario_is_rejected() {
        assert!(builtin_scenario(4, 0.5, None).is_err());
        assert!(builtin_scenario(0, 0.5, None).is_err());
    }

    #[test]
    fn overrides_replace_only_what_they_name() {
        let ov = ScenarioOverrides {
            protected_baseline: Some(0.7),
            ..Default::default()
        };
        let spec = builtin_scenario(1, 0.6, Some(&ov)).unwrap();
        assert_eq!(spec.model.protected_group().baseline(), 0.7);
        assert_eq!(spec.model.nonprotected().baseline(), 1.0);
        assert_eq!(spec.model.protected_group().benefit_max(), 1.0);
    }

    #[test]
    fn sweep_rows_cover_the_grid_in_order() {
        let mut spec = builtin_scenario(1, 0.25, None).unwrap();
        spec.alpha_grid = vec![0.0, 1.0, 2.0];
        let rows = sweep_alpha_table(&spec);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].alpha, 0.0);
        let p0 = rows[0].point.as_ref().unwrap();
        assert!((p0.rates.nonprotected_rate - 0.375).abs() < 1e-9);
        assert!((p0.rates.protected_rate).abs() < 1e-9);
    }

    #[test]
    fn sweep_is_identical_across_runs() {
        let mut spec = builtin_scenario(2, 0.6, None).unwrap();
        spec.alpha_grid = (0..=50).map(|k| k as f64 * 0.2).collect();
        let a = sweep_alpha_table(&spec);
        let b = sweep_alpha_table(&spec);
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.alpha.to_bits(), rb.alpha.to_bits());
            let (pa, pb) = (ra.point.as_ref().unwrap(), rb.point.as_ref().unwrap());
            assert_eq!(
                pa.rates.nonprotected_rate.to_bits(),
                pb.rates.nonprotected_rate.to_bits()
            );
            assert_eq!(
                pa.rates.protected_rate.to_bits(),
                pb.rates.protected_rate.to_bits()
            );
        }
    }

    #[test]
    fn figure5_merges_scenarios_deterministically() {
        let templates = vec![
            builtin_scenario(1, 0.5, None).unwrap(),
            builtin_scenario(3, 0.5, None).unwrap(),
        ];
        let rows = figure5_table(&templates, &[0.6, 0.7], 64.0);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].scenario, "scenario-1");
        assert_eq!(rows[3].scenario, "scenario-3");
        assert!(matches!(
            rows[3].outcome,
            Some(ParityAlphaOutcome::StructuralNone { .. })
        ));
    }
}
