//! Parity analysis of alpha-fair policies in the continuous model.
//!
//! For a given alpha the optimal rate pair either satisfies or violates each
//! of the three group parity metrics; this module evaluates the metrics, and
//! solves the inverse problem of finding the alpha (if any) that achieves
//! demographic parity. Equalized odds and predictive rate parity also admit
//! closed-form characterizations in terms of the qualification rates, which
//! are exposed as an independent route for cross-checking the metric-gap
//! verdicts.

use crate::error::{Error, Result};
use crate::group_model::{
    alpha_fair_rates, feasible_rate_range, marginal_benefit, CaseLabel, RateSolution,
    TwoGroupModel,
};
use crate::numeric::bisect_sign_change;
use crate::par;
use crate::swf::Alpha;

/// Qualified fractions of the two groups, each in (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualificationRates {
    nonprotected: f64,
    protected: f64,
}

impl QualificationRates {
    pub fn new(nonprotected: f64, protected: f64) -> Result<Self> {
        for (label, value) in [("nonprotected", nonprotected), ("protected", protected)] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(Error::Domain(format!(
                    "{label} qualified fraction must lie in (0,1], got {value}"
                )));
            }
        }
        Ok(QualificationRates {
            nonprotected,
            protected,
        })
    }

    pub fn nonprotected(&self) -> f64 {
        self.nonprotected
    }

    pub fn protected_rate(&self) -> f64 {
        self.protected
    }
}

/// Metric values and parity verdicts at one alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityReport {
    pub rates: RateSolution,
    pub odds_ratio_nonprotected: f64,
    pub odds_ratio_protected: f64,
    pub predictive_rate_nonprotected: f64,
    pub predictive_rate_protected: f64,
    pub demographic_parity: bool,
    pub equalized_odds: bool,
    pub predictive_rate_parity: bool,
    /// Selected fraction over qualified fraction of the whole population.
    pub rho: f64,
}

/// Result of searching for a parity-achieving alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParityAlphaOutcome {
    /// Alpha at which the two marginal differentials equalize at the common
    /// rate sigma.
    Root(f64),
    /// No sign change below the search ceiling; a larger ceiling may still
    /// reveal a root.
    NoneBelowCeiling { ceiling: f64 },
    /// Structurally impossible: parity would select protected individuals
    /// who are harmed. `harm_cap` is the protected rate where the marginal
    /// benefit reaches zero.
    StructuralNone { harm_cap: f64 },
}

/// Which metric a gap curve tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityMetric {
    Demographic,
    EqualizedOdds,
    PredictiveRate,
}

/// Default tolerance on metric gaps.
pub const DEFAULT_PARITY_TOL: f64 = 1e-6;

/// Default ceiling for parity-alpha searches. Differentials underflow for
/// very large alpha; 64 is ample for every qualitative regime of the model.
pub const DEFAULT_ALPHA_CEILING: f64 = 64.0;

const PARITY_BISECT_TOL: f64 = 1e-6;
const PARITY_BISECT_MAX_ITER: usize = 200;

/// Ratio of the overall selection rate to the overall qualification rate.
pub fn rho(model: &TwoGroupModel, qual: &QualificationRates) -> f64 {
    model.sigma() / qualified_fraction(model, qual)
}

fn qualified_fraction(model: &TwoGroupModel, qual: &QualificationRates) -> f64 {
    (1.0 - model.beta()) * qual.nonprotected + model.beta() * qual.protected
}

/// Odds ratios (selection rate among the qualified) for both groups, given
/// that qualified individuals hold the largest benefits within each group.
pub fn odds_ratios(
    nonprotected_rate: f64,
    protected_rate: f64,
    qual: &QualificationRates,
) -> (f64, f64) {
    (
        (nonprotected_rate / qual.nonprotected).min(1.0),
        (protected_rate / qual.protected).min(1.0),
    )
}

/// Predictive rates (qualified fraction among the selected) for both groups.
/// A group selecting nobody has a vacuously perfect predictive rate of 1.
pub fn predictive_rates(
    nonprotected_rate: f64,
    protected_rate: f64,
    qual: &QualificationRates,
) -> (f64, f64) {
    let one = |selected: f64, qualified: f64| {
        if selected == 0.0 {
            1.0
        } else {
            (qualified / selected).min(1.0)
        }
    };
    (
        one(nonprotected_rate, qual.nonprotected),
        one(protected_rate, qual.protected),
    )
}

/// Evaluate the alpha-fair rates and all three parity metrics at one alpha.
/// Each parity verdict holds when the corresponding metric gap is within
/// `tol`.
pub fn parity_report(
    model: &TwoGroupModel,
    qual: &QualificationRates,
    alpha: Alpha,
    tol: f64,
) -> Result<ParityReport> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "parity tolerance must be positive, got {tol}"
        )));
    }
    let rates = alpha_fair_rates(model, alpha)?;
    let (odds_np, odds_p) = odds_ratios(rates.nonprotected_rate, rates.protected_rate, qual);
    let (pred_np, pred_p) = predictive_rates(rates.nonprotected_rate, rates.protected_rate, qual);
    Ok(ParityReport {
        demographic_parity: (rates.nonprotected_rate - rates.protected_rate).abs() <= tol,
        equalized_odds: (odds_np - odds_p).abs() <= tol,
        predictive_rate_parity: (pred_np - pred_p).abs() <= tol,
        odds_ratio_nonprotected: odds_np,
        odds_ratio_protected: odds_p,
        predictive_rate_nonprotected: pred_np,
        predictive_rate_protected: pred_p,
        rho: rho(model, qual),
        rates,
    })
}

/// Closed-form equalized-odds test: either both groups saturate their
/// qualified fractions, or both selection rates sit on the proportional line
/// through rho without exceeding the qualified fractions.
///
/// Tolerances are calibrated so the test agrees with a metric-gap comparison
/// at the same `tol` away from boundary coincidences.
pub fn equalized_odds_condition(
    model: &TwoGroupModel,
    qual: &QualificationRates,
    rates: &RateSolution,
    tol: f64,
) -> bool {
    let r = rho(model, qual);
    let (q_np, q_p) = (qual.nonprotected, qual.protected);
    let (s_np, s_p) = (rates.nonprotected_rate, rates.protected_rate);
    let (band_np, band_p) = proportional_bands(model, qual, tol);
    let both_saturated = s_np >= q_np * (1.0 - tol) && s_p >= q_p * (1.0 - tol);
    let on_line_below = (s_np - q_np * r).abs() <= band_np
        && (s_p - q_p * r).abs() <= band_p
        && s_np <= q_np * (1.0 + tol)
        && s_p <= q_p * (1.0 + tol);
    both_saturated || on_line_below
}

/// Closed-form predictive-rate-parity test: either both selection rates stay
/// within the qualified fractions, or both sit on the proportional line
/// through rho at or above them.
pub fn predictive_rate_condition(
    model: &TwoGroupModel,
    qual: &QualificationRates,
    rates: &RateSolution,
    tol: f64,
) -> bool {
    let r = rho(model, qual);
    let (q_np, q_p) = (qual.nonprotected, qual.protected);
    let (s_np, s_p) = (rates.nonprotected_rate, rates.protected_rate);
    // in the saturated branch the metric is 1/rho-scaled, widening the band
    let (band_np, band_p) = proportional_bands(model, qual, tol * r * r);
    let both_within = s_np <= q_np * (1.0 + tol) && s_p <= q_p * (1.0 + tol);
    let on_line_above = (s_np - q_np * r).abs() <= band_np
        && (s_p - q_p * r).abs() <= band_p
        && s_np >= q_np * (1.0 - tol)
        && s_p >= q_p * (1.0 - tol);
    both_within || on_line_above
}

// Width of the |S - Q*rho| band equivalent to a ratio-gap of `tol`, using
// the quota constraint to tie the two deviations together.
fn proportional_bands(model: &TwoGroupModel, qual: &QualificationRates, tol: f64) -> (f64, f64) {
    let total = qualified_fraction(model, qual);
    let common = tol * qual.nonprotected * qual.protected / total;
    (common * model.beta(), common * (1.0 - model.beta()))
}

// Gap between the two marginal differentials at the common rate sigma.
fn demographic_gap(model: &TwoGroupModel, alpha: Alpha) -> f64 {
    use crate::swf::differential_raw;
    let sigma = model.sigma();
    let np = model.nonprotected();
    let p = model.protected_group();
    let benefit = |g: &crate::group_model::GroupParams, rate: f64| {
        (1.0 - rate) * g.benefit_max() + rate * g.benefit_min()
    };
    let d_np = differential_raw(benefit(np, sigma), np.baseline(), alpha);
    let d_p = differential_raw(benefit(p, sigma), p.baseline(), alpha);
    if d_np == d_p {
        0.0
    } else {
        d_np - d_p
    }
}

/// Find the alpha whose fair policy selects both groups at the common rate
/// sigma, i.e. achieves demographic parity.
///
/// Parity forces the crossing case, so the search bisects the differential
/// gap at sigma over `[0, alpha_max]`. When the protected marginal benefit
/// at sigma is nonpositive, parity would require selecting harmed
/// individuals and no alpha can achieve it; that is reported as structural
/// nonexistence, distinct from a missing sign change below the ceiling.
pub fn demographic_parity_alpha(
    model: &TwoGroupModel,
    alpha_max: f64,
) -> Result<ParityAlphaOutcome> {
    if !(alpha_max > 0.0 && alpha_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "alpha ceiling must be a positive real, got {alpha_max}"
        )));
    }
    let sigma = model.sigma();
    let protected_benefit = marginal_benefit(model.protected_group(), sigma)?;
    let nonprotected_benefit = marginal_benefit(model.nonprotected(), sigma)?;
    if protected_benefit <= 0.0 && nonprotected_benefit > 0.0 {
        return Ok(ParityAlphaOutcome::StructuralNone {
            harm_cap: model.protected_group().harm_threshold(),
        });
    }
    let gap = |a: f64| demographic_gap(model, Alpha::new(a).expect("grid alphas are nonnegative"));
    let g0 = gap(0.0);
    if g0 == 0.0 {
        return Ok(ParityAlphaOutcome::Root(0.0));
    }
    let g1 = gap(alpha_max);
    if (g0 > 0.0) == (g1 > 0.0) && g1 != 0.0 {
        return Ok(ParityAlphaOutcome::NoneBelowCeiling { ceiling: alpha_max });
    }
    let root = bisect_sign_change(0.0, alpha_max, gap, PARITY_BISECT_TOL, PARITY_BISECT_MAX_ITER);
    Ok(ParityAlphaOutcome::Root(root))
}

/// Gap of the chosen metric (nonprotected minus protected) along the
/// alpha-fair curve, one value per grid point. Sign changes bracket
/// parity-achieving alphas; a stretch of exact zeros marks a whole interval
/// achieving parity (both ratios saturated).
pub fn parity_alpha_curve(
    model: &TwoGroupModel,
    qual: &QualificationRates,
    metric: ParityMetric,
    alpha_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if alpha_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(
            "alpha grid must be sorted ascending".to_string(),
        ));
    }
    par::map_range(alpha_grid.len(), |i| {
        let a = Alpha::new(alpha_grid[i])?;
        let rates = alpha_fair_rates(model, a)?;
        let gap = match metric {
            ParityMetric::Demographic => rates.nonprotected_rate - rates.protected_rate,
            ParityMetric::EqualizedOdds => {
                let (np, p) = odds_ratios(rates.nonprotected_rate, rates.protected_rate, qual);
                np - p
            }
            ParityMetric::PredictiveRate => {
                let (np, p) =
                    predictive_rates(rates.nonprotected_rate, rates.protected_rate, qual);
                np - p
            }
        };
        Ok((alpha_grid[i], gap))
    })
    .into_iter()
    .collect()
}

/// One row of a sigma sweep: the parity-alpha outcome at that selection
/// rate, or the error that prevented it.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaParityRow {
    pub sigma: f64,
    pub outcome: Option<ParityAlphaOutcome>,
    pub error: Option<String>,
}

/// Apply [`demographic_parity_alpha`] across a grid of selection rates,
/// holding the groups and beta of the template fixed. Per-row failures are
/// recorded in the row; the sweep never aborts.
pub fn sweep_sigma_parity(
    template: &TwoGroupModel,
    sigma_grid: &[f64],
    alpha_max: f64,
) -> Vec<SigmaParityRow> {
    par::map_range(sigma_grid.len(), |i| {
        let sigma = sigma_grid[i];
        match template
            .with_sigma(sigma)
            .and_then(|m| demographic_parity_alpha(&m, alpha_max))
        {
            Ok(outcome) => SigmaParityRow {
                sigma,
                outcome: Some(outcome),
                error: None,
            },
            Err(e) => SigmaParityRow {
                sigma,
                outcome: None,
                error: Some(e.to_string()),
            },
        }
    })
}

/// Certificate data for a demographic-parity root: the residual gap at the
/// root and the solved rate pair.
pub fn demographic_parity_certificate(
    model: &TwoGroupModel,
    alpha: Alpha,
) -> Result<(f64, RateSolution)> {
    let gap = demographic_gap(model, alpha);
    let rates = alpha_fair_rates(model, alpha)?;
    Ok((gap, rates))
}

/// The solved case at a demographic-parity root must be the crossing case;
/// exposed for tests asserting the boundary cases never yield parity.
pub fn boundary_cases_exclude_parity(model: &TwoGroupModel, alpha: Alpha) -> Result<bool> {
    let rates = alpha_fair_rates(model, alpha)?;
    let parity = (rates.nonprotected_rate - rates.protected_rate).abs() <= DEFAULT_PARITY_TOL;
    let (lo, hi) = feasible_rate_range(model);
    let interior = rates.nonprotected_rate > lo && rates.nonprotected_rate < hi;
    Ok(!parity || (rates.case == CaseLabel::C && interior))
}
