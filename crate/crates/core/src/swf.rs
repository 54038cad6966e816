//! Alpha-fairness social welfare evaluation.
//!
//! The welfare of a utility vector `u` is `sum(u_i^(1-alpha)) / (1-alpha)`
//! for `alpha != 1`, and `sum(ln u_i)` at `alpha = 1`, the limiting case.
//! `alpha = 0` is the utilitarian sum, `alpha = 1` proportional fairness
//! (the Nash bargaining objective), and the maximin criterion is approached
//! as `alpha` grows. All evaluation is in `f64`.

use crate::error::{Error, Result};

/// Width of the interval around 1 inside which the logarithmic form is used.
///
/// The power form divides by `1 - alpha` and loses precision as that factor
/// approaches zero, while its pointwise limit is exactly the log form.
pub const LOG_BRANCH_WIDTH: f64 = 1e-9;

/// Inequality-aversion parameter of the welfare function. Nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Domain(format!(
                "inequality aversion must be a nonnegative real, got {value}"
            )));
        }
        Ok(Alpha(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True when evaluation takes the logarithmic branch.
    pub fn uses_log_form(self) -> bool {
        (self.0 - 1.0).abs() <= LOG_BRANCH_WIDTH
    }
}

/// Utility parameters of one individual: a selection benefit received on top
/// of a positive baseline held either way. The benefit may be negative
/// (selection harms), but the selected utility `benefit + baseline` must not
/// drop below zero, since the welfare function is undefined there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityPair {
    benefit: f64,
    baseline: f64,
}

impl UtilityPair {
    pub fn new(benefit: f64, baseline: f64) -> Result<Self> {
        if !benefit.is_finite() || !baseline.is_finite() {
            return Err(Error::Domain(
                "utility parameters must be finite".to_string(),
            ));
        }
        if baseline <= 0.0 {
            return Err(Error::Domain(format!(
                "baseline utility must be positive, got {baseline}"
            )));
        }
        if benefit + baseline < 0.0 {
            return Err(Error::Domain(format!(
                "selected utility benefit + baseline = {} is negative",
                benefit + baseline
            )));
        }
        Ok(UtilityPair { benefit, baseline })
    }

    /// Utility gained on selection (may be negative).
    pub fn benefit(self) -> f64 {
        self.benefit
    }

    /// Utility held regardless of the selection decision.
    pub fn baseline(self) -> f64 {
        self.baseline
    }

    /// Utility experienced if selected.
    pub fn selected_utility(self) -> f64 {
        self.benefit + self.baseline
    }
}

/// Alpha-fairness social welfare of a vector of positive utilities.
pub fn alpha_welfare(utilities: &[f64], alpha: Alpha) -> Result<f64> {
    if utilities.is_empty() {
        return Err(Error::Domain(
            "alpha welfare of an empty utility vector is undefined".to_string(),
        ));
    }
    for &u in utilities {
        if u <= 0.0 || u.is_nan() {
            return Err(Error::Domain(format!(
                "alpha fairness is not defined for nonpositive utilities, got {u}"
            )));
        }
    }
    Ok(total_welfare(utilities.iter().copied(), alpha))
}

/// Welfare gain from selecting an individual: the difference between the
/// welfare contribution of the selected utility and of the baseline alone.
///
/// Strictly increasing in the benefit for fixed baseline and alpha, and has
/// the sign of the benefit.
pub fn welfare_differential(utility: UtilityPair, alpha: Alpha) -> f64 {
    differential_raw(utility.benefit, utility.baseline, alpha)
}

/// Unvalidated welfare sum, in input order. Zero utilities evaluate to the
/// IEEE limit (finite for alpha < 1, -inf otherwise); callers guarantee no
/// negative utilities.
pub(crate) fn total_welfare(utilities: impl Iterator<Item = f64>, alpha: Alpha) -> f64 {
    if alpha.uses_log_form() {
        utilities.map(f64::ln).sum()
    } else {
        let e = 1.0 - alpha.value();
        utilities.map(|u| u.powf(e)).sum::<f64>() / e
    }
}

/// Differential on raw parts. A zero benefit returns exactly 0 to avoid
/// cancellation error in the subtraction; a zero selected utility yields the
/// IEEE limit (-inf for alpha >= 1).
pub(crate) fn differential_raw(benefit: f64, baseline: f64, alpha: Alpha) -> f64 {
    if benefit == 0.0 {
        return 0.0;
    }
    if alpha.uses_log_form() {
        (benefit + baseline).ln() - baseline.ln()
    } else {
        let e = 1.0 - alpha.value();
        ((benefit + baseline).powf(e) - baseline.powf(e)) / e
    }
}
