//! Continuous two-group selection model.
//!
//! Selection benefits slide linearly within each group from a maximum down to
//! a minimum, baselines are constant per group, and the protected group's
//! baseline is strictly lower. Selecting within each group in decreasing
//! benefit order, the alpha-fair policy reduces to a pair of group selection
//! rates `(S, s)` tied by the quota constraint
//! `(1 - beta) * S + beta * s = sigma`. One group's marginal welfare
//! differential may dominate across the whole feasible range (the boundary
//! cases), or the two differentials cross and the optimum equalizes them,
//! which is solved here by bisection.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::bisect_sign_change;
use crate::parity::QualificationRates;
use crate::selection::Individual;
use crate::swf::{differential_raw, Alpha, UtilityPair};

/// Sliding benefit scale and constant baseline of one group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupParams {
    benefit_max: f64,
    benefit_min: f64,
    baseline: f64,
}

impl GroupParams {
    /// Requires `benefit_min < benefit_max`, a positive baseline, and
    /// `benefit_min + baseline >= 0` so no admissible selection rate drives a
    /// selected utility negative.
    pub fn new(benefit_min: f64, benefit_max: f64, baseline: f64) -> Result<Self> {
        if !benefit_min.is_finite() || !benefit_max.is_finite() || !baseline.is_finite() {
            return Err(Error::Domain("group parameters must be finite".to_string()));
        }
        if benefit_min >= benefit_max {
            return Err(Error::Domain(format!(
                "benefit scale needs benefit_min < benefit_max, got [{benefit_min}, {benefit_max}]"
            )));
        }
        if baseline <= 0.0 {
            return Err(Error::Domain(format!(
                "baseline utility must be positive, got {baseline}"
            )));
        }
        if benefit_min + baseline < 0.0 {
            return Err(Error::Domain(format!(
                "worst selected utility benefit_min + baseline = {} is negative",
                benefit_min + baseline
            )));
        }
        Ok(GroupParams {
            benefit_max,
            benefit_min,
            baseline,
        })
    }

    pub fn benefit_max(&self) -> f64 {
        self.benefit_max
    }

    pub fn benefit_min(&self) -> f64 {
        self.benefit_min
    }

    pub fn baseline(&self) -> f64 {
        self.baseline
    }

    /// Selection rate beyond which the marginal individual is harmed
    /// (marginal benefit nonpositive); 1 when no such rate exists.
    pub fn harm_threshold(&self) -> f64 {
        if self.benefit_min >= 0.0 {
            1.0
        } else if self.benefit_max <= 0.0 {
            0.0
        } else {
            (self.benefit_max / (self.benefit_max - self.benefit_min)).clamp(0.0, 1.0)
        }
    }
}

/// Full population description: both groups, the protected fraction `beta`,
/// and the overall selection rate `sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoGroupModel {
    nonprotected: GroupParams,
    protected: GroupParams,
    beta: f64,
    sigma: f64,
}

impl TwoGroupModel {
    pub fn new(
        nonprotected: GroupParams,
        protected: GroupParams,
        beta: f64,
        sigma: f64,
    ) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::Domain(format!(
                "protected population fraction must lie in (0,1), got {beta}"
            )));
        }
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::Domain(format!(
                "overall selection rate must lie in (0,1), got {sigma}"
            )));
        }
        if nonprotected.baseline <= protected.baseline {
            return Err(Error::Domain(format!(
                "the model assumes a strictly lower protected baseline, got {} vs {}",
                nonprotected.baseline, protected.baseline
            )));
        }
        Ok(TwoGroupModel {
            nonprotected,
            protected,
            beta,
            sigma,
        })
    }

    pub fn nonprotected(&self) -> &GroupParams {
        &self.nonprotected
    }

    pub fn protected_group(&self) -> &GroupParams {
        &self.protected
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Same groups and beta at a different overall selection rate.
    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        TwoGroupModel::new(self.nonprotected, self.protected, self.beta, sigma)
    }
}

/// Which regime the optimum fell in: `A` when the nonprotected differential
/// dominates across the feasible range, `B` when the protected one does, and
/// `C` when they cross and the optimum equalizes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    A,
    B,
    C,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseLabel::A => write!(f, "A"),
            CaseLabel::B => write!(f, "B"),
            CaseLabel::C => write!(f, "C"),
        }
    }
}

/// The alpha-fair selection-rate pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSolution {
    /// Fraction of the nonprotected group selected (S).
    pub nonprotected_rate: f64,
    /// Fraction of the protected group selected (s).
    pub protected_rate: f64,
    pub case: CaseLabel,
}

// Endpoint differential comparisons treat gaps within this width as ties.
const CASE_TIE_WIDTH: f64 = 1e-12;

// The crossing-point bisection runs essentially to float adjacency; the
// interval is guaranteed far below 1e-10 and the equalized differentials
// match to the gap slope times the final interval.
const RATE_BISECT_TOL: f64 = 1e-15;
const BISECT_MAX_ITER: usize = 200;

/// Benefit of the marginal individual at the given selection rate: the
/// linear interpolation from `benefit_max` at rate 0 down to `benefit_min`
/// at rate 1.
pub fn marginal_benefit(group: &GroupParams, rate: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::InvalidArgument(format!(
            "selection rate must lie in [0,1], got {rate}"
        )));
    }
    Ok(benefit_at(group, rate))
}

fn benefit_at(group: &GroupParams, rate: f64) -> f64 {
    (1.0 - rate) * group.benefit_max + rate * group.benefit_min
}

/// Welfare differential of the group's marginal individual at the given
/// selection rate. Monotone decreasing in the rate.
pub fn group_differential(group: &GroupParams, rate: f64, alpha: Alpha) -> Result<f64> {
    let benefit = marginal_benefit(group, rate)?;
    if benefit + group.baseline < 0.0 {
        return Err(Error::Domain(format!(
            "marginal utility {} at rate {rate} is negative",
            benefit + group.baseline
        )));
    }
    Ok(differential_raw(benefit, group.baseline, alpha))
}

/// Range `[S_min, S_max]` the nonprotected rate can take while both group
/// rates stay in `[0,1]` under the quota constraint.
pub fn feasible_rate_range(model: &TwoGroupModel) -> (f64, f64) {
    let (beta, sigma) = (model.beta, model.sigma);
    let s_min = ((sigma - beta) / (1.0 - beta)).max(0.0);
    let s_max = (sigma / (1.0 - beta)).min(1.0);
    (s_min, s_max)
}

/// Protected rate forced by the quota constraint at the given nonprotected
/// rate.
pub fn complement_rate(model: &TwoGroupModel, nonprotected_rate: f64) -> Result<f64> {
    let (lo, hi) = feasible_rate_range(model);
    const SLACK: f64 = 1e-12;
    if nonprotected_rate < lo - SLACK || nonprotected_rate > hi + SLACK {
        return Err(Error::InvalidArgument(format!(
            "nonprotected rate {nonprotected_rate} outside the feasible range [{lo}, {hi}]"
        )));
    }
    Ok(complement_unchecked(model, nonprotected_rate))
}

fn complement_unchecked(model: &TwoGroupModel, nonprotected_rate: f64) -> f64 {
    ((model.sigma - (1.0 - model.beta) * nonprotected_rate) / model.beta).clamp(0.0, 1.0)
}

// Differential gap along the constraint: nonprotected minus protected, as a
// function of the nonprotected rate. Monotone decreasing. Both differentials
// can reach -inf at a zero marginal utility; an exact tie (including
// inf == inf) counts as zero.
fn gap_along_constraint(model: &TwoGroupModel, nonprotected_rate: f64, alpha: Alpha) -> f64 {
    let protected_rate = complement_unchecked(model, nonprotected_rate);
    let d_np = differential_raw(
        benefit_at(&model.nonprotected, nonprotected_rate),
        model.nonprotected.baseline,
        alpha,
    );
    let d_p = differential_raw(
        benefit_at(&model.protected, protected_rate),
        model.protected.baseline,
        alpha,
    );
    if d_np == d_p {
        0.0
    } else {
        d_np - d_p
    }
}

/// Compare the group differentials at both ends of the feasible range.
///
/// Exact ties at both endpoints classify as the crossing case, where any
/// feasible point is optimal. The reverse sign pattern (protected dominating
/// at `S_min` but not `S_max`) contradicts monotonicity and reports an
/// internal error.
pub fn classify_case(model: &TwoGroupModel, alpha: Alpha) -> Result<CaseLabel> {
    let (s_lo, s_hi) = feasible_rate_range(model);
    let g_lo = gap_along_constraint(model, s_lo, alpha);
    let g_hi = gap_along_constraint(model, s_hi, alpha);
    if g_lo < -CASE_TIE_WIDTH && g_hi > CASE_TIE_WIDTH {
        return Err(Error::Internal(format!(
            "differential gap rose along the constraint: {g_lo} at S_min, {g_hi} at S_max"
        )));
    }
    Ok(if g_lo > CASE_TIE_WIDTH && g_hi < -CASE_TIE_WIDTH {
        CaseLabel::C
    } else if g_lo > CASE_TIE_WIDTH {
        CaseLabel::A
    } else if g_hi < -CASE_TIE_WIDTH {
        CaseLabel::B
    } else {
        CaseLabel::C
    })
}

/// Alpha-fair selection-rate pair `(S*, s*)`.
///
/// The dominated cases take the closed forms at the range boundary; the
/// crossing case solves for the rate equalizing the two group differentials
/// by bisection.
pub fn alpha_fair_rates(model: &TwoGroupModel, alpha: Alpha) -> Result<RateSolution> {
    let case = classify_case(model, alpha)?;
    let (beta, sigma) = (model.beta, model.sigma);
    let (s_lo, s_hi) = feasible_rate_range(model);
    let (nonprotected_rate, protected_rate) = match case {
        CaseLabel::A => {
            let big = (sigma / (1.0 - beta)).min(1.0);
            let small = (sigma / beta) * (1.0 - ((1.0 - beta) / sigma).min(1.0));
            (big, small.clamp(0.0, 1.0))
        }
        CaseLabel::B => {
            let small = (sigma / beta).min(1.0);
            let big = (sigma / (1.0 - beta)) * (1.0 - (beta / sigma).min(1.0));
            (big.clamp(0.0, 1.0), small)
        }
        CaseLabel::C => {
            let root = bisect_sign_change(
                s_lo,
                s_hi,
                |rate| gap_along_constraint(model, rate, alpha),
                RATE_BISECT_TOL,
                BISECT_MAX_ITER,
            );
            (root, complement_unchecked(model, root))
        }
    };
    Ok(RateSolution {
        nonprotected_rate: nonprotected_rate.clamp(s_lo, s_hi),
        protected_rate,
        case,
    })
}

/// Discretize the model into `n` individuals.
///
/// Group sizes follow `beta` (rounded to the nearest count, both groups
/// nonempty); within each group the benefits form a deterministic grid,
/// equally spaced over the benefit scale including both endpoints, in
/// descending order. The seed only permutes the assigned identifiers. When
/// qualification rates are given, the top fraction of each group by benefit
/// is flagged qualified.
pub fn sample_population(
    model: &TwoGroupModel,
    n: usize,
    seed: u64,
    qual: Option<&QualificationRates>,
) -> Result<Vec<Individual>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "population of {n} cannot represent two groups"
        )));
    }
    let n_protected = (model.beta * n as f64).round() as usize;
    if n_protected == 0 || n_protected >= n {
        return Err(Error::InvalidArgument(format!(
            "population of {n} at beta {} leaves one group empty",
            model.beta
        )));
    }
    let n_nonprotected = n - n_protected;

    let mut ids: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ids.shuffle(&mut rng);
    let width = (n - 1).max(1).ilog10() as usize + 1;

    let mut population = Vec::with_capacity(n);
    let mut next_id = ids.into_iter();
    let mut emit_group = |group: &GroupParams, count: usize, protected: bool, qualified_rate: Option<f64>| {
        let qualified_count = qualified_rate
            .map(|r| (r * count as f64).round() as usize)
            .unwrap_or(0)
            .min(count);
        for j in 0..count {
            let fraction = if count == 1 {
                0.5
            } else {
                j as f64 / (count - 1) as f64
            };
            let benefit = benefit_at(group, fraction);
            let id = format!("i{:0width$}", next_id.next().expect("id pool sized to n"));
            population.push(Individual {
                id,
                utility: UtilityPair::new(benefit, group.baseline)?,
                protected,
                qualified: j < qualified_count,
            });
        }
        Ok::<(), Error>(())
    };
    emit_group(
        &model.nonprotected,
        n_nonprotected,
        false,
        qual.map(|q| q.nonprotected()),
    )?;
    emit_group(
        &model.protected,
        n_protected,
        true,
        qual.map(|q| q.protected_rate()),
    )?;
    Ok(population)
}
