//! Discrete selection under a quota.
//!
//! Maximizing the alpha-fairness welfare subject to selecting exactly `m`
//! individuals is solved by picking the `m` largest welfare differentials.
//! An exhaustive enumerator over all size-`m` subsets is provided as an
//! independent check, along with an empirical audit of the three group
//! parity metrics for a concrete selection.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::par;
use crate::swf::{total_welfare, welfare_differential, Alpha, UtilityPair};

/// One member of the population.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    /// Opaque identifier; must be unique within a population for audits.
    pub id: String,
    pub utility: UtilityPair,
    /// Membership in the protected group.
    pub protected: bool,
    /// Qualification status.
    pub qualified: bool,
}

impl Individual {
    pub fn new(
        id: impl Into<String>,
        benefit: f64,
        baseline: f64,
        protected: bool,
        qualified: bool,
    ) -> Result<Self> {
        Ok(Individual {
            id: id.into(),
            utility: UtilityPair::new(benefit, baseline)?,
            protected,
            qualified,
        })
    }
}

/// Outcome of a quota selection: the chosen identifiers and the achieved
/// welfare over the full induced utility vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    selected_ids: Vec<String>,
    quota: usize,
    welfare: f64,
}

impl SelectionResult {
    fn new(selected_ids: Vec<String>, quota: usize, welfare: f64) -> Self {
        debug_assert_eq!(selected_ids.len(), quota);
        SelectionResult {
            selected_ids,
            quota,
            welfare,
        }
    }

    pub fn selected_ids(&self) -> &[String] {
        &self.selected_ids
    }

    pub fn quota(&self) -> usize {
        self.quota
    }

    pub fn welfare(&self) -> f64 {
        self.welfare
    }
}

/// Empirical parity rates of a selection, per group. A rate is `None`
/// exactly when its denominator count is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalParityReport {
    /// Fraction of the protected group selected.
    pub selection_rate_protected: Option<f64>,
    /// Fraction of the nonprotected group selected.
    pub selection_rate_nonprotected: Option<f64>,
    /// Fraction of qualified protected individuals selected.
    pub odds_ratio_protected: Option<f64>,
    /// Fraction of qualified nonprotected individuals selected.
    pub odds_ratio_nonprotected: Option<f64>,
    /// Fraction qualified among selected protected individuals.
    pub predictive_rate_protected: Option<f64>,
    /// Fraction qualified among selected nonprotected individuals.
    pub predictive_rate_nonprotected: Option<f64>,
}

/// Largest population accepted by the exhaustive enumerator.
pub const BRUTE_FORCE_MAX: usize = 20;

// Above this mask-space size the enumeration is chunked across threads.
const PARALLEL_MASK_THRESHOLD: u32 = 14;

/// Select the `quota` individuals with the largest welfare differentials.
///
/// Ties are broken by input position, so the result is deterministic. The
/// reported welfare is the alpha welfare of the full induced utility vector
/// (selected individuals at `benefit + baseline`, the rest at `baseline`).
pub fn greedy_select(
    population: &[Individual],
    quota: usize,
    alpha: Alpha,
) -> Result<SelectionResult> {
    if quota > population.len() {
        return Err(Error::InvalidArgument(format!(
            "quota {} exceeds population size {}",
            quota,
            population.len()
        )));
    }
    let deltas = par::map_range(population.len(), |i| {
        welfare_differential(population[i].utility, alpha)
    });
    let mut order: Vec<usize> = (0..population.len()).collect();
    // descending differential, ties by input position: a strict total order
    par::sort_unstable_by(&mut order, |&i, &j| {
        deltas[j]
            .partial_cmp(&deltas[i])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    let chosen: HashSet<usize> = order[..quota].iter().copied().collect();
    let welfare = total_welfare(
        population.iter().enumerate().map(|(i, ind)| {
            if chosen.contains(&i) {
                ind.utility.selected_utility()
            } else {
                ind.utility.baseline()
            }
        }),
        alpha,
    );
    let selected_ids = order[..quota]
        .iter()
        .map(|&i| population[i].id.clone())
        .collect();
    Ok(SelectionResult::new(selected_ids, quota, welfare))
}

/// Exhaustively enumerate all size-`quota` subsets and return one that
/// maximizes the alpha welfare of the induced utility vector.
///
/// Intended as an independent check on [`greedy_select`]; the population is
/// capped at [`BRUTE_FORCE_MAX`]. Welfare ties are broken toward the
/// lexicographically smallest index set, so the result is deterministic even
/// when the enumeration runs in parallel.
pub fn brute_force_select(
    population: &[Individual],
    quota: usize,
    alpha: Alpha,
) -> Result<SelectionResult> {
    let n = population.len();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::InvalidArgument(format!(
            "population size {n} exceeds the exhaustive-enumeration cap {BRUTE_FORCE_MAX}"
        )));
    }
    if quota > n {
        return Err(Error::InvalidArgument(format!(
            "quota {quota} exceeds population size {n}"
        )));
    }

    // Memoize the per-individual welfare terms; each subset sum then matches
    // the direct welfare evaluation bit for bit (same terms, same order).
    let log_form = alpha.uses_log_form();
    let exponent = 1.0 - alpha.value();
    let term = |u: f64| if log_form { u.ln() } else { u.powf(exponent) };
    let selected_terms: Vec<f64> = population
        .iter()
        .map(|ind| term(ind.utility.selected_utility()))
        .collect();
    let baseline_terms: Vec<f64> = population
        .iter()
        .map(|ind| term(ind.utility.baseline()))
        .collect();
    let welfare_of = |mask: u32| {
        let mut sum = 0.0;
        for i in 0..n {
            sum += if mask & (1 << i) != 0 {
                selected_terms[i]
            } else {
                baseline_terms[i]
            };
        }
        if log_form {
            sum
        } else {
            sum / exponent
        }
    };
    // higher welfare wins; ties prefer the smaller mask
    let better = |a: &(f64, u32), b: &(f64, u32)| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(Ordering::Equal)
            .then_with(|| b.1.cmp(&a.1))
    };

    let best = if n as u32 > PARALLEL_MASK_THRESHOLD {
        let quota_u32 = quota as u32;
        par::max_in_range(
            1u64 << n,
            |mask| {
                let mask = mask as u32;
                (mask.count_ones() == quota_u32).then(|| (welfare_of(mask), mask))
            },
            better,
        )
    } else {
        let mut best: Option<(f64, u32)> = None;
        visit_masks(n as u32, quota as u32, |mask| {
            let cand = (welfare_of(mask), mask);
            if best.is_none() || better(&cand, best.as_ref().unwrap()) == Ordering::Greater {
                best = Some(cand);
            }
        });
        best
    };
    let (welfare, mask) = best.expect("at least one subset of the requested size exists");

    let selected_ids = (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| population[i].id.clone())
        .collect();
    Ok(SelectionResult::new(selected_ids, quota, welfare))
}

// Gosper's hack: visit every n-bit mask with exactly m bits set, ascending.
fn visit_masks(n: u32, m: u32, mut visit: impl FnMut(u32)) {
    if m == 0 {
        visit(0);
        return;
    }
    let limit = 1u32 << n;
    let mut mask = (1u32 << m) - 1;
    while mask < limit {
        visit(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

/// Empirical group-parity rates of a selection over its population.
pub fn audit(population: &[Individual], result: &SelectionResult) -> Result<EmpiricalParityReport> {
    let mut ids: HashSet<&str> = HashSet::with_capacity(population.len());
    for ind in population {
        if !ids.insert(ind.id.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "duplicate id {:?} in population",
                ind.id
            )));
        }
    }
    for id in result.selected_ids() {
        if !ids.contains(id.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "selected id {id:?} does not occur in the population"
            )));
        }
    }
    let selected: HashSet<&str> = result.selected_ids().iter().map(String::as_str).collect();

    // per group: [total, selected, qualified, selected & qualified]
    let mut counts = [[0usize; 4]; 2];
    for ind in population {
        let g = usize::from(ind.protected);
        let sel = selected.contains(ind.id.as_str());
        counts[g][0] += 1;
        counts[g][1] += usize::from(sel);
        counts[g][2] += usize::from(ind.qualified);
        counts[g][3] += usize::from(sel && ind.qualified);
    }
    let rate = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    let [np, p] = counts;
    Ok(EmpiricalParityReport {
        selection_rate_protected: rate(p[1], p[0]),
        selection_rate_nonprotected: rate(np[1], np[0]),
        odds_ratio_protected: rate(p[3], p[2]),
        odds_ratio_nonprotected: rate(np[3], np[2]),
        predictive_rate_protected: rate(p[3], p[1]),
        predictive_rate_nonprotected: rate(np[3], np[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(x: f64) -> Alpha {
        Alpha::new(x).unwrap()
    }

    fn ind(id: &str, a: f64, b: f64) -> Individual {
        Individual::new(id, a, b, false, false).unwrap()
    }

    fn flagged(id: &str, a: f64, b: f64, z: bool, y: bool) -> Individual {
        Individual::new(id, a, b, z, y).unwrap()
    }

    #[test]
    fn greedy_ranks_by_benefit_at_alpha_zero() {
        let pop = vec![ind("p1", 1.0, 1.0), ind("p2", 2.0, 1.0), ind("p3", 0.5, 1.0)];
        let res = greedy_select(&pop, 2, al(0.0)).unwrap();
        assert_eq!(res.selected_ids(), ["p2", "p1"]);
    }

    #[test]
    fn greedy_compares_differentials_not_benefits() {
        // ln(1.1/0.1) = 2.398 beats ln(4.5/3) = 0.405 despite the smaller benefit
        let pop = vec![ind("lowbase", 1.0, 0.1), ind("highbase", 1.5, 3.0)];
        let res = greedy_select(&pop, 1, al(1.0)).unwrap();
        assert_eq!(res.selected_ids(), ["lowbase"]);
    }

    #[test]
    fn full_quota_selects_everyone() {
        let pop = vec![ind("a", -0.2, 1.0), ind("b", 3.0, 0.5), ind("c", 0.0, 2.0)];
        let res = greedy_select(&pop, 3, al(2.0)).unwrap();
        let mut got: Vec<_> = res.selected_ids().to_vec();
        got.sort();
        assert_eq!(got, ["a", "b", "c"]);
    }

    #[test]
    fn zero_quota_reports_baseline_welfare() {
        let pop = vec![ind("a", 1.0, 2.0), ind("b", 0.5, 1.0)];
        let res = greedy_select(&pop, 0, al(0.0)).unwrap();
        assert!(res.selected_ids().is_empty());
        assert_eq!(res.welfare(), 3.0);
    }

    #[test]
    fn quota_beyond_population_is_rejected() {
        let pop = vec![ind("a", 1.0, 1.0)];
        assert!(matches!(
            greedy_select(&pop, 2, al(0.0)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn ties_break_by_input_position() {
        let pop = vec![ind("first", 1.0, 1.0), ind("second", 1.0, 1.0)];
        let res = greedy_select(&pop, 1, al(0.5)).unwrap();
        assert_eq!(res.selected_ids(), ["first"]);
    }

    #[test]
    fn brute_force_matches_greedy_on_examples() {
        let pop = vec![ind("p1", 1.0, 1.0), ind("p2", 2.0, 1.0), ind("p3", 0.5, 1.0)];
        for &a in &[0.0, 0.5, 1.0, 2.0] {
            let g = greedy_select(&pop, 2, al(a)).unwrap();
            let b = brute_force_select(&pop, 2, al(a)).unwrap();
            assert!((g.welfare() - b.welfare()).abs() <= 1e-12 * g.welfare().abs().max(1.0));
        }
    }

    #[test]
    fn brute_force_single_individual() {
        let pop = vec![ind("only", 0.3, 1.0)];
        let res = brute_force_select(&pop, 1, al(1.0)).unwrap();
        assert_eq!(res.selected_ids(), ["only"]);
    }

    #[test]
    fn brute_force_rejects_large_populations() {
        let pop: Vec<_> = (0..21).map(|i| ind(&format!("i{i}"), 1.0, 1.0)).collect();
        assert!(matches!(
            brute_force_select(&pop, 3, al(0.0)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn audit_everyone_selected() {
        let pop = vec![
            flagged("a", 1.0, 1.0, true, true),
            flagged("b", 1.0, 1.0, false, true),
        ];
        let res = greedy_select(&pop, 2, al(0.0)).unwrap();
        let rep = audit(&pop, &res).unwrap();
        assert_eq!(rep.selection_rate_protected, Some(1.0));
        assert_eq!(rep.selection_rate_nonprotected, Some(1.0));
        assert_eq!(rep.odds_ratio_protected, Some(1.0));
        assert_eq!(rep.odds_ratio_nonprotected, Some(1.0));
    }

    #[test]
    fn audit_hand_counted_example() {
        // 2 protected (1 qualified), 2 nonprotected (2 qualified);
        // select the qualified protected + 1 qualified nonprotected
        let pop = vec![
            flagged("p-q", 1.0, 1.0, true, true),
            flagged("p-u", 1.0, 1.0, true, false),
            flagged("n-q1", 1.0, 1.0, false, true),
            flagged("n-q2", 1.0, 1.0, false, true),
        ];
        let res = SelectionResult::new(vec!["p-q".into(), "n-q1".into()], 2, 0.0);
        let rep = audit(&pop, &res).unwrap();
        assert_eq!(rep.selection_rate_protected, Some(0.5));
        assert_eq!(rep.selection_rate_nonprotected, Some(0.5));
        assert_eq!(rep.odds_ratio_protected, Some(1.0));
        assert_eq!(rep.odds_ratio_nonprotected, Some(0.5));
        assert_eq!(rep.predictive_rate_protected, Some(1.0));
        assert_eq!(rep.predictive_rate_nonprotected, Some(1.0));
    }

    #[test]
    fn audit_accuracy_maximizing_selection() {
        let pop = vec![
            flagged("p-q", 1.0, 1.0, true, true),
            flagged("p-u", 1.0, 1.0, true, false),
            flagged("n-q", 1.0, 1.0, false, true),
            flagged("n-u", 1.0, 1.0, false, false),
        ];
        let res = SelectionResult::new(vec!["p-q".into(), "n-q".into()], 2, 0.0);
        let rep = audit(&pop, &res).unwrap();
        assert_eq!(rep.odds_ratio_protected, Some(1.0));
        assert_eq!(rep.odds_ratio_nonprotected, Some(1.0));
        assert_eq!(rep.predictive_rate_protected, Some(1.0));
        assert_eq!(rep.predictive_rate_nonprotected, Some(1.0));
    }

    #[test]
    fn audit_undefined_rates_have_zero_denominators() {
        // no qualified individuals and nobody selected in the protected group
        let pop = vec![
            flagged("p", 1.0, 1.0, true, false),
            flagged("n", 1.0, 1.0, false, false),
        ];
        let res = SelectionResult::new(vec!["n".into()], 1, 0.0);
        let rep = audit(&pop, &res).unwrap();
        assert_eq!(rep.odds_ratio_protected, None);
        assert_eq!(rep.odds_ratio_nonprotected, None);
        assert_eq!(rep.predictive_rate_protected, None);
        // the selected nonprotected individual is unqualified: defined, zero
        assert_eq!(rep.predictive_rate_nonprotected, Some(0.0));
    }

    #[test]
    fn audit_rejects_unknown_and_duplicate_ids() {
        let pop = vec![flagged("a", 1.0, 1.0, false, false)];
        let res = SelectionResult::new(vec!["ghost".into()], 1, 0.0);
        assert!(matches!(
            audit(&pop, &res),
            Err(Error::InvalidArgument(_))
        ));
        let dup = vec![
            flagged("a", 1.0, 1.0, false, false),
            flagged("a", 2.0, 1.0, false, false),
        ];
        let res = SelectionResult::new(vec!["a".into()], 1, 0.0);
        assert!(matches!(audit(&dup, &res), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn mask_visitor_counts_subsets() {
        let mut count = 0;
        visit_masks(6, 3, |_| count += 1);
        assert_eq!(count, 20); // C(6,3)
        let mut count = 0;
        visit_masks(5, 0, |m| {
            assert_eq!(m, 0);
            count += 1;
        });
        assert_eq!(count, 1);
        let mut seen = Vec::new();
        visit_masks(4, 4, |m| seen.push(m));
        assert_eq!(seen, vec![0b1111]);
    }
}
