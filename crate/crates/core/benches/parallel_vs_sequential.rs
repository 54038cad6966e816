//! Compares the rayon-backed library paths against sequential baselines that
//! do the same work (same memoization, same comparisons), so the measured
//! difference is the parallelism itself. Run with default features for the
//! comparison; with `--no-default-features` both sides measure the fallback.

use criterion::{criterion_group, criterion_main, Criterion};

use alphafair_core::{
    alpha_welfare, brute_force_select, builtin_scenario, greedy_select, parity_report,
    sample_population, welfare_differential, Alpha, Individual, DEFAULT_PARITY_TOL,
};

fn alpha_sweep(c: &mut Criterion) {
    let mut spec = builtin_scenario(1, 0.6, None).unwrap();
    // denser grid than the default, so per-row work outweighs scheduling
    spec.alpha_grid = (0..=4000).map(|k| k as f64 * 0.0025).collect();
    let mut group = c.benchmark_group("alpha_sweep_4k");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| alphafair_core::sweep_alpha_table(&spec))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            spec.alpha_grid
                .iter()
                .map(|&a| {
                    parity_report(
                        &spec.model,
                        &spec.qual,
                        Alpha::new(a).unwrap(),
                        DEFAULT_PARITY_TOL,
                    )
                    .unwrap()
                })
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let spec = builtin_scenario(2, 0.5, None).unwrap();
    let population = sample_population(&spec.model, 18, 7, None).unwrap();
    let alpha = Alpha::new(2.0).unwrap();
    let mut group = c.benchmark_group("brute_force_18_choose_9");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| brute_force_select(&population, 9, alpha).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| sequential_brute_force(&population, 9, alpha))
    });
    group.finish();
}

// Memoized Gosper enumeration, mirroring the library's sequential fallback.
fn sequential_brute_force(population: &[Individual], m: u32, alpha: Alpha) -> (f64, u32) {
    let n = population.len();
    let exponent = 1.0 - alpha.value();
    let selected_terms: Vec<f64> = population
        .iter()
        .map(|i| i.utility.selected_utility().powf(exponent))
        .collect();
    let baseline_terms: Vec<f64> = population
        .iter()
        .map(|i| i.utility.baseline().powf(exponent))
        .collect();
    let mut best = (f64::NEG_INFINITY, 0u32);
    let limit = 1u32 << n;
    let mut mask = (1u32 << m) - 1;
    while mask < limit {
        let mut sum = 0.0;
        for i in 0..n {
            sum += if mask & (1 << i) != 0 {
                selected_terms[i]
            } else {
                baseline_terms[i]
            };
        }
        let welfare = sum / exponent;
        if welfare > best.0 {
            best = (welfare, mask);
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    best
}

fn greedy_large(c: &mut Criterion) {
    let spec = builtin_scenario(3, 0.8, None).unwrap();
    let population = sample_population(&spec.model, 200_000, 7, None).unwrap();
    let alpha = Alpha::new(2.0).unwrap();
    let mut group = c.benchmark_group("greedy_200k");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| greedy_select(&population, 160_000, alpha).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let mut order: Vec<(f64, usize)> = population
                .iter()
                .enumerate()
                .map(|(i, ind)| (welfare_differential(ind.utility, alpha), i))
                .collect();
            order.sort_unstable_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
            let chosen: std::collections::HashSet<usize> =
                order[..160_000].iter().map(|&(_, i)| i).collect();
            let induced: Vec<f64> = population
                .iter()
                .enumerate()
                .map(|(i, ind)| {
                    if chosen.contains(&i) {
                        ind.utility.selected_utility()
                    } else {
                        ind.utility.baseline()
                    }
                })
                .collect();
            alpha_welfare(&induced, alpha).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, alpha_sweep, brute_force, greedy_large);
criterion_main!(benches);
