//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every criterion executes and reports
//! even when an earlier one fails. The process exits non-zero if any gating
//! criterion fails.

use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vilenkin::characters::character_table;
use vilenkin::experiments::{self, level_grid, lipschitz_rate_table, norm_convergence, Fixture};
use vilenkin::kernels::{approximate_identity_report, run_identity_suite, IdentityId};
use vilenkin::means::{self, abel_prefix_residual, cesaro_binomial, MeanEngine};
use vilenkin::transform::{fvt_forward, fvt_inverse, naive_coefficients, partial_sum};
use vilenkin::{
    Exponent, GroupConfig, KernelBuilder64, MeanFamily64, StepFunction64, TVariant, WeightSequence64,
};

const ORTHONORMAL_TOL: f64 = 1e-9;
const ORTHONORMAL_SECONDS: f64 = 1.0;
const EXACT_TOL: f64 = 1e-12;
const KERNEL_TOL: f64 = 1e-9;
const INTEGRAL_TOL: f64 = 1e-12;
const TAIL_FACTOR: f64 = 5.0;
const TRANSFORM_TOL: f64 = 1e-9;
const SPEEDUP_TARGET: f64 = 10.0;
const FEJER_TOL: f64 = 1e-9;
const EVENTUAL_TOL: f64 = 1e-8;
const SLOPE_BAND: f64 = 0.15;
const LIPSCHITZ_SECONDS: f64 = 30.0;
const CESARO_REL_TOL: f64 = 1e-12;
const ABEL_PREFIX_TOL: f64 = 1e-12;
const ABEL_MEAN_TOL: f64 = 1e-9;

const BUILTIN_WEIGHTS: &[&str] = &[
    "fejer", "cesaro:0.5", "cesaro:2", "valpha:0.5", "valpha:1", "log", "ualpha:0.5", "ualpha:1", "beta:0.5", "beta:1",
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cfg(radix: &[usize]) -> GroupConfig {
    GroupConfig::from_radix(radix).unwrap()
}

fn weights(label: &str) -> WeightSequence64 {
    label.parse().unwrap()
}

fn orthonormality() -> Outcome {
    let g = cfg(&[2, 3, 4]);
    let start = Instant::now();
    let dev = character_table::<f64>(&g, 4096).unwrap().gram_deviation();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        dev <= ORTHONORMAL_TOL && secs < ORTHONORMAL_SECONDS,
        format!("max |Gram - I| = {dev:.2e}, {secs:.3} s"),
    )
}

fn paley() -> Outcome {
    let g = cfg(&[2, 3, 2, 2]);
    let b = KernelBuilder64::new(&g);
    let mut worst: f64 = 0.0;
    let mut worst_l1: f64 = 0.0;
    for n in 0..=g.resolution() {
        let mn = g.subgroup_size(n);
        let d = b.dirichlet(mn).unwrap().function;
        let expected = StepFunction64::interval_indicator(&g, n, 0).unwrap().scale(Complex::new(mn as f64, 0.0));
        worst = worst.max(d.max_abs_diff(&expected));
        worst_l1 = worst_l1.max((d.lp_norm(Exponent::Finite(1.0)).value - 1.0).abs());
    }
    outcome(
        worst <= EXACT_TOL && worst_l1 <= EXACT_TOL,
        format!("residual {worst:.2e}, | ||D||_1 - 1 | {worst_l1:.2e}"),
    )
}

fn fejer_closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut center_exact = true;
    for radix in [&[2, 3, 4][..], &[2, 3, 2, 2][..]] {
        let g = cfg(radix);
        let b = KernelBuilder64::new(&g);
        for n in 0..=g.resolution() {
            let mn = g.subgroup_size(n);
            let closed = b.fejer_closed(n).unwrap().function;
            worst = worst.max(closed.max_abs_diff(&b.fejer(mn).unwrap().function));
            center_exact &= closed.at(0) == Complex::new((mn as f64 + 1.0) / 2.0, 0.0);
        }
    }
    outcome(
        worst <= KERNEL_TOL && center_exact,
        format!("max deviation {worst:.2e}, K(0) = (M_n+1)/2 exact: {center_exact}"),
    )
}

fn identity_suite() -> Outcome {
    let configs = [&[2, 3, 4][..], &[2, 3, 2, 2], &[2, 2, 2, 2, 2, 2], &[3, 3, 3], &[2, 3, 2, 4]];
    let plain = [
        IdentityId::DnShift,
        IdentityId::DnReflect,
        IdentityId::DnScaled,
        IdentityId::DnExpansion,
        IdentityId::KnScaled,
        IdentityId::KnDecomp,
    ];
    let q: Vec<String> = ["fejer", "valpha:0.5", "beta:1"].iter().map(|s| s.to_string()).collect();
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    let mut failed = Vec::new();
    for radix in configs {
        let g = cfg(radix);
        assert!(g.order() <= 64);
        let mut reports = run_identity_suite::<f64>(&g, &plain, &[]).unwrap();
        reports.extend(run_identity_suite::<f64>(&g, &[IdentityId::FnReflect], &q).unwrap());
        for r in reports {
            cases += 1;
            worst = worst.max(r.residual);
            if r.residual > KERNEL_TOL {
                failed.push(format!("{}[{}]", r.id, r.params));
            }
        }
    }
    outcome(
        failed.is_empty(),
        format!("{cases} cases on 5 groups, max residual {worst:.2e}, failures {failed:?}"),
    )
}

fn integrals() -> Outcome {
    let mut worst_k: f64 = 0.0;
    let mut worst_f: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    let mut cases = 0;
    for radix in [&[2, 3, 4][..], &[2, 3, 2, 2][..]] {
        let g = cfg(radix);
        let b = KernelBuilder64::new(&g);
        for n in 1..=g.order() {
            worst_k = worst_k.max((b.fejer(n).unwrap().integral() - 1.0).norm());
            for label in BUILTIN_WEIGHTS {
                let q = weights(label);
                if q.table(n + 1).unwrap().big_q(n) == 0.0 {
                    continue;
                }
                cases += 1;
                worst_f = worst_f.max((b.norlund(&q, n).unwrap().integral() - 1.0).norm());
                worst_t = worst_t.max((b.tmean(&q, n, TVariant::Regular).unwrap().integral() - 1.0).norm());
            }
        }
    }
    let worst = worst_k.max(worst_f).max(worst_t);
    outcome(
        worst <= INTEGRAL_TOL,
        format!("{cases} weighted cases; max |int - 1|: K {worst_k:.1e}, F {worst_f:.1e}, T^-1 {worst_t:.1e}"),
    )
}

fn approximate_identity() -> Outcome {
    let g = cfg(&[2, 3, 2, 4]);
    let grid: Vec<usize> = (4..=g.order()).collect();
    let family = MeanFamily64::Norlund(weights("beta:1"));
    let r = approximate_identity_report(&family, &g, &grid, 2).unwrap();
    outcome(
        r.tail_decrease_factor >= TAIL_FACTOR && r.sup_l1.is_finite(),
        format!("tail factor {:.2} (n=4 -> {}), sup ||F_n||_1 = {:.4}", r.tail_decrease_factor, g.order(), r.sup_l1),
    )
}

fn transform() -> Outcome {
    let groups = [GroupConfig::new(&[2, 3, 4], 3).unwrap(), GroupConfig::new(&[2], 8).unwrap(), GroupConfig::new(&[2], 12).unwrap()];
    let mut worst_rel: f64 = 0.0;
    let mut worst_trip: f64 = 0.0;
    let mut timing = String::new();
    for g in &groups {
        let mut fast_secs = 0.0;
        let mut naive_secs = 0.0;
        for seed in 0..20u64 {
            let f = Fixture::<f64>::random(g, seed).function;
            let t = Instant::now();
            let fast = fvt_forward(&f);
            fast_secs += t.elapsed().as_secs_f64();
            let t = Instant::now();
            let naive = naive_coefficients(&f);
            naive_secs += t.elapsed().as_secs_f64();
            let scale = naive.coefficients().iter().map(|c| c.norm()).fold(0.0, f64::max);
            let diff = fast
                .coefficients()
                .iter()
                .zip(naive.coefficients())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            worst_rel = worst_rel.max(diff / scale);
            worst_trip = worst_trip.max(fvt_inverse(&fast).max_abs_diff(&f));
        }
        if g.order() == 4096 {
            let speedup = naive_secs / fast_secs;
            let mark = if speedup >= SPEEDUP_TARGET { "meets" } else { "below" };
            timing = format!("speedup at 4096: {speedup:.0}x ({mark} {SPEEDUP_TARGET}x, informational)");
        }
    }
    outcome(
        worst_rel <= TRANSFORM_TOL && worst_trip <= TRANSFORM_TOL,
        format!("max relative error {worst_rel:.2e}, roundtrip {worst_trip:.2e}; {timing}"),
    )
}

fn norm_convergence_fejer() -> Outcome {
    let g = cfg(&[2, 3, 4]);
    let f = Fixture::<f64>::character(&g, 3).unwrap();
    let grid: Vec<usize> = (4..=24).collect();
    let c = norm_convergence(&MeanFamily64::Fejer, &f.function, &f.label, Exponent::Infinity, &grid).unwrap();
    let worst = c.grid.iter().zip(&c.errors).map(|(&n, e)| (e - 3.0 / n as f64).abs()).fold(0.0, f64::max);
    outcome(worst <= FEJER_TOL, format!("max |error - 3/n| = {worst:.2e} over n = 4..24"))
}

fn builtin_families() -> Vec<MeanFamily64> {
    let mut families = vec![
        MeanFamily64::PartialSums,
        MeanFamily64::Fejer,
        MeanFamily64::Cesaro(0.5),
        MeanFamily64::Cesaro(2.0),
        MeanFamily64::NorlundLog,
        MeanFamily64::RieszLog,
    ];
    for label in BUILTIN_WEIGHTS {
        families.push(MeanFamily64::Norlund(weights(label)));
        families.push(MeanFamily64::TMean(weights(label), TVariant::Regular));
    }
    families
}

fn eventual_exactness() -> Outcome {
    let g = cfg(&[2, 3, 4]);
    let fixtures = [
        Fixture::<f64>::character(&g, 3).unwrap(),
        Fixture::polynomial(&g, &[(0, Complex::new(1.0, 0.0)), (1, Complex::new(0.5, -0.25)), (5, Complex::new(0.0, 2.0))])
            .unwrap(),
    ];
    let families = builtin_families();
    let mut failing: Vec<String> = Vec::new();
    let mut worst: f64 = 0.0;
    for family in &families {
        for f in &fixtures {
            let c = norm_convergence(family, &f.function, &f.label, Exponent::Infinity, &[g.order()]).unwrap();
            let e = c.last().unwrap();
            worst = worst.max(e);
            if e > EVENTUAL_TOL && !failing.contains(&family.label()) {
                failing.push(family.label());
            }
        }
    }
    outcome(
        failing.is_empty(),
        format!(
            "error at n = M_N = {}: worst {worst:.2e}; {} of {} families above {EVENTUAL_TOL:.0e}",
            g.order(),
            failing.len(),
            families.len()
        ),
    )
}

fn subsequence_convergence() -> Outcome {
    let g = GroupConfig::new(&[2], 6).unwrap();
    let grid = level_grid(&g, 1..=g.resolution()).unwrap();
    let fixtures = [
        Fixture::<f64>::indicator(&g, 1, 0).unwrap(),
        Fixture::indicator(&g, 2, 5).unwrap(),
        Fixture::character(&g, 3).unwrap(),
        Fixture::lacunary(&g, 0.5).unwrap(),
        Fixture::random(&g, 1),
    ];
    let mut checked = 0;
    let mut failing = Vec::new();
    for q in ["valpha:0.5", "ualpha:1"] {
        let family = MeanFamily64::Norlund(weights(q));
        for f in &fixtures {
            for p in [Exponent::Finite(1.0), Exponent::Finite(2.0)] {
                checked += 1;
                let c = norm_convergence(&family, &f.function, &f.label, p, &grid).unwrap();
                if !c.is_strictly_decreasing() {
                    failing.push(format!("{q}/{}/p={p}", f.label));
                }
            }
        }
    }
    outcome(failing.is_empty(), format!("{checked} curves over M_1..M_6, non-decreasing: {failing:?}"))
}

fn lebesgue_trace() -> Outcome {
    let g = cfg(&[2, 3, 2, 4]);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut worst_end: f64 = 0.0;
    for seed in 0..100u64 {
        let f = Fixture::<f64>::random(&g, seed).function;
        let x = rng.gen_range(0..g.order());
        let d = experiments::lebesgue_point_trace(&f, x, g.resolution()).unwrap();
        for (n, &t) in d.lebesgue.iter().enumerate() {
            let s = partial_sum(&f, g.subgroup_size(n)).unwrap().at(x);
            worst = worst.max((s - t).norm());
        }
        worst_end = worst_end.max((d.lebesgue[g.resolution()] - f.at(x)).norm());
    }
    outcome(
        worst <= EXACT_TOL && worst_end <= EXACT_TOL,
        format!("100 pairs: max |S_(M_n) f(x) - trace| {worst:.2e}, |trace(N) - f(x)| {worst_end:.2e}"),
    )
}

fn lipschitz_rate() -> Outcome {
    let g = GroupConfig::new(&[2], 10).unwrap();
    let start = Instant::now();
    let r = lipschitz_rate_table(0.5, Exponent::Finite(2.0), &MeanFamily64::Fejer, &g).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let slope = r.error_fit.map(|f| f.slope).unwrap_or(f64::NAN);
    let modulus = r.modulus_fit.map(|f| f.slope).unwrap_or(f64::NAN);
    outcome(
        (slope + 0.5).abs() <= SLOPE_BAND && secs < LIPSCHITZ_SECONDS,
        format!(
            "error slope {slope:.4}, modulus slope {modulus:.4} (fit on levels {:?}), {secs:.2} s",
            r.fit_levels
        ),
    )
}

fn cesaro_identities() -> Outcome {
    let mut worst_sum: f64 = 0.0;
    let mut worst_diff: f64 = 0.0;
    for alpha in [0.3, 0.5, 1.0, 2.0] {
        let a = cesaro_binomial::<f64>(1000, alpha).unwrap();
        let b = cesaro_binomial::<f64>(1000, alpha - 1.0).unwrap();
        let mut prefix = vilenkin::scalar::CompensatedSum::new();
        for n in 0..=1000 {
            prefix.add(b.get(n));
            let scale = a.get(n).abs();
            worst_sum = worst_sum.max((a.get(n) - prefix.value()).abs() / scale);
            if n >= 1 {
                worst_diff = worst_diff.max((a.get(n) - a.get(n - 1) - b.get(n)).abs() / scale);
            }
        }
    }
    let g = cfg(&[2, 3, 4]);
    let f = Fixture::<f64>::random(&g, 17).function;
    let mut worst_mean: f64 = 0.0;
    for n in 1..=g.order() {
        let c = means::cesaro_mean(n, 1.0, &f).unwrap();
        worst_mean = worst_mean.max(c.max_abs_diff(&means::fejer_mean(n, &f).unwrap()));
    }
    outcome(
        worst_sum <= CESARO_REL_TOL && worst_diff <= CESARO_REL_TOL && worst_mean <= EXACT_TOL,
        format!("sum identity {worst_sum:.1e}, difference identity {worst_diff:.1e}, |sigma^1 - sigma| {worst_mean:.1e}"),
    )
}

fn abel_consistency() -> Outcome {
    let g = cfg(&[2, 3, 4]);
    let engine = MeanEngine::<f64>::new(&g);
    let f = Fixture::<f64>::random(&g, 23).function;
    let mut worst_prefix: f64 = 0.0;
    let mut worst_mean: f64 = 0.0;
    for label in BUILTIN_WEIGHTS {
        let q = weights(label);
        let family = MeanFamily64::Norlund(q.clone());
        for n in 1..=g.order() {
            worst_prefix = worst_prefix.max(abel_prefix_residual(&q, n).unwrap());
            let abel = match engine.norlund_abel(&q, n, &f) {
                Ok(m) => m,
                Err(vilenkin::Error::ZeroNormalizer(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            worst_mean = worst_mean.max(abel.max_abs_diff(&engine.mean_direct(&family, n, &f).unwrap()));
        }
    }
    outcome(
        worst_prefix <= ABEL_PREFIX_TOL && worst_mean <= ABEL_MEAN_TOL,
        format!("prefix identity {worst_prefix:.1e}, Abel vs direct {worst_mean:.1e}"),
    )
}

fn main() {
    let criteria: Vec<(&str, &str, fn() -> Outcome)> = vec![
        ("1", "orthonormality", orthonormality),
        ("2", "Paley's lemma", paley),
        ("3", "Fejer closed form", fejer_closed_form),
        ("4", "kernel identity suite", identity_suite),
        ("5", "integral normalizations", integrals),
        ("6", "approximate identity", approximate_identity),
        ("7", "transform correctness", transform),
        ("8a", "norm convergence, Fejer on psi_3", norm_convergence_fejer),
        ("8b", "norm convergence, eventual exactness", eventual_exactness),
        ("9", "subsequence convergence", subsequence_convergence),
        ("10", "Lebesgue trace", lebesgue_trace),
        ("11", "Lipschitz rate", lipschitz_rate),
        ("12", "Cesaro identities", cesaro_identities),
        ("13", "Abel consistency", abel_consistency),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:>3} {name}: {}", o.detail);
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed {failed:?}");
        std::process::exit(1);
    }
}
