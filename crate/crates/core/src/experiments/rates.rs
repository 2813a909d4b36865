use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fit::{least_squares, LineFit};
use crate::function_space::{Exponent, StepFunction};
use crate::group::GroupConfig;
use crate::kernels::KernelBuilder;
use crate::means::{MeanEngine, MeanFamily, TVariant, WeightSequence};
use crate::scalar::{stable_complex_sum, Real};

use super::convergence::check_grid;
use super::fixtures::Fixture;

/// Which branch of the Lipschitz-class rate applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateCase {
    /// `alpha < 1`: `O(M_N^{-alpha})`.
    Power,
    /// `alpha = 1`: `O(N / M_N)`.
    Logarithmic,
    /// `alpha > 1`: `O(1 / M_N)`.
    Saturated,
}

impl RateCase {
    pub fn for_alpha(alpha: f64) -> Self {
        if alpha < 1.0 {
            RateCase::Power
        } else if alpha == 1.0 {
            RateCase::Logarithmic
        } else {
            RateCase::Saturated
        }
    }

    /// Exponent of `M_N` in the predicted rate, ignoring log factors.
    pub fn predicted_slope(self, alpha: f64) -> f64 {
        match self {
            RateCase::Power => -alpha,
            RateCase::Logarithmic | RateCase::Saturated => -1.0,
        }
    }
}

impl fmt::Display for RateCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RateCase::Power => "power",
            RateCase::Logarithmic => "power-with-log",
            RateCase::Saturated => "saturated",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzReport {
    pub alpha: f64,
    pub p: Exponent,
    pub family: String,
    pub fixture: String,
    /// Levels `n` of the grid `M_n`.
    pub levels: Vec<usize>,
    /// `||mean_{M_n} f - f||_p`.
    pub errors: Vec<f64>,
    /// `omega_p(1/M_n, f)`.
    pub moduli: Vec<f64>,
    /// Levels used by the fits.
    pub fit_levels: Vec<usize>,
    /// Slope of `ln error` against `ln M_n`.
    pub error_fit: Option<LineFit>,
    /// Slope of `ln omega_p` against `ln M_n`.
    pub modulus_fit: Option<LineFit>,
    pub case: RateCase,
    pub predicted_slope: f64,
    /// Errors vanish identically, so no rate is fitted.
    pub exact: bool,
}

/// Rate grid for resolution `N`: levels `1 ..= N - ceil(N/4)`, fitted on the
/// last `ceil(len/2)` levels. The top quarter is dropped because the
/// fixtures are truncated at `N`, which bends the curves there.
pub fn rate_levels(resolution: usize) -> (Vec<usize>, Vec<usize>) {
    let top = resolution - resolution.div_ceil(4);
    let levels: Vec<usize> = (1..=top).collect();
    let keep = levels.len().div_ceil(2);
    let fit = levels[levels.len() - keep..].to_vec();
    (levels, fit)
}

/// Rate table of `mean_{M_n} f` for a given fixture.
pub fn rate_table<T: Real>(
    fixture: &Fixture<T>,
    alpha: f64,
    p: Exponent,
    family: &MeanFamily<T>,
) -> Result<LipschitzReport> {
    let f = &fixture.function;
    let cfg = f.config();
    let (levels, fit_levels) = rate_levels(cfg.resolution());
    let engine = MeanEngine::<T>::new(cfg);
    let spectrum = engine.spectrum(f)?;
    let rows = levels
        .par_iter()
        .map(|&n| {
            let mean = engine.mean_from_spectrum(family, cfg.subgroup_size(n), &spectrum)?;
            let error = mean.sub(f)?.lp_norm(p).value.as_f64();
            let modulus = f.modulus_of_continuity(p, n)?.as_f64();
            Ok((error, modulus))
        })
        .collect::<Result<Vec<_>>>()?;
    let (errors, moduli): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
    let scale = f.lp_norm(p).value.as_f64().max(1.0);
    let exact = errors.iter().all(|&e| e <= 1e-12 * scale);
    let fit = |ys: &[f64]| -> Result<Option<LineFit>> {
        if exact {
            return Ok(None);
        }
        let start = levels.len() - fit_levels.len();
        let xs: Vec<f64> = fit_levels.iter().map(|&n| (cfg.subgroup_size(n) as f64).ln()).collect();
        let ys: Vec<f64> = ys[start..].iter().map(|y| y.ln()).collect();
        if ys.iter().any(|y| !y.is_finite()) {
            return Ok(None);
        }
        least_squares(&xs, &ys).map(Some)
    };
    let case = RateCase::for_alpha(alpha);
    Ok(LipschitzReport {
        alpha,
        p,
        family: family.label(),
        fixture: fixture.label.clone(),
        error_fit: fit(&errors)?,
        modulus_fit: fit(&moduli)?,
        levels,
        errors,
        moduli,
        fit_levels,
        case,
        predicted_slope: case.predicted_slope(alpha),
        exact,
    })
}

/// Rate table on the lacunary `lip(alpha, p)` fixture.
pub fn lipschitz_rate_table<T: Real>(
    alpha: f64,
    p: Exponent,
    family: &MeanFamily<T>,
    cfg: &GroupConfig,
) -> Result<LipschitzReport> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter { name: "alpha", value: alpha, reason: "alpha must be positive" });
    }
    let (_, fit) = rate_levels(cfg.resolution());
    if fit.len() < 3 {
        return Err(Error::DegenerateFit(fit.len()));
    }
    rate_table(&Fixture::lacunary(cfg, alpha)?, alpha, p, family)
}

/// Which of the two displayed bounds was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneBound {
    NonDecreasing,
    NonIncreasing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoriczRow {
    pub n: usize,
    /// `||t_n f - f||_p`.
    pub lhs: f64,
    /// Modulus expression without the constant `C_p`.
    pub rhs: f64,
    pub ratio: f64,
    /// Levels `i <= N` with `M_i > n`, left out of the sum.
    pub dropped_terms: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoriczReport {
    pub weights: String,
    pub bound: MonotoneBound,
    pub rows: Vec<MoriczRow>,
    pub sup_ratio: f64,
}

/// Compares `||t_n f - f||_p` with the modulus-of-continuity bounds.
///
/// `j` is the largest level with `M_j < n`. Only terms with `M_i <= n` are
/// summed; `Q_k = 0` for `k <= 0`.
pub fn moricz_siddiqi_ratio<T: Real>(
    q: &WeightSequence<T>,
    f: &StepFunction<T>,
    p: Exponent,
    grid: &[usize],
) -> Result<MoriczReport> {
    let cfg = f.config();
    check_grid(cfg, grid)?;
    let mono = q.monotonicity();
    let bound = if mono.is_non_decreasing() {
        MonotoneBound::NonDecreasing
    } else if mono.is_non_increasing() {
        MonotoneBound::NonIncreasing
    } else {
        return Err(Error::InvalidParameter {
            name: "q",
            value: f64::NAN,
            reason: "the bounds need monotone weights",
        });
    };
    let big_n = cfg.resolution();
    let omega = (0..=big_n)
        .map(|i| f.modulus_of_continuity(p, i).map(|w| w.as_f64()))
        .collect::<Result<Vec<f64>>>()?;
    let table = q.table(cfg.order() + 1)?;
    let big_q = |k: isize| if k <= 0 { 0.0 } else { table.big_q(k as usize).as_f64() };
    let engine = MeanEngine::<T>::new(cfg);
    let spectrum = engine.spectrum(f)?;
    let family = MeanFamily::Norlund(q.clone());
    let rows = grid
        .par_iter()
        .map(|&n| {
            let qn = table.big_q(n).as_f64();
            if qn <= 0.0 {
                return Err(Error::ZeroNormalizer(n));
            }
            let lhs = engine.mean_from_spectrum(&family, n, &spectrum)?.sub(f)?.lp_norm(p).value.as_f64();
            let j = (0..=big_n).rev().find(|&j| cfg.subgroup_size(j) < n).unwrap_or(0);
            let usable: Vec<usize> = (0..=big_n).filter(|&i| cfg.subgroup_size(i) <= n).collect();
            let dropped_terms = big_n + 1 - usable.len();
            let mut sum = 0.0;
            for &i in &usable {
                let mi = cfg.subgroup_size(i) as isize;
                let weight = match bound {
                    MonotoneBound::NonDecreasing => mi as f64 * table.q(n - mi as usize).as_f64(),
                    MonotoneBound::NonIncreasing => {
                        let next = if i < big_n { cfg.subgroup_size(i + 1) as isize } else { isize::MAX / 2 };
                        big_q(n as isize - mi + 1) - big_q(n as isize - next + 1)
                    }
                };
                sum += weight * omega[i];
            }
            let rhs = sum / qn + omega[j];
            let ratio = if rhs > 0.0 {
                lhs / rhs
            } else if lhs <= 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            Ok(MoriczRow { n, lhs, rhs, ratio, dropped_terms })
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(MoriczReport { weights: q.label(), bound, rows, sup_ratio })
}

/// `int f(t) conj(F^{-1}_{M_n}(x - t)) conj(psi_{M_n - 1}(t)) dt` with the
/// identity-form T kernel, for each level `n` in `levels`. Levels where the
/// kernel is undefined (`Q_{M_n} = 0`) are skipped.
pub fn riemann_lebesgue_trace<T: Real>(
    q: &WeightSequence<T>,
    f: &StepFunction<T>,
    x: usize,
    levels: &[usize],
) -> Result<Vec<(usize, Complex<T>)>> {
    let cfg = f.config();
    cfg.check_index(x)?;
    let builder = KernelBuilder::<T>::new(cfg);
    let inv = T::one() / T::count(cfg.order());
    let mut trace = Vec::with_capacity(levels.len());
    for &n in levels {
        cfg.check_level(n)?;
        let mn = cfg.subgroup_size(n);
        let kernel = match builder.tmean(q, mn, TVariant::IdentityForm) {
            Ok(k) => k.function,
            Err(Error::ZeroNormalizer(_)) => continue,
            Err(e) => return Err(e),
        };
        let psi = builder.characters();
        let value = stable_complex_sum((0..cfg.order()).map(|t| {
            f.at(t) * kernel.at(cfg.sub_index(x, t)).conj() * psi.psi_index(mn - 1, t).conj()
        })) * inv;
        trace.push((n, value));
    }
    Ok(trace)
}
