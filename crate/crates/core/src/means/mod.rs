//! Summability means of Vilenkin-Fourier series.

mod cesaro;
mod family;
mod weights;

pub use cesaro::{cesaro_binomial, CesaroCoefficients};
pub use family::{harmonic, MeanFamily, TVariant};
pub use weights::{Monotonicity, WeightKind, WeightSequence, WeightTable};

use num_complex::Complex;
use rayon::prelude::*;

use crate::characters::CharacterSystem;
use crate::error::{Error, Result};
use crate::fit::log_log_slope;
use crate::function_space::StepFunction;
use crate::group::GroupConfig;
use crate::scalar::Real;
use crate::transform::{check_partial_index, FastTransform, SpectrumTable};

/// Evaluates means on one group configuration by three independent routes.
#[derive(Debug, Clone)]
pub struct MeanEngine<T> {
    plan: FastTransform<T>,
    chars: CharacterSystem<T>,
}

impl<T: Real> MeanEngine<T> {
    pub fn new(cfg: &GroupConfig) -> Self {
        Self { plan: FastTransform::new(cfg), chars: CharacterSystem::new(cfg) }
    }

    pub fn config(&self) -> &GroupConfig {
        self.plan.config()
    }

    pub fn transform(&self) -> &FastTransform<T> {
        &self.plan
    }

    pub fn spectrum(&self, f: &StepFunction<T>) -> Result<SpectrumTable<T>> {
        self.plan.forward(f)
    }

    /// Spectral route: the family's multiplier applied to `f^`.
    pub fn mean(&self, family: &MeanFamily<T>, n: usize, f: &StepFunction<T>) -> Result<StepFunction<T>> {
        let spectrum = self.spectrum(f)?;
        self.mean_from_spectrum(family, n, &spectrum)
    }

    pub fn mean_from_spectrum(
        &self,
        family: &MeanFamily<T>,
        n: usize,
        spectrum: &SpectrumTable<T>,
    ) -> Result<StepFunction<T>> {
        check_partial_index(self.config(), n)?;
        let c = family.multiplier(n)?;
        self.plan.apply_multiplier(spectrum, |j| if j < n { c[j] } else { T::zero() })
    }

    /// Direct route: `sum_k w_k S_k f`, building `S_k` one character at a time.
    pub fn mean_direct(
        &self,
        family: &MeanFamily<T>,
        n: usize,
        f: &StepFunction<T>,
    ) -> Result<StepFunction<T>> {
        check_partial_index(self.config(), n)?;
        let w = family.partial_sum_weights(n)?;
        let spectrum = self.spectrum(f)?;
        let order = self.config().order();
        let zero = Complex::new(T::zero(), T::zero());
        let mut partial = vec![zero; order];
        let mut out = vec![zero; order];
        for k in 1..=n {
            let coef = spectrum.coefficient(k - 1);
            for (x, s) in partial.iter_mut().enumerate() {
                *s += coef * self.chars.psi_index(k - 1, x);
            }
            if w[k] != T::zero() {
                for (o, s) in out.iter_mut().zip(&partial) {
                    *o += s * w[k];
                }
            }
        }
        Ok(StepFunction::from_raw(self.config(), out))
    }

    /// Kernel of the `n`-th mean, `sum_j c_j psi_j`.
    pub fn kernel(&self, family: &MeanFamily<T>, n: usize) -> Result<StepFunction<T>> {
        check_partial_index(self.config(), n)?;
        let c = family.multiplier(n)?;
        Ok(self.plan.synthesize(|j| if j < n { c[j] } else { T::zero() }))
    }

    /// Kernel route: direct convolution `f * kernel`.
    pub fn mean_by_kernel(
        &self,
        family: &MeanFamily<T>,
        n: usize,
        f: &StepFunction<T>,
    ) -> Result<StepFunction<T>> {
        f.convolve(&self.kernel(family, n)?)
    }

    /// Nörlund mean through its Abel transform in Fejér means:
    /// `t_n = (1/Q_n)(sum_{j=1}^{n-1} (q_{n-j} - q_{n-j-1}) j sigma_j + q_0 n sigma_n)`.
    pub fn norlund_abel(
        &self,
        q: &WeightSequence<T>,
        n: usize,
        f: &StepFunction<T>,
    ) -> Result<StepFunction<T>> {
        check_partial_index(self.config(), n)?;
        let table = q.table(n)?;
        let norm = table.big_q(n);
        if norm <= T::zero() {
            return Err(Error::ZeroNormalizer(n));
        }
        let spectrum = self.spectrum(f)?;
        let order = self.config().order();
        let zero = Complex::new(T::zero(), T::zero());
        // partial = S_j f, running = j sigma_j f = S_1 f + .. + S_j f
        let mut partial = vec![zero; order];
        let mut running = vec![zero; order];
        let mut out = vec![zero; order];
        for j in 1..=n {
            let coef = spectrum.coefficient(j - 1);
            for x in 0..order {
                partial[x] += coef * self.chars.psi_index(j - 1, x);
                running[x] += partial[x];
            }
            let weight = if j < n { table.q(n - j) - table.q(n - j - 1) } else { table.q(0) };
            if weight != T::zero() {
                for (o, r) in out.iter_mut().zip(&running) {
                    *o += r * weight;
                }
            }
        }
        let inv = T::one() / norm;
        out.iter_mut().for_each(|v| *v = *v * inv);
        Ok(StepFunction::from_raw(self.config(), out))
    }

    /// Pointwise `max_{1 <= k <= n_max} |mean_k f|`.
    pub fn truncated_maximal(
        &self,
        family: &MeanFamily<T>,
        f: &StepFunction<T>,
        n_max: usize,
    ) -> Result<StepFunction<T>> {
        check_partial_index(self.config(), n_max)?;
        let spectrum = self.spectrum(f)?;
        let order = self.config().order();
        let start = first_defined(family, n_max)?;
        let maxima = (start..=n_max)
            .into_par_iter()
            .map(|k| {
                self.mean_from_spectrum(family, k, &spectrum)
                    .map(|m| m.values().iter().map(|v| v.norm()).collect::<Vec<T>>())
            })
            .try_reduce(
                || vec![T::zero(); order],
                |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect()),
            )?;
        let values = maxima.into_iter().map(|v| Complex::new(v, T::zero())).collect();
        Ok(StepFunction::from_raw(self.config(), values))
    }
}

/// Smallest `n` for which the family has a nonzero normalizer.
fn first_defined<T: Real>(family: &MeanFamily<T>, n_max: usize) -> Result<usize> {
    for n in 1..=n_max {
        match family.partial_sum_weights(n) {
            Ok(_) => return Ok(n),
            Err(Error::ZeroNormalizer(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ZeroNormalizer(n_max))
}

/// `t_n f = (1/Q_n) sum_{k=1}^n q_{n-k} S_k f`.
pub fn norlund_mean<T: Real>(q: &WeightSequence<T>, n: usize, f: &StepFunction<T>) -> Result<StepFunction<T>> {
    MeanEngine::new(f.config()).mean(&MeanFamily::Norlund(q.clone()), n, f)
}

/// `T_n f` in the chosen index convention.
pub fn t_mean<T: Real>(
    q: &WeightSequence<T>,
    n: usize,
    variant: TVariant,
    f: &StepFunction<T>,
) -> Result<StepFunction<T>> {
    MeanEngine::new(f.config()).mean(&MeanFamily::TMean(q.clone(), variant), n, f)
}

/// `sigma_n f = (1/n) sum_{k=1}^n S_k f`.
pub fn fejer_mean<T: Real>(n: usize, f: &StepFunction<T>) -> Result<StepFunction<T>> {
    MeanEngine::new(f.config()).mean(&MeanFamily::Fejer, n, f)
}

/// `(C, alpha)` mean normalized by `A_{n-1}^alpha`; see [`MeanFamily::Cesaro`].
pub fn cesaro_mean<T: Real>(n: usize, alpha: f64, f: &StepFunction<T>) -> Result<StepFunction<T>> {
    MeanEngine::new(f.config()).mean(&MeanFamily::Cesaro(alpha), n, f)
}

/// `L_n f = (1/l_n) sum_{k<n} S_k f / (n - k)`.
pub fn norlund_log<T: Real>(n: usize, f: &StepFunction<T>) -> Result<StepFunction<T>> {
    MeanEngine::new(f.config()).mean(&MeanFamily::NorlundLog, n, f)
}

/// `R_n f = (1/l_n) sum_{k=1}^n S_k f / k`.
pub fn riesz_log<T: Real>(n: usize, f: &StepFunction<T>) -> Result<StepFunction<T>> {
    MeanEngine::new(f.config()).mean(&MeanFamily::RieszLog, n, f)
}

/// Relative residual of `Q_n = sum_{j=1}^{n-1} (q_{n-j} - q_{n-j-1}) j + q_0 n`.
pub fn abel_prefix_residual<T: Real>(q: &WeightSequence<T>, n: usize) -> Result<T> {
    let table = q.table(n)?;
    let mut acc = crate::scalar::CompensatedSum::new();
    for j in 1..n {
        acc.add((table.q(n - j) - table.q(n - j - 1)) * T::count(j));
    }
    if n > 0 {
        acc.add(table.q(0) * T::count(n));
    }
    let big = table.big_q(n);
    Ok((big - acc.value()).abs() / big.abs().max(T::one()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakTypeSample {
    pub level: f64,
    /// `y mu(Mf > y) / ||f||_1`.
    pub ratio: f64,
}

/// Weak-(1,1) ratios of a maximal function over a level grid.
pub fn weak_type_ratios<T: Real>(
    maximal: &StepFunction<T>,
    f: &StepFunction<T>,
    levels: &[f64],
) -> Result<Vec<WeakTypeSample>> {
    maximal.ensure_same_config(f)?;
    let norm = f.lp_norm(crate::function_space::Exponent::Finite(1.0)).value.as_f64();
    let order = maximal.len() as f64;
    Ok(levels
        .iter()
        .map(|&y| {
            let count = maximal.values().iter().filter(|v| v.norm().as_f64() > y).count();
            let ratio = if norm > 0.0 { y * count as f64 / order / norm } else { 0.0 };
            WeakTypeSample { level: y, ratio }
        })
        .collect())
}

/// Growth diagnostics for `1/Q_n` and `q_{n-1}/Q_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub n_max: usize,
    /// `sup n / Q_n`, finite iff `1/Q_n = O(1/n)` on the scanned range.
    pub sup_n_over_q: f64,
    /// `sup n q_{n-1} / Q_n`, finite iff `q_{n-1}/Q_n = O(1/n)` on the scanned range.
    pub sup_n_ratio: f64,
    /// `q_{n-1} / Q_n` at `n_max`.
    pub last_ratio: f64,
    /// Fitted exponent `e` in `q_{n-1}/Q_n ~ n^e` over the upper half of the range.
    pub ratio_exponent: Option<f64>,
    /// Fitted exponent `e` in `1/Q_n ~ n^e` over the upper half of the range.
    pub inverse_q_exponent: Option<f64>,
    /// Indices skipped because `Q_n = 0`.
    pub skipped: Vec<usize>,
}

pub fn regularity_check<T: Real>(q: &WeightSequence<T>, n_max: usize) -> Result<RegularityReport> {
    if n_max < 2 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            value: n_max as f64,
            reason: "regularity scan needs n_max >= 2",
        });
    }
    let table = q.table(n_max)?;
    let mut sup_n_over_q = 0.0f64;
    let mut sup_n_ratio = 0.0f64;
    let mut skipped = Vec::new();
    let mut grid = Vec::new();
    let mut ratios = Vec::new();
    let mut inverses = Vec::new();
    for n in 1..=n_max {
        let big = table.big_q(n).as_f64();
        if big <= 0.0 {
            skipped.push(n);
            continue;
        }
        let ratio = table.q(n - 1).as_f64() / big;
        sup_n_over_q = sup_n_over_q.max(n as f64 / big);
        sup_n_ratio = sup_n_ratio.max(n as f64 * ratio);
        if 2 * n > n_max {
            grid.push(n as f64);
            ratios.push(ratio);
            inverses.push(1.0 / big);
        }
    }
    let last = table.q(n_max - 1).as_f64() / table.big_q(n_max).as_f64();
    let exponent = |ys: &[f64]| {
        if ys.iter().all(|&y| y > 0.0) {
            log_log_slope(&grid, ys).ok().map(|fit| fit.slope)
        } else {
            None
        }
    };
    Ok(RegularityReport {
        n_max,
        sup_n_over_q,
        sup_n_ratio,
        last_ratio: last,
        ratio_exponent: exponent(&ratios),
        inverse_q_exponent: exponent(&inverses),
        skipped,
    })
}
