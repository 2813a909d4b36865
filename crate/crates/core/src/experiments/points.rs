use num_complex::Complex;

use crate::error::{Error, Result};
use crate::function_space::StepFunction;
use crate::means::{MeanEngine, MeanFamily};
use crate::scalar::{CompensatedSum, Real};

/// Pointwise traces at one coset.
#[derive(Debug, Clone, PartialEq)]
pub struct PointDiagnostic<T> {
    pub point: usize,
    /// `M_n int_{I_n(x)} f` for `n = 0 ..`.
    pub lebesgue: Vec<Complex<T>>,
    /// `W_A f(x)` for `A = 0 ..`.
    pub vilenkin_lebesgue: Vec<T>,
    /// `(M_A, |mean_{M_A} f(x) - f(x)|)` wherever the mean is defined.
    pub mean_error: Vec<(usize, T)>,
}

/// Interval averages of `f` around `x` for `n = 0 ..= n_max`.
pub fn lebesgue_point_trace<T: Real>(f: &StepFunction<T>, x: usize, n_max: usize) -> Result<PointDiagnostic<T>> {
    let cfg = f.config();
    cfg.check_level(n_max)?;
    cfg.check_index(x)?;
    let lebesgue = (0..=n_max).map(|n| f.interval_mean(x, n)).collect::<Result<_>>()?;
    Ok(PointDiagnostic { point: x, lebesgue, vilenkin_lebesgue: Vec::new(), mean_error: Vec::new() })
}

/// `W_A f(x) = sum_{s<A} M_s sum_{r=1}^{m_s-1} int_{I_A(x - r e_s)} |f(t) - f(x)| dt`.
pub fn w_operator<T: Real>(f: &StepFunction<T>, x: usize, a: usize) -> Result<T> {
    let cfg = f.config();
    cfg.check_level(a)?;
    cfg.check_index(x)?;
    let step = cfg.subgroup_size(a);
    let count = cfg.order() / step;
    let fx = f.at(x);
    let inv = T::one() / T::count(cfg.order());
    let mut total = CompensatedSum::new();
    for s in 0..a {
        let ms = cfg.subgroup_size(s);
        let mut inner = CompensatedSum::new();
        for r in 1..cfg.radix(s) {
            let center = cfg.sub_index(x, r * ms);
            let base = center % step;
            for j in 0..count {
                inner.add((f.at(base + j * step) - fx).norm());
            }
        }
        total.add(inner.value() * inv * T::count(ms));
    }
    Ok(total.value())
}

/// `W_A f(x)` for `A = 0 ..= a_max`, paired with the error of `mean_{M_A}` at `x`.
pub fn vilenkin_lebesgue_trace<T: Real>(
    f: &StepFunction<T>,
    x: usize,
    a_max: usize,
    family: &MeanFamily<T>,
) -> Result<PointDiagnostic<T>> {
    let cfg = f.config();
    cfg.check_level(a_max)?;
    cfg.check_index(x)?;
    let vilenkin_lebesgue = (0..=a_max).map(|a| w_operator(f, x, a)).collect::<Result<_>>()?;
    let engine = MeanEngine::<T>::new(cfg);
    let spectrum = engine.spectrum(f)?;
    let mut mean_error = Vec::new();
    for a in 0..=a_max {
        let n = cfg.subgroup_size(a);
        match engine.mean_from_spectrum(family, n, &spectrum) {
            Ok(mean) => mean_error.push((n, (mean.at(x) - f.at(x)).norm())),
            Err(Error::ZeroNormalizer(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let lebesgue = (0..=a_max).map(|n| f.interval_mean(x, n)).collect::<Result<_>>()?;
    Ok(PointDiagnostic { point: x, lebesgue, vilenkin_lebesgue, mean_error })
}
