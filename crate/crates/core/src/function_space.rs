//! Step functions on `I_N`-cosets and the functionals acting on them.
//!
//! Every integral is an exact quadrature: a step function takes one value per
//! coset of measure `1 / M_N`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{GroupConfig, GroupPoint};
use crate::scalar::{stable_complex_sum, stable_sum, Real};

/// Exponent `p` of an `L^p` functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Finite exponent; `p < 1` is rejected.
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        if p.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(p))
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "oo" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other.parse().map_err(|_| Error::Parse(format!("exponent `{other}`")))?;
                Exponent::finite(p)
            }
        }
    }
}

/// Value of an `L^p` or weak-`L^p` functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport<T> {
    pub p: Exponent,
    pub value: T,
}

/// Complex function constant on each `I_N`-coset.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction<T> {
    cfg: GroupConfig,
    values: Vec<Complex<T>>,
}

impl<T: Real> StepFunction<T> {
    pub fn from_values(cfg: &GroupConfig, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != cfg.order() {
            return Err(Error::LengthMismatch { expected: cfg.order(), found: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { cfg: cfg.clone(), values })
    }

    /// Unchecked constructor for values produced by this crate.
    pub(crate) fn from_raw(cfg: &GroupConfig, values: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(values.len(), cfg.order());
        Self { cfg: cfg.clone(), values }
    }

    pub fn from_real(cfg: &GroupConfig, values: &[T]) -> Result<Self> {
        Self::from_values(cfg, values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    /// Samples at canonical coset representatives (digits `>= N` are zero by construction).
    pub fn discretize(
        cfg: &GroupConfig,
        sampler: impl Fn(&GroupPoint) -> Complex<T>,
    ) -> Result<Self> {
        let values = (0..cfg.order())
            .map(|i| sampler(&cfg.index_point(i).expect("index below M_N")))
            .collect();
        Self::from_values(cfg, values)
    }

    pub fn constant(cfg: &GroupConfig, c: Complex<T>) -> Self {
        Self::from_raw(cfg, vec![c; cfg.order()])
    }

    pub fn zeros(cfg: &GroupConfig) -> Self {
        Self::constant(cfg, Complex::new(T::zero(), T::zero()))
    }

    /// Indicator of `I_n(x)` with `x` given by its coset index.
    pub fn interval_indicator(cfg: &GroupConfig, n: usize, center: usize) -> Result<Self> {
        cfg.check_level(n)?;
        cfg.check_index(center)?;
        let values = (0..cfg.order())
            .map(|t| {
                if cfg.interval_contains_index(center, n, t) {
                    Complex::new(T::one(), T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            })
            .collect();
        Ok(Self::from_raw(cfg, values))
    }

    pub fn config(&self) -> &GroupConfig {
        &self.cfg
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at a coset index.
    pub fn at(&self, x: usize) -> Complex<T> {
        self.values[x]
    }

    pub fn ensure_same_config(&self, other: &Self) -> Result<()> {
        if self.cfg == other.cfg {
            Ok(())
        } else {
            Err(Error::ConfigMismatch)
        }
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self::from_raw(&self.cfg, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self> {
        self.ensure_same_config(other)?;
        Ok(Self::from_raw(
            &self.cfg,
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|v| v * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// Pointwise modulus as a real-valued step function.
    pub fn modulus(&self) -> Self {
        self.map(|v| Complex::new(v.norm(), T::zero()))
    }

    /// `x -> f(-x)`.
    pub fn reflect(&self) -> Self {
        let values = (0..self.cfg.order()).map(|x| self.values[self.cfg.neg_index(x)]).collect();
        Self::from_raw(&self.cfg, values)
    }

    /// `x -> f(x - h)`.
    pub fn translate(&self, h: usize) -> Self {
        let values = (0..self.cfg.order()).map(|x| self.values[self.cfg.sub_index(x, h)]).collect();
        Self::from_raw(&self.cfg, values)
    }

    /// `int f dmu = (1/M_N) sum_x f(x)`.
    pub fn integral(&self) -> Complex<T> {
        stable_complex_sum(self.values.iter().copied()) / T::count(self.cfg.order())
    }

    /// `int_E f dmu` over the cosets selected by `mask`.
    pub fn integral_over(&self, mask: impl Fn(usize) -> bool) -> Complex<T> {
        stable_complex_sum((0..self.values.len()).filter(|&x| mask(x)).map(|x| self.values[x]))
            / T::count(self.cfg.order())
    }

    /// Average of `f` over `I_n(x)`.
    pub fn interval_mean(&self, x: usize, n: usize) -> Result<Complex<T>> {
        self.cfg.check_level(n)?;
        self.cfg.check_index(x)?;
        let step = self.cfg.subgroup_size(n);
        let base = x % step;
        let count = self.cfg.order() / step;
        let sum = stable_complex_sum((0..count).map(|j| self.values[base + j * step]));
        Ok(sum / T::count(count))
    }

    pub fn lp_norm(&self, p: Exponent) -> NormReport<T> {
        NormReport { p, value: lp_norm_of(&self.values, p) }
    }

    /// Weak-`L^p` quasi-norm: `max over levels y of y * mu(|f| >= y)^{1/p}`.
    ///
    /// The supremum of `y mu(|f| > y)^{1/p}` over all `y > 0` is approached from
    /// below at each attained level `y`, where it equals the value above.
    pub fn weak_lp(&self, p: Exponent) -> Result<NormReport<T>> {
        let p_val = match p {
            Exponent::Finite(p) => p,
            Exponent::Infinity => return Err(Error::InvalidExponent(f64::INFINITY)),
        };
        let mut levels: Vec<T> = self.values.iter().map(|v| v.norm()).collect();
        levels.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
        let total = T::count(levels.len());
        let inv_p = T::lit(1.0 / p_val);
        let mut best = T::zero();
        // levels sorted descending: the first i+1 entries are >= levels[i]
        for (i, &y) in levels.iter().enumerate() {
            if y <= T::zero() {
                break;
            }
            let mut j = i;
            while j + 1 < levels.len() && levels[j + 1] == y {
                j += 1;
            }
            let measure = T::count(j + 1) / total;
            best = best.max(y * measure.powf(inv_p));
        }
        Ok(NormReport { p, value: best })
    }

    /// Sup-norm distance to another step function.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Direct `O(M_N^2)` convolution `(f*g)(x) = (1/M_N) sum_t f(x - t) g(t)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.ensure_same_config(other)?;
        let cfg = &self.cfg;
        let inv = T::one() / T::count(cfg.order());
        let values = (0..cfg.order())
            .into_par_iter()
            .map(|x| {
                stable_complex_sum(
                    (0..cfg.order()).map(|t| self.values[cfg.sub_index(x, t)] * other.values[t]),
                ) * inv
            })
            .collect();
        Ok(Self::from_raw(cfg, values))
    }

    /// `omega_p(1/M_n, f) = max over h in I_n of ||f(. - h) - f||_p`.
    pub fn modulus_of_continuity(&self, p: Exponent, n: usize) -> Result<T> {
        self.cfg.check_level(n)?;
        let step = self.cfg.subgroup_size(n);
        let shifts = self.cfg.order() / step;
        let worst = (0..shifts)
            .into_par_iter()
            .map(|j| {
                let h = j * step;
                let diff: Vec<Complex<T>> = (0..self.cfg.order())
                    .map(|x| self.values[self.cfg.sub_index(x, h)] - self.values[x])
                    .collect();
                lp_norm_of(&diff, p)
            })
            .reduce(T::zero, T::max);
        Ok(worst)
    }
}

/// `( (1/M) sum |v|^p )^{1/p}`, or `max |v|` for `p = inf`.
pub fn lp_norm_of<T: Real>(values: &[Complex<T>], p: Exponent) -> T {
    match p {
        Exponent::Infinity => values.iter().map(|v| v.norm()).fold(T::zero(), T::max),
        Exponent::Finite(p) => {
            let n = T::count(values.len());
            if p == 1.0 {
                stable_sum(values.iter().map(|v| v.norm())) / n
            } else if p == 2.0 {
                (stable_sum(values.iter().map(|v| v.norm_sqr())) / n).sqrt()
            } else {
                let pt = T::lit(p);
                (stable_sum(values.iter().map(|v| v.norm().powf(pt))) / n).powf(T::one() / pt)
            }
        }
    }
}
