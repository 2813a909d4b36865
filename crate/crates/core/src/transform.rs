//! Vilenkin-Fourier coefficients: the `O(M_N^2)` oracle and the fast
//! Kronecker-factored transform.
//!
//! The character table is the Kronecker product of the `m_k`-point DFT tables.
//! With coset index `x = sum x_k M_k`, coordinate `k` occupies stride `M_k`, so
//! the fast transform runs one stage per coordinate, each stage performing
//! `m_k`-point DFTs across that stride. Output order equals input order.

use num_complex::Complex;

use crate::characters::{roots_of_unity, CharacterSystem};
use crate::error::{Error, Result};
use crate::function_space::StepFunction;
use crate::group::GroupConfig;
use crate::scalar::{stable_complex_sum, stable_sum, Real};

/// Fourier coefficients `f^(0 .. M_N - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable<T> {
    cfg: GroupConfig,
    coefficients: Vec<Complex<T>>,
}

impl<T: Real> SpectrumTable<T> {
    pub fn from_coefficients(cfg: &GroupConfig, coefficients: Vec<Complex<T>>) -> Result<Self> {
        if coefficients.len() != cfg.order() {
            return Err(Error::LengthMismatch { expected: cfg.order(), found: coefficients.len() });
        }
        if let Some(index) =
            coefficients.iter().position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { cfg: cfg.clone(), coefficients })
    }

    pub fn config(&self) -> &GroupConfig {
        &self.cfg
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> Complex<T> {
        self.coefficients[n]
    }

    /// `sum |f^(n)|^2`.
    pub fn energy(&self) -> T {
        stable_sum(self.coefficients.iter().map(|c| c.norm_sqr()))
    }

    /// Coefficients multiplied by `multiplier(n)`.
    pub fn multiply(&self, multiplier: impl Fn(usize) -> T) -> Self {
        let coefficients =
            self.coefficients.iter().enumerate().map(|(n, &c)| c * multiplier(n)).collect();
        Self { cfg: self.cfg.clone(), coefficients }
    }

    /// Pointwise product of two spectra.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.cfg != other.cfg {
            return Err(Error::ConfigMismatch);
        }
        let coefficients =
            self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a * b).collect();
        Ok(Self { cfg: self.cfg.clone(), coefficients })
    }

    /// Largest `n` with a coefficient above `tol` in modulus, plus one.
    pub fn support_bound(&self, tol: T) -> usize {
        self.coefficients.iter().rposition(|c| c.norm() > tol).map_or(0, |n| n + 1)
    }
}

/// `f^(n) = (1/M_N) sum_x f(x) conj(psi_n(x))`, one character row at a time.
pub fn naive_coefficients<T: Real>(f: &StepFunction<T>) -> SpectrumTable<T> {
    let cfg = f.config();
    let chars = CharacterSystem::<T>::new(cfg);
    let inv = T::one() / T::count(cfg.order());
    let coefficients = (0..cfg.order())
        .map(|n| {
            let row = chars.character_row(n).expect("n < M_N");
            stable_complex_sum(f.values().iter().zip(row).map(|(&v, psi)| v * psi.conj())) * inv
        })
        .collect();
    SpectrumTable { cfg: cfg.clone(), coefficients }
}

/// Precomputed stage tables for one group configuration.
#[derive(Debug, Clone)]
pub struct FastTransform<T> {
    cfg: GroupConfig,
    roots: Vec<Vec<Complex<T>>>,
}

impl<T: Real> FastTransform<T> {
    pub fn new(cfg: &GroupConfig) -> Self {
        let roots = cfg.radices().iter().map(|&m| roots_of_unity(m)).collect();
        Self { cfg: cfg.clone(), roots }
    }

    pub fn config(&self) -> &GroupConfig {
        &self.cfg
    }

    /// Applies every stage in place; `inverse` selects `psi_n` over `conj(psi_n)`.
    fn run(&self, data: &mut [Complex<T>], inverse: bool) {
        let order = self.cfg.order();
        let mut line = Vec::with_capacity(self.cfg.max_radix());
        let mut out = Vec::with_capacity(self.cfg.max_radix());
        for k in 0..self.cfg.resolution() {
            let m = self.cfg.radix(k);
            let stride = self.cfg.subgroup_size(k);
            let block = self.cfg.subgroup_size(k + 1);
            let roots = &self.roots[k];
            for base in (0..order).step_by(block) {
                for offset in 0..stride {
                    let start = base + offset;
                    if m == 2 {
                        let a = data[start];
                        let b = data[start + stride];
                        data[start] = a + b;
                        data[start + stride] = a - b;
                        continue;
                    }
                    line.clear();
                    line.extend((0..m).map(|j| data[start + j * stride]));
                    out.clear();
                    for i in 0..m {
                        let mut acc = Complex::new(T::zero(), T::zero());
                        for (j, &v) in line.iter().enumerate() {
                            let w = roots[(i * j) % m];
                            acc += v * if inverse { w } else { w.conj() };
                        }
                        out.push(acc);
                    }
                    for (i, &v) in out.iter().enumerate() {
                        data[start + i * stride] = v;
                    }
                }
            }
        }
    }

    /// Fast forward transform, normalized by `1/M_N`.
    pub fn forward(&self, f: &StepFunction<T>) -> Result<SpectrumTable<T>> {
        if f.config() != &self.cfg {
            return Err(Error::ConfigMismatch);
        }
        let mut data = f.values().to_vec();
        self.run(&mut data, false);
        let inv = T::one() / T::count(self.cfg.order());
        data.iter_mut().for_each(|v| *v = *v * inv);
        Ok(SpectrumTable { cfg: self.cfg.clone(), coefficients: data })
    }

    /// `f(x) = sum_n f^(n) psi_n(x)`.
    pub fn inverse(&self, spectrum: &SpectrumTable<T>) -> Result<StepFunction<T>> {
        if spectrum.config() != &self.cfg {
            return Err(Error::ConfigMismatch);
        }
        let mut data = spectrum.coefficients().to_vec();
        self.run(&mut data, true);
        Ok(StepFunction::from_raw(&self.cfg, data))
    }

    /// `sum_n c(n) psi_n` for a real coefficient sequence.
    pub fn synthesize(&self, coefficient: impl Fn(usize) -> T) -> StepFunction<T> {
        let mut data: Vec<Complex<T>> =
            (0..self.cfg.order()).map(|n| Complex::new(coefficient(n), T::zero())).collect();
        self.run(&mut data, true);
        StepFunction::from_raw(&self.cfg, data)
    }

    /// Inverse transform of `f^` multiplied by `multiplier`.
    pub fn apply_multiplier(
        &self,
        spectrum: &SpectrumTable<T>,
        multiplier: impl Fn(usize) -> T,
    ) -> Result<StepFunction<T>> {
        self.inverse(&spectrum.multiply(multiplier))
    }

    /// Partial sum `S_n f = sum_{k<n} f^(k) psi_k` for `1 <= n <= M_N`.
    pub fn partial_sum(&self, f: &StepFunction<T>, n: usize) -> Result<StepFunction<T>> {
        check_partial_index(&self.cfg, n)?;
        let spectrum = self.forward(f)?;
        self.apply_multiplier(&spectrum, |k| if k < n { T::one() } else { T::zero() })
    }

    /// Convolution through the spectrum: `(f*g)^ = f^ g^`.
    pub fn convolve(&self, f: &StepFunction<T>, g: &StepFunction<T>) -> Result<StepFunction<T>> {
        let product = self.forward(f)?.product(&self.forward(g)?)?;
        self.inverse(&product)
    }
}

pub(crate) fn check_partial_index(cfg: &GroupConfig, n: usize) -> Result<()> {
    if n == 0 || n > cfg.order() {
        Err(Error::IndexOutOfRange { index: n, bound: cfg.order() + 1 })
    } else {
        Ok(())
    }
}

/// One-shot fast forward transform.
pub fn fvt_forward<T: Real>(f: &StepFunction<T>) -> SpectrumTable<T> {
    FastTransform::new(f.config()).forward(f).expect("plan built from the function's own config")
}

/// One-shot fast inverse transform.
pub fn fvt_inverse<T: Real>(spectrum: &SpectrumTable<T>) -> StepFunction<T> {
    FastTransform::new(spectrum.config())
        .inverse(spectrum)
        .expect("plan built from the spectrum's own config")
}

/// `S_n f` for `1 <= n <= M_N`.
pub fn partial_sum<T: Real>(f: &StepFunction<T>, n: usize) -> Result<StepFunction<T>> {
    FastTransform::new(f.config()).partial_sum(f, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg234() -> GroupConfig {
        GroupConfig::from_radix(&[2, 3, 4]).unwrap()
    }

    #[test]
    fn constant_has_single_coefficient() {
        let cfg = cfg234();
        let one = StepFunction::constant(&cfg, Complex::new(1.0, 0.0));
        let spec = fvt_forward(&one);
        assert!((spec.coefficient(0) - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!(spec.coefficients()[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn character_spectrum_is_delta() {
        let cfg = cfg234();
        let chars = CharacterSystem::<f64>::new(&cfg);
        for k in [1usize, 5, 13, 23] {
            let f = StepFunction::from_values(&cfg, chars.character_row(k).unwrap()).unwrap();
            let spec = naive_coefficients(&f);
            for n in 0..24 {
                let expected = if n == k { 1.0 } else { 0.0 };
                assert!((spec.coefficient(n) - Complex::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn indicator_spectrum() {
        let cfg = cfg234();
        let chars = CharacterSystem::<f64>::new(&cfg);
        let t = 17;
        for level in 0..=3 {
            let f = StepFunction::<f64>::interval_indicator(&cfg, level, t).unwrap();
            let spec = fvt_forward(&f);
            let m = cfg.subgroup_size(level) as f64;
            for j in 0..24 {
                let expected = if j < cfg.subgroup_size(level) {
                    chars.psi_index(j, t).conj() / m
                } else {
                    Complex::new(0.0, 0.0)
                };
                assert!((spec.coefficient(j) - expected).norm() < 1e-12, "level {level} j {j}");
            }
        }
    }

    #[test]
    fn dyadic_forward_is_scaled_hadamard() {
        let cfg = GroupConfig::from_radix(&[2, 2, 2]).unwrap();
        let values: Vec<f64> = vec![3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0];
        let f = StepFunction::from_real(&cfg, &values).unwrap();
        let spec = fvt_forward(&f);
        for n in 0..8usize {
            let direct: f64 = (0..8usize)
                .map(|x| if (n & x).count_ones() % 2 == 0 { values[x] } else { -values[x] })
                .sum::<f64>()
                / 8.0;
            assert!((spec.coefficient(n).re - direct).abs() < 1e-14);
            assert!(spec.coefficient(n).im.abs() < 1e-14);
        }
    }

    #[test]
    fn partial_sum_endpoints() {
        let cfg = cfg234();
        let values: Vec<f64> = (0..24).map(|i| ((i * 7) % 11) as f64 - 3.0).collect();
        let f = StepFunction::from_real(&cfg, &values).unwrap();
        let full = partial_sum(&f, 24).unwrap();
        assert!(full.max_abs_diff(&f) < 1e-12);
        let first = partial_sum(&f, 1).unwrap();
        let mean = f.integral();
        assert!(first.values().iter().all(|v| (v - mean).norm() < 1e-12));
        assert!(partial_sum(&f, 0).is_err());
        assert!(partial_sum(&f, 25).is_err());
    }

    #[test]
    fn plan_rejects_foreign_config() {
        let plan = FastTransform::<f64>::new(&cfg234());
        let f = StepFunction::constant(&GroupConfig::from_radix(&[2, 2]).unwrap(), Complex::new(1.0, 0.0));
        assert_eq!(plan.forward(&f).unwrap_err(), Error::ConfigMismatch);
    }
}
