use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::CharacterSystem;
use crate::error::Result;
use crate::function_space::StepFunction;
use crate::group::GroupConfig;
use crate::scalar::Real;

/// A test function with a label suitable for output headers.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture<T> {
    pub label: String,
    pub function: StepFunction<T>,
}

impl<T: Real> Fixture<T> {
    /// `sum c_n psi_n` for the given `(n, c_n)` terms.
    pub fn polynomial(cfg: &GroupConfig, terms: &[(usize, Complex<T>)]) -> Result<Self> {
        let chars = CharacterSystem::<T>::new(cfg);
        let mut values = vec![Complex::new(T::zero(), T::zero()); cfg.order()];
        for &(n, c) in terms {
            for (v, psi) in values.iter_mut().zip(chars.character_row(n)?) {
                *v += c * psi;
            }
        }
        let label = format!(
            "poly[{}]",
            terms.iter().map(|(n, _)| n.to_string()).collect::<Vec<_>>().join(" ")
        );
        Ok(Self { label, function: StepFunction::from_values(cfg, values)? })
    }

    pub fn character(cfg: &GroupConfig, n: usize) -> Result<Self> {
        let mut fixture = Self::polynomial(cfg, &[(n, Complex::new(T::one(), T::zero()))])?;
        fixture.label = format!("psi[{n}]");
        Ok(fixture)
    }

    pub fn constant(cfg: &GroupConfig, c: Complex<T>) -> Self {
        Self { label: format!("const[{}]", c.re), function: StepFunction::constant(cfg, c) }
    }

    /// Indicator of `I_n(center)`.
    pub fn indicator(cfg: &GroupConfig, n: usize, center: usize) -> Result<Self> {
        Ok(Self {
            label: format!("indicator[I_{n}({center})]"),
            function: StepFunction::interval_indicator(cfg, n, center)?,
        })
    }

    /// Complex values with parts uniform in `[-1, 1)`, from a seeded ChaCha8 stream.
    pub fn random(cfg: &GroupConfig, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..cfg.order())
            .map(|_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
            .collect();
        Self { label: format!("random[seed={seed}]"), function: StepFunction::from_raw(cfg, values) }
    }

    /// Lacunary series `sum_{k<N} M_k^{-alpha} psi_{M_k}`, with `omega_p(1/M_n) ~ M_n^{-alpha}`.
    pub fn lacunary(cfg: &GroupConfig, alpha: f64) -> Result<Self> {
        let terms: Vec<(usize, Complex<T>)> = (0..cfg.resolution())
            .map(|k| {
                let mk = cfg.subgroup_size(k);
                (mk, Complex::new(T::lit((mk as f64).powf(-alpha)), T::zero()))
            })
            .collect();
        let mut fixture = Self::polynomial(cfg, &terms)?;
        fixture.label = format!("lacunary[alpha={alpha}]");
        Ok(fixture)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_reproducible() {
        let cfg = GroupConfig::from_radix(&[2, 3, 4]).unwrap();
        let a = Fixture::<f64>::random(&cfg, 7);
        let b = Fixture::<f64>::random(&cfg, 7);
        let c = Fixture::<f64>::random(&cfg, 8);
        assert_eq!(a, b);
        assert_ne!(a.function, c.function);
        assert!(a.function.values().iter().all(|v| v.re.abs() <= 1.0 && v.im.abs() <= 1.0));
    }

    #[test]
    fn lacunary_coefficients() {
        let cfg = GroupConfig::new(&[2], 4).unwrap();
        let f = Fixture::<f64>::lacunary(&cfg, 0.5).unwrap();
        let spec = crate::transform::naive_coefficients(&f.function);
        for k in 0..4 {
            let mk = 1usize << k;
            assert!((spec.coefficient(mk).re - (mk as f64).powf(-0.5)).abs() < 1e-12);
        }
        assert!(spec.coefficient(3).norm() < 1e-12);
    }
}
