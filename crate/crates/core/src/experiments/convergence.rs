use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function_space::{Exponent, StepFunction};
use crate::group::GroupConfig;
use crate::means::{MeanEngine, MeanFamily};
use crate::scalar::Real;

/// How the error of a mean is measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorMeasure {
    Norm(Exponent),
    /// `|mean_n f(x) - f(x)|` at a coset index.
    Point(usize),
}

impl fmt::Display for ErrorMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorMeasure::Norm(p) => write!(f, "p={p}"),
            ErrorMeasure::Point(x) => write!(f, "x={x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceCurve {
    pub family: String,
    pub fixture: String,
    pub measure: ErrorMeasure,
    pub grid: Vec<usize>,
    pub errors: Vec<f64>,
}

impl ConvergenceCurve {
    pub fn last(&self) -> Option<f64> {
        self.errors.last().copied()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }

    pub fn sup(&self) -> f64 {
        self.errors.iter().copied().fold(0.0, f64::max)
    }
}

/// Validates a strictly increasing grid inside `[1, M_N]`.
pub fn check_grid(cfg: &GroupConfig, grid: &[usize]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter { name: "grid", value: 0.0, reason: "empty grid" });
    }
    if let Some(&bad) = grid.iter().find(|&&n| n == 0 || n > cfg.order()) {
        return Err(Error::IndexOutOfRange { index: bad, bound: cfg.order() + 1 });
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter {
            name: "grid",
            value: f64::NAN,
            reason: "grid must be strictly increasing",
        });
    }
    Ok(())
}

/// `M_n` for each level in `levels`.
pub fn level_grid(cfg: &GroupConfig, levels: impl IntoIterator<Item = usize>) -> Result<Vec<usize>> {
    levels
        .into_iter()
        .map(|n| {
            cfg.check_level(n)?;
            Ok(cfg.subgroup_size(n))
        })
        .collect()
}

fn curve<T: Real>(
    family: &MeanFamily<T>,
    f: &StepFunction<T>,
    fixture: &str,
    measure: ErrorMeasure,
    grid: &[usize],
) -> Result<ConvergenceCurve> {
    let cfg = f.config();
    check_grid(cfg, grid)?;
    if let ErrorMeasure::Point(x) = measure {
        cfg.check_index(x)?;
    }
    let engine = MeanEngine::<T>::new(cfg);
    let spectrum = engine.spectrum(f)?;
    let errors = grid
        .par_iter()
        .map(|&n| {
            let diff = engine.mean_from_spectrum(family, n, &spectrum)?.sub(f)?;
            Ok(match measure {
                ErrorMeasure::Norm(p) => diff.lp_norm(p).value.as_f64(),
                ErrorMeasure::Point(x) => diff.at(x).norm().as_f64(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceCurve {
        family: family.label(),
        fixture: fixture.to_string(),
        measure,
        grid: grid.to_vec(),
        errors,
    })
}

/// `n -> ||mean_n f - f||_p` over `grid`.
pub fn norm_convergence<T: Real>(
    family: &MeanFamily<T>,
    f: &StepFunction<T>,
    fixture: &str,
    p: Exponent,
    grid: &[usize],
) -> Result<ConvergenceCurve> {
    curve(family, f, fixture, ErrorMeasure::Norm(p), grid)
}

/// `n -> |mean_n f(x) - f(x)|` over `grid`.
pub fn pointwise_convergence<T: Real>(
    family: &MeanFamily<T>,
    f: &StepFunction<T>,
    fixture: &str,
    x: usize,
    grid: &[usize],
) -> Result<ConvergenceCurve> {
    curve(family, f, fixture, ErrorMeasure::Point(x), grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::Fixture;

    #[test]
    fn fejer_on_character() {
        let cfg = GroupConfig::from_radix(&[2, 3, 4]).unwrap();
        let f = Fixture::<f64>::character(&cfg, 3).unwrap();
        let grid: Vec<usize> = (4..=24).collect();
        let c = norm_convergence(&MeanFamily::Fejer, &f.function, &f.label, Exponent::Infinity, &grid).unwrap();
        for (n, e) in c.grid.iter().zip(&c.errors) {
            assert!((e - 3.0 / *n as f64).abs() < 1e-9);
        }
        assert!(c.is_strictly_decreasing());
    }

    #[test]
    fn constant_is_fixed() {
        let cfg = GroupConfig::from_radix(&[2, 3, 4]).unwrap();
        let f = Fixture::<f64>::constant(&cfg, num_complex::Complex::new(2.5, 0.0));
        let grid: Vec<usize> = (1..=24).collect();
        let c = norm_convergence(&MeanFamily::Cesaro(0.5), &f.function, &f.label, Exponent::Finite(1.0), &grid).unwrap();
        assert!(c.sup() < 1e-12);
    }

    #[test]
    fn grid_validation() {
        let cfg = GroupConfig::from_radix(&[2, 3]).unwrap();
        assert!(check_grid(&cfg, &[1, 3, 6]).is_ok());
        assert!(check_grid(&cfg, &[0, 3]).is_err());
        assert!(check_grid(&cfg, &[3, 3]).is_err());
        assert!(check_grid(&cfg, &[7]).is_err());
        assert!(check_grid(&cfg, &[]).is_err());
        assert_eq!(level_grid(&cfg, 0..=2).unwrap(), vec![1, 2, 6]);
    }
}
