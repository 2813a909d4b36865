//! Generalized Rademacher functions and the Vilenkin character system.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{GroupConfig, GroupPoint};
use crate::scalar::Real;

/// Default cap on `M_N` for materialized character tables.
pub const DEFAULT_TABLE_CAP: usize = 4096;

/// `exp(2 pi i j / m)` for `j < m`, with the axis points snapped to exact values.
pub fn roots_of_unity<T: Real>(m: usize) -> Vec<Complex<T>> {
    (0..m)
        .map(|j| {
            if j == 0 {
                Complex::new(T::one(), T::zero())
            } else if 2 * j == m {
                Complex::new(-T::one(), T::zero())
            } else if 4 * j == m {
                Complex::new(T::zero(), T::one())
            } else if 4 * j == 3 * m {
                Complex::new(T::zero(), -T::one())
            } else {
                let angle = std::f64::consts::TAU * j as f64 / m as f64;
                Complex::new(T::lit(angle.cos()), T::lit(angle.sin()))
            }
        })
        .collect()
}

/// Character evaluator for one group configuration.
///
/// Holds one exact root table per coordinate; `psi_n(x)` is a product of
/// table lookups, never a repeated multiplication of a single root.
#[derive(Debug, Clone)]
pub struct CharacterSystem<T> {
    cfg: GroupConfig,
    roots: Vec<Vec<Complex<T>>>,
}

impl<T: Real> CharacterSystem<T> {
    pub fn new(cfg: &GroupConfig) -> Self {
        let roots = cfg.radices().iter().map(|&m| roots_of_unity(m)).collect();
        Self { cfg: cfg.clone(), roots }
    }

    pub fn config(&self) -> &GroupConfig {
        &self.cfg
    }

    /// `exp(2 pi i j / m_k)`.
    #[inline]
    pub fn root(&self, k: usize, j: usize) -> Complex<T> {
        self.roots[k][j % self.cfg.radix(k)]
    }

    /// `r_k(x) = exp(2 pi i x_k / m_k)`.
    pub fn rademacher(&self, k: usize, x: &GroupPoint) -> Result<Complex<T>> {
        if k >= self.cfg.resolution() {
            return Err(Error::LevelOutOfRange { level: k, resolution: self.cfg.resolution() });
        }
        self.cfg.validate(x)?;
        Ok(self.root(k, x.digit(k)))
    }

    /// `r_k` at a coset index.
    #[inline]
    pub fn rademacher_index(&self, k: usize, x: usize) -> Complex<T> {
        self.root(k, self.cfg.digit(x, k))
    }

    /// `psi_n(x) = prod_k r_k(x)^{n_k}`.
    pub fn psi(&self, n: usize, x: &GroupPoint) -> Result<Complex<T>> {
        self.cfg.check_index(n)?;
        let xi = self.cfg.point_index(x)?;
        Ok(self.psi_index(n, xi))
    }

    /// `psi_n` at a coset index; both arguments must be below `M_N`.
    #[inline]
    pub fn psi_index(&self, n: usize, x: usize) -> Complex<T> {
        let mut value = Complex::new(T::one(), T::zero());
        for k in 0..self.cfg.resolution() {
            let nk = self.cfg.digit(n, k);
            if nk == 0 {
                continue;
            }
            let xk = self.cfg.digit(x, k);
            if xk == 0 {
                continue;
            }
            value *= self.roots[k][(nk * xk) % self.cfg.radix(k)];
        }
        value
    }

    /// Row `n` of the character table: `psi_n` at every coset.
    pub fn character_row(&self, n: usize) -> Result<Vec<Complex<T>>> {
        self.cfg.check_index(n)?;
        // psi_n(x) = prod_k r_k(x)^{n_k}; expand coordinate by coordinate so
        // that index x_low + M_k x_k is filled in order.
        let mut row = vec![Complex::new(T::one(), T::zero())];
        for k in 0..self.cfg.resolution() {
            let m = self.cfg.radix(k);
            let nk = self.cfg.digit(n, k);
            let mut next = Vec::with_capacity(row.len() * m);
            for j in 0..m {
                let factor = self.roots[k][(nk * j) % m];
                next.extend(row.iter().map(|&v| v * factor));
            }
            row = next;
        }
        Ok(row)
    }
}

/// Dense `M_N x M_N` table of `psi_n(x_j)`, row-major in `n`.
#[derive(Debug, Clone)]
pub struct CharacterTable<T> {
    order: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> CharacterTable<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, n: usize, x: usize) -> Complex<T> {
        self.entries[n * self.order + x]
    }

    pub fn row(&self, n: usize) -> &[Complex<T>] {
        &self.entries[n * self.order..(n + 1) * self.order]
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Max entrywise deviation of the normalized Gram matrix from the identity.
    pub fn gram_deviation(&self) -> T {
        let inv = T::one() / T::count(self.order);
        (0..self.order)
            .into_par_iter()
            .map(|a| {
                let ra = self.row(a);
                let mut worst = T::zero();
                for b in 0..self.order {
                    let rb = self.row(b);
                    let dot: Complex<T> =
                        ra.iter().zip(rb).map(|(u, v)| u * v.conj()).sum::<Complex<T>>() * inv;
                    let target = if a == b { T::one() } else { T::zero() };
                    worst = worst.max((dot - Complex::new(target, T::zero())).norm());
                }
                worst
            })
            .reduce(T::zero, T::max)
    }
}

/// Materializes the character table, refusing groups with `M_N > cap`.
pub fn character_table<T: Real>(cfg: &GroupConfig, cap: usize) -> Result<CharacterTable<T>> {
    let order = cfg.order();
    if order > cap {
        return Err(Error::TableTooLarge { order, cap });
    }
    let system = CharacterSystem::<T>::new(cfg);
    let entries: Vec<Complex<T>> = (0..order)
        .into_par_iter()
        .flat_map_iter(|n| {
            let system = &system;
            (0..order).map(move |x| system.psi_index(n, x))
        })
        .collect();
    Ok(CharacterTable { order, entries })
}
