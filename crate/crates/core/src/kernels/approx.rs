use rayon::prelude::*;

use crate::error::Result;
use crate::function_space::Exponent;
use crate::group::GroupConfig;
use crate::means::MeanFamily;
use crate::scalar::Real;

use super::KernelBuilder;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxIdentityRow {
    pub n: usize,
    /// `int Phi_n`, expected to be 1.
    pub integral: f64,
    /// `int |Phi_n|`, expected to stay bounded.
    pub l1: f64,
    /// `int_{G \ I_tail} |Phi_n|`, expected to vanish as `n` grows.
    pub tail_l1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxIdentityReport {
    pub family: String,
    pub tail_level: usize,
    pub rows: Vec<ApproxIdentityRow>,
    pub sup_l1: f64,
    pub max_integral_error: f64,
    /// Tail column never increases along the grid.
    pub tail_non_increasing: bool,
    /// First tail value over the last one.
    pub tail_decrease_factor: f64,
}

/// Tabulates the three approximate-identity quantities over `n_grid`.
pub fn approximate_identity_report<T: Real>(
    family: &MeanFamily<T>,
    cfg: &GroupConfig,
    n_grid: &[usize],
    tail_level: usize,
) -> Result<ApproxIdentityReport> {
    cfg.check_level(tail_level)?;
    let builder = KernelBuilder::<T>::new(cfg);
    let step = cfg.subgroup_size(tail_level);
    let rows = n_grid
        .par_iter()
        .map(|&n| {
            let kernel = builder.family(family, n)?.function;
            let modulus = kernel.modulus();
            Ok(ApproxIdentityRow {
                n,
                integral: kernel.integral().re.as_f64(),
                l1: kernel.lp_norm(Exponent::Finite(1.0)).value.as_f64(),
                tail_l1: modulus.integral_over(|x| x % step != 0).re.as_f64(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_l1 = rows.iter().map(|r| r.l1).fold(0.0, f64::max);
    let max_integral_error = rows.iter().map(|r| (r.integral - 1.0).abs()).fold(0.0, f64::max);
    let tail_non_increasing = rows.windows(2).all(|w| w[1].tail_l1 <= w[0].tail_l1 + 1e-12);
    let tail_decrease_factor = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) if b.tail_l1 > 0.0 => a.tail_l1 / b.tail_l1,
        (Some(a), Some(_)) if a.tail_l1 > 0.0 => f64::INFINITY,
        _ => 1.0,
    };
    Ok(ApproxIdentityReport {
        family: family.label(),
        tail_level,
        rows,
        sup_l1,
        max_integral_error,
        tail_non_increasing,
        tail_decrease_factor,
    })
}
