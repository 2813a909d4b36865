//! Numerical experiments built on the means and kernels.

mod convergence;
mod fixtures;
mod points;
mod rates;

pub use convergence::{check_grid, level_grid, norm_convergence, pointwise_convergence, ConvergenceCurve, ErrorMeasure};
pub use fixtures::Fixture;
pub use points::{lebesgue_point_trace, vilenkin_lebesgue_trace, w_operator, PointDiagnostic};
pub use rates::{
    lipschitz_rate_table, moricz_siddiqi_ratio, rate_levels, rate_table, riemann_lebesgue_trace, LipschitzReport,
    MonotoneBound, MoriczReport, MoriczRow, RateCase,
};
