//! Harmonic analysis on bounded Vilenkin groups at finite resolution.
//!
//! The group `G_m` is materialized to `M_N` cosets of `I_N`. On top of that sit
//! the Vilenkin character system, a fast Kronecker-factored transform,
//! Dirichlet/Fejér/Nörlund/T kernels, the corresponding summability means and
//! a set of convergence experiments.
//!
//! Analytic types are generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix the scalar.
//!
//! ```
//! use vilenkin::{GroupConfig, KernelBuilder64, StepFunction64};
//!
//! let cfg = GroupConfig::from_radix(&[2, 3, 4]).unwrap();
//! let d6 = KernelBuilder64::new(&cfg).dirichlet(6).unwrap().function;
//! let expected = StepFunction64::interval_indicator(&cfg, 2, 0).unwrap().scale(6.0.into());
//! assert!(d6.max_abs_diff(&expected) < 1e-12);
//! ```

pub mod characters;
pub mod error;
pub mod experiments;
pub mod fit;
pub mod function_space;
pub mod group;
pub mod io;
pub mod kernels;
pub mod means;
pub mod scalar;
pub mod transform;

pub use characters::CharacterSystem;
pub use error::{Error, Result};
pub use function_space::{Exponent, StepFunction};
pub use group::{GroupConfig, GroupPoint};
pub use kernels::{IdentityId, KernelBuilder, KernelFunction};
pub use means::{MeanEngine, MeanFamily, TVariant, WeightSequence};
pub use num_complex::Complex;
pub use scalar::Real;
pub use transform::{FastTransform, SpectrumTable};

pub type StepFunction64 = StepFunction<f64>;
pub type StepFunction32 = StepFunction<f32>;
pub type SpectrumTable64 = SpectrumTable<f64>;
pub type SpectrumTable32 = SpectrumTable<f32>;
pub type CharacterSystem64 = CharacterSystem<f64>;
pub type CharacterSystem32 = CharacterSystem<f32>;
pub type FastTransform64 = FastTransform<f64>;
pub type FastTransform32 = FastTransform<f32>;
pub type KernelBuilder64 = KernelBuilder<f64>;
pub type KernelBuilder32 = KernelBuilder<f32>;
pub type MeanEngine64 = MeanEngine<f64>;
pub type MeanEngine32 = MeanEngine<f32>;
pub type MeanFamily64 = MeanFamily<f64>;
pub type MeanFamily32 = MeanFamily<f32>;
pub type WeightSequence64 = WeightSequence<f64>;
pub type WeightSequence32 = WeightSequence<f32>;
