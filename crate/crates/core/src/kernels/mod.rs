//! Dirichlet, Fejér, Nörlund and T kernels.

mod approx;
mod identities;

pub use approx::{approximate_identity_report, ApproxIdentityReport, ApproxIdentityRow};
pub use identities::{
    admissible_params, kernel_identity_check, run_identity_suite, IdentityCheck, IdentityId,
    IdentityParams, IdentityReport,
};

use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;

use crate::characters::CharacterSystem;
use crate::error::{Error, Result};
use crate::function_space::StepFunction;
use crate::group::GroupConfig;
use crate::means::{MeanFamily, TVariant, WeightSequence};
use crate::scalar::Real;
use crate::transform::{check_partial_index, FastTransform};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Dirichlet,
    Fejer,
    Norlund,
    TRegular,
    TIdentity,
    /// Any other summation family.
    Mean,
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelKind::Dirichlet => "dirichlet",
            KernelKind::Fejer => "fejer",
            KernelKind::Norlund => "norlund",
            KernelKind::TRegular => "t-regular",
            KernelKind::TIdentity => "t-identity",
            KernelKind::Mean => "mean",
        })
    }
}

/// A kernel tagged with its kind, index and weight label.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelFunction<T> {
    pub kind: KernelKind,
    pub index: usize,
    pub weights: Option<String>,
    pub function: StepFunction<T>,
}

impl<T: Real> KernelFunction<T> {
    pub fn integral(&self) -> Complex<T> {
        self.function.integral()
    }

    pub fn values(&self) -> &[Complex<T>] {
        self.function.values()
    }

    pub fn into_function(self) -> StepFunction<T> {
        self.function
    }
}

/// Kernel constructor bound to one configuration.
#[derive(Debug, Clone)]
pub struct KernelBuilder<T> {
    chars: CharacterSystem<T>,
    plan: FastTransform<T>,
}

impl<T: Real> KernelBuilder<T> {
    pub fn new(cfg: &GroupConfig) -> Self {
        Self { chars: CharacterSystem::new(cfg), plan: FastTransform::new(cfg) }
    }

    pub fn config(&self) -> &GroupConfig {
        self.chars.config()
    }

    pub fn characters(&self) -> &CharacterSystem<T> {
        &self.chars
    }

    fn tag(&self, kind: KernelKind, index: usize, weights: Option<String>, function: StepFunction<T>) -> KernelFunction<T> {
        KernelFunction { kind, index, weights, function }
    }

    /// `psi_n` as a step function.
    pub fn character(&self, n: usize) -> Result<StepFunction<T>> {
        Ok(StepFunction::from_raw(self.config(), self.chars.character_row(n)?))
    }

    /// `D_n = sum_{k<n} psi_k` by direct summation; `D_0 = 0`.
    pub fn dirichlet_values(&self, n: usize) -> Result<StepFunction<T>> {
        let cfg = self.config();
        if n > cfg.order() {
            return Err(Error::IndexOutOfRange { index: n, bound: cfg.order() + 1 });
        }
        let values = (0..cfg.order())
            .into_par_iter()
            .map(|x| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc += self.chars.psi_index(k, x);
                }
                acc
            })
            .collect();
        Ok(StepFunction::from_raw(cfg, values))
    }

    /// `D_n` for `1 <= n <= M_N`.
    pub fn dirichlet(&self, n: usize) -> Result<KernelFunction<T>> {
        check_partial_index(self.config(), n)?;
        Ok(self.tag(KernelKind::Dirichlet, n, None, self.dirichlet_values(n)?))
    }

    /// Closed form for `n = s M_k`, `1 <= s < m_k` (or `n = M_N`):
    /// `D_{s M_k} = M_k 1_{I_k} sum_{j<s} r_k^j`.
    pub fn dirichlet_closed(&self, n: usize) -> Result<KernelFunction<T>> {
        let cfg = self.config();
        let (level, s) = scaled_shape(cfg, n)?;
        let mk = T::count(cfg.subgroup_size(level));
        let values = (0..cfg.order())
            .map(|x| {
                if x % cfg.subgroup_size(level) != 0 {
                    return Complex::new(T::zero(), T::zero());
                }
                if level == cfg.resolution() {
                    return Complex::new(mk, T::zero());
                }
                let mut geometric = Complex::new(T::zero(), T::zero());
                let digit = cfg.digit(x, level);
                for j in 0..s {
                    geometric += self.chars.root(level, j * digit);
                }
                geometric * mk
            })
            .collect();
        Ok(self.tag(KernelKind::Dirichlet, n, None, StepFunction::from_raw(cfg, values)))
    }

    /// Kernel of any summation family through its Fourier multiplier.
    pub fn family(&self, family: &MeanFamily<T>, n: usize) -> Result<KernelFunction<T>> {
        check_partial_index(self.config(), n)?;
        let c = family.multiplier(n)?;
        let function = self.plan.synthesize(|j| if j < n { c[j] } else { T::zero() });
        let (kind, weights) = match family {
            MeanFamily::PartialSums => (KernelKind::Dirichlet, None),
            MeanFamily::Fejer => (KernelKind::Fejer, None),
            MeanFamily::Norlund(q) => (KernelKind::Norlund, Some(q.label())),
            MeanFamily::TMean(q, TVariant::Regular) => (KernelKind::TRegular, Some(q.label())),
            MeanFamily::TMean(q, TVariant::IdentityForm) => (KernelKind::TIdentity, Some(q.label())),
            other => (KernelKind::Mean, Some(other.label())),
        };
        Ok(self.tag(kind, n, weights, function))
    }

    /// `K_n = (1/n) sum_{k=1}^n D_k`.
    pub fn fejer(&self, n: usize) -> Result<KernelFunction<T>> {
        self.family(&MeanFamily::Fejer, n)
    }

    /// `K_n` by averaging directly summed Dirichlet kernels.
    pub fn fejer_direct(&self, n: usize) -> Result<KernelFunction<T>> {
        let cfg = self.config();
        check_partial_index(cfg, n)?;
        let inv = T::one() / T::count(n);
        let values = (0..cfg.order())
            .into_par_iter()
            .map(|x| {
                let mut d = Complex::new(T::zero(), T::zero());
                let mut total = Complex::new(T::zero(), T::zero());
                for k in 1..=n {
                    d += self.chars.psi_index(k - 1, x);
                    total += d;
                }
                total * inv
            })
            .collect();
        Ok(self.tag(KernelKind::Fejer, n, None, StepFunction::from_raw(cfg, values)))
    }

    /// Closed form of `K_{M_n}`: `(M_n + 1)/2` on `I_n`; `M_t / (1 - r_t(x))` for
    /// `x in I_t \ I_{t+1}` with `x - x_t e_t in I_n`; zero elsewhere.
    pub fn fejer_closed(&self, level: usize) -> Result<KernelFunction<T>> {
        let cfg = self.config();
        cfg.check_level(level)?;
        let mn = cfg.subgroup_size(level);
        let values = (0..cfg.order())
            .map(|x| {
                if x % mn == 0 {
                    return Complex::new(T::count(mn + 1) / T::lit(2.0), T::zero());
                }
                let t = cfg.leading_zero_level(x).expect("x outside I_N");
                let mt = cfg.subgroup_size(t);
                let rest = x - cfg.digit(x, t) * mt;
                if t < level && rest % mn == 0 {
                    let one = Complex::new(T::one(), T::zero());
                    Complex::new(T::count(mt), T::zero()) / (one - self.chars.rademacher_index(t, x))
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            })
            .collect();
        Ok(self.tag(KernelKind::Fejer, mn, None, StepFunction::from_raw(cfg, values)))
    }

    /// `F_n = (1/Q_n) sum_{k=1}^n q_{n-k} D_k`.
    pub fn norlund(&self, q: &WeightSequence<T>, n: usize) -> Result<KernelFunction<T>> {
        self.family(&MeanFamily::Norlund(q.clone()), n)
    }

    /// `F^{-1}_n` in the chosen index convention.
    pub fn tmean(&self, q: &WeightSequence<T>, n: usize, variant: TVariant) -> Result<KernelFunction<T>> {
        self.family(&MeanFamily::TMean(q.clone(), variant), n)
    }
}

/// Decomposes `n = s M_k` with `1 <= s < m_k`, or `n = M_N` as `(N, 1)`.
fn scaled_shape(cfg: &GroupConfig, n: usize) -> Result<(usize, usize)> {
    if n == cfg.order() {
        return Ok((cfg.resolution(), 1));
    }
    if n == 0 || n > cfg.order() {
        return Err(Error::UnsupportedIndex(format!("{n} is not of the form s*M_k")));
    }
    let digits = cfg.natural_digits(n)?;
    let nonzero: Vec<usize> = (0..digits.0.len()).filter(|&k| digits.0[k] != 0).collect();
    match nonzero.as_slice() {
        [k] => Ok((*k, digits.0[*k])),
        _ => Err(Error::UnsupportedIndex(format!("{n} is not of the form s*M_k"))),
    }
}

/// `D_n` on `cfg`.
pub fn dirichlet<T: Real>(cfg: &GroupConfig, n: usize) -> Result<KernelFunction<T>> {
    KernelBuilder::new(cfg).dirichlet(n)
}

pub fn dirichlet_closed<T: Real>(cfg: &GroupConfig, n: usize) -> Result<KernelFunction<T>> {
    KernelBuilder::new(cfg).dirichlet_closed(n)
}

/// `K_n` on `cfg`.
pub fn fejer<T: Real>(cfg: &GroupConfig, n: usize) -> Result<KernelFunction<T>> {
    KernelBuilder::new(cfg).fejer(n)
}

/// Closed form of `K_{M_n}`, indexed by the level `n`.
pub fn fejer_closed<T: Real>(cfg: &GroupConfig, level: usize) -> Result<KernelFunction<T>> {
    KernelBuilder::new(cfg).fejer_closed(level)
}

pub fn norlund_kernel<T: Real>(cfg: &GroupConfig, q: &WeightSequence<T>, n: usize) -> Result<KernelFunction<T>> {
    KernelBuilder::new(cfg).norlund(q, n)
}

pub fn tmean_kernel<T: Real>(
    cfg: &GroupConfig,
    q: &WeightSequence<T>,
    n: usize,
    variant: TVariant,
) -> Result<KernelFunction<T>> {
    KernelBuilder::new(cfg).tmean(q, n, variant)
}
