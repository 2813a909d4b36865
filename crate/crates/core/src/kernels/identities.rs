//! Numerical checks of the Dirichlet, Fejér and Nörlund kernel identities.
//!
//! Equality identities report the largest pointwise residual. Inequalities
//! with an unspecified absolute constant report the smallest constant that
//! makes the bound hold on the configuration; they pass when it is finite.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{complement_decomposition, CylinderRegion, GroupConfig};
use crate::means::{TVariant, WeightSequence};
use crate::scalar::Real;

use super::KernelBuilder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `D_{j+M_n} = D_{M_n} + psi_{M_n} D_j`, `j <= (m_n - 1) M_n`.
    DnShift,
    /// `D_{M_n - j} = D_{M_n} - psi_{M_n - 1} conj(D_j)`, `j < M_n`.
    DnReflect,
    /// `D_{s M_n} = D_{M_n} sum_{k<s} r_n^k`.
    DnScaled,
    /// `D_n = psi_n sum_j D_{M_j} sum_{k=m_j-n_j}^{m_j-1} r_j^k`.
    DnExpansion,
    /// `s M_n K_{s M_n}` in terms of `D_{M_n}` and `K_{M_n}`.
    KnScaled,
    /// `n K_n` through the digit blocks of `n`.
    KnDecomp,
    /// `n |K_n| <= c sum_{l=<n>}^{|n|} M_l |K_{M_l}|`.
    KnBound,
    /// `|K_{M_n}(x)| <= c M_k` on `I_N^{k,l}`.
    KnPointBound,
    /// `|K_{M_n}(x)| <= c sum_{s<=n} M_s sum_{r=1}^{m_s-1} 1_{I_n}(x - r e_s)`.
    KnSupport,
    /// `K_{M_n} = 0` on `I_N^{k,l}` when `n > l`.
    KnVanish,
    /// `F_{M_n} = D_{M_n} - psi_{M_n-1} conj(F^{-1}_{M_n})`.
    FnReflect,
    /// `F^{-1}_{M_n} = D_{M_n} - psi_{M_n-1} conj(F_{M_n})`.
    FnReflectDual,
    /// `|D_n(x)| <= c M_s` on `I_s \ I_{s+1}`.
    DnLocalBound,
    /// `n |F_n| <= c sum_{j<=|n|} M_j |K_{M_j}|`.
    FnBound,
    /// `M_L |(1/Q_n) sum_{j=M_L}^n q_{n-j} D_j| <= c sum_{j<=|n|} M_j |K_{M_j}|`.
    FnTailBound,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::DnShift,
        IdentityId::DnReflect,
        IdentityId::DnScaled,
        IdentityId::DnExpansion,
        IdentityId::KnScaled,
        IdentityId::KnDecomp,
        IdentityId::KnBound,
        IdentityId::KnPointBound,
        IdentityId::KnSupport,
        IdentityId::KnVanish,
        IdentityId::FnReflect,
        IdentityId::FnReflectDual,
        IdentityId::DnLocalBound,
        IdentityId::FnBound,
        IdentityId::FnTailBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::DnShift => "DN_SHIFT",
            IdentityId::DnReflect => "DN_REFLECT",
            IdentityId::DnScaled => "DN_SCALED",
            IdentityId::DnExpansion => "DN_EXPANSION",
            IdentityId::KnScaled => "KN_SCALED",
            IdentityId::KnDecomp => "KN_DECOMP",
            IdentityId::KnBound => "KN_BOUND",
            IdentityId::KnPointBound => "KN_POINT_BOUND",
            IdentityId::KnSupport => "KN_SUPPORT",
            IdentityId::KnVanish => "KN_VANISH",
            IdentityId::FnReflect => "FN_REFLECT",
            IdentityId::FnReflectDual => "FN_REFLECT_DUAL",
            IdentityId::DnLocalBound => "DN_LOCAL_BOUND",
            IdentityId::FnBound => "FN_BOUND",
            IdentityId::FnTailBound => "FN_TAIL_BOUND",
        }
    }

    pub fn check(self) -> IdentityCheck {
        match self {
            IdentityId::KnBound
            | IdentityId::KnPointBound
            | IdentityId::KnSupport
            | IdentityId::DnLocalBound
            | IdentityId::FnBound
            | IdentityId::FnTailBound => IdentityCheck::Constant,
            _ => IdentityCheck::Equality,
        }
    }

    /// Whether the identity is parameterized by a weight sequence.
    pub fn uses_weights(self) -> bool {
        matches!(
            self,
            IdentityId::FnReflect
                | IdentityId::FnReflectDual
                | IdentityId::FnBound
                | IdentityId::FnTailBound
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityCheck {
    /// Residual is a max pointwise difference.
    Equality,
    /// Residual is the smallest admissible constant.
    Constant,
}

/// Parameters of one identity instance; unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityParams {
    pub n: Option<usize>,
    pub j: Option<usize>,
    pub s: Option<usize>,
    pub level: Option<usize>,
    pub weights: Option<String>,
}

impl IdentityParams {
    fn need(&self, id: IdentityId, field: &'static str, value: Option<usize>) -> Result<usize> {
        value.ok_or_else(|| Error::InvalidIdentityParams {
            id: id.name(),
            reason: format!("missing `{field}`"),
        })
    }

    fn weights<T: Real>(&self, id: IdentityId) -> Result<WeightSequence<T>> {
        self.weights
            .as_deref()
            .ok_or_else(|| Error::InvalidIdentityParams { id: id.name(), reason: "missing `q`".into() })?
            .parse()
    }
}

impl fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, value) in [("n", self.n), ("j", self.j), ("s", self.s), ("L", self.level)] {
            if let Some(v) = value {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(q) = &self.weights {
            parts.push(format!("q={q}"));
        }
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for IdentityParams {
    type Err = Error;

    /// Parses `n=1;j=2;q=fejer`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = IdentityParams::default();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) =
                part.split_once('=').ok_or_else(|| Error::Parse(format!("parameter `{part}`")))?;
            let number = || value.trim().parse::<usize>().map_err(|_| Error::Parse(format!("parameter `{part}`")));
            match key.trim() {
                "n" => out.n = Some(number()?),
                "j" => out.j = Some(number()?),
                "s" => out.s = Some(number()?),
                "L" | "level" => out.level = Some(number()?),
                "q" => out.weights = Some(value.trim().to_string()),
                other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub params: IdentityParams,
    pub check: IdentityCheck,
    /// Max residual, or the empirical constant for bounds.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn invalid(id: IdentityId, reason: impl Into<String>) -> Error {
    Error::InvalidIdentityParams { id: id.name(), reason: reason.into() }
}

type Values<T> = Vec<Complex<T>>;

struct Ctx<T> {
    b: KernelBuilder<T>,
}

impl<T: Real> Ctx<T> {
    fn cfg(&self) -> &GroupConfig {
        self.b.config()
    }

    fn d(&self, n: usize) -> Result<Values<T>> {
        Ok(self.b.dirichlet_values(n)?.into_values())
    }

    fn k(&self, n: usize) -> Result<Values<T>> {
        Ok(self.b.fejer(n)?.function.into_values())
    }

    fn psi(&self, n: usize) -> Result<Values<T>> {
        self.b.characters().character_row(n)
    }

    /// `r_k(x)^e` at every coset.
    fn r_pow(&self, k: usize, e: usize) -> Values<T> {
        let cfg = self.cfg();
        (0..cfg.order()).map(|x| self.b.characters().root(k, e * cfg.digit(x, k))).collect()
    }

    /// `sum_{l=from}^{to} M_l |K_{M_l}|`.
    fn fejer_envelope(&self, from: usize, to: usize) -> Result<Vec<T>> {
        let cfg = self.cfg();
        let mut out = vec![T::zero(); cfg.order()];
        for l in from..=to {
            let ml = cfg.subgroup_size(l);
            let k = self.k(ml)?;
            for (o, v) in out.iter_mut().zip(&k) {
                *o += T::count(ml) * v.norm();
            }
        }
        Ok(out)
    }
}

fn zeros<T: Real>(len: usize) -> Values<T> {
    vec![Complex::new(T::zero(), T::zero()); len]
}

fn mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Values<T> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn axpy<T: Real>(acc: &mut [Complex<T>], scale: Complex<T>, v: &[Complex<T>]) {
    acc.iter_mut().zip(v).for_each(|(a, x)| *a += scale * x);
}

fn scaled<T: Real>(v: &[Complex<T>], s: T) -> Values<T> {
    v.iter().map(|x| x * s).collect()
}

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Absolute equality tolerance before scaling.
fn base_tolerance<T: Real>() -> f64 {
    1e-9f64.max(1e4 * T::epsilon().as_f64())
}

fn equality<T: Real>(lhs: &[Complex<T>], rhs: &[Complex<T>]) -> (f64, f64) {
    let residual = lhs.iter().zip(rhs).map(|(a, b)| (a - b).norm().as_f64()).fold(0.0, f64::max);
    let scale = lhs.iter().chain(rhs).map(|v| v.norm().as_f64()).fold(1.0, f64::max);
    (residual, base_tolerance::<T>() * scale)
}

/// Smallest `c` with `lhs <= c rhs` pointwise, ignoring points where `lhs` vanishes.
fn constant<T: Real>(lhs: &[T], rhs: &[T], mask: impl Fn(usize) -> bool) -> f64 {
    let floor = base_tolerance::<T>() * lhs.iter().map(|v| v.as_f64()).fold(1.0, f64::max);
    let mut c = 0.0f64;
    for x in 0..lhs.len() {
        if !mask(x) {
            continue;
        }
        let (l, r) = (lhs[x].as_f64(), rhs[x].as_f64());
        if l <= floor {
            continue;
        }
        c = c.max(if r > 0.0 { l / r } else { f64::INFINITY });
    }
    c
}

/// Evaluates one identity instance.
pub fn kernel_identity_check<T: Real>(
    id: IdentityId,
    params: &IdentityParams,
    cfg: &GroupConfig,
) -> Result<IdentityReport> {
    let ctx = Ctx { b: KernelBuilder::<T>::new(cfg) };
    check_with(&ctx, id, params)
}

fn check_with<T: Real>(ctx: &Ctx<T>, id: IdentityId, params: &IdentityParams) -> Result<IdentityReport> {
    let cfg = ctx.cfg().clone();
    let order = cfg.order();
    let big_n = cfg.resolution();
    let level_below_n = |n: usize| -> Result<usize> {
        if n < big_n {
            Ok(n)
        } else {
            Err(invalid(id, format!("level {n} must be below N = {big_n}")))
        }
    };
    let level_at_most_n = |n: usize| -> Result<usize> {
        if n <= big_n {
            Ok(n)
        } else {
            Err(invalid(id, format!("level {n} exceeds N = {big_n}")))
        }
    };
    let scale_in_range = |n: usize, s: usize| -> Result<()> {
        if s >= 1 && s < cfg.radix(n) {
            Ok(())
        } else {
            Err(invalid(id, format!("s = {s} outside 1..m_{n}")))
        }
    };

    let outcome: (f64, f64) = match id {
        IdentityId::DnShift => {
            let n = level_below_n(params.need(id, "n", params.n)?)?;
            let j = params.need(id, "j", params.j)?;
            let mn = cfg.subgroup_size(n);
            if j > (cfg.radix(n) - 1) * mn {
                return Err(invalid(id, format!("j = {j} exceeds (m_n - 1) M_n")));
            }
            let lhs = ctx.d(j + mn)?;
            let mut rhs = ctx.d(mn)?;
            let shifted = mul(&ctx.psi(mn)?, &ctx.d(j)?);
            axpy(&mut rhs, one(), &shifted);
            equality(&lhs, &rhs)
        }
        IdentityId::DnReflect => {
            let n = level_at_most_n(params.need(id, "n", params.n)?)?;
            let j = params.need(id, "j", params.j)?;
            let mn = cfg.subgroup_size(n);
            if j >= mn {
                return Err(invalid(id, format!("j = {j} must be below M_n = {mn}")));
            }
            let lhs = ctx.d(mn - j)?;
            let dj: Values<T> = ctx.d(j)?.iter().map(|v| v.conj()).collect();
            let mut rhs = ctx.d(mn)?;
            axpy(&mut rhs, -one::<T>(), &mul(&ctx.psi(mn - 1)?, &dj));
            equality(&lhs, &rhs)
        }
        IdentityId::DnScaled => {
            let n = level_below_n(params.need(id, "n", params.n)?)?;
            let s = params.need(id, "s", params.s)?;
            scale_in_range(n, s)?;
            let mn = cfg.subgroup_size(n);
            let lhs = ctx.d(s * mn)?;
            let mut geometric = zeros::<T>(order);
            for k in 0..s {
                axpy(&mut geometric, one(), &ctx.r_pow(n, k));
            }
            equality(&lhs, &mul(&ctx.d(mn)?, &geometric))
        }
        IdentityId::DnExpansion => {
            let n = params.need(id, "n", params.n)?;
            if n == 0 || n >= order {
                return Err(invalid(id, format!("n = {n} outside 1..M_N")));
            }
            let digits = cfg.natural_digits(n)?;
            let mut sum = zeros::<T>(order);
            for j in 0..big_n {
                let nj = digits.0[j];
                if nj == 0 {
                    continue;
                }
                let m = cfg.radix(j);
                let mut geometric = zeros::<T>(order);
                for k in m - nj..m {
                    axpy(&mut geometric, one(), &ctx.r_pow(j, k));
                }
                axpy(&mut sum, one(), &mul(&ctx.d(cfg.subgroup_size(j))?, &geometric));
            }
            equality(&ctx.d(n)?, &mul(&ctx.psi(n)?, &sum))
        }
        IdentityId::KnScaled => {
            let n = level_below_n(params.need(id, "n", params.n)?)?;
            let s = params.need(id, "s", params.s)?;
            scale_in_range(n, s)?;
            let mn = cfg.subgroup_size(n);
            let mn_t = T::count(mn);
            let lhs = scaled(&ctx.k(s * mn)?, T::count(s) * mn_t);
            let mut d_coef = zeros::<T>(order);
            for l in 0..s {
                for i in 0..l {
                    axpy(&mut d_coef, one(), &ctx.r_pow(n, i));
                }
            }
            let mut k_coef = zeros::<T>(order);
            for l in 0..s {
                axpy(&mut k_coef, one(), &ctx.r_pow(n, l));
            }
            let mut rhs = mul(&d_coef, &scaled(&ctx.d(mn)?, mn_t));
            axpy(&mut rhs, one(), &mul(&k_coef, &scaled(&ctx.k(mn)?, mn_t)));
            equality(&lhs, &rhs)
        }
        IdentityId::KnDecomp => {
            let n = params.need(id, "n", params.n)?;
            if n == 0 || n >= order {
                return Err(invalid(id, format!("n = {n} outside 1..M_N")));
            }
            let blocks = cfg.natural_digits(n)?.blocks_descending();
            let lhs = scaled(&ctx.k(n)?, T::count(n));
            let mut rhs = zeros::<T>(order);
            let mut prefix = vec![one::<T>(); order];
            let mut remainder = n;
            for (k, &(level, s)) in blocks.iter().enumerate() {
                let block = s * cfg.subgroup_size(level);
                remainder -= block;
                let term = scaled(&ctx.k(block)?, T::count(block));
                axpy(&mut rhs, one(), &mul(&prefix, &term));
                if k + 1 < blocks.len() {
                    let tail = scaled(&ctx.d(block)?, T::count(remainder));
                    axpy(&mut rhs, one(), &mul(&prefix, &tail));
                }
                prefix = mul(&prefix, &ctx.r_pow(level, s));
            }
            equality(&lhs, &rhs)
        }
        IdentityId::KnBound => {
            let n = params.need(id, "n", params.n)?;
            if n == 0 || n >= order {
                return Err(invalid(id, format!("n = {n} outside 1..M_N")));
            }
            let digits = cfg.natural_digits(n)?;
            let (low, high) = (digits.lowest().unwrap_or(0), digits.leading().unwrap_or(0));
            let lhs: Vec<T> = ctx.k(n)?.iter().map(|v| v.norm() * T::count(n)).collect();
            let rhs = ctx.fejer_envelope(low, high)?;
            (constant(&lhs, &rhs, |_| true), f64::INFINITY)
        }
        IdentityId::KnPointBound => {
            let n = level_at_most_n(params.need(id, "n", params.n)?)?;
            let lhs: Vec<T> = ctx.k(cfg.subgroup_size(n))?.iter().map(|v| v.norm()).collect();
            let regions = complement_decomposition(&cfg, big_n)?;
            let mut rhs = vec![T::zero(); order];
            for x in 1..order {
                let k = region_of(&regions, &cfg, x).map(|(k, _)| k).expect("regions cover x != 0");
                rhs[x] = T::count(cfg.subgroup_size(k));
            }
            (constant(&lhs, &rhs, |x| x != 0), f64::INFINITY)
        }
        IdentityId::KnSupport => {
            let n = level_below_n(params.need(id, "n", params.n)?)?;
            let mn = cfg.subgroup_size(n);
            let lhs: Vec<T> = ctx.k(mn)?.iter().map(|v| v.norm()).collect();
            let mut rhs = vec![T::zero(); order];
            for (x, r) in rhs.iter_mut().enumerate() {
                for s in 0..=n {
                    let ms = cfg.subgroup_size(s);
                    for shift in 1..cfg.radix(s) {
                        if cfg.sub_index(x, shift * ms) % mn == 0 {
                            *r += T::count(ms);
                        }
                    }
                }
            }
            (constant(&lhs, &rhs, |_| true), f64::INFINITY)
        }
        IdentityId::KnVanish => {
            let n = level_at_most_n(params.need(id, "n", params.n)?)?;
            let kn = ctx.k(cfg.subgroup_size(n))?;
            let regions = complement_decomposition(&cfg, big_n)?;
            let zero = zeros::<T>(order);
            let masked: Values<T> = (0..order)
                .map(|x| match region_of(&regions, &cfg, x) {
                    Some((_, l)) if n > l => kn[x],
                    _ => zero[x],
                })
                .collect();
            equality(&masked, &zero)
        }
        IdentityId::FnReflect | IdentityId::FnReflectDual => {
            let n = level_at_most_n(params.need(id, "n", params.n)?)?;
            let q = params.weights::<T>(id)?;
            let mn = cfg.subgroup_size(n);
            let f = ctx.b.norlund(&q, mn)?.function.into_values();
            let g = ctx.b.tmean(&q, mn, TVariant::IdentityForm)?.function.into_values();
            let (lhs, partner) = if id == IdentityId::FnReflect { (f, g) } else { (g, f) };
            let conj: Values<T> = partner.iter().map(|v| v.conj()).collect();
            let mut rhs = ctx.d(mn)?;
            axpy(&mut rhs, -one::<T>(), &mul(&ctx.psi(mn - 1)?, &conj));
            equality(&lhs, &rhs)
        }
        IdentityId::DnLocalBound => {
            let n = params.need(id, "n", params.n)?;
            if n == 0 || n > order {
                return Err(invalid(id, format!("n = {n} outside 1..=M_N")));
            }
            let lhs: Vec<T> = ctx.d(n)?.iter().map(|v| v.norm()).collect();
            let rhs: Vec<T> = (0..order)
                .map(|x| cfg.leading_zero_level(x).map_or(T::zero(), |s| T::count(cfg.subgroup_size(s))))
                .collect();
            (constant(&lhs, &rhs, |x| x != 0), f64::INFINITY)
        }
        IdentityId::FnBound => {
            let n = params.need(id, "n", params.n)?;
            if n == 0 || n >= order {
                return Err(invalid(id, format!("n = {n} outside 1..M_N")));
            }
            let q = params.weights::<T>(id)?;
            let high = cfg.natural_digits(n)?.leading().unwrap_or(0);
            let lhs: Vec<T> =
                ctx.b.norlund(&q, n)?.values().iter().map(|v| v.norm() * T::count(n)).collect();
            (constant(&lhs, &ctx.fejer_envelope(0, high)?, |_| true), f64::INFINITY)
        }
        IdentityId::FnTailBound => {
            let n = params.need(id, "n", params.n)?;
            let level = level_below_n(params.need(id, "L", params.level)?)?;
            let ml = cfg.subgroup_size(level);
            if n < ml || n >= order {
                return Err(invalid(id, format!("n = {n} outside M_L..M_N")));
            }
            let q = params.weights::<T>(id)?;
            let table = q.table(n + 1)?;
            let big = table.big_q(n);
            if big <= T::zero() {
                return Err(Error::ZeroNormalizer(n));
            }
            let mut tail = zeros::<T>(order);
            for j in ml..=n {
                axpy(&mut tail, Complex::new(table.q(n - j) / big, T::zero()), &ctx.d(j)?);
            }
            let lhs: Vec<T> = tail.iter().map(|v| v.norm() * T::count(ml)).collect();
            let high = cfg.natural_digits(n)?.leading().unwrap_or(0);
            (constant(&lhs, &ctx.fejer_envelope(0, high)?, |_| true), f64::INFINITY)
        }
    };

    let (residual, tolerance) = outcome;
    let check = id.check();
    let pass = match check {
        IdentityCheck::Equality => residual <= tolerance,
        IdentityCheck::Constant => residual.is_finite(),
    };
    Ok(IdentityReport { id, params: params.clone(), check, residual, tolerance, pass })
}

/// `(k, l)` of the corner region containing `x`.
fn region_of(regions: &[CylinderRegion], cfg: &GroupConfig, x: usize) -> Option<(usize, usize)> {
    regions.iter().find(|r| r.contains(cfg, x)).and_then(|r| match *r {
        CylinderRegion::Corner { k, l, .. } => Some((k, l)),
        _ => None,
    })
}

/// Every admissible parameter tuple of `id` on `cfg`; weight-dependent ids
/// range over `weights`, skipping indices where `Q_n = 0`.
pub fn admissible_params(id: IdentityId, cfg: &GroupConfig, weights: &[String]) -> Vec<IdentityParams> {
    let big_n = cfg.resolution();
    let order = cfg.order();
    let p = |n: usize| IdentityParams { n: Some(n), ..Default::default() };
    let mut out = Vec::new();
    match id {
        IdentityId::DnShift => {
            for n in 0..big_n {
                for j in 0..=(cfg.radix(n) - 1) * cfg.subgroup_size(n) {
                    out.push(IdentityParams { j: Some(j), ..p(n) });
                }
            }
        }
        IdentityId::DnReflect => {
            for n in 0..=big_n {
                for j in 0..cfg.subgroup_size(n) {
                    out.push(IdentityParams { j: Some(j), ..p(n) });
                }
            }
        }
        IdentityId::DnScaled | IdentityId::KnScaled => {
            for n in 0..big_n {
                for s in 1..cfg.radix(n) {
                    out.push(IdentityParams { s: Some(s), ..p(n) });
                }
            }
        }
        IdentityId::DnExpansion | IdentityId::KnDecomp | IdentityId::KnBound => {
            out.extend((1..order).map(p));
        }
        IdentityId::KnPointBound | IdentityId::KnVanish => out.extend((0..=big_n).map(p)),
        IdentityId::KnSupport => out.extend((0..big_n).map(p)),
        IdentityId::DnLocalBound => out.extend((1..=order).map(p)),
        IdentityId::FnReflect | IdentityId::FnReflectDual => {
            for q in weights {
                for n in 0..=big_n {
                    if defined(q, cfg.subgroup_size(n)) {
                        out.push(IdentityParams { weights: Some(q.clone()), ..p(n) });
                    }
                }
            }
        }
        IdentityId::FnBound => {
            for q in weights {
                for n in 1..order {
                    if defined(q, n) {
                        out.push(IdentityParams { weights: Some(q.clone()), ..p(n) });
                    }
                }
            }
        }
        IdentityId::FnTailBound => {
            for q in weights {
                for level in 1..big_n {
                    for n in cfg.subgroup_size(level)..order {
                        if defined(q, n) {
                            out.push(IdentityParams {
                                weights: Some(q.clone()),
                                level: Some(level),
                                ..p(n)
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn defined(q: &str, n: usize) -> bool {
    q.parse::<WeightSequence<f64>>()
        .and_then(|w| w.table(n))
        .map(|t| t.big_q(n) > 0.0)
        .unwrap_or(false)
}

/// Runs every admissible instance of each id, in parallel, in enumeration order.
pub fn run_identity_suite<T: Real>(
    cfg: &GroupConfig,
    ids: &[IdentityId],
    weights: &[String],
) -> Result<Vec<IdentityReport>> {
    let ctx = Ctx { b: KernelBuilder::<T>::new(cfg) };
    let cases: Vec<(IdentityId, IdentityParams)> = ids
        .iter()
        .flat_map(|&id| admissible_params(id, cfg, weights).into_iter().map(move |p| (id, p)))
        .collect();
    cases.par_iter().map(|(id, params)| check_with(&ctx, *id, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(text: &str) -> IdentityParams {
        text.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        let cfg = GroupConfig::from_radix(&[2, 3, 4]).unwrap();
        let r = kernel_identity_check::<f64>(IdentityId::DnShift, &params("n=1;j=2"), &cfg).unwrap();
        assert!(r.pass && r.residual <= 1e-9);
        let r = kernel_identity_check::<f64>(IdentityId::DnScaled, &params("n=1;s=1"), &cfg).unwrap();
        assert_eq!(r.residual, 0.0);
        // M_2 = 6 on (2,3,4)
        let r = kernel_identity_check::<f64>(IdentityId::FnReflect, &params("n=2;q=fejer"), &cfg).unwrap();
        assert!(r.pass && r.residual <= 1e-9);
    }

    #[test]
    fn invalid_parameters() {
        let cfg = GroupConfig::from_radix(&[2, 3, 4]).unwrap();
        let bad = [
            (IdentityId::DnShift, "n=1;j=5"),
            (IdentityId::DnShift, "n=3;j=0"),
            (IdentityId::DnScaled, "n=1;s=3"),
            (IdentityId::DnReflect, "n=1;j=2"),
            (IdentityId::FnReflect, "n=1"),
            (IdentityId::KnDecomp, "n=24"),
        ];
        for (id, text) in bad {
            assert!(
                matches!(kernel_identity_check::<f64>(id, &params(text), &cfg), Err(Error::InvalidIdentityParams { .. })),
                "{id} {text}"
            );
        }
    }

    #[test]
    fn params_roundtrip() {
        let p = params("n=3;j=1;q=cesaro:0.5");
        assert_eq!(p.to_string(), "n=3;j=1;q=cesaro:0.5");
        assert_eq!("kn-decomp".parse::<IdentityId>().unwrap(), IdentityId::KnDecomp);
        assert!("NOPE".parse::<IdentityId>().is_err());
    }

    #[test]
    fn suite_small_group() {
        let cfg = GroupConfig::from_radix(&[2, 3, 2]).unwrap();
        let weights = vec!["fejer".to_string(), "valpha:0.5".to_string(), "beta:1".to_string()];
        let reports = run_identity_suite::<f64>(&cfg, &IdentityId::ALL, &weights).unwrap();
        for r in &reports {
            assert!(r.pass, "{} {} residual {}", r.id, r.params, r.residual);
        }
        assert!(reports.iter().any(|r| r.id == IdentityId::FnTailBound));
    }

    #[test]
    fn beta_skips_first_level() {
        let cfg = GroupConfig::from_radix(&[2, 3]).unwrap();
        let list = admissible_params(IdentityId::FnReflect, &cfg, &["beta:1".to_string()]);
        assert!(list.iter().all(|p| p.n != Some(0)));
        assert_eq!(list.len(), 2);
    }
}
