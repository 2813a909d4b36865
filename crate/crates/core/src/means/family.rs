//! Summation families as weight vectors on the partial sums `S_0 .. S_n`.
//!
//! A mean `sum_k w_k S_k f` has Fourier multiplier `c_j = sum_{k > j} w_k`
//! and kernel `sum_k w_k D_k = sum_j c_j psi_j`, so every family reduces to
//! its weight vector.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

use super::cesaro::cesaro_binomial;
use super::weights::WeightSequence;

/// Which T-mean display is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TVariant {
    /// `(1/Q_n) sum_{k<n} q_k S_{k+1}`; unit integral.
    Regular,
    /// `(1/Q_n) sum_{k<n} q_k S_k` with `S_0 = 0`; the reflection partner of `F_{M_n}`.
    IdentityForm,
}

impl fmt::Display for TVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TVariant::Regular => "regular",
            TVariant::IdentityForm => "identity-form",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeanFamily<T> {
    /// `S_n` itself.
    PartialSums,
    /// `sigma_n = (1/n) sum_{k=1}^n S_k`.
    Fejer,
    /// Nörlund mean with `q_k = A_k^{alpha-1}`, normalized by `Q_n = A_{n-1}^alpha`.
    Cesaro(f64),
    /// `(1/A_n^alpha) sum_{k=1}^n A_{n-k}^{alpha-1} S_k`, the unnormalized display.
    CesaroLiteral(f64),
    /// `t_n = (1/Q_n) sum_{k=1}^n q_{n-k} S_k`.
    Norlund(WeightSequence<T>),
    /// `T_n` in one of its two index conventions.
    TMean(WeightSequence<T>, TVariant),
    /// `L_n = (1/l_n) sum_{k<n} S_k / (n - k)`.
    NorlundLog,
    /// `R_n = (1/l_n) sum_{k=1}^n S_k / k`.
    RieszLog,
}

/// `l_n = sum_{k=1}^n 1/k`.
pub fn harmonic<T: Real>(n: usize) -> T {
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        acc.add(T::one() / T::count(k));
    }
    acc.value()
}

impl<T: Real> MeanFamily<T> {
    pub fn label(&self) -> String {
        match self {
            MeanFamily::PartialSums => "partial".into(),
            MeanFamily::Fejer => "fejer".into(),
            MeanFamily::Cesaro(a) => format!("cesaro:{a}"),
            MeanFamily::CesaroLiteral(a) => format!("cesaro-literal:{a}"),
            MeanFamily::Norlund(q) => format!("norlund[{}]", q.label()),
            MeanFamily::TMean(q, v) => format!("t-{v}[{}]", q.label()),
            MeanFamily::NorlundLog => "log-norlund".into(),
            MeanFamily::RieszLog => "log-riesz".into(),
        }
    }

    /// Weights `w_0 .. w_n` of `S_0 .. S_n` in the `n`-th mean. `S_0 = 0`, so
    /// `w_0` never contributes.
    pub fn partial_sum_weights(&self, n: usize) -> Result<Vec<T>> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                value: 0.0,
                reason: "means are indexed from 1",
            });
        }
        let mut w = vec![T::zero(); n + 1];
        match self {
            MeanFamily::PartialSums => w[n] = T::one(),
            MeanFamily::Fejer => {
                let inv = T::one() / T::count(n);
                w[1..].iter_mut().for_each(|v| *v = inv);
            }
            &MeanFamily::Cesaro(a) => {
                return MeanFamily::Norlund(WeightSequence::cesaro(a)?).partial_sum_weights(n);
            }
            &MeanFamily::CesaroLiteral(a) => {
                if !(a > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "alpha",
                        value: a,
                        reason: "cesaro weights need alpha > 0",
                    });
                }
                let lower = cesaro_binomial::<T>(n, a - 1.0)?;
                let upper = cesaro_binomial::<T>(n, a)?;
                let norm = upper.get(n);
                for k in 1..=n {
                    w[k] = lower.get(n - k) / norm;
                }
            }
            MeanFamily::Norlund(q) => {
                let table = q.table(n)?;
                let norm = nonzero(table.big_q(n), n)?;
                for k in 1..=n {
                    w[k] = table.q(n - k) / norm;
                }
            }
            MeanFamily::TMean(q, variant) => {
                let table = q.table(n)?;
                let norm = nonzero(table.big_q(n), n)?;
                for k in 0..n {
                    let slot = match variant {
                        TVariant::Regular => k + 1,
                        TVariant::IdentityForm => k,
                    };
                    w[slot] = table.q(k) / norm;
                }
            }
            MeanFamily::NorlundLog => {
                let norm = harmonic::<T>(n);
                for k in 0..n {
                    w[k] = T::one() / (T::count(n - k) * norm);
                }
            }
            MeanFamily::RieszLog => {
                let norm = harmonic::<T>(n);
                for k in 1..=n {
                    w[k] = T::one() / (T::count(k) * norm);
                }
            }
        }
        w[0] = T::zero();
        Ok(w)
    }

    /// Fourier multiplier `c_0 .. c_{n-1}` with `c_j = sum_{k>j} w_k`; `c_j = 0` for `j >= n`.
    pub fn multiplier(&self, n: usize) -> Result<Vec<T>> {
        let w = self.partial_sum_weights(n)?;
        let mut c = vec![T::zero(); n];
        let mut acc = CompensatedSum::new();
        for j in (0..n).rev() {
            acc.add(w[j + 1]);
            c[j] = acc.value();
        }
        Ok(c)
    }
}

fn nonzero<T: Real>(value: T, n: usize) -> Result<T> {
    if value > T::zero() {
        Ok(value)
    } else {
        Err(Error::ZeroNormalizer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn fejer_multiplier() {
        let c = MeanFamily::<f64>::Fejer.multiplier(5).unwrap();
        let expected: Vec<f64> = (0..5).map(|j| (5 - j) as f64 / 5.0).collect();
        assert!(close(&c, &expected, 1e-15));
    }

    #[test]
    fn constant_weights_reduce_to_fejer() {
        let fejer = MeanFamily::<f64>::Fejer.multiplier(9).unwrap();
        let norlund = MeanFamily::Norlund(WeightSequence::fejer()).multiplier(9).unwrap();
        let t = MeanFamily::TMean(WeightSequence::fejer(), TVariant::Regular).multiplier(9).unwrap();
        let cesaro = MeanFamily::<f64>::Cesaro(1.0).multiplier(9).unwrap();
        assert!(close(&fejer, &norlund, 1e-15));
        assert!(close(&fejer, &t, 1e-15));
        assert!(close(&fejer, &cesaro, 1e-15));
    }

    #[test]
    fn multiplier_closed_forms() {
        let q = WeightSequence::<f64>::valpha(0.5).unwrap();
        let n = 7;
        let table = q.table(n).unwrap();
        let big = table.big_q(n);
        let norlund = MeanFamily::Norlund(q.clone()).multiplier(n).unwrap();
        let regular = MeanFamily::TMean(q.clone(), TVariant::Regular).multiplier(n).unwrap();
        let identity = MeanFamily::TMean(q, TVariant::IdentityForm).multiplier(n).unwrap();
        for j in 0..n {
            assert!((norlund[j] - table.big_q(n - j) / big).abs() < 1e-15);
            assert!((regular[j] - (big - table.big_q(j)) / big).abs() < 1e-15);
            assert!((identity[j] - (big - table.big_q(j + 1)) / big).abs() < 1e-15);
        }
        assert_eq!(norlund[0], 1.0);
        assert_eq!(regular[0], 1.0);
    }

    #[test]
    fn riesz_is_regular_t_with_log_weights() {
        for n in 1..30 {
            let r = MeanFamily::<f64>::RieszLog.multiplier(n).unwrap();
            let t = MeanFamily::TMean(WeightSequence::log(), TVariant::Regular).multiplier(n).unwrap();
            assert!(close(&r, &t, 1e-14), "n={n}");
        }
    }

    #[test]
    fn log_norlund_mass() {
        let n = 6;
        let c = MeanFamily::<f64>::NorlundLog.multiplier(n).unwrap();
        let expected = harmonic::<f64>(n - 1) / harmonic::<f64>(n);
        assert!((c[0] - expected).abs() < 1e-15);
    }

    #[test]
    fn beta_has_no_first_mean() {
        let fam = MeanFamily::Norlund(WeightSequence::<f64>::beta(1.0).unwrap());
        assert_eq!(fam.multiplier(1).unwrap_err(), Error::ZeroNormalizer(1));
        assert!(fam.multiplier(2).is_ok());
    }

    #[test]
    fn literal_cesaro_scaling() {
        for &a in &[0.3, 0.5, 2.0] {
            let n = 11;
            let lit = MeanFamily::<f64>::CesaroLiteral(a).multiplier(n).unwrap();
            let nor = MeanFamily::<f64>::Cesaro(a).multiplier(n).unwrap();
            let coef = cesaro_binomial::<f64>(n, a).unwrap();
            let ratio = coef.get(n - 1) / coef.get(n);
            for j in 0..n {
                assert!((lit[j] - ratio * nor[j]).abs() < 1e-14);
            }
        }
    }
}
