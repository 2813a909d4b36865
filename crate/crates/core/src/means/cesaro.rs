use crate::error::{Error, Result};
use crate::scalar::Real;

/// Table `A_0^alpha .. A_n^alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct CesaroCoefficients<T> {
    alpha: f64,
    values: Vec<T>,
}

impl<T: Real> CesaroCoefficients<T> {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn get(&self, n: usize) -> T {
        self.values[n]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// `A_n^alpha = (alpha + 1) .. (alpha + n) / n!` by the recurrence
/// `A_n = A_{n-1} (alpha + n) / n`, starting from the empty product `A_0 = 1`.
pub fn cesaro_binomial<T: Real>(n: usize, alpha: f64) -> Result<CesaroCoefficients<T>> {
    if !alpha.is_finite() || (alpha < 0.0 && alpha.fract() == 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "alpha must not be a negative integer",
        });
    }
    let a = T::lit(alpha);
    let mut values = Vec::with_capacity(n + 1);
    values.push(T::one());
    for k in 1..=n {
        let prev = values[k - 1];
        values.push(prev * (a + T::count(k)) / T::count(k));
    }
    Ok(CesaroCoefficients { alpha, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_values() {
        let one = cesaro_binomial::<f64>(20, 1.0).unwrap();
        for n in 0..=20 {
            assert_eq!(one.get(n), (n + 1) as f64);
        }
        let zero = cesaro_binomial::<f64>(20, 0.0).unwrap();
        assert!(zero.values().iter().all(|&v| v == 1.0));
        let a = 0.3;
        let t = cesaro_binomial::<f64>(2, a).unwrap();
        assert!((t.get(2) - (a + 1.0) * (a + 2.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn negative_integers_rejected() {
        assert!(cesaro_binomial::<f64>(5, -1.0).is_err());
        assert!(cesaro_binomial::<f64>(5, -3.0).is_err());
        assert!(cesaro_binomial::<f64>(5, -0.5).is_ok());
    }
}
