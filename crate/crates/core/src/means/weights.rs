//! Weight sequences `{q_k}` generating Nörlund and T means.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

/// Builtin weight families plus user tables.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `q_k = 1`.
    Fejer,
    /// `q_k = A_k^{alpha - 1}`.
    Cesaro(f64),
    /// `q_k = (k + 1)^{alpha - 1}`.
    VAlpha(f64),
    /// `q_k = 1 / (k + 1)`.
    Log,
    /// `q_k = 1 / ((k + 3) ln^alpha (k + 3))`.
    UAlpha(f64),
    /// `q_k = ln^alpha (k + 1)`; note `q_0 = 0`.
    Beta(f64),
    /// Finite user table.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Constant,
    NonDecreasing,
    NonIncreasing,
    Unspecified,
}

impl Monotonicity {
    pub fn is_non_decreasing(self) -> bool {
        matches!(self, Monotonicity::Constant | Monotonicity::NonDecreasing)
    }

    pub fn is_non_increasing(self) -> bool {
        matches!(self, Monotonicity::Constant | Monotonicity::NonIncreasing)
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Constant => "constant",
            Monotonicity::NonDecreasing => "non-decreasing",
            Monotonicity::NonIncreasing => "non-increasing",
            Monotonicity::Unspecified => "none",
        })
    }
}

/// A validated weight family with its declared monotonicity class.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T> {
    kind: WeightKind,
    monotonicity: Monotonicity,
    _scalar: PhantomData<T>,
}

fn in_range(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason })
    }
}

impl<T: Real> WeightSequence<T> {
    pub fn new(kind: WeightKind) -> Result<Self> {
        let monotonicity = match &kind {
            WeightKind::Fejer => Monotonicity::Constant,
            &WeightKind::Cesaro(a) => {
                in_range("alpha", a, a > 0.0, "cesaro weights need alpha > 0")?;
                if a < 1.0 {
                    Monotonicity::NonIncreasing
                } else if a == 1.0 {
                    Monotonicity::Constant
                } else {
                    Monotonicity::NonDecreasing
                }
            }
            &WeightKind::VAlpha(a) => {
                in_range("alpha", a, a > 0.0 && a <= 1.0, "valpha needs 0 < alpha <= 1")?;
                if a == 1.0 {
                    Monotonicity::Constant
                } else {
                    Monotonicity::NonIncreasing
                }
            }
            WeightKind::Log => Monotonicity::NonIncreasing,
            &WeightKind::UAlpha(a) => {
                in_range("alpha", a, a > 0.0 && a <= 1.0, "ualpha needs 0 < alpha <= 1")?;
                Monotonicity::NonIncreasing
            }
            &WeightKind::Beta(a) => {
                in_range("alpha", a, a > 0.0, "beta needs alpha > 0")?;
                Monotonicity::NonDecreasing
            }
            WeightKind::Custom(values) => {
                if values.is_empty() {
                    return Err(Error::Parse("empty custom weight table".into()));
                }
                if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                    return Err(Error::InvalidParameter {
                        name: "q_k",
                        value: bad,
                        reason: "weights must be finite and nonnegative",
                    });
                }
                classify(values)
            }
        };
        Ok(Self { kind, monotonicity, _scalar: PhantomData })
    }

    pub fn fejer() -> Self {
        Self::new(WeightKind::Fejer).expect("fejer weights are always valid")
    }

    pub fn cesaro(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::Cesaro(alpha))
    }

    pub fn valpha(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::VAlpha(alpha))
    }

    pub fn log() -> Self {
        Self::new(WeightKind::Log).expect("log weights are always valid")
    }

    pub fn ualpha(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::UAlpha(alpha))
    }

    pub fn beta(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::Beta(alpha))
    }

    pub fn custom(values: Vec<f64>) -> Result<Self> {
        Self::new(WeightKind::Custom(values))
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    /// Declared monotonicity class.
    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    /// `lim q_k` when it exists and is finite.
    pub fn limit(&self) -> Option<f64> {
        match self.kind {
            WeightKind::Fejer => Some(1.0),
            WeightKind::Cesaro(a) | WeightKind::VAlpha(a) if a < 1.0 => Some(0.0),
            WeightKind::Cesaro(a) | WeightKind::VAlpha(a) if a == 1.0 => Some(1.0),
            WeightKind::Log | WeightKind::UAlpha(_) => Some(0.0),
            _ => None,
        }
    }

    /// Member of the bounded monotone class: `0 < q_inf < inf`.
    pub fn is_bounded_class(&self) -> bool {
        self.limit().is_some_and(|q| q > 0.0) && self.monotonicity != Monotonicity::Unspecified
    }

    /// Available table length, `None` for unbounded generators.
    pub fn capacity(&self) -> Option<usize> {
        match &self.kind {
            WeightKind::Custom(v) => Some(v.len()),
            _ => None,
        }
    }

    /// `q_k`.
    pub fn weight(&self, k: usize) -> Result<T> {
        Ok(match &self.kind {
            WeightKind::Fejer => T::one(),
            &WeightKind::Cesaro(a) => cesaro_number(T::lit(a - 1.0), k),
            &WeightKind::VAlpha(a) => T::count(k + 1).powf(T::lit(a - 1.0)),
            WeightKind::Log => T::one() / T::count(k + 1),
            &WeightKind::UAlpha(a) => {
                let x = T::count(k + 3);
                T::one() / (x * x.ln().powf(T::lit(a)))
            }
            &WeightKind::Beta(a) => {
                if k == 0 {
                    T::zero()
                } else {
                    T::count(k + 1).ln().powf(T::lit(a))
                }
            }
            WeightKind::Custom(values) => T::lit(
                *values
                    .get(k)
                    .ok_or(Error::WeightTableExhausted { len: values.len(), index: k })?,
            ),
        })
    }

    /// Materializes `q_0 .. q_{len-1}` and `Q_0 .. Q_len`.
    pub fn table(&self, len: usize) -> Result<WeightTable<T>> {
        let q: Vec<T> = match self.kind {
            WeightKind::Cesaro(a) => {
                let beta = T::lit(a - 1.0);
                let mut out = Vec::with_capacity(len);
                let mut current = T::one();
                for k in 0..len {
                    if k > 0 {
                        current = current * (beta + T::count(k)) / T::count(k);
                    }
                    out.push(current);
                }
                out
            }
            _ => (0..len).map(|k| self.weight(k)).collect::<Result<_>>()?,
        };
        let mut prefix = Vec::with_capacity(len + 1);
        let mut acc = CompensatedSum::new();
        prefix.push(T::zero());
        for &v in &q {
            acc.add(v);
            prefix.push(acc.value());
        }
        Ok(WeightTable { q, prefix })
    }

    /// Scans `q_0 .. q_{len-1}` and checks the declared class.
    pub fn verify_monotonicity(&self, len: usize) -> Result<bool> {
        let table = self.table(len)?;
        let observed = classify_t(&table.q);
        Ok(match self.monotonicity {
            Monotonicity::Constant => observed == Monotonicity::Constant,
            Monotonicity::NonDecreasing => observed.is_non_decreasing(),
            Monotonicity::NonIncreasing => observed.is_non_increasing(),
            Monotonicity::Unspecified => true,
        })
    }

    /// Short label such as `cesaro:0.5`.
    pub fn label(&self) -> String {
        match &self.kind {
            WeightKind::Fejer => "fejer".into(),
            WeightKind::Cesaro(a) => format!("cesaro:{a}"),
            WeightKind::VAlpha(a) => format!("valpha:{a}"),
            WeightKind::Log => "log".into(),
            WeightKind::UAlpha(a) => format!("ualpha:{a}"),
            WeightKind::Beta(a) => format!("beta:{a}"),
            WeightKind::Custom(v) => format!("custom[{}]", v.len()),
        }
    }
}

impl<T: Real> FromStr for WeightSequence<T> {
    type Err = Error;

    /// Parses `kind[:alpha]`, or `custom:q0,q1,..`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let alpha = |arg: Option<&str>| -> Result<f64> {
            let text = arg.ok_or_else(|| Error::Parse(format!("`{name}` needs a parameter")))?;
            parse_number(text)
        };
        let kind = match name {
            "fejer" => WeightKind::Fejer,
            "cesaro" => WeightKind::Cesaro(alpha(arg)?),
            "valpha" => WeightKind::VAlpha(alpha(arg)?),
            "log" => WeightKind::Log,
            "ualpha" => WeightKind::UAlpha(alpha(arg)?),
            "beta" => WeightKind::Beta(alpha(arg)?),
            "custom" => WeightKind::Custom(
                arg.ok_or_else(|| Error::Parse("`custom` needs a table".into()))?
                    .split(',')
                    .map(parse_number)
                    .collect::<Result<_>>()?,
            ),
            other => return Err(Error::Parse(format!("unknown weight family `{other}`"))),
        };
        Self::new(kind)
    }
}

/// Accepts decimals and simple fractions like `1/2`.
fn parse_number(text: &str) -> Result<f64> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once('/') {
        let a: f64 = a.trim().parse().map_err(|_| Error::Parse(format!("number `{text}`")))?;
        let b: f64 = b.trim().parse().map_err(|_| Error::Parse(format!("number `{text}`")))?;
        return Ok(a / b);
    }
    text.parse().map_err(|_| Error::Parse(format!("number `{text}`")))
}

fn classify(values: &[f64]) -> Monotonicity {
    let up = values.windows(2).all(|w| w[1] >= w[0]);
    let down = values.windows(2).all(|w| w[1] <= w[0]);
    match (up, down) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::NonDecreasing,
        (false, true) => Monotonicity::NonIncreasing,
        (false, false) => Monotonicity::Unspecified,
    }
}

fn classify_t<T: Real>(values: &[T]) -> Monotonicity {
    classify(&values.iter().map(|v| v.as_f64()).collect::<Vec<_>>())
}

/// `A_k^beta` by the product recurrence, `A_0^beta = 1`.
pub(crate) fn cesaro_number<T: Real>(beta: T, k: usize) -> T {
    (1..=k).fold(T::one(), |acc, j| acc * (beta + T::count(j)) / T::count(j))
}

/// Materialized weights and prefix sums.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable<T> {
    q: Vec<T>,
    prefix: Vec<T>,
}

impl<T: Real> WeightTable<T> {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// `q_k`.
    pub fn q(&self, k: usize) -> T {
        self.q[k]
    }

    /// `Q_n = sum_{k<n} q_k`.
    pub fn big_q(&self, n: usize) -> T {
        self.prefix[n]
    }

    pub fn weights(&self) -> &[T] {
        &self.q
    }

    pub fn prefix_sums(&self) -> &[T] {
        &self.prefix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fejer_prefix_sums() {
        let t = WeightSequence::<f64>::fejer().table(10).unwrap();
        for n in 0..=10 {
            assert_eq!(t.big_q(n), n as f64);
        }
    }

    #[test]
    fn cesaro_one_is_fejer() {
        let t = WeightSequence::<f64>::cesaro(1.0).unwrap().table(50).unwrap();
        assert!(t.weights().iter().all(|&q| (q - 1.0).abs() < 1e-15));
        assert_eq!(WeightSequence::<f64>::cesaro(1.0).unwrap().monotonicity(), Monotonicity::Constant);
    }

    #[test]
    fn declared_classes_hold() {
        let families: Vec<WeightSequence<f64>> = vec![
            WeightSequence::fejer(),
            WeightSequence::cesaro(0.5).unwrap(),
            WeightSequence::cesaro(2.0).unwrap(),
            WeightSequence::valpha(0.5).unwrap(),
            WeightSequence::log(),
            WeightSequence::ualpha(1.0).unwrap(),
            WeightSequence::ualpha(0.5).unwrap(),
            WeightSequence::beta(1.0).unwrap(),
            WeightSequence::beta(2.5).unwrap(),
        ];
        for q in families {
            assert!(q.verify_monotonicity(10_000).unwrap(), "{}", q.label());
        }
        assert_eq!(
            WeightSequence::<f64>::valpha(0.5).unwrap().monotonicity(),
            Monotonicity::NonIncreasing
        );
    }

    #[test]
    fn parameter_ranges() {
        assert!(WeightSequence::<f64>::valpha(1.5).is_err());
        assert!(WeightSequence::<f64>::valpha(0.0).is_err());
        assert!(WeightSequence::<f64>::ualpha(2.0).is_err());
        assert!(WeightSequence::<f64>::beta(-1.0).is_err());
        assert!(WeightSequence::<f64>::cesaro(-0.5).is_err());
        assert!(WeightSequence::<f64>::custom(vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn parsing() {
        let q: WeightSequence<f64> = "cesaro:0.5".parse().unwrap();
        assert_eq!(q.kind(), &WeightKind::Cesaro(0.5));
        let q: WeightSequence<f64> = "valpha:1/2".parse().unwrap();
        assert_eq!(q.kind(), &WeightKind::VAlpha(0.5));
        let q: WeightSequence<f64> = "custom:3,2,1".parse().unwrap();
        assert_eq!(q.monotonicity(), Monotonicity::NonIncreasing);
        assert!(q.weight(3).is_err());
        assert!("bogus".parse::<WeightSequence<f64>>().is_err());
        assert!("beta".parse::<WeightSequence<f64>>().is_err());
    }

    #[test]
    fn beta_starts_at_zero() {
        let q = WeightSequence::<f64>::beta(1.0).unwrap();
        assert_eq!(q.weight(0).unwrap(), 0.0);
        assert!((q.weight(1).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn bounded_class() {
        assert!(WeightSequence::<f64>::fejer().is_bounded_class());
        assert!(!WeightSequence::<f64>::log().is_bounded_class());
        assert!(!WeightSequence::<f64>::beta(1.0).unwrap().is_bounded_class());
    }
}
