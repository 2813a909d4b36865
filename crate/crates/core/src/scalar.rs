//! Scalar abstraction shared by every analytic module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real field the analytic code is generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 is representable in every Real")
    }

    /// Conversion from a count or index.
    #[inline]
    fn count(value: usize) -> Self {
        Self::from_usize(value).expect("usize is representable in every Real")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), carry: T::zero() }
    }

    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// Compensated sum of real values.
pub fn stable_sum<T: Real>(values: impl IntoIterator<Item = T>) -> T {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Compensated sum of complex values (real and imaginary parts accumulated separately).
pub fn stable_complex_sum<T: Real>(values: impl IntoIterator<Item = Complex<T>>) -> Complex<T> {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for v in values {
        re.add(v.re);
        im.add(v.im);
    }
    Complex::new(re.value(), im.value())
}
