//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type the library is generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Builds a complex number from `f64` parts.
#[inline]
pub fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[inline]
pub(crate) fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.as_f64(), z.im.as_f64())
}

/// `n` values log-spaced between `lo` and `hi` inclusive (both positive).
pub(crate) fn log_space<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (l0, l1) = (lo.ln(), hi.ln());
            let denom = T::from_usize(n - 1).unwrap();
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        (l0 + (l1 - l0) * T::from_usize(i).unwrap() / denom).exp()
                    }
                })
                .collect()
        }
    }
}

/// `n` equispaced angles in `[0, 2π)`.
pub(crate) fn angles<T: Real>(n: usize) -> Vec<T> {
    let step = T::TAU() / T::from_usize(n.max(1)).unwrap();
    (0..n).map(|j| step * T::from_usize(j).unwrap()).collect()
}

/// Argument of `z` mapped into `[0, 2π)`, used for deterministic tie-breaks.
#[inline]
pub(crate) fn arg_positive<T: Real>(z: Complex<T>) -> T {
    let a = z.im.atan2(z.re);
    if a < T::zero() {
        a + T::TAU()
    } else {
        a
    }
}
