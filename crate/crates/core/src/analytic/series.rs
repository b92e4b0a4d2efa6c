//! Polynomial kernels: simultaneous Horner evaluation and reciprocal series.

use num_complex::Complex;

use crate::scalar::Real;

/// Value, first and second derivative of `Σ coeffs[j] x^j` at `x`.
pub(crate) fn horner2<T: Real>(coeffs: &[Complex<T>], x: Complex<T>) -> [Complex<T>; 3] {
    let zero = Complex::new(T::zero(), T::zero());
    let two = T::lit(2.0);
    let (mut p, mut dp, mut ddp) = (zero, zero, zero);
    for &c in coeffs.iter().rev() {
        ddp = ddp * x + dp * two;
        dp = dp * x + p;
        p = p * x + c;
    }
    [p, dp, ddp]
}

/// Coefficients of `1 / Σ coeffs[j] x^j` up to and including `x^order`.
///
/// Requires `coeffs[0] != 0`.
pub(crate) fn reciprocal<T: Real>(coeffs: &[Complex<T>], order: usize) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(order + 1);
    let inv0 = coeffs[0].inv();
    out.push(inv0);
    for m in 1..=order {
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 1..=m.min(coeffs.len() - 1) {
            acc = acc + coeffs[j] * out[m - j];
        }
        out.push(-acc * inv0);
    }
    out
}
