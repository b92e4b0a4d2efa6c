//! Extension constants and the disk-inclusion condition that defines them.
//!
//! The transition-function bound `|(h−1)/(h+1)| ≤ l` holds exactly when `P`
//! lies in a disk `Δ_l`; the criterion confines `P` to the disk
//! `Δ' = {|aP + ib| ≤ k|s|}`. [`compute_l`] is the smallest `l` with
//! `Δ' ⊂ Δ_l`, and [`minimal_l`] recovers it by bisection.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Near-tangency slack below which inclusion is still accepted.
pub const TANGENCY_TOLERANCE: f64 = 1e-14;

/// Absolute tolerance of the [`minimal_l`] bisection.
pub const BISECTION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskInclusionParams<T: Real = f64> {
    pub l: T,
    pub k: T,
    pub s: Complex<T>,
}

impl<T: Real> DiskInclusionParams<T> {
    pub fn new(l: T, k: T, s: Complex<T>) -> Result<Self> {
        validate_sk(s, k)?;
        if !(l >= T::zero() && l <= T::one()) {
            return Err(Error::invalid(format!("l must lie in [0, 1], got {l}")));
        }
        Ok(Self { l, k, s })
    }

    /// `RHS − LHS` of the inclusion inequality; non-negative iff the disk of
    /// radius `k|s|/a` around `−ib/a` sits inside the `l`-disk.
    pub fn slack(&self) -> T {
        let (a, b, abs_s) = (self.s.re, self.s.im, self.s.norm());
        let l2 = self.l * self.l;
        let d = (T::one() + l2) * a + (T::one() - l2) * abs_s;
        let lhs = ((T::one() + l2) * b / d - b / a).abs();
        let rhs = T::lit(2.0) * self.l * abs_s / d - self.k * abs_s / a;
        rhs - lhs
    }

    pub fn holds(&self) -> bool {
        self.slack() >= -T::lit(TANGENCY_TOLERANCE)
    }
}

fn validate_sk<T: Real>(s: Complex<T>, k: T) -> Result<()> {
    if !(s.re > T::zero()) || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::invalid(format!("Re s must be positive and finite, got s = {s}")));
    }
    if !(k >= T::zero() && k < T::one()) {
        return Err(Error::invalid(format!("k must lie in [0, 1), got {k}")));
    }
    Ok(())
}

/// `l = (2ka + (1−k²)|b|) / ((1+k²)a + (1−k²)|s|)` for `s = a + ib`.
pub fn compute_l<T: Real>(s: Complex<T>, k: T) -> T {
    let (a, b, abs_s) = (s.re, s.im, s.norm());
    let k2 = k * k;
    (T::lit(2.0) * k * a + (T::one() - k2) * b.abs()) / ((T::one() + k2) * a + (T::one() - k2) * abs_s)
}

pub fn disk_inclusion_holds<T: Real>(p: &DiskInclusionParams<T>) -> bool {
    p.holds()
}

/// Smallest `l ∈ [0, 1]` for which the inclusion holds, found by bisection.
pub fn minimal_l<T: Real>(s: Complex<T>, k: T) -> Result<T> {
    validate_sk(s, k)?;
    let holds = |l: T| DiskInclusionParams { l, k, s }.holds();
    if !holds(T::one()) {
        return Err(Error::NoSolution(format!("inclusion fails even at l = 1 for s = {s}, k = {k}")));
    }
    if holds(T::zero()) {
        return Ok(T::zero());
    }
    let (mut lo, mut hi) = (T::zero(), T::one());
    let tol = T::lit(BISECTION_TOLERANCE).max(T::epsilon() * T::lit(4.0));
    while hi - lo > tol {
        let mid = (lo + hi) / T::lit(2.0);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    #[cfg(debug_assertions)]
    for i in 1..=10 {
        let l = hi + (T::one() - hi) * T::from_usize(i).unwrap() / T::lit(10.0);
        debug_assert!(holds(l), "inclusion predicate not monotone at l = {l} (s = {s}, k = {k})");
    }
    Ok(hi)
}

/// `k̃ = (2kα + (1−k²)|β|) / ((1+k²)α + (1−k²)√(α²+β²))`.
pub fn k_tilde<T: Real>(alpha: T, beta: T, k: T) -> T {
    let k2 = k * k;
    (T::lit(2.0) * k * alpha + (T::one() - k2) * beta.abs())
        / ((T::one() + k2) * alpha + (T::one() - k2) * alpha.hypot(beta))
}
