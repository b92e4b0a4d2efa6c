//! Interior (class 𝒜) and exterior functions, their 2-jets and the
//! log-derivative quantities entering every criterion.
//!
//! Interior functions are stored through the quotient `p(z) = f(z)/z`, so
//! `f = z p`, `f' = p + z p'` and `f'' = 2p' + z p''`. This keeps `zf'/f` and
//! `1 + zf''/f'` well defined at the origin. Exterior functions are stored
//! through `S(w) = Σ dₙ wⁿ` with `w = 1/ζ`, so `g = ζ + S(w)`.

mod parse;
mod series;

pub use parse::{parse_function_spec, ParsedFunction};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, to_c64, Real};
pub(crate) use series::horner2;

/// Default floor for the zero-of-function diagnostics.
pub const DEFAULT_ZERO_FLOOR: f64 = 1e-13;

/// Cap on the number of Taylor coefficients produced when a closed-form
/// function is converted to a truncated series.
pub const MAX_SERIES_ORDER: usize = 8192;

/// Value together with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<T: Real = f64> {
    pub f: Complex<T>,
    pub f1: Complex<T>,
    pub f2: Complex<T>,
}

/// `zf'/f − 1` and `zf''/f'`, kept in offset form so that both stay accurate
/// where they are small (near the origin for interior functions, near ∞ for
/// exterior ones).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivatives<T: Real = f64> {
    /// `zf'/f − 1`
    pub starlike_offset: Complex<T>,
    /// `zf''/f'`
    pub convexity_offset: Complex<T>,
}

impl<T: Real> LogDerivatives<T> {
    /// `zf'/f`
    pub fn starlike(&self) -> Complex<T> {
        self.starlike_offset + T::one()
    }

    /// `1 + zf''/f'`
    pub fn convexity(&self) -> Complex<T> {
        self.convexity_offset + T::one()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InteriorKind<T: Real> {
    Identity,
    /// `z/(1−z)²`
    Koebe,
    /// `z/(1−z)`
    HalfPlane,
    /// Coefficients `a₂..a_N`.
    Polynomial(Vec<Complex<T>>),
    /// Coefficients `a₂..a_N`, trusted only on `|z| ≤ rho`.
    Series { coeffs: Vec<Complex<T>>, rho: T },
}

/// A normalized analytic function `f(z) = z + a₂z² + …` on the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorFunction<T: Real = f64> {
    kind: InteriorKind<T>,
}

fn check_coeffs<T: Real>(coeffs: &[Complex<T>]) -> Result<()> {
    if coeffs.iter().all(|c| is_finite(*c)) {
        Ok(())
    } else {
        Err(Error::invalid("coefficients must be finite"))
    }
}

impl<T: Real> InteriorFunction<T> {
    pub fn identity() -> Self {
        Self { kind: InteriorKind::Identity }
    }

    pub fn koebe() -> Self {
        Self { kind: InteriorKind::Koebe }
    }

    pub fn halfplane() -> Self {
        Self { kind: InteriorKind::HalfPlane }
    }

    /// `z + a₂z² + … + a_N z^N` from the coefficients `a₂..a_N`.
    pub fn polynomial(coeffs: Vec<Complex<T>>) -> Result<Self> {
        check_coeffs(&coeffs)?;
        Ok(Self { kind: InteriorKind::Polynomial(coeffs) })
    }

    /// Truncated Taylor series with reliable radius `rho ∈ (0, 1]`.
    pub fn series(coeffs: Vec<Complex<T>>, rho: T) -> Result<Self> {
        check_coeffs(&coeffs)?;
        if !(rho > T::zero() && rho <= T::one()) {
            return Err(Error::invalid(format!("reliable radius must lie in (0, 1], got {rho}")));
        }
        Ok(Self { kind: InteriorKind::Series { coeffs, rho } })
    }

    /// Polynomial from real coefficients `a₂..a_N`.
    pub fn polynomial_real(coeffs: &[f64]) -> Result<Self> {
        Self::polynomial(coeffs.iter().map(|&c| Complex::new(T::lit(c), T::zero())).collect())
    }

    pub fn kind(&self) -> &InteriorKind<T> {
        &self.kind
    }

    /// Radius up to which evaluation is trusted (1 for everything but series).
    pub fn reliable_radius(&self) -> T {
        match &self.kind {
            InteriorKind::Series { rho, .. } => *rho,
            _ => T::one(),
        }
    }

    /// The coefficient `a₂ = f''(0)/2`.
    pub fn second_coefficient(&self) -> Complex<T> {
        let re = match &self.kind {
            InteriorKind::Identity => T::zero(),
            InteriorKind::Koebe => T::lit(2.0),
            InteriorKind::HalfPlane => T::one(),
            InteriorKind::Polynomial(c) | InteriorKind::Series { coeffs: c, .. } => {
                return c.first().copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()));
            }
        };
        Complex::new(re, T::zero())
    }

    /// The coefficient `a₃ = f'''(0)/6`.
    pub fn third_coefficient(&self) -> Complex<T> {
        self.quotient_coefficients(3).get(2).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Taylor coefficients of `f(z)/z`, i.e. `[1, a₂, a₃, …]`, with `len`
    /// entries for closed forms.
    fn quotient_coefficients(&self, len: usize) -> Vec<Complex<T>> {
        let one = Complex::new(T::one(), T::zero());
        match &self.kind {
            InteriorKind::Identity => vec![one],
            InteriorKind::Koebe => (0..len)
                .map(|j| Complex::new(T::from_usize(j + 1).unwrap(), T::zero()))
                .collect(),
            InteriorKind::HalfPlane => vec![one; len],
            InteriorKind::Polynomial(c) | InteriorKind::Series { coeffs: c, .. } => {
                std::iter::once(one).chain(c.iter().copied()).collect()
            }
        }
    }

    /// `[p, p', p'']` for `p(z) = f(z)/z`, without domain checks.
    pub(crate) fn quotient_jet(&self, z: Complex<T>) -> [Complex<T>; 3] {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        match &self.kind {
            InteriorKind::Identity => [one, zero, zero],
            InteriorKind::Koebe => {
                let q = (one - z).inv();
                let q2 = q * q;
                [q2, q2 * q * T::lit(2.0), q2 * q2 * T::lit(6.0)]
            }
            InteriorKind::HalfPlane => {
                let q = (one - z).inv();
                let q2 = q * q;
                [q, q2, q2 * q * T::lit(2.0)]
            }
            InteriorKind::Polynomial(c) | InteriorKind::Series { coeffs: c, .. } => {
                // p = 1 + z·Q(z) with Q(z) = Σ a_{j+2} z^j
                let [q, dq, ddq] = horner2(c, z);
                [one + z * q, q + z * dq, dq * T::lit(2.0) + z * ddq]
            }
        }
    }

    pub(crate) fn check_domain(&self, z: Complex<T>) -> Result<()> {
        if !is_finite(z) {
            return Err(Error::NonFinite { point: to_c64(z) });
        }
        let r = z.norm();
        if r >= T::one() {
            return Err(Error::Domain { point: to_c64(z), reason: "|z| >= 1".into() });
        }
        if let InteriorKind::Series { rho, .. } = &self.kind {
            if r > *rho {
                return Err(Error::Domain {
                    point: to_c64(z),
                    reason: format!("beyond reliable radius {rho} of the truncated series"),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn jet_unchecked(&self, z: Complex<T>) -> Result<Jet2<T>> {
        let [p, dp, ddp] = self.quotient_jet(z);
        let jet = Jet2 { f: z * p, f1: p + z * dp, f2: dp * T::lit(2.0) + z * ddp };
        if is_finite(jet.f) && is_finite(jet.f1) && is_finite(jet.f2) {
            Ok(jet)
        } else {
            Err(Error::NonFinite { point: to_c64(z) })
        }
    }

    /// `(f(z), f'(z), f''(z))` for `|z| < 1` (and `|z| ≤ ρ` for series).
    pub fn jet(&self, z: Complex<T>) -> Result<Jet2<T>> {
        self.check_domain(z)?;
        self.jet_unchecked(z)
    }

    pub(crate) fn log_jet_unchecked(&self, z: Complex<T>, zero_floor: T) -> Result<LogDerivatives<T>> {
        let [p, dp, ddp] = self.quotient_jet(z);
        if p.norm() < zero_floor * z.norm() {
            return Err(Error::ZeroOfFunction { point: to_c64(z), value: p.norm().as_f64() });
        }
        let f1 = p + z * dp;
        if f1.norm() < zero_floor {
            return Err(Error::ZeroOfDerivative { point: to_c64(z), value: f1.norm().as_f64() });
        }
        let out = LogDerivatives {
            starlike_offset: z * dp / p,
            convexity_offset: z * (dp * T::lit(2.0) + z * ddp) / f1,
        };
        if is_finite(out.starlike_offset) && is_finite(out.convexity_offset) {
            Ok(out)
        } else {
            Err(Error::NonFinite { point: to_c64(z) })
        }
    }

    /// `zf'/f − 1` and `zf''/f'` with a configurable zero floor.
    pub fn log_jet_with(&self, z: Complex<T>, zero_floor: T) -> Result<LogDerivatives<T>> {
        self.check_domain(z)?;
        self.log_jet_unchecked(z, zero_floor)
    }

    pub fn log_jet(&self, z: Complex<T>) -> Result<LogDerivatives<T>> {
        self.log_jet_with(z, T::lit(DEFAULT_ZERO_FLOOR))
    }

    /// `(zf'/f, 1 + zf''/f')`; equals `(1, 1)` at the origin.
    pub fn log_derivatives(&self, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let l = self.log_jet(z)?;
        Ok((l.starlike(), l.convexity()))
    }

    /// `H_s(z) = s(1 + zf''/f') + (1 − s) zf'/f`.
    pub fn h_s(&self, s: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
        Ok(h_s_of(&self.log_jet(z)?, s))
    }

    /// `f_r(z) = f(rz)/r`, with closed forms expanded to a truncated series.
    pub fn dilate(&self, r: T) -> Result<Self> {
        self.dilate_with_order(r, MAX_SERIES_ORDER)
    }

    /// As [`dilate`](Self::dilate), capping the series length of expanded
    /// closed forms at `max_order`.
    pub fn dilate_with_order(&self, r: T, max_order: usize) -> Result<Self> {
        if !(r > T::zero() && r < T::one()) {
            return Err(Error::invalid(format!("dilation radius must lie in (0, 1), got {r}")));
        }
        let scale = |c: &[Complex<T>]| -> Vec<Complex<T>> {
            // c[j] multiplies z^j in f(z)/z
            let mut rj = T::one();
            c.iter()
                .map(|&a| {
                    let out = a * rj;
                    rj = rj * r;
                    out
                })
                .collect()
        };
        let kind = match &self.kind {
            InteriorKind::Identity => InteriorKind::Identity,
            InteriorKind::Koebe | InteriorKind::HalfPlane => {
                let n = truncation_order(r.as_f64(), max_order);
                let q = scale(&self.quotient_coefficients(n));
                InteriorKind::Series { coeffs: q[1..].to_vec(), rho: T::one() }
            }
            InteriorKind::Polynomial(_) => {
                let q = scale(&self.quotient_coefficients(0));
                InteriorKind::Polynomial(q[1..].to_vec())
            }
            InteriorKind::Series { rho, .. } => {
                let q = scale(&self.quotient_coefficients(0));
                InteriorKind::Series { coeffs: q[1..].to_vec(), rho: (*rho / r).min(T::one()) }
            }
        };
        Ok(Self { kind })
    }

    /// `g(ζ) = 1/f(1/ζ)` as a Laurent series; requires `a₂ = 0`.
    pub fn invert_to_exterior(&self) -> Result<ExteriorFunction<T>> {
        let degree = match &self.kind {
            InteriorKind::Polynomial(c) | InteriorKind::Series { coeffs: c, .. } => c.len() + 1,
            _ => 1,
        };
        self.invert_to_exterior_with_order((2 * degree).max(32))
    }

    /// As [`invert_to_exterior`](Self::invert_to_exterior), keeping the
    /// reciprocal series of `f(z)/z` up to `z^order`.
    pub fn invert_to_exterior_with_order(&self, order: usize) -> Result<ExteriorFunction<T>> {
        let a2 = self.second_coefficient();
        if a2.norm() != T::zero() {
            return Err(Error::invalid(format!(
                "f''(0) must vanish to invert onto the exterior disk (a2 = {a2})"
            )));
        }
        let (coeffs, rho) = match &self.kind {
            InteriorKind::Identity => return Ok(ExteriorFunction::identity()),
            InteriorKind::Polynomial(_) => (self.quotient_coefficients(0), T::one()),
            InteriorKind::Series { rho, .. } => (self.quotient_coefficients(0), *rho),
            InteriorKind::Koebe | InteriorKind::HalfPlane => unreachable!("a2 != 0"),
        };
        let b = series::reciprocal(&coeffs, order.max(2));
        ExteriorFunction::laurent_with_min_modulus(b[2..].to_vec(), rho.recip())
    }
}

/// Smallest truncation order `N` with `N³ rᴺ` below double-precision noise.
fn truncation_order(r: f64, cap: usize) -> usize {
    let mut n = 8usize;
    while n < cap && (n as f64).powi(3) * r.powi(n as i32) > 1e-17 {
        n += 8;
    }
    n.min(cap)
}

pub(crate) fn h_s_of<T: Real>(l: &LogDerivatives<T>, s: Complex<T>) -> Complex<T> {
    // s(1 + zf''/f') + (1 - s) zf'/f = 1 + s zf''/f' + (1 - s)(zf'/f - 1)
    let one = Complex::new(T::one(), T::zero());
    one + s * l.convexity_offset + (one - s) * l.starlike_offset
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExteriorKind<T: Real> {
    Identity,
    /// Coefficients `d₁..d_N` of `ζ⁻¹..ζ⁻ᴺ`, trusted for `|ζ| ≥ min_modulus`.
    Laurent { coeffs: Vec<Complex<T>>, min_modulus: T },
}

/// An analytic function `g(ζ) = ζ + d₁/ζ + …` on the exterior of the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorFunction<T: Real = f64> {
    kind: ExteriorKind<T>,
}

impl<T: Real> ExteriorFunction<T> {
    pub fn identity() -> Self {
        Self { kind: ExteriorKind::Identity }
    }

    pub fn laurent(coeffs: Vec<Complex<T>>) -> Result<Self> {
        Self::laurent_with_min_modulus(coeffs, T::one())
    }

    pub fn laurent_real(coeffs: &[f64]) -> Result<Self> {
        Self::laurent(coeffs.iter().map(|&c| Complex::new(T::lit(c), T::zero())).collect())
    }

    pub fn laurent_with_min_modulus(coeffs: Vec<Complex<T>>, min_modulus: T) -> Result<Self> {
        check_coeffs(&coeffs)?;
        if !(min_modulus >= T::one()) || !min_modulus.is_finite() {
            return Err(Error::invalid(format!("reliable modulus must be >= 1, got {min_modulus}")));
        }
        Ok(Self { kind: ExteriorKind::Laurent { coeffs, min_modulus } })
    }

    pub fn kind(&self) -> &ExteriorKind<T> {
        &self.kind
    }

    /// Modulus from which evaluation is trusted (at least 1).
    pub fn min_modulus(&self) -> T {
        match &self.kind {
            ExteriorKind::Identity => T::one(),
            ExteriorKind::Laurent { min_modulus, .. } => *min_modulus,
        }
    }

    /// The coefficient `d₁` of `ζ⁻¹`.
    pub fn first_coefficient(&self) -> Complex<T> {
        match &self.kind {
            ExteriorKind::Laurent { coeffs, .. } if !coeffs.is_empty() => coeffs[0],
            _ => Complex::new(T::zero(), T::zero()),
        }
    }

    /// `[S, S', S'']` for `S(w) = Σ dₙ wⁿ`.
    fn tail_jet(&self, w: Complex<T>) -> [Complex<T>; 3] {
        let zero = Complex::new(T::zero(), T::zero());
        match &self.kind {
            ExteriorKind::Identity => [zero; 3],
            ExteriorKind::Laurent { coeffs, .. } => {
                // S(w) = w·Q(w) with Q(w) = Σ d_n w^{n-1}
                let [q, dq, ddq] = horner2(coeffs, w);
                [w * q, q + w * dq, dq * T::lit(2.0) + w * ddq]
            }
        }
    }

    pub(crate) fn check_domain(&self, zeta: Complex<T>) -> Result<()> {
        if !is_finite(zeta) {
            return Err(Error::NonFinite { point: to_c64(zeta) });
        }
        if zeta.norm() < self.min_modulus() {
            return Err(Error::Domain {
                point: to_c64(zeta),
                reason: format!("|zeta| below {}", self.min_modulus()),
            });
        }
        Ok(())
    }

    /// `(g(ζ), g'(ζ), g''(ζ))` for `|ζ| ≥ max(1, reliable modulus)`.
    pub fn jet(&self, zeta: Complex<T>) -> Result<Jet2<T>> {
        self.check_domain(zeta)?;
        let w = zeta.inv();
        let [s, ds, dds] = self.tail_jet(w);
        let one = Complex::new(T::one(), T::zero());
        let jet = Jet2 {
            f: zeta + s,
            f1: one - w * w * ds,
            f2: w * w * w * (ds * T::lit(2.0) + w * dds),
        };
        if is_finite(jet.f) && is_finite(jet.f1) && is_finite(jet.f2) {
            Ok(jet)
        } else {
            Err(Error::NonFinite { point: to_c64(zeta) })
        }
    }

    pub fn log_jet_with(&self, zeta: Complex<T>, zero_floor: T) -> Result<LogDerivatives<T>> {
        self.check_domain(zeta)?;
        let w = zeta.inv();
        let [s, ds, dds] = self.tail_jet(w);
        let one = Complex::new(T::one(), T::zero());
        let quotient = one + w * s;
        if quotient.norm() < zero_floor {
            return Err(Error::ZeroOfFunction { point: to_c64(zeta), value: quotient.norm().as_f64() });
        }
        let g1 = one - w * w * ds;
        if g1.norm() < zero_floor {
            return Err(Error::ZeroOfDerivative { point: to_c64(zeta), value: g1.norm().as_f64() });
        }
        let out = LogDerivatives {
            starlike_offset: -(w * s + w * w * ds) / quotient,
            convexity_offset: w * w * (ds * T::lit(2.0) + w * dds) / g1,
        };
        if is_finite(out.starlike_offset) && is_finite(out.convexity_offset) {
            Ok(out)
        } else {
            Err(Error::NonFinite { point: to_c64(zeta) })
        }
    }

    /// `ζg'/g − 1` and `ζg''/g'`.
    pub fn log_jet(&self, zeta: Complex<T>) -> Result<LogDerivatives<T>> {
        self.log_jet_with(zeta, T::lit(DEFAULT_ZERO_FLOOR))
    }

    /// `(ζg'/g, 1 + ζg''/g')`.
    pub fn log_derivatives(&self, zeta: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let l = self.log_jet(zeta)?;
        Ok((l.starlike(), l.convexity()))
    }

    /// `G_s(ζ) = (1 − s)(ζg'/g − 1) + s ζg''/g'`.
    pub fn g_s(&self, s: Complex<T>, zeta: Complex<T>) -> Result<Complex<T>> {
        Ok(g_s_of(&self.log_jet(zeta)?, s))
    }

    /// `g_R(ζ) = g(Rζ)/R`.
    pub fn dilate(&self, big_r: T) -> Result<Self> {
        if !(big_r > T::one()) || !big_r.is_finite() {
            return Err(Error::invalid(format!("exterior dilation factor must exceed 1, got {big_r}")));
        }
        let kind = match &self.kind {
            ExteriorKind::Identity => ExteriorKind::Identity,
            ExteriorKind::Laurent { coeffs, min_modulus } => {
                let mut scale = big_r.powi(-2);
                let coeffs = coeffs
                    .iter()
                    .map(|&d| {
                        let out = d * scale;
                        scale = scale / big_r;
                        out
                    })
                    .collect();
                ExteriorKind::Laurent { coeffs, min_modulus: (*min_modulus / big_r).max(T::one()) }
            }
        };
        Ok(Self { kind })
    }
}

pub(crate) fn g_s_of<T: Real>(l: &LogDerivatives<T>, s: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    (one - s) * l.starlike_offset + s * l.convexity_offset
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_jet() {
        let j = InteriorFunction::<f64>::identity().jet(cplx(0.5, 0.0)).unwrap();
        assert_eq!(j, Jet2 { f: cplx(0.5, 0.0), f1: cplx(1.0, 0.0), f2: cplx(0.0, 0.0) });
    }

    #[test]
    fn halfplane_jet_at_half() {
        let j = InteriorFunction::<f64>::halfplane().jet(cplx(0.5, 0.0)).unwrap();
        assert!(close(j.f, cplx(1.0, 0.0), 1e-15));
        assert!(close(j.f1, cplx(4.0, 0.0), 1e-14));
        assert!(close(j.f2, cplx(16.0, 0.0), 1e-13));
    }

    #[test]
    fn koebe_jet_matches_hand_derivatives() {
        let z: Complex<f64> = cplx(0.2, -0.3);
        let j = InteriorFunction::<f64>::koebe().jet(z).unwrap();
        let one: Complex<f64> = cplx(1.0, 0.0);
        assert!(close(j.f, z / ((one - z) * (one - z)), 1e-14));
        assert!(close(j.f1, (one + z) / (one - z).powi(3), 1e-13));
        assert!(close(j.f2, (z * 2.0 + 4.0) / (one - z).powi(4), 1e-12));
    }

    #[test]
    fn polynomial_jet_at_i() {
        let f = InteriorFunction::<f64>::polynomial_real(&[0.1]).unwrap();
        // |i| = 1 is outside the open disk, so evaluate through the unchecked path
        let j = f.jet_unchecked(cplx(0.0, 1.0)).unwrap();
        assert!(close(j.f, cplx(-0.1, 1.0), 1e-15));
        assert!(close(j.f1, cplx(1.0, 0.2), 1e-15));
        assert!(close(j.f2, cplx(0.2, 0.0), 1e-15));
        assert!(matches!(f.jet(cplx(0.0, 1.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn series_refuses_beyond_reliable_radius() {
        let f = InteriorFunction::<f64>::series(vec![cplx(0.5, 0.0)], 0.5).unwrap();
        assert!(f.jet(cplx(0.5, 0.0)).is_ok());
        assert!(matches!(f.jet(cplx(0.51, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn log_derivatives_examples() {
        let (p, q) = InteriorFunction::<f64>::identity().log_derivatives(cplx(0.3, 0.7)).unwrap();
        assert!(close(p, cplx(1.0, 0.0), 1e-15) && close(q, cplx(1.0, 0.0), 1e-15));
        let (p, q) = InteriorFunction::<f64>::halfplane().log_derivatives(cplx(0.5, 0.0)).unwrap();
        assert!(close(p, cplx(2.0, 0.0), 1e-14) && close(q, cplx(3.0, 0.0), 1e-14));
        for f in [InteriorFunction::<f64>::koebe(), InteriorFunction::polynomial_real(&[0.3, -0.2]).unwrap()] {
            let (p, q) = f.log_derivatives(cplx(0.0, 0.0)).unwrap();
            assert_eq!((p, q), (cplx(1.0, 0.0), cplx(1.0, 0.0)));
        }
    }

    #[test]
    fn zero_of_function_is_reported() {
        // f = z - 2z^2 vanishes at z = 1/2
        let f = InteriorFunction::<f64>::polynomial_real(&[-2.0]).unwrap();
        assert!(matches!(f.log_jet(cplx(0.5, 0.0)), Err(Error::ZeroOfFunction { .. })));
        // f' = 1 - 4z vanishes at z = 1/4
        assert!(matches!(f.log_jet(cplx(0.25, 0.0)), Err(Error::ZeroOfDerivative { .. })));
    }

    #[test]
    fn h_s_examples() {
        let hp = InteriorFunction::<f64>::halfplane();
        let z: Complex<f64> = cplx(0.5, 0.0);
        assert!(close(hp.h_s(cplx(1.0, 0.0), z).unwrap(), cplx(3.0, 0.0), 1e-14));
        assert!(close(hp.h_s(cplx(2.0, 0.0), z).unwrap(), cplx(4.0, 0.0), 1e-14));
        let id = InteriorFunction::<f64>::identity();
        assert_eq!(id.h_s(cplx(0.3, 2.0), cplx(-0.4, 0.1)).unwrap(), cplx(1.0, 0.0));
    }

    #[test]
    fn g_s_examples() {
        let id = ExteriorFunction::<f64>::identity();
        assert_eq!(id.g_s(cplx(1.5, 0.5), cplx(2.0, 1.0)).unwrap(), cplx(0.0, 0.0));
        let g = ExteriorFunction::<f64>::laurent_real(&[0.1]).unwrap();
        let v = g.g_s(cplx(1.0, 0.0), cplx(2.0, 0.0)).unwrap();
        assert!(close(v, cplx(0.05 / 0.975, 0.0), 1e-15));
        let far = g.g_s(cplx(1.0, 0.0), cplx(1e6, 1e6)).unwrap();
        assert!(far.norm() < 1e-12);
    }

    #[test]
    fn exterior_jet_matches_direct_formula() {
        let g = ExteriorFunction::<f64>::laurent(vec![cplx(0.1, 0.05), cplx(0.0, 0.0), cplx(-0.02, 0.0)]).unwrap();
        let z: Complex<f64> = cplx(1.3, -0.8);
        let j = g.jet(z).unwrap();
        let d: [Complex<f64>; 3] = [cplx(0.1, 0.05), cplx(0.0, 0.0), cplx(-0.02, 0.0)];
        let mut f = z;
        let mut f1 = cplx(1.0, 0.0);
        let mut f2 = cplx(0.0, 0.0);
        for (i, dn) in d.iter().enumerate() {
            let n = (i + 1) as i32;
            f += dn * z.powi(-n);
            f1 -= dn * z.powi(-n - 1) * n as f64;
            f2 += dn * z.powi(-n - 2) * (n * (n + 1)) as f64;
        }
        assert!(close(j.f, f, 1e-14) && close(j.f1, f1, 1e-14) && close(j.f2, f2, 1e-14));
    }

    #[test]
    fn invert_examples() {
        let id = InteriorFunction::<f64>::identity().invert_to_exterior().unwrap();
        assert_eq!(id, ExteriorFunction::identity());

        let f = InteriorFunction::<f64>::polynomial_real(&[0.0, 0.1]).unwrap();
        let g = f.invert_to_exterior_with_order(6).unwrap();
        let ExteriorKind::Laurent { coeffs, .. } = g.kind() else { panic!() };
        let expect = [-0.1, 0.0, 0.01, 0.0, -0.001];
        assert_eq!(coeffs.len(), expect.len());
        for (c, e) in coeffs.iter().zip(expect) {
            assert!(close(*c, cplx(e, 0.0), 1e-15));
        }
        let g = f.invert_to_exterior().unwrap();
        let g2 = g.jet(cplx(2.0, 0.0)).unwrap().f;
        let fh = f.jet(cplx(0.5, 0.0)).unwrap().f;
        assert!(close(g2 * fh, cplx(1.0, 0.0), 1e-14));

        assert!(InteriorFunction::<f64>::halfplane().invert_to_exterior().is_err());
        assert!(InteriorFunction::<f64>::polynomial_real(&[0.1]).unwrap().invert_to_exterior().is_err());
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(InteriorFunction::<f64>::identity().dilate(0.5).unwrap(), InteriorFunction::identity());
        let f = InteriorFunction::<f64>::polynomial_real(&[0.1]).unwrap();
        assert_eq!(f.dilate(0.5).unwrap(), InteriorFunction::polynomial_real(&[0.05]).unwrap());
        let z: Complex<f64> = cplx(0.3, 0.2);
        for f in [InteriorFunction::koebe(), InteriorFunction::halfplane(), f] {
            let fr = f.dilate(0.5).unwrap();
            let lhs = fr.jet(z).unwrap().f;
            let rhs = f.jet(z * 0.5).unwrap().f / 0.5;
            assert!(close(lhs, rhs, 1e-12), "{f:?}");
        }
        assert!(InteriorFunction::<f64>::koebe().dilate(1.0).is_err());

        assert_eq!(ExteriorFunction::<f64>::identity().dilate(2.0).unwrap(), ExteriorFunction::identity());
        let g = ExteriorFunction::<f64>::laurent_real(&[0.1]).unwrap();
        assert_eq!(g.dilate(2.0).unwrap(), ExteriorFunction::laurent_real(&[0.025]).unwrap());
        let g = ExteriorFunction::<f64>::laurent_real(&[0.1, -0.3, 0.05]).unwrap();
        let gr = g.dilate(2.0).unwrap();
        let zeta: Complex<f64> = cplx(3.0, 0.0);
        assert!(close(gr.jet(zeta).unwrap().f, g.jet(zeta * 2.0).unwrap().f / 2.0, 1e-12));
        assert!(g.dilate(1.0).is_err());
    }

    #[test]
    fn single_precision_jet() {
        let j = InteriorFunction::<f32>::halfplane().jet(cplx(0.5, 0.0)).unwrap();
        assert!((j.f1.re - 4.0).abs() < 1e-5);
    }
}
