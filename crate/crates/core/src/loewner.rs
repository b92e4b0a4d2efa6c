//! Explicit Löwner chains built from a function satisfying one of the
//! criteria, their transition functions, and grid checks of the disk bound
//! that makes the transition functions `l`-bounded.
//!
//! Complex powers `B^s` are taken as `exp(s log B)` with `log B` continued
//! along the time path from `log 1 = 0`, see [`trace_branch`].

use num_complex::Complex;
use rayon::prelude::*;

use crate::analytic::{g_s_of, h_s_of, ExteriorFunction, InteriorFunction, DEFAULT_ZERO_FLOOR};
use crate::disk::compute_l;
use crate::error::{Error, Result};
use crate::scalar::{angles, is_finite, to_c64, Real};

/// Relative floor below which the power base counts as vanishing.
pub const BRACE_FLOOR: f64 = 1e-12;

/// Largest argument increment accepted between consecutive path samples.
pub const MAX_ARG_STEP: f64 = std::f64::consts::PI / 8.0;

const INITIAL_STEPS: usize = 8;
const MAX_HALVINGS: u32 = 48;

/// One accepted path sample: time, base value and continued logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSample<T: Real = f64> {
    pub t: T,
    pub base: Complex<T>,
    pub log_base: Complex<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchPath<T: Real = f64> {
    pub samples: Vec<BranchSample<T>>,
}

impl<T: Real> BranchPath<T> {
    /// Continued logarithm at the end of the path.
    pub fn final_log(&self) -> Complex<T> {
        self.samples.last().map_or_else(|| Complex::new(T::zero(), T::zero()), |s| s.log_base)
    }
}

/// Continues `log base(τ)` over `τ ∈ [0, t]`, with `base(0) = 1`.
///
/// `base` returns the value together with the magnitude of the terms that
/// form it, which scales the vanishing floor. The step is halved until
/// consecutive arguments differ by at most [`MAX_ARG_STEP`]. The final
/// logarithm is snapped to `ln|B| + i(Arg B + 2πn)` so the result does not
/// depend on the step sequence.
pub fn trace_branch<T, F>(base: F, t: T, point: Complex<T>) -> Result<BranchPath<T>>
where
    T: Real,
    F: Fn(T) -> Result<(Complex<T>, T)>,
{
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let mut samples = vec![BranchSample { t: T::zero(), base: one, log_base: zero }];
    if !(t > T::zero()) {
        return Ok(samples_path(samples));
    }
    let floor = T::lit(BRACE_FLOOR);
    let max_step = T::lit(MAX_ARG_STEP);
    let full = t / T::from_usize(INITIAL_STEPS).unwrap();
    let min_step = full * T::lit(2.0).powi(-(MAX_HALVINGS as i32));
    let mut dt = full;
    let (mut tau, mut b, mut log_b) = (T::zero(), one, zero);
    while tau < t {
        let next = if tau + dt >= t { t } else { tau + dt };
        let (b1, scale) = base(next)?;
        if !is_finite(b1) {
            return Err(Error::NonFinite { point: to_c64(point) });
        }
        if b1.norm() < floor * scale.max(T::one()) {
            return Err(Error::BraceVanishes { point: to_c64(point), t: next.as_f64() });
        }
        let d = (b1 / b).arg();
        if d.abs() > max_step {
            dt = dt / T::lit(2.0);
            if dt < min_step {
                return Err(Error::BraceVanishes { point: to_c64(point), t: next.as_f64() });
            }
            continue;
        }
        log_b = Complex::new(b1.norm().ln(), log_b.im + d);
        tau = next;
        b = b1;
        samples.push(BranchSample { t: tau, base: b, log_base: log_b });
        dt = (dt * T::lit(2.0)).min(full);
    }
    let last = samples.last_mut().unwrap();
    let principal = last.base.arg();
    let n = ((last.log_base.im - principal) / T::TAU()).round();
    last.log_base = Complex::new(last.base.norm().ln(), principal + n * T::TAU());
    Ok(samples_path(samples))
}

fn samples_path<T: Real>(samples: Vec<BranchSample<T>>) -> BranchPath<T> {
    BranchPath { samples }
}

/// `{1 − (a/c)(e^{2t}−1) w f'(w)/f(w)}^s`-chain of a function satisfying the
/// main criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorChain<T: Real = f64> {
    pub f: InteriorFunction<T>,
    pub s: Complex<T>,
    pub c: Complex<T>,
}

impl<T: Real> InteriorChain<T> {
    pub fn new(f: InteriorFunction<T>, s: Complex<T>, c: Complex<T>) -> Result<Self> {
        if !is_finite(s) || !(s.re > T::zero()) {
            return Err(Error::invalid(format!("Re s must be positive, got s = {s}")));
        }
        if !is_finite(c) || c.norm() == T::zero() {
            return Err(Error::invalid("the chain needs c != 0 (c = 0 never satisfies the necessary inequality)"));
        }
        Ok(Self { f, s, c })
    }

    /// `w f'(w)/f(w)`, equal to 1 at the origin.
    fn starlike(&self, w: Complex<T>) -> Result<Complex<T>> {
        let l = self.f.log_jet_with(w, T::lit(DEFAULT_ZERO_FLOOR))?;
        Ok(l.starlike())
    }

    /// Continued logarithm of the brace along `[0, t]`.
    pub fn trace(&self, z: Complex<T>, t: T) -> Result<BranchPath<T>> {
        let ratio = Complex::new(self.s.re, T::zero()) / self.c;
        let one = Complex::new(T::one(), T::zero());
        trace_branch(
            |tau: T| {
                let w = (-self.s * tau).exp() * z;
                let term = ratio * (T::lit(2.0) * tau).exp_m1() * self.starlike(w)?;
                Ok((one - term, term.norm()))
            },
            t,
            z,
        )
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("chain time must be finite and non-negative, got {t}")))
    }
}

/// `f(e^{−st}z) {1 − (a/c)(e^{2t}−1) u(e^{−st}z)}^s` with `u = wf'/f`.
pub fn chain_interior<T: Real>(ch: &InteriorChain<T>, z: Complex<T>, t: T) -> Result<Complex<T>> {
    check_time(t)?;
    let w = (-ch.s * t).exp() * z;
    let fw = ch.f.jet(w)?.f;
    if t == T::zero() {
        return Ok(fw);
    }
    let log_b = ch.trace(z, t)?.final_log();
    Ok(fw * (ch.s * log_b).exp())
}

/// The chain in the time variable `t|s|`.
pub fn reparam_chain<T: Real>(ch: &InteriorChain<T>, z: Complex<T>, t: T) -> Result<Complex<T>> {
    chain_interior(ch, z, t / ch.s.norm())
}

/// `(c/a)e^{−2t} + 1 + (e^{−2t}−1) H_s(z)`.
#[allow(non_snake_case)]
pub fn P_interior<T: Real>(ch: &InteriorChain<T>, z: Complex<T>, t: T) -> Result<Complex<T>> {
    let h = h_s_of(&ch.f.log_jet(z)?, ch.s);
    Ok(p_interior_from(ch, h, t))
}

fn p_interior_from<T: Real>(ch: &InteriorChain<T>, h: Complex<T>, t: T) -> Complex<T> {
    let e = (-T::lit(2.0) * t).exp();
    ch.c * (e / ch.s.re) + T::one() + h * (e - T::one())
}

fn mobius_h<T: Real>(s: Complex<T>, p: Complex<T>, point: Complex<T>, t: T) -> Result<Complex<T>> {
    let den = Complex::new(T::one(), T::zero()) - p;
    if den.norm() <= T::epsilon() * (T::one() + p.norm()) {
        return Err(Error::Pole { point: to_c64(point), t: t.as_f64() });
    }
    Ok(s / s.norm() * (p + T::one()) / den)
}

/// `(s/|s|)(1+P)/(1−P)` with `P` taken at `(e^{−st/|s|}z, t/|s|)`.
pub fn h_interior<T: Real>(ch: &InteriorChain<T>, z: Complex<T>, t: T) -> Result<Complex<T>> {
    let tau = t / ch.s.norm();
    let p = P_interior(ch, (-ch.s * tau).exp() * z, tau)?;
    mobius_h(ch.s, p, z, t)
}

/// `(1/g(e^{st}ζ)) {1 − (1−e^{−2t}) u(e^{st}ζ)}^{−s}` with `u = ζg'/g`;
/// this is the chain at `1/ζ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorChain<T: Real = f64> {
    pub g: ExteriorFunction<T>,
    pub s: Complex<T>,
}

impl<T: Real> ExteriorChain<T> {
    pub fn new(g: ExteriorFunction<T>, s: Complex<T>) -> Result<Self> {
        if !is_finite(s) || !(s.re >= T::one()) {
            return Err(Error::invalid(format!("Re s must be at least 1, got s = {s}")));
        }
        Ok(Self { g, s })
    }

    pub fn trace(&self, zeta: Complex<T>, t: T) -> Result<BranchPath<T>> {
        let one = Complex::new(T::one(), T::zero());
        trace_branch(
            |tau: T| {
                let w = (self.s * tau).exp() * zeta;
                let u = self.g.log_jet_with(w, T::lit(DEFAULT_ZERO_FLOOR))?.starlike();
                let term = u * -(-T::lit(2.0) * tau).exp_m1();
                Ok((one - term, term.norm()))
            },
            t,
            zeta,
        )
    }
}

pub fn chain_exterior<T: Real>(ch: &ExteriorChain<T>, zeta: Complex<T>, t: T) -> Result<Complex<T>> {
    check_time(t)?;
    let w = (ch.s * t).exp() * zeta;
    let gw = ch.g.jet(w)?.f;
    if gw.norm() < T::lit(DEFAULT_ZERO_FLOOR) {
        return Err(Error::ZeroOfFunction { point: to_c64(w), value: gw.norm().as_f64() });
    }
    if t == T::zero() {
        return Ok(gw.inv());
    }
    let log_b = ch.trace(zeta, t)?.final_log();
    Ok(gw.inv() * (-ch.s * log_b).exp())
}

/// `(e^{2t}−1) G_s(ζ)`.
#[allow(non_snake_case)]
pub fn P_exterior<T: Real>(ch: &ExteriorChain<T>, zeta: Complex<T>, t: T) -> Result<Complex<T>> {
    let gs = g_s_of(&ch.g.log_jet(zeta)?, ch.s);
    Ok(gs * (T::lit(2.0) * t).exp_m1())
}

/// `(s/|s|)(1+P)/(1−P)` with `P` taken at `(e^{st/|s|}ζ, t/|s|)`.
pub fn h_exterior<T: Real>(ch: &ExteriorChain<T>, zeta: Complex<T>, t: T) -> Result<Complex<T>> {
    let tau = t / ch.s.norm();
    let p = P_exterior(ch, (ch.s * tau).exp() * zeta, tau)?;
    mobius_h(ch.s, p, zeta, t)
}

/// `q(t) = (1 − e^{−2t})/(1 − e^{−2at})` for `t > 0`.
pub fn q_factor<T: Real>(a: T, t: T) -> T {
    (-T::lit(2.0) * t).exp_m1() / (-T::lit(2.0) * a * t).exp_m1()
}

/// `1 ≤ q < 1/a` for `a < 1`, `1/a < q ≤ 1` for `a > 1`, and `q = 1` at
/// `a = 1`, each up to `tol`.
pub fn q_bracket_holds<T: Real>(a: T, q: T, tol: T) -> bool {
    let inv = a.recip();
    if a < T::one() {
        q >= T::one() - tol && q < inv
    } else if a > T::one() {
        q > inv && q <= T::one() + tol
    } else {
        (q - T::one()).abs() <= tol
    }
}

/// Sampling grid of the lemma checks: times and a polar grid in `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaGrid {
    pub times: Vec<f64>,
    pub radii: usize,
    pub angles: usize,
    /// Outermost interior radius, or the factor above the minimal modulus
    /// reached by the outermost exterior radius.
    pub extent: f64,
}

impl Default for LemmaGrid {
    fn default() -> Self {
        let mut times: Vec<f64> = (0..=100).map(|i| i as f64 * 0.05).collect();
        times.extend([10.0, 20.0]);
        Self { times, radii: 16, angles: 64, extent: 0.999 }
    }
}

impl LemmaGrid {
    fn interior_points<T: Real>(&self, r_max: T) -> Vec<Complex<T>> {
        let n = self.radii.max(2);
        let r_max = r_max.min(T::lit(self.extent));
        let thetas: Vec<T> = angles(self.angles);
        (0..n)
            .flat_map(|i| {
                let r = r_max * T::lit(i as f64 / (n - 1) as f64);
                let thetas = thetas.clone();
                thetas.into_iter().map(move |th| Complex::from_polar(r, th))
            })
            .collect()
    }

    fn exterior_points<T: Real>(&self, rho_min: T) -> Vec<Complex<T>> {
        let n = self.radii.max(2);
        let thetas: Vec<T> = angles(self.angles);
        // ρ from just above the minimal modulus to ten times it
        let lo = rho_min * T::lit(1.0 + 1e-4);
        (0..n)
            .flat_map(|i| {
                let r = lo * T::lit(10f64.powf(i as f64 / (n - 1) as f64));
                let thetas = thetas.clone();
                thetas.into_iter().map(move |th| Complex::from_polar(r, th))
            })
            .collect()
    }
}

/// Grid maxima of the lemma-level quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport<T: Real = f64> {
    /// `max |a P + ib|` over the grid.
    pub max_disk: T,
    pub witness: Complex<T>,
    pub witness_t: T,
    /// `k |s|`.
    pub disk_bound: T,
    pub disk_margin: T,
    /// `max (m₁ − q M)`; non-positive when the triangle-inequality step holds.
    pub m1_excess: Option<T>,
    /// `max |m₂ − |q−1||c+s||`.
    pub m2_residual: Option<T>,
    /// `max_t (q M + |1−q||c+s|) − k|s|`.
    pub triangle_excess: Option<T>,
    pub q_range: Option<(T, T)>,
    pub q_bracket_ok: bool,
    pub herglotz_min_re: T,
    /// `max |(h−1)/(h+1)|`.
    pub transition_max: T,
    pub l: T,
    pub transition_margin: T,
    pub points: usize,
    pub passed: bool,
}

struct PointStats<T: Real> {
    disk: T,
    z: Complex<T>,
    t: T,
    m1_excess: Option<T>,
    m2_residual: Option<T>,
    re_h: T,
    transition: T,
}

fn transition_of<T: Real>(h: Complex<T>) -> T {
    ((h - T::one()) / (h + T::one())).norm()
}

fn fold_stats<T: Real>(
    stats: Vec<PointStats<T>>,
    disk_bound: T,
    l: T,
    extra: Option<(T, T, T, bool)>,
) -> Result<LemmaReport<T>> {
    let first = stats.first().ok_or_else(|| Error::invalid("empty lemma grid"))?;
    let (mut max_disk, mut witness, mut witness_t) = (first.disk, first.z, first.t);
    let mut m1: Option<T> = None;
    let mut m2: Option<T> = None;
    let mut herglotz = T::infinity();
    let mut transition = T::zero();
    for p in &stats {
        if p.disk > max_disk {
            (max_disk, witness, witness_t) = (p.disk, p.z, p.t);
        }
        if let Some(v) = p.m1_excess {
            m1 = Some(m1.map_or(v, |m| m.max(v)));
        }
        if let Some(v) = p.m2_residual {
            m2 = Some(m2.map_or(v, |m| m.max(v)));
        }
        herglotz = herglotz.min(p.re_h);
        transition = transition.max(p.transition);
    }
    let tol = T::lit(1e-9);
    let disk_margin = disk_bound - max_disk;
    let transition_margin = l - transition;
    let (q_range, q_ok, triangle) = match extra {
        Some((lo, hi, tri, ok)) => (Some((lo, hi)), ok, Some(tri)),
        None => (None, true, None),
    };
    let passed = disk_margin >= -tol
        && transition_margin >= -T::lit(1e-8)
        && herglotz > T::zero()
        && q_ok
        && m1.is_none_or(|v| v <= tol)
        && triangle.is_none_or(|v| v <= tol);
    Ok(LemmaReport {
        max_disk,
        witness,
        witness_t,
        disk_bound,
        disk_margin,
        m1_excess: m1,
        m2_residual: m2,
        triangle_excess: triangle,
        q_range,
        q_bracket_ok: q_ok,
        herglotz_min_re: herglotz,
        transition_max: transition,
        l,
        transition_margin,
        points: stats.len(),
        passed,
    })
}

/// Checks `|a P(e^{−st/|s|}z, t/|s|) + ib| ≤ k|s|` on the grid, together
/// with the intermediate bounds `m₁ ≤ qM`, `m₂ = |q−1||c+s|`, the bracket on
/// `q`, `Re h > 0` and `|(h−1)/(h+1)| ≤ l`.
#[allow(non_snake_case)]
pub fn verify_lemma_diskB<T: Real>(ch: &InteriorChain<T>, k: T, grid: &LemmaGrid) -> Result<LemmaReport<T>> {
    let (s, c) = (ch.s, ch.c);
    let a = s.re;
    let abs_s = s.norm();
    let m_bound = if a <= T::one() {
        a * k * abs_s + (a - T::one()) * (c + s).norm()
    } else {
        k * abs_s
    };
    let cs = (c + s).norm();
    let ib = Complex::new(T::zero(), s.im);
    let points = grid.interior_points(ch.f.reliable_radius());
    let times: Vec<T> = grid.times.iter().map(|&t| T::lit(t)).collect();
    let work: Vec<(T, Complex<T>)> = times.iter().flat_map(|&t| points.iter().map(move |&z| (t, z))).collect();

    let stats: Vec<PointStats<T>> = work
        .par_iter()
        .map(|&(t, z)| {
            let tau = t / abs_s;
            let w = (-s * tau).exp() * z;
            let h_s = h_s_of(&ch.f.log_jet(w)?, s);
            let p = p_interior_from(ch, h_s, tau);
            let disk = (p * a + ib).norm();
            let h = mobius_h(s, p, z, t)?;
            let (m1_excess, m2_residual) = if tau > T::zero() {
                let q = q_factor(a, tau);
                let x = c * (-T::lit(2.0) * a * tau).exp() + s;
                let m1 = (x * q + h_s * (a * (-T::lit(2.0) * tau).exp_m1())).norm();
                let m2 = (cs * (q - T::one())).abs();
                (Some(m1 - q * m_bound), Some((m2 - (q - T::one()).abs() * cs).abs()))
            } else {
                (None, None)
            };
            Ok(PointStats { disk, z, t, m1_excess, m2_residual, re_h: h.re, transition: transition_of(h) })
        })
        .collect::<Result<_>>()?;

    let tol = T::lit(1e-12);
    let mut q_lo = T::infinity();
    let mut q_hi = T::neg_infinity();
    let mut q_ok = true;
    let mut tri = T::neg_infinity();
    for &t in times.iter().filter(|&&t| t > T::zero()) {
        let q = q_factor(a, t / abs_s);
        q_lo = q_lo.min(q);
        q_hi = q_hi.max(q);
        q_ok &= q_bracket_holds(a, q, tol);
        tri = tri.max(q * m_bound + (T::one() - q).abs() * cs - k * abs_s);
    }
    let extra = if q_lo.is_finite() { Some((q_lo, q_hi, tri, q_ok)) } else { None };
    fold_stats(stats, k * abs_s, compute_l(s, k), extra)
}

/// Exterior counterpart: `|a P(e^{st/|s|}ζ, t/|s|) + ib| ≤ k|s|`, `Re h > 0`
/// and `|(h−1)/(h+1)| ≤ l` on the grid.
#[allow(non_snake_case)]
pub fn verify_lemma_diskB_exterior<T: Real>(
    ch: &ExteriorChain<T>,
    k: T,
    grid: &LemmaGrid,
) -> Result<LemmaReport<T>> {
    let s = ch.s;
    let abs_s = s.norm();
    let ib = Complex::new(T::zero(), s.im);
    let points = grid.exterior_points(ch.g.min_modulus());
    let times: Vec<T> = grid.times.iter().map(|&t| T::lit(t)).collect();
    let work: Vec<(T, Complex<T>)> = times.iter().flat_map(|&t| points.iter().map(move |&z| (t, z))).collect();
    let stats: Vec<PointStats<T>> = work
        .par_iter()
        .map(|&(t, zeta)| {
            let tau = t / abs_s;
            let p = P_exterior(ch, (s * tau).exp() * zeta, tau)?;
            let h = mobius_h(s, p, zeta, t)?;
            Ok(PointStats {
                disk: (p * s.re + ib).norm(),
                z: zeta,
                t,
                m1_excess: None,
                m2_residual: None,
                re_h: h.re,
                transition: transition_of(h),
            })
        })
        .collect::<Result<_>>()?;
    fold_stats(stats, k * abs_s, compute_l(s, k), None)
}
