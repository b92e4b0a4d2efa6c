//! Piecewise extensions of the chain start to the whole sphere and
//! finite-difference checks of their Beltrami coefficients.
//!
//! For an interior chain `F` (in the time variable `t|s|`) the extension is
//! `f̂(w) = f(w)` on `|w| < 1` and `F(w/|w|, ln|w|)` on `|w| ≥ 1`. For an
//! exterior chain the roles are swapped through `z = 1/ζ`: `ĝ(w) = g(w)` on
//! `|w| > 1` and `ĝ(w) = 1/F(e^{iθ}, −ln|w|)` on `0 < |w| ≤ 1`, with
//! `ĝ(0) = 0`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::analytic::{ExteriorFunction, InteriorFunction};
use crate::criteria::{Checker, CriterionReport, ExteriorCriterionSpec, MainCriterionSpec};
use crate::disk::compute_l;
use crate::error::{Error, Result};
use crate::loewner::{chain_exterior, reparam_chain, ExteriorChain, InteriorChain};
use crate::scalar::{angles, log_space, to_c64, Real};

/// Default finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// `|f_z|` below this floor marks a degenerate sample.
pub const FZ_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum ExtensionKind<T: Real = f64> {
    Interior(InteriorChain<T>),
    Exterior(ExteriorChain<T>),
}

/// An extension together with the dilatation constant it is expected to
/// satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionMap<T: Real = f64> {
    pub kind: ExtensionKind<T>,
    pub l_claimed: T,
    /// The criterion report the extension was built from, if any.
    pub report: Option<CriterionReport<T>>,
    pub notes: Vec<String>,
}

fn require_pass<T: Real>(report: &CriterionReport<T>) -> Result<()> {
    if report.passed {
        Ok(())
    } else {
        Err(Error::CriterionFailed(format!(
            "{} criterion fails (sup {} against bound {}, margin {})",
            report.criterion, report.sup.sup_value, report.m_bound, report.margin
        )))
    }
}

impl<T: Real> ExtensionMap<T> {
    /// Extension from an interior chain, with no criterion check.
    pub fn interior(chain: InteriorChain<T>, l_claimed: T) -> Self {
        Self { kind: ExtensionKind::Interior(chain), l_claimed, report: None, notes: vec![] }
    }

    /// Extension from an exterior chain, with no criterion check.
    pub fn exterior(chain: ExteriorChain<T>, l_claimed: T) -> Self {
        Self { kind: ExtensionKind::Exterior(chain), l_claimed, report: None, notes: vec![] }
    }

    /// Checks the main criterion and builds the extension with `l = compute_l(s, k)`.
    pub fn from_main(f: &InteriorFunction<T>, spec: &MainCriterionSpec<T>, checker: &Checker<T>) -> Result<Self> {
        let report = checker.main(f, spec)?;
        require_pass(&report)?;
        let chain = InteriorChain::new(f.clone(), spec.s, spec.c)?;
        Ok(Self { report: Some(report), ..Self::interior(chain, compute_l(spec.s, spec.k)) })
    }

    pub fn from_exterior(
        g: &ExteriorFunction<T>,
        spec: &ExteriorCriterionSpec<T>,
        checker: &Checker<T>,
    ) -> Result<Self> {
        let report = checker.exterior(g, spec)?;
        require_pass(&report)?;
        let chain = ExteriorChain::new(g.clone(), spec.s)?;
        Ok(Self { report: Some(report), ..Self::exterior(chain, compute_l(spec.s, spec.k)) })
    }

    /// Extension of `g_R(ζ) = g(Rζ)/R` with the exponent chosen by the
    /// exterior corollary; it approximates the limiting extension as `R`
    /// grows. The claimed constant is `k`.
    pub fn from_cor_exterior(g: &ExteriorFunction<T>, k: T, checker: &Checker<T>) -> Result<Self> {
        let report = checker.cor_exterior(g, k)?;
        require_pass(&report)?;
        let (big_r, a_const, s) = checker.cor_exterior_parameters(g, k)?;
        let gr = g.dilate(big_r)?;
        let chain = ExteriorChain::new(gr, Complex::new(s, T::zero()))?;
        let notes = vec![
            format!("extends g_R for R = {big_r} with s = {s} (A = {a_const}); approximation to the R -> infinity extension"),
            "the image of 0 is 0".to_string(),
        ];
        Ok(Self { report: Some(report), notes, ..Self::exterior(chain, k) })
    }

    pub fn is_exterior(&self) -> bool {
        matches!(self.kind, ExtensionKind::Exterior(_))
    }

    pub fn eval(&self, w: Complex<T>) -> Result<Complex<T>> {
        match &self.kind {
            ExtensionKind::Interior(ch) => becker_extend(ch, w),
            ExtensionKind::Exterior(ch) => becker_extend_exterior(ch, w),
        }
    }

    /// Annulus on which the dilatation is sampled by default.
    pub fn default_annulus(&self) -> AnnulusGrid {
        if self.is_exterior() {
            AnnulusGrid::exterior_default()
        } else {
            AnnulusGrid::interior_default()
        }
    }

    /// `max |μ|` on the default annulus against `l_claimed + tol`.
    pub fn verify_dilatation(&self, h: T, tol: T) -> Result<DilatationSummary<T>> {
        let field = dilatation_field(&|w| self.eval(w), &self.default_annulus(), h)?;
        Ok(DilatationSummary {
            max_abs_mu: field.max_abs_mu,
            argmax: field.argmax,
            l_claimed: self.l_claimed,
            fd_step: h,
            pass: field.max_abs_mu <= self.l_claimed + tol,
        })
    }
}

/// `f(w)` for `|w| < 1`, the time-`ln|w|` chain at `w/|w|` otherwise.
pub fn becker_extend<T: Real>(ch: &InteriorChain<T>, w: Complex<T>) -> Result<Complex<T>> {
    let r = w.norm();
    if r < T::one() {
        return Ok(ch.f.jet(w)?.f);
    }
    let t = r.ln();
    if t <= T::zero() {
        // on the seam the chain at time 0 is f itself
        if ch.f.reliable_radius() < T::one() {
            return Err(Error::Domain { point: to_c64(w), reason: "seam lies beyond the reliable radius".into() });
        }
        return Ok(ch.f.jet_unchecked(w)?.f);
    }
    reparam_chain(ch, w / r, t)
}

/// `g(w)` for `|w| > 1`, `1/F(e^{iθ}, −ln|w|)` for `0 < |w| ≤ 1`, and 0 at 0.
pub fn becker_extend_exterior<T: Real>(ch: &ExteriorChain<T>, w: Complex<T>) -> Result<Complex<T>> {
    let r = w.norm();
    if r > T::one() {
        return Ok(ch.g.jet(w)?.f);
    }
    if r == T::zero() {
        return Ok(w);
    }
    let t = (-r.ln()).max(T::zero()) / ch.s.norm();
    let v = chain_exterior(ch, w / r, t)?;
    if v.norm() == T::zero() || !v.norm().is_finite() {
        return Err(Error::NonFinite { point: to_c64(w) });
    }
    Ok(v.inv())
}

/// Central-difference Wirtinger derivatives `(f_z, f_z̄)` on the stencil
/// `w ± h`, `w ± ih`.
pub fn wirtinger<T, F>(map: &F, w: Complex<T>, h: T) -> Result<(Complex<T>, Complex<T>)>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + ?Sized,
{
    if !(h > T::zero()) {
        return Err(Error::invalid(format!("finite-difference step must be positive, got {h}")));
    }
    let i = Complex::new(T::zero(), T::one());
    let dx = map(w + h)? - map(w - h)?;
    let dy = map(w + i * h)? - map(w - i * h)?;
    let four_h = h * T::lit(4.0);
    Ok(((dx - i * dy) / four_h, (dx + i * dy) / four_h))
}

/// Polar sampling grid `r_min ≤ |w| ≤ r_max`, radii geometrically spaced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub radii: usize,
    pub angles: usize,
}

impl AnnulusGrid {
    pub fn interior_default() -> Self {
        Self { r_min: 1.01, r_max: 10.0, radii: 32, angles: 128 }
    }

    pub fn exterior_default() -> Self {
        Self { r_min: 0.1, r_max: 0.99, radii: 32, angles: 128 }
    }

    /// Sample points ordered by radius, then by angle.
    pub fn points<T: Real>(&self) -> Vec<Complex<T>> {
        let radii: Vec<T> = log_space(T::lit(self.r_min), T::lit(self.r_max), self.radii);
        let thetas: Vec<T> = angles(self.angles);
        radii.iter().flat_map(|&r| thetas.iter().map(move |&th| Complex::from_polar(r, th))).collect()
    }
}

/// Sampled Beltrami coefficient `μ = f_z̄ / f_z`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeltramiField<T: Real = f64> {
    pub points: Vec<(Complex<T>, Complex<T>)>,
    pub fd_step: T,
    pub max_abs_mu: T,
    /// First sample (by radius, then angle) attaining the maximum.
    pub argmax: Complex<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilatationSummary<T: Real = f64> {
    pub max_abs_mu: T,
    pub argmax: Complex<T>,
    pub l_claimed: T,
    pub fd_step: T,
    pub pass: bool,
}

fn mu_at<T, F>(map: &F, w: Complex<T>, h: T) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync + ?Sized,
{
    let (fz, fzbar) = wirtinger(map, w, h)?;
    if fz.norm() < T::lit(FZ_FLOOR) {
        return Err(Error::ZeroOfDerivative { point: to_c64(w), value: fz.norm().as_f64() });
    }
    Ok(fzbar / fz)
}

pub fn dilatation_field<T, F>(map: &F, grid: &AnnulusGrid, h: T) -> Result<BeltramiField<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync + ?Sized,
{
    let pts: Vec<Complex<T>> = grid.points();
    let points: Vec<(Complex<T>, Complex<T>)> =
        pts.par_iter().map(|&w| Ok((w, mu_at(map, w, h)?))).collect::<Result<_>>()?;
    let (mut max_abs_mu, mut argmax) = (T::zero(), points.first().map_or(Complex::new(T::zero(), T::zero()), |p| p.0));
    for &(w, mu) in &points {
        if mu.norm() > max_abs_mu {
            max_abs_mu = mu.norm();
            argmax = w;
        }
    }
    Ok(BeltramiField { points, fd_step: h, max_abs_mu, argmax })
}

/// `max ||μ_h| − |μ_{h/2}||` over the grid, a Richardson-style check that
/// the step is resolved.
pub fn richardson_delta<T, F>(map: &F, grid: &AnnulusGrid, h: T) -> Result<T>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync + ?Sized,
{
    let a = dilatation_field(map, grid, h)?;
    let b = dilatation_field(map, grid, h / T::lit(2.0))?;
    Ok(a.points.iter().zip(&b.points).fold(T::zero(), |m, (p, q)| m.max((p.1.norm() - q.1.norm()).abs())))
}

/// `max_θ |F((1+gap)e^{iθ}) − F((1−gap)e^{iθ})| / (1 + |F((1+gap)e^{iθ})|)`.
pub fn seam_jump<T, F>(map: &F, angles_n: usize, gap: T) -> Result<T>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync + ?Sized,
{
    let thetas: Vec<T> = angles(angles_n);
    let jumps: Vec<T> = thetas
        .par_iter()
        .map(|&th| {
            let outer = map(Complex::from_polar(T::one() + gap, th))?;
            let inner = map(Complex::from_polar(T::one() - gap, th))?;
            Ok((outer - inner).norm() / (T::one() + outer.norm()))
        })
        .collect::<Result<_>>()?;
    Ok(jumps.into_iter().fold(T::zero(), T::max))
}

/// Square lattice of about `target` points in `|w| ≤ radius`, symmetric
/// under `w ↦ −w`.
pub fn lattice<T: Real>(radius: f64, target: usize) -> Vec<Complex<T>> {
    let spacing = (std::f64::consts::PI * radius * radius / target.max(1) as f64).sqrt();
    let n = (radius / spacing).floor() as i64;
    let mut out = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let (x, y) = (i as f64 * spacing, j as f64 * spacing);
            if x.hypot(y) <= radius {
                out.push(Complex::new(T::lit(x), T::lit(y)));
            }
        }
    }
    out
}

/// Relative collision floor of [`injectivity_spotcheck`].
pub const COLLISION_FACTOR: f64 = 1e-3;

/// Whether no two lattice images in `|w| ≤ 3` come closer than
/// [`COLLISION_FACTOR`] times the median nearest-neighbour image distance.
pub fn injectivity_spotcheck<T, F>(map: &F, lattice_points: &[Complex<T>]) -> Result<bool>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync + ?Sized,
{
    let images: Vec<Complex<T>> = lattice_points.par_iter().map(|&w| map(w)).collect::<Result<_>>()?;
    if images.len() < 2 {
        return Ok(true);
    }
    let mut nearest: Vec<f64> = (0..images.len())
        .into_par_iter()
        .map(|i| {
            images
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| (*v - images[i]).norm().as_f64())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let min = nearest.iter().copied().fold(f64::INFINITY, f64::min);
    nearest.sort_by(f64::total_cmp);
    let median = nearest[nearest.len() / 2];
    Ok(min > COLLISION_FACTOR * median)
}
