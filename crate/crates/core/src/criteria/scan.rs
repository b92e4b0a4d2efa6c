//! Supremum scans over the disk, the exterior disk, or an annulus.
//!
//! For each fixed radius the scanned functionals are moduli of analytic
//! functions plus radial weights, so circles capture the structure and the
//! radii are clustered geometrically toward `|z| = 1`. The best cell is then
//! refined locally. Values are reduced in a fixed order so the result does not
//! depend on how rayon schedules the work.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{angles, arg_positive, is_finite, log_space, to_c64, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub radii: usize,
    pub angles: usize,
    /// Number of local refinement levels around the best grid cell.
    pub depth: usize,
    /// Factor by which the refinement cell shrinks per level.
    pub shrink: f64,
    /// Points per axis in each refinement level.
    pub refine_points: usize,
    /// Closest approach to the unit circle, `1 − r` inside and `ρ − 1` outside.
    pub boundary_gap: f64,
    /// Largest modulus sampled on the exterior disk.
    pub exterior_max: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            radii: 64,
            angles: 512,
            depth: 3,
            shrink: 8.0,
            refine_points: 17,
            boundary_gap: 1e-4,
            exterior_max: 1e3,
        }
    }
}

impl ScanConfig {
    /// Overrides radii, angles and refinement depth (the CLI `--grid` triple).
    pub fn with_grid(mut self, radii: usize, angles: usize, depth: usize) -> Self {
        self.radii = radii.max(2);
        self.angles = angles.max(1);
        self.depth = depth;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanDomain<T: Real = f64> {
    /// `|z| ≤ r_max (1 − gap)`.
    Interior { r_max: T },
    /// `rho_min·(1 + gap) ≤ |ζ| ≤ exterior_max`.
    Exterior { rho_min: T },
    /// Geometrically spaced radii covering `[r_min, r_max]` inclusive.
    Annulus { r_min: T, r_max: T },
}

impl<T: Real> ScanDomain<T> {
    pub(crate) fn radii(&self, cfg: &ScanConfig) -> Vec<T> {
        let gap = T::lit(cfg.boundary_gap);
        match *self {
            ScanDomain::Interior { r_max } => {
                let mut r: Vec<T> = log_space(gap, T::one(), cfg.radii)
                    .into_iter()
                    .map(|u| r_max * (T::one() - u))
                    .collect();
                r.reverse();
                r
            }
            ScanDomain::Exterior { rho_min } => {
                let hi = T::lit(cfg.exterior_max);
                let span = (hi - rho_min).max(gap * T::lit(2.0));
                log_space(gap * rho_min, span, cfg.radii).into_iter().map(|u| rho_min + u).collect()
            }
            ScanDomain::Annulus { r_min, r_max } => log_space(r_min, r_max, cfg.radii),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupReport<T: Real = f64> {
    pub sup_value: T,
    pub witness: Complex<T>,
    pub radial_steps: usize,
    pub angular_steps: usize,
    pub refinement_depth: usize,
    /// Analytic limit of the functional toward the edge of the domain, when
    /// known; it is also a candidate for the supremum.
    pub boundary_limit: Option<T>,
}

impl<T: Real> SupReport<T> {
    /// Folds an analytic limit value into the supremum.
    pub fn with_limit(mut self, limit: T) -> Self {
        self.boundary_limit = Some(limit);
        if limit > self.sup_value {
            self.sup_value = limit;
        }
        self
    }

    /// Whether the reported supremum comes from the analytic limit rather
    /// than a grid point.
    pub fn limit_dominates(&self, scanned: T) -> bool {
        self.boundary_limit.is_some_and(|l| l > scanned)
    }
}

#[derive(Clone, Copy)]
struct Best<T: Real> {
    value: T,
    r: T,
    theta: T,
}

impl<T: Real> Best<T> {
    /// Larger value wins; ties go to smaller |z|, then smaller argument.
    fn beats(&self, other: &Best<T>) -> bool {
        self.value > other.value
            || (self.value == other.value
                && (self.r < other.r || (self.r == other.r && self.theta < other.theta)))
    }

    fn point(&self) -> Complex<T> {
        Complex::from_polar(self.r, self.theta)
    }
}

fn eval_points<T, F>(lhs: &F, pts: &[(T, T)]) -> Result<Vec<Best<T>>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<T> + Sync,
{
    pts.par_iter()
        .map(|&(r, theta)| {
            let z = Complex::from_polar(r, theta);
            let value = lhs(z)?;
            if value.is_finite() && is_finite(z) {
                Ok(Best { value, r, theta })
            } else {
                Err(Error::NonFinite { point: to_c64(z) })
            }
        })
        .collect()
}

fn reduce<T: Real>(best: &mut Option<Best<T>>, cands: Vec<Best<T>>) {
    for c in cands {
        match best {
            Some(b) if !c.beats(b) => {}
            _ => *best = Some(c),
        }
    }
}

/// Maximizes `lhs` over `domain`. The functional may return any real value;
/// moduli yield non-negative suprema.
pub fn sup_scan<T, F>(lhs: F, domain: &ScanDomain<T>, cfg: &ScanConfig) -> Result<SupReport<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<T> + Sync,
{
    let radii = domain.radii(cfg);
    let thetas: Vec<T> = angles(cfg.angles);
    let grid: Vec<(T, T)> =
        radii.iter().flat_map(|&r| thetas.iter().map(move |&t| (r, t))).collect();
    let mut best = None;
    reduce(&mut best, eval_points(&lhs, &grid)?);
    let mut best = best.ok_or_else(|| Error::invalid("empty scan grid"))?;

    let (r_lo, r_hi) = (radii[0], *radii.last().unwrap());
    let idx = radii.iter().position(|&r| r == best.r).unwrap_or(0);
    let below = if idx > 0 { best.r - radii[idx - 1] } else { T::zero() };
    let above = if idx + 1 < radii.len() { radii[idx + 1] - best.r } else { T::zero() };
    let mut dr = below.max(above);
    let mut dtheta = T::TAU() / T::from_usize(cfg.angles.max(1)).unwrap();
    let m = cfg.refine_points.max(2);
    let shrink = T::lit(cfg.shrink);

    for _ in 0..cfg.depth {
        let mut pts = Vec::with_capacity(m * m);
        for i in 0..m {
            let u = T::lit(2.0 * i as f64 / (m - 1) as f64 - 1.0);
            let r = (best.r + dr * u).max(r_lo).min(r_hi);
            for j in 0..m {
                let v = T::lit(2.0 * j as f64 / (m - 1) as f64 - 1.0);
                let theta = arg_positive(Complex::from_polar(T::one(), best.theta + dtheta * v));
                pts.push((r, theta));
            }
        }
        let mut cand = Some(best);
        reduce(&mut cand, eval_points(&lhs, &pts)?);
        best = cand.unwrap();
        dr = dr / shrink;
        dtheta = dtheta / shrink;
    }

    Ok(SupReport {
        sup_value: best.value,
        witness: best.point(),
        radial_steps: radii.len(),
        angular_steps: thetas.len(),
        refinement_depth: cfg.depth,
        boundary_limit: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_radii_cluster_toward_boundary() {
        let cfg = ScanConfig::default();
        let r = ScanDomain::Interior { r_max: 1.0f64 }.radii(&cfg);
        assert_eq!(r.len(), 64);
        assert_eq!(r[0], 0.0);
        assert!((r[63] - (1.0 - 1e-4)).abs() < 1e-15);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn exterior_radii_span_requested_range() {
        let cfg = ScanConfig::default();
        let r = ScanDomain::Exterior { rho_min: 1.0f64 }.radii(&cfg);
        assert!((r[0] - 1.0001).abs() < 1e-12);
        assert!((r[63] - 1e3).abs() < 1e-9);
    }

    #[test]
    fn ties_prefer_smaller_modulus() {
        let cfg = ScanConfig::default().with_grid(8, 16, 2);
        let rep = sup_scan(|_z: Complex<f64>| Ok(1.0), &ScanDomain::Interior { r_max: 1.0 }, &cfg).unwrap();
        assert_eq!(rep.sup_value, 1.0);
        assert_eq!(rep.witness, Complex::new(0.0, 0.0));
    }

    #[test]
    fn refinement_finds_off_grid_peak() {
        let peak = Complex::new(0.31, 0.47);
        let f = |z: Complex<f64>| Ok(1.0 - (z - peak).norm());
        let coarse = sup_scan(f, &ScanDomain::Interior { r_max: 1.0 }, &ScanConfig::default().with_grid(16, 32, 0)).unwrap();
        let fine = sup_scan(f, &ScanDomain::Interior { r_max: 1.0 }, &ScanConfig::default().with_grid(16, 32, 3)).unwrap();
        assert!(fine.sup_value >= coarse.sup_value);
        assert!(1.0 - fine.sup_value < 1e-3);
    }

    #[test]
    fn errors_propagate() {
        let f = |z: Complex<f64>| if z.norm() > 0.5 { Err(Error::invalid("boom")) } else { Ok(0.0) };
        assert!(sup_scan(f, &ScanDomain::Interior { r_max: 1.0 }, &ScanConfig::default()).is_err());
        let g = |_z: Complex<f64>| Ok(f64::NAN);
        assert!(matches!(
            sup_scan(g, &ScanDomain::Interior { r_max: 1.0 }, &ScanConfig::default()),
            Err(Error::NonFinite { .. })
        ));
    }
}
