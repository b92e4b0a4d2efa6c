//! Left-hand sides, bounds and pass/fail checks of the extension criteria.
//!
//! | criterion      | functional                                                   | bound              |
//! |----------------|--------------------------------------------------------------|--------------------|
//! | `main`         | `|c|z|² + s − a(1−|z|²) H_s(z)|`                             | `M(s, c, k)`       |
//! | `ab`           | `|c|z|² + (1−|z|²) zf''/f'|`                                 | `k`                |
//! | `bazilevic`    | `|1 + zf''/f' + (α+iβ−1) zf'/f − (α²+β²)/α|`                 | `k` or `kσ/α`      |
//! | `exterior`     | `|ib + (1−|ζ|²) a {(1−s)(1−ζg'/g) − s ζg''/g'}|`             | `ak|s| − |b|(a−1)` |
//! | `cor-exterior` | `(|ζ|²−1) |1 + ζg''/g' − ζg'/g|`                             | `k`                |
//! | `cor-interior` | `(1−|z|²) |1 + zf''/f' − zf'/f|`                             | `k`                |
//!
//! Suprema are grid estimates (see [`scan`]); analytic limits toward the edge
//! of the domain are folded in where they are known exactly.

mod report;
pub mod scan;

pub use report::{complex_json, format_sig17, num, CriterionKind, CriterionReport};
pub use scan::{sup_scan, ScanConfig, ScanDomain, SupReport};

use num_complex::Complex;

use crate::analytic::{g_s_of, h_s_of, ExteriorFunction, InteriorFunction, DEFAULT_ZERO_FLOOR};
use crate::disk::{compute_l, k_tilde};
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

/// Signed margin at or above `-PASS_TOLERANCE` counts as a pass.
pub const PASS_TOLERANCE: f64 = 1e-9;

/// Default finite dilation factor `R` used for the exterior corollary.
pub const DEFAULT_COR_DILATION: f64 = 2.0;

/// Parameters `(s, c, k)` of the main criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainCriterionSpec<T: Real = f64> {
    pub s: Complex<T>,
    pub c: Complex<T>,
    pub k: T,
}

fn check_k<T: Real>(k: T) -> Result<()> {
    if k >= T::zero() && k < T::one() {
        Ok(())
    } else {
        Err(Error::invalid(format!("k must lie in [0, 1), got {k}")))
    }
}

impl<T: Real> MainCriterionSpec<T> {
    pub fn new(s: Complex<T>, c: Complex<T>, k: T) -> Result<Self> {
        if !is_finite(s) || !is_finite(c) {
            return Err(Error::invalid("s and c must be finite"));
        }
        if !(s.re > T::zero()) {
            return Err(Error::invalid(format!("Re s must be positive, got s = {s}")));
        }
        check_k(k)?;
        Ok(Self { s, c, k })
    }
}

/// Parameters `(s, k)` of the exterior criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExteriorCriterionSpec<T: Real = f64> {
    pub s: Complex<T>,
    pub k: T,
}

impl<T: Real> ExteriorCriterionSpec<T> {
    pub fn new(s: Complex<T>, k: T) -> Result<Self> {
        if !is_finite(s) {
            return Err(Error::invalid("s must be finite"));
        }
        if !(s.re >= T::one()) {
            return Err(Error::invalid(format!("Re s must be at least 1, got s = {s}")));
        }
        check_k(k)?;
        if s.im.abs() > k * s.norm() + T::lit(PASS_TOLERANCE) {
            return Err(Error::invalid(format!("|Im s| must not exceed k|s| (s = {s}, k = {k})")));
        }
        Ok(Self { s, k })
    }
}

/// Parameters `(α, β, k)` of the Bazilevič criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BazilevicSpec<T: Real = f64> {
    pub alpha: T,
    pub beta: T,
    pub k: T,
}

impl<T: Real> BazilevicSpec<T> {
    pub fn new(alpha: T, beta: T, k: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::invalid(format!("need alpha > 0 and finite beta, got ({alpha}, {beta})")));
        }
        check_k(k)?;
        Ok(Self { alpha, beta, k })
    }

    /// `(α² + β²)/α`.
    pub fn sigma(&self) -> T {
        (self.alpha * self.alpha + self.beta * self.beta) / self.alpha
    }

    pub fn bound(&self) -> T {
        if self.alpha < self.alpha * self.alpha + self.beta * self.beta {
            self.k
        } else {
            self.k * self.sigma()
        }
    }
}

/// `M = ak|s| + (a−1)|s+c|` for `0 < a ≤ 1`, `k|s|` for `a > 1`.
pub fn bound_m_main<T: Real>(spec: &MainCriterionSpec<T>) -> T {
    let a = spec.s.re;
    if a <= T::one() {
        a * spec.k * spec.s.norm() + (a - T::one()) * (spec.s + spec.c).norm()
    } else {
        spec.k * spec.s.norm()
    }
}

/// `|c + s| ≤ M`, the boundary limit of the main criterion.
pub fn necessary_inequality<T: Real>(spec: &MainCriterionSpec<T>) -> bool {
    (spec.c + spec.s).norm() <= bound_m_main(spec) + T::lit(PASS_TOLERANCE)
}

fn weight_inside<T: Real>(z: Complex<T>) -> T {
    T::one() - z.norm_sqr()
}

fn lhs_main_with<T: Real>(f: &InteriorFunction<T>, spec: &MainCriterionSpec<T>, z: Complex<T>, floor: T) -> Result<T> {
    let h = h_s_of(&f.log_jet_with(z, floor)?, spec.s);
    let r2 = z.norm_sqr();
    Ok((spec.c * r2 + spec.s - h * (spec.s.re * (T::one() - r2))).norm())
}

pub fn lhs_main<T: Real>(f: &InteriorFunction<T>, spec: &MainCriterionSpec<T>, z: Complex<T>) -> Result<T> {
    lhs_main_with(f, spec, z, T::lit(DEFAULT_ZERO_FLOOR))
}

fn lhs_ab_with<T: Real>(f: &InteriorFunction<T>, c: Complex<T>, z: Complex<T>, floor: T) -> Result<T> {
    let l = f.log_jet_with(z, floor)?;
    Ok((c * z.norm_sqr() + l.convexity_offset * weight_inside(z)).norm())
}

/// `|c|z|² + (1−|z|²) zf''/f'|`.
pub fn lhs_ab<T: Real>(f: &InteriorFunction<T>, c: Complex<T>, z: Complex<T>) -> Result<T> {
    lhs_ab_with(f, c, z, T::lit(DEFAULT_ZERO_FLOOR))
}

/// `1 + zf''/f' + (α+iβ−1) zf'/f`, the quantity whose real part is the
/// Sheil-Small hypothesis.
fn bazilevic_expr<T: Real>(f: &InteriorFunction<T>, alpha: T, beta: T, z: Complex<T>, floor: T) -> Result<Complex<T>> {
    let l = f.log_jet_with(z, floor)?;
    let w = Complex::new(alpha, beta);
    Ok(w + l.convexity_offset + (w - T::one()) * l.starlike_offset)
}

pub fn lhs_bazilevic<T: Real>(f: &InteriorFunction<T>, spec: &BazilevicSpec<T>, z: Complex<T>) -> Result<T> {
    let e = bazilevic_expr(f, spec.alpha, spec.beta, z, T::lit(DEFAULT_ZERO_FLOOR))?;
    Ok((e - spec.sigma()).norm())
}

fn lhs_exterior_with<T: Real>(g: &ExteriorFunction<T>, s: Complex<T>, zeta: Complex<T>, floor: T) -> Result<T> {
    // the braced term equals -G_s
    let gs = g_s_of(&g.log_jet_with(zeta, floor)?, s);
    Ok((Complex::new(T::zero(), s.im) + gs * (s.re * (zeta.norm_sqr() - T::one()))).norm())
}

/// `|ib + (1−|ζ|²) a {(1−s)(1−ζg'/g) − s ζg''/g'}|`.
pub fn lhs_exterior<T: Real>(g: &ExteriorFunction<T>, s: Complex<T>, zeta: Complex<T>) -> Result<T> {
    lhs_exterior_with(g, s, zeta, T::lit(DEFAULT_ZERO_FLOOR))
}

fn lhs_cor_exterior_with<T: Real>(g: &ExteriorFunction<T>, zeta: Complex<T>, floor: T) -> Result<T> {
    let l = g.log_jet_with(zeta, floor)?;
    Ok((zeta.norm_sqr() - T::one()) * (l.convexity_offset - l.starlike_offset).norm())
}

/// `(|ζ|²−1) |1 + ζg''/g' − ζg'/g|`.
pub fn lhs_cor_exterior<T: Real>(g: &ExteriorFunction<T>, zeta: Complex<T>) -> Result<T> {
    lhs_cor_exterior_with(g, zeta, T::lit(DEFAULT_ZERO_FLOOR))
}

fn cor_interior_expr<T: Real>(f: &InteriorFunction<T>, z: Complex<T>, floor: T) -> Result<Complex<T>> {
    let l = f.log_jet_with(z, floor)?;
    Ok(l.convexity_offset - l.starlike_offset)
}

/// `(1−|z|²) |1 + zf''/f' − zf'/f|`.
pub fn lhs_cor_interior<T: Real>(f: &InteriorFunction<T>, z: Complex<T>) -> Result<T> {
    Ok(weight_inside(z) * cor_interior_expr(f, z, T::lit(DEFAULT_ZERO_FLOOR))?.norm())
}

/// Scan and evaluation settings shared by all criterion checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checker<T: Real = f64> {
    pub scan: ScanConfig,
    pub zero_floor: T,
    /// Finite dilation `R > 1` for the exterior corollary's constant `A`.
    pub cor_dilation: T,
}

impl<T: Real> Default for Checker<T> {
    fn default() -> Self {
        Self {
            scan: ScanConfig::default(),
            zero_floor: T::lit(DEFAULT_ZERO_FLOOR),
            cor_dilation: T::lit(DEFAULT_COR_DILATION),
        }
    }
}

impl<T: Real> Checker<T> {
    pub fn with_scan(scan: ScanConfig) -> Self {
        Self { scan, ..Self::default() }
    }

    fn interior_domain(&self, f: &InteriorFunction<T>, notes: &mut Vec<String>) -> ScanDomain<T> {
        let rho = f.reliable_radius();
        if rho < T::one() {
            notes.push(format!("scan restricted to |z| <= {rho} (reliable radius of the truncated series)"));
        }
        ScanDomain::Interior { r_max: rho }
    }

    fn exterior_domain(&self, g: &ExteriorFunction<T>, notes: &mut Vec<String>) -> ScanDomain<T> {
        let m = g.min_modulus();
        if m > T::one() {
            notes.push(format!("scan restricted to |zeta| >= {m} (reliable modulus of the Laurent truncation)"));
        }
        ScanDomain::Exterior { rho_min: m }
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        &self,
        criterion: CriterionKind,
        m_bound: T,
        sup: SupReport<T>,
        scanned: T,
        necessary_ok: bool,
        extension_constant: T,
        auxiliary: Vec<(String, T)>,
        mut notes: Vec<String>,
    ) -> CriterionReport<T> {
        let margin = m_bound - sup.sup_value;
        let passed = necessary_ok && margin >= -T::lit(PASS_TOLERANCE);
        if sup.limit_dominates(scanned) {
            notes.push(format!(
                "supremum approached only in the limit toward the domain edge (grid maximum {scanned})"
            ));
        }
        notes.push(format!(
            "grid estimate: {} radii x {} angles, {} refinement levels; not a certified bound",
            sup.radial_steps, sup.angular_steps, sup.refinement_depth
        ));
        CriterionReport {
            criterion,
            passed,
            feasible: necessary_ok,
            m_bound,
            sup,
            margin,
            necessary_ok,
            extension_constant,
            auxiliary,
            notes,
        }
    }

    /// Main criterion; the extension constant is `l = compute_l(s, k)`.
    pub fn main(&self, f: &InteriorFunction<T>, spec: &MainCriterionSpec<T>) -> Result<CriterionReport<T>> {
        let mut notes = Vec::new();
        let m = bound_m_main(spec);
        let necessary_ok = necessary_inequality(spec);
        let limit = (spec.c + spec.s).norm();
        if m <= T::zero() {
            notes.push(format!("degenerate bound M = {m} <= 0"));
        }
        if !necessary_ok {
            notes.push(format!("infeasible: |c+s| = {limit} exceeds M = {m}, so no function satisfies the criterion"));
        }
        if spec.s.re == T::one() {
            notes.push("a = 1: the lemma-level disk bound holds only non-strictly".into());
        }
        let domain = self.interior_domain(f, &mut notes);
        let floor = self.zero_floor;
        let scan = sup_scan(|z| lhs_main_with(f, spec, z, floor), &domain, &self.scan)?;
        let scanned = scan.sup_value;
        let sup = if f.reliable_radius() == T::one() { scan.with_limit(limit) } else { scan };
        Ok(self.finish(CriterionKind::Main, m, sup, scanned, necessary_ok, compute_l(spec.s, spec.k), vec![], notes))
    }

    /// Ahlfors–Becker criterion with constant `c` and bound `k`.
    pub fn ab(&self, f: &InteriorFunction<T>, c: Complex<T>, k: T) -> Result<CriterionReport<T>> {
        check_k(k)?;
        let mut notes = Vec::new();
        let necessary_ok = c.norm() <= k + T::lit(PASS_TOLERANCE);
        if !necessary_ok {
            notes.push(format!("infeasible: boundary limit |c| = {} exceeds k = {k}", c.norm()));
        }
        let domain = self.interior_domain(f, &mut notes);
        let floor = self.zero_floor;
        let scan = sup_scan(|z| lhs_ab_with(f, c, z, floor), &domain, &self.scan)?;
        let scanned = scan.sup_value;
        let sup = if f.reliable_radius() == T::one() { scan.with_limit(c.norm()) } else { scan };
        Ok(self.finish(CriterionKind::Ab, k, sup, scanned, necessary_ok, k, vec![], notes))
    }

    /// Whether `Re{1 + zf''/f' + (α+iβ−1) zf'/f} > 0` at every scanned point.
    pub fn sheil_small(&self, f: &InteriorFunction<T>, alpha: T, beta: T) -> Result<bool> {
        if !(alpha > T::zero()) {
            return Err(Error::invalid(format!("alpha must be positive, got {alpha}")));
        }
        let mut notes = Vec::new();
        let domain = self.interior_domain(f, &mut notes);
        let floor = self.zero_floor;
        let worst = sup_scan(|z| Ok(-bazilevic_expr(f, alpha, beta, z, floor)?.re), &domain, &self.scan)?;
        Ok(worst.sup_value < T::zero())
    }

    /// Bazilevič criterion; the extension constant is `k̃(α, β, k)`.
    pub fn bazilevic(&self, f: &InteriorFunction<T>, spec: &BazilevicSpec<T>) -> Result<CriterionReport<T>> {
        let mut notes = Vec::new();
        let m = spec.bound();
        let domain = self.interior_domain(f, &mut notes);
        let floor = self.zero_floor;
        let sigma = spec.sigma();
        let sup = sup_scan(
            |z| Ok((bazilevic_expr(f, spec.alpha, spec.beta, z, floor)? - sigma).norm()),
            &domain,
            &self.scan,
        )?;
        let sheil = self.sheil_small(f, spec.alpha, spec.beta)?;
        notes.push(format!(
            "Sheil-Small hypothesis Re{{1+zf''/f'+(alpha+i beta-1)zf'/f}} > 0 {} on the grid",
            if sheil { "holds" } else { "fails" }
        ));
        let scanned = sup.sup_value;
        let report = self.finish(CriterionKind::Bazilevic, m, sup, scanned, true, k_tilde(spec.alpha, spec.beta, spec.k), vec![], notes);
        Ok(report)
    }

    /// Exterior criterion; the extension constant is `l = compute_l(s, k)`.
    pub fn exterior(&self, g: &ExteriorFunction<T>, spec: &ExteriorCriterionSpec<T>) -> Result<CriterionReport<T>> {
        let mut notes = Vec::new();
        let (a, b) = (spec.s.re, spec.s.im);
        let m = a * spec.k * spec.s.norm() - b.abs() * (a - T::one());
        let necessary_ok = b.abs() <= m + T::lit(PASS_TOLERANCE);
        let domain = self.exterior_domain(g, &mut notes);
        let floor = self.zero_floor;
        let scan = sup_scan(|z| lhs_exterior_with(g, spec.s, z, floor), &domain, &self.scan)?;
        let scanned = scan.sup_value;
        // (|ζ|²−1) G_s(ζ) → 2d₁(2s−1) e^{−2iθ} as |ζ| → ∞
        let c_inf = g.first_coefficient() * (spec.s * T::lit(2.0) - T::one()) * T::lit(2.0);
        let sup = scan.with_limit(b.abs() + a * c_inf.norm());
        Ok(self.finish(CriterionKind::Exterior, m, sup, scanned, necessary_ok, compute_l(spec.s, spec.k), vec![], notes))
    }

    /// Exterior corollary. Also records `A = sup (|ζ|²−1)|1 − ζg_R'/g_R|` for
    /// `g_R(ζ) = g(Rζ)/R` and the exponent `s = max(1, R²A / (k(R²−1)))` that
    /// feeds the exterior criterion for `g_R`.
    pub fn cor_exterior(&self, g: &ExteriorFunction<T>, k: T) -> Result<CriterionReport<T>> {
        check_k(k)?;
        let mut notes = Vec::new();
        let domain = self.exterior_domain(g, &mut notes);
        let floor = self.zero_floor;
        let scan = sup_scan(|z| lhs_cor_exterior_with(g, z, floor), &domain, &self.scan)?;
        let scanned = scan.sup_value;
        let sup = scan.with_limit(g.first_coefficient().norm() * T::lit(4.0));

        let (big_r, a_const, s_param) = self.cor_exterior_parameters(g, k)?;
        notes.push(format!(
            "finite-R approximation: R = {big_r}, A = {a_const}, s = {s_param} (the extension of g_R approximates the limiting one)"
        ));
        let aux = vec![("R".to_string(), big_r), ("A".to_string(), a_const), ("s".to_string(), s_param)];
        Ok(self.finish(CriterionKind::CorExterior, k, sup, scanned, true, k, aux, notes))
    }

    /// `(R, A, s)` for the constructive path of the exterior corollary.
    pub fn cor_exterior_parameters(&self, g: &ExteriorFunction<T>, k: T) -> Result<(T, T, T)> {
        let big_r = self.cor_dilation;
        let gr = g.dilate(big_r)?;
        let floor = self.zero_floor;
        let domain = ScanDomain::Exterior { rho_min: gr.min_modulus() };
        let a_scan = sup_scan(
            |z| {
                let l = gr.log_jet_with(z, floor)?;
                Ok((z.norm_sqr() - T::one()) * l.starlike_offset.norm())
            },
            &domain,
            &self.scan,
        )?
        // (|ζ|²−1)(ζg'/g − 1) → −2d₁ e^{−2iθ}
        .with_limit(gr.first_coefficient().norm() * T::lit(2.0));
        let a_const = a_scan.sup_value;
        let r2 = big_r * big_r;
        let s = if k > T::zero() { (r2 * a_const / (k * (r2 - T::one()))).max(T::one()) } else { T::infinity() };
        Ok((big_r, a_const, s))
    }

    /// Interior corollary; requires `f''(0) = 0`.
    pub fn cor_interior(&self, f: &InteriorFunction<T>, k: T) -> Result<CriterionReport<T>> {
        check_k(k)?;
        let a2 = f.second_coefficient();
        if a2.norm() != T::zero() {
            return Err(Error::invalid(format!("the interior corollary requires f''(0) = 0, got a2 = {a2}")));
        }
        let mut notes = Vec::new();
        let domain = self.interior_domain(f, &mut notes);
        let floor = self.zero_floor;
        let sup = sup_scan(|z| Ok(weight_inside(z) * cor_interior_expr(f, z, floor)?.norm()), &domain, &self.scan)?;
        // the expression has a double zero at the origin; divide it out
        let strengthened = sup_scan(
            |z| {
                if z.norm() == T::zero() {
                    Ok(f.third_coefficient().norm() * T::lit(4.0))
                } else {
                    Ok(weight_inside(z) * cor_interior_expr(f, z, floor)?.norm() / z.norm_sqr())
                }
            },
            &domain,
            &self.scan,
        )?;
        notes.push(format!(
            "strengthened quantity (1-|z|^2)|1+zf''/f'-zf'/f|/|z|^2 has grid supremum {} ({} k = {k})",
            strengthened.sup_value,
            if strengthened.sup_value <= k + T::lit(PASS_TOLERANCE) { "within" } else { "exceeds" }
        ));
        let scanned = sup.sup_value;
        let aux = vec![("strengthened_sup".to_string(), strengthened.sup_value)];
        Ok(self.finish(CriterionKind::CorInterior, k, sup, scanned, true, k, aux, notes))
    }
}

pub fn check_main<T: Real>(f: &InteriorFunction<T>, spec: &MainCriterionSpec<T>) -> Result<CriterionReport<T>> {
    Checker::default().main(f, spec)
}

pub fn check_ab<T: Real>(f: &InteriorFunction<T>, c: Complex<T>, k: T) -> Result<CriterionReport<T>> {
    Checker::default().ab(f, c, k)
}

pub fn check_bazilevic<T: Real>(f: &InteriorFunction<T>, spec: &BazilevicSpec<T>) -> Result<CriterionReport<T>> {
    Checker::default().bazilevic(f, spec)
}

pub fn sheil_small_check<T: Real>(f: &InteriorFunction<T>, alpha: T, beta: T) -> Result<bool> {
    Checker::default().sheil_small(f, alpha, beta)
}

pub fn check_exterior<T: Real>(g: &ExteriorFunction<T>, spec: &ExteriorCriterionSpec<T>) -> Result<CriterionReport<T>> {
    Checker::default().exterior(g, spec)
}

pub fn check_cor_exterior<T: Real>(g: &ExteriorFunction<T>, k: T) -> Result<CriterionReport<T>> {
    Checker::default().cor_exterior(g, k)
}

pub fn check_cor_interior<T: Real>(f: &InteriorFunction<T>, k: T) -> Result<CriterionReport<T>> {
    Checker::default().cor_interior(f, k)
}
