use proptest::prelude::*;
use qcx::criteria::{lhs_ab, lhs_main, necessary_inequality};
use qcx::extension::{becker_extend, wirtinger};
use qcx::loewner::{chain_interior, h_interior};
use qcx::{
    check_main, compute_l, cplx, k_tilde, minimal_l, parse_function_spec, Checker, Complex,
    InteriorChain, InteriorFunction, InteriorKind, MainCriterionSpec, ParsedFunction, ScanConfig,
    ScanDomain,
};

type C = Complex<f64>;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn small_checker() -> Checker<f64> {
    Checker::with_scan(ScanConfig::default().with_grid(24, 96, 2))
}

fn disk_point(max_r: f64) -> impl Strategy<Value = C> {
    (0.0..max_r, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C::from_polar(r, t))
}

fn small_coeffs(max_len: usize, size: f64) -> impl Strategy<Value = Vec<C>> {
    prop::collection::vec((-size..size, -size..size).prop_map(|(a, b)| C::new(a, b)), 1..=max_len)
}

fn poly(coeffs: Vec<C>) -> InteriorFunction<f64> {
    InteriorFunction::polynomial(coeffs).unwrap()
}

fn s_strategy() -> impl Strategy<Value = C> {
    (0.1..4.0f64, -3.0..3.0f64).prop_map(|(a, b)| C::new(a, b))
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn l_dominates_k_and_stays_below_one(s in s_strategy(), k in 0.0..0.99f64) {
        let l = compute_l(s, k);
        prop_assert!(l >= k - 1e-15);
        prop_assert!(l < 1.0);
        if s.im.abs() > 1e-3 && k < 0.9 {
            prop_assert!(l > k);
        }
    }

    #[test]
    fn l_equals_k_for_real_s(a in 0.1..4.0f64, k in 0.0..0.99f64) {
        prop_assert!((compute_l(C::new(a, 0.0), k) - k).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_bisection(s in s_strategy(), k in 0.0..0.95f64) {
        let l = compute_l(s, k);
        let m = minimal_l(s, k).unwrap();
        prop_assert!((l - m).abs() < 1e-9, "closed {l} bisection {m}");
    }

    #[test]
    fn l_increases_with_k(s in s_strategy(), k in 0.0..0.9f64, dk in 1e-3..0.05f64) {
        prop_assert!(compute_l(s, k + dk) > compute_l(s, k));
    }

    #[test]
    fn k_tilde_is_l_of_reciprocal(alpha in 0.05..3.0f64, beta in -3.0..3.0f64, k in 0.0..0.95f64) {
        let n = alpha * alpha + beta * beta;
        let s = C::new(alpha / n, -beta / n);
        prop_assert!((k_tilde(alpha, beta, k) - compute_l(s, k)).abs() < 1e-12);
    }

    #[test]
    fn single_and_double_precision_agree(s in s_strategy(), k in 0.0..0.9f64) {
        let l64 = compute_l(s, k);
        let l32 = compute_l(Complex::new(s.re as f32, s.im as f32), k as f32);
        prop_assert!((l64 - l32 as f64).abs() < 1e-4);
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn normalization_near_origin(coeffs in small_coeffs(6, 1.0), z in disk_point(1e-8)) {
        let f = poly(coeffs.clone());
        let bound: f64 = coeffs.iter().map(|c| c.norm()).sum::<f64>() + 1.0;
        let v = f.jet(z).unwrap().f;
        prop_assert!((v - z).norm() <= 2.0 * z.norm_sqr() * bound);
    }

    #[test]
    fn derivatives_match_finite_differences(coeffs in small_coeffs(5, 0.3), z in disk_point(0.9)) {
        let f = poly(coeffs);
        let h = 1e-5;
        let jet = f.jet(z).unwrap();
        let at = |w: C| f.jet(w).unwrap();
        let d1 = (at(z + h).f - at(z - h).f) / (2.0 * h);
        let d2 = (at(z + h).f1 - at(z - h).f1) / (2.0 * h);
        prop_assert!((d1 - jet.f1).norm() < 1e-6 * (1.0 + jet.f1.norm()));
        prop_assert!((d2 - jet.f2).norm() < 1e-6 * (1.0 + jet.f2.norm()));
    }

    #[test]
    fn log_derivatives_tend_to_one(coeffs in small_coeffs(5, 1.0), theta in 0.0..6.3f64) {
        let f = poly(coeffs);
        let (a, b) = f.log_derivatives(C::from_polar(1e-6, theta)).unwrap();
        prop_assert!((a - 1.0).norm() < 1e-5);
        prop_assert!((b - 1.0).norm() < 1e-5);
    }

    #[test]
    fn inversion_transforms_log_derivatives(
        tail in small_coeffs(3, 0.1),
        zeta in (1.2..3.0f64, 0.0..6.3f64).prop_map(|(r, t)| C::from_polar(r, t)),
    ) {
        let mut coeffs = vec![C::new(0.0, 0.0)];
        coeffs.extend(tail);
        let f = poly(coeffs);
        let g = f.invert_to_exterior_with_order(256).unwrap();
        let z = zeta.inv();
        let (fa, fb) = f.log_derivatives(z).unwrap();
        let (ga, gb) = g.log_derivatives(zeta).unwrap();
        prop_assert!((fa - ga).norm() < 1e-10, "{fa} vs {ga}");
        prop_assert!((fb - (-gb + 2.0 * ga)).norm() < 1e-10, "{fb} vs {}", -gb + 2.0 * ga);
    }

    #[test]
    fn dilations_compose(coeffs in small_coeffs(6, 1.0), r1 in 0.1..1.0f64, r2 in 0.1..1.0f64) {
        let f = poly(coeffs);
        let twice = f.dilate(r1).unwrap().dilate(r2).unwrap();
        let once = f.dilate(r1 * r2).unwrap();
        match (twice.kind(), once.kind()) {
            (InteriorKind::Polynomial(a), InteriorKind::Polynomial(b)) => {
                prop_assert_eq!(a.len(), b.len());
                for (x, y) in a.iter().zip(b) {
                    prop_assert!((x - y).norm() < 1e-12);
                }
            }
            other => prop_assert!(false, "unexpected kinds {other:?}"),
        }
    }

    #[test]
    fn main_with_unit_s_is_ab(coeffs in small_coeffs(4, 0.3), c in (-2.0..0.5f64, -1.0..1.0f64), z in disk_point(0.95)) {
        let c = C::new(c.0, c.1);
        prop_assume!(c.norm() > 1e-3);
        let f = poly(coeffs);
        let spec = MainCriterionSpec::new(C::new(1.0, 0.0), c, 0.5).unwrap();
        let a = lhs_main(&f, &spec, z).unwrap();
        let b = lhs_ab(&f, -1.0 - c, z).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn zero_c_is_never_feasible(s in s_strategy(), k in 0.0..0.999f64) {
        let spec = MainCriterionSpec::new(s, C::new(0.0, 0.0), k).unwrap();
        prop_assert!(!necessary_inequality(&spec));
    }

    #[test]
    fn lhs_main_approaches_boundary_limit(coeffs in small_coeffs(3, 0.03), s in s_strategy(), theta in 0.0..6.3f64) {
        let f = poly(coeffs);
        let c = C::new(-1.0, 0.3);
        let spec = MainCriterionSpec::new(s, c, 0.5).unwrap();
        let v = lhs_main(&f, &spec, C::from_polar(1.0 - 1e-4, theta)).unwrap();
        prop_assert!((v - (c + s).norm()).abs() < 1e-2);
    }

    #[test]
    fn function_specs_round_trip(coeffs in small_coeffs(4, 2.0), rho in 0.5..1.0f64, laurent in any::<bool>()) {
        let printed = if laurent {
            ParsedFunction::Exterior(qcx::ExteriorFunction::laurent(coeffs).unwrap()).to_string()
        } else {
            ParsedFunction::Interior(InteriorFunction::series(coeffs, rho).unwrap()).to_string()
        };
        let first = parse_function_spec::<f64>(&printed).unwrap();
        let second = parse_function_spec::<f64>(&first.to_string()).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn chain_starts_at_f(coeffs in small_coeffs(3, 0.2), s in s_strategy(), z in disk_point(0.95)) {
        let f = poly(coeffs);
        let v = f.jet(z).unwrap().f;
        let ch = InteriorChain::new(f, s, -s).unwrap();
        prop_assert!((chain_interior(&ch, z, 0.0).unwrap() - v).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn sup_grows_with_refinement(coeffs in small_coeffs(3, 0.3), c in -1.5..-0.5f64) {
        let f = poly(coeffs);
        let spec = MainCriterionSpec::new(C::new(1.0, 0.0), C::new(c, 0.0), 0.5).unwrap();
        let lhs = |z: C| lhs_main(&f, &spec, z);
        let domain = ScanDomain::Interior { r_max: 1.0 };
        let mut last = f64::NEG_INFINITY;
        for depth in 0..4 {
            let cfg = ScanConfig::default().with_grid(16, 64, depth);
            let sup = qcx::criteria::sup_scan(lhs, &domain, &cfg).unwrap().sup_value;
            prop_assert!(sup >= last);
            last = sup;
        }
    }

    #[test]
    fn passing_inputs_survive_dilation(a2 in -0.1..0.1f64, k in 0.2..0.6f64) {
        let f = InteriorFunction::polynomial_real(&[a2]).unwrap();
        let spec = MainCriterionSpec::new(C::new(1.0, 0.0), C::new(-1.0, 0.0), k).unwrap();
        let checker = small_checker();
        prop_assume!(checker.main(&f, &spec).unwrap().passed);
        for r in [0.3, 0.6, 0.9] {
            let rep = checker.main(&f.dilate(r).unwrap(), &spec).unwrap();
            prop_assert!(rep.passed, "r = {r}, margin {}", rep.margin);
        }
    }

    #[test]
    fn transition_function_respects_l(a in 0.5..2.0f64, b in -0.5..0.5f64, k in 0.1..0.8f64, z in disk_point(0.95), t in 0.0..5.0f64) {
        let s = C::new(a, b);
        let c = -s * (1.0 - 0.5 * k);
        let f = InteriorFunction::identity();
        let spec = MainCriterionSpec::new(s, c, k).unwrap();
        prop_assume!(check_main(&f, &spec).unwrap().passed);
        let l = compute_l(s, k);
        let ch = InteriorChain::new(f, s, c).unwrap();
        let h = h_interior(&ch, z, t).unwrap();
        prop_assert!(h.re > 0.0);
        prop_assert!(((h - 1.0) / (h + 1.0)).norm() <= l + 1e-8);
    }

    #[test]
    fn extension_is_holomorphic_inside(a2 in -0.1..0.1f64, w in disk_point(0.99)) {
        let f = InteriorFunction::polynomial_real(&[a2]).unwrap();
        let ch = InteriorChain::new(f, cplx(1.0, 0.0), cplx(-1.0, 0.0)).unwrap();
        let map = |w: C| becker_extend(&ch, w);
        let (fz, fzbar) = wirtinger(&map, w, 1e-5).unwrap();
        prop_assert!(fzbar.norm() <= 1e-7 * fz.norm());
    }
}
