//! Numerical verification of quasiconformal extension criteria for analytic
//! functions on the unit disk and its exterior.
//!
//! The core is generic over the real scalar ([`Real`], implemented for `f32`
//! and `f64`); the `*64` aliases below fix it to double precision.

pub mod analytic;
pub mod criteria;
pub mod disk;
pub mod error;
pub mod extension;
pub mod loewner;
pub mod scalar;

pub use analytic::{
    parse_function_spec, ExteriorFunction, ExteriorKind, InteriorFunction, InteriorKind, Jet2,
    LogDerivatives, ParsedFunction,
};
pub use criteria::{
    check_ab, check_bazilevic, check_cor_exterior, check_cor_interior, check_exterior, check_main,
    BazilevicSpec, Checker, CriterionKind, CriterionReport, ExteriorCriterionSpec,
    MainCriterionSpec, ScanConfig, ScanDomain, SupReport,
};
pub use disk::{compute_l, k_tilde, minimal_l, DiskInclusionParams};
pub use error::{Error, Result};
pub use extension::{AnnulusGrid, BeltramiField, ExtensionMap};
pub use loewner::{ExteriorChain, InteriorChain, LemmaGrid, LemmaReport};
pub use num_complex::Complex;
pub use scalar::{cplx, Real};

pub type Complex64 = Complex<f64>;
pub type Interior64 = InteriorFunction<f64>;
pub type Exterior64 = ExteriorFunction<f64>;
pub type Interior32 = InteriorFunction<f32>;
pub type Exterior32 = ExteriorFunction<f32>;
pub type Report64 = CriterionReport<f64>;
pub type InteriorChain64 = InteriorChain<f64>;
pub type ExteriorChain64 = ExteriorChain<f64>;
pub type ExtensionMap64 = ExtensionMap<f64>;
