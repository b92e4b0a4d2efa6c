//! Criterion reports and their JSON form.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde_json::{json, Map, Value};

use super::SupReport;
use crate::error::Error;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriterionKind {
    Main,
    Ab,
    Bazilevic,
    Exterior,
    CorExterior,
    CorInterior,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 6] = [
        CriterionKind::Main,
        CriterionKind::Ab,
        CriterionKind::Bazilevic,
        CriterionKind::Exterior,
        CriterionKind::CorExterior,
        CriterionKind::CorInterior,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::Main => "main",
            CriterionKind::Ab => "ab",
            CriterionKind::Bazilevic => "bazilevic",
            CriterionKind::Exterior => "exterior",
            CriterionKind::CorExterior => "cor-exterior",
            CriterionKind::CorInterior => "cor-interior",
        }
    }

    /// Whether the criterion takes a function on the exterior disk.
    pub fn is_exterior(self) -> bool {
        matches!(self, CriterionKind::Exterior | CriterionKind::CorExterior)
    }
}

impl fmt::Display for CriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CriterionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CriterionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown criterion `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport<T: Real = f64> {
    pub criterion: CriterionKind,
    pub passed: bool,
    /// False when the necessary boundary inequality already rules out every
    /// function.
    pub feasible: bool,
    pub m_bound: T,
    pub sup: SupReport<T>,
    /// `m_bound − sup`; a pass needs it at or above `−PASS_TOLERANCE`.
    pub margin: T,
    pub necessary_ok: bool,
    /// `l` (or `k̃`) such that the extension is `(1+l)/(1−l)`-quasiconformal.
    pub extension_constant: T,
    /// Criterion-specific extras, for example `A`, `R` and `s` of the
    /// exterior corollary.
    pub auxiliary: Vec<(String, T)>,
    pub notes: Vec<String>,
}

impl<T: Real> CriterionReport<T> {
    /// Dilatation bound `(1+l)/(1−l)` of the extension.
    pub fn dilatation_bound(&self) -> T {
        (T::one() + self.extension_constant) / (T::one() - self.extension_constant)
    }

    pub fn auxiliary(&self, key: &str) -> Option<T> {
        self.auxiliary.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    /// JSON object with the fixed field set (`schema: 1`).
    pub fn to_json(&self) -> Value {
        let mut aux = Map::new();
        for (k, v) in &self.auxiliary {
            aux.insert(k.clone(), num(*v));
        }
        json!({
            "schema": 1,
            "criterion": self.criterion.name(),
            "passed": self.passed,
            "feasible": self.feasible,
            "M": num(self.m_bound),
            "sup": num(self.sup.sup_value),
            "witness_re": num(self.sup.witness.re),
            "witness_im": num(self.sup.witness.im),
            "margin": num(self.margin),
            "necessary_ok": self.necessary_ok,
            "extension_constant": num(self.extension_constant),
            "dilatation_bound": num(self.dilatation_bound()),
            "boundary_limit": self.sup.boundary_limit.map_or(Value::Null, num),
            "grid": {
                "radii": self.sup.radial_steps,
                "angles": self.sup.angular_steps,
                "depth": self.sup.refinement_depth,
            },
            "auxiliary": aux,
            "notes": self.notes,
        })
    }
}

/// Scientific notation with 17 significant digits, enough to round-trip an
/// `f64`.
pub fn format_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number printed with 17 significant digits; non-finite values map
/// to `null`.
pub fn num<T: Real>(x: T) -> Value {
    let x = x.as_f64();
    if !x.is_finite() {
        return Value::Null;
    }
    // arbitrary_precision keeps the digits exactly as formatted
    Value::Number(format_sig17(x).parse().expect("scientific notation is a valid JSON number"))
}

pub fn complex_json<T: Real>(z: Complex<T>) -> Value {
    json!([num(z.re), num(z.im)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_names_round_trip() {
        for k in CriterionKind::ALL {
            assert_eq!(k.name().parse::<CriterionKind>().unwrap(), k);
        }
        assert!("nope".parse::<CriterionKind>().is_err());
    }

    #[test]
    fn numbers_keep_seventeen_digits() {
        assert_eq!(format_sig17(0.1), "1.0000000000000001e-1");
        let v = num(0.1f64);
        let back: f64 = serde_json::from_str(&v.to_string()).unwrap();
        assert_eq!(back, 0.1);
        assert_eq!(v.to_string(), "1.0000000000000001e-1");
        assert_eq!(num(f64::NAN), Value::Null);
    }
}
