//! Text mini-language for function specs and its canonical printer.
//!
//! ```text
//! identity | koebe | halfplane
//! poly a2 [a3 ...]            series a2 [a3 ...] rho=<r>
//! laurent d1 [d2 ...] [min=<R>]
//! ```
//!
//! A coefficient is a decimal literal `re` or a complex pair `re,im`.
//! `poly` and `series` also accept `a1=<c>`, which must equal 1.

use std::fmt;

use num_complex::Complex;

use super::{ExteriorFunction, ExteriorKind, InteriorFunction, InteriorKind};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedFunction<T: Real = f64> {
    Interior(InteriorFunction<T>),
    Exterior(ExteriorFunction<T>),
}

impl<T: Real> ParsedFunction<T> {
    pub fn into_interior(self) -> Result<InteriorFunction<T>> {
        match self {
            ParsedFunction::Interior(f) => Ok(f),
            ParsedFunction::Exterior(_) => Err(Error::invalid("expected a function on the unit disk, got a Laurent spec")),
        }
    }

    /// The exterior function; `identity` is accepted for `g(ζ) = ζ`.
    pub fn into_exterior(self) -> Result<ExteriorFunction<T>> {
        match self {
            ParsedFunction::Exterior(g) => Ok(g),
            ParsedFunction::Interior(f) if *f.kind() == InteriorKind::Identity => Ok(ExteriorFunction::identity()),
            ParsedFunction::Interior(_) => Err(Error::invalid("expected an exterior (laurent) function spec")),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    pos: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &text[s..i], pos: s });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &text[s..], pos: s });
    }
    out
}

fn parse_real<T: Real>(s: &str, pos: usize) -> Result<T> {
    let v: T = s
        .parse()
        .map_err(|_| Error::Parse { position: pos, message: format!("invalid number `{s}`") })?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse { position: pos, message: format!("non-finite number `{s}`") })
    }
}

fn parse_complex<T: Real>(s: &str, pos: usize) -> Result<Complex<T>> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(parse_real(re, pos)?, parse_real(im, pos + re.len() + 1)?)),
        None => Ok(Complex::new(parse_real(s, pos)?, T::zero())),
    }
}

/// Parses the function mini-language.
pub fn parse_function_spec<T: Real>(text: &str) -> Result<ParsedFunction<T>> {
    let tokens = tokenize(text);
    let Some(head) = tokens.first() else {
        return Err(Error::Parse { position: 0, message: "empty function spec".into() });
    };
    let rest = &tokens[1..];
    let no_args = |name: &str| -> Result<()> {
        match rest.first() {
            Some(t) => Err(Error::Parse { position: t.pos, message: format!("`{name}` takes no arguments") }),
            None => Ok(()),
        }
    };
    match head.text {
        "identity" => no_args("identity").map(|_| ParsedFunction::Interior(InteriorFunction::identity())),
        "koebe" => no_args("koebe").map(|_| ParsedFunction::Interior(InteriorFunction::koebe())),
        "halfplane" => no_args("halfplane").map(|_| ParsedFunction::Interior(InteriorFunction::halfplane())),
        "poly" | "series" | "laurent" => {
            let mut coeffs = Vec::new();
            let mut rho: Option<T> = None;
            let mut min: Option<T> = None;
            for tok in rest {
                if let Some((key, value)) = tok.text.split_once('=') {
                    let vpos = tok.pos + key.len() + 1;
                    match (head.text, key) {
                        ("series", "rho") => rho = Some(parse_real(value, vpos)?),
                        ("laurent", "min") => min = Some(parse_real(value, vpos)?),
                        ("poly" | "series", "a1") => {
                            let a1: Complex<T> = parse_complex(value, vpos)?;
                            if a1 != Complex::new(T::one(), T::zero()) {
                                return Err(Error::Normalization(format!(
                                    "class A requires a1 = 1, got {a1} (rescale f by 1/a1)"
                                )));
                            }
                        }
                        _ => {
                            return Err(Error::Parse {
                                position: tok.pos,
                                message: format!("unknown option `{key}` for `{}`", head.text),
                            })
                        }
                    }
                } else {
                    if rho.is_some() || min.is_some() {
                        return Err(Error::Parse {
                            position: tok.pos,
                            message: "coefficients must precede options".into(),
                        });
                    }
                    coeffs.push(parse_complex(tok.text, tok.pos)?);
                }
            }
            if coeffs.is_empty() {
                return Err(Error::Parse {
                    position: head.pos + head.text.len(),
                    message: format!("`{}` expects at least one coefficient", head.text),
                });
            }
            let wrap = |e: Error| match e {
                Error::InvalidParameter(m) => Error::Parse { position: head.pos, message: m },
                other => other,
            };
            match head.text {
                "poly" => InteriorFunction::polynomial(coeffs).map(ParsedFunction::Interior).map_err(wrap),
                "series" => {
                    let rho = rho.ok_or_else(|| Error::Parse {
                        position: text.trim_end().len(),
                        message: "`series` requires rho=<r>".into(),
                    })?;
                    InteriorFunction::series(coeffs, rho).map(ParsedFunction::Interior).map_err(wrap)
                }
                _ => ExteriorFunction::laurent_with_min_modulus(coeffs, min.unwrap_or_else(T::one))
                    .map(ParsedFunction::Exterior)
                    .map_err(wrap),
            }
        }
        other => Err(Error::Parse { position: head.pos, message: format!("unknown function `{other}`") }),
    }
}

struct Coeff<'a, T: Real>(&'a Complex<T>);

impl<T: Real> fmt::Display for Coeff<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == T::zero() {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "{},{}", self.0.re, self.0.im)
        }
    }
}

fn write_coeffs<T: Real>(f: &mut fmt::Formatter<'_>, head: &str, coeffs: &[Complex<T>]) -> fmt::Result {
    f.write_str(head)?;
    for c in coeffs {
        write!(f, " {}", Coeff(c))?;
    }
    Ok(())
}

impl<T: Real> fmt::Display for InteriorFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            InteriorKind::Identity => f.write_str("identity"),
            InteriorKind::Koebe => f.write_str("koebe"),
            InteriorKind::HalfPlane => f.write_str("halfplane"),
            InteriorKind::Polynomial(c) => write_coeffs(f, "poly", c),
            InteriorKind::Series { coeffs, rho } => {
                write_coeffs(f, "series", coeffs)?;
                write!(f, " rho={rho}")
            }
        }
    }
}

impl<T: Real> fmt::Display for ExteriorFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            ExteriorKind::Identity => f.write_str("identity"),
            ExteriorKind::Laurent { coeffs, min_modulus } => {
                write_coeffs(f, "laurent", coeffs)?;
                if *min_modulus != T::one() {
                    write!(f, " min={min_modulus}")?;
                }
                Ok(())
            }
        }
    }
}

impl<T: Real> fmt::Display for ParsedFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedFunction::Interior(g) => g.fmt(f),
            ParsedFunction::Exterior(g) => g.fmt(f),
        }
    }
}
