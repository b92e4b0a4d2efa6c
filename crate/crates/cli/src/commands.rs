use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use qcx::criteria::{format_sig17, num};
use qcx::extension::{dilatation_field, richardson_delta};
use qcx::loewner::{verify_lemma_diskB, verify_lemma_diskB_exterior};
use qcx::{
    compute_l, minimal_l, parse_function_spec, AnnulusGrid, BazilevicSpec, Checker, CriterionKind,
    CriterionReport, ExteriorChain, ExteriorCriterionSpec, ExteriorFunction, ExtensionMap,
    InteriorChain, InteriorFunction, LemmaGrid, LemmaReport, MainCriterionSpec, ScanConfig,
};
use serde_json::{json, Value};

use crate::args::{
    CheckArgs, CriterionArgs, DilatationArgs, ExtendArgs, Format, LConstArgs, OutputArgs,
    SampleArgs, SweepArgs,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json(path: Option<&Path>, value: &Value) -> Result<()> {
    let mut w = open_out(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn csv_writer(path: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(open_out(path)?))
}

fn f17(x: f64) -> String {
    if x.is_finite() {
        format_sig17(x)
    } else {
        x.to_string()
    }
}

fn require<T>(value: Option<T>, flag: &str, kind: CriterionKind) -> Result<T> {
    value.ok_or_else(|| anyhow!(qcx::Error::InvalidParameter(format!("criterion `{kind}` requires {flag}"))))
}

fn checker(args: &CriterionArgs) -> Checker<f64> {
    let mut scan = ScanConfig::default();
    if let Some((r, a, d)) = args.grid {
        scan = scan.with_grid(r, a, d);
    }
    let mut ch = Checker::with_scan(scan);
    if let Some(r) = args.big_r {
        ch.cor_dilation = r;
    }
    ch
}

fn interior(args: &CriterionArgs) -> Result<InteriorFunction<f64>> {
    Ok(parse_function_spec::<f64>(&args.f)?.into_interior()?)
}

fn exterior(args: &CriterionArgs) -> Result<ExteriorFunction<f64>> {
    Ok(parse_function_spec::<f64>(&args.f)?.into_exterior()?)
}

fn main_spec(args: &CriterionArgs) -> Result<MainCriterionSpec<f64>> {
    let kind = args.criterion;
    Ok(MainCriterionSpec::new(require(args.s, "--s", kind)?, require(args.c, "--c", kind)?, require(args.k, "--k", kind)?)?)
}

fn exterior_spec(args: &CriterionArgs) -> Result<ExteriorCriterionSpec<f64>> {
    let kind = args.criterion;
    Ok(ExteriorCriterionSpec::new(require(args.s, "--s", kind)?, require(args.k, "--k", kind)?)?)
}

/// Runs the selected criterion, optionally on `f(rz)/r`.
fn evaluate(args: &CriterionArgs, dilation: Option<f64>) -> Result<CriterionReport<f64>> {
    let ch = checker(args);
    let kind = args.criterion;
    let interior_f = || -> Result<InteriorFunction<f64>> {
        let f = interior(args)?;
        Ok(match dilation {
            Some(r) => f.dilate(r)?,
            None => f,
        })
    };
    let report = match kind {
        CriterionKind::Main => ch.main(&interior_f()?, &main_spec(args)?)?,
        CriterionKind::Ab => ch.ab(&interior_f()?, require(args.c, "--c", kind)?, require(args.k, "--k", kind)?)?,
        CriterionKind::Bazilevic => {
            let spec = BazilevicSpec::new(
                require(args.alpha, "--alpha", kind)?,
                require(args.beta, "--beta", kind)?,
                require(args.k, "--k", kind)?,
            )?;
            ch.bazilevic(&interior_f()?, &spec)?
        }
        CriterionKind::CorInterior => ch.cor_interior(&interior_f()?, require(args.k, "--k", kind)?)?,
        CriterionKind::Exterior => ch.exterior(&exterior(args)?, &exterior_spec(args)?)?,
        CriterionKind::CorExterior => ch.cor_exterior(&exterior(args)?, require(args.k, "--k", kind)?)?,
    };
    Ok(report)
}

fn report_code(report: &CriterionReport<f64>) -> u8 {
    if !report.feasible {
        EXIT_INVALID
    } else if report.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

const REPORT_COLUMNS: [&str; 10] = [
    "criterion",
    "passed",
    "feasible",
    "M",
    "sup",
    "witness_re",
    "witness_im",
    "margin",
    "necessary_ok",
    "extension_constant",
];

fn report_row(r: &CriterionReport<f64>) -> Vec<String> {
    vec![
        r.criterion.to_string(),
        r.passed.to_string(),
        r.feasible.to_string(),
        f17(r.m_bound),
        f17(r.sup.sup_value),
        f17(r.sup.witness.re),
        f17(r.sup.witness.im),
        f17(r.margin),
        r.necessary_ok.to_string(),
        f17(r.extension_constant),
    ]
}

fn emit_report(out: &OutputArgs, report: &CriterionReport<f64>) -> Result<()> {
    match out.format {
        Format::Json => write_json(out.out.as_deref(), &report.to_json()),
        Format::Csv => {
            let mut w = csv_writer(out.out.as_deref())?;
            w.write_record(REPORT_COLUMNS)?;
            w.write_record(report_row(report))?;
            w.flush()?;
            Ok(())
        }
    }
}

pub fn check(args: &CheckArgs) -> Result<u8> {
    let report = evaluate(&args.criterion, None)?;
    emit_report(&args.output, &report)?;
    Ok(report_code(&report))
}

pub fn l_const(args: &LConstArgs) -> Result<u8> {
    let l = compute_l(args.s, args.k);
    let l_bisect = minimal_l(args.s, args.k)?;
    let delta = (l - l_bisect).abs();
    match args.output.format {
        Format::Json => write_json(
            args.output.out.as_deref(),
            &json!({
                "schema": 1,
                "s_re": num(args.s.re),
                "s_im": num(args.s.im),
                "k": num(args.k),
                "l": num(l),
                "l_bisection": num(l_bisect),
                "oracle_delta": num(delta),
                "dilatation_bound": num((1.0 + l) / (1.0 - l)),
            }),
        )?,
        Format::Csv => {
            let mut w = csv_writer(args.output.out.as_deref())?;
            w.write_record(["s_re", "s_im", "k", "l", "l_bisection", "oracle_delta"])?;
            w.write_record([args.s.re, args.s.im, args.k, l, l_bisect, delta].map(f17))?;
            w.flush()?;
        }
    }
    Ok(EXIT_PASS)
}

fn extension_map(args: &CriterionArgs) -> Result<ExtensionMap<f64>> {
    let ch = checker(args);
    match args.criterion {
        CriterionKind::Main => Ok(ExtensionMap::from_main(&interior(args)?, &main_spec(args)?, &ch)?),
        CriterionKind::Exterior => Ok(ExtensionMap::from_exterior(&exterior(args)?, &exterior_spec(args)?, &ch)?),
        CriterionKind::CorExterior => {
            Ok(ExtensionMap::from_cor_exterior(&exterior(args)?, require(args.k, "--k", args.criterion)?, &ch)?)
        }
        other => bail!(qcx::Error::InvalidParameter(format!(
            "no explicit chain for criterion `{other}`; use main, exterior or cor-exterior"
        ))),
    }
}

fn sample_grid(sample: &SampleArgs, base: AnnulusGrid) -> AnnulusGrid {
    AnnulusGrid {
        r_min: sample.r_min.unwrap_or(base.r_min),
        r_max: sample.r_max.unwrap_or(base.r_max),
        radii: sample.radii.unwrap_or(base.radii),
        angles: sample.angles.unwrap_or(base.angles),
    }
}

pub fn extend(args: &ExtendArgs) -> Result<u8> {
    let map = extension_map(&args.criterion)?;
    let grid = sample_grid(&args.sample, AnnulusGrid { r_min: 0.05, r_max: 3.0, radii: 32, angles: 64 });
    let rows: Vec<(Complex64, Complex64)> = grid
        .points::<f64>()
        .into_iter()
        .map(|w| Ok((w, map.eval(w)?)))
        .collect::<Result<_>>()?;
    let mut w = csv_writer(args.out.as_deref())?;
    w.write_record(["w_re", "w_im", "f_re", "f_im"])?;
    for (z, v) in rows {
        w.write_record([z.re, z.im, v.re, v.im].map(f17))?;
    }
    w.flush()?;
    Ok(EXIT_PASS)
}

pub fn dilatation(args: &DilatationArgs) -> Result<u8> {
    let map = extension_map(&args.criterion)?;
    let grid = sample_grid(&args.sample, map.default_annulus());
    let eval = |w| map.eval(w);
    let field = dilatation_field(&eval, &grid, args.h)?;
    if let Some(path) = &args.out {
        let mut w = csv_writer(Some(path))?;
        w.write_record(["w_re", "w_im", "abs_mu"])?;
        for (z, mu) in &field.points {
            w.write_record([z.re, z.im, mu.norm()].map(f17))?;
        }
        w.flush()?;
    }
    let pass = field.max_abs_mu <= map.l_claimed + args.tol;
    let mut summary = json!({
        "schema": 1,
        "max_abs_mu": num(field.max_abs_mu),
        "argmax_re": num(field.argmax.re),
        "argmax_im": num(field.argmax.im),
        "l_claimed": num(map.l_claimed),
        "fd_step": num(args.h),
        "pass": pass,
        "notes": map.notes,
    });
    if args.richardson {
        summary["richardson_delta"] = num(richardson_delta(&eval, &grid, args.h)?);
    }
    write_json(None, &summary)?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn lemma_json(criterion: &CriterionReport<f64>, lemma: &LemmaReport<f64>) -> Value {
    let opt = |v: Option<f64>| v.map_or(Value::Null, num);
    json!({
        "schema": 1,
        "criterion": criterion.criterion.name(),
        "criterion_passed": criterion.passed,
        "passed": lemma.passed,
        "max_disk": num(lemma.max_disk),
        "disk_bound": num(lemma.disk_bound),
        "lemma_margin": num(lemma.disk_margin),
        "witness_re": num(lemma.witness.re),
        "witness_im": num(lemma.witness.im),
        "witness_t": num(lemma.witness_t),
        "m1_excess": opt(lemma.m1_excess),
        "m2_residual": opt(lemma.m2_residual),
        "triangle_excess": opt(lemma.triangle_excess),
        "q_min": opt(lemma.q_range.map(|q| q.0)),
        "q_max": opt(lemma.q_range.map(|q| q.1)),
        "q_bracket_ok": lemma.q_bracket_ok,
        "herglotz_min_re": num(lemma.herglotz_min_re),
        "transition_max": num(lemma.transition_max),
        "l": num(lemma.l),
        "transition_margin": num(lemma.transition_margin),
        "points": lemma.points,
    })
}

pub fn verify(args: &CheckArgs) -> Result<u8> {
    let a = &args.criterion;
    let report = evaluate(a, None)?;
    let grid = LemmaGrid::default();
    let lemma = match a.criterion {
        CriterionKind::Main => {
            let spec = main_spec(a)?;
            verify_lemma_diskB(&InteriorChain::new(interior(a)?, spec.s, spec.c)?, spec.k, &grid)?
        }
        CriterionKind::Exterior => {
            let spec = exterior_spec(a)?;
            verify_lemma_diskB_exterior(&ExteriorChain::new(exterior(a)?, spec.s)?, spec.k, &grid)?
        }
        other => bail!(qcx::Error::InvalidParameter(format!(
            "lemma verification is defined for main and exterior, not `{other}`"
        ))),
    };
    let value = lemma_json(&report, &lemma);
    match args.output.format {
        Format::Json => write_json(args.output.out.as_deref(), &value)?,
        Format::Csv => {
            let obj = value.as_object().expect("lemma report is an object");
            let mut w = csv_writer(args.output.out.as_deref())?;
            w.write_record(obj.keys())?;
            w.write_record(obj.values().map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string)))?;
            w.flush()?;
        }
    }
    Ok(if lemma.passed { EXIT_PASS } else { EXIT_FAIL })
}

fn apply(args: &mut CriterionArgs, dilation: &mut Option<f64>, name: &str, v: f64) {
    let zero = Complex64::new(0.0, 0.0);
    match name {
        "k" => args.k = Some(v),
        "a" => args.s = Some(Complex64::new(v, args.s.unwrap_or(zero).im)),
        "b" => args.s = Some(Complex64::new(args.s.unwrap_or(zero).re, v)),
        "c_re" => args.c = Some(Complex64::new(v, args.c.unwrap_or(zero).im)),
        "c_im" => args.c = Some(Complex64::new(args.c.unwrap_or(zero).re, v)),
        "alpha" => args.alpha = Some(v),
        "beta" => args.beta = Some(v),
        "r" => *dilation = Some(v),
        "R" => args.big_r = Some(v),
        _ => unreachable!("range names are validated when parsed"),
    }
}

pub fn sweep(args: &SweepArgs) -> Result<u8> {
    if args.vary.len() > 2 {
        bail!(qcx::Error::InvalidParameter("at most two parameters can be ranged".into()));
    }
    if args.vary.len() == 2 && args.vary[0].name == args.vary[1].name {
        bail!(qcx::Error::InvalidParameter(format!("`{}` is ranged twice", args.vary[0].name)));
    }
    let combos: Vec<Vec<f64>> = match args.vary.as_slice() {
        [x] => x.values.iter().map(|&v| vec![v]).collect(),
        [x, y] => x.values.iter().flat_map(|&u| y.values.iter().map(move |&v| vec![u, v])).collect(),
        _ => unreachable!("clap requires at least one --vary"),
    };
    let mut w = csv_writer(args.out.as_deref())?;
    let mut header: Vec<String> = args.vary.iter().map(|r| r.name.clone()).collect();
    header.extend(["M", "sup", "margin", "l", "passed", "feasible"].map(String::from));
    w.write_record(&header)?;
    let mut all_pass = true;
    for values in combos {
        let mut a = args.criterion.clone();
        let mut dilation = None;
        for (range, &v) in args.vary.iter().zip(&values) {
            apply(&mut a, &mut dilation, &range.name, v);
        }
        let r = evaluate(&a, dilation)?;
        all_pass &= r.passed;
        let mut row: Vec<String> = values.iter().map(|&v| f17(v)).collect();
        row.extend([f17(r.m_bound), f17(r.sup.sup_value), f17(r.margin), f17(r.extension_constant)]);
        row.extend([r.passed.to_string(), r.feasible.to_string()]);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}
