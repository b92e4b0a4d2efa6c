use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qcx::CriterionKind;

#[derive(Debug, Parser)]
#[command(name = "qcx", version, about = "Check quasiconformal extension criteria and sample the extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a criterion and report sup, bound, margin and extension constant.
    Check(CheckArgs),
    /// Closed-form extension constant l(s, k) and its bisection cross-check.
    LConst(LConstArgs),
    /// Sample the extension on a polar grid (CSV: w_re, w_im, f_re, f_im).
    Extend(ExtendArgs),
    /// Finite-difference Beltrami coefficient of the extension.
    Dilatation(DilatationArgs),
    /// Grid check of the disk bound behind the transition-function estimate.
    Verify(CheckArgs),
    /// Run a criterion over one or two ranged parameters (CSV table).
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CriterionArgs {
    #[arg(long, default_value = "main", value_parser = parse_criterion)]
    pub criterion: CriterionKind,
    /// Function spec, e.g. "poly 0.1", "koebe", "laurent 0.1 min=1".
    #[arg(long = "f")]
    pub f: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub c: Option<Complex64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Finite dilation factor of the exterior corollary.
    #[arg(long = "R")]
    pub big_r: Option<f64>,
    /// Scan grid as radii,angles,depth.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(usize, usize, usize)>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub criterion: CriterionArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LConstArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s: Complex64,
    #[arg(long)]
    pub k: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub radii: Option<usize>,
    #[arg(long)]
    pub angles: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub criterion: CriterionArgs,
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DilatationArgs {
    #[command(flatten)]
    pub criterion: CriterionArgs,
    #[command(flatten)]
    pub sample: SampleArgs,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-5)]
    pub h: f64,
    /// Accepted excess of max |mu| over the claimed constant.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Also compare against the step h/2.
    #[arg(long)]
    pub richardson: bool,
    /// CSV of (w_re, w_im, abs_mu); the JSON summary goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub criterion: CriterionArgs,
    /// name=start:stop:count with name in k, a, b, c_re, c_im, alpha, beta, r, R.
    #[arg(long = "vary", value_parser = parse_range, required = true, allow_hyphen_values = true)]
    pub vary: Vec<Range>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Range {
    pub name: String,
    pub values: Vec<f64>,
}

pub const RANGE_NAMES: [&str; 9] = ["k", "a", "b", "c_re", "c_im", "alpha", "beta", "r", "R"];

fn parse_criterion(s: &str) -> Result<CriterionKind, String> {
    s.parse().map_err(|e: qcx::Error| e.to_string())
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("invalid number `{t}` in `{s}`"));
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(s)?, 0.0)),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [r, a, d] = parts.as_slice() else {
        return Err(format!("expected radii,angles,depth, got `{s}`"));
    };
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid grid size `{t}`"));
    Ok((n(r)?, n(a)?, n(d)?))
}

fn parse_range(s: &str) -> Result<Range, String> {
    let (name, spec) = s.split_once('=').ok_or_else(|| format!("expected name=start:stop:count, got `{s}`"))?;
    if !RANGE_NAMES.contains(&name) {
        return Err(format!("cannot vary `{name}`; expected one of {}", RANGE_NAMES.join(", ")));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("expected start:stop:count, got `{spec}`"));
    };
    let start: f64 = start.parse().map_err(|_| format!("invalid start `{start}`"))?;
    let stop: f64 = stop.parse().map_err(|_| format!("invalid stop `{stop}`"))?;
    let count: usize = count.parse().map_err(|_| format!("invalid count `{count}`"))?;
    if count == 0 {
        return Err("count must be positive".into());
    }
    let values = if count == 1 {
        vec![start]
    } else {
        (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect()
    };
    Ok(Range { name: name.to_string(), values })
}
