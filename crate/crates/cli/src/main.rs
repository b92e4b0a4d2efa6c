mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{EXIT_FAIL, EXIT_INVALID};

fn init_threads() {
    let Some(n) = std::env::var("QCX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) else {
        return;
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        eprintln!("warning: QCX_THREADS ignored: {e}");
    }
}

fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<qcx::Error>() {
        Some(qcx::Error::CriterionFailed(_)) => EXIT_FAIL,
        _ => EXIT_INVALID,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let result = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::LConst(a) => commands::l_const(a),
        Command::Extend(a) => commands::extend(a),
        Command::Dilatation(a) => commands::dilatation(a),
        Command::Verify(a) => commands::verify(a),
        Command::Sweep(a) => commands::sweep(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}
