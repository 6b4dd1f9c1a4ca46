mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hessmult_core::{Engine, Error, Exec};

use args::{Cli, Command};
use commands::{Output, Status};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_OVER_CAP: u8 = 3;
const EXIT_MATH_ALERT: u8 = 10;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::OverCap { .. } => EXIT_OVER_CAP,
        e if e.is_input_error() => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Ok => 0,
        Status::ImplBug => EXIT_INTERNAL,
        Status::MathAlert => EXIT_MATH_ALERT,
    }
}

fn print(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn run(cli: Cli) -> Result<Status, Error> {
    let g = &cli.global;
    let mut engine = Engine::new(g.cap as usize, Exec::default());
    if let Some(dir) = &g.cache_dir {
        engine = engine.with_cache_dir(dir);
    }
    let format = g.format;
    let single = |out: Output| {
        print(&out.text);
        out.status
    };
    match &cli.command {
        Command::Solve { h, degree } => commands::solve(&engine, h, *degree, format).map(single),
        Command::Amatrix { n, recompute } => {
            let engine = engine.recompute(*recompute);
            commands::amatrix(&engine, *n, format).map(single)
        }
        Command::Verify(args) => commands::verify(&engine, args, format, print),
        Command::Induct { h, mu } => commands::induct(&engine, h, mu, format).map(single),
        Command::Info { h } => commands::info(&engine, h, format).map(single),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli
        .global
        .jobs
        .map(|j| j as usize)
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1);
    match hessmult_core::par::with_jobs(jobs, || run(cli)) {
        Ok(status) => ExitCode::from(status_code(status)),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        assert_eq!(exit_code(&Error::OverCap { n: 10, cap: 9 }), EXIT_OVER_CAP);
        assert_eq!(exit_code(&Error::InvalidHess("x".into())), EXIT_INPUT);
        assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
        assert_eq!(status_code(Status::MathAlert), EXIT_MATH_ALERT);
        assert_eq!(status_code(Status::ImplBug), EXIT_INTERNAL);
        assert_eq!(status_code(Status::Ok), 0);
    }
}
