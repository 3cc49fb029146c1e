use std::process::ExitCode;

use cardano::cli::{render, run, tolerance_from_env, Cli, TOL_ENV};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_tol = std::env::var(TOL_ENV).ok();
    let result = tolerance_from_env(env_tol.as_deref()).and_then(|tol| run(&cli, tol));
    match result {
        Ok(outcome) => {
            println!("{}", render(&outcome.output, cli.pretty));
            if outcome.exit_code == 4 {
                eprintln!("error: verification failed");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
