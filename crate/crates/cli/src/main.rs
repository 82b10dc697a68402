use std::process::ExitCode;

use quadmom_cli::{execute, parse_args, CliError};

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(CliError::Usage(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match execute(&cfg) {
        Ok(m) => {
            println!(
                "{}: {} steps to t = {}, {} files in {}",
                m.config.scenario,
                m.steps,
                m.t_final,
                m.files.len() + 1,
                cfg.out.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            // messages already embed their sources
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
