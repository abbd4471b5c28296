use std::process::ExitCode;

use clap::Parser;
use cubint::app::{run_command, UsageError, EXIT_FAIL, EXIT_USAGE};
use cubint::config::Options;

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Options::try_parse() {
        Ok(o) => o,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return exit(code);
        }
    };
    let result = (|| {
        cubint::init_threads()?;
        let opts = match &cli.config {
            Some(path) => cli.clone().merged_with(Options::load_config(path)?),
            None => cli.clone(),
        };
        run_command(&opts)
    })();
    match result {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                eprintln!("usage: cubint <classify|verify|simulate|catalog|residuals> [OPTIONS]; see --help");
                exit(EXIT_USAGE)
            } else {
                exit(EXIT_FAIL)
            }
        }
    }
}
