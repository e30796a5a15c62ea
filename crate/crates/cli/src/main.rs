use std::io::Write;
use std::process::ExitCode;

use hra_cli::{config_from_args, run, EXIT_INTERNAL, EXIT_OK, EXIT_VALIDATION};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let config = match config_from_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_VALIDATION as u8 } else { EXIT_OK as u8 });
        }
    };

    let outcome = match std::panic::catch_unwind(|| run(&config)) {
        Ok(o) => o,
        Err(_) => return ExitCode::from(EXIT_INTERNAL as u8),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
