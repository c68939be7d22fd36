use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gl3inv_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("gl3inv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
