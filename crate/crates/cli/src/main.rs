use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stratakit_cli::{execute, Args, Format};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // library panics are broken invariants, not bad input
    let result = std::panic::catch_unwind(|| execute(&args));
    match result {
        Ok(Ok(report)) => {
            let out = match args.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(2),
    }
}
