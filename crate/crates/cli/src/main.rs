use clap::Parser;
use cli::{run, Cli};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args = Cli::parse();
    if let Some(b) = args.budget {
        // single-threaded here: nothing has read the variable yet
        std::env::set_var("ORBKIT_BUDGET", b.to_string());
    }
    match run(&args) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(report.render(args.format).as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
