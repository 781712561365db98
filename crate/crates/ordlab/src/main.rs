use std::io::Write;
use std::process::ExitCode;

use ordlab::cli::{run, Outcome};

fn main() -> ExitCode {
    let done = run(std::env::args_os());
    let out = done.stdout();
    if !done.json && matches!(done.report.outcome, Outcome::Error { .. }) {
        eprint!("{out}");
    } else {
        // A closed pipe is not worth a panic.
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    ExitCode::from(done.report.exit_code() as u8)
}
