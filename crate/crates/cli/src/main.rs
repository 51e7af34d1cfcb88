use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use biquad_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match run(cli, &mut out, &mut err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
