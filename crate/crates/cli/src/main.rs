use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;
use fanoclass_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdin = io::stdin();
    let mut stdout = BufWriter::new(io::stdout().lock());
    match run(cli, &mut stdin.lock(), &mut stdout, &mut io::stderr()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
