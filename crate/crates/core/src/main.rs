use std::io::{self, BufWriter, Write};

use clap::Parser;
use ctxstab::cli::{self, Cli};

fn main() {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() {
                cli::EXIT_INPUT
            } else {
                cli::EXIT_OK
            });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let mut code = cli::run(args, &mut out, &mut err);
    if let Err(e) = out.flush() {
        if e.kind() != io::ErrorKind::BrokenPipe {
            let _ = writeln!(err, "error: {e}");
            code = cli::EXIT_EXECUTION;
        }
    }
    std::process::exit(code);
}
