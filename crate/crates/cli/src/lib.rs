//! Command-line front end for the `twlab` crate: Tracy–Widom tables and
//! moments, Monte Carlo sampling, and goodness-of-fit comparison.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical
//! non-convergence.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use error::{CliError, CliResult};

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mut ctx = commands::Context::new(cli.cache.as_deref());
    match &cli.command {
        args::Command::Table(a) => commands::cmd_table(&mut ctx, a, out, err),
        args::Command::Moments(a) => commands::cmd_moments(&mut ctx, a, out, err),
        args::Command::Sample(a) => commands::cmd_sample(&mut ctx, a, out, err),
        args::Command::Compare(a) => commands::cmd_compare(&mut ctx, a, out, err),
    }
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let r = pool.install(|| dispatch(&cli, &mut o, &mut e));
                let _ = err.write_all(&e);
                out.write_all(&o).map_err(CliError::from).and(r)
            }
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "twlab: {e}");
            e.exit_code()
        }
    }
}
