use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use c2sseq::cli::{cmd_cohomology, cmd_list, cmd_run, OutputFormat, RunOptions};

#[derive(Parser)]
#[command(
    name = "c2sseq",
    version,
    about = "C2 homotopy fixed point and Picard spectral sequences"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a builtin scenario or a scenario file.
    Run {
        scenario: String,
        /// Page to chart (default: last computed page).
        #[arg(long)]
        page: Option<usize>,
        /// Write the artifact here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// report, chart-ascii or chart-svg.
        #[arg(long, default_value = "report")]
        format: String,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// List builtin scenarios.
    List,
    /// Print H^s(C2; M) for a module such as "Z sign" or "Z/4 trivial".
    Cohomology {
        #[arg(long)]
        module: String,
        #[arg(long, default_value = "0..4")]
        range: String,
        /// Compare against the bar complex.
        #[arg(long)]
        check: bool,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.command {
        Command::Run {
            scenario,
            page,
            out,
            format,
            timing,
        } => {
            let format: OutputFormat = match format.parse() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let to_stdout = out.is_none();
            let opts = RunOptions {
                page,
                out,
                format,
                timing,
            };
            match cmd_run(&scenario, &opts) {
                Ok(r) => {
                    if to_stdout {
                        emit(&r.artifact);
                    }
                    for d in &r.diagnostics {
                        eprintln!("{d}");
                    }
                    ExitCode::from(r.exit_code as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::List => {
            emit(&cmd_list());
            ExitCode::SUCCESS
        }
        Command::Cohomology {
            module,
            range,
            check,
        } => match cmd_cohomology(&module, &range, check) {
            Ok(t) => {
                emit(&t);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}
