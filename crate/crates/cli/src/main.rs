use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use negdep_cli::{exit, golden, run_text, table, Budgets, CliError, Kind, Report};

#[derive(Parser)]
#[command(
    name = "negdep",
    version,
    about = "Exact negative-dependence and risk-sharing scenarios"
)]
struct Cli {
    /// Enumeration budget for every search (cells, bases, upper-set pairs).
    #[arg(long, global = true, env = "NEGDEP_BUDGET")]
    budget: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Leave out the timing field so reports are byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Dependence verdicts for a random vector.
    Check { scenario: PathBuf },
    /// Build or decompose counter-monotonic and comonotonic vectors.
    Construct { scenario: PathBuf },
    /// Classify a tuple of marginals.
    Frechet { scenario: PathBuf },
    /// Bernoulli default aggregation under several couplings.
    Aggregate { scenario: PathBuf },
    /// Risk sharing among quantile agents.
    Share { scenario: PathBuf },
    /// Brute-force auction optimum.
    Auction { scenario: PathBuf },
    /// Write the golden reports.
    Golden {
        #[arg(default_value = "golden")]
        dir: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Table => table::render(report),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::INPUT
            } else {
                exit::OK
            });
        }
    };
    let budgets = Budgets::new(cli.budget);
    let (kind, path) = match &cli.command {
        Command::Check { scenario } => (Kind::Check, scenario),
        Command::Construct { scenario } => (Kind::Construct, scenario),
        Command::Frechet { scenario } => (Kind::Frechet, scenario),
        Command::Aggregate { scenario } => (Kind::Aggregate, scenario),
        Command::Share { scenario } => (Kind::Share, scenario),
        Command::Auction { scenario } => (Kind::Auction, scenario),
        Command::Golden { dir } => {
            return match golden::emit(dir) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            };
        }
    };
    let outcome = read(path).and_then(|t| run_text(&t, Some(kind), budgets, !cli.no_timing));
    match outcome {
        Ok((report, err)) => {
            if let Err(e) = emit(&render(&report, cli.format), &cli.output) {
                return fail(&e);
            }
            match err {
                Some(e) => {
                    eprintln!("negdep: {e}");
                    ExitCode::from(e.exit_code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("negdep: {e}");
    ExitCode::from(e.exit_code())
}
