use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use coverforge::{run, Command, Job, Source};
use coverforge_core::Error;

/// Abelian and toric covers with prescribed branching.
#[derive(Parser)]
#[command(name = "coverforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class group, divisor classes and (for fans) the torsion cover.
    Clgroup(Common),
    /// Whether the maximal cover with the given orders exists.
    Exists(Common),
    /// The maximal cover: Galois group, sublattice and building data.
    Maxcover(Common),
    /// Every toric cover with the given orders.
    Covers(Common),
    /// Checks a sublattice (or the maximal cover) against the fundamental relations.
    Verify(Common),
    /// The cover given by the sublattice the rays generate.
    TorsionCover(Common),
    /// Compares the abelian and toric answers.
    Crosscheck(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[command(group = ArgGroup::new("input").required(true).multiple(false))]
struct Common {
    /// Fan as JSON: {"rank", "rays", "cones", "complete"}.
    #[arg(long, value_name = "FILE", group = "input")]
    fan: Option<PathBuf>,
    /// Class group and divisor classes as JSON.
    #[arg(long = "abstract", value_name = "FILE", group = "input")]
    abstract_cl: Option<PathBuf>,
    /// Branching orders, comma separated, or a file holding them.
    #[arg(long, value_name = "CSV|FILE")]
    orders: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest group order for subgroup enumeration.
    #[arg(long, env = "COVERFORGE_BOUND", default_value_t = 10_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    /// Sublattice to check, as JSON (a `maxcover` report is accepted).
    #[arg(long, value_name = "FILE")]
    sublattice: Option<PathBuf>,
}

fn main() -> ExitCode {
    // usage errors exit with 1; status 2 is reserved for "no such cover"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, c) = match cli.command {
        Cmd::Clgroup(c) => (Command::ClGroup, c),
        Cmd::Exists(c) => (Command::Exists, c),
        Cmd::Maxcover(c) => (Command::MaxCover, c),
        Cmd::Covers(c) => (Command::Covers, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::TorsionCover(c) => (Command::TorsionCover, c),
        Cmd::Crosscheck(c) => (Command::CrossCheck, c),
    };
    let source = match (c.fan, c.abstract_cl) {
        (Some(p), _) => Source::Fan(p),
        (None, Some(p)) => Source::Abstract(p),
        (None, None) => unreachable!("clap requires one input"),
    };
    let job = Job {
        command,
        source,
        orders: c.orders,
        bound: c.bound,
        sublattice: c.sublattice,
    };
    match run(&job) {
        Ok(outcome) => {
            let text = match c.format {
                Format::Text => outcome.report.to_text(),
                Format::Json => outcome.report.to_json(),
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::CoverDoesNotExist { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
