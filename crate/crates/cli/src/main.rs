//! `hoops`: command-line driver for the hoop workbench.
//!
//! Exit status is 0 when every check passes, 1 when a check fails or a
//! finding is reported, and 2 for usage, input and parse errors.

mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hoops::enumerate::DEFAULT_BOUND;
use hoops::parametric::SamplePlan;

use report::{Report, Status, UsageError};

#[derive(Parser)]
#[command(
    name = "hoops",
    version,
    about = "Workbench for hoop algebras with square roots"
)]
struct Cli {
    /// Emit the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to PATH instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a hoop file and list its properties
    Check { file: PathBuf },
    /// Solve for the square root and classify it
    Sqrt { file: PathBuf },
    /// Solve for the root of degree K
    Root {
        #[arg(short = 'n', value_name = "K")]
        degree: u32,
        file: PathBuf,
    },
    /// List all filters with their prime and maximal flags
    Filters { file: PathBuf },
    /// Quotient by the filter given as comma-separated labels
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "LABELS")]
        filter: String,
    },
    /// Idempotent, regular, dense, nilpotent and complemented elements
    Subsets { file: PathBuf },
    /// Direct product of two hoops
    Product { left: PathBuf, right: PathBuf },
    /// Search for an isomorphism between two hoops
    Iso { left: PathBuf, right: PathBuf },
    /// Run the identity catalog on a hoop file or a parametric model
    Audit {
        #[arg(required_unless_present = "model", conflicts_with = "model")]
        file: Option<PathBuf>,
        /// lukasiewicz, godel, product, gamma:U or free
        #[arg(long)]
        model: Option<String>,
        /// `all` or a comma-separated list of entry ids
        #[arg(long, default_value = "all")]
        catalog: String,
        #[arg(long, default_value_t = SamplePlan::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SamplePlan::default().count)]
        samples: usize,
        /// dyadic depth of sampled values
        #[arg(long, default_value_t = SamplePlan::default().depth)]
        depth: u32,
    },
    /// Search the enumerated hoops for a counterexample to an identity
    Hunt {
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        max_size: usize,
        /// allow sizes beyond the default bound
        #[arg(long)]
        extended: bool,
    },
    /// Enumerate all hoops of a size up to isomorphism
    Enumerate {
        #[arg(long)]
        size: usize,
        /// add the square-root census
        #[arg(long)]
        census: bool,
        /// allow sizes beyond the default bound
        #[arg(long)]
        extended: bool,
    },
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), UsageError> {
    match &cli.command {
        Command::Check { file } => commands::check(report, file),
        Command::Sqrt { file } => commands::root(report, file, 2),
        Command::Root { degree, file } => commands::root(report, file, *degree),
        Command::Filters { file } => commands::filters(report, file),
        Command::Quotient { file, filter } => commands::quotient_cmd(report, file, filter),
        Command::Subsets { file } => commands::subsets(report, file),
        Command::Product { left, right } => commands::product_cmd(report, left, right),
        Command::Iso { left, right } => commands::iso(report, left, right),
        Command::Audit {
            file,
            model,
            catalog,
            seed,
            samples,
            depth,
        } => commands::audit(
            report,
            commands::AuditArgs {
                file: file.as_deref(),
                model: model.as_deref(),
                catalog,
                plan: SamplePlan {
                    seed: *seed,
                    count: *samples,
                    depth: *depth,
                },
            },
        ),
        Command::Hunt {
            identity,
            max_size,
            extended,
        } => commands::hunt_cmd(report, identity, *max_size, *extended),
        Command::Enumerate {
            size,
            census,
            extended,
        } => commands::enumerate(report, *size, *census, *extended),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut report = Report::new(std::env::args().skip(1).collect());
    if let Err(e) = run(&cli, &mut report) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let body = if cli.json {
        report.to_json()
    } else {
        report.to_text()
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    match report.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
    }
}
