//! `clusterxy`: parameter scans over cluster-XY chains.
//!
//! Exit status: 0 success, 2 invalid request, 3 numerical failure,
//! 4 oracle check failure.

mod commands;
mod request;
mod table;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use commands::{CheckRequest, Outcome};
use request::{ModelArgs, ModelSource, OutputArgs, Request, ScanArgs};
use table::Table;

#[derive(Debug, Parser)]
#[command(name = "clusterxy", version, about = "Free-fermion spectra, gaps and geometric entanglement of cluster-XY chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lowest levels of both parity sectors.
    Spectrum {
        #[command(flatten)]
        scan: ScanArgs,
        /// Levels per sector.
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Ground energy and gap.
    GapScan {
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Geometric entanglement densities (ent_site, ent_af, ent_block, derivative).
    EntScan {
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Block entanglement density of the infinite chain.
    Thermo {
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Compares the free-fermion solution with dense diagonalization.
    Check {
        /// Restrict to one preset; all presets by default.
        #[arg(long)]
        model: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        h: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        g: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        halfway: bool,
        #[arg(long, default_value_t = 8)]
        sites: usize,
        /// `param:start:stop:step`; checks as many evenly spaced points.
        #[arg(long, allow_hyphen_values = true, requires = "model")]
        sweep: Option<String>,
        /// Points per default sweep.
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, hide = true)]
        corrupt_theta_sign: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lists the preset models.
    Presets {
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let (table, outcome, output) = match cli.command {
        Command::Spectrum { scan, levels } => {
            let request = Request::new("spectrum", &scan, &["levels"], &["levels"])?;
            let (t, o) = commands::spectrum(&request, levels, jobs(&scan.output)?)?;
            (t, o, scan.output)
        }
        Command::GapScan { scan } => {
            let request = Request::new("gap-scan", &scan, &["gap"], &["gap"])?;
            let (t, o) = commands::gap_scan(&request, jobs(&scan.output)?)?;
            (t, o, scan.output)
        }
        Command::EntScan { scan } => {
            let request = Request::new(
                "ent-scan",
                &scan,
                &["ent_site", "ent_af", "ent_block", "derivative"],
                &["ent_site"],
            )?;
            let (t, o) = commands::ent_scan(&request, jobs(&scan.output)?)?;
            (t, o, scan.output)
        }
        Command::Thermo { scan } => {
            let request = Request::new("thermo", &scan, &["ent_block"], &["ent_block"])?;
            let (t, o) = commands::thermo(&request, jobs(&scan.output)?)?;
            (t, o, scan.output)
        }
        Command::Check {
            model,
            r,
            h,
            g,
            lambda,
            n,
            m,
            halfway,
            sites,
            sweep,
            points,
            corrupt_theta_sign,
            output,
        } => {
            let source = model
                .map(|name| {
                    ModelSource::from_args(&ModelArgs {
                        model: Some(name),
                        model_file: None,
                        r,
                        h,
                        g,
                        lambda,
                        n,
                        m,
                        halfway,
                    })
                })
                .transpose()?;
            let (t, o) = commands::check(&CheckRequest {
                source,
                sweep,
                sites,
                points,
                corrupt_theta_sign,
            })?;
            (t, o, output)
        }
        Command::Presets { output } => (commands::presets(), Outcome::Success, output),
    };
    write_table(&table, &output)?;
    Ok(outcome)
}

fn jobs(output: &OutputArgs) -> anyhow::Result<usize> {
    if output.jobs == 0 {
        return Err(clusterxy::Error::Parse("--jobs must be at least 1".into()).into());
    }
    Ok(output.jobs)
}

fn write_table(table: &Table, output: &OutputArgs) -> anyhow::Result<()> {
    let text = table.render(output.format);
    match &output.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn exit_code(error: &anyhow::Error) -> u8 {
    match error.downcast_ref::<clusterxy::Error>() {
        Some(clusterxy::Error::Quadrature { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::NumericalFailure) => ExitCode::from(3),
        Ok(Outcome::CheckFailed) => {
            eprintln!("clusterxy: oracle check failed");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("clusterxy: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
