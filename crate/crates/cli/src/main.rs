//! `packcolor`: construct, verify and bound packing colorings of `D(k,t)`.

mod commands;
mod record;
mod repro;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::Outcome;
use record::RunRecord;

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const OK: u8 = 0;
    /// Invalid coloring, UNSAT, or a reproduction mismatch.
    pub const NEGATIVE: u8 = 1;
    /// Bad flags or input the library rejects.
    pub const USAGE: u8 = 2;
    /// A budget ran out before an answer.
    pub const TIMEOUT: u8 = 3;
}

#[derive(Debug, Parser)]
#[command(
    name = "packcolor",
    version,
    about = "Packing colorings of the distance graphs D(k,t)"
)]
struct Cli {
    /// Print the run record as one JSON line instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Append the run record to this JSON-lines file.
    #[arg(long, global = true, value_name = "FILE")]
    log: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Divide k and t by their gcd.
    Normalize(commands::GraphArgs),
    /// Check a periodic pattern file against D(k,t).
    Verify(commands::VerifyArgs),
    /// Build, verify and optionally save the strip-and-band coloring.
    Construct(commands::ConstructArgs),
    /// Decide whether the window 1..=p can be packed with colors 1..=c.
    Search(commands::SearchArgs),
    /// Most vertices of a window of length w that colors 1..=q can cover.
    Density(commands::DensityArgs),
    /// Lower bound on the packing chromatic number from a density bound.
    Bound(commands::BoundArgs),
    /// DOT drawing of the subgraph induced by 1..=window.
    ExportDot(commands::DotArgs),
    /// Recompute the reference tables.
    #[command(subcommand)]
    Repro(repro::Table),
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Normalize(_) => "normalize".into(),
            Command::Verify(_) => "verify".into(),
            Command::Construct(_) => "construct".into(),
            Command::Search(_) => "search".into(),
            Command::Density(_) => "density".into(),
            Command::Bound(_) => "bound".into(),
            Command::ExportDot(_) => "export-dot".into(),
            Command::Repro(table) => format!("repro {}", table.name()),
        }
    }

    fn parameters(&self) -> serde_json::Value {
        let value = match self {
            Command::Normalize(a) => serde_json::to_value(a),
            Command::Verify(a) => serde_json::to_value(a),
            Command::Construct(a) => serde_json::to_value(a),
            Command::Search(a) => serde_json::to_value(a),
            Command::Density(a) => serde_json::to_value(a),
            Command::Bound(a) => serde_json::to_value(a),
            Command::ExportDot(a) => serde_json::to_value(a),
            Command::Repro(table) => serde_json::to_value(table),
        };
        value.expect("arguments serialize")
    }

    fn run(&self) -> packcolor::Result<Outcome> {
        match self {
            Command::Normalize(a) => commands::normalize(a),
            Command::Verify(a) => commands::verify(a),
            Command::Construct(a) => commands::construct(a),
            Command::Search(a) => commands::search(a),
            Command::Density(a) => commands::density(a),
            Command::Bound(a) => commands::bound(a),
            Command::ExportDot(a) => commands::export_dot(a),
            Command::Repro(table) => repro::run(table),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = cli.command.run();
    let seconds = started.elapsed().as_secs_f64();

    let (outcome, text, code) = match result {
        Ok(out) => (out.summary, Some(out.text), out.exit),
        Err(e) => {
            eprintln!("error: {}: {e}", e.kind());
            let code = match e {
                packcolor::Error::BudgetExceeded(_) => exit::TIMEOUT,
                _ => exit::USAGE,
            };
            (
                json!({"error": e.kind(), "message": e.to_string()}),
                None,
                code,
            )
        }
    };
    let record = RunRecord::new(
        &cli.command.name(),
        cli.command.parameters(),
        outcome,
        seconds,
    );
    if cli.json {
        println!("{}", record.to_line());
    } else if let Some(text) = text {
        print!("{text}");
    }
    if let Some(path) = &cli.log {
        if let Err(e) = record.append_to(path) {
            eprintln!("error: io: cannot append to {}: {e}", path.display());
            return ExitCode::from(exit::USAGE);
        }
    }
    ExitCode::from(code)
}
