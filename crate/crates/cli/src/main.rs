mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use report::{write_all, RunManifest};

#[derive(Parser, Debug, Serialize)]
#[command(name = "poinc", version, about = "Representations of the Poincaré 2-group and their state sums")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize, Clone)]
pub struct Common {
    /// Seed for every sampled quantity.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory receiving report.txt, report.csv and manifest.json.
    #[arg(long, global = true, default_value = "poinc-out")]
    #[serde(skip)]
    pub out_dir: PathBuf,
    /// `key = value` amplitude configuration (statesum commands).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
enum Command {
    /// Coadjoint orbits of su(2) and sl(2,C).
    #[command(subcommand)]
    Orbit(commands::OrbitCmd),
    /// Irreps, tensor products and triangle fibers.
    #[command(subcommand)]
    Rep(commands::RepCmd),
    /// Bridges and cocycle solution spaces.
    #[command(subcommand)]
    Intw(commands::IntwCmd),
    /// State sums on triangulated 4-manifolds.
    #[command(subcommand)]
    Statesum(commands::StatesumCmd),
    /// Re-runs the command recorded in a manifest.
    Replay {
        manifest: PathBuf,
    },
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Orbit(c) => format!("orbit {}", c.name()),
            Command::Rep(c) => format!("rep {}", c.name()),
            Command::Intw(c) => format!("intw {}", c.name()),
            Command::Statesum(c) => format!("statesum {}", c.name()),
            Command::Replay { .. } => "replay".into(),
        }
    }
}

/// Drops `--out-dir` and its value so the manifest records only what
/// determines the output.
fn replayable_args(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
        } else if a == "--out-dir" {
            skip = true;
        } else if !a.starts_with("--out-dir=") {
            out.push(a.clone());
        }
    }
    out
}

fn run(argv: Vec<String>) -> ExitCode {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Command::Replay { manifest } = &cli.command {
        let m: RunManifest = match std::fs::read_to_string(manifest)
            .map_err(|e| e.to_string())
            .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
        {
            Ok(m) => m,
            Err(e) => {
                eprintln!("error: cannot read manifest {}: {e}", manifest.display());
                return ExitCode::from(1);
            }
        };
        let mut again = vec![argv[0].clone()];
        again.extend(m.args);
        again.push("--out-dir".into());
        again.push(cli.common.out_dir.display().to_string());
        return run(again);
    }

    let start = Instant::now();
    let result = match &cli.command {
        Command::Orbit(c) => commands::orbit(c, &cli.common),
        Command::Rep(c) => commands::rep(c, &cli.common),
        Command::Intw(c) => commands::intw(c, &cli.common),
        Command::Statesum(c) => commands::statesum(c, &cli.common),
        Command::Replay { .. } => unreachable!(),
    };
    let (report, seed) = match result {
        Ok(r) => r,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(commands::Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let manifest = RunManifest {
        command: cli.command.name(),
        args: replayable_args(&argv[1..]),
        params: serde_json::to_value(&cli).unwrap_or(serde_json::Value::Null),
        seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    print!("{}", report.text());
    if let Err(e) = write_all(&cli.common.out_dir, &report, &manifest) {
        eprintln!("error: writing to {}: {e}", cli.common.out_dir.display());
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    run(std::env::args().collect())
}
