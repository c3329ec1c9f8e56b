//! Command-line front end for the figure presets and configuration files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kicked_rotor::harness::{
    list_presets, preset, run, run_sections, write_sections, write_sweep, ExperimentConfig,
    Overrides,
};
use kicked_rotor::Error;

#[derive(Parser)]
#[command(
    name = "krlab",
    version,
    about = "Phase-modulated kicked-rotor laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a configuration file and write CSV output.
    Run(RunArgs),
    /// List the built-in presets.
    ListPresets,
    /// Write ε-classical Poincaré sections of a preset.
    Poincare {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Seed for randomly sampled ensembles.
    #[arg(long)]
    seed: Option<u64>,
    /// Ladder half-width n_max.
    #[arg(long)]
    grid: Option<usize>,
    /// Number of kicks.
    #[arg(long)]
    kicks: Option<usize>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config { .. } | Error::UnknownPreset(_) | Error::InvalidParameter { .. } => 2,
        e if e.is_numerical() => 3,
        _ => 1,
    }
}

fn run_command(args: RunArgs) -> Result<u8, Error> {
    let configs = match (&args.preset, &args.config) {
        (Some(name), _) => preset(name)?.runs,
        (None, Some(path)) => vec![ExperimentConfig::from_file(path)?],
        (None, None) => unreachable!("clap requires one of --preset or --config"),
    };
    let overrides = Overrides {
        out_dir: args.out_dir,
        seed: args.seed,
        n_max: args.grid,
        kicks: args.kicks,
    };
    let configs = configs
        .into_iter()
        .map(|c| c.with_overrides(&overrides))
        .collect::<Result<Vec<_>, _>>()?;
    let mut failed = 0;
    for cfg in &configs {
        let result = run(cfg)?;
        let dir = cfg.output_dir();
        let files = write_sweep(&result, &dir)?;
        for row in result.rows() {
            if let kicked_rotor::harness::PointStatus::GridInadequate(msg) = &row.status {
                eprintln!("{}: point {}: {msg}", cfg.name, row.axis_value);
            }
        }
        failed += result.failures();
        println!(
            "{}: {} points, {} files in {}",
            cfg.name,
            result.points.len(),
            files.len(),
            dir.display()
        );
    }
    Ok(if failed > 0 { 3 } else { 0 })
}

fn poincare_command(name: &str, out_dir: Option<PathBuf>) -> Result<u8, Error> {
    let p = preset(name)?;
    if !p.has_sections() {
        return Err(Error::Config {
            path: "sections".into(),
            message: format!("preset `{name}` defines no Poincaré sections"),
        });
    }
    for cfg in p.runs.iter().filter(|c| !c.sections.is_empty()) {
        let cfg = cfg.clone().with_overrides(&Overrides {
            out_dir: out_dir.clone(),
            ..Overrides::default()
        })?;
        let sections = run_sections(&cfg)?;
        let dir = cfg.output_dir();
        let files = write_sections(&cfg, &sections, &dir)?;
        println!(
            "{}: {} sections in {}",
            cfg.name,
            files.len(),
            dir.display()
        );
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run_command(args),
        Command::ListPresets => {
            for (name, description) in list_presets() {
                println!("{name:<6} {description}");
            }
            Ok(0)
        }
        Command::Poincare { preset, out_dir } => poincare_command(&preset, out_dir),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("krlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
