//! Sweep execution.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::config::{Axis, ExperimentConfig};
use crate::diagnostics::{
    default_window, diffusion_constant, fit_power_law, localization_fit, FitResult,
};
use crate::error::{Error, Result};
use crate::model::KickParams;
use crate::pseudoclassical::{poincare_section, seed_grid, SectionPoint};
use crate::quantum::{evolve_with, Trajectory};

/// Whether sweep points are run concurrently. Both give identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointStatus {
    Ok,
    /// The edge guard tripped even at the largest permitted ladder.
    GridInadequate(String),
}

impl PointStatus {
    pub fn label(&self) -> &str {
        match self {
            PointStatus::Ok => "ok",
            PointStatus::GridInadequate(_) => "grid-inadequate",
        }
    }
}

/// Summary of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub params: KickParams,
    /// Final energy in recoils (NaN when the point failed).
    pub energy: f64,
    /// Final zero-momentum fraction (NaN when the point failed).
    pub p0_fraction: f64,
    /// Exponent q of `E ∝ t^q`.
    pub power_law: Option<FitResult>,
    /// Slope of `E(t)` in recoils per kick.
    pub diffusion: Option<FitResult>,
    /// Exponential localization length ξ; attempted only off resonance.
    pub localization: Option<FitResult>,
    pub n_max: usize,
    pub status: PointStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub row: SweepRow,
    pub trajectory: Option<Trajectory>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: ExperimentConfig,
    pub points: Vec<PointResult>,
    /// Hex SHA-256 of the configuration (without its output directory).
    pub config_hash: String,
}

impl SweepResult {
    pub fn axis(&self) -> Option<Axis> {
        self.config.sweep.as_ref().map(|s| s.axis)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SweepRow> {
        self.points.iter().map(|p| &p.row)
    }

    pub fn failures(&self) -> usize {
        self.rows().filter(|r| r.status != PointStatus::Ok).count()
    }
}

/// Content hash of a configuration, independent of where output is written.
pub fn config_hash(config: &ExperimentConfig) -> String {
    let mut c = config.clone();
    c.output.dir = None;
    let digest = Sha256::digest(c.to_toml_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn run_point(
    config: &ExperimentConfig,
    axis_value: f64,
    params: KickParams,
) -> Result<PointResult> {
    let ic = config.initial.condition()?;
    let opts = config.evolve_options();
    match evolve_with(&ic, &params, &opts) {
        Ok(traj) => {
            let len = traj.energies.len();
            let window = |w: Option<[usize; 2]>, min_start: usize| match w {
                Some([a, b]) => a..b.min(len),
                None => {
                    let d = default_window(len);
                    d.start.max(min_start)..d.end
                }
            };
            let power_law = fit_power_law(&traj.energies, window(config.fits.power_law, 1)).ok();
            let diffusion =
                diffusion_constant(&traj.energies, window(config.fits.diffusion, 0)).ok();
            let localization = if params.detuning != 0.0 {
                localization_fit(&traj.final_distribution).ok()
            } else {
                None
            };
            let row = SweepRow {
                axis_value,
                params,
                energy: traj.energies[len - 1],
                p0_fraction: traj.p0_fractions[len - 1],
                power_law,
                diffusion,
                localization,
                n_max: traj.n_max,
                status: PointStatus::Ok,
            };
            Ok(PointResult {
                row,
                trajectory: Some(traj),
            })
        }
        Err(e @ Error::GridInadequate { .. }) => Ok(PointResult {
            row: SweepRow {
                axis_value,
                params,
                energy: f64::NAN,
                p0_fraction: f64::NAN,
                power_law: None,
                diffusion: None,
                localization: None,
                n_max: opts.max_n_max,
                status: PointStatus::GridInadequate(e.to_string()),
            },
            trajectory: None,
        }),
        Err(e) => Err(e),
    }
}

/// Runs every sweep point in parallel.
pub fn run(config: &ExperimentConfig) -> Result<SweepResult> {
    run_with(config, Execution::Parallel)
}

/// Runs every sweep point. A point whose ladder proves inadequate is
/// recorded with that status and the sweep continues.
pub fn run_with(config: &ExperimentConfig, execution: Execution) -> Result<SweepResult> {
    config.validate()?;
    let points = config.points()?;
    let results: Vec<Result<PointResult>> = match execution {
        Execution::Serial => points
            .iter()
            .map(|&(v, p)| run_point(config, v, p))
            .collect(),
        Execution::Parallel => points
            .par_iter()
            .map(|&(v, p)| run_point(config, v, p))
            .collect(),
    };
    Ok(SweepResult {
        config: config.clone(),
        points: results.into_iter().collect::<Result<_>>()?,
        config_hash: config_hash(config),
    })
}

/// Poincaré sections of every `[[sections]]` entry, in order.
pub fn run_sections(config: &ExperimentConfig) -> Result<Vec<Vec<SectionPoint>>> {
    config.validate()?;
    if config.sections.is_empty() {
        return Err(Error::config(
            "sections",
            "configuration defines no Poincaré sections",
        ));
    }
    config
        .sections
        .iter()
        .map(|s| poincare_section(&s.params(), &seed_grid(s.grid)))
        .collect()
}
