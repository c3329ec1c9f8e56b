//! ε-classical map near a quantum resonance.
//!
//! Near `ƛ = 2πℓ + ε` the quantum dynamics follows a standard-map-like
//! system with effective Planck constant `|ε|` and stochasticity `k|ε|`.
//! The map is iterated with explicit ordering: impulse from the current
//! angle, then rotation. Phase modulation shifts the kick's sine argument by
//! `φ_t`, as it shifts the grating in the quantum kick.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{modulation_phases, KickParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpacePoint {
    /// Momentum-like coordinate J (unbounded).
    pub j: f64,
    /// Angle θ in `[0, 2π)`.
    pub theta: f64,
}

impl PhaseSpacePoint {
    pub fn new(j: f64, theta: f64) -> Self {
        PhaseSpacePoint {
            j,
            theta: theta.rem_euclid(TAU),
        }
    }

    /// J folded into `[0, 2π)`.
    pub fn folded_j(&self) -> f64 {
        self.j.rem_euclid(TAU)
    }
}

/// Maps ladder order `n`, quasimomentum `β` and position `x` to
/// `J = εn + πℓ + ƛβ`, `θ = x + π[1 − sgn ε]/2`.
pub fn to_pseudoclassical(n: i64, beta: f64, x: f64, p: &KickParams) -> Result<PhaseSpacePoint> {
    let eps = p.detuning;
    if eps == 0.0 {
        return Err(Error::invalid(
            "detuning",
            "the ε-classical map is undefined at ε = 0",
        ));
    }
    let j = eps * n as f64 + PI * p.resonance_order as f64 + p.scaled_period() * beta;
    let theta = if eps > 0.0 { x } else { x + PI };
    Ok(PhaseSpacePoint::new(j, theta))
}

/// One step: `J' = J + kε sin(θ + φ)`, `θ' = θ + J'`.
pub fn map_step(pt: PhaseSpacePoint, k_eps: f64, phi: f64) -> PhaseSpacePoint {
    let j = pt.j + k_eps * (pt.theta + phi).sin();
    PhaseSpacePoint::new(j, pt.theta + j)
}

/// Iterates `map_step` once per phase; the returned orbit starts with `start`.
pub fn orbit(start: PhaseSpacePoint, k_eps: f64, phases: &[f64]) -> Vec<PhaseSpacePoint> {
    let mut out = Vec::with_capacity(phases.len() + 1);
    let mut pt = start;
    out.push(pt);
    for &phi in phases {
        pt = map_step(pt, k_eps, phi);
        out.push(pt);
    }
    out
}

/// Iterate of a section, with both coordinates folded into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionPoint {
    pub seed: usize,
    pub step: usize,
    pub theta: f64,
    pub j: f64,
}

/// Uniform `side × side` grid of seeds over `[0, 2π)²`, cell-centred.
pub fn seed_grid(side: usize) -> Vec<PhaseSpacePoint> {
    let h = TAU / side as f64;
    (0..side)
        .flat_map(|a| {
            (0..side).map(move |b| PhaseSpacePoint::new((a as f64 + 0.5) * h, (b as f64 + 0.5) * h))
        })
        .collect()
}

/// Section parameters; the defaults are a 40 × 40 seed grid iterated 500 steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionParams {
    pub k_eps: f64,
    pub alpha: f64,
    pub ratio: f64,
    pub phase0: f64,
    pub steps: usize,
}

pub const DEFAULT_SECTION_GRID: usize = 40;
pub const DEFAULT_SECTION_STEPS: usize = 500;

/// All iterates (including the seeds themselves) of every seed, ordered by
/// seed then step.
pub fn poincare_section(
    params: &SectionParams,
    seeds: &[PhaseSpacePoint],
) -> Result<Vec<SectionPoint>> {
    if seeds.is_empty() {
        return Err(Error::invalid("init_grid", "need at least one seed"));
    }
    if !(params.k_eps >= 0.0) {
        return Err(Error::invalid(
            "k_eps",
            "stochasticity must be non-negative",
        ));
    }
    let phases = modulation_phases(params.alpha, params.ratio, params.phase0, params.steps);
    let orbits: Vec<Vec<SectionPoint>> = seeds
        .par_iter()
        .enumerate()
        .map(|(seed, &start)| {
            orbit(start, params.k_eps, phases.phases())
                .into_iter()
                .enumerate()
                .map(|(step, pt)| SectionPoint {
                    seed,
                    step,
                    theta: pt.theta,
                    j: pt.folded_j(),
                })
                .collect()
        })
        .collect();
    Ok(orbits.into_iter().flatten().collect())
}

/// Extent of an orbit in unwrapped coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitExtent {
    /// `max θ − min θ` with θ unwrapped along the orbit.
    pub theta_excursion: f64,
    /// `max J − min J`.
    pub j_excursion: f64,
}

/// Iterates without reducing θ and reports the excursions. Librating orbits
/// inside a resonance island have `theta_excursion < 2π`.
pub fn orbit_extent(start: PhaseSpacePoint, k_eps: f64, phases: &[f64]) -> OrbitExtent {
    let (mut j, mut theta) = (start.j, start.theta);
    let (mut tmin, mut tmax, mut jmin, mut jmax) = (theta, theta, j, j);
    for &phi in phases {
        j += k_eps * (theta + phi).sin();
        theta += j;
        tmin = tmin.min(theta);
        tmax = tmax.max(theta);
        jmin = jmin.min(j);
        jmax = jmax.max(j);
    }
    OrbitExtent {
        theta_excursion: tmax - tmin,
        j_excursion: jmax - jmin,
    }
}
