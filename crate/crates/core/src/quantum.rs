//! Split-step Floquet propagation on momentum ladders.
//!
//! A ladder holds the amplitudes `c_n` of momenta `p = n + β` (units of
//! 2ħk_L) for `n ∈ [-n_max, n_max]`. Kicks are applied in position space on
//! the conjugate grid of `2 n_max + 1` points over `[0, 2π)`; free evolution is
//! diagonal in momentum. A finite-width condensate is represented as an
//! incoherent ensemble of ladders with different quasimomenta.

use std::f64::consts::{LN_2, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal as NormalCdf};

use crate::diagnostics::MomentumDistribution;
use crate::error::{Error, Result};
use crate::model::{phase_sequence, KickParams};

/// Default half-width of the momentum ladder.
pub const DEFAULT_N_MAX: usize = 2048;
/// Smallest ladder accepted by [`init_state`].
pub const MIN_N_MAX: usize = 8;
/// Edge occupation above which the grid is considered inadequate.
pub const EDGE_TOLERANCE: f64 = 1e-8;
/// Largest probability mass allowed outside `|β| < 1/2` for a Gaussian ensemble.
pub const MAX_FOLDED_MASS: f64 = 1e-3;

/// Momentum width (in units of ħk_L) of a Gaussian with the given FWHM.
pub fn sigma_from_fwhm(fwhm: f64) -> f64 {
    fwhm / (2.0 * (2.0 * LN_2).sqrt())
}

/// Amplitudes on the ladder `n + β`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderState {
    beta: f64,
    n_max: usize,
    // FFT ordering: slot j holds n = j for j <= n_max, n = j - len otherwise.
    amps: Vec<Complex64>,
}

impl LadderState {
    /// All population in order `n0`.
    pub fn at_order(beta: f64, n_max: usize, n0: i64) -> Self {
        let mut s = LadderState {
            beta,
            n_max,
            amps: vec![Complex64::new(0.0, 0.0); 2 * n_max + 1],
        };
        let slot = s.slot(n0).expect("initial order inside the ladder");
        s.amps[slot] = Complex64::new(1.0, 0.0);
        s
    }

    /// Rest state `c_0 = 1`.
    pub fn rest(beta: f64, n_max: usize) -> Self {
        Self::at_order(beta, n_max, 0)
    }

    /// Builds a state from amplitudes listed for `n = -n_max..=n_max`.
    pub fn from_amplitudes(beta: f64, amplitudes: &[Complex64]) -> Result<Self> {
        if amplitudes.len().is_multiple_of(2) {
            return Err(Error::invalid(
                "amplitudes",
                "expected an odd number of orders",
            ));
        }
        let n_max = amplitudes.len() / 2;
        let mut s = LadderState {
            beta,
            n_max,
            amps: vec![Complex64::new(0.0, 0.0); amplitudes.len()],
        };
        for (i, a) in amplitudes.iter().enumerate() {
            let slot = s.slot(i as i64 - n_max as i64).unwrap();
            s.amps[slot] = *a;
        }
        Ok(s)
    }

    fn len(&self) -> usize {
        self.amps.len()
    }

    fn slot(&self, n: i64) -> Option<usize> {
        if n.unsigned_abs() as usize > self.n_max {
            return None;
        }
        Some(n.rem_euclid(self.len() as i64) as usize)
    }

    fn order_of_slot(&self, j: usize) -> i64 {
        if j <= self.n_max {
            j as i64
        } else {
            j as i64 - self.len() as i64
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn amplitude(&self, n: i64) -> Complex64 {
        self.slot(n)
            .map(|j| self.amps[j])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Amplitudes for `n = -n_max..=n_max`.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        (-(self.n_max as i64)..=self.n_max as i64)
            .map(|n| self.amplitude(n))
            .collect()
    }

    /// `(n, |c_n|²)` in FFT slot order.
    pub fn populations(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(j, c)| (self.order_of_slot(j), c.norm_sqr()))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Larger of the two outermost populations.
    pub fn edge_occupation(&self) -> f64 {
        let n = self.n_max as i64;
        self.amplitude(n)
            .norm_sqr()
            .max(self.amplitude(-n).norm_sqr())
    }

    /// `E/E_r = 4 Σ |c_n|² (n + β)²`.
    pub fn energy(&self) -> f64 {
        4.0 * self
            .populations()
            .map(|(n, w)| {
                let p = n as f64 + self.beta;
                w * p * p
            })
            .sum::<f64>()
    }

    /// Population with `|n + β| < 1/2`.
    pub fn zero_momentum_fraction(&self) -> f64 {
        self.populations()
            .filter(|(n, _)| (*n as f64 + self.beta).abs() < 0.5)
            .map(|(_, w)| w)
            .sum()
    }

    /// `|⟨self|other⟩|²`; zero if the ladders differ.
    pub fn fidelity(&self, other: &LadderState) -> f64 {
        if self.n_max != other.n_max || self.beta != other.beta {
            return 0.0;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }

    fn guard(&self, kick: usize) -> Result<()> {
        let edge = self.edge_occupation();
        if edge >= EDGE_TOLERANCE || !edge.is_finite() {
            return Err(Error::GridInadequate {
                n_max: self.n_max,
                kick,
                edge_occupation: edge,
            });
        }
        Ok(())
    }
}

/// Multiplicative factors `exp(-iƛ(n+β)²/2)` for `ƛ = 2πℓ + ε`, in slot order.
///
/// The `πℓn²` part is applied as the exact sign `(-1)^{ℓn}` so that
/// resonant free evolution rephases without rounding.
pub fn free_factors(order: i64, detuning: f64, beta: f64, n_max: usize) -> Vec<Complex64> {
    let len = 2 * n_max + 1;
    let hbar = TAU * order as f64 + detuning;
    (0..len)
        .map(|j| {
            let n = if j <= n_max {
                j as i64
            } else {
                j as i64 - len as i64
            };
            let nf = n as f64;
            let phase = detuning * nf * nf / 2.0 + hbar * (2.0 * nf * beta + beta * beta) / 2.0;
            let sign = if (order * n).rem_euclid(2) == 1 {
                -1.0
            } else {
                1.0
            };
            Complex64::from_polar(sign, -phase)
        })
        .collect()
}

/// FFT plans and position grid for one ladder size.
#[derive(Clone)]
pub struct Propagator {
    n_max: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    cos_x: Vec<f64>,
    sin_x: Vec<f64>,
    scratch: Vec<Complex64>,
}

impl std::fmt::Debug for Propagator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Propagator")
            .field("n_max", &self.n_max)
            .finish()
    }
}

impl Propagator {
    pub fn new(n_max: usize) -> Self {
        let len = 2 * n_max + 1;
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        let (sin_x, cos_x) = (0..len)
            .map(|j| (TAU * j as f64 / len as f64).sin_cos())
            .unzip();
        Propagator {
            n_max,
            forward,
            inverse,
            cos_x,
            sin_x,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Multiplies the wavefunction by `exp[-ik cos(x + φ)]` in position space.
    pub fn kick(&mut self, state: &mut LadderState, k: f64, phi: f64) {
        assert_eq!(state.n_max, self.n_max, "ladder size mismatch");
        if k == 0.0 {
            return;
        }
        let (sp, cp) = phi.sin_cos();
        self.inverse
            .process_with_scratch(&mut state.amps, &mut self.scratch);
        let scale = 1.0 / state.amps.len() as f64;
        for ((c, cx), sx) in state.amps.iter_mut().zip(&self.cos_x).zip(&self.sin_x) {
            let arg = -k * (cx * cp - sx * sp);
            *c *= Complex64::from_polar(scale, arg);
        }
        self.forward
            .process_with_scratch(&mut state.amps, &mut self.scratch);
    }
}

/// One kick of strength `k` with grating phase `φ`, checked against the grid guard.
pub fn apply_kick(state: &LadderState, k: f64, phi: f64) -> Result<LadderState> {
    let mut out = state.clone();
    Propagator::new(state.n_max).kick(&mut out, k, phi);
    out.guard(1)?;
    Ok(out)
}

/// Free evolution over one period of scaled length `ƛ`.
pub fn apply_free(state: &LadderState, scaled_period: f64) -> LadderState {
    let order = (scaled_period / TAU).round() as i64;
    let eps = scaled_period - TAU * order as f64;
    let factors = free_factors(order, eps, state.beta, state.n_max);
    let mut out = state.clone();
    for (c, f) in out.amps.iter_mut().zip(&factors) {
        *c *= f;
    }
    out
}

/// How ensemble quasimomenta are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// Equal-weight members at the quantile midpoints of the Gaussian.
    #[default]
    Stratified,
    /// Independent draws from a seeded generator.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    PlaneWave {
        beta: f64,
    },
    /// Gaussian momentum distribution of standard deviation `sigma` (units of ħk_L).
    GaussianEnsemble {
        sigma: f64,
        members: usize,
        seed: u64,
        sampling: Sampling,
    },
}

impl InitialCondition {
    /// Stratified ensemble with the given momentum FWHM (units of ħk_L).
    pub fn from_fwhm(fwhm: f64, members: usize) -> Self {
        InitialCondition::GaussianEnsemble {
            sigma: sigma_from_fwhm(fwhm),
            members,
            seed: 0,
            sampling: Sampling::Stratified,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InitialCondition::PlaneWave { beta } => {
                if !(-0.5..0.5).contains(&beta) {
                    return Err(Error::invalid(
                        "beta",
                        format!("must lie in [-1/2, 1/2), got {beta}"),
                    ));
                }
            }
            InitialCondition::GaussianEnsemble { sigma, members, .. } => {
                if !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::invalid("sigma", "must be positive and finite"));
                }
                if members == 0 {
                    return Err(Error::invalid(
                        "members",
                        "need at least one ensemble member",
                    ));
                }
                let outside = 2.0 * NormalCdf::new(0.0, sigma / 2.0).unwrap().sf(0.5);
                if outside > MAX_FOLDED_MASS {
                    return Err(Error::invalid(
                        "sigma",
                        format!(
                            "σ = {sigma} p_r puts {outside:.2e} of the mass at |β| ≥ 1/2; quasimomentum ensemble not meaningful"
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Weighted ensemble member.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub weight: f64,
    pub state: LadderState,
}

/// Ensemble of ladders representing `ic`.
pub fn init_state(ic: &InitialCondition, n_max: usize) -> Result<Vec<Member>> {
    if n_max < MIN_N_MAX {
        return Err(Error::invalid(
            "n_max",
            format!("must be at least {MIN_N_MAX}, got {n_max}"),
        ));
    }
    ic.validate()?;
    let members = match *ic {
        InitialCondition::PlaneWave { beta } => vec![Member {
            weight: 1.0,
            state: LadderState::rest(beta, n_max),
        }],
        InitialCondition::GaussianEnsemble {
            sigma,
            members,
            seed,
            sampling,
        } => {
            let sigma_beta = sigma / 2.0;
            let momenta: Vec<f64> = match sampling {
                Sampling::Stratified => {
                    let dist = NormalCdf::new(0.0, sigma_beta).unwrap();
                    (0..members)
                        .map(|i| dist.inverse_cdf((i as f64 + 0.5) / members as f64))
                        .collect()
                }
                Sampling::Random => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let dist = Normal::new(0.0, sigma_beta).unwrap();
                    (0..members).map(|_| dist.sample(&mut rng)).collect()
                }
            };
            let weight = 1.0 / members as f64;
            momenta
                .into_iter()
                .map(|p| {
                    let mut n0 = p.round() as i64;
                    let mut beta = p - n0 as f64;
                    if beta >= 0.5 {
                        beta -= 1.0;
                        n0 += 1;
                    }
                    if n0.unsigned_abs() as usize > n_max / 2 {
                        return Err(Error::invalid(
                            "sigma",
                            format!("sampled momentum {p} is off the ladder"),
                        ));
                    }
                    Ok(Member {
                        weight,
                        state: LadderState::at_order(beta, n_max, n0),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(members)
}

/// Ensemble-averaged observables recorded before the first kick and after
/// every Floquet step.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub energies: Vec<f64>,
    pub p0_fractions: Vec<f64>,
    pub final_distribution: MomentumDistribution,
    /// Distributions recorded after selected kicks, in increasing kick order.
    pub snapshots: Vec<(usize, MomentumDistribution)>,
    /// Ladder half-width actually used (after any escalation).
    pub n_max: usize,
}

impl Trajectory {
    pub fn kicks(&self) -> usize {
        self.energies.len() - 1
    }

    pub fn snapshot(&self, kick: usize) -> Option<&MomentumDistribution> {
        if kick == self.kicks() {
            return Some(&self.final_distribution);
        }
        self.snapshots
            .iter()
            .find(|(k, _)| *k == kick)
            .map(|(_, d)| d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveOptions {
    pub n_max: usize,
    /// Largest ladder the guard may escalate to by doubling; `n_max` disables escalation.
    pub max_n_max: usize,
    /// Kicks after which the momentum distribution is recorded.
    pub snapshot_kicks: Vec<usize>,
}

impl EvolveOptions {
    pub fn fixed(n_max: usize) -> Self {
        EvolveOptions {
            n_max,
            max_n_max: n_max,
            snapshot_kicks: Vec::new(),
        }
    }
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            n_max: DEFAULT_N_MAX,
            max_n_max: 4 * DEFAULT_N_MAX,
            snapshot_kicks: Vec::new(),
        }
    }
}

struct MemberRun {
    energies: Vec<f64>,
    p0: Vec<f64>,
    snapshots: Vec<LadderState>,
    last: LadderState,
}

fn run_member(
    prop: &mut Propagator,
    mut state: LadderState,
    p: &KickParams,
    phases: &[f64],
    snapshot_kicks: &[usize],
) -> Result<MemberRun> {
    let free = free_factors(p.resonance_order, p.detuning, state.beta, state.n_max);
    let mut energies = Vec::with_capacity(phases.len() + 1);
    let mut p0 = Vec::with_capacity(phases.len() + 1);
    let mut snapshots = Vec::with_capacity(snapshot_kicks.len());
    energies.push(state.energy());
    p0.push(state.zero_momentum_fraction());
    for (i, &phi) in phases.iter().enumerate() {
        prop.kick(&mut state, p.kick_strength, phi);
        for (c, f) in state.amps.iter_mut().zip(&free) {
            *c *= f;
        }
        let kick = i + 1;
        state.guard(kick)?;
        energies.push(state.energy());
        p0.push(state.zero_momentum_fraction());
        if snapshot_kicks.contains(&kick) && kick != phases.len() {
            snapshots.push(state.clone());
        }
    }
    Ok(MemberRun {
        energies,
        p0,
        snapshots,
        last: state,
    })
}

fn distribution_of(members: &[(f64, &LadderState)]) -> MomentumDistribution {
    let mut points = Vec::new();
    for (w, s) in members {
        for (n, pop) in s.populations() {
            if pop > 0.0 {
                points.push((n as f64 + s.beta, w * pop));
            }
        }
    }
    MomentumDistribution::from_points(points)
}

fn evolve_fixed(
    members: Vec<Member>,
    p: &KickParams,
    n_max: usize,
    snapshot_kicks: &[usize],
) -> Result<Trajectory> {
    let phases = phase_sequence(p);
    let proto = Propagator::new(n_max);
    let runs: Vec<Result<MemberRun>> = members
        .par_iter()
        .map_init(
            || proto.clone(),
            |prop, m| run_member(prop, m.state.clone(), p, phases.phases(), snapshot_kicks),
        )
        .collect();
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;

    let len = p.kicks + 1;
    let mut energies = vec![0.0; len];
    let mut p0_fractions = vec![0.0; len];
    for (m, run) in members.iter().zip(&runs) {
        for t in 0..len {
            energies[t] += m.weight * run.energies[t];
            p0_fractions[t] += m.weight * run.p0[t];
        }
    }
    let final_distribution = distribution_of(
        &members
            .iter()
            .zip(&runs)
            .map(|(m, r)| (m.weight, &r.last))
            .collect::<Vec<_>>(),
    );
    let mut kicks: Vec<usize> = snapshot_kicks
        .iter()
        .copied()
        .filter(|&k| k >= 1 && k < p.kicks)
        .collect();
    kicks.sort_unstable();
    kicks.dedup();
    let snapshots = kicks
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let at: Vec<(f64, &LadderState)> = members
                .iter()
                .zip(&runs)
                .map(|(m, r)| (m.weight, &r.snapshots[i]))
                .collect();
            (k, distribution_of(&at))
        })
        .collect();
    Ok(Trajectory {
        energies,
        p0_fractions,
        final_distribution,
        snapshots,
        n_max,
    })
}

/// Applies `p.kicks` Floquet steps `F = F_free F_kick` to every member of `ic`.
pub fn evolve(ic: &InitialCondition, p: &KickParams, n_max: usize) -> Result<Trajectory> {
    evolve_with(ic, p, &EvolveOptions::fixed(n_max))
}

/// [`evolve`] with snapshots and automatic doubling of the ladder when the
/// edge guard trips.
pub fn evolve_with(
    ic: &InitialCondition,
    p: &KickParams,
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    p.validate()?;
    let mut snapshot_kicks = opts.snapshot_kicks.clone();
    snapshot_kicks.sort_unstable();
    snapshot_kicks.dedup();
    let mut n_max = opts.n_max;
    loop {
        let members = init_state(ic, n_max)?;
        match evolve_fixed(members, p, n_max, &snapshot_kicks) {
            Err(Error::GridInadequate { .. }) if n_max * 2 <= opts.max_n_max => n_max *= 2,
            other => return other,
        }
    }
}

/// Ensemble-averaged `|φ(p)|²` binned at `bins_per_unit` bins per unit of
/// momentum (bin centres at multiples of `1/bins_per_unit`), normalized to unit sum.
pub fn momentum_distribution(traj: &Trajectory, bins_per_unit: usize) -> MomentumDistribution {
    traj.final_distribution.histogram(bins_per_unit)
}
