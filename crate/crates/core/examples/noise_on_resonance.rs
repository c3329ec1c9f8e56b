//! Quasimomentum ensembles on the ℓ = 2 resonance grow linearly for every
//! level of phase noise.
//!
//! cargo run --release --example noise_on_resonance

use std::f64::consts::PI;

use kicked_rotor::diagnostics::{diffusion_constant, fit_power_law};
use kicked_rotor::model::KickParams;
use kicked_rotor::quantum::{evolve, InitialCondition};

fn main() -> kicked_rotor::Result<()> {
    let ic = InitialCondition::from_fwhm(0.4, 256);
    for alpha in [0.0, PI / 6.0, PI / 3.0] {
        let p = KickParams {
            kick_strength: 2.0,
            resonance_order: 2,
            modulation_amplitude: alpha,
            frequency_ratio: 3f64.sqrt() / 4.0,
            kicks: 150,
            ..Default::default()
        };
        let traj = evolve(&ic, &p, 1024)?;
        let q = fit_power_law(&traj.energies, 15..151)?;
        let d = diffusion_constant(&traj.energies, 15..151)?;
        println!(
            "alpha = {alpha:.4}: E(150) = {:8.1}, q = {:.3}, D = {:.2} recoils/kick",
            traj.energies[150], q.value, d.value
        );
    }
    Ok(())
}
