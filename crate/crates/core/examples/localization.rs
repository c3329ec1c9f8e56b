//! Dynamical localization off resonance and its destruction by phase noise.
//!
//! cargo run --release --example localization

use std::f64::consts::PI;

use kicked_rotor::diagnostics::{fit_power_law, localization_fit};
use kicked_rotor::model::KickParams;
use kicked_rotor::quantum::{evolve_with, EvolveOptions, InitialCondition};

fn main() -> kicked_rotor::Result<()> {
    let ic = InitialCondition::from_fwhm(0.4, 64);
    let opts = EvolveOptions {
        n_max: 512,
        max_n_max: 2048,
        snapshot_kicks: vec![70],
    };
    for alpha in [0.0, PI / 12.0, PI / 6.0] {
        let p = KickParams {
            kick_strength: 3.0,
            resonance_order: 2,
            detuning: 0.4,
            modulation_amplitude: alpha,
            frequency_ratio: 3f64.sqrt() / 4.0,
            kicks: 300,
            ..Default::default()
        };
        let traj = evolve_with(&ic, &p, &opts)?;
        let q = fit_power_law(&traj.energies, 70..301)?;
        let fit = localization_fit(traj.snapshot(70).unwrap())?;
        println!(
            "alpha = {alpha:.4}: E(70) = {:7.2}, E(300) = {:7.2}, q = {:.3}, xi = {:.2} (R^2 = {:.4})",
            traj.energies[70], traj.energies[300], q.value, fit.value, fit.r_squared
        );
    }
    Ok(())
}
