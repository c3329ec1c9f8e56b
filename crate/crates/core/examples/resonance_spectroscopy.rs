//! Energy after 14 kicks at ƛ = 2π against modulation amplitude, next to the
//! Bessel-series resonance profile.
//!
//! cargo run --example resonance_spectroscopy

use std::f64::consts::TAU;

use kicked_rotor::model::KickParams;
use kicked_rotor::quantum::{evolve, InitialCondition};
use kicked_rotor::spectral::{default_profile_terms, resonance_energy_profile};

fn main() -> kicked_rotor::Result<()> {
    let ic = InitialCondition::GaussianEnsemble {
        sigma: 0.05,
        members: 32,
        seed: 0,
        sampling: Default::default(),
    };
    for (ratio, m) in [(0.5, 1), (0.25, 2)] {
        println!("r = {ratio} (order-{m} resonance)");
        println!("{:>8} {:>12} {:>12}", "alpha", "E/E_r", "profile");
        for i in 0..=12 {
            let alpha = TAU * i as f64 / 12.0;
            let p = KickParams {
                kick_strength: 2.0,
                resonance_order: 1,
                modulation_amplitude: alpha,
                frequency_ratio: ratio,
                kicks: 14,
                ..Default::default()
            };
            let e = *evolve(&ic, &p, 256)?.energies.last().unwrap();
            let profile = resonance_energy_profile(alpha, m, default_profile_terms(alpha, m))?;
            println!("{alpha:>8.4} {e:>12.3} {profile:>12.5}");
        }
    }
    Ok(())
}
