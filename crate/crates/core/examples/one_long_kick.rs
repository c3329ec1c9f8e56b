//! On the ℓ = 2 resonance the modulated kick train acts as a single kick of
//! strength k|Σ exp(iφ_n)|.
//!
//! cargo run --example one_long_kick

use std::f64::consts::PI;

use kicked_rotor::model::{effective_kick_strength, phase_sequence, KickParams};
use kicked_rotor::quantum::{evolve, InitialCondition};

fn main() -> kicked_rotor::Result<()> {
    for alpha in [0.0, PI / 6.0, PI / 3.0, 2.0 * PI / 3.0] {
        let p = KickParams {
            kick_strength: 1.0,
            resonance_order: 2,
            modulation_amplitude: alpha,
            frequency_ratio: 3f64.sqrt() / 4.0,
            kicks: 50,
            ..Default::default()
        };
        let k_eff = effective_kick_strength(&phase_sequence(&p));
        let e = *evolve(&InitialCondition::PlaneWave { beta: 0.0 }, &p, 256)?
            .energies
            .last()
            .unwrap();
        println!(
            "alpha = {alpha:.4}: k_eff = {k_eff:8.4}, E = {e:10.4}, 2 k_eff^2 = {:10.4}",
            2.0 * k_eff * k_eff
        );
    }
    Ok(())
}
