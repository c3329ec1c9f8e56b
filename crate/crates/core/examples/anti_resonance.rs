//! The ƛ = 2π anti-resonance and how phase modulation at r = 1/2 lifts it.
//!
//! cargo run --example anti_resonance

use std::f64::consts::{PI, TAU};

use kicked_rotor::model::KickParams;
use kicked_rotor::quantum::{apply_free, apply_kick, evolve, InitialCondition, LadderState};

fn main() -> kicked_rotor::Result<()> {
    let start = LadderState::rest(0.0, 64);
    let mut state = start.clone();
    for _ in 0..2 {
        state = apply_free(&apply_kick(&state, 2.0, 0.0)?, TAU);
    }
    println!(
        "fidelity with the initial state after two kicks: {:.15}",
        state.fidelity(&start)
    );

    let rest = InitialCondition::PlaneWave { beta: 0.0 };
    for (label, alpha, phase0) in [
        ("unmodulated", 0.0, 0.0),
        ("alpha = pi/2, phi0 = 0", PI / 2.0, 0.0),
        ("alpha = pi/2, phi0 = pi/2", PI / 2.0, PI / 2.0),
    ] {
        let p = KickParams {
            kick_strength: 2.0,
            resonance_order: 1,
            modulation_amplitude: alpha,
            frequency_ratio: 0.5,
            initial_phase: phase0,
            kicks: 10,
            ..Default::default()
        };
        let traj = evolve(&rest, &p, 256)?;
        let series: Vec<String> = traj.energies.iter().map(|e| format!("{e:.1}")).collect();
        println!("{label:<26} E = [{}]", series.join(", "));
    }
    Ok(())
}
