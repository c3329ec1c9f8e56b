//! ε-classical sections at k|ε| = 0.1 for increasing phase noise. Counts the
//! seeds whose angle librates inside the resonance island.
//!
//! cargo run --example poincare_sections

use std::f64::consts::{PI, TAU};

use kicked_rotor::model::modulation_phases;
use kicked_rotor::pseudoclassical::{orbit_extent, poincare_section, seed_grid, SectionParams};

fn main() -> kicked_rotor::Result<()> {
    let ratio = 3f64.sqrt() / 4.0;
    let seeds = seed_grid(40);
    for alpha in [0.0, PI / 18.0, PI / 6.0, PI / 3.0] {
        let params = SectionParams {
            k_eps: 0.1,
            alpha,
            ratio,
            phase0: 0.0,
            steps: 500,
        };
        let points = poincare_section(&params, &seeds)?;
        let phases = modulation_phases(alpha, ratio, 0.0, 1000);
        let librating = seeds
            .iter()
            .filter(|&&s| orbit_extent(s, 0.1, phases.phases()).theta_excursion < TAU)
            .count();
        println!(
            "alpha = {alpha:.4}: {} section points, {librating} of {} seeds librate",
            points.len(),
            seeds.len()
        );
    }
    Ok(())
}
