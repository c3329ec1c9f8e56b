//! Bessel spectrum of the modulated kick train and where its harmonics land
//! after aliasing into the Nyquist band.
//!
//! cargo run --example alias_spectrum

use std::f64::consts::PI;

use kicked_rotor::spectral::{
    alias_histogram, aliased_ratio, modulation_spectrum, resonance_frequencies,
};

fn main() -> kicked_rotor::Result<()> {
    let spectrum = modulation_spectrum(PI / 6.0, 6)?;
    println!("harmonic weights for alpha = pi/6:");
    for (kappa, w) in spectrum.iter().filter(|(k, _)| *k >= 0) {
        println!("  kappa = {kappa}: |c|^2 = {:.3e}", w.norm_sqr());
    }
    println!("total power {:.12}", spectrum.total_power());

    let resonances: Vec<String> = resonance_frequencies(2, 3)
        .iter()
        .map(|r| r.to_string())
        .collect();
    println!(
        "modulation resonances r = (2n+1)/2m: {}",
        resonances.join(", ")
    );

    for r in [0.5, 3f64.sqrt() / 4.0, 1.0 / PI] {
        let counts = alias_histogram(r, 400, 10)?;
        println!("r = {r:.4} (aliased {:.4}): {counts:?}", aliased_ratio(r));
    }
    Ok(())
}
