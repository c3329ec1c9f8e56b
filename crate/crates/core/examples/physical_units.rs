//! Converting laboratory settings for ⁸⁷Rb at 780 nm to scaled parameters.
//!
//! cargo run --example physical_units

use kicked_rotor::model::{
    pulse_period_for, scaled_params, talbot_time, PhysicalParams, RB87_D2_WAVELENGTH, RB87_MASS,
};

fn main() -> kicked_rotor::Result<()> {
    let talbot = talbot_time(RB87_D2_WAVELENGTH, RB87_MASS);
    println!("Talbot time: {:.2} us", talbot * 1e6);
    for period in [
        talbot / 2.0,
        talbot,
        talbot * (1.0 + 0.4 / (4.0 * std::f64::consts::PI)),
    ] {
        let phys = PhysicalParams {
            wavelength: RB87_D2_WAVELENGTH,
            atomic_mass: RB87_MASS,
            pulse_period: period,
            pulse_duration: 300e-9,
            detuning: 2.0 * std::f64::consts::PI * 6.8e9,
            rabi_frequency: 2.0 * std::f64::consts::PI * 170e6,
        };
        let s = scaled_params(&phys)?;
        println!(
            "T = {:6.2} us -> k = {:.3}, scaled period = {:.4}, l = {}, eps = {:+.4}",
            period * 1e6,
            s.kick_strength,
            s.scaled_period,
            s.resonance_order,
            s.detuning
        );
    }
    let back = pulse_period_for(4.0 * std::f64::consts::PI, RB87_D2_WAVELENGTH, RB87_MASS);
    println!("pulse period for scaled period 4pi: {:.2} us", back * 1e6);
    Ok(())
}
