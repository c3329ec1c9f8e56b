//! Loads a TOML configuration, runs its sweep and writes CSV output.
//!
//! cargo run --example sweep_harness [-- OUT_DIR]

use kicked_rotor::harness::{run, write_sweep, ExperimentConfig};

const CONFIG: &str = r#"
name = "phase0_scan"

[kick]
k = 2
order = 1
alpha = "pi/2"
ratio = "1/2"
kicks = 10

[initial]
kind = "gaussian"
fwhm = 0.4
members = 32

[grid]
n_max = 256

[sweep]
axis = "phase0"
start = 0
stop = "2*pi"
step = "pi/8"
"#;

fn main() -> kicked_rotor::Result<()> {
    let mut cfg = ExperimentConfig::from_toml_str(CONFIG)?;
    if let Some(dir) = std::env::args().nth(1) {
        cfg.output.dir = Some(dir.into());
    }
    let result = run(&cfg)?;
    for row in result.rows() {
        println!(
            "phi0 = {:.4}: E = {:8.3}, p0 = {:.4}",
            row.axis_value, row.energy, row.p0_fraction
        );
    }
    let dir = cfg.output_dir();
    for path in write_sweep(&result, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
