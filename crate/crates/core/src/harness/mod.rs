//! Configuration, figure presets, parameter sweeps and CSV output.
//!
//! ```no_run
//! use kicked_rotor::harness::{preset, run, write_sweep};
//!
//! let fig10 = preset("fig10")?;
//! for cfg in &fig10.runs {
//!     let result = run(cfg)?;
//!     write_sweep(&result, &cfg.output_dir())?;
//! }
//! # Ok::<(), kicked_rotor::Error>(())
//! ```

mod config;
mod expr;
mod output;
mod presets;
mod run;

pub use config::{
    Axis, ExperimentConfig, FitConfig, GridConfig, InitialConfig, KickConfig, OutputConfig,
    Overrides, SectionConfig, SweepConfig,
};
pub use expr::{evaluate, ExactReal};
pub use output::{format_real, is_metadata_line, write_sections, write_sweep};
pub use presets::{list_presets, preset, presets, Preset};
pub use run::{
    config_hash, run, run_sections, run_with, Execution, PointResult, PointStatus, SweepResult,
    SweepRow,
};
