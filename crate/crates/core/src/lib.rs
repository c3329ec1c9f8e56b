//! Numerical laboratory for the phase-modulated quantum δ-kicked rotor.
//!
//! The crate is organised by task:
//!
//! * [`model`]: dimensionless kick parameters, laboratory-unit conversion and
//!   the phase sequence produced by sinusoidal modulation of the grating.
//! * [`spectral`]: Bessel-function spectrum of the modulated kick train,
//!   aliasing into the Nyquist band and the m-th order resonance profile.
//! * [`quantum`]: split-step Floquet propagation of momentum ladders and
//!   quasimomentum ensembles.
//! * [`pseudoclassical`]: the ε-classical map and Poincaré sections.
//! * [`diagnostics`]: energies, zero-momentum fractions and growth/localization fits.
//! * [`harness`]: configuration files, figure presets, sweeps and CSV output.
//!
//! ```
//! use kicked_rotor::model::KickParams;
//! use kicked_rotor::quantum::{evolve, InitialCondition};
//!
//! // Ten kicks exactly on the ℓ = 2 resonance grow ballistically: E = 2k²N².
//! let p = KickParams { kick_strength: 1.0, resonance_order: 2, kicks: 10, ..Default::default() };
//! let traj = evolve(&InitialCondition::PlaneWave { beta: 0.0 }, &p, 128).unwrap();
//! assert!((traj.energies[10] - 200.0).abs() < 1e-8);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod harness;
pub mod model;
pub mod pseudoclassical;
pub mod quantum;
pub mod spectral;

pub use error::{Error, Result};
