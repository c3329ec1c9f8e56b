//! Experiment configuration files.
//!
//! A configuration is a TOML document with one table per concern:
//!
//! ```toml
//! name = "localization"
//!
//! [kick]
//! k = 3
//! order = 2
//! detuning = 0.4
//! alpha = "pi/6"
//! ratio = "sqrt(3)/4"
//! kicks = 300
//!
//! [initial]
//! kind = "gaussian"
//! fwhm = 0.4
//! members = 64
//!
//! [grid]
//! n_max = 1024
//!
//! [sweep]
//! axis = "alpha"
//! values = [0, "pi/12", "pi/6"]
//!
//! [output]
//! snapshots = [70]
//! ```
//!
//! Real-valued fields accept numbers or expressions (see [`ExactReal`]).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::expr::ExactReal;
use crate::error::{Error, Result};
use crate::model::KickParams;
use crate::pseudoclassical::{SectionParams, DEFAULT_SECTION_GRID, DEFAULT_SECTION_STEPS};
use crate::quantum::{sigma_from_fwhm, EvolveOptions, InitialCondition, Sampling, DEFAULT_N_MAX};

fn zero() -> ExactReal {
    ExactReal::from(0.0)
}

fn is_zero(x: &ExactReal) -> bool {
    x.value() == 0.0
}

fn default_members() -> usize {
    64
}

fn default_n_max() -> usize {
    DEFAULT_N_MAX
}

fn default_max_n_max() -> usize {
    4 * DEFAULT_N_MAX
}

fn default_bins() -> usize {
    1
}

fn default_true() -> bool {
    true
}

fn default_grid_side() -> usize {
    DEFAULT_SECTION_GRID
}

fn default_steps() -> usize {
    DEFAULT_SECTION_STEPS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Used as the stem of every output file.
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub kick: KickConfig,
    pub initial: InitialConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub fits: FitConfig,
    /// ε-classical sections; only produced by the `poincare` command.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<SectionConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KickConfig {
    /// Kick strength k.
    pub k: ExactReal,
    /// Resonance order ℓ.
    pub order: i64,
    /// Detuning ε.
    #[serde(default = "zero", skip_serializing_if = "is_zero")]
    pub detuning: ExactReal,
    /// Modulation amplitude α.
    #[serde(default = "zero", skip_serializing_if = "is_zero")]
    pub alpha: ExactReal,
    /// Frequency ratio r.
    #[serde(default = "zero", skip_serializing_if = "is_zero")]
    pub ratio: ExactReal,
    /// Initial modulation phase φ₀.
    #[serde(default = "zero", skip_serializing_if = "is_zero")]
    pub phase0: ExactReal,
    /// Number of kicks N.
    pub kicks: usize,
}

impl KickConfig {
    pub fn params(&self) -> KickParams {
        KickParams {
            kick_strength: self.k.value(),
            resonance_order: self.order,
            detuning: self.detuning.value(),
            modulation_amplitude: self.alpha.value(),
            frequency_ratio: self.ratio.value(),
            initial_phase: self.phase0.value(),
            kicks: self.kicks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialConfig {
    PlaneWave {
        #[serde(default = "zero")]
        beta: ExactReal,
    },
    /// Gaussian momentum distribution given by either `sigma` or `fwhm`
    /// (units of ħk_L).
    Gaussian {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<ExactReal>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fwhm: Option<ExactReal>,
        #[serde(default = "default_members")]
        members: usize,
        #[serde(default)]
        sampling: Sampling,
        #[serde(default)]
        seed: u64,
    },
}

impl InitialConfig {
    /// Stratified Gaussian ensemble with the given FWHM expression.
    pub fn gaussian_fwhm(fwhm: impl Into<ExactReal>, members: usize) -> Self {
        InitialConfig::Gaussian {
            sigma: None,
            fwhm: Some(fwhm.into()),
            members,
            sampling: Sampling::Stratified,
            seed: 0,
        }
    }

    /// Stratified Gaussian ensemble with the given standard deviation.
    pub fn gaussian_sigma(sigma: impl Into<ExactReal>, members: usize) -> Self {
        InitialConfig::Gaussian {
            sigma: Some(sigma.into()),
            fwhm: None,
            members,
            sampling: Sampling::Stratified,
            seed: 0,
        }
    }

    pub fn condition(&self) -> Result<InitialCondition> {
        match self {
            InitialConfig::PlaneWave { beta } => {
                Ok(InitialCondition::PlaneWave { beta: beta.value() })
            }
            InitialConfig::Gaussian {
                sigma,
                fwhm,
                members,
                sampling,
                seed,
            } => {
                let sigma = match (sigma, fwhm) {
                    (Some(s), None) => s.value(),
                    (None, Some(f)) => sigma_from_fwhm(f.value()),
                    (None, None) => {
                        return Err(Error::config("initial", "give one of `sigma` or `fwhm`"))
                    }
                    (Some(_), Some(_)) => {
                        return Err(Error::config(
                            "initial.fwhm",
                            "`sigma` and `fwhm` are mutually exclusive",
                        ))
                    }
                };
                Ok(InitialCondition::GaussianEnsemble {
                    sigma,
                    members: *members,
                    seed: *seed,
                    sampling: *sampling,
                })
            }
        }
    }

    fn set_seed(&mut self, value: u64) {
        if let InitialConfig::Gaussian { seed, .. } = self {
            *seed = value;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Ladder half-width: orders `-n_max..=n_max` are represented.
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Largest half-width the edge guard may escalate to.
    #[serde(default = "default_max_n_max")]
    pub max_n_max: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n_max: default_n_max(),
            max_n_max: default_max_n_max(),
        }
    }
}

impl GridConfig {
    pub fn fixed(n_max: usize) -> Self {
        GridConfig {
            n_max,
            max_n_max: n_max,
        }
    }
}

/// Parameter scanned by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Alpha,
    #[serde(alias = "r")]
    Ratio,
    #[serde(alias = "epsilon")]
    Detuning,
    #[serde(alias = "phi0")]
    Phase0,
    #[serde(alias = "n")]
    Kicks,
}

impl Axis {
    /// Column name used in CSV output.
    pub fn column(self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::Ratio => "ratio",
            Axis::Detuning => "detuning",
            Axis::Phase0 => "phase0",
            Axis::Kicks => "kicks",
        }
    }

    /// Sets this parameter of `p` to `value`; kick counts are rounded.
    pub fn apply(self, p: &mut KickParams, value: f64) {
        match self {
            Axis::Alpha => p.modulation_amplitude = value,
            Axis::Ratio => p.frequency_ratio = value,
            Axis::Detuning => p.detuning = value,
            Axis::Phase0 => p.initial_phase = value,
            Axis::Kicks => p.kicks = value.round().max(0.0) as usize,
        }
    }
}

/// Either an explicit list of values or an inclusive `start..=stop` range with `step`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<ExactReal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<ExactReal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<ExactReal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<ExactReal>>,
}

impl SweepConfig {
    pub fn range(
        axis: Axis,
        start: impl Into<ExactReal>,
        stop: impl Into<ExactReal>,
        step: impl Into<ExactReal>,
    ) -> Self {
        SweepConfig {
            axis,
            start: Some(start.into()),
            stop: Some(stop.into()),
            step: Some(step.into()),
            values: None,
        }
    }

    pub fn list<T: Into<ExactReal>>(axis: Axis, values: impl IntoIterator<Item = T>) -> Self {
        SweepConfig {
            axis,
            start: None,
            stop: None,
            step: None,
            values: Some(values.into_iter().map(Into::into).collect()),
        }
    }

    /// Sweep values in order. Ranges include `stop` when it lies on the grid
    /// up to a relative rounding tolerance.
    pub fn points(&self) -> Result<Vec<f64>> {
        match (&self.values, &self.start, &self.stop, &self.step) {
            (Some(v), None, None, None) => {
                if v.is_empty() {
                    return Err(Error::config("sweep.values", "must not be empty"));
                }
                Ok(v.iter().map(ExactReal::value).collect())
            }
            (None, Some(a), Some(b), Some(h)) => {
                let (a, b, h) = (a.value(), b.value(), h.value());
                if !(h > 0.0) {
                    return Err(Error::config("sweep.step", "must be positive"));
                }
                if b < a {
                    return Err(Error::config("sweep.stop", "must not be below `start`"));
                }
                let count = ((b - a) / h * (1.0 + 1e-9) + 1e-9).floor() as usize + 1;
                if count > 1_000_000 {
                    return Err(Error::config(
                        "sweep.step",
                        format!("{count} points is too many"),
                    ));
                }
                Ok((0..count).map(|i| a + i as f64 * h).collect())
            }
            _ => Err(Error::config(
                "sweep",
                "give either `values` or all of `start`, `stop` and `step`",
            )),
        }
    }

    fn field_path(&self) -> &'static str {
        if self.values.is_some() {
            "sweep.values"
        } else {
            "sweep.stop"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Output directory; falls back to `KRLAB_OUT_DIR`, then `krlab-out`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    /// Kicks after which momentum distributions are written, besides the last.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub snapshots: Vec<usize>,
    /// Histogram resolution of distribution files.
    #[serde(default = "default_bins")]
    pub bins_per_unit: usize,
    /// Write the per-kick energy series.
    #[serde(default = "default_true")]
    pub series: bool,
    /// Write momentum distribution files.
    #[serde(default = "default_true")]
    pub distributions: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: None,
            snapshots: Vec::new(),
            bins_per_unit: default_bins(),
            series: true,
            distributions: true,
        }
    }
}

/// Fit windows as half-open kick ranges `[start, end)`; omitted windows use
/// the last two-thirds of the series.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_law: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diffusion: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionConfig {
    /// Stochasticity k|ε|.
    pub k_eps: ExactReal,
    #[serde(default = "zero")]
    pub alpha: ExactReal,
    #[serde(default = "zero")]
    pub ratio: ExactReal,
    #[serde(default = "zero")]
    pub phase0: ExactReal,
    #[serde(default = "default_steps")]
    pub steps: usize,
    /// Seeds form a `grid × grid` lattice over the torus.
    #[serde(default = "default_grid_side")]
    pub grid: usize,
}

impl SectionConfig {
    pub fn params(&self) -> SectionParams {
        SectionParams {
            k_eps: self.k_eps.value(),
            alpha: self.alpha.value(),
            ratio: self.ratio.value(),
            phase0: self.phase0.value(),
            steps: self.steps,
        }
    }
}

/// Command-line style overrides applied on top of a configuration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub n_max: Option<usize>,
    pub kicks: Option<usize>,
}

fn kick_field_path(field: &str) -> &'static str {
    match field {
        "kick_strength" => "kick.k",
        "resonance_order" => "kick.order",
        "detuning" => "kick.detuning",
        "modulation_amplitude" => "kick.alpha",
        "frequency_ratio" => "kick.ratio",
        "initial_phase" => "kick.phase0",
        "kicks" => "kick.kicks",
        _ => "kick",
    }
}

fn initial_field_path(field: &str) -> String {
    format!("initial.{field}")
}

impl ExperimentConfig {
    /// Parses TOML; errors carry the dotted path of the offending field.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let de = toml::Deserializer::parse(text)
            .map_err(|e| Error::config("<document>", e.message()))?;
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let message = e.inner().message().to_string();
            Error::config(
                if path == "." {
                    "<document>".into()
                } else {
                    path
                },
                message,
            )
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config {
                path: field,
                message,
            } => Error::config(field, format!("{message} (in {})", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration serializes to TOML")
    }

    /// Kick parameters at each sweep point (a single point without a sweep).
    pub fn points(&self) -> Result<Vec<(f64, KickParams)>> {
        let base = self.kick.params();
        match &self.sweep {
            None => Ok(vec![(0.0, base)]),
            Some(sweep) => Ok(sweep
                .points()?
                .into_iter()
                .map(|v| {
                    let mut p = base;
                    sweep.axis.apply(&mut p, v);
                    (v, p)
                })
                .collect()),
        }
    }

    pub fn evolve_options(&self) -> EvolveOptions {
        EvolveOptions {
            n_max: self.grid.n_max,
            max_n_max: self.grid.max_n_max.max(self.grid.n_max),
            snapshot_kicks: self.output.snapshots.clone(),
        }
    }

    /// Checks every field and every sweep point; errors name the dotted field path.
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        {
            return Err(Error::config(
                "name",
                "use ASCII letters, digits, `_`, `-` or `.`",
            ));
        }
        self.kick.params().validate().map_err(|e| match e {
            Error::InvalidParameter { field, reason } => {
                Error::config(kick_field_path(field), reason)
            }
            other => other,
        })?;
        self.initial.condition()?.validate().map_err(|e| match e {
            Error::InvalidParameter { field, reason } => {
                Error::config(initial_field_path(field), reason)
            }
            other => other,
        })?;
        if self.grid.n_max < crate::quantum::MIN_N_MAX {
            return Err(Error::config(
                "grid.n_max",
                format!("must be at least {}", crate::quantum::MIN_N_MAX),
            ));
        }
        if self.output.bins_per_unit == 0 {
            return Err(Error::config("output.bins_per_unit", "must be positive"));
        }
        if let Some(sweep) = &self.sweep {
            for (_, p) in self.points()? {
                p.validate().map_err(|e| match e {
                    Error::InvalidParameter { reason, .. } => {
                        Error::config(sweep.field_path(), reason)
                    }
                    other => other,
                })?;
            }
        }
        let max_kicks = self
            .points()?
            .iter()
            .map(|(_, p)| p.kicks)
            .max()
            .unwrap_or(0);
        for (i, &s) in self.output.snapshots.iter().enumerate() {
            if s > max_kicks {
                return Err(Error::config(
                    format!("output.snapshots[{i}]"),
                    format!("kick {s} is beyond the last kick {max_kicks}"),
                ));
            }
        }
        for (name, window) in [
            ("fits.power_law", self.fits.power_law),
            ("fits.diffusion", self.fits.diffusion),
        ] {
            if let Some([a, b]) = window {
                if a >= b || b > max_kicks + 1 {
                    return Err(Error::config(
                        name,
                        format!(
                            "window [{a}, {b}) must be non-empty and end by {}",
                            max_kicks + 1
                        ),
                    ));
                }
            }
        }
        if self.fits.power_law.is_some_and(|[a, _]| a == 0) {
            return Err(Error::config("fits.power_law", "must start after kick 0"));
        }
        for (i, s) in self.sections.iter().enumerate() {
            if !(s.k_eps.value() >= 0.0) {
                return Err(Error::config(
                    format!("sections[{i}].k_eps"),
                    "must be non-negative",
                ));
            }
            if s.grid == 0 {
                return Err(Error::config(
                    format!("sections[{i}].grid"),
                    "must be positive",
                ));
            }
        }
        Ok(())
    }

    /// Applies overrides and re-validates.
    pub fn with_overrides(mut self, o: &Overrides) -> Result<Self> {
        if let Some(dir) = &o.out_dir {
            self.output.dir = Some(dir.clone());
        }
        if let Some(seed) = o.seed {
            self.initial.set_seed(seed);
        }
        if let Some(n) = o.n_max {
            self.grid.n_max = n;
            self.grid.max_n_max = self.grid.max_n_max.max(n);
        }
        if let Some(k) = o.kicks {
            self.kick.kicks = k;
            if self.sweep.as_ref().is_some_and(|s| s.axis == Axis::Kicks) {
                self.sweep = None;
            }
            self.output.snapshots.retain(|&s| s <= k);
            self.fits = FitConfig::default();
        }
        self.validate()?;
        Ok(self)
    }

    /// Output directory after applying `KRLAB_OUT_DIR` and the built-in default.
    pub fn output_dir(&self) -> PathBuf {
        self.output
            .dir
            .clone()
            .or_else(|| std::env::var_os("KRLAB_OUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("krlab-out"))
    }
}
