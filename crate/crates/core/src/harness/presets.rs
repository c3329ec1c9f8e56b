//! Built-in figure recipes.

use super::config::{
    Axis, ExperimentConfig, FitConfig, GridConfig, InitialConfig, KickConfig, OutputConfig,
    SectionConfig, SweepConfig,
};
use super::expr::ExactReal;
use crate::error::{Error, Result};
use crate::pseudoclassical::{DEFAULT_SECTION_GRID, DEFAULT_SECTION_STEPS};

/// A named recipe made of one or more runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub runs: Vec<ExperimentConfig>,
}

impl Preset {
    /// True when at least one run defines Poincaré sections.
    pub fn has_sections(&self) -> bool {
        self.runs.iter().any(|r| !r.sections.is_empty())
    }
}

/// Ensemble of the expanded condensate: momentum FWHM 0.4 ħk_L.
const BEC_FWHM: f64 = 0.4;
const MEMBERS: usize = 64;
/// On resonance a 64-member ensemble rephases within a few hundred kicks.
const LONG_RUN_MEMBERS: usize = 256;

fn kick(k: impl Into<ExactReal>, order: i64, kicks: usize) -> KickConfig {
    KickConfig {
        k: k.into(),
        order,
        detuning: ExactReal::from(0.0),
        alpha: ExactReal::from(0.0),
        ratio: ExactReal::from(0.0),
        phase0: ExactReal::from(0.0),
        kicks,
    }
}

fn config(
    name: &str,
    kick: KickConfig,
    initial: InitialConfig,
    n_max: usize,
    sweep: SweepConfig,
) -> ExperimentConfig {
    ExperimentConfig {
        name: name.to_string(),
        description: None,
        kick,
        initial,
        grid: GridConfig {
            n_max,
            max_n_max: 4 * n_max,
        },
        sweep: Some(sweep),
        output: OutputConfig::default(),
        fits: FitConfig::default(),
        sections: Vec::new(),
    }
}

fn bec() -> InitialConfig {
    InitialConfig::gaussian_fwhm(BEC_FWHM, MEMBERS)
}

fn fig2() -> Preset {
    let runs = [("fig2_r1-2", "1/2"), ("fig2_r1-4", "1/4")]
        .into_iter()
        .map(|(name, r)| {
            let mut kc = kick(2, 1, 14);
            kc.ratio = r.into();
            let mut c = config(
                name,
                kc,
                InitialConfig::gaussian_sigma(0.05, MEMBERS),
                512,
                SweepConfig::range(Axis::Alpha, 0, "2*pi", "2*pi/49"),
            );
            c.output.distributions = false;
            c
        })
        .collect();
    Preset {
        name: "fig2",
        description: "Energy against modulation amplitude α ∈ [0, 2π] for r = 1/2 and r = 1/4 after 14 kicks at ƛ = 2π, narrow Gaussian σ = 0.05 p_r",
        runs,
    }
}

fn fig3() -> Preset {
    let mut runs: Vec<ExperimentConfig> = [(8, "1.7"), (14, "2.0"), (22, "2.1")]
        .into_iter()
        .map(|(n, k)| {
            let mut kc = kick(k, 1, n);
            kc.alpha = "pi/6".into();
            kc.ratio = "1/2".into();
            let mut c = config(
                &format!("fig3_n{n}"),
                kc,
                bec(),
                512,
                SweepConfig::range(Axis::Ratio, 0.45, 0.55, 0.0025),
            );
            c.output.distributions = false;
            c
        })
        .collect();
    let mut inset = config(
        "fig3_inset",
        kick("2.0", 2, 14),
        bec(),
        512,
        SweepConfig::range(Axis::Detuning, -0.5, 0.5, 0.01),
    );
    inset.output.distributions = false;
    runs.push(inset);
    Preset {
        name: "fig3",
        description: "First-order modulation resonance near r = 1/2 with α = π/6, ℓ = 1 for 8, 14 and 22 kicks (k = 1.7, 2.0, 2.1), plus the unmodulated ε scan at ℓ = 2",
        runs,
    }
}

fn fig5() -> Preset {
    let mut kc = kick("2.0", 1, 10);
    kc.alpha = "pi/2".into();
    kc.ratio = "1/2".into();
    let mut c = config(
        "fig5",
        kc,
        bec(),
        512,
        SweepConfig::range(Axis::Phase0, 0, "2*pi", "pi/18"),
    );
    c.output.distributions = false;
    Preset {
        name: "fig5",
        description: "Initial modulation phase φ₀ ∈ [0, 2π] after 10 kicks with α = π/2, r = 1/2, k = 2, ℓ = 1",
        runs: vec![c],
    }
}

fn fig6() -> Preset {
    let runs = [28, 29, 30]
        .into_iter()
        .map(|n| {
            let mut kc = kick(2, 1, n);
            kc.alpha = "pi/6".into();
            kc.ratio = "1/4".into();
            let mut c = config(
                &format!("fig6_n{n}"),
                kc,
                bec(),
                512,
                SweepConfig::range(Axis::Ratio, 0.2, 0.3, 0.0025),
            );
            c.output.distributions = false;
            c
        })
        .collect();
    Preset {
        name: "fig6",
        description: "Even/odd kick-number comparison (N = 28, 29, 30) of the second-order modulation resonance near r = 1/4 at k = 2, ℓ = 1, α = π/6",
        runs,
    }
}

fn fig7() -> Preset {
    let ratios = [
        ("fig7", "sqrt(3)/4"),
        ("fig7_inset_r1-pi", "1/pi"),
        ("fig7_inset_r1-sqrt3", "1/sqrt(3)"),
        ("fig7_inset_rsqrt5-3", "sqrt(5)/3"),
    ];
    let mut runs: Vec<ExperimentConfig> = ratios
        .into_iter()
        .map(|(name, r)| {
            let mut kc = kick(0.65, 2, 15);
            kc.ratio = r.into();
            let mut c = config(
                name,
                kc,
                bec(),
                256,
                SweepConfig::range(Axis::Alpha, 0, "pi/2", "pi/36"),
            );
            c.output.distributions = false;
            c
        })
        .collect();
    runs[0].sections = ["0", "pi/18", "pi/6", "pi/3"]
        .into_iter()
        .map(|alpha| SectionConfig {
            k_eps: 0.1.into(),
            alpha: alpha.into(),
            ratio: "sqrt(3)/4".into(),
            phase0: 0.into(),
            steps: DEFAULT_SECTION_STEPS,
            grid: DEFAULT_SECTION_GRID,
        })
        .collect();
    Preset {
        name: "fig7",
        description: "Fall-off of the ℓ = 2 resonance with α after 15 kicks at k = 0.65, r = √3/4 (inset ratios 1/π, 1/√3, √5/3), and ε-classical sections at k|ε| = 0.1 for α = 0, π/18, π/6, π/3",
        runs,
    }
}

fn fig8() -> Preset {
    let runs = [
        ("fig8_a0", "0"),
        ("fig8_api-12", "pi/12"),
        ("fig8_api-6", "pi/6"),
        ("fig8_api-3", "pi/3"),
    ]
    .into_iter()
    .map(|(name, alpha)| {
        let mut kc = kick(0.65, 2, 30);
        kc.alpha = alpha.into();
        kc.ratio = "sqrt(3)/4".into();
        let mut c = config(
            name,
            kc,
            bec(),
            512,
            SweepConfig::range(Axis::Detuning, -0.3, 0.3, 0.01),
        );
        c.output.distributions = false;
        c
    })
    .collect();
    Preset {
        name: "fig8",
        description: "ℓ = 2 resonance line shape against ε after 30 kicks at k = 0.65, r = √3/4 for α = 0, π/12, π/6, π/3",
        runs,
    }
}

fn fig9() -> Preset {
    let mut kc = kick(2, 2, 300);
    kc.ratio = "sqrt(3)/4".into();
    let ensemble = InitialConfig::gaussian_fwhm(BEC_FWHM, LONG_RUN_MEMBERS);
    let mut c = config(
        "fig9",
        kc,
        ensemble,
        2048,
        SweepConfig::range(Axis::Alpha, 0, "pi", "pi/12"),
    );
    c.grid.max_n_max = 8192;
    c.fits = FitConfig {
        power_law: Some([30, 301]),
        diffusion: Some([30, 301]),
    };
    c.output.distributions = false;
    Preset {
        name: "fig9",
        description: "Energy growth on resonance over 300 kicks with k = 2, ε = 0, ℓ = 2, r = √3/4 for α ∈ [0, π], with diffusion constants",
        runs: vec![c],
    }
}

fn fig10() -> Preset {
    let mut kc = kick(3, 2, 300);
    kc.detuning = 0.4.into();
    kc.ratio = "sqrt(3)/4".into();
    let mut c = config(
        "fig10",
        kc,
        bec(),
        1024,
        SweepConfig::list(Axis::Alpha, ["0", "pi/24", "pi/12", "pi/6", "pi/4"]),
    );
    c.output.snapshots = vec![70];
    c.fits.power_law = Some([70, 301]);
    Preset {
        name: "fig10",
        description: "Destruction of dynamical localization at ε = 0.4, k = 3, ℓ = 2, r = √3/4: energy over 300 kicks and momentum distributions after 70 kicks",
        runs: vec![c],
    }
}

/// All presets in a fixed order.
pub fn presets() -> Vec<Preset> {
    vec![
        fig2(),
        fig3(),
        fig5(),
        fig6(),
        fig7(),
        fig8(),
        fig9(),
        fig10(),
    ]
}

/// Preset names with their one-line descriptions.
pub fn list_presets() -> Vec<(&'static str, &'static str)> {
    presets()
        .into_iter()
        .map(|p| (p.name, p.description))
        .collect()
}

pub fn preset(name: &str) -> Result<Preset> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}
