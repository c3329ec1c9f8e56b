//! Dimensionless kick parameters, conversion from laboratory units and the
//! phase sequence seen by the kicks.
//!
//! Scaled units: position `x = 2 k_L X`, momentum `p = P / (2ħk_L)`, time in
//! kick periods. The kick strength is `k = τΩ²/(4Δ)` and the scaled period
//! `ƛ = 4ħk_L²T/m = 2πℓ + ε` with `|ε| < π`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Mass of a ⁸⁷Rb atom (kg).
pub const RB87_MASS: f64 = 1.4432e-25;
/// ⁸⁷Rb D2 line wavelength (m).
pub const RB87_D2_WAVELENGTH: f64 = 780.24e-9;

/// Laboratory parameters of a pulsed standing wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Laser wavelength λ (m).
    pub wavelength: f64,
    /// Atomic mass (kg).
    pub atomic_mass: f64,
    /// Pulse period T (s).
    pub pulse_period: f64,
    /// Pulse duration τ (s).
    pub pulse_duration: f64,
    /// Detuning Δ from the atomic line (rad/s).
    pub detuning: f64,
    /// Rabi frequency Ω (rad/s).
    pub rabi_frequency: f64,
}

impl PhysicalParams {
    pub fn wavenumber(&self) -> f64 {
        TAU / self.wavelength
    }

    pub fn validate(&self) -> Result<()> {
        if self.detuning == 0.0 {
            return Err(Error::invalid(
                "detuning",
                "Δ = 0 makes the kick strength undefined",
            ));
        }
        let fields = [
            ("wavelength", self.wavelength),
            ("atomic_mass", self.atomic_mass),
            ("pulse_period", self.pulse_period),
            ("pulse_duration", self.pulse_duration),
            ("detuning", self.detuning),
            ("rabi_frequency", self.rabi_frequency),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(
                    name,
                    format!("must be positive and finite, got {v}"),
                ));
            }
        }
        if self.pulse_duration >= self.pulse_period / 10.0 {
            return Err(Error::invalid(
                "pulse_duration",
                format!(
                    "τ = {:e} s is not short against T/10 = {:e} s",
                    self.pulse_duration,
                    self.pulse_period / 10.0
                ),
            ));
        }
        Ok(())
    }
}

/// Dimensionless parameters obtained from [`PhysicalParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledParams {
    pub kick_strength: f64,
    pub scaled_period: f64,
    pub resonance_order: i64,
    pub detuning: f64,
}

/// Splits `ƛ` into the nearest resonance order ℓ and the detuning
/// `ε = ƛ − 2πℓ`. Exactly half-way values (`|ε| = π`) are ambiguous and rejected.
pub fn split_scaled_period(scaled_period: f64) -> Result<(i64, f64)> {
    if !scaled_period.is_finite() || scaled_period <= 0.0 {
        return Err(Error::invalid(
            "scaled_period",
            format!("must be positive and finite, got {scaled_period}"),
        ));
    }
    let order = (scaled_period / TAU).round() as i64;
    let eps = scaled_period - TAU * order as f64;
    if eps.abs() >= PI {
        return Err(Error::invalid(
            "scaled_period",
            format!("{scaled_period} lies half-way between two resonances"),
        ));
    }
    Ok((order, eps))
}

pub fn scaled_params(phys: &PhysicalParams) -> Result<ScaledParams> {
    phys.validate()?;
    let kl = phys.wavenumber();
    let kick_strength =
        phys.pulse_duration * phys.rabi_frequency * phys.rabi_frequency / (4.0 * phys.detuning);
    let scaled_period = 4.0 * HBAR * kl * kl * phys.pulse_period / phys.atomic_mass;
    let (resonance_order, detuning) = split_scaled_period(scaled_period)?;
    Ok(ScaledParams {
        kick_strength,
        scaled_period,
        resonance_order,
        detuning,
    })
}

/// Inverse of the period scaling: the pulse period T (s) giving `scaled_period`.
pub fn pulse_period_for(scaled_period: f64, wavelength: f64, atomic_mass: f64) -> f64 {
    let kl = TAU / wavelength;
    scaled_period * atomic_mass / (4.0 * HBAR * kl * kl)
}

/// Talbot time `πm/(ħk_L²)`, the period of the ℓ = 2 resonance.
pub fn talbot_time(wavelength: f64, atomic_mass: f64) -> f64 {
    let kl = TAU / wavelength;
    PI * atomic_mass / (HBAR * kl * kl)
}

/// Control parameters of one kicking run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickParams {
    pub kick_strength: f64,
    /// ℓ: the scaled period is `2πℓ + ε`.
    pub resonance_order: i64,
    /// ε, the detuning from the ℓ-th resonance.
    pub detuning: f64,
    /// α (rad).
    pub modulation_amplitude: f64,
    /// r = ω_p/ω_k.
    pub frequency_ratio: f64,
    /// φ₀ (rad).
    pub initial_phase: f64,
    /// N.
    pub kicks: usize,
}

impl Default for KickParams {
    fn default() -> Self {
        KickParams {
            kick_strength: 2.0,
            resonance_order: 2,
            detuning: 0.0,
            modulation_amplitude: 0.0,
            frequency_ratio: 0.0,
            initial_phase: 0.0,
            kicks: 1,
        }
    }
}

impl KickParams {
    /// ƛ = 2πℓ + ε.
    pub fn scaled_period(&self) -> f64 {
        TAU * self.resonance_order as f64 + self.detuning
    }

    /// Replaces ℓ and ε by the decomposition of `scaled_period`.
    pub fn with_scaled_period(mut self, scaled_period: f64) -> Result<Self> {
        let (order, eps) = split_scaled_period(scaled_period)?;
        self.resonance_order = order;
        self.detuning = eps;
        Ok(self)
    }

    /// Stochasticity parameter `k|ε|` of the pseudo-classical map.
    pub fn stochasticity(&self) -> f64 {
        self.kick_strength * self.detuning.abs()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kick_strength >= 0.0) || !self.kick_strength.is_finite() {
            return Err(Error::invalid(
                "kick_strength",
                "must be finite and non-negative",
            ));
        }
        if self.resonance_order < 0 {
            return Err(Error::invalid("resonance_order", "must be non-negative"));
        }
        if !(self.detuning.abs() < PI) {
            return Err(Error::invalid(
                "detuning",
                format!("|ε| must be below π, got {}", self.detuning),
            ));
        }
        if !(self.scaled_period() > 0.0) {
            return Err(Error::invalid("detuning", "scaled period must be positive"));
        }
        if !(self.modulation_amplitude >= 0.0) || !self.modulation_amplitude.is_finite() {
            return Err(Error::invalid(
                "modulation_amplitude",
                "α must be finite and non-negative",
            ));
        }
        if !(self.frequency_ratio >= 0.0) || !self.frequency_ratio.is_finite() {
            return Err(Error::invalid(
                "frequency_ratio",
                "r must be finite and non-negative",
            ));
        }
        if !self.initial_phase.is_finite() {
            return Err(Error::invalid("initial_phase", "must be finite"));
        }
        if self.kicks == 0 {
            return Err(Error::invalid("kicks", "at least one kick is required"));
        }
        Ok(())
    }
}

/// Grating phases `φ_n = α cos(2π r n + φ₀)` for kicks `n = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSequence {
    amplitude: f64,
    phases: Vec<f64>,
}

impl PhaseSequence {
    /// Sequence of `n` zero phases.
    pub fn unmodulated(n: usize) -> Self {
        PhaseSequence {
            amplitude: 0.0,
            phases: vec![0.0; n],
        }
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn get(&self, kick: usize) -> Option<f64> {
        self.phases.get(kick).copied()
    }
}

impl std::ops::Index<usize> for PhaseSequence {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.phases[i]
    }
}

pub fn phase_sequence(p: &KickParams) -> PhaseSequence {
    modulation_phases(
        p.modulation_amplitude,
        p.frequency_ratio,
        p.initial_phase,
        p.kicks,
    )
}

/// Same as [`phase_sequence`] from the raw modulation parameters.
pub fn modulation_phases(alpha: f64, ratio: f64, phase0: f64, kicks: usize) -> PhaseSequence {
    let phases = (0..kicks)
        .map(|n| alpha * (TAU * ratio * n as f64 + phase0).cos())
        .collect();
    PhaseSequence {
        amplitude: alpha,
        phases,
    }
}

/// Amplitude, in units of k, of the grating obtained by adding all kicks:
/// `|Σ_n exp(iφ_n)|`.
pub fn effective_kick_strength(seq: &PhaseSequence) -> f64 {
    seq.phases
        .iter()
        .map(|&phi| Complex64::from_polar(1.0, phi))
        .sum::<Complex64>()
        .norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rb87(period: f64) -> PhysicalParams {
        PhysicalParams {
            wavelength: RB87_D2_WAVELENGTH,
            atomic_mass: RB87_MASS,
            pulse_period: period,
            pulse_duration: 300e-9,
            detuning: TAU * 150e9,
            rabi_frequency: 2.0e8,
        }
    }

    #[test]
    fn talbot_period_is_second_resonance() {
        let s = scaled_params(&rb87(66.3e-6)).unwrap();
        assert_eq!(s.resonance_order, 2);
        assert!(s.detuning.abs() < 0.05, "ε = {}", s.detuning);
        assert!((s.scaled_period - 4.0 * PI).abs() < 0.05);
    }

    #[test]
    fn half_talbot_is_anti_resonance() {
        let s = scaled_params(&rb87(33.1e-6)).unwrap();
        assert_eq!(s.resonance_order, 1);
        assert!((s.scaled_period - TAU).abs() < 0.05);
    }

    #[test]
    fn exact_half_talbot_has_zero_detuning() {
        let t_tal = talbot_time(RB87_D2_WAVELENGTH, RB87_MASS);
        assert!((t_tal - 66.3e-6).abs() < 0.1e-6, "T_tal = {t_tal}");
        let s = scaled_params(&rb87(t_tal / 2.0)).unwrap();
        assert_eq!(s.resonance_order, 1);
        assert!(s.detuning.abs() < 1e-12);
    }

    #[test]
    fn kick_strength_formula() {
        let p = rb87(66.3e-6);
        let s = scaled_params(&p).unwrap();
        let want = 300e-9 * 4.0e16 / (4.0 * TAU * 150e9);
        assert!((s.kick_strength - want).abs() < 1e-12 * want);
    }

    #[test]
    fn rejects_zero_detuning_and_long_pulses() {
        let mut p = rb87(66.3e-6);
        p.detuning = 0.0;
        assert!(matches!(
            scaled_params(&p),
            Err(Error::InvalidParameter {
                field: "detuning",
                ..
            })
        ));
        let mut p = rb87(66.3e-6);
        p.pulse_duration = 10e-6;
        assert!(scaled_params(&p).is_err());
        let mut p = rb87(66.3e-6);
        p.atomic_mass = -1.0;
        assert!(scaled_params(&p).is_err());
    }

    #[test]
    fn half_way_period_is_ambiguous() {
        assert!(split_scaled_period(3.0 * PI).is_err());
        let (l, e) = split_scaled_period(2.0 * TAU + 0.4).unwrap();
        assert_eq!(l, 2);
        assert!((e - 0.4).abs() < 1e-14);
    }

    #[test]
    fn period_round_trip() {
        for &t in &[20e-6, 33.1e-6, 66.3e-6, 71.0e-6, 120e-6] {
            let s = scaled_params(&rb87(t)).unwrap();
            let back = pulse_period_for(s.scaled_period, RB87_D2_WAVELENGTH, RB87_MASS);
            assert!(((back - t) / t).abs() < 1e-12);
        }
    }

    fn params(alpha: f64, r: f64, phi0: f64, n: usize) -> KickParams {
        KickParams {
            modulation_amplitude: alpha,
            frequency_ratio: r,
            initial_phase: phi0,
            kicks: n,
            ..KickParams::default()
        }
    }

    fn assert_seq(seq: &PhaseSequence, want: &[f64]) {
        assert_eq!(seq.len(), want.len());
        for (a, b) in seq.phases().iter().zip(want) {
            assert!((a - b).abs() < 1e-14, "{:?} vs {:?}", seq.phases(), want);
        }
    }

    #[test]
    fn half_frequency_jumps_by_pi() {
        let s = phase_sequence(&params(PI / 2.0, 0.5, 0.0, 4));
        assert_seq(&s, &[PI / 2.0, -PI / 2.0, PI / 2.0, -PI / 2.0]);
    }

    #[test]
    fn kick_frequency_is_constant_phase() {
        let s = phase_sequence(&params(PI / 2.0, 1.0, 0.0, 3));
        assert_seq(&s, &[PI / 2.0; 3]);
    }

    #[test]
    fn sine_start_gives_zero_phases() {
        let s = phase_sequence(&params(PI / 2.0, 0.5, PI / 2.0, 4));
        assert_seq(&s, &[0.0; 4]);
    }

    #[test]
    fn effective_strength_examples() {
        assert!((effective_kick_strength(&PhaseSequence::unmodulated(5)) - 5.0).abs() < 1e-15);
        let alt = PhaseSequence {
            amplitude: PI,
            phases: (0..10).map(|n| if n % 2 == 0 { 0.0 } else { PI }).collect(),
        };
        assert!(effective_kick_strength(&alt) < 1e-14);

        let seq = phase_sequence(&params(PI / 3.0, 3f64.sqrt() / 4.0, 0.0, 100));
        let (mut re, mut im) = (0.0, 0.0);
        for n in 0..100 {
            let phi = PI / 3.0 * (TAU * 3f64.sqrt() / 4.0 * n as f64).cos();
            re += phi.cos();
            im += phi.sin();
        }
        let direct = re.hypot(im);
        let v = effective_kick_strength(&seq);
        assert!(v < 100.0);
        assert!((v - direct).abs() < 1e-12);
    }

    #[test]
    fn kick_params_validation() {
        assert!(KickParams::default().validate().is_ok());
        let bad = [
            KickParams {
                kicks: 0,
                ..KickParams::default()
            },
            KickParams {
                detuning: 3.5,
                ..KickParams::default()
            },
            KickParams {
                modulation_amplitude: -0.1,
                ..KickParams::default()
            },
            KickParams {
                frequency_ratio: -1.0,
                ..KickParams::default()
            },
            KickParams {
                resonance_order: 0,
                detuning: -0.2,
                ..KickParams::default()
            },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    proptest! {
        #[test]
        fn zero_amplitude_is_all_zero(r in 0.0..5.0f64, phi0 in -7.0..7.0f64, n in 1usize..200) {
            let s = phase_sequence(&params(0.0, r, phi0, n));
            prop_assert!(s.phases().iter().all(|&p| p == 0.0));
        }

        #[test]
        fn integer_ratio_shift_aliases(alpha in 0.0..4.0f64, r in 0.0..2.0f64, phi0 in -3.0..3.0f64) {
            let a = phase_sequence(&params(alpha, r, phi0, 64));
            let b = phase_sequence(&params(alpha, r + 1.0, phi0, 64));
            for (x, y) in a.phases().iter().zip(b.phases()) {
                prop_assert!((x - y).abs() < 1e-11);
            }
        }

        #[test]
        fn phases_bounded_by_amplitude(alpha in 0.0..7.0f64, r in 0.0..3.0f64, phi0 in -3.0..3.0f64) {
            let s = phase_sequence(&params(alpha, r, phi0, 50));
            prop_assert!(s.phases().iter().all(|p| p.abs() <= alpha));
        }

        #[test]
        fn global_offset_leaves_strength(alpha in 0.0..4.0f64, r in 0.0..1.0f64, offset in -10.0..10.0f64) {
            let s = phase_sequence(&params(alpha, r, 0.3, 40));
            let shifted = PhaseSequence {
                amplitude: alpha,
                phases: s.phases().iter().map(|p| p + offset).collect(),
            };
            let a = effective_kick_strength(&s);
            prop_assert!((a - effective_kick_strength(&shifted)).abs() < 1e-11);
            prop_assert!(a <= 40.0 + 1e-12);
        }
    }
}
