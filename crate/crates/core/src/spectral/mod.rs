//! Analytic spectrum of the phase-modulated kick train.
//!
//! A kick sequence carrying the phase `α cos(ω_p t)` has the spectrum of
//! `exp(iα cos ω_p t) = Σ_κ i^κ J_κ(α) e^{iκ ω_p t}` repeated at every
//! multiple of the kick frequency. Because the kicks sample the modulation
//! once per period, every harmonic folds into the band `[0, ω_k/2]`.
//! Frequencies in this module are ratios to the kick frequency.

mod bessel;

use num_complex::Complex64;
use num_rational::Ratio;

pub use bessel::{bessel_j, bessel_j_orders};

use crate::error::{Error, Result};

/// `i^κ` for any integer κ.
pub fn i_pow(kappa: i64) -> Complex64 {
    match kappa.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Harmonic weights `i^κ J_κ(α)` for `κ ∈ [-K, K]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationSpectrum {
    alpha: f64,
    max_harmonic: usize,
    weights: Vec<Complex64>,
}

impl ModulationSpectrum {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn max_harmonic(&self) -> usize {
        self.max_harmonic
    }

    /// Weight of harmonic κ; zero outside the stored range.
    pub fn weight(&self, kappa: i64) -> Complex64 {
        let k = self.max_harmonic as i64;
        if kappa < -k || kappa > k {
            return Complex64::new(0.0, 0.0);
        }
        self.weights[(kappa + k) as usize]
    }

    /// `(κ, weight)` pairs in increasing κ.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let k = self.max_harmonic as i64;
        self.weights
            .iter()
            .enumerate()
            .map(move |(i, w)| (i as i64 - k, *w))
    }

    /// `Σ_κ |weight(κ)|²`, which tends to 1 as K grows.
    pub fn total_power(&self) -> f64 {
        self.weights.iter().map(|w| w.norm_sqr()).sum()
    }
}

pub fn modulation_spectrum(alpha: f64, max_harmonic: i64) -> Result<ModulationSpectrum> {
    if max_harmonic < 0 {
        return Err(Error::invalid(
            "max_harmonic",
            format!("must be non-negative, got {max_harmonic}"),
        ));
    }
    if !alpha.is_finite() {
        return Err(Error::invalid("alpha", "must be finite"));
    }
    let k = max_harmonic as usize;
    let j = bessel_j_orders(k, alpha);
    let weights = (-(k as i64)..=k as i64)
        .map(|kappa| {
            let order = kappa.unsigned_abs() as usize;
            let sign = if kappa < 0 && order % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            i_pow(kappa) * (sign * j[order])
        })
        .collect();
    Ok(ModulationSpectrum {
        alpha,
        max_harmonic: k,
        weights,
    })
}

/// Modulation frequencies (as ratios `ω/ω_k`) that induce a resonance:
/// `(2n+1)/(2m)` for `n = 0..=n_max`, `m = 1..=m_max`, restricted to
/// `(0, n_max + 1]`, reduced, deduplicated and sorted.
pub fn resonance_frequencies(n_max: u32, m_max: u32) -> Vec<Ratio<i64>> {
    let limit = Ratio::from_integer(n_max as i64 + 1);
    let mut out: Vec<Ratio<i64>> = (0..=n_max as i64)
        .flat_map(|n| (1..=m_max as i64).map(move |m| Ratio::new(2 * n + 1, 2 * m)))
        .filter(|r| *r <= limit)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Folds a frequency ratio into the Nyquist band `[0, 1/2]`.
pub fn aliased_ratio(r: f64) -> f64 {
    let f = r.rem_euclid(1.0);
    if f > 0.5 {
        1.0 - f
    } else {
        f
    }
}

/// Exact-arithmetic version of [`aliased_ratio`].
pub fn aliased_ratio_exact(r: Ratio<i64>) -> Ratio<i64> {
    let f = r - r.floor();
    let half = Ratio::new(1, 2);
    if f > half {
        Ratio::from_integer(1) - f
    } else {
        f
    }
}

/// Number of terms needed in [`resonance_energy_profile`]: the smallest
/// `n` with `m(2n+1) > |α| + 40`, plus one so that term is included.
pub fn default_profile_terms(alpha: f64, m: u32) -> usize {
    let bound = alpha.abs() + 40.0;
    let m = m.max(1) as f64;
    let mut n = 0usize;
    while m * (2 * n + 1) as f64 <= bound {
        n += 1;
    }
    n + 1
}

/// Relative energy of an m-th order modulation resonance,
/// `|Σ_{n<n_terms} i^{m(2n+1)} J_{m(2n+1)}(α)|²`. Un-normalized.
pub fn resonance_energy_profile(alpha: f64, m: u32, n_terms: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("m", "resonance order must be at least 1"));
    }
    if n_terms == 0 {
        return Ok(0.0);
    }
    let m = m as usize;
    let top = m * (2 * n_terms - 1);
    let j = bessel_j_orders(top, alpha);
    let sum: Complex64 = (0..n_terms)
        .map(|n| {
            let order = m * (2 * n + 1);
            i_pow(order as i64) * j[order]
        })
        .sum();
    Ok(sum.norm_sqr())
}

/// Histogram of the aliased harmonics `aliased_ratio(κ r)`, `κ = 1..=K`,
/// over `bins` equal bins spanning `[0, 1/2]`.
///
/// Bins are left-closed; the value 1/2 lands in the last bin.
pub fn alias_histogram(r: f64, max_harmonic: usize, bins: usize) -> Result<Vec<usize>> {
    if bins == 0 {
        return Err(Error::invalid("bins", "must be positive"));
    }
    if max_harmonic < bins {
        return Err(Error::invalid(
            "max_harmonic",
            format!("need at least one harmonic per bin ({max_harmonic} < {bins})"),
        ));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::invalid("ratio", "must be finite and non-negative"));
    }
    let mut counts = vec![0usize; bins];
    for kappa in 1..=max_harmonic {
        let v = aliased_ratio(kappa as f64 * r);
        let idx = ((v * 2.0 * bins as f64).floor() as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts)
}
