//! Observables and fits: recoil energy, zero-momentum fraction, power-law
//! growth exponents, diffusion constants and exponential-localization lengths.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::error::{Error, Result};

/// Tolerance on the total probability accepted by [`energy`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;
/// Orders `|n| <= LOCALIZATION_CORE` are left out of the localization fit.
pub const LOCALIZATION_CORE: i64 = 2;
/// Orders with probability below this fraction of the peak do not count as populated.
pub const POPULATED_FLOOR: f64 = 1e-10;
const MIN_FIT_WINDOW: usize = 5;
const MIN_LOCALIZATION_POINTS: usize = 10;

/// Probability over momenta `p` (units of 2ħk_L), sorted by `p`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MomentumDistribution {
    points: Vec<(f64, f64)>,
}

impl MomentumDistribution {
    /// Sorts by momentum and merges identical momenta.
    pub fn from_points(mut points: Vec<(f64, f64)>) -> Self {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(points.len());
        for (p, w) in points {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += w,
                _ => merged.push((p, w)),
            }
        }
        MomentumDistribution { points: merged }
    }

    /// Point mass at `p`.
    pub fn delta(p: f64) -> Self {
        MomentumDistribution {
            points: vec![(p, 1.0)],
        }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn total(&self) -> f64 {
        self.points.iter().map(|(_, w)| w).sum()
    }

    /// Mirror image `p → -p`.
    pub fn reflected(&self) -> Self {
        Self::from_points(self.points.iter().map(|&(p, w)| (-p, w)).collect())
    }

    /// Re-bins onto centres `j / bins_per_unit` and normalizes to unit sum.
    pub fn histogram(&self, bins_per_unit: usize) -> Self {
        let b = bins_per_unit.max(1) as f64;
        let mut bins: BTreeMap<i64, f64> = BTreeMap::new();
        for &(p, w) in &self.points {
            *bins.entry((p * b).round() as i64).or_insert(0.0) += w;
        }
        let total: f64 = bins.values().sum();
        let scale = if total > 0.0 { 1.0 / total } else { 0.0 };
        MomentumDistribution {
            points: bins
                .into_iter()
                .map(|(j, w)| (j as f64 / b, w * scale))
                .collect(),
        }
    }
}

/// `E/E_r = 4 Σ P(p) p²`.
pub fn energy(dist: &MomentumDistribution) -> Result<f64> {
    let total = dist.total();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::invalid(
            "distribution",
            format!("total probability {total} is not normalized"),
        ));
    }
    Ok(4.0 * dist.points.iter().map(|(p, w)| w * p * p).sum::<f64>())
}

/// Probability with `|p| < 1/2`, i.e. within one photon recoil of rest.
pub fn zero_momentum_fraction(dist: &MomentumDistribution) -> f64 {
    dist.points
        .iter()
        .filter(|(p, _)| p.abs() < 0.5)
        .map(|(_, w)| w)
        .sum()
}

/// Result of a one-parameter fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Exponent q, diffusion constant D or localization length ξ.
    pub value: f64,
    /// Coefficient of determination of the underlying linear regression.
    pub r_squared: f64,
    /// Kick indices (or ladder orders) used.
    pub window: Range<usize>,
}

struct LineFit {
    slope: f64,
    r_squared: f64,
}

fn fit_line(xs: &[f64], ys: &[f64]) -> LineFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let scale = syy.max(my * my * n);
    let r_squared = if syy <= 1e-24 * scale.max(f64::MIN_POSITIVE) {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    LineFit { slope, r_squared }
}

/// Last two-thirds of a series of `len` samples (index 0 is the pre-kick value).
pub fn default_window(len: usize) -> Range<usize> {
    (len / 3).max(1)..len
}

fn check_window(len: usize, window: &Range<usize>) -> Result<()> {
    if window.end > len || window.start >= window.end {
        return Err(Error::Fit(format!(
            "window {window:?} outside series of length {len}"
        )));
    }
    if window.len() < MIN_FIT_WINDOW {
        return Err(Error::Fit(format!(
            "window {window:?} shorter than {MIN_FIT_WINDOW} points"
        )));
    }
    Ok(())
}

/// Slope of `log E` against `log t` over `window`, where `t` is the kick index.
pub fn fit_power_law(series: &[f64], window: Range<usize>) -> Result<FitResult> {
    check_window(series.len(), &window)?;
    if window.start == 0 {
        return Err(Error::Fit(
            "power-law window must start after kick 0".into(),
        ));
    }
    let mut xs = Vec::with_capacity(window.len());
    let mut ys = Vec::with_capacity(window.len());
    for t in window.clone() {
        let e = series[t];
        if !(e > 0.0) {
            return Err(Error::Fit(format!("non-positive energy {e} at kick {t}")));
        }
        xs.push((t as f64).ln());
        ys.push(e.ln());
    }
    let fit = fit_line(&xs, &ys);
    Ok(FitResult {
        value: fit.slope,
        r_squared: fit.r_squared,
        window,
    })
}

/// Least-squares slope of `E` against kick index over `window` (recoils per kick).
pub fn diffusion_constant(series: &[f64], window: Range<usize>) -> Result<FitResult> {
    check_window(series.len(), &window)?;
    let xs: Vec<f64> = window.clone().map(|t| t as f64).collect();
    let ys: Vec<f64> = window.clone().map(|t| series[t]).collect();
    let fit = fit_line(&xs, &ys);
    Ok(FitResult {
        value: fit.slope,
        r_squared: fit.r_squared,
        window,
    })
}

/// Fits `log P(n) = a − 2|n|/ξ` to the integer-binned distribution.
///
/// Orders within [`LOCALIZATION_CORE`] of zero are excluded, as are orders
/// below [`POPULATED_FLOOR`] times the peak. The returned window spans the
/// `|n|` values used.
pub fn localization_fit(dist: &MomentumDistribution) -> Result<FitResult> {
    let hist = dist.histogram(1);
    let peak = hist.points.iter().map(|(_, w)| *w).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(Error::Fit("empty distribution".into()));
    }
    let floor = POPULATED_FLOOR * peak;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &(p, w) in &hist.points {
        let n = p.round() as i64;
        if n.abs() <= LOCALIZATION_CORE || w <= floor {
            continue;
        }
        xs.push(n.abs() as f64);
        ys.push(w.ln());
    }
    if xs.len() < MIN_LOCALIZATION_POINTS {
        return Err(Error::Fit(format!(
            "only {} populated orders outside the core; localization fit inconclusive",
            xs.len()
        )));
    }
    let fit = fit_line(&xs, &ys);
    if !(fit.slope < 0.0) {
        return Err(Error::Fit(format!(
            "distribution does not decay (slope {})",
            fit.slope
        )));
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min) as usize;
    let hi = xs.iter().copied().fold(0.0, f64::max) as usize;
    Ok(FitResult {
        value: -2.0 / fit.slope,
        r_squared: fit.r_squared,
        window: lo..hi + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::bessel_j;

    fn from_fn(
        range: std::ops::RangeInclusive<i64>,
        f: impl Fn(i64) -> f64,
    ) -> MomentumDistribution {
        let pts: Vec<(f64, f64)> = range.map(|n| (n as f64, f(n))).collect();
        let total: f64 = pts.iter().map(|x| x.1).sum();
        MomentumDistribution::from_points(pts.into_iter().map(|(p, w)| (p, w / total)).collect())
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(&MomentumDistribution::delta(0.0)).unwrap(), 0.0);
        assert_eq!(energy(&MomentumDistribution::delta(1.0)).unwrap(), 4.0);
        let d = from_fn(-40..=40, |n| bessel_j(n, 2.0).powi(2));
        assert!((energy(&d).unwrap() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn energy_rejects_unnormalized() {
        let d = MomentumDistribution::from_points(vec![(0.0, 0.5), (1.0, 0.3)]);
        assert!(energy(&d).is_err());
    }

    #[test]
    fn zero_momentum_examples() {
        assert_eq!(
            zero_momentum_fraction(&MomentumDistribution::delta(0.0)),
            1.0
        );
        let d = from_fn(-40..=40, |n| bessel_j(n, 2.0).powi(2));
        let want = bessel_j(0, 2.0).powi(2);
        assert!((zero_momentum_fraction(&d) - want).abs() < 1e-14);
        assert!((want - 0.0501).abs() < 1e-4);
        let u = from_fn(-1..=1, |_| 1.0);
        assert!((zero_momentum_fraction(&u) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn observables_reflection_invariant() {
        let d = MomentumDistribution::from_points(vec![(-1.2, 0.1), (0.3, 0.5), (2.1, 0.4)]);
        let r = d.reflected();
        assert!((energy(&d).unwrap() - energy(&r).unwrap()).abs() < 1e-14);
        assert_eq!(zero_momentum_fraction(&d), zero_momentum_fraction(&r));
    }

    #[test]
    fn power_law_exact_inputs() {
        let lin: Vec<f64> = (0..30).map(|t| 3.0 * t as f64).collect();
        let f = fit_power_law(&lin, 1..30).unwrap();
        assert!((f.value - 1.0).abs() < 1e-13);
        assert!((f.r_squared - 1.0).abs() < 1e-13);
        let quad: Vec<f64> = (0..30).map(|t| 0.5 * (t * t) as f64).collect();
        let f = fit_power_law(&quad, default_window(30)).unwrap();
        assert!((f.value - 2.0).abs() < 1e-13);
        let flat: Vec<f64> = (0..60).map(|t| 5.0 + 0.05 * (t as f64).sin()).collect();
        let f = fit_power_law(&flat, default_window(60)).unwrap();
        assert!(f.value.abs() < 0.05);
    }

    #[test]
    fn power_law_rejections() {
        let s: Vec<f64> = (0..10).map(|t| t as f64 - 3.0).collect();
        assert!(fit_power_law(&s, 2..10).is_err());
        let s: Vec<f64> = (0..10).map(|t| 1.0 + t as f64).collect();
        assert!(fit_power_law(&s, 0..10).is_err());
        assert!(fit_power_law(&s, 3..6).is_err());
        assert!(fit_power_law(&s, 3..11).is_err());
    }

    #[test]
    fn diffusion_examples() {
        let s: Vec<f64> = (0..40).map(|t| 7.0 * t as f64).collect();
        assert!((diffusion_constant(&s, 10..40).unwrap().value - 7.0).abs() < 1e-12);
        let c = vec![4.2; 20];
        let f = diffusion_constant(&c, default_window(20)).unwrap();
        assert_eq!(f.value, 0.0);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn localization_recovers_length() {
        let d = from_fn(-80..=80, |n| (-2.0 * n.abs() as f64 / 10.0).exp());
        let f = localization_fit(&d).unwrap();
        assert!((f.value - 10.0).abs() < 0.1);
        assert!(f.r_squared > 0.999);
    }

    #[test]
    fn gaussian_profile_fits_worse() {
        let e = from_fn(-60..=60, |n| (-2.0 * n.abs() as f64 / 10.0).exp());
        let g = from_fn(-60..=60, |n| (-(n * n) as f64 / 200.0).exp());
        let fe = localization_fit(&e).unwrap();
        let fg = localization_fit(&g).unwrap();
        assert!(fg.r_squared < fe.r_squared);
        assert!(fg.r_squared < 0.97, "{}", fg.r_squared);
    }

    #[test]
    fn localization_needs_support() {
        let d = from_fn(-5..=5, |n| (-(n.abs() as f64)).exp());
        assert!(localization_fit(&d).is_err());
    }

    #[test]
    fn histogram_binning() {
        let d = MomentumDistribution::from_points(vec![(0.1, 0.25), (-0.2, 0.25), (0.9, 0.5)]);
        let h = d.histogram(1);
        assert_eq!(h.points(), &[(0.0, 0.5), (1.0, 0.5)]);
        let h2 = d.histogram(2);
        assert_eq!(h2.points(), &[(0.0, 0.5), (1.0, 0.5)]);
        let h3 = MomentumDistribution::from_points(vec![(0.3, 1.0)]).histogram(2);
        assert_eq!(h3.points(), &[(0.5, 1.0)]);
    }
}
