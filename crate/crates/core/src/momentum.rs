//! Plane-wave amplitudes of computed eigenstates and the hydrogen 1s
//! momentum distribution.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{forward_transform, Representation, SpectralAmplitudes, UniformGrid, WaveFunction};
use crate::error::{Error, Result};
use crate::schrodinger::radial_profile;

pub const DISTRIBUTION_POINTS: usize = 400;
pub const DISTRIBUTION_P_MIN: f64 = 0.01;
pub const DISTRIBUTION_P_MAX: f64 = 20.0;

/// Largest `|E + ½|` (hartree) accepted for a hydrogen ground state.
pub const GROUND_STATE_WINDOW: f64 = 0.05;

/// Plane-wave amplitudes of a normalized state.
pub fn extract_amplitudes(state: &WaveFunction) -> Result<SpectralAmplitudes> {
    state.require(Representation::Position)?;
    state.require_normalized()?;
    let amps = forward_transform(state)?;
    amps.check_aliasing();
    Ok(amps)
}

/// `a₀(p) = (1/π)(2r₀)^{3/2} [1 + r₀²p²]^{-2}` (ħ = 1).
pub fn hydrogen_a0_closed_form(p: f64, r0: f64) -> Result<f64> {
    if !(p >= 0.0) {
        return Err(Error::InvalidParameter(format!("momentum must be non-negative, got {p}")));
    }
    if !(r0 > 0.0) {
        return Err(Error::InvalidParameter(format!("r0 must be positive, got {r0}")));
    }
    let bracket = 1.0 + r0 * r0 * p * p;
    Ok((2.0 * r0).powf(1.5) / (PI * bracket * bracket))
}

/// `∫₀^{p_max} 4πp² a₀(p)² dp` by composite Simpson quadrature.
pub fn closed_form_norm(p_max: f64, r0: f64) -> Result<f64> {
    hydrogen_a0_closed_form(p_max, r0)?;
    let intervals = 20_000;
    let h = p_max / intervals as f64;
    let f = |p: f64| {
        let a = hydrogen_a0_closed_form(p, r0).expect("validated above");
        4.0 * PI * p * p * a * a
    };
    let mut sum = f(0.0) + f(p_max);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * h);
    }
    Ok(sum * h / 3.0)
}

/// The `DISTRIBUTION_POINTS` log-spaced momenta in
/// `[DISTRIBUTION_P_MIN, DISTRIBUTION_P_MAX]`.
pub fn log_momentum_grid() -> Vec<f64> {
    let (lo, hi) = (DISTRIBUTION_P_MIN.ln(), DISTRIBUTION_P_MAX.ln());
    let step = (hi - lo) / (DISTRIBUTION_POINTS - 1) as f64;
    (0..DISTRIBUTION_POINTS)
        .map(|i| {
            if i == DISTRIBUTION_POINTS - 1 {
                DISTRIBUTION_P_MAX
            } else {
                (lo + i as f64 * step).exp()
            }
        })
        .collect()
}

/// Radial momentum density of a spherically symmetric state.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumDistribution {
    pub momenta: Vec<f64>,
    /// `a₀(|p|)`, normalized so that `∫|a₀|² d³p = 1`.
    pub amplitude: Vec<f64>,
    /// `4πp²|a₀(p)|²`.
    pub density: Vec<f64>,
    /// Quadrature of `density` over the sampled momenta.
    pub normalization_check: f64,
}

impl MomentumDistribution {
    fn from_amplitudes(momenta: Vec<f64>, amplitude: Vec<f64>) -> Self {
        let density: Vec<f64> = momenta
            .iter()
            .zip(&amplitude)
            .map(|(p, a)| 4.0 * PI * p * p * a * a)
            .collect();
        // trapezoid in ln p
        let normalization_check = momenta
            .windows(2)
            .zip(density.windows(2))
            .map(|(p, d)| 0.5 * (d[0] * p[0] + d[1] * p[1]) * (p[1] / p[0]).ln())
            .sum();
        Self {
            momenta,
            amplitude,
            density,
            normalization_check,
        }
    }

    /// Relative deviation of each amplitude from the closed form (r₀ = 1).
    pub fn relative_errors(&self) -> Vec<f64> {
        self.momenta
            .iter()
            .zip(&self.amplitude)
            .map(|(&p, a)| {
                let exact = hydrogen_a0_closed_form(p, 1.0).expect("sampled momenta are positive");
                (a - exact).abs() / exact
            })
            .collect()
    }

    /// Largest relative error over samples with `p <= p_max`.
    pub fn max_relative_error(&self, p_max: f64) -> f64 {
        self.momenta
            .iter()
            .zip(self.relative_errors())
            .filter(|(p, _)| **p <= p_max)
            .map(|(_, e)| e)
            .fold(0.0, f64::max)
    }
}

/// s-wave transform of radial samples:
/// `a₀(p) = (2π)^{-3/2} ∫ψ e^{-ip·r} d³r = (π√2 p)^{-1} ∫₀^∞ u(r) sin(pr) dr`
/// by the trapezoid rule (`u` vanishes at both ends).
pub fn spherical_amplitude(profile: &[(f64, f64)], spacing: f64, p: f64) -> f64 {
    if p == 0.0 {
        let s: f64 = profile.iter().map(|(r, u)| u * r).sum();
        return s * spacing / (PI * std::f64::consts::SQRT_2);
    }
    let s: f64 = profile.iter().map(|(r, u)| u * (p * r).sin()).sum();
    s * spacing / (PI * std::f64::consts::SQRT_2 * p)
}

/// Momentum distribution of an s-wave ground state produced by
/// [`crate::schrodinger::solve_hydrogen_radial`] or
/// [`crate::schrodinger::analytic_hydrogen_ground_state`].
pub fn hydrogen_momentum_distribution(psi0: &WaveFunction) -> Result<MomentumDistribution> {
    let energy = psi0.energy().ok_or(Error::MissingEnergy)?;
    if (energy + 0.5).abs() > GROUND_STATE_WINDOW {
        return Err(Error::NotGroundState { energy });
    }
    psi0.require_normalized()?;
    let profile = radial_profile(psi0)?;
    let h = psi0.grid().spacing();
    let momenta = log_momentum_grid();
    let amplitude: Vec<f64> = momenta
        .par_iter()
        .map(|&p| spherical_amplitude(&profile, h, p))
        .collect();
    Ok(MomentumDistribution::from_amplitudes(momenta, amplitude))
}

/// The closed form sampled on the standard momentum grid.
pub fn closed_form_distribution(r0: f64) -> Result<MomentumDistribution> {
    let momenta = log_momentum_grid();
    let amplitude = momenta
        .iter()
        .map(|&p| hydrogen_a0_closed_form(p, r0))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentumDistribution::from_amplitudes(momenta, amplitude))
}

/// Amplitudes of a state confined to the centred box `|x| < width/2`,
/// taken over the box's own quantization volume: the interior samples are
/// continued by odd reflection about the left wall into a periodic cell of
/// length `2·width`, whose lattice contains the standing-wave momenta
/// `±nπ/width`. Wall samples are set to zero.
pub fn box_standing_wave_amplitudes(state: &WaveFunction, width: f64) -> Result<SpectralAmplitudes> {
    state.require(Representation::Position)?;
    let grid = state.grid();
    if grid.dim() != 1 {
        return Err(Error::UnsupportedDimension(grid.dim()));
    }
    let h = grid.spacing();
    let intervals = width / h;
    let left = (0.5 * (grid.extent() - width)) / h;
    let (m, jl) = (intervals.round() as usize, left.round() as usize);
    if (intervals - m as f64).abs() > 1e-9
        || (left - jl as f64).abs() > 1e-9
        || m < 2
        || jl + m >= grid.points_per_axis()
    {
        return Err(Error::InvalidParameter(format!(
            "box of width {width} is not aligned with a grid of spacing {h}"
        )));
    }
    let cell = UniformGrid::new(1, 2 * m, 2.0 * width)?;
    let psi = state.values();
    let mut f = vec![Complex64::new(0.0, 0.0); 2 * m];
    for s in 1..m {
        f[m + s] = psi[jl + s];
        f[m - s] = -psi[jl + s];
    }
    let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if !(norm > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let scale = 1.0 / norm.sqrt();
    f.iter_mut().for_each(|z| *z *= scale);
    let mut folded = WaveFunction::new(cell, Representation::Position, f)?;
    if let Some(e) = state.energy() {
        folded = folded.with_energy(e);
    }
    forward_transform(&folded)
}

/// Weight carried by the pair of modes nearest `±p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeWeight {
    pub plus_mode: usize,
    pub minus_mode: usize,
    /// `(|a₊|² + |a₋|²) / Σ|a|²`.
    pub fraction: f64,
    /// `min(|a₊|, |a₋|) / max(|a₊|, |a₋|)`.
    pub magnitude_ratio: f64,
}

pub fn two_mode_weight(amps: &SpectralAmplitudes, p: f64) -> TwoModeWeight {
    let grid = amps.grid();
    let nearest = |target: f64| {
        (0..grid.len())
            .min_by(|&a, &b| {
                (grid.momentum(a)[0] - target)
                    .abs()
                    .total_cmp(&(grid.momentum(b)[0] - target).abs())
            })
            .expect("grid is non-empty")
    };
    let plus_mode = nearest(p.abs());
    let minus_mode = nearest(-p.abs());
    let (ap, am) = (amps.values()[plus_mode].norm(), amps.values()[minus_mode].norm());
    let pair = if plus_mode == minus_mode { ap * ap } else { ap * ap + am * am };
    TwoModeWeight {
        plus_mode,
        minus_mode,
        fraction: pair / amps.total_weight(),
        magnitude_ratio: if ap.max(am) > 0.0 { ap.min(am) / ap.max(am) } else { 1.0 },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// `max |a(p) ∓ a(-p)|` over the paired modes.
pub fn parity_deviation(amps: &SpectralAmplitudes, parity: Parity) -> f64 {
    let grid = amps.grid();
    let sign = match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    (0..grid.len())
        .filter(|&k| !grid.is_unpaired(k))
        .map(|k| (amps.values()[k] - sign * amps.values()[grid.mirror_index(k)]).norm())
        .fold(0.0, f64::max)
}
