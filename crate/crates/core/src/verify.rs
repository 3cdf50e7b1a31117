//! Averaged energy relation and the pointwise residual of a stationary
//! state.
//!
//! For a state with plane-wave amplitudes `a(p_k)` and energy tag `E_n`, the
//! averaged relation reads `Σ_k |a_k|² p_k²/2m + <ψ|V|ψ> = E_n`: the kinetic
//! side is computed from the amplitudes, the potential side from the
//! position samples. The pointwise residual
//! `Φ(r) = E_n ψ(r) - [T̂ψ](r) - V(r)ψ(r)` vanishes at every grid point
//! exactly when `(ψ, E_n)` is an eigenpair; its overlap `<ψ|Φ>` is the
//! averaged relation again, which can vanish without `Φ` vanishing.

use num_complex::Complex64;

use crate::basis::{dot, forward_transform, Representation, WaveFunction};
use crate::error::{Error, Result};
use crate::schrodinger::{EigenSolution, KineticOperator, PotentialField};

/// Tolerance factor for the averaged relation and pointwise residual of a
/// converged eigenstate; multiplied by `max(1, |E_n|)`.
pub const RELATION_TOLERANCE: f64 = 1e-8;

/// Averaged kinetic, potential and total energy of one state (hartree).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub kinetic_avg: f64,
    pub potential_avg: f64,
    pub total_avg: f64,
    /// `|total - kinetic - potential|`.
    pub relation_residual: f64,
}

impl EnergyBreakdown {
    pub fn passes(&self) -> bool {
        self.relation_residual < RELATION_TOLERANCE * self.total_avg.abs().max(1.0)
    }
}

/// Size of the residual field `Φ` (or `Θ` for spinors).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `max_r |Φ(r)|`, with the state scaled to unit mean density over the
    /// quantization volume (`V₀⁻¹∫|ψ|² = 1`).
    pub pointwise_max: f64,
    /// `‖Φ‖ / ‖ψ‖`.
    pub pointwise_l2: f64,
    /// `Re <ψ|Φ> / <ψ|ψ>`.
    pub averaged_residual: f64,
}

impl ResidualReport {
    pub fn passes(&self, energy: f64) -> bool {
        self.pointwise_l2 < RELATION_TOLERANCE * energy.abs().max(1.0)
    }
}

fn check_state(state: &WaveFunction, pot: &PotentialField) -> Result<f64> {
    state.require(Representation::Position)?;
    if state.grid() != pot.grid() {
        return Err(Error::GridMismatch);
    }
    let energy = state.energy().ok_or(Error::MissingEnergy)?;
    state.require_normalized()?;
    Ok(energy)
}

pub fn energy_breakdown(
    state: &WaveFunction,
    pot: &PotentialField,
    mass: f64,
) -> Result<EnergyBreakdown> {
    energy_breakdown_with(state, pot, mass, KineticOperator::Spectral)
}

pub fn energy_breakdown_with(
    state: &WaveFunction,
    pot: &PotentialField,
    mass: f64,
    kinetic: KineticOperator,
) -> Result<EnergyBreakdown> {
    let energy = check_state(state, pot)?;
    let amps = forward_transform(state)?;
    amps.check_aliasing();
    let grid = state.grid();
    let kinetic_avg: f64 = amps
        .values()
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm_sqr() * kinetic.symbol(grid, k, mass))
        .sum();
    let potential_avg = pot.expectation(state);
    Ok(EnergyBreakdown {
        kinetic_avg,
        potential_avg,
        total_avg: energy,
        relation_residual: (energy - kinetic_avg - potential_avg).abs(),
    })
}

/// `<ψ|T̂ψ>` evaluated in position space with the spectral operator, the
/// second route to the kinetic average.
pub fn kinetic_average_in_position(
    state: &WaveFunction,
    mass: f64,
    kinetic: KineticOperator,
) -> Result<f64> {
    state.require(Representation::Position)?;
    let t_psi = kinetic.apply(state.grid(), state.values(), mass);
    Ok(dot(state.values(), &t_psi).re / state.norm_squared())
}

/// The residual field `Φ(r_j)` itself.
pub fn residual_field(
    state: &WaveFunction,
    pot: &PotentialField,
    mass: f64,
    kinetic: KineticOperator,
) -> Result<Vec<Complex64>> {
    let energy = check_state(state, pot)?;
    let psi = state.values();
    let t_psi = kinetic.apply(state.grid(), psi, mass);
    Ok(psi
        .iter()
        .zip(&t_psi)
        .zip(pot.values())
        .map(|((p, t), v)| energy * p - t - v * p)
        .collect())
}

pub fn pointwise_residual(
    state: &WaveFunction,
    pot: &PotentialField,
    mass: f64,
) -> Result<ResidualReport> {
    pointwise_residual_with(state, pot, mass, KineticOperator::Spectral)
}

pub fn pointwise_residual_with(
    state: &WaveFunction,
    pot: &PotentialField,
    mass: f64,
    kinetic: KineticOperator,
) -> Result<ResidualReport> {
    let phi = residual_field(state, pot, mass, kinetic)?;
    Ok(summarize(state.values(), &phi, state.grid().len()))
}

/// Shared reduction for scalar fields; `points` is the number of grid
/// points used to rescale to unit mean density.
pub(crate) fn summarize(psi: &[Complex64], phi: &[Complex64], points: usize) -> ResidualReport {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let density_scale = (points as f64 / norm).sqrt();
    let pointwise_max = phi.iter().map(|z| z.norm()).fold(0.0, f64::max) * density_scale;
    let phi_norm = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    ResidualReport {
        pointwise_max,
        pointwise_l2: phi_norm / norm.sqrt(),
        averaged_residual: dot(psi, phi).re / norm,
    }
}

/// Both readings of the same state: the averaged relation and the
/// pointwise condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualContrast {
    pub breakdown: EnergyBreakdown,
    pub residual: ResidualReport,
}

pub fn averaged_vs_pointwise(
    state: &WaveFunction,
    pot: &PotentialField,
    mass: f64,
) -> Result<ResidualContrast> {
    averaged_vs_pointwise_with(state, pot, mass, KineticOperator::Spectral)
}

pub fn averaged_vs_pointwise_with(
    state: &WaveFunction,
    pot: &PotentialField,
    mass: f64,
    kinetic: KineticOperator,
) -> Result<ResidualContrast> {
    Ok(ResidualContrast {
        breakdown: energy_breakdown_with(state, pot, mass, kinetic)?,
        residual: pointwise_residual_with(state, pot, mass, kinetic)?,
    })
}

/// Verify every state of a solution with the kinetic operator it was
/// solved with.
pub fn verify_solution(solution: &EigenSolution) -> Result<Vec<ResidualContrast>> {
    solution
        .states()
        .iter()
        .map(|s| {
            averaged_vs_pointwise_with(s, solution.potential(), solution.mass(), solution.kinetic())
        })
        .collect()
}

/// `(ψ_a + ψ_b)/√2` tagged with the mean energy: a state whose averaged
/// relation holds while its pointwise residual does not.
pub fn equal_mix(a: &WaveFunction, b: &WaveFunction) -> Result<WaveFunction> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    b.require(a.representation())?;
    let ea = a.energy().ok_or(Error::MissingEnergy)?;
    let eb = b.energy().ok_or(Error::MissingEnergy)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x + y) * s)
        .collect();
    Ok(WaveFunction::new(*a.grid(), a.representation(), values)?.with_energy(0.5 * (ea + eb)))
}
