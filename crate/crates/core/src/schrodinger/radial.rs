//! s-wave reduction of the hydrogen atom.
//!
//! With `ψ(r) = u(r)/(√(4π) r)` the radial equation is
//! `-½u'' - u/r = E u`, `u(0) = u(r_max) = 0`. The odd extension of `u` to
//! `[-r_max, r_max)` is periodic, so the radial state lives on an ordinary
//! [`UniformGrid`] of `2·n_grid` points and its plane-wave amplitudes are
//! the standing-wave (sine) content of `u`. The kinetic energy uses the
//! three-point operator, which keeps the problem tridiagonal on the
//! `n_grid - 1` interior points.

use num_complex::Complex64;

use super::{EigenSolution, KineticOperator, PotentialField};
use crate::basis::{Representation, UniformGrid, WaveFunction};
use crate::error::{Error, Result};
use crate::linalg::SymTridiagonal;

pub const MIN_RADIAL_INTERVALS: usize = 512;
pub const MIN_RADIAL_EXTENT: f64 = 20.0;

/// Periodic grid carrying the odd extension of `u` on `[0, r_max]` split
/// into `n_grid` intervals.
pub fn radial_grid(n_grid: usize, r_max: f64) -> Result<UniformGrid> {
    if n_grid < MIN_RADIAL_INTERVALS || !n_grid.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "radial grid needs a power-of-two interval count >= {MIN_RADIAL_INTERVALS}, got {n_grid}"
        )));
    }
    if !(r_max >= MIN_RADIAL_EXTENT && r_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "radial extent must be at least {MIN_RADIAL_EXTENT} bohr, got {r_max}"
        )));
    }
    UniformGrid::new(1, 2 * n_grid, 2.0 * r_max)
}

/// `-1/|x|` on the extended grid; the origin, where every odd state
/// vanishes, is assigned 0.
pub fn coulomb_radial_potential(grid: UniformGrid) -> Result<PotentialField> {
    PotentialField::from_fn(grid, "coulomb-radial", |r| {
        if r[0] == 0.0 {
            0.0
        } else {
            -1.0 / r[0].abs()
        }
    })
}

/// Lowest `count` s states of hydrogen (atomic units, infinite nuclear
/// mass).
pub fn solve_hydrogen_radial(n_grid: usize, r_max: f64, count: usize) -> Result<EigenSolution> {
    let grid = radial_grid(n_grid, r_max)?;
    let potential = coulomb_radial_potential(grid)?;
    let mass = 1.0;
    let h = grid.spacing();
    let interior = n_grid - 1;
    if count == 0 || count > interior {
        return Err(Error::TooManyStates {
            requested: count,
            available: interior,
        });
    }
    let kin = 1.0 / (mass * h * h);
    let diag: Vec<f64> = (1..n_grid)
        .map(|i| kin - 1.0 / (i as f64 * h))
        .collect();
    let off = vec![-0.5 * kin; interior - 1];
    let t = SymTridiagonal::new(diag, off)?;
    let tolerance = 1e-10 * (2.0 * kin + 1.0 / h);

    let mut energies = Vec::with_capacity(count);
    let mut states = Vec::with_capacity(count);
    for (index, (energy, u, residual)) in t.lowest(count)?.into_iter().enumerate() {
        if residual > tolerance || !energy.is_finite() {
            return Err(Error::NonConvergence(format!(
                "state {index}: residual {residual:.3e} exceeds {tolerance:.3e} \
                 (n_grid = {n_grid}, r_max = {r_max}, h = {h:.5})"
            )));
        }
        let state = odd_extension(grid, &u, energy)?;
        energies.push(energy);
        states.push(state);
    }
    Ok(EigenSolution::new(
        potential,
        mass,
        KineticOperator::ThreePoint,
        energies,
        states,
    ))
}

// Interior values u_1..u_{n-1} (unit Euclidean norm) → odd periodic state,
// sign chosen so u is positive at its peak.
fn odd_extension(grid: UniformGrid, u: &[f64], energy: f64) -> Result<WaveFunction> {
    let n_grid = grid.points_per_axis() / 2;
    let peak = u
        .iter()
        .copied()
        .fold(0.0_f64, |best, x| if x.abs() > best.abs() { x } else { best });
    let sign = if peak < 0.0 { -1.0 } else { 1.0 };
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = sign / (norm * std::f64::consts::SQRT_2);
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (i, &ui) in u.iter().enumerate() {
        let r = i + 1;
        values[n_grid + r] = Complex64::new(scale * ui, 0.0);
        values[n_grid - r] = Complex64::new(-scale * ui, 0.0);
    }
    Ok(WaveFunction::new(grid, Representation::Position, values)?.with_energy(energy))
}

/// `(r_i, u(r_i))` on the interior points of a radial state, with
/// `∫|u|² dr = 1` when the state is normalized.
pub fn radial_profile(state: &WaveFunction) -> Result<Vec<(f64, f64)>> {
    state.require(Representation::Position)?;
    let grid = state.grid();
    if grid.dim() != 1 {
        return Err(Error::UnsupportedDimension(grid.dim()));
    }
    let n_grid = grid.points_per_axis() / 2;
    let h = grid.spacing();
    let scale = (2.0 / h).sqrt();
    Ok((1..n_grid)
        .map(|i| (i as f64 * h, state.values()[n_grid + i].re * scale))
        .collect())
}

/// The exact ground state `u(r) = 2r e^{-r}` sampled on the radial grid,
/// normalized on the grid and tagged with `E₀ = -½`.
pub fn analytic_hydrogen_ground_state(n_grid: usize, r_max: f64) -> Result<WaveFunction> {
    let grid = radial_grid(n_grid, r_max)?;
    let h = grid.spacing();
    let u: Vec<f64> = (1..n_grid)
        .map(|i| {
            let r = i as f64 * h;
            2.0 * r * (-r).exp()
        })
        .collect();
    odd_extension(grid, &u, -0.5)
}
