//! Non-relativistic Hamiltonian in the plane-wave basis.
//!
//! In the momentum basis the kinetic energy is diagonal, `p_k²/2m`, and a
//! static potential couples modes through its own transform:
//! `H[k, k'] = (p_k²/2m) δ_{kk'} + Ṽ(p_k - p_k')` with
//! `Ṽ(q) = N^{-dim} Σ_j V(r_j) e^{-i q·r_j}`. Each eigenvector is the set of
//! plane-wave amplitudes of one stationary state.

mod potential;
mod radial;

pub use potential::PotentialField;
pub use radial::{
    analytic_hydrogen_ground_state, coulomb_radial_potential, radial_grid, radial_profile,
    solve_hydrogen_radial, MIN_RADIAL_EXTENT, MIN_RADIAL_INTERVALS,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{self, inner_product, UniformGrid, WaveFunction};
use crate::error::{Error, Result};
use crate::linalg::{fix_phase, HermitianMatrix};

/// Largest basis assembled densely.
pub const DENSE_LIMIT: usize = 4096;

/// How the kinetic energy acts on a plane wave of momentum `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KineticOperator {
    /// `p²/2m`, exact on every lattice mode.
    #[default]
    Spectral,
    /// The three-point finite-difference Laplacian, whose plane-wave symbol
    /// is `Σ_axes (1 - cos(p h))/(m h²)`.
    ThreePoint,
}

impl KineticOperator {
    pub fn symbol(&self, grid: &UniformGrid, mode: usize, mass: f64) -> f64 {
        match self {
            KineticOperator::Spectral => grid.momentum_squared(mode) / (2.0 * mass),
            KineticOperator::ThreePoint => {
                let h = grid.spacing();
                grid.momentum(mode)[..grid.dim()]
                    .iter()
                    .map(|p| (1.0 - (p * h).cos()) / (mass * h * h))
                    .sum()
            }
        }
    }

    /// `T̂ψ` for position samples `psi`.
    pub fn apply(&self, grid: &UniformGrid, psi: &[Complex64], mass: f64) -> Vec<Complex64> {
        basis::spectral_multiply(grid, psi, |k| self.symbol(grid, k, mass))
    }
}

/// Lowest eigenpairs of a Schrödinger problem.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    potential: PotentialField,
    mass: f64,
    kinetic: KineticOperator,
    energies: Vec<f64>,
    states: Vec<WaveFunction>,
}

impl EigenSolution {
    pub(crate) fn new(
        potential: PotentialField,
        mass: f64,
        kinetic: KineticOperator,
        energies: Vec<f64>,
        states: Vec<WaveFunction>,
    ) -> Self {
        Self {
            potential,
            mass,
            kinetic,
            energies,
            states,
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        self.potential.grid()
    }

    pub fn potential(&self) -> &PotentialField {
        &self.potential
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn kinetic(&self) -> KineticOperator {
        self.kinetic
    }

    pub fn count(&self) -> usize {
        self.states.len()
    }

    /// Ascending, in hartree.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Normalized position-space states, each tagged with its energy.
    pub fn states(&self) -> &[WaveFunction] {
        &self.states
    }

    /// `max |<ψ_a|ψ_b> - δ_ab|` over all pairs.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (a, sa) in self.states.iter().enumerate() {
            for sb in &self.states[..=a] {
                let g = inner_product(sa, sb).expect("states share a grid");
                let target = if std::ptr::eq(sa, sb) { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

/// Transform of the potential at every wrapped mode difference,
/// `Ṽ[m] = N^{-dim} Σ_j V_j e^{-i p_m·r_j}`, symmetrized so that
/// `Ṽ[-m] = Ṽ[m]*` holds exactly.
pub fn potential_spectrum(grid: &UniformGrid, values: &[f64]) -> Vec<Complex64> {
    let samples: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let scale = 1.0 / (grid.len() as f64).sqrt();
    let raw: Vec<Complex64> = basis::forward_values(grid, &samples)
        .into_iter()
        .map(|z| z * scale)
        .collect();
    (0..raw.len())
        .map(|m| 0.5 * (raw[m] + raw[grid.mirror_index(m)].conj()))
        .collect()
}

/// Flat index of the wrapped difference `k - k'` of two modes.
pub(crate) fn mode_difference(grid: &UniformGrid, k: usize, kp: usize) -> usize {
    let n = grid.points_per_axis();
    let a = grid.axis_indices(k);
    let b = grid.axis_indices(kp);
    let mut d = [0; 3];
    for axis in 0..grid.dim() {
        d[axis] = (a[axis] + n - b[axis]) % n;
    }
    grid.flat_index(d)
}

/// Dense plane-wave Hamiltonian with the spectral kinetic operator.
pub fn assemble_hamiltonian(pot: &PotentialField, mass: f64) -> Result<HermitianMatrix> {
    assemble_hamiltonian_with(pot, mass, KineticOperator::Spectral)
}

pub fn assemble_hamiltonian_with(
    pot: &PotentialField,
    mass: f64,
    kinetic: KineticOperator,
) -> Result<HermitianMatrix> {
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
    }
    let grid = *pot.grid();
    let dim = grid.len();
    if dim > DENSE_LIMIT {
        return Err(Error::GridTooLarge {
            size: dim,
            limit: DENSE_LIMIT,
        });
    }
    let vt = potential_spectrum(&grid, pot.values());
    // column-major fill, one column per task
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    data.par_chunks_mut(dim).enumerate().for_each(|(col, column)| {
        for (row, slot) in column.iter_mut().enumerate() {
            *slot = vt[mode_difference(&grid, row, col)];
        }
        column[col] += kinetic.symbol(&grid, col, mass);
    });
    HermitianMatrix::new(DMatrix::from_vec(dim, dim, data))
}

/// Lowest `count` eigenpairs of the plane-wave Hamiltonian.
pub fn solve_eigen(pot: &PotentialField, mass: f64, count: usize) -> Result<EigenSolution> {
    solve_eigen_with(pot, mass, count, KineticOperator::Spectral)
}

pub fn solve_eigen_with(
    pot: &PotentialField,
    mass: f64,
    count: usize,
    kinetic: KineticOperator,
) -> Result<EigenSolution> {
    let grid = *pot.grid();
    if count == 0 || count > grid.len() {
        return Err(Error::TooManyStates {
            requested: count,
            available: grid.len(),
        });
    }
    let h = assemble_hamiltonian_with(pot, mass, kinetic)?;
    let eig = h.eigh()?;
    let mut energies = Vec::with_capacity(count);
    let mut states = Vec::with_capacity(count);
    for n in 0..count {
        let amps: Vec<Complex64> = eig.vectors.column(n).iter().copied().collect();
        let mut values = basis::inverse_values(&grid, &amps);
        fix_phase(&mut values);
        let state = WaveFunction::new(grid, basis::Representation::Position, values)?
            .with_energy(eig.values[n]);
        energies.push(eig.values[n]);
        states.push(state);
    }
    Ok(EigenSolution::new(pot.clone(), mass, kinetic, energies, states))
}
