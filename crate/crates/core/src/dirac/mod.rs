//! Dirac sector: gamma algebra, free spinors and the minimally coupled
//! Dirac Hamiltonian `H = cα(p̂ − qA/c) + βmc² + qA₀` on a 1D periodic
//! grid with the full four-component spinor. The plane-wave basis is
//! indexed `4k + s` (mode `k`, spinor component `s`).

mod gamma;

pub use gamma::{
    free_spinor, make_gammas, squaring_identity_check, EnergySign, GammaSet, Matrix4c, Spin,
    Spinor4, SquaringCheck, METRIC,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{forward_values, inverse_values, spectral_multiply, UniformGrid, NORM_TOLERANCE};
use crate::error::{Error, Result};
use crate::linalg::{fix_phase, HermitianMatrix};
use crate::schrodinger::{mode_difference, potential_spectrum};
use crate::verify::ResidualReport;

/// Largest number of grid points assembled for the Dirac Hamiltonian.
pub const DIRAC_POINT_LIMIT: usize = 1024;

/// Tolerance factor for Dirac residuals, multiplied by `mc²`.
pub const DIRAC_TOLERANCE: f64 = 1e-8;

/// Electromagnetic potentials on a 1D grid: scalar `A₀` and the component
/// `A_par` along the axis, coupled to a particle of charge `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct EMPotentialField {
    grid: UniformGrid,
    a0: Vec<f64>,
    a_par: Vec<f64>,
    charge: f64,
    label: String,
}

impl EMPotentialField {
    pub fn new(
        grid: UniformGrid,
        a0: Vec<f64>,
        a_par: Vec<f64>,
        charge: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(Error::UnsupportedDimension(grid.dim()));
        }
        for v in [&a0, &a_par] {
            if v.len() != grid.len() {
                return Err(Error::LengthMismatch {
                    expected: grid.len(),
                    found: v.len(),
                });
            }
            if let Some(index) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite { index });
            }
        }
        if !charge.is_finite() {
            return Err(Error::InvalidParameter(format!("charge must be finite, got {charge}")));
        }
        Ok(Self {
            grid,
            a0,
            a_par,
            charge,
            label: label.into(),
        })
    }

    pub fn free(grid: UniformGrid, charge: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![0.0; n], vec![0.0; n], charge, "dirac-free")
    }

    /// Square well whose potential energy `qA₀` is `−depth` for
    /// `|x| < width/2` and zero elsewhere.
    pub fn square_well(grid: UniformGrid, depth: f64, width: f64, charge: f64) -> Result<Self> {
        if !(depth.is_finite() && width > 0.0 && width < grid.extent()) {
            return Err(Error::InvalidParameter(format!(
                "well needs finite depth and width in (0, {}), got depth {depth}, width {width}",
                grid.extent()
            )));
        }
        if charge == 0.0 {
            return Err(Error::InvalidParameter("a well needs a nonzero charge".into()));
        }
        let inside = -depth / charge;
        let a0 = (0..grid.len())
            .map(|j| if grid.position(j)[0].abs() < 0.5 * width { inside } else { 0.0 })
            .collect();
        Self::new(grid, a0, vec![0.0; grid.len()], charge, "dirac-well")
    }

    pub fn constant_scalar(grid: UniformGrid, a0: f64, charge: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![a0; n], vec![0.0; n], charge, "dirac-constant-A0")
    }

    pub fn constant_vector(grid: UniformGrid, a: f64, charge: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![0.0; n], vec![a; n], charge, "dirac-constant-A")
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn a0(&self) -> &[f64] {
        &self.a0
    }

    pub fn a_par(&self) -> &[f64] {
        &self.a_par
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `qA₀(x)`, the potential energy seen by the particle.
    pub fn potential_energy(&self) -> Vec<f64> {
        self.a0.iter().map(|a| self.charge * a).collect()
    }
}

/// Four-component state on a 1D grid, `Σ_j ψ_j†ψ_j = 1` when normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    grid: UniformGrid,
    values: Vec<Spinor4>,
    energy: Option<f64>,
}

impl SpinorField {
    pub fn new(grid: UniformGrid, values: Vec<Spinor4>) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(Error::UnsupportedDimension(grid.dim()));
        }
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if let Some(index) = values
            .iter()
            .position(|s| s.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid,
            values,
            energy: None,
        })
    }

    /// `u e^{ip_k x}/√N`.
    pub fn plane_wave(grid: UniformGrid, k: i64, spinor: Spinor4) -> Result<Self> {
        let p = k as f64 * grid.momentum_step();
        let scale = 1.0 / ((grid.len() as f64).sqrt() * spinor.norm());
        let values = (0..grid.len())
            .map(|j| spinor * Complex64::from_polar(scale, p * grid.position(j)[0]))
            .collect();
        Self::new(grid, values)
    }

    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = Some(energy);
        self
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Spinor4] {
        &self.values
    }

    pub fn energy(&self) -> Option<f64> {
        self.energy
    }

    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|s| s.norm_squared()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_squared() - 1.0).abs() < NORM_TOLERANCE
    }

    /// Samples of spinor component `s`.
    pub fn component(&self, s: usize) -> Vec<Complex64> {
        self.values.iter().map(|v| v[s]).collect()
    }

    fn from_components(grid: UniformGrid, comps: &[Vec<Complex64>; 4]) -> Result<Self> {
        let values = (0..grid.len())
            .map(|j| Spinor4::new(comps[0][j], comps[1][j], comps[2][j], comps[3][j]))
            .collect();
        Self::new(grid, values)
    }

    /// Spinor amplitude `a(p_k)` of every mode.
    pub fn amplitudes(&self) -> Vec<Spinor4> {
        let comps: Vec<Vec<Complex64>> =
            (0..4).map(|s| forward_values(&self.grid, &self.component(s))).collect();
        (0..self.grid.len())
            .map(|k| Spinor4::new(comps[0][k], comps[1][k], comps[2][k], comps[3][k]))
            .collect()
    }

    fn check(&self, pot: &EMPotentialField) -> Result<f64> {
        if self.grid != pot.grid {
            return Err(Error::GridMismatch);
        }
        let energy = self.energy.ok_or(Error::MissingEnergy)?;
        if !self.is_normalized() {
            return Err(Error::NotNormalized {
                norm: self.norm_squared(),
            });
        }
        Ok(energy)
    }
}

fn check_parameters(grid: &UniformGrid, m: f64, c: f64) -> Result<()> {
    if grid.dim() != 1 {
        return Err(Error::UnsupportedDimension(grid.dim()));
    }
    if grid.len() > DIRAC_POINT_LIMIT {
        return Err(Error::GridTooLarge {
            size: grid.len(),
            limit: DIRAC_POINT_LIMIT,
        });
    }
    if !(m > 0.0 && m.is_finite() && c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mass and speed of light must be positive, got m = {m}, c = {c}"
        )));
    }
    Ok(())
}

/// Dense `4N × 4N` Hamiltonian in the momentum ⊗ spinor basis.
pub fn assemble_dirac_hamiltonian(pot: &EMPotentialField, m: f64, c: f64) -> Result<HermitianMatrix> {
    let grid = pot.grid;
    check_parameters(&grid, m, c)?;
    let g = make_gammas();
    let alpha = g.alpha(3);
    let beta = *g.beta();
    let q = pot.charge;
    let a0t = potential_spectrum(&grid, &pot.a0);
    let at = potential_spectrum(&grid, &pot.a_par);
    let n = grid.len();
    let dim = 4 * n;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    // one column per task; column 4k' + t
    data.par_chunks_mut(dim).enumerate().for_each(|(col, column)| {
        let (kp, t) = (col / 4, col % 4);
        for k in 0..n {
            let d = mode_difference(&grid, k, kp);
            let (v0, va) = (a0t[d] * q, at[d] * q);
            for s in 0..4 {
                let mut h = -alpha[(s, t)] * va;
                if s == t {
                    h += v0;
                }
                if k == kp {
                    let p = grid.momentum(k)[0];
                    h += alpha[(s, t)] * (c * p) + beta[(s, t)] * (m * c * c);
                }
                column[4 * k + s] = h;
            }
        }
    });
    HermitianMatrix::new(DMatrix::from_vec(dim, dim, data))
}

/// All `4N` eigenvalues, ascending.
pub fn dirac_spectrum(pot: &EMPotentialField, m: f64, c: f64) -> Result<Vec<f64>> {
    Ok(assemble_dirac_hamiltonian(pot, m, c)?.eigh()?.values)
}

/// Eigenpairs of the positive-energy branch.
#[derive(Debug, Clone)]
pub struct DiracSolution {
    potential: EMPotentialField,
    mass: f64,
    c: f64,
    energies: Vec<f64>,
    states: Vec<SpinorField>,
}

impl DiracSolution {
    pub fn potential(&self) -> &EMPotentialField {
        &self.potential
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn speed_of_light(&self) -> f64 {
        self.c
    }

    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn states(&self) -> &[SpinorField] {
        &self.states
    }

    /// `mc² − E` per state.
    pub fn binding_energies(&self) -> Vec<f64> {
        self.energies.iter().map(|e| self.rest_energy() - e).collect()
    }
}

/// The lowest `count` eigenpairs with `E > 0`, ascending: bound electron
/// states first, then the continuum above `mc²`.
pub fn solve_dirac(pot: &EMPotentialField, m: f64, c: f64, count: usize) -> Result<DiracSolution> {
    let grid = pot.grid;
    check_parameters(&grid, m, c)?;
    let eig = assemble_dirac_hamiltonian(pot, m, c)?.eigh()?;
    let first = eig.values.iter().position(|&e| e > 0.0).unwrap_or(eig.values.len());
    let available = eig.values.len() - first;
    if count == 0 || count > available {
        return Err(Error::TooManyStates {
            requested: count,
            available,
        });
    }
    let n = grid.len();
    let mut energies = Vec::with_capacity(count);
    let mut states = Vec::with_capacity(count);
    for col in first..first + count {
        let v = eig.vectors.column(col);
        let mut comps: [Vec<Complex64>; 4] = Default::default();
        for (s, comp) in comps.iter_mut().enumerate() {
            let amps: Vec<Complex64> = (0..n).map(|k| v[4 * k + s]).collect();
            *comp = inverse_values(&grid, &amps);
        }
        // phase convention on the flattened position samples
        let mut flat: Vec<Complex64> = (0..n).flat_map(|j| (0..4).map(move |s| (j, s))).map(|(j, s)| comps[s][j]).collect();
        fix_phase(&mut flat);
        for (i, z) in flat.into_iter().enumerate() {
            comps[i % 4][i / 4] = z;
        }
        let e = eig.values[col];
        energies.push(e);
        states.push(SpinorField::from_components(grid, &comps)?.with_energy(e));
    }
    Ok(DiracSolution {
        potential: pot.clone(),
        mass: m,
        c,
        energies,
        states,
    })
}

/// `Θ(x) = [γ⁰(E − qA₀) − γ³(p̂ − qA/c)c − mc²]ψ(x)`, with `p̂` applied
/// spectrally.
pub fn theta_field(state: &SpinorField, pot: &EMPotentialField, m: f64, c: f64) -> Result<Vec<Spinor4>> {
    let energy = state.check(pot)?;
    check_parameters(&pot.grid, m, c)?;
    let grid = pot.grid;
    let g = make_gammas();
    let q = pot.charge;
    let dp: Vec<Vec<Complex64>> = (0..4)
        .map(|s| spectral_multiply(&grid, &state.component(s), |k| grid.momentum(k)[0]))
        .collect();
    let mc2 = Complex64::new(m * c * c, 0.0);
    Ok((0..grid.len())
        .map(|j| {
            let psi = state.values[j];
            let p_psi = Spinor4::new(dp[0][j], dp[1][j], dp[2][j], dp[3][j]);
            let kinetic = p_psi * Complex64::new(c, 0.0) - psi * Complex64::new(q * pot.a_par[j], 0.0);
            g.gamma[0] * psi * Complex64::new(energy - q * pot.a0[j], 0.0) - g.gamma[3] * kinetic - psi * mc2
        })
        .collect())
}

/// Pointwise and averaged size of `Θ`; the averaged value is
/// `Re Σ_j ψ̄_j Θ_j` with `ψ̄ = ψ†γ⁰`.
pub fn theta_residual(state: &SpinorField, pot: &EMPotentialField, m: f64, c: f64) -> Result<ResidualReport> {
    let theta = theta_field(state, pot, m, c)?;
    let g0 = make_gammas().gamma[0];
    let norm = state.norm_squared();
    let density_scale = (state.grid.len() as f64 / norm).sqrt();
    let averaged: Complex64 = state
        .values
        .iter()
        .zip(&theta)
        .map(|(psi, th)| (psi.adjoint() * g0 * th)[0])
        .sum();
    let l2 = theta.iter().map(|t| t.norm_squared()).sum::<f64>().sqrt();
    Ok(ResidualReport {
        pointwise_max: theta.iter().map(|t| t.norm()).fold(0.0, f64::max) * density_scale,
        pointwise_l2: l2 / norm.sqrt(),
        averaged_residual: averaged.re / norm,
    })
}

/// Both sides of the averaged linear relation reduced by the `ψ̄(·)ψ`
/// contraction: the left side `Σ_k ā_k[γ⁰E − γ³p_k c − mc²]a_k` from the
/// spinor amplitudes, the right side `Σ_j ψ̄_j[γ⁰qA₀ − γ³qA]ψ_j` from the
/// position samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRelation {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs − rhs|`.
    pub residual: f64,
}

impl LinearRelation {
    pub fn passes(&self, m: f64, c: f64) -> bool {
        self.residual < DIRAC_TOLERANCE * m * c * c
    }
}

pub fn averaged_linear_relation(
    state: &SpinorField,
    pot: &EMPotentialField,
    m: f64,
    c: f64,
) -> Result<LinearRelation> {
    let energy = state.check(pot)?;
    check_parameters(&pot.grid, m, c)?;
    let grid = pot.grid;
    let g = make_gammas();
    let g0 = g.gamma[0];
    let q = pot.charge;
    let norm = state.norm_squared();
    let lhs: Complex64 = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let form = g.linear_form(grid.momentum(k)[0], energy, m, c);
            (a.adjoint() * g0 * form * a)[0]
        })
        .sum();
    let rhs: Complex64 = state
        .values
        .iter()
        .enumerate()
        .map(|(j, psi)| {
            let coupling = g0 * Complex64::new(q * pot.a0[j], 0.0) - g.gamma[3] * Complex64::new(q * pot.a_par[j], 0.0);
            (psi.adjoint() * g0 * coupling * psi)[0]
        })
        .sum();
    let (lhs, rhs) = (lhs.re / norm, rhs.re / norm);
    Ok(LinearRelation {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

/// `(ψ_a + ψ_b)/√2` tagged with the mean energy.
pub fn equal_mix(a: &SpinorField, b: &SpinorField) -> Result<SpinorField> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let ea = a.energy.ok_or(Error::MissingEnergy)?;
    let eb = b.energy.ok_or(Error::MissingEnergy)?;
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let values = a.values.iter().zip(&b.values).map(|(x, y)| (x + y) * s).collect();
    Ok(SpinorField::new(a.grid, values)?.with_energy(0.5 * (ea + eb)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::make_grid;
    use crate::schrodinger::{solve_eigen, PotentialField};

    const C: f64 = crate::SPEED_OF_LIGHT;

    fn dispersion(grid: &UniformGrid, m: f64, c: f64) -> Vec<f64> {
        let mut e: Vec<f64> = (0..grid.len())
            .flat_map(|k| {
                let p = grid.momentum(k)[0];
                let w = (p * p * c * c + m * m * c.powi(4)).sqrt();
                [w, w, -w, -w]
            })
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let g = make_grid(1, 32, 10.0).unwrap();
        let a: Vec<f64> = (0..32).map(|j| (0.3 * j as f64).sin()).collect();
        let a0: Vec<f64> = (0..32).map(|j| (0.2 * j as f64).cos()).collect();
        let pot = EMPotentialField::new(g, a0, a, -1.0, "test").unwrap();
        let h = assemble_dirac_hamiltonian(&pot, 1.0, C).unwrap();
        assert_eq!(h.dim(), 128);
        assert!(h.hermiticity_error() < 1e-12);
    }

    #[test]
    fn free_momentum_block() {
        let g = make_grid(1, 16, 8.0).unwrap();
        let h = assemble_dirac_hamiltonian(&EMPotentialField::free(g, -1.0).unwrap(), 1.0, C).unwrap();
        let k = 3;
        let block = DMatrix::from_fn(4, 4, |i, j| h.get(4 * k + i, 4 * k + j));
        let mut ev = nalgebra::SymmetricEigen::new(block).eigenvalues.as_slice().to_vec();
        ev.sort_by(f64::total_cmp);
        let p = g.momentum(k)[0];
        let w = (p * p * C * C + C.powi(4)).sqrt();
        for (e, x) in ev.iter().zip([-w, -w, w, w]) {
            assert!((e - x).abs() / w < 1e-13);
        }
        // no coupling between modes
        assert_eq!(h.get(4 * k, 4 * (k + 1)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn free_dispersion_and_pairing() {
        let g = make_grid(1, 32, 10.0).unwrap();
        let ev = dirac_spectrum(&EMPotentialField::free(g, -1.0).unwrap(), 1.0, C).unwrap();
        let exact = dispersion(&g, 1.0, C);
        for (e, x) in ev.iter().zip(&exact) {
            assert!(((e - x) / x).abs() < 1e-10);
        }
        let n = ev.len();
        for i in 0..n / 2 {
            assert!((ev[i] + ev[n - 1 - i]).abs() / ev[n - 1 - i] < 1e-10);
        }
    }

    #[test]
    fn constant_scalar_shifts_spectrum() {
        let g = make_grid(1, 16, 8.0).unwrap();
        let v = 0.37;
        let free = dirac_spectrum(&EMPotentialField::free(g, -1.0).unwrap(), 1.0, C).unwrap();
        let shifted = dirac_spectrum(&EMPotentialField::constant_scalar(g, v, -1.0).unwrap(), 1.0, C).unwrap();
        for (a, b) in free.iter().zip(&shifted) {
            assert!((b - (a - v)).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_vector_shifts_momentum() {
        let g = make_grid(1, 16, 8.0).unwrap();
        let (a, q) = (25.0, -1.0);
        let ev = dirac_spectrum(&EMPotentialField::constant_vector(g, a, q).unwrap(), 1.0, C).unwrap();
        let mut exact: Vec<f64> = (0..g.len())
            .flat_map(|k| {
                let p = g.momentum(k)[0] - q * a / C;
                let w = (p * p * C * C + C.powi(4)).sqrt();
                [w, w, -w, -w]
            })
            .collect();
        exact.sort_by(f64::total_cmp);
        for (e, x) in ev.iter().zip(&exact) {
            assert!(((e - x) / x).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g3 = make_grid(3, 4, 2.0).unwrap();
        assert!(EMPotentialField::free(g3, -1.0).is_err());
        let big = make_grid(1, 2048, 10.0).unwrap();
        let pot = EMPotentialField::free(big, -1.0).unwrap();
        assert!(matches!(
            assemble_dirac_hamiltonian(&pot, 1.0, C),
            Err(Error::GridTooLarge { size: 2048, limit: 1024 })
        ));
        let g = make_grid(1, 16, 8.0).unwrap();
        let pot = EMPotentialField::free(g, -1.0).unwrap();
        assert!(assemble_dirac_hamiltonian(&pot, 0.0, C).is_err());
        assert!(solve_dirac(&pot, 1.0, C, 0).is_err());
        assert!(solve_dirac(&pot, 1.0, C, 33).is_err());
        assert!(EMPotentialField::square_well(g, 0.5, 9.0, -1.0).is_err());
    }

    #[test]
    fn free_ordering() {
        let g = make_grid(1, 32, 10.0).unwrap();
        let sol = solve_dirac(&EMPotentialField::free(g, -1.0).unwrap(), 1.0, C, 4).unwrap();
        let e = sol.energies();
        let mc2 = C * C;
        let p1 = g.momentum_step();
        let e1 = (p1 * p1 * C * C + mc2 * mc2).sqrt();
        assert!((e[0] - mc2).abs() / mc2 < 1e-12);
        assert!((e[1] - mc2).abs() / mc2 < 1e-12);
        assert!((e[2] - e1).abs() / e1 < 1e-12);
        assert!((e[3] - e1).abs() / e1 < 1e-12);
        for s in sol.states() {
            assert!(s.is_normalized());
            let amps = s.amplitudes();
            let w: f64 = [1usize, g.len() - 1].iter().map(|&k| amps[k].norm_squared()).sum();
            let w0 = amps[0].norm_squared();
            assert!(w0 > 1.0 - 1e-10 || w > 1.0 - 1e-10);
        }
    }

    #[test]
    fn free_plane_wave_has_zero_theta() {
        let g = make_grid(1, 32, 10.0).unwrap();
        let pot = EMPotentialField::free(g, -1.0).unwrap();
        for k in [-3_i64, 0, 5] {
            let p = k as f64 * g.momentum_step();
            let (u, e) = free_spinor(p, EnergySign::Positive, Spin::Down, 1.0, C);
            let psi = SpinorField::plane_wave(g, k, u).unwrap().with_energy(e);
            let r = theta_residual(&psi, &pot, 1.0, C).unwrap();
            assert!(r.pointwise_max < 1e-12 * C * C, "{}", r.pointwise_max);
            let lin = averaged_linear_relation(&psi, &pot, 1.0, C).unwrap();
            assert!(lin.lhs.abs() < 1e-12 * C * C && lin.rhs.abs() < 1e-12);
        }
    }

    #[test]
    fn well_states_pass_both_checks() {
        let g = make_grid(1, 64, 20.0).unwrap();
        let pot = EMPotentialField::square_well(g, 0.5, 2.0, -1.0).unwrap();
        let sol = solve_dirac(&pot, 1.0, C, 4).unwrap();
        let b = sol.binding_energies();
        assert!(b[0] > 0.0 && b[0] < 0.5);
        for s in sol.states() {
            let r = theta_residual(s, &pot, 1.0, C).unwrap();
            assert!(r.pointwise_l2 < 1e-10 * C * C, "{}", r.pointwise_l2);
            assert!(r.averaged_residual.abs() < 1e-10 * C * C);
            let lin = averaged_linear_relation(s, &pot, 1.0, C).unwrap();
            assert!(lin.passes(1.0, C));
            assert!(lin.residual < 1e-10 * C * C);
        }
    }

    #[test]
    fn wrong_energy_tag_is_linear() {
        let g = make_grid(1, 32, 10.0).unwrap();
        let pot = EMPotentialField::square_well(g, 0.5, 2.0, -1.0).unwrap();
        let sol = solve_dirac(&pot, 1.0, C, 1).unwrap();
        let s = &sol.states()[0];
        let delta = 0.013;
        let wrong = s.clone().with_energy(s.energy().unwrap() + delta);
        let r = theta_residual(&wrong, &pot, 1.0, C).unwrap();
        assert!((r.averaged_residual - delta).abs() < 1e-10 * C * C);
        assert!((r.pointwise_l2 - delta).abs() < 1e-9);
    }

    #[test]
    fn theta_separates_eigenpairs_from_impostors() {
        let g = make_grid(1, 16, 8.0).unwrap();
        let pot = EMPotentialField::square_well(g, 0.5, 2.0, -1.0).unwrap();
        let sol = solve_dirac(&pot, 1.0, C, 3).unwrap();
        let tol = 1e-10 * C * C;
        for s in sol.states() {
            assert!(theta_residual(s, &pot, 1.0, C).unwrap().pointwise_l2 < tol);
        }
        let mix = equal_mix(&sol.states()[0], &sol.states()[2]).unwrap();
        let r = theta_residual(&mix, &pot, 1.0, C).unwrap();
        assert!(r.pointwise_l2 > tol);
        assert!(r.averaged_residual.abs() < 1e-10);
        let lin = averaged_linear_relation(&mix, &pot, 1.0, C).unwrap();
        assert!(lin.residual < 1e-10 * C * C);
    }

    #[test]
    fn non_relativistic_limit() {
        let g = make_grid(1, 64, 20.0).unwrap();
        let pot = EMPotentialField::square_well(g, 0.5, 2.0, -1.0).unwrap();
        let dirac = solve_dirac(&pot, 1.0, C, 1).unwrap();
        let schr = PotentialField::new(g, pot.potential_energy(), "well").unwrap();
        let e_s = solve_eigen(&schr, 1.0, 1).unwrap().energies()[0];
        let b_d = dirac.binding_energies()[0];
        assert!(((b_d + e_s) / e_s).abs() < 1e-4, "{b_d} vs {e_s}");
    }

    #[test]
    fn missing_tag_and_mismatch() {
        let g = make_grid(1, 16, 8.0).unwrap();
        let pot = EMPotentialField::free(g, -1.0).unwrap();
        let (u, _) = free_spinor(0.0, EnergySign::Positive, Spin::Up, 1.0, C);
        let psi = SpinorField::plane_wave(g, 0, u).unwrap();
        assert!(matches!(theta_residual(&psi, &pot, 1.0, C), Err(Error::MissingEnergy)));
        let other = EMPotentialField::free(make_grid(1, 16, 9.0).unwrap(), -1.0).unwrap();
        let psi = psi.with_energy(C * C);
        assert!(matches!(theta_residual(&psi, &other, 1.0, C), Err(Error::GridMismatch)));
    }
}
