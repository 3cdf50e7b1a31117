use num_complex::Complex64;

use crate::basis::{UniformGrid, WaveFunction};
use crate::error::{Error, Result};

/// A static potential `V(r_j)` in hartree sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialField {
    grid: UniformGrid,
    values: Vec<f64>,
    label: String,
}

impl PotentialField {
    pub fn new(grid: UniformGrid, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid,
            values,
            label: label.into(),
        })
    }

    pub fn from_fn(
        grid: UniformGrid,
        label: impl Into<String>,
        f: impl Fn([f64; 3]) -> f64,
    ) -> Result<Self> {
        let values = (0..grid.len()).map(|j| f(grid.position(j))).collect();
        Self::new(grid, values, label)
    }

    pub fn free(grid: UniformGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
            label: "free".into(),
        }
    }

    pub fn constant(grid: UniformGrid, value: f64) -> Result<Self> {
        Self::new(grid, vec![value; grid.len()], "constant")
    }

    /// Walls of `height` everywhere outside the centred box of side `width`.
    /// Grid points exactly on the box edge belong to the wall.
    pub fn square_box(grid: UniformGrid, width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0 && width < grid.extent()) {
            return Err(Error::InvalidParameter(format!(
                "box width {width} must lie in (0, {})",
                grid.extent()
            )));
        }
        let half = 0.5 * width;
        let dim = grid.dim();
        Self::from_fn(grid, "box", |r| {
            if r[..dim].iter().any(|x| x.abs() >= half) {
                height
            } else {
                0.0
            }
        })
    }

    /// `½ m ω² r²`.
    pub fn harmonic(grid: UniformGrid, omega: f64, mass: f64) -> Result<Self> {
        if !(omega > 0.0 && mass > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "harmonic potential needs omega > 0 and mass > 0, got {omega}, {mass}"
            )));
        }
        Self::from_fn(grid, "harmonic", |r| {
            0.5 * mass * omega * omega * (r[0] * r[0] + r[1] * r[1] + r[2] * r[2])
        })
    }

    /// `-1/√(r² + ε²)`.
    pub fn soft_coulomb(grid: UniformGrid, eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "soft-coulomb softening must be positive, got {eps}"
            )));
        }
        Self::from_fn(grid, "soft-coulomb", |r| {
            -1.0 / (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + eps * eps).sqrt()
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Pointwise `V ψ` on position samples.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        psi.iter().zip(&self.values).map(|(p, v)| p * *v).collect()
    }

    /// `Σ_j |ψ_j|² V_j`, the discrete `<ψ|V|ψ>`.
    pub fn expectation(&self, psi: &WaveFunction) -> f64 {
        psi.values()
            .iter()
            .zip(&self.values)
            .map(|(p, v)| p.norm_sqr() * v)
            .sum()
    }
}
