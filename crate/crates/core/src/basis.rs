//! Periodic grids, the plane-wave basis and the transforms between the
//! position and momentum representations.
//!
//! A state on a grid of `N^dim` points is a superposition of the `N^dim`
//! plane waves `e^{i p_k·r}` whose momenta form the dual lattice
//! `p_k = 2πk/L`, `k ∈ [-N/2, N/2)` per axis (atomic units, ħ = 1).
//! Both transforms carry a `1/√(N^dim)` factor, so the discrete map is
//! unitary and `Σ|ψ_j|² = Σ|a_k|²` holds without bookkeeping constants.
//!
//! Grid coordinates are centred, `x_j = -L/2 + j·Δx`, and the amplitudes
//! carry the matching phase `e^{-i p_k x_j}`. Amplitude arrays are stored in
//! FFT order: index `i` on an axis holds wave number `i` for `i < N/2` and
//! `i - N` otherwise.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};

/// Tolerance on `<ψ|ψ> = 1` accepted by operations that require a
/// normalized state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Fraction of the total weight allowed in the unpaired `k = -N/2` mode
/// before a warning is logged.
pub const UNPAIRED_WARN_FRACTION: f64 = 1e-8;

/// A periodic grid of `N` points per axis over `[-L/2, L/2)` together with
/// its dual momentum lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    dim: usize,
    n: usize,
    extent: f64,
}

/// Build a [`UniformGrid`]; `n` must be a power of two `>= 4`.
pub fn make_grid(dim: usize, n: usize, extent: f64) -> Result<UniformGrid> {
    UniformGrid::new(dim, n, extent)
}

impl UniformGrid {
    pub fn new(dim: usize, n: usize, extent: f64) -> Result<Self> {
        if dim != 1 && dim != 3 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidPointCount(n));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidExtent(extent));
        }
        Ok(Self { dim, n, extent })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// `Δx = L/N`.
    pub fn spacing(&self) -> f64 {
        self.extent / self.n as f64
    }

    /// Total number of grid points, `N^dim`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quantization volume `L^dim`.
    pub fn volume(&self) -> f64 {
        self.extent.powi(self.dim as i32)
    }

    /// Lattice spacing of the momenta, `2πħ/L`.
    pub fn momentum_step(&self) -> f64 {
        2.0 * PI / self.extent
    }

    /// Signed wave number held at FFT-ordered axis index `i`.
    pub fn wave_number(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Coordinates `x_j = -L/2 + jΔx` along one axis.
    pub fn axis_coordinates(&self) -> Vec<f64> {
        let dx = self.spacing();
        (0..self.n)
            .map(|j| -0.5 * self.extent + j as f64 * dx)
            .collect()
    }

    /// Momenta along one axis in FFT order.
    pub fn axis_momenta(&self) -> Vec<f64> {
        let dp = self.momentum_step();
        (0..self.n).map(|i| self.wave_number(i) as f64 * dp).collect()
    }

    /// Per-axis indices of a flat index; unused axes are zero.
    pub fn axis_indices(&self, flat: usize) -> [usize; 3] {
        match self.dim {
            1 => [flat, 0, 0],
            _ => {
                let n = self.n;
                [flat / (n * n), (flat / n) % n, flat % n]
            }
        }
    }

    pub fn flat_index(&self, idx: [usize; 3]) -> usize {
        match self.dim {
            1 => idx[0],
            _ => (idx[0] * self.n + idx[1]) * self.n + idx[2],
        }
    }

    /// Position of grid point `flat`; unused axes are zero.
    pub fn position(&self, flat: usize) -> [f64; 3] {
        let dx = self.spacing();
        let idx = self.axis_indices(flat);
        let mut r = [0.0; 3];
        for (axis, slot) in r.iter_mut().enumerate().take(self.dim) {
            *slot = -0.5 * self.extent + idx[axis] as f64 * dx;
        }
        r
    }

    /// Wave numbers of momentum mode `flat`; unused axes are zero.
    pub fn wave_vector(&self, flat: usize) -> [i64; 3] {
        let idx = self.axis_indices(flat);
        let mut k = [0; 3];
        for (axis, slot) in k.iter_mut().enumerate().take(self.dim) {
            *slot = self.wave_number(idx[axis]);
        }
        k
    }

    pub fn momentum(&self, flat: usize) -> [f64; 3] {
        let dp = self.momentum_step();
        self.wave_vector(flat).map(|k| k as f64 * dp)
    }

    pub fn momentum_squared(&self, flat: usize) -> f64 {
        self.momentum(flat).iter().map(|p| p * p).sum()
    }

    /// Whether mode `flat` involves the unpaired `k = -N/2` wave number on
    /// any axis.
    pub fn is_unpaired(&self, flat: usize) -> bool {
        let half = (self.n / 2) as i64;
        self.wave_vector(flat)[..self.dim].iter().any(|&k| k == -half)
    }

    /// Index of the reflected point: `x → -x` in position, `p → -p` in
    /// momentum. The unpaired mode maps to itself.
    pub fn mirror_index(&self, flat: usize) -> usize {
        let n = self.n;
        let idx = self.axis_indices(flat);
        let mut out = [0; 3];
        for axis in 0..self.dim {
            out[axis] = (n - idx[axis]) % n;
        }
        self.flat_index(out)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: len,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Position,
    Momentum,
}

/// A complex field on a grid, optionally tagged with the stationary energy
/// `E_n` that carries its time dependence `e^{-iE_n t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: UniformGrid,
    representation: Representation,
    values: Vec<Complex64>,
    energy: Option<f64>,
}

impl WaveFunction {
    pub fn new(
        grid: UniformGrid,
        representation: Representation,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        grid.check_len(values.len())?;
        if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid,
            representation,
            values,
            energy: None,
        })
    }

    /// Sample `f` at every grid point (position representation, not
    /// normalized).
    pub fn from_fn(grid: UniformGrid, f: impl Fn([f64; 3]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.position(j))).collect();
        Self {
            grid,
            representation: Representation::Position,
            values,
            energy: None,
        }
    }

    /// The normalized plane wave with wave vector `k` (position
    /// representation).
    pub fn plane_wave(grid: UniformGrid, k: [i64; 3]) -> Self {
        let dp = grid.momentum_step();
        let scale = 1.0 / (grid.len() as f64).sqrt();
        Self::from_fn(grid, |r| {
            let phase: f64 = (0..3).map(|a| k[a] as f64 * dp * r[a]).sum();
            Complex64::from_polar(scale, phase)
        })
    }

    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = Some(energy);
        self
    }

    pub fn without_energy(mut self) -> Self {
        self.energy = None;
        self
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn energy(&self) -> Option<f64> {
        self.energy
    }

    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_squared() - 1.0).abs() <= NORM_TOLERANCE
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    /// Same state in the position representation.
    pub fn to_position(&self) -> Self {
        match self.representation {
            Representation::Position => self.clone(),
            Representation::Momentum => Self {
                values: inverse_values(&self.grid, &self.values),
                representation: Representation::Position,
                ..self.clone()
            },
        }
    }

    /// Same state in the momentum representation.
    pub fn to_momentum(&self) -> Self {
        match self.representation {
            Representation::Momentum => self.clone(),
            Representation::Position => Self {
                values: forward_values(&self.grid, &self.values),
                representation: Representation::Momentum,
                ..self.clone()
            },
        }
    }

    pub(crate) fn require(&self, representation: Representation) -> Result<()> {
        if self.representation != representation {
            return Err(Error::RepresentationMismatch {
                expected: representation,
                found: self.representation,
            });
        }
        Ok(())
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let norm = self.norm_squared();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }
}

/// Plane-wave amplitudes `a(p_k)` of one stationary state.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralAmplitudes {
    grid: UniformGrid,
    values: Vec<Complex64>,
    energy: Option<f64>,
}

impl SpectralAmplitudes {
    pub fn new(grid: UniformGrid, values: Vec<Complex64>, energy: Option<f64>) -> Result<Self> {
        grid.check_len(values.len())?;
        Ok(Self {
            grid,
            values,
            energy,
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// Amplitudes in FFT order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn energy(&self) -> Option<f64> {
        self.energy
    }

    pub fn weight(&self, flat: usize) -> f64 {
        self.values[flat].norm_sqr()
    }

    /// `Σ|a(p_k)|²`.
    pub fn total_weight(&self) -> f64 {
        self.values.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Weight carried by modes with an unpaired `k = -N/2` component.
    pub fn unpaired_weight(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| self.grid.is_unpaired(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Log a warning when the unpaired mode holds a non-negligible share of
    /// the weight. Returns that share.
    pub fn check_aliasing(&self) -> f64 {
        let total = self.total_weight();
        let frac = if total > 0.0 {
            self.unpaired_weight() / total
        } else {
            0.0
        };
        if frac > UNPAIRED_WARN_FRACTION {
            log::warn!(
                "{:.3e} of the spectral weight sits in the unpaired k = -N/2 mode; the grid may be under-resolved",
                frac
            );
        }
        frac
    }

    /// The `count` modes with the largest `|a|²`, as `(flat index, weight)`,
    /// largest first. Ties keep the lower index first.
    pub fn dominant_modes(&self, count: usize) -> Vec<(usize, f64)> {
        let mut modes: Vec<(usize, f64)> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.norm_sqr()))
            .collect();
        modes.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        modes.truncate(count);
        modes
    }

    /// View the amplitudes as a momentum-representation [`WaveFunction`].
    pub fn into_wavefunction(self) -> WaveFunction {
        WaveFunction {
            grid: self.grid,
            representation: Representation::Momentum,
            values: self.values,
            energy: self.energy,
        }
    }
}

/// Position → momentum: `a(p_k) = N^{-dim/2} Σ_j ψ(r_j) e^{-i p_k·r_j}`.
pub fn forward_transform(psi: &WaveFunction) -> Result<SpectralAmplitudes> {
    psi.require(Representation::Position)?;
    Ok(SpectralAmplitudes {
        grid: psi.grid,
        values: forward_values(&psi.grid, &psi.values),
        energy: psi.energy,
    })
}

/// Momentum → position: `ψ(r_j) = N^{-dim/2} Σ_k a(p_k) e^{i p_k·r_j}`.
pub fn inverse_transform(a: &SpectralAmplitudes) -> WaveFunction {
    WaveFunction {
        grid: a.grid,
        representation: Representation::Position,
        values: inverse_values(&a.grid, &a.values),
        energy: a.energy,
    }
}

/// Discrete `<f|g>`; both operands must share grid and representation.
pub fn inner_product(f: &WaveFunction, g: &WaveFunction) -> Result<Complex64> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch);
    }
    g.require(f.representation)?;
    Ok(dot(&f.values, &g.values))
}

/// Scale `psi` to unit norm.
pub fn normalize(psi: &WaveFunction) -> Result<WaveFunction> {
    let norm = psi.norm_squared();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::ZeroNorm);
    }
    Ok(psi.scaled(Complex64::new(1.0 / norm.sqrt(), 0.0)))
}

pub(crate) fn dot(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    f.iter().zip(g).map(|(a, b)| a.conj() * b).sum()
}

/// Forward transform of raw position samples.
pub fn forward_values(grid: &UniformGrid, values: &[Complex64]) -> Vec<Complex64> {
    let mut out = values.to_vec();
    fft_axes(grid, &mut out, FftDirection::Forward);
    finish(grid, &mut out);
    out
}

/// Inverse transform of raw FFT-ordered amplitudes.
pub fn inverse_values(grid: &UniformGrid, values: &[Complex64]) -> Vec<Complex64> {
    let mut out = values.to_vec();
    finish(grid, &mut out);
    fft_axes(grid, &mut out, FftDirection::Inverse);
    out
}

/// Apply the momentum-diagonal operator `symbol(k)` to position samples.
pub fn spectral_multiply(
    grid: &UniformGrid,
    values: &[Complex64],
    symbol: impl Fn(usize) -> f64,
) -> Vec<Complex64> {
    let mut amps = forward_values(grid, values);
    for (k, a) in amps.iter_mut().enumerate() {
        *a *= symbol(k);
    }
    inverse_values(grid, &amps)
}

// Origin phase e^{∓i p_k x_0} with x_0 = -L/2 is (-1)^k per axis, combined
// with the unitary scale.
fn finish(grid: &UniformGrid, values: &mut [Complex64]) {
    let scale = 1.0 / (grid.len() as f64).sqrt();
    for (flat, v) in values.iter_mut().enumerate() {
        let parity: usize = grid.axis_indices(flat)[..grid.dim].iter().sum();
        *v *= if parity % 2 == 0 { scale } else { -scale };
    }
}

fn fft_axes(grid: &UniformGrid, values: &mut [Complex64], direction: FftDirection) {
    let n = grid.n;
    let fft = FftPlanner::new().plan_fft(n, direction);
    if grid.dim == 1 {
        fft.process(values);
        return;
    }
    // innermost axis is contiguous
    fft.process(values);
    let total = values.len();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for stride in [n, n * n] {
        for outer in 0..total / (stride * n) {
            for inner in 0..stride {
                let start = outer * stride * n + inner;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = values[start + i * stride];
                }
                fft.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    values[start + i * stride] = *v;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // O(N^dim · N^dim) transform straight from the definition.
    fn brute_forward(grid: &UniformGrid, values: &[Complex64]) -> Vec<Complex64> {
        let scale = 1.0 / (grid.len() as f64).sqrt();
        (0..grid.len())
            .map(|k| {
                let p = grid.momentum(k);
                (0..grid.len())
                    .map(|j| {
                        let r = grid.position(j);
                        let phase = -(p[0] * r[0] + p[1] * r[1] + p[2] * r[2]);
                        values[j] * Complex64::from_polar(scale, phase)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn grid_examples() {
        let g = make_grid(1, 8, 2.0 * PI).unwrap();
        let mut p = g.axis_momenta();
        p.sort_by(f64::total_cmp);
        let expected: Vec<f64> = (-4..4).map(|k| k as f64).collect();
        for (a, b) in p.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-14);
        }

        let g = make_grid(1, 4, 1.0).unwrap();
        assert_eq!(g.spacing(), 0.25);
        assert_eq!(g.spacing() * 4.0, g.extent());

        let g = make_grid(3, 16, 20.0).unwrap();
        assert_eq!(g.len(), 4096);
        assert!((g.momentum_step() - 0.31416).abs() < 1e-5);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert_eq!(make_grid(1, 100, 20.0), Err(Error::InvalidPointCount(100)));
        assert_eq!(make_grid(1, 2, 20.0), Err(Error::InvalidPointCount(2)));
        assert_eq!(make_grid(2, 16, 20.0), Err(Error::UnsupportedDimension(2)));
        assert!(matches!(make_grid(1, 16, 0.0), Err(Error::InvalidExtent(_))));
        assert!(matches!(make_grid(1, 16, f64::NAN), Err(Error::InvalidExtent(_))));
    }

    #[test]
    fn lattice_is_symmetric_except_unpaired_mode() {
        let g = make_grid(1, 16, 3.0).unwrap();
        let unpaired: Vec<usize> = (0..16).filter(|&i| g.is_unpaired(i)).collect();
        assert_eq!(unpaired, vec![8]);
        for i in 0..16 {
            let m = g.mirror_index(i);
            if i == 8 {
                assert_eq!(m, 8);
            } else {
                assert_eq!(g.wave_number(m), -g.wave_number(i));
                // x = -L/2 is its own image across the cell boundary
                let sum = g.position(m)[0] + g.position(i)[0];
                let wrapped = sum - g.extent() * (sum / g.extent()).round();
                assert!(wrapped.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn plane_wave_is_one_hot() {
        let g = make_grid(1, 32, 7.0).unwrap();
        let psi = WaveFunction::plane_wave(g, [3, 0, 0]);
        assert!((psi.norm_squared() - 1.0).abs() < 1e-13);
        let a = forward_transform(&psi).unwrap();
        for (k, v) in a.values().iter().enumerate() {
            let expected = if g.wave_number(k) == 3 { 1.0 } else { 0.0 };
            assert!((v.norm() - expected).abs() < 1e-13, "k={k} |a|={}", v.norm());
        }
    }

    #[test]
    fn plane_wave_is_one_hot_in_3d() {
        let g = make_grid(3, 8, 5.0).unwrap();
        let psi = WaveFunction::plane_wave(g, [1, -2, 3]);
        let a = forward_transform(&psi).unwrap();
        let (top, w) = a.dominant_modes(1)[0];
        assert_eq!(g.wave_vector(top), [1, -2, 3]);
        assert!((w - 1.0).abs() < 1e-12);
        assert!((a.total_weight() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn delta_has_flat_spectrum() {
        let g = make_grid(1, 64, 10.0).unwrap();
        let mut values = vec![c(0.0, 0.0); 64];
        values[17] = c(1.0, 0.0);
        let psi = WaveFunction::new(g, Representation::Position, values).unwrap();
        let a = forward_transform(&psi).unwrap();
        for v in a.values() {
            assert!((v.norm() - 1.0 / 8.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gaussian_matches_direct_quadrature() {
        let g = make_grid(1, 256, 40.0).unwrap();
        let psi = WaveFunction::from_fn(g, |r| c((-r[0] * r[0] / 2.0).exp(), 0.0));
        let fast = forward_transform(&psi).unwrap();
        let slow = brute_forward(&g, psi.values());
        for (a, b) in fast.values().iter().zip(&slow) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn fft_matches_brute_force_in_3d() {
        let g = make_grid(3, 4, 3.0).unwrap();
        let psi = WaveFunction::from_fn(g, |r| c(r[0] + 0.3 * r[1] * r[2], (r[1] - r[0]).sin()));
        let fast = forward_transform(&psi).unwrap();
        let slow = brute_forward(&g, psi.values());
        for (a, b) in fast.values().iter().zip(&slow) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_examples() {
        let g = make_grid(1, 16, 4.0).unwrap();
        let mut one_hot = vec![c(0.0, 0.0); 16];
        one_hot[0] = c(1.0, 0.0);
        let psi = inverse_transform(&SpectralAmplitudes::new(g, one_hot, None).unwrap());
        for v in psi.values() {
            assert!((v - psi.values()[0]).norm() < 1e-15);
        }

        // a(±p1) = ±1/√2 gives the standing wave sin(p1 x), up to a constant
        let mut amps = vec![c(0.0, 0.0); 16];
        amps[1] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[15] = c(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let psi = inverse_transform(&SpectralAmplitudes::new(g, amps, None).unwrap());
        let p1 = g.momentum_step();
        let scale = 2.0 * std::f64::consts::FRAC_1_SQRT_2 / 4.0;
        for (j, v) in psi.values().iter().enumerate() {
            let x = g.position(j)[0];
            assert!((v - c(0.0, scale * (p1 * x).sin())).norm() < 1e-14);
        }
    }

    #[test]
    fn wrong_representation_is_rejected() {
        let g = make_grid(1, 8, 1.0).unwrap();
        let psi = WaveFunction::plane_wave(g, [1, 0, 0]).to_momentum();
        assert!(matches!(
            forward_transform(&psi),
            Err(Error::RepresentationMismatch { .. })
        ));
        let other = WaveFunction::plane_wave(g, [1, 0, 0]);
        assert!(inner_product(&psi, &other).is_err());
        let g2 = make_grid(1, 8, 2.0).unwrap();
        let far = WaveFunction::plane_wave(g2, [1, 0, 0]);
        assert_eq!(inner_product(&other, &far), Err(Error::GridMismatch));
    }

    #[test]
    fn inner_product_examples() {
        let g = make_grid(1, 32, 6.0).unwrap();
        let a = WaveFunction::plane_wave(g, [2, 0, 0]);
        let b = WaveFunction::plane_wave(g, [-5, 0, 0]);
        assert!((inner_product(&a, &a).unwrap() - 1.0).norm() < 1e-14);
        assert!(inner_product(&a, &b).unwrap().norm() < 1e-14);
    }

    #[test]
    fn normalize_examples() {
        let g = make_grid(1, 16, 2.0).unwrap();
        let psi = WaveFunction::plane_wave(g, [1, 0, 0]).scaled(c(4.0, 0.0));
        assert!((psi.norm_squared() - 16.0).abs() < 1e-12);
        let unit = normalize(&psi).unwrap();
        assert!((unit.norm_squared() - 1.0).abs() < 1e-14);
        for (u, v) in unit.values().iter().zip(psi.values()) {
            assert!((u * 4.0 - v).norm() < 1e-14);
        }
        let again = normalize(&unit).unwrap();
        for (u, v) in again.values().iter().zip(unit.values()) {
            assert!((u - v).norm() < 1e-15);
        }
        let zero = WaveFunction::new(g, Representation::Position, vec![c(0.0, 0.0); 16]).unwrap();
        assert_eq!(normalize(&zero), Err(Error::ZeroNorm));
    }

    #[test]
    fn rejects_bad_values() {
        let g = make_grid(1, 8, 1.0).unwrap();
        assert!(matches!(
            WaveFunction::new(g, Representation::Position, vec![c(0.0, 0.0); 7]),
            Err(Error::LengthMismatch { expected: 8, found: 7 })
        ));
        let mut v = vec![c(0.0, 0.0); 8];
        v[3] = c(f64::NAN, 0.0);
        assert_eq!(
            WaveFunction::new(g, Representation::Position, v),
            Err(Error::NonFinite { index: 3 })
        );
    }

    #[test]
    fn dominant_modes_are_sorted() {
        let g = make_grid(1, 8, 1.0).unwrap();
        let vals = [0.1, 0.5, 0.2, 0.5, 0.0, 0.0, 0.3, 0.0].map(|x: f64| c(x.sqrt(), 0.0));
        let a = SpectralAmplitudes::new(g, vals.to_vec(), None).unwrap();
        let top: Vec<usize> = a.dominant_modes(3).iter().map(|m| m.0).collect();
        assert_eq!(top, vec![1, 3, 6]);
    }
}
