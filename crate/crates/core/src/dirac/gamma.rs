use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

pub type Matrix4c = Matrix4<Complex64>;
pub type Spinor4 = Vector4<Complex64>;

/// Diagonal of the Minkowski metric, signature (+,−,−,−).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn pauli(axis: usize) -> [[Complex64; 2]; 2] {
    match axis {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => unreachable!("pauli axis must be 1, 2 or 3"),
    }
}

/// The four gamma matrices in the Dirac representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub gamma: [Matrix4c; 4],
}

pub fn make_gammas() -> GammaSet {
    let g0 = Matrix4c::from_fn(|i, j| match (i == j, i < 2) {
        (true, true) => ONE,
        (true, false) => -ONE,
        _ => ZERO,
    });
    let spatial = |axis: usize| {
        let s = pauli(axis);
        Matrix4c::from_fn(|i, j| match (i < 2, j < 2) {
            (true, false) => s[i][j - 2],
            (false, true) => -s[i - 2][j],
            _ => ZERO,
        })
    };
    GammaSet {
        gamma: [g0, spatial(1), spatial(2), spatial(3)],
    }
}

impl GammaSet {
    pub fn gamma0(&self) -> &Matrix4c {
        &self.gamma[0]
    }

    /// `β = γ⁰`.
    pub fn beta(&self) -> &Matrix4c {
        &self.gamma[0]
    }

    /// `αᵢ = γ⁰γⁱ` for `i ∈ 1..=3`.
    pub fn alpha(&self, i: usize) -> Matrix4c {
        self.gamma[0] * self.gamma[i]
    }

    pub fn anticommutator(&self, mu: usize, nu: usize) -> Matrix4c {
        self.gamma[mu] * self.gamma[nu] + self.gamma[nu] * self.gamma[mu]
    }

    /// Largest entry of `{γ^μ,γ^ν} − 2η^{μν}I` over the 10 index pairs.
    pub fn algebra_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for mu in 0..4 {
            for nu in mu..4 {
                let eta = if mu == nu { 2.0 * METRIC[mu] } else { 0.0 };
                let d = self.anticommutator(mu, nu) - Matrix4c::identity() * Complex64::new(eta, 0.0);
                worst = worst.max(d.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        worst
    }

    /// Largest entry of `γ⁰ − γ⁰†` and `γⁱ + γⁱ†`.
    pub fn hermiticity_error(&self) -> f64 {
        (0..4)
            .map(|mu| {
                let g = &self.gamma[mu];
                let d = if mu == 0 { g - g.adjoint() } else { g + g.adjoint() };
                d.iter().map(|z| z.norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// `γ⁰E − γ³pc − mc²`, the linear form annihilating a free spinor
    /// moving along the axis.
    pub fn linear_form(&self, p: f64, energy: f64, m: f64, c: f64) -> Matrix4c {
        self.gamma[0] * Complex64::new(energy, 0.0)
            - self.gamma[3] * Complex64::new(p * c, 0.0)
            - Matrix4c::identity() * Complex64::new(m * c * c, 0.0)
    }
}

/// Outcome of multiplying the linear form by its mass-flipped partner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquaringCheck {
    /// Largest entry of `M₋M₊ − sI`.
    pub deviation: f64,
    /// `deviation` over `max(1, E'² + |π|²c² + m²c⁴)`, the size of the
    /// terms that cancel.
    pub relative_deviation: f64,
    /// `s = (E − qA₀)² − (p − qA/c)²c² − m²c⁴`.
    pub scalar: f64,
}

/// `M∓ = γ⁰(E − qA₀) − γ·(p − qA/c)c ∓ mc²` for uniform potentials.
pub fn squaring_identity_check(
    p: [f64; 3],
    energy: f64,
    a0: f64,
    a: [f64; 3],
    q: f64,
    m: f64,
    c: f64,
) -> SquaringCheck {
    let g = make_gammas();
    let e_kin = energy - q * a0;
    let pi: Vec<f64> = (0..3).map(|i| p[i] - q * a[i] / c).collect();
    let mut core = g.gamma[0] * Complex64::new(e_kin, 0.0);
    for i in 0..3 {
        core -= g.gamma[i + 1] * Complex64::new(pi[i] * c, 0.0);
    }
    let rest = Matrix4c::identity() * Complex64::new(m * c * c, 0.0);
    let product = (core - rest) * (core + rest);
    let pi2: f64 = pi.iter().map(|x| x * x).sum();
    let mc2 = m * c * c;
    let scalar = e_kin * e_kin - pi2 * c * c - mc2 * mc2;
    let deviation = (product - Matrix4c::identity() * Complex64::new(scalar, 0.0))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let scale = (e_kin * e_kin + pi2 * c * c + mc2 * mc2).max(1.0);
    SquaringCheck {
        deviation,
        relative_deviation: deviation / scale,
        scalar,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

/// Unit spinor `u` (`u†u = 1`) of a free plane wave with momentum `p`
/// along the axis, and its energy `±√(p²c² + m²c⁴)`.
pub fn free_spinor(p: f64, sign: EnergySign, spin: Spin, m: f64, c: f64) -> (Spinor4, f64) {
    let mc2 = m * c * c;
    let magnitude = (p * p * c * c + mc2 * mc2).sqrt();
    // σ_z eigenvalue of the two-spinor χ
    let (slot, sz) = match spin {
        Spin::Up => (0, 1.0),
        Spin::Down => (1, -1.0),
    };
    let ratio = sz * p * c / (magnitude + mc2);
    let mut u = Spinor4::zeros();
    let energy = match sign {
        EnergySign::Positive => {
            u[slot] = ONE;
            u[slot + 2] = Complex64::new(ratio, 0.0);
            magnitude
        }
        EnergySign::Negative => {
            u[slot] = Complex64::new(-ratio, 0.0);
            u[slot + 2] = ONE;
            -magnitude
        }
    };
    let norm = u.norm();
    (u / Complex64::new(norm, 0.0), energy)
}

#[cfg(test)]
mod tests {
    use super::*;

    const C: f64 = crate::SPEED_OF_LIGHT;

    #[test]
    fn clifford_algebra_is_exact() {
        let g = make_gammas();
        assert_eq!(g.algebra_error(), 0.0);
        assert_eq!(g.hermiticity_error(), 0.0);
        assert_eq!(g.anticommutator(0, 0), Matrix4c::identity() * Complex64::new(2.0, 0.0));
        assert_eq!(g.anticommutator(1, 2), Matrix4c::zeros());
        for mu in 0..4 {
            assert_eq!(g.gamma[mu].trace(), ZERO);
        }
    }

    #[test]
    fn alpha_and_beta() {
        let g = make_gammas();
        for i in 1..4 {
            let a = g.alpha(i);
            assert_eq!(a, a.adjoint());
            assert_eq!(a * a, Matrix4c::identity());
            assert_eq!(a * g.beta() + g.beta() * a, Matrix4c::zeros());
        }
    }

    #[test]
    fn rest_frame_on_shell() {
        let chk = squaring_identity_check([0.0; 3], C * C, 0.0, [0.0; 3], -1.0, 1.0, C);
        assert!(chk.deviation < 1e-12);
        assert_eq!(chk.scalar, 0.0);
    }

    #[test]
    fn squaring_identity_unit_c() {
        let chk = squaring_identity_check([0.3, -1.2, 0.7], 2.5, 0.4, [0.1, 0.2, -0.3], -1.0, 1.0, 1.0);
        assert!(chk.deviation < 1e-12);
        let pi = [0.3 + 0.1, -1.2 + 0.2, 0.7 - 0.3];
        let e = 2.5 + 0.4;
        let s = e * e - pi.iter().map(|x| x * x).sum::<f64>() - 1.0;
        assert!((chk.scalar - s).abs() < 1e-12);
    }

    #[test]
    fn rest_spinors() {
        let (u, e) = free_spinor(0.0, EnergySign::Positive, Spin::Up, 1.0, C);
        assert_eq!(e, C * C);
        assert_eq!(u, Spinor4::new(ONE, ZERO, ZERO, ZERO));
        let (u, e) = free_spinor(0.0, EnergySign::Negative, Spin::Up, 1.0, C);
        assert_eq!(e, -C * C);
        assert_eq!(u[0], ZERO);
        assert_eq!(u[1], ZERO);
        assert!((u.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn relativistic_spinor_satisfies_linear_form() {
        let g = make_gammas();
        for sign in [EnergySign::Positive, EnergySign::Negative] {
            for spin in [Spin::Up, Spin::Down] {
                let p = C;
                let (u, e) = free_spinor(p, sign, spin, 1.0, C);
                let expected = 2.0_f64.sqrt() * C * C;
                assert!((e.abs() - expected).abs() < 1e-9);
                let r = g.linear_form(p, e, 1.0, C) * u;
                assert!(r.norm() / (C * C) < 1e-12, "{sign:?} {spin:?}: {}", r.norm());
                assert!((u.norm() - 1.0).abs() < 1e-15);
            }
        }
    }
}
