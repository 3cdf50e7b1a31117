//! Plane-wave spectral eigensolver for stationary Schrödinger and Dirac
//! problems, with checks of the averaged energy relations and pointwise
//! residuals of the computed states.
//!
//! Hartree atomic units throughout (ħ = mₑ = e = 1).

pub mod basis;
pub mod dirac;
pub mod error;
pub mod linalg;
pub mod momentum;
pub mod schrodinger;
pub mod verify;

pub use basis::{
    forward_transform, inner_product, inverse_transform, make_grid, normalize, Representation,
    SpectralAmplitudes, UniformGrid, WaveFunction,
};
pub use error::{Error, Result};

/// Speed of light in atomic units.
pub const SPEED_OF_LIGHT: f64 = 137.035999084;
