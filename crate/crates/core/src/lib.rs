//! Simulation and recovery toolkit for complex microlocally isotropic
//! Gaussian random sources radiating acoustic, biharmonic, electromagnetic
//! and elastic waves.

pub mod error;
pub mod estimate;
pub mod fft;
pub mod forward;
pub mod io;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod recover;
pub mod scalar;
pub mod seeds;
pub mod waves;

pub use error::{Error, Result};
pub use scalar::{Cplx, Real};

/// Double-precision grid.
pub type Grid64 = field::Grid<f64>;
/// Double-precision scalar strengths.
pub type ScalarStrengths64 = field::ScalarStrengths<f64>;
/// Double-precision matrix strengths.
pub type MatrixStrengths64 = field::MatrixStrengths<f64>;
/// Double-precision field realization.
pub type Field64 = field::FieldRealization<f64>;
/// Single-precision field realization.
pub type Field32 = field::FieldRealization<f32>;
/// Single-precision grid.
pub type Grid32 = field::Grid<f32>;
/// Double-precision strength grid.
pub type StrengthGrid64 = recover::StrengthGrid<f64>;
/// Single-precision strength grid.
pub type StrengthGrid32 = recover::StrengthGrid<f32>;
