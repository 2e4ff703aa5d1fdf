//! Recovery of the microlocal strengths from band-averaged correlations:
//! normalization by the model constant, polar Fourier inversion onto a grid
//! and error metrics against a known truth.

mod data;
mod grid;
mod invert;
mod metrics;
mod report;

pub use data::{normalize, PolarFourierData};
pub use grid::StrengthGrid;
pub use invert::{invert_polar_fourier, radial_weights, Reconstruction, Window};
pub use metrics::{recovery_error, EntryError, RecoveryError};
pub use report::RecoveryReport;
