//! Grids, strength functions and samplers for scalar and vector complex
//! Gaussian sources whose covariance and relation operators have principal
//! symbols `a^c(x)|ξ|^{-m}` and `a^r(x)|ξ|^{-m}`.
//!
//! A realization is built as `L(x) g(x)`, where `g` collects independent
//! real stationary fields with spectral density `(|ξ|² + δ²)^{-m/2}` and
//! `L(x)` is a pointwise square root of the real covariance that the
//! strengths induce on `(Re f, Im f)`.

mod grid;
mod sampler;
mod shapes;
mod spectral;
mod strengths;
mod validate;

pub use grid::{Grid, SUPPORT_MARGIN};
pub use sampler::{
    sample_scalar_gmig, sample_vector_gmig, scalar_factor, FieldRealization, ScalarGmigSampler,
    VectorGmigSampler,
};
pub use shapes::{GaussianBump, Shape};
pub use spectral::{
    colouring_amplitudes, default_delta, sample_stationary_pair, spectral_density,
    stationary_variance, StationarySampler,
};
pub use strengths::{MatrixStrengths, ScalarStrengths, Strengths, PSD_TOLERANCE};
pub use validate::{validate_strengths, ValidationReport, JUMP_WARNING};
