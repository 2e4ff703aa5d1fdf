//! Frequency-band ergodic averages, high-frequency ensemble limits and
//! correlation-decay diagnostics of far-field data.
//!
//! Every estimator multiplies far-field products by the frequency weight
//! that cancels the prefactor and symbol decay, so that its limit is a
//! model constant times the Fourier transform of the strength at the
//! shift `τ x̂` (`c_s τ x̂` for elastic waves).

mod band;
mod config;
mod decay;
mod elastic;
mod ensemble;
mod products;
mod result;

pub use band::{band_average, JACKKNIFE_BLOCKS};
pub use config::{
    compressional_rescaling, elastic_coefficients, normalization_constant, EstimatorConfig, Mode, Target,
    DEFAULT_BAND_STEP,
};
pub use decay::{decay_diagnostic, DecayRow, DecayTable, DECAY_FIT_RANGE, MIN_DECAY_ENSEMBLE};
pub use elastic::{polarization_vectors, reshape, reshaped_coefficients};
pub use ensemble::{band_average_ensemble, ensemble_limit, ensemble_limits};
pub use result::BandAverageResult;
