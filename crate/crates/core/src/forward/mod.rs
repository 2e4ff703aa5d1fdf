//! Far-field patterns of sampled sources as scaled Fourier transforms, plus
//! a volume-potential evaluator used to check the far-field asymptotics.

mod band;
mod cache;
mod directions;
mod farfield;
mod fourier;
mod nearfield;

pub use cache::RayCache;
pub use band::{check_nyquist, FrequencyBand, DEFAULT_NYQUIST_FRACTION, MAX_BAND_STEP};
pub use directions::DirectionSet;
pub use farfield::{
    farfield, farfield_ray, project, ElasticPart, FarFieldRecord, FarFieldSource, FarFieldValue, FnFarField,
    RealizationFarField,
};
pub use fourier::{ray_fourier, source_fourier};
pub use nearfield::{nearfield, NearFieldValue};
