use num_complex::Complex;

use super::config::EstimatorConfig;
use crate::scalar::Real;

/// Output of a band average or ensemble estimate.
///
/// `estimate` is a `components × components` row-major matrix (a single
/// entry for scalar models) with one standard error per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct BandAverageResult<T> {
    pub config: EstimatorConfig<T>,
    pub components: usize,
    pub estimate: Vec<Complex<T>>,
    pub std_error: Vec<T>,
    /// Frequency nodes per realization.
    pub nodes: usize,
    /// Number of realizations averaged.
    pub samples: usize,
    pub seeds: Vec<u64>,
}

impl<T: Real> BandAverageResult<T> {
    /// The estimate of a scalar model.
    pub fn scalar(&self) -> Option<Complex<T>> {
        (self.components == 1).then(|| self.estimate[0])
    }

    pub fn entry(&self, j: usize, l: usize) -> Complex<T> {
        self.estimate[j * self.components + l]
    }

    pub fn entry_error(&self, j: usize, l: usize) -> T {
        self.std_error[j * self.components + l]
    }

    /// Largest entry standard error.
    pub fn max_error(&self) -> T {
        self.std_error.iter().cloned().fold(T::zero(), T::max)
    }
}
