use crate::error::{Error, Result};
use crate::scalar::Real;

/// Fraction of the grid Nyquist frequency `π/h` that band frequencies plus
/// shifts may reach.
pub const DEFAULT_NYQUIST_FRACTION: f64 = 0.5;

/// Largest allowed band step.
pub const MAX_BAND_STEP: f64 = 0.5;

/// Dyadic band `[Q, 2Q]` with a uniform trapezoid step and a list of shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyBand<T> {
    q: T,
    count: usize,
    shifts: Vec<T>,
}

impl<T: Real> FrequencyBand<T> {
    /// The step actually used is `Q / ceil(Q / step)`, so both ends of the
    /// band are nodes.
    pub fn new(q: T, step: T, shifts: Vec<T>) -> Result<Self> {
        if !(q > T::zero()) || !q.is_finite() {
            return Err(Error::Config(format!("band start Q must be positive, got {q}")));
        }
        if !(step > T::zero()) || step > T::lit(MAX_BAND_STEP) {
            return Err(Error::Config(format!(
                "band step must lie in (0, {MAX_BAND_STEP}], got {step}"
            )));
        }
        if let Some(t) = shifts.iter().find(|t| !(**t >= T::zero()) || !t.is_finite()) {
            return Err(Error::Config(format!("shifts must be nonnegative, got {t}")));
        }
        let count = (q / step).ceil().to_usize().unwrap_or(0).max(1);
        Ok(Self { q, count, shifts })
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn step(&self) -> T {
        self.q / T::from_usize_lossy(self.count)
    }

    /// Number of band nodes (`intervals + 1`).
    pub fn len(&self) -> usize {
        self.count + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, j: usize) -> T {
        self.q + T::from_usize_lossy(j) * self.step()
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.len()).map(|j| self.node(j)).collect()
    }

    /// Trapezoid weights for `(1/Q) ∫_Q^{2Q}`.
    pub fn weights(&self) -> Vec<T> {
        let w = self.step() / self.q;
        (0..self.len())
            .map(|j| if j == 0 || j == self.count { w * T::lit(0.5) } else { w })
            .collect()
    }

    pub fn shifts(&self) -> &[T] {
        &self.shifts
    }

    pub fn max_shift(&self) -> T {
        self.shifts.iter().cloned().fold(T::zero(), T::max)
    }

    /// `2Q + max shift`.
    pub fn max_frequency(&self) -> T {
        self.q * T::lit(2.0) + self.max_shift()
    }

    /// Shift expressed as a whole number of band steps, if it is one.
    pub fn shift_in_steps(&self, tau: T) -> Option<usize> {
        let r = tau / self.step();
        let k = r.round();
        if (r - k).abs() <= T::lit(1e-9) * r.abs().max(T::one()) {
            k.to_usize()
        } else {
            None
        }
    }
}

/// Refuses wavenumbers above `fraction · π/h`.
pub fn check_nyquist<T: Real>(wavenumber: T, spacing: T, fraction: T) -> Result<()> {
    let limit = fraction * T::PI() / spacing;
    if wavenumber > limit * (T::one() + T::lit(1e-12)) || !wavenumber.is_finite() {
        return Err(Error::Nyquist {
            frequency: wavenumber.as_f64(),
            limit: limit.as_f64(),
        });
    }
    Ok(())
}
