use num_complex::Complex;

use super::Grid;
use crate::error::{Error, Result};
use crate::fft::fft_nd;
use crate::scalar::Real;
use crate::seeds::{rng_from_seed, Rng};

/// `S(ξ) = (|ξ|² + δ²)^{-m/2}`.
pub fn spectral_density<T: Real>(m: T, delta: T, xi: &[T]) -> T {
    let k2: T = xi.iter().map(|&v| v * v).sum();
    (k2 + delta * delta).powf(-m * T::lit(0.5))
}

/// Default regularization `δ = 2π/L`.
pub fn default_delta<T: Real>(grid: &Grid<T>) -> T {
    T::TAU() / grid.extent()
}

/// Colouring amplitudes `√(2 S(k) / L^d)` in FFT order over the lattice.
pub fn colouring_amplitudes<T: Real>(grid: &Grid<T>, m: T, delta: T) -> Vec<T> {
    let d = grid.dim();
    let volume = grid.extent().powi(d as i32);
    let freqs: Vec<T> = (0..grid.nodes_per_axis()).map(|j| grid.frequency(j)).collect();
    (0..grid.len())
        .map(|flat| {
            let idx = grid.unflatten(flat);
            let mut xi = [T::zero(); 3];
            for a in 0..d {
                xi[a] = freqs[idx[a]];
            }
            (T::lit(2.0) * spectral_density(m, delta, &xi[..d]) / volume).sqrt()
        })
        .collect()
}

/// `G(0) = L^{-d} Σ_k S(k)`, the pointwise variance of each stationary field.
pub fn stationary_variance<T: Real>(grid: &Grid<T>, m: T, delta: T) -> T {
    let amps = colouring_amplitudes(grid, m, delta);
    amps.iter().map(|&a| a * a).sum::<T>() * T::lit(0.5)
}

/// Generator of independent real stationary Gaussian fields with covariance
/// `G(x - y) = L^{-d} Σ_k S(k) e^{ik·(x-y)}` on the lattice.
///
/// Fields come in pairs: the real and imaginary parts of one complex field
/// `Σ_k √(2S(k)/L^d) z_k e^{ik·x}` with i.i.d. standard complex normal `z_k`.
pub struct StationarySampler<T: Real> {
    grid: Grid<T>,
    amplitudes: Vec<T>,
}

impl<T: Real> StationarySampler<T> {
    pub fn new(grid: Grid<T>, m: T, delta: T) -> Result<Self> {
        if !(delta > T::zero()) {
            return Err(Error::Domain(format!("regularization delta must be positive, got {delta}")));
        }
        Ok(Self {
            amplitudes: colouring_amplitudes(&grid, m, delta),
            grid,
        })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    /// Draws one complex field whose real and imaginary parts are the two
    /// independent real fields.
    pub fn draw_pair(&self, rng: &mut Rng) -> Vec<Complex<T>> {
        let half = T::lit(0.5).sqrt();
        let mut data: Vec<Complex<T>> = self
            .amplitudes
            .iter()
            .map(|&a| {
                let re = T::standard_normal(rng);
                let im = T::standard_normal(rng);
                Complex::new(re, im) * (a * half)
            })
            .collect();
        fft_nd(&mut data, self.grid.nodes_per_axis(), self.grid.dim(), true);
        data
    }
}

/// Two independent real stationary fields with spectral density `S`.
pub fn sample_stationary_pair<T: Real>(grid: &Grid<T>, m: T, delta: T, seed: u64) -> Result<(Vec<T>, Vec<T>)> {
    let sampler = StationarySampler::new(*grid, m, delta)?;
    let w = sampler.draw_pair(&mut rng_from_seed(seed));
    Ok((w.iter().map(|v| v.re).collect(), w.iter().map(|v| v.im).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_examples() {
        assert_eq!(spectral_density(2.0_f64, 1.0, &[0.0, 0.0]), 1.0);
        assert_eq!(spectral_density(2.0_f64, 1.0, &[1.0, 0.0]), 0.5);
        assert!((spectral_density(3.0_f64, 0.5, &[0.0, 0.0, 0.0]) - 8.0).abs() < 1e-14);
        let k: f64 = 64.0;
        let s = spectral_density(2.0, 1.0, &[k, 0.0]);
        assert!((s - k.powi(-2)).abs() <= k.powi(-4));
    }

    #[test]
    fn pair_is_deterministic() {
        let grid = Grid::new(2, 16, 1.0_f64).unwrap();
        let a = sample_stationary_pair(&grid, 2.0, 6.0, 42).unwrap();
        let b = sample_stationary_pair(&grid, 2.0, 6.0, 42).unwrap();
        assert_eq!(a, b);
        let c = sample_stationary_pair(&grid, 2.0, 6.0, 43).unwrap();
        assert_ne!(a.0, c.0);
    }
}
