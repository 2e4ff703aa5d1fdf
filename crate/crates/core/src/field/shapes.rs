use num_complex::Complex;

use super::Grid;
use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

/// `amplitude · e^{i phase} · exp(-|x - center|² / (2 width²))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBump<T> {
    pub center: Vec<T>,
    pub width: T,
    pub amplitude: T,
    pub phase: T,
}

impl<T: Real> GaussianBump<T> {
    pub fn new(center: Vec<T>, width: T, amplitude: T, phase: T) -> Result<Self> {
        if !(width > T::zero()) {
            return Err(Error::Config(format!("bump width must be positive, got {width}")));
        }
        Ok(Self {
            center,
            width,
            amplitude,
            phase,
        })
    }

    /// Real bump (`phase = 0`).
    pub fn real(center: Vec<T>, width: T, amplitude: T) -> Result<Self> {
        Self::new(center, width, amplitude, T::zero())
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn value(&self, x: &[T]) -> Complex<T> {
        let r2: T = self.center.iter().zip(x).map(|(&c, &p)| (p - c) * (p - c)).sum();
        cis(self.phase) * (self.amplitude * (-r2 / (T::lit(2.0) * self.width * self.width)).exp())
    }

    /// `∫ bump(x) e^{-i ξ·x} dx` over `ℝ^d`.
    pub fn fourier(&self, xi: &[T]) -> Complex<T> {
        let d = self.dim() as i32;
        let w2 = self.width * self.width;
        let k2: T = xi.iter().map(|&v| v * v).sum();
        let shift: T = self.center.iter().zip(xi).map(|(&c, &v)| c * v).sum();
        let mass = self.amplitude * (T::TAU() * w2).powf(T::lit(0.5) * T::lit(d as f64));
        cis(self.phase - shift) * (mass * (-(w2 * k2) * T::lit(0.5)).exp())
    }

    /// `∫ bump(x) dx`.
    pub fn integral(&self) -> Complex<T> {
        let d = self.dim();
        self.fourier(&vec![T::zero(); d])
    }
}

/// Finite sum of Gaussian bumps; the empty sum is the zero function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Shape<T> {
    pub bumps: Vec<GaussianBump<T>>,
}

impl<T: Real> Shape<T> {
    pub fn zero() -> Self {
        Self { bumps: Vec::new() }
    }

    pub fn bump(b: GaussianBump<T>) -> Self {
        Self { bumps: vec![b] }
    }

    pub fn from_bumps(bumps: Vec<GaussianBump<T>>) -> Self {
        Self { bumps }
    }

    /// The same shape multiplied by `factor · e^{i phase}`.
    pub fn scaled(&self, factor: T, phase: T) -> Self {
        Self {
            bumps: self
                .bumps
                .iter()
                .map(|b| GaussianBump {
                    amplitude: b.amplitude * factor,
                    phase: b.phase + phase,
                    ..b.clone()
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bumps.iter().all(|b| b.amplitude == T::zero())
    }

    pub fn value(&self, x: &[T]) -> Complex<T> {
        self.bumps.iter().map(|b| b.value(x)).sum()
    }

    pub fn fourier(&self, xi: &[T]) -> Complex<T> {
        self.bumps.iter().map(|b| b.fourier(xi)).sum()
    }

    /// `∫ shape dx` over the whole space.
    pub fn integral(&self) -> Complex<T> {
        self.bumps.iter().map(|b| b.integral()).sum()
    }

    pub fn check_dim(&self, d: usize) -> Result<()> {
        match self.bumps.iter().find(|b| b.dim() != d) {
            Some(b) => Err(Error::Mismatch(format!(
                "bump centre has {} coordinates on a {d}-dimensional grid",
                b.dim()
            ))),
            None => Ok(()),
        }
    }

    /// Samples the shape on the grid, forcing exact zeros in the boundary
    /// margin so the sampled function has compact support in the box.
    pub fn sample(&self, grid: &Grid<T>) -> Result<Vec<Complex<T>>> {
        self.check_dim(grid.dim())?;
        let d = grid.dim();
        Ok((0..grid.len())
            .map(|flat| {
                if grid.in_margin(flat) {
                    Complex::new(T::zero(), T::zero())
                } else {
                    self.value(&grid.position(flat)[..d])
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sum_matches_analytic_transform() {
        let grid = Grid::new(2, 64, 4.0_f64).unwrap();
        let shape = Shape::bump(GaussianBump::new(vec![0.3, -0.2], 0.15, 1.5, 0.4).unwrap());
        let values = shape.sample(&grid).unwrap();
        let xi = [2.0, -3.5];
        let h2 = grid.cell_volume();
        let discrete: Complex<f64> = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let p = grid.position(i);
                v * cis(-(xi[0] * p[0] + xi[1] * p[1])) * h2
            })
            .sum();
        let exact = shape.fourier(&xi);
        assert!((discrete - exact).norm() < 1e-12 * exact.norm());
    }
}
