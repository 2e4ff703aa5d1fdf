use crate::error::{Error, Result};
use crate::scalar::Real;

/// Zero margin, in cells, required between any support and the box boundary.
pub const SUPPORT_MARGIN: usize = 4;

/// Periodic Cartesian lattice on `[-L/2, L/2)^d` with `n` nodes per axis.
///
/// Nodes are stored row-major with the last axis contiguous. Lattice
/// frequencies follow FFT ordering: index `j` maps to `2π/L · j` for
/// `j < n/2` and `2π/L · (j - n)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    d: usize,
    n: usize,
    extent: T,
}

impl<T: Real> Grid<T> {
    pub fn new(d: usize, n: usize, extent: T) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::InvalidGrid(format!("dimension must be 2 or 3, got {d}")));
        }
        if n < 4 * SUPPORT_MARGIN || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "nodes per axis must be a power of two of at least {}, got {n}",
                4 * SUPPORT_MARGIN
            )));
        }
        if !(extent > T::zero()) || !extent.is_finite() {
            return Err(Error::InvalidGrid(format!("extent must be positive, got {extent}")));
        }
        Ok(Self { d, n, extent })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn nodes_per_axis(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> T {
        self.extent
    }

    pub fn spacing(&self) -> T {
        self.extent / T::from_usize_lossy(self.n)
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell_volume(&self) -> T {
        self.spacing().powi(self.d as i32)
    }

    /// `π/h`, the largest resolvable frequency per axis.
    pub fn nyquist(&self) -> T {
        T::PI() / self.spacing()
    }

    /// Coordinate of index `i` along any axis.
    pub fn coord(&self, i: usize) -> T {
        -self.extent * T::lit(0.5) + T::from_usize_lossy(i) * self.spacing()
    }

    /// Lattice frequency of FFT index `j` along any axis.
    pub fn frequency(&self, j: usize) -> T {
        let signed = if j < self.n / 2 { j as f64 } else { j as f64 - self.n as f64 };
        T::lit(signed) * T::TAU() / self.extent
    }

    /// Per-axis indices of a flat node index.
    pub fn unflatten(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for a in (0..self.d).rev() {
            idx[a] = flat % self.n;
            flat /= self.n;
        }
        idx
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().take(self.d).fold(0, |acc, &i| acc * self.n + i)
    }

    /// Physical position of a flat node index (unused trailing entries are 0).
    pub fn position(&self, flat: usize) -> [T; 3] {
        let idx = self.unflatten(flat);
        let mut p = [T::zero(); 3];
        for a in 0..self.d {
            p[a] = self.coord(idx[a]);
        }
        p
    }

    /// Whether a node lies in the zero margin next to the box boundary.
    pub fn in_margin(&self, flat: usize) -> bool {
        let idx = self.unflatten(flat);
        idx[..self.d]
            .iter()
            .any(|&i| i < SUPPORT_MARGIN || i + SUPPORT_MARGIN > self.n)
    }

    pub fn same_as(&self, other: &Grid<T>) -> bool {
        self.d == other.d && self.n == other.n && self.extent == other.extent
    }

    pub fn check_same(&self, other: &Grid<T>) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("grids differ: {self:?} vs {other:?}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let g = Grid::new(3, 16, 2.0_f64).unwrap();
        assert_eq!(g.len(), 4096);
        assert_eq!(g.spacing(), 0.125);
        let flat = g.flatten(&[1, 2, 3]);
        assert_eq!(flat, 256 + 32 + 3);
        assert_eq!(g.unflatten(flat), [1, 2, 3]);
        assert_eq!(g.position(flat), [-0.875, -0.75, -0.625]);
        assert_eq!(g.frequency(8), -8.0 * std::f64::consts::PI);
        assert!(g.in_margin(flat));
        assert!(!g.in_margin(g.flatten(&[4, 8, 12])));
        assert!(g.in_margin(g.flatten(&[4, 8, 13])));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(4, 16, 1.0_f64).is_err());
        assert!(Grid::new(2, 24, 1.0_f64).is_err());
        assert!(Grid::new(2, 8, 1.0_f64).is_err());
        assert!(Grid::new(2, 16, 0.0_f64).is_err());
    }
}
