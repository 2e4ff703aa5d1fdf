use num_complex::Complex;

use super::{Grid, Shape};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative tolerance on negative eigenvalues of the augmented covariance.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// Scalar strengths `a^c ≥ 0` and `a^r` on a grid, with the order `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarStrengths<T> {
    pub grid: Grid<T>,
    pub order: T,
    pub a_c: Vec<T>,
    pub a_r: Vec<Complex<T>>,
}

impl<T: Real> ScalarStrengths<T> {
    pub fn new(grid: Grid<T>, order: T, a_c: Vec<T>, a_r: Vec<Complex<T>>) -> Result<Self> {
        if a_c.len() != grid.len() || a_r.len() != grid.len() {
            return Err(Error::Mismatch(format!(
                "strength grids have {} and {} nodes, grid has {}",
                a_c.len(),
                a_r.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, order, a_c, a_r })
    }

    /// Samples analytic shapes; the covariance shape must be real valued.
    pub fn from_shapes(grid: Grid<T>, order: T, covariance: &Shape<T>, relation: &Shape<T>) -> Result<Self> {
        let c = covariance.sample(&grid)?;
        let r = relation.sample(&grid)?;
        let scale = c.iter().map(|v| v.norm()).fold(T::zero(), T::max);
        if c.iter().any(|v| v.im.abs() > T::lit(1e-12) * scale) {
            return Err(Error::Config("covariance strength must be real valued".into()));
        }
        Self::new(grid, order, c.into_iter().map(|v| v.re).collect(), r)
    }

    /// `a^c - |a^r|` at one node: the smallest eigenvalue of the augmented
    /// matrix `[[a^c, a^r], [conj a^r, a^c]]`.
    pub fn margin(&self, node: usize) -> T {
        self.a_c[node] - self.a_r[node].norm()
    }

    /// Trace of the augmented matrix at one node.
    pub fn augmented_trace(&self, node: usize) -> T {
        T::lit(2.0) * self.a_c[node]
    }

    /// Both strengths multiplied by `s`.
    pub fn scaled(&self, s: T) -> Self {
        Self {
            grid: self.grid,
            order: self.order,
            a_c: self.a_c.iter().map(|&v| v * s).collect(),
            a_r: self.a_r.iter().map(|&v| v * s).collect(),
        }
    }
}

/// Matrix strengths `A^c` (Hermitian PSD) and `A^r` (symmetric) on a grid.
/// Entries are stored node-major, each node holding a row-major `d×d` block.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixStrengths<T> {
    pub grid: Grid<T>,
    pub order: T,
    pub a_c: Vec<Complex<T>>,
    pub a_r: Vec<Complex<T>>,
}

impl<T: Real> MatrixStrengths<T> {
    pub fn new(grid: Grid<T>, order: T, a_c: Vec<Complex<T>>, a_r: Vec<Complex<T>>) -> Result<Self> {
        let need = grid.len() * grid.dim() * grid.dim();
        if a_c.len() != need || a_r.len() != need {
            return Err(Error::Mismatch(format!(
                "matrix strengths need {need} entries, got {} and {}",
                a_c.len(),
                a_r.len()
            )));
        }
        Ok(Self { grid, order, a_c, a_r })
    }

    /// Samples one shape per matrix entry (row-major `d×d` slices of shapes).
    pub fn from_shapes(grid: Grid<T>, order: T, covariance: &[Shape<T>], relation: &[Shape<T>]) -> Result<Self> {
        let d = grid.dim();
        if covariance.len() != d * d || relation.len() != d * d {
            return Err(Error::Mismatch(format!("need {} entry shapes per matrix", d * d)));
        }
        let mut a_c = vec![Complex::new(T::zero(), T::zero()); grid.len() * d * d];
        let mut a_r = a_c.clone();
        for e in 0..d * d {
            let c = covariance[e].sample(&grid)?;
            let r = relation[e].sample(&grid)?;
            for node in 0..grid.len() {
                a_c[node * d * d + e] = c[node];
                a_r[node * d * d + e] = r[node];
            }
        }
        Self::new(grid, order, a_c, a_r)
    }

    /// Diagonal strengths `A^c = a I`, `A^r = 0` built from a scalar field.
    pub fn isotropic(grid: Grid<T>, order: T, a: &[T]) -> Result<Self> {
        let d = grid.dim();
        if a.len() != grid.len() {
            return Err(Error::Mismatch("scalar strength length differs from grid".into()));
        }
        let zero = Complex::new(T::zero(), T::zero());
        let mut a_c = vec![zero; grid.len() * d * d];
        for (node, &v) in a.iter().enumerate() {
            for k in 0..d {
                a_c[node * d * d + k * d + k] = Complex::new(v, T::zero());
            }
        }
        let a_r = vec![zero; a_c.len()];
        Self::new(grid, order, a_c, a_r)
    }

    pub fn block_c(&self, node: usize) -> &[Complex<T>] {
        let dd = self.grid.dim() * self.grid.dim();
        &self.a_c[node * dd..(node + 1) * dd]
    }

    pub fn block_r(&self, node: usize) -> &[Complex<T>] {
        let dd = self.grid.dim() * self.grid.dim();
        &self.a_r[node * dd..(node + 1) * dd]
    }

    /// Real `2d×2d` covariance of `(Re f, Im f)` at one node (row-major, f64):
    /// `[[½Re(A^c+A^r), ½(Im A^r - Im A^c)], [·ᵀ, ½Re(A^c-A^r)]]`, built
    /// from the Hermitian part of `A^c` and the symmetric part of `A^r`.
    pub fn real_covariance(&self, node: usize) -> Vec<f64> {
        let d = self.grid.dim();
        let c = self.block_c(node);
        let r = self.block_r(node);
        let n2 = 2 * d;
        let mut out = vec![0.0; n2 * n2];
        for a in 0..d {
            for b in 0..d {
                let (cab, cba) = (c[a * d + b], c[b * d + a]);
                let (rab, rba) = (r[a * d + b], r[b * d + a]);
                let hc = (cab + cba.conj()) * T::lit(0.5);
                let sr = (rab + rba) * T::lit(0.5);
                let re_c = hc.re.as_f64();
                let im_c = hc.im.as_f64();
                let re_r = sr.re.as_f64();
                let im_r = sr.im.as_f64();
                out[a * n2 + b] = 0.5 * (re_c + re_r);
                out[(a + d) * n2 + b + d] = 0.5 * (re_c - re_r);
                out[a * n2 + b + d] = 0.5 * (im_r - im_c);
                out[(b + d) * n2 + a] = 0.5 * (im_r - im_c);
            }
        }
        out
    }

    /// Largest deviation from `A^c = (A^c)^H` and `A^r = (A^r)ᵀ` at a node.
    pub fn asymmetry(&self, node: usize) -> T {
        let d = self.grid.dim();
        let c = self.block_c(node);
        let r = self.block_r(node);
        let mut worst = T::zero();
        for a in 0..d {
            for b in 0..d {
                worst = worst
                    .max((c[a * d + b] - c[b * d + a].conj()).norm())
                    .max((r[a * d + b] - r[b * d + a]).norm());
            }
        }
        worst
    }

    /// Trace of the augmented matrix, `2 tr Re A^c`.
    pub fn augmented_trace(&self, node: usize) -> T {
        let d = self.grid.dim();
        let c = self.block_c(node);
        (0..d).map(|k| c[k * d + k].re).sum::<T>() * T::lit(2.0)
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            grid: self.grid,
            order: self.order,
            a_c: self.a_c.iter().map(|&v| v * s).collect(),
            a_r: self.a_r.iter().map(|&v| v * s).collect(),
        }
    }
}

/// Either kind of strength pair.
#[derive(Debug, Clone, PartialEq)]
pub enum Strengths<T> {
    Scalar(ScalarStrengths<T>),
    Matrix(MatrixStrengths<T>),
}

impl<T: Real> Strengths<T> {
    pub fn grid(&self) -> &Grid<T> {
        match self {
            Strengths::Scalar(s) => &s.grid,
            Strengths::Matrix(s) => &s.grid,
        }
    }

    pub fn order(&self) -> T {
        match self {
            Strengths::Scalar(s) => s.order,
            Strengths::Matrix(s) => s.order,
        }
    }
}
