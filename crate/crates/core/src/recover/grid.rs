use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::{Grid, Shape, Strengths};
use crate::scalar::Real;

/// Complex strength values on a grid: one entry for scalar strengths,
/// `d²` row-major entries for matrix strengths. Values are entry-major:
/// `values[e · len + node]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthGrid<T> {
    pub grid: Grid<T>,
    pub components: usize,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> StrengthGrid<T> {
    pub fn new(grid: Grid<T>, components: usize, values: Vec<Complex<T>>) -> Result<Self> {
        if components == 0 || values.len() != components * components * grid.len() {
            return Err(Error::Mismatch(format!(
                "{} values do not fill {components}×{components} entries on {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, components, values })
    }

    pub fn zeros(grid: Grid<T>, components: usize) -> Self {
        Self {
            grid,
            components,
            values: vec![Complex::new(T::zero(), T::zero()); components * components * grid.len()],
        }
    }

    /// Samples analytic shapes, one per entry (row-major).
    pub fn from_shapes(grid: Grid<T>, shapes: &[Shape<T>]) -> Result<Self> {
        let components = (shapes.len() as f64).sqrt().round() as usize;
        if components * components != shapes.len() || components == 0 {
            return Err(Error::Mismatch(format!("{} shapes do not form a square matrix", shapes.len())));
        }
        let mut values = Vec::with_capacity(shapes.len() * grid.len());
        for s in shapes {
            values.extend(s.sample(&grid)?);
        }
        Self::new(grid, components, values)
    }

    /// Covariance strength `a^c` or `A^c`.
    pub fn covariance_of(strengths: &Strengths<T>) -> Self {
        match strengths {
            Strengths::Scalar(s) => Self {
                grid: s.grid,
                components: 1,
                values: s.a_c.iter().map(|&v| Complex::new(v, T::zero())).collect(),
            },
            Strengths::Matrix(m) => Self::from_blocks(m.grid, &m.a_c),
        }
    }

    /// Relation strength `a^r` or `A^r`.
    pub fn relation_of(strengths: &Strengths<T>) -> Self {
        match strengths {
            Strengths::Scalar(s) => Self {
                grid: s.grid,
                components: 1,
                values: s.a_r.clone(),
            },
            Strengths::Matrix(m) => Self::from_blocks(m.grid, &m.a_r),
        }
    }

    fn from_blocks(grid: Grid<T>, blocks: &[Complex<T>]) -> Self {
        let dd = grid.dim() * grid.dim();
        let n = grid.len();
        let mut values = vec![Complex::new(T::zero(), T::zero()); dd * n];
        for node in 0..n {
            for e in 0..dd {
                values[e * n + node] = blocks[node * dd + e];
            }
        }
        Self {
            grid,
            components: grid.dim(),
            values,
        }
    }

    pub fn entries(&self) -> usize {
        self.components * self.components
    }

    /// Values of entry `e = j · components + l`.
    pub fn entry(&self, e: usize) -> &[Complex<T>] {
        let n = self.grid.len();
        &self.values[e * n..(e + 1) * n]
    }

    /// Node of largest modulus in entry `e`.
    pub fn peak(&self, e: usize) -> usize {
        self.entry(e)
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).expect("finite values"))
            .map_or(0, |(i, _)| i)
    }
}
