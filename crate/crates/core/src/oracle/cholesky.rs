use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use super::kernels::DenseKernelPair;
use crate::error::{Error, Result};
use crate::field::{FieldRealization, Grid};
use crate::seeds::rng_from_seed;

/// Dense sampler that colours white noise with a square root of the full
/// real covariance of `(Re f, Im f)`.
#[derive(Debug, Clone)]
pub struct DenseSampler {
    nodes: usize,
    components: usize,
    /// Rows of `(Re f, Im f)` with nonzero variance; the rest are exactly zero.
    active: Vec<usize>,
    root: DMatrix<f64>,
    min_eigenvalue: f64,
}

impl DenseSampler {
    pub fn new(kernels: &DenseKernelPair) -> Result<Self> {
        let dim = kernels.dim();
        let entry = |i: usize, j: usize| {
            let (bi, p) = (i / dim, i % dim);
            let (bj, q) = (j / dim, j % dim);
            match (bi, bj) {
                (0, 0) => 0.5 * (kernels.c(p, q).re + kernels.r(p, q).re),
                (1, 1) => 0.5 * (kernels.c(p, q).re - kernels.r(p, q).re),
                (0, 1) => 0.5 * (kernels.r(p, q).im - kernels.c(p, q).im),
                _ => 0.5 * (kernels.r(q, p).im - kernels.c(q, p).im),
            }
        };
        let active: Vec<usize> = (0..2 * dim).filter(|&i| entry(i, i) > 0.0).collect();
        let na = active.len();
        let cov = DMatrix::from_fn(na, na, |i, j| entry(active[i], active[j]));
        let scale = cov.diagonal().iter().cloned().fold(0.0, f64::max);
        let eig = SymmetricEigen::new(cov);
        let min_eigenvalue = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -1e-8 * scale {
            return Err(Error::Singular(min_eigenvalue));
        }
        let sqrt = eig.eigenvalues.map(|v| v.max(0.0).sqrt());
        let root = &eig.eigenvectors * DMatrix::from_diagonal(&sqrt) * eig.eigenvectors.transpose();
        Ok(Self {
            nodes: kernels.nodes,
            components: kernels.components,
            active,
            root,
            min_eigenvalue,
        })
    }

    /// Smallest eigenvalue of the real covariance before clamping.
    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// `count` independent draws, each a component-major complex vector.
    pub fn draw_many(&self, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
        let dim = self.nodes * self.components;
        let mut rng = rng_from_seed(seed);
        let white = DMatrix::from_fn(self.active.len(), count, |_, _| StandardNormal.sample(&mut rng));
        let coloured = &self.root * white;
        (0..count)
            .map(|s| {
                let mut full = vec![0.0; 2 * dim];
                for (k, &i) in self.active.iter().enumerate() {
                    full[i] = coloured[(k, s)];
                }
                (0..dim).map(|p| Complex64::new(full[p], full[dim + p])).collect()
            })
            .collect()
    }
}

/// One dense draw wrapped as a realization on `grid`.
pub fn cholesky_sample(kernels: &DenseKernelPair, grid: &Grid<f64>, seed: u64) -> Result<FieldRealization<f64>> {
    if kernels.nodes != grid.len() {
        return Err(Error::Mismatch(format!(
            "kernels cover {} nodes, grid has {}",
            kernels.nodes,
            grid.len()
        )));
    }
    let values = DenseSampler::new(kernels)?.draw_many(1, seed).pop().expect("one draw");
    FieldRealization::from_values(*grid, kernels.components, values, seed, f64::NAN, f64::NAN)
}
