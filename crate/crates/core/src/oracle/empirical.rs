use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sample second moments of zero-mean complex vectors with entrywise
/// Monte-Carlo standard errors.
///
/// The standard error of an entry is `√((E|z|² - |E z|²) / M)` for the
/// products `z = f_p conj(f_q)` (covariance) or `z = f_p f_q` (relation).
#[derive(Debug, Clone)]
pub struct EmpiricalKernels {
    pub dim: usize,
    pub samples: usize,
    pub k_c: Vec<Complex64>,
    pub k_r: Vec<Complex64>,
    pub se_c: Vec<f64>,
    pub se_r: Vec<f64>,
}

impl EmpiricalKernels {
    pub fn from_draws(draws: &[Vec<Complex64>]) -> Result<Self> {
        let samples = draws.len();
        if samples < 2 {
            return Err(Error::Domain("empirical kernels need at least two draws".into()));
        }
        let dim = draws[0].len();
        if draws.iter().any(|v| v.len() != dim) {
            return Err(Error::Mismatch("draws have different lengths".into()));
        }
        let x = DMatrix::from_fn(2 * dim, samples, |i, s| {
            let v = draws[s][i % dim];
            if i < dim {
                v.re
            } else {
                v.im
            }
        });
        let moduli = DMatrix::from_fn(dim, samples, |p, s| draws[s][p].norm_sqr());
        let inv = 1.0 / samples as f64;
        let second = (&x * x.transpose()) * inv;
        let fourth = (&moduli * moduli.transpose()) * inv;
        let mut k_c = Vec::with_capacity(dim * dim);
        let mut k_r = Vec::with_capacity(dim * dim);
        let mut se_c = Vec::with_capacity(dim * dim);
        let mut se_r = Vec::with_capacity(dim * dim);
        for p in 0..dim {
            for q in 0..dim {
                let aa = second[(p, q)];
                let bb = second[(dim + p, dim + q)];
                let ba = second[(dim + p, q)];
                let ab = second[(p, dim + q)];
                let c = Complex64::new(aa + bb, ba - ab);
                let r = Complex64::new(aa - bb, ba + ab);
                let e4 = fourth[(p, q)];
                se_c.push(((e4 - c.norm_sqr()).max(0.0) * inv).sqrt());
                se_r.push(((e4 - r.norm_sqr()).max(0.0) * inv).sqrt());
                k_c.push(c);
                k_r.push(r);
            }
        }
        Ok(Self {
            dim,
            samples,
            k_c,
            k_r,
            se_c,
            se_r,
        })
    }
}
