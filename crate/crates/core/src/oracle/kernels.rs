use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Strengths;
use crate::scalar::Real;

/// Largest node count per axis accepted by the dense oracles.
pub const MAX_NODES_PER_AXIS: usize = 40;

/// Largest dense kernel dimension (nodes × components).
pub const MAX_DENSE_DIM: usize = 4096;

/// Covariance and relation kernels over all node pairs of a coarse grid.
///
/// Rows and columns are indexed component-major: `c · nodes + node`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseKernelPair {
    pub nodes: usize,
    pub components: usize,
    pub k_c: Vec<Complex64>,
    pub k_r: Vec<Complex64>,
}

impl DenseKernelPair {
    pub fn dim(&self) -> usize {
        self.nodes * self.components
    }

    pub fn c(&self, p: usize, q: usize) -> Complex64 {
        self.k_c[p * self.dim() + q]
    }

    pub fn r(&self, p: usize, q: usize) -> Complex64 {
        self.k_r[p * self.dim() + q]
    }
}

/// Stationary covariance `G` on every lattice lag, by direct cosine sums
/// over the lattice frequencies `2π/L · (-n/2 .. n/2-1)`.
pub fn stationary_kernel(d: usize, n: usize, extent: f64, m: f64, delta: f64) -> Vec<f64> {
    let h = extent / n as f64;
    let freqs: Vec<f64> = (0..n)
        .map(|j| 2.0 * PI / extent * (j as f64 - (n / 2) as f64))
        .collect();
    let total = n.pow(d as u32);
    let volume = extent.powi(d as i32);
    // cos/sin tables per (frequency, lag) along one axis.
    let table: Vec<Complex64> = (0..n * n)
        .map(|i| {
            let (f, lag) = (i / n, i % n);
            Complex64::from_polar(1.0, freqs[f] * lag as f64 * h)
        })
        .collect();
    let density: Vec<f64> = (0..total)
        .map(|k| {
            let mut rest = k;
            let mut k2 = 0.0;
            for _ in 0..d {
                let f = freqs[rest % n];
                k2 += f * f;
                rest /= n;
            }
            (k2 + delta * delta).powf(-m / 2.0)
        })
        .collect();
    (0..total)
        .map(|lag| {
            let mut lags = [0usize; 3];
            let mut rest = lag;
            for a in 0..d {
                lags[a] = rest % n;
                rest /= n;
            }
            let mut acc = 0.0;
            for (k, s) in density.iter().enumerate() {
                let mut rest = k;
                let mut e = Complex64::new(1.0, 0.0);
                for &lg in lags.iter().take(d) {
                    e *= table[(rest % n) * n + lg];
                    rest /= n;
                }
                acc += s * e.re;
            }
            acc / volume
        })
        .collect()
}

/// Real `2c×2c` factor `R(x)` at each node such that `(Re f, Im f) = R g`
/// with `g` standard stationary fields.
fn pointwise_factors<T: Real>(strengths: &Strengths<T>) -> Result<(usize, Vec<Vec<f64>>)> {
    match strengths {
        Strengths::Scalar(s) => {
            let mut out = Vec::with_capacity(s.grid.len());
            for node in 0..s.grid.len() {
                let c = s.a_c[node].as_f64();
                let r = Complex64::new(s.a_r[node].re.as_f64(), s.a_r[node].im.as_f64());
                // 2x2 Cholesky of ½[[c + Re r, Im r], [Im r, c - Re r]]
                let m11 = 0.5 * (c + r.re);
                let m21 = 0.5 * r.im;
                let m22 = 0.5 * (c - r.re);
                if m11 < -1e-10 * c.abs() || m11 * m22 - m21 * m21 < -1e-10 * c * c {
                    return Err(Error::Inadmissible {
                        node,
                        detail: "covariance pair is not positive semidefinite".into(),
                    });
                }
                let l11 = m11.max(0.0).sqrt();
                let l21 = if l11 > 0.0 { m21 / l11 } else { 0.0 };
                let l22 = (m22 - l21 * l21).max(0.0).sqrt();
                out.push(vec![l11, 0.0, l21, l22]);
            }
            Ok((1, out))
        }
        Strengths::Matrix(s) => {
            let d = s.grid.dim();
            let n2 = 2 * d;
            let mut out = Vec::with_capacity(s.grid.len());
            for node in 0..s.grid.len() {
                let ac = s.block_c(node);
                let ar = s.block_r(node);
                let cz = |v: &crate::Cplx<T>| Complex64::new(v.re.as_f64(), v.im.as_f64());
                let sigma = DMatrix::from_fn(n2, n2, |i, j| {
                    let (bi, ii) = (i / d, i % d);
                    let (bj, jj) = (j / d, j % d);
                    let c = cz(&ac[ii * d + jj]);
                    let r = cz(&ar[ii * d + jj]);
                    match (bi, bj) {
                        (0, 0) => 0.5 * (c.re + r.re),
                        (1, 1) => 0.5 * (c.re - r.re),
                        (0, 1) => 0.5 * (r.im - c.im),
                        _ => {
                            // E[b_i a_j] = E[a_j b_i]
                            let c = cz(&ac[jj * d + ii]);
                            let r = cz(&ar[jj * d + ii]);
                            0.5 * (r.im - c.im)
                        }
                    }
                });
                let trace: f64 = (0..n2).map(|k| sigma[(k, k)]).sum();
                let eig = SymmetricEigen::new(sigma);
                let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
                if min < -1e-10 * trace.abs() {
                    return Err(Error::Inadmissible {
                        node,
                        detail: format!("real covariance eigenvalue {min:e}"),
                    });
                }
                let clamped = eig.eigenvalues.map(|v| v.max(0.0).sqrt());
                let root = &eig.eigenvectors * DMatrix::from_diagonal(&clamped) * eig.eigenvectors.transpose();
                out.push((0..n2 * n2).map(|k| root[(k / n2, k % n2)]).collect());
            }
            Ok((d, out))
        }
    }
}

/// Dense covariance/relation kernels of the modulated construction
/// `f = R(x) g`: `E[X(x) X(y)ᵀ] = R(x) R(y)ᵀ G(x - y)` with `X = (Re f, Im f)`.
pub fn dense_kernels<T: Real>(strengths: &Strengths<T>, m: T, delta: T) -> Result<DenseKernelPair> {
    let grid = *strengths.grid();
    let (d, n) = (grid.dim(), grid.nodes_per_axis());
    if n > MAX_NODES_PER_AXIS {
        return Err(Error::TooLarge(format!(
            "dense kernels are limited to {MAX_NODES_PER_AXIS}^d nodes, grid has {n} per axis"
        )));
    }
    let (comps, factors) = pointwise_factors(strengths)?;
    let nodes = grid.len();
    let dim = nodes * comps;
    if dim > MAX_DENSE_DIM {
        return Err(Error::TooLarge(format!("dense dimension {dim} exceeds {MAX_DENSE_DIM}")));
    }
    let g = stationary_kernel(d, n, grid.extent().as_f64(), m.as_f64(), delta.as_f64());
    let n2 = 2 * comps;
    let mut k_c = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut k_r = k_c.clone();
    let idx = |flat: usize| {
        let mut out = [0usize; 3];
        let mut rest = flat;
        for a in (0..d).rev() {
            out[a] = rest % n;
            rest /= n;
        }
        out
    };
    for x in 0..nodes {
        let ix = idx(x);
        let rx = &factors[x];
        for y in 0..nodes {
            let iy = idx(y);
            // G is indexed with axis 0 fastest in `stationary_kernel`.
            let mut lag = 0;
            for a in (0..d).rev() {
                lag = lag * n + (ix[a] + n - iy[a]) % n;
            }
            let gv = g[lag];
            if gv == 0.0 {
                continue;
            }
            let ry = &factors[y];
            // cov[i][j] = Σ_k R(x)[i][k] R(y)[j][k] · G
            let mut cov = [[0.0f64; 6]; 6];
            for i in 0..n2 {
                for j in 0..n2 {
                    let s: f64 = (0..n2).map(|k| rx[i * n2 + k] * ry[j * n2 + k]).sum();
                    cov[i][j] = s * gv;
                }
            }
            for a in 0..comps {
                for b in 0..comps {
                    let aa = cov[a][b];
                    let bb = cov[comps + a][comps + b];
                    let ba = cov[comps + a][b];
                    let ab = cov[a][comps + b];
                    let p = a * nodes + x;
                    let q = b * nodes + y;
                    k_c[p * dim + q] = Complex64::new(aa + bb, ba - ab);
                    k_r[p * dim + q] = Complex64::new(aa - bb, ba + ab);
                }
            }
        }
    }
    Ok(DenseKernelPair {
        nodes,
        components: comps,
        k_c,
        k_r,
    })
}

impl DenseKernelPair {
    /// Exact Monte-Carlo standard errors of the sample covariance and
    /// relation kernels from `samples` independent draws (Gaussian fourth
    /// moments): `Var(f_p conj f_q) = K^c_pp K^c_qq + |K^r_pq|²` and
    /// `Var(f_p f_q) = K^c_pp K^c_qq + |K^c_pq|²`.
    pub fn standard_errors(&self, samples: usize) -> (Vec<f64>, Vec<f64>) {
        let dim = self.dim();
        let inv = 1.0 / samples as f64;
        let mut se_c = Vec::with_capacity(dim * dim);
        let mut se_r = Vec::with_capacity(dim * dim);
        for p in 0..dim {
            for q in 0..dim {
                let diag = self.c(p, p).re * self.c(q, q).re;
                se_c.push(((diag + self.r(p, q).norm_sqr()) * inv).sqrt());
                se_r.push(((diag + self.c(p, q).norm_sqr()) * inv).sqrt());
            }
        }
        (se_c, se_r)
    }
}
