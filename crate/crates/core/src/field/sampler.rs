use num_complex::Complex;

use super::spectral::StationarySampler;
use super::strengths::PSD_TOLERANCE;
use super::{Grid, MatrixStrengths, ScalarStrengths};
use crate::error::{Error, Result};
use crate::linalg::psd_sqrt;
use crate::scalar::Real;
use crate::seeds::rng_from_seed;

/// One sampled source on a grid: a scalar (`components = 1`) or a
/// `d`-vector field. Values are stored component-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldRealization<T> {
    pub grid: Grid<T>,
    pub components: usize,
    pub values: Vec<Complex<T>>,
    pub seed: u64,
    pub delta: T,
    pub order: T,
}

impl<T: Real> FieldRealization<T> {
    /// Wraps explicit values (component-major) as a realization.
    pub fn from_values(grid: Grid<T>, components: usize, values: Vec<Complex<T>>, seed: u64, delta: T, order: T) -> Result<Self> {
        if components == 0 || values.len() != components * grid.len() {
            return Err(Error::Mismatch(format!(
                "{} values do not fill {components} component(s) of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            components,
            values,
            seed,
            delta,
            order,
        })
    }

    pub fn component(&self, c: usize) -> &[Complex<T>] {
        let n = self.grid.len();
        &self.values[c * n..(c + 1) * n]
    }

    pub fn is_vector(&self) -> bool {
        self.components > 1
    }

    /// Pointwise sum of two realizations on the same grid.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        if self.components != other.components {
            return Err(Error::Mismatch("component counts differ".into()));
        }
        Ok(Self {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }
}

/// Lower-triangular factor `(L11, L21, L22)` of
/// `M = ½[[a^c + Re a^r, Im a^r], [Im a^r, a^c - Re a^r]]`, clamped at
/// semidefinite points.
pub fn scalar_factor<T: Real>(a_c: T, a_r: Complex<T>) -> (T, T, T) {
    let half = T::lit(0.5);
    let m11 = ((a_c + a_r.re) * half).max(T::zero());
    let m21 = a_r.im * half;
    let m22 = (a_c - a_r.re) * half;
    let l11 = m11.sqrt();
    let l21 = if l11 > T::zero() { m21 / l11 } else { T::zero() };
    let l22 = (m22 - l21 * l21).max(T::zero()).sqrt();
    (l11, l21, l22)
}

/// Checks `a^c ≥ 0` and `|a^r| ≤ a^c` at every node (relative tolerance
/// `PSD_TOLERANCE` on the augmented matrix) and returns the first violation.
pub(crate) fn check_scalar_admissible<T: Real>(s: &ScalarStrengths<T>) -> Result<()> {
    for node in 0..s.grid.len() {
        let (c, r) = (s.a_c[node], s.a_r[node]);
        if !c.is_finite() || !r.re.is_finite() || !r.im.is_finite() {
            return Err(Error::Inadmissible {
                node,
                detail: "non-finite strength".into(),
            });
        }
        let margin = s.margin(node);
        let tol = T::lit(PSD_TOLERANCE) * s.augmented_trace(node).abs();
        if c < -tol || margin < -tol {
            return Err(Error::Inadmissible {
                node,
                detail: format!("a_c = {c}, |a_r| = {}, margin a_c - |a_r| = {margin}", r.norm()),
            });
        }
    }
    Ok(())
}

/// Per-node real square roots of the `2d×2d` covariance, validated.
pub(crate) fn matrix_roots<T: Real>(s: &MatrixStrengths<T>) -> Result<Vec<Vec<f64>>> {
    let d = s.grid.dim();
    let n2 = 2 * d;
    let mut roots = Vec::with_capacity(s.grid.len());
    for node in 0..s.grid.len() {
        let trace = s.augmented_trace(node).as_f64();
        let scale = s
            .block_c(node)
            .iter()
            .chain(s.block_r(node))
            .map(|v| v.norm().as_f64())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            roots.push(Vec::new());
            continue;
        }
        if !scale.is_finite() {
            return Err(Error::Inadmissible {
                node,
                detail: "non-finite strength".into(),
            });
        }
        let asym = s.asymmetry(node).as_f64();
        if asym > PSD_TOLERANCE * scale {
            return Err(Error::Inadmissible {
                node,
                detail: format!("A_c must be Hermitian and A_r symmetric (deviation {asym:e})"),
            });
        }
        let sigma = s.real_covariance(node);
        let (root, min_eig) = psd_sqrt(n2, &sigma);
        // The augmented complex matrix has eigenvalues 2·eig(sigma).
        let augmented_min = 2.0 * min_eig;
        if augmented_min < -PSD_TOLERANCE * trace.abs().max(f64::MIN_POSITIVE) {
            return Err(Error::Inadmissible {
                node,
                detail: format!("smallest augmented eigenvalue {augmented_min:e}"),
            });
        }
        roots.push(root);
    }
    Ok(roots)
}

/// Reusable sampler for a scalar strength pair.
pub struct ScalarGmigSampler<T: Real> {
    factors: Vec<(T, T, T)>,
    stationary: StationarySampler<T>,
    delta: T,
    order: T,
}

impl<T: Real> ScalarGmigSampler<T> {
    pub fn new(strengths: &ScalarStrengths<T>, delta: T) -> Result<Self> {
        check_scalar_admissible(strengths)?;
        let factors = strengths
            .a_c
            .iter()
            .zip(&strengths.a_r)
            .map(|(&c, &r)| scalar_factor(c, r))
            .collect();
        Ok(Self {
            factors,
            stationary: StationarySampler::new(strengths.grid, strengths.order, delta)?,
            delta,
            order: strengths.order,
        })
    }

    /// `f = L11 g1 + i (L21 g1 + L22 g2)` from the pair `(g1, g2)` of seed.
    pub fn draw(&self, seed: u64) -> FieldRealization<T> {
        let mut rng = rng_from_seed(seed);
        let g = self.stationary.draw_pair(&mut rng);
        let values = g
            .iter()
            .zip(&self.factors)
            .map(|(gv, &(l11, l21, l22))| Complex::new(l11 * gv.re, l21 * gv.re + l22 * gv.im))
            .collect();
        FieldRealization {
            grid: *self.stationary.grid(),
            components: 1,
            values,
            seed,
            delta: self.delta,
            order: self.order,
        }
    }
}

/// Reusable sampler for a matrix strength pair.
pub struct VectorGmigSampler<T: Real> {
    roots: Vec<Vec<f64>>,
    stationary: StationarySampler<T>,
    delta: T,
    order: T,
}

impl<T: Real> VectorGmigSampler<T> {
    pub fn new(strengths: &MatrixStrengths<T>, delta: T) -> Result<Self> {
        Ok(Self {
            roots: matrix_roots(strengths)?,
            stationary: StationarySampler::new(strengths.grid, strengths.order, delta)?,
            delta,
            order: strengths.order,
        })
    }

    /// `(Re f, Im f) = R(x) g` with `g` the `2d` stationary fields of seed.
    pub fn draw(&self, seed: u64) -> FieldRealization<T> {
        let grid = *self.stationary.grid();
        let d = grid.dim();
        let n = grid.len();
        let n2 = 2 * d;
        let mut rng = rng_from_seed(seed);
        let pairs: Vec<Vec<Complex<T>>> = (0..d).map(|_| self.stationary.draw_pair(&mut rng)).collect();
        let mut values = vec![Complex::new(T::zero(), T::zero()); d * n];
        let mut g = vec![0.0; n2];
        for (node, root) in self.roots.iter().enumerate() {
            if root.is_empty() {
                continue;
            }
            for (k, pair) in pairs.iter().enumerate() {
                g[2 * k] = pair[node].re.as_f64();
                g[2 * k + 1] = pair[node].im.as_f64();
            }
            for c in 0..d {
                let re: f64 = (0..n2).map(|j| root[c * n2 + j] * g[j]).sum();
                let im: f64 = (0..n2).map(|j| root[(c + d) * n2 + j] * g[j]).sum();
                values[c * n + node] = Complex::new(T::lit(re), T::lit(im));
            }
        }
        FieldRealization {
            grid,
            components: d,
            values,
            seed,
            delta: self.delta,
            order: self.order,
        }
    }
}

/// One scalar GMIG realization.
pub fn sample_scalar_gmig<T: Real>(strengths: &ScalarStrengths<T>, delta: T, seed: u64) -> Result<FieldRealization<T>> {
    Ok(ScalarGmigSampler::new(strengths, delta)?.draw(seed))
}

/// One vector GMIG realization.
pub fn sample_vector_gmig<T: Real>(strengths: &MatrixStrengths<T>, delta: T, seed: u64) -> Result<FieldRealization<T>> {
    Ok(VectorGmigSampler::new(strengths, delta)?.draw(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_moments() {
        let a_c = 2.0_f64;
        let a_r = Complex::from_polar(1.3, 0.9);
        let (l11, l21, l22) = scalar_factor(a_c, a_r);
        assert!((l11 * l11 + l21 * l21 + l22 * l22 - a_c).abs() < 1e-14);
        let rel = Complex::new(l11 * l11 - l21 * l21 - l22 * l22, 2.0 * l11 * l21);
        assert!((rel - a_r).norm() < 1e-14);
    }

    #[test]
    fn boundary_case_is_real() {
        let (l11, l21, l22) = scalar_factor(1.5_f64, Complex::new(1.5, 0.0));
        assert!(l21 == 0.0 && l22 == 0.0 && (l11 * l11 - 1.5).abs() < 1e-15);
        let (l11, l21, l22) = scalar_factor(1.5_f64, Complex::new(-1.5, 0.0));
        assert!(l11 == 0.0 && l21 == 0.0 && (l22 * l22 - 1.5).abs() < 1e-15);
    }
}
