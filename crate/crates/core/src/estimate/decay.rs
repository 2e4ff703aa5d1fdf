use num_complex::Complex;

use crate::error::{Error, Result};
use crate::forward::FarFieldSource;
use crate::scalar::Real;

/// Smallest ensemble accepted by the decay diagnostic.
pub const MIN_DECAY_ENSEMBLE: usize = 100;

/// Offsets `|κ₁ - κ₂|` included in the decay fit.
pub const DECAY_FIT_RANGE: f64 = 20.0;

/// Correlation moduli at one frequency pair. Products are ordered as
/// `u(x̂,κ₁) conj u(x̂,κ₂)`, `u(x̂,κ₁) u(-x̂,κ₂)`, `u(x̂,κ₁) conj u(-x̂,κ₂)`
/// and `u(x̂,κ₁) u(x̂,κ₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRow<T> {
    pub kappa1: T,
    pub kappa2: T,
    pub moduli: [T; 4],
    pub std_errors: [T; 4],
}

/// Table of empirical correlation moduli with fitted log-log decay slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayTable<T> {
    pub xhat: Vec<T>,
    pub kappa2: T,
    pub realizations: usize,
    pub rows: Vec<DecayRow<T>>,
    /// Least-squares slope of `log modulus` against `log(1 + |κ₁ - κ₂|)`
    /// over offsets up to `DECAY_FIT_RANGE`, per product.
    pub fitted_exponent: [Option<T>; 4],
}

impl<T: Real> DecayTable<T> {
    /// Row whose `κ₁` is closest to `kappa1`.
    pub fn row_near(&self, kappa1: T) -> Option<&DecayRow<T>> {
        self.rows
            .iter()
            .min_by(|a, b| (a.kappa1 - kappa1).abs().partial_cmp(&(b.kappa1 - kappa1).abs()).expect("finite"))
    }
}

fn scalar_value<T: Real, S: FarFieldSource<T> + ?Sized>(source: &S, xhat: &[T], freq: T) -> Result<Complex<T>> {
    source
        .value(xhat, freq)?
        .as_scalar()
        .ok_or_else(|| Error::Mismatch("decay diagnostics need a scalar far field".into()))
}

fn fit_slope<T: Real>(points: &[(T, T)]) -> Option<T> {
    if points.len() < 2 {
        return None;
    }
    let n = T::from_usize_lossy(points.len());
    let mx = points.iter().map(|p| p.0).sum::<T>() / n;
    let my = points.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > T::zero()).then(|| sxy / sxx)
}

/// Empirical moduli of the four far-field correlations between `κ₁` (each
/// entry of `kappa1`) and a fixed `κ₂`, over an ensemble built by `make`.
pub fn decay_diagnostic<T, S, F>(xhat: &[T], kappa2: T, kappa1: &[T], realizations: usize, mut make: F) -> Result<DecayTable<T>>
where
    T: Real,
    S: FarFieldSource<T>,
    F: FnMut(usize) -> Result<S>,
{
    if realizations < MIN_DECAY_ENSEMBLE {
        return Err(Error::Config(format!(
            "decay diagnostics need at least {MIN_DECAY_ENSEMBLE} realizations, got {realizations}"
        )));
    }
    let minus: Vec<T> = xhat.iter().map(|&v| -v).collect();
    let zero = Complex::new(T::zero(), T::zero());
    let mut sums = vec![[zero; 4]; kappa1.len()];
    let mut sq = vec![[T::zero(); 4]; kappa1.len()];
    for i in 0..realizations {
        let source = make(i)?;
        let b_plus = scalar_value(&source, xhat, kappa2)?;
        let b_minus = scalar_value(&source, &minus, kappa2)?;
        for (r, &k1) in kappa1.iter().enumerate() {
            let a = scalar_value(&source, xhat, k1)?;
            let z = [a * b_plus.conj(), a * b_minus, a * b_minus.conj(), a * b_plus];
            for k in 0..4 {
                sums[r][k] += z[k];
                sq[r][k] += z[k].norm_sqr();
            }
        }
    }
    let m = T::from_usize_lossy(realizations);
    let rows: Vec<DecayRow<T>> = kappa1
        .iter()
        .enumerate()
        .map(|(r, &k1)| {
            let mut moduli = [T::zero(); 4];
            let mut std_errors = [T::zero(); 4];
            for k in 0..4 {
                let mean = sums[r][k] / m;
                moduli[k] = mean.norm();
                let var = (sq[r][k] / m - mean.norm_sqr()).max(T::zero()) * m / (m - T::one());
                std_errors[k] = (var / m).sqrt();
            }
            DecayRow {
                kappa1: k1,
                kappa2,
                moduli,
                std_errors,
            }
        })
        .collect();
    let mut fitted_exponent = [None; 4];
    for (k, slot) in fitted_exponent.iter_mut().enumerate() {
        let points: Vec<(T, T)> = rows
            .iter()
            .filter(|row| (row.kappa1 - kappa2).abs() <= T::lit(DECAY_FIT_RANGE) && row.moduli[k] > T::zero())
            .map(|row| ((T::one() + (row.kappa1 - kappa2).abs()).ln(), row.moduli[k].ln()))
            .collect();
        *slot = fit_slope(&points);
    }
    Ok(DecayTable {
        xhat: xhat.to_vec(),
        kappa2,
        realizations,
        rows,
        fitted_exponent,
    })
}
