use num_complex::Complex;

use crate::error::{Error, Result};
use crate::estimate::{normalization_constant, BandAverageResult, Target};
use crate::forward::DirectionSet;
use crate::scalar::Real;
use crate::waves::WaveKind;

/// Estimated Fourier samples `â(τ_i x̂_j)` on a polar set, after division by
/// the model constant. Values are stored at `i · directions + j`, each a
/// `components × components` row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFourierData<T> {
    pub kind: WaveKind<T>,
    pub target: Target,
    pub dim: usize,
    pub components: usize,
    pub directions: DirectionSet<T>,
    /// Fourier radii (the elastic shift axis is already rescaled by `c_s`).
    pub shifts: Vec<T>,
    pub values: Vec<Vec<Complex<T>>>,
    pub std_errors: Vec<Vec<T>>,
}

impl<T: Real> PolarFourierData<T> {
    /// Exact samples of a known transform, with zero standard errors.
    pub fn from_fn<F>(kind: WaveKind<T>, target: Target, directions: DirectionSet<T>, shifts: Vec<T>, components: usize, f: F) -> Self
    where
        F: Fn(&[T]) -> Vec<Complex<T>>,
    {
        let mut values = Vec::with_capacity(shifts.len() * directions.len());
        for &t in &shifts {
            for x in directions.iter() {
                let xi: Vec<T> = x.iter().map(|&v| v * t).collect();
                values.push(f(&xi));
            }
        }
        let std_errors = vec![vec![T::zero(); components * components]; values.len()];
        Self {
            kind,
            target,
            dim: directions.dim(),
            components,
            directions,
            shifts,
            values,
            std_errors,
        }
    }

    pub fn value(&self, shift: usize, direction: usize) -> &[Complex<T>] {
        &self.values[shift * self.directions.len() + direction]
    }

    /// Sum of two data sets on the same sampling set.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shifts != other.shifts || self.directions != other.directions || self.components != other.components {
            return Err(Error::Mismatch("polar data sets use different samples".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += *y;
            }
        }
        for (a, b) in out.std_errors.iter_mut().zip(&other.std_errors) {
            for (x, y) in a.iter_mut().zip(b) {
                *x = x.hypot(*y);
            }
        }
        Ok(out)
    }

    /// Mean of data sets from independent realizations on one sampling set.
    /// With two or more sets the standard errors are the empirical standard
    /// deviation across sets over `√M`; a single set is returned unchanged.
    pub fn average(sets: &[Self]) -> Result<Self> {
        let first = sets.first().ok_or_else(|| Error::Config("no data sets to average".into()))?;
        if sets.len() == 1 {
            return Ok(first.clone());
        }
        for s in &sets[1..] {
            if s.shifts != first.shifts
                || s.directions != first.directions
                || s.components != first.components
                || s.target != first.target
                || s.kind != first.kind
            {
                return Err(Error::Mismatch("polar data sets use different samples".into()));
            }
        }
        let m = T::from_usize_lossy(sets.len());
        let mut out = first.clone();
        for (slot, (values, errors)) in out.values.iter_mut().zip(out.std_errors.iter_mut()).enumerate() {
            for e in 0..values.len() {
                let mean = sets.iter().map(|s| s.values[slot][e]).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b) / m;
                let var = sets.iter().map(|s| (s.values[slot][e] - mean).norm_sqr()).fold(T::zero(), |a, b| a + b)
                    / (m - T::one());
                values[e] = mean;
                errors[e] = (var / m).sqrt();
            }
        }
        Ok(out)
    }

    /// Largest `|v(-ξ) - v(ξ)^H| / se` over sample pairs `(τ, ±x̂)`, the
    /// check that a covariance transform comes from a Hermitian (real, for
    /// scalars) strength. Pairs with zero standard error use the absolute
    /// deviation. Returns `None` when no negated direction is present.
    pub fn conjugate_symmetry(&self) -> Option<T> {
        let c = self.components;
        let mut worst: Option<T> = None;
        for j in 0..self.directions.len() {
            let Some(k) = self.directions.negation_index(j) else {
                continue;
            };
            for i in 0..self.shifts.len() {
                let a = self.value(i, j);
                let b = self.value(i, k);
                let sa = &self.std_errors[i * self.directions.len() + j];
                let sb = &self.std_errors[i * self.directions.len() + k];
                for r in 0..c {
                    for s in 0..c {
                        let dev = (b[r * c + s] - a[s * c + r].conj()).norm();
                        let se = sa[s * c + r].hypot(sb[r * c + s]);
                        let z = if se > T::zero() { dev / se } else { dev };
                        worst = Some(worst.map_or(z, |w: T| w.max(z)));
                    }
                }
            }
        }
        worst
    }
}

fn same_kind<T: Real>(a: &WaveKind<T>, b: &WaveKind<T>) -> bool {
    a == b
}

/// Divides estimator outputs by the model constant and arranges them on the
/// polar set of their Fourier arguments (`τ x̂`, or `c_s τ x̂` for elastic
/// waves). Every (shift, direction) pair must appear exactly once.
pub fn normalize<T: Real>(estimates: &[BandAverageResult<T>], kind: WaveKind<T>, d: usize, target: Target) -> Result<PolarFourierData<T>> {
    if estimates.is_empty() {
        return Err(Error::Config("no estimates to normalize".into()));
    }
    let constant = normalization_constant(&kind, d, target)?;
    let tol = T::lit(1e-9);
    let mut shifts: Vec<T> = Vec::new();
    let mut dirs: Vec<Vec<T>> = Vec::new();
    for e in estimates {
        let cfg = &e.config;
        if !same_kind(&cfg.kind, &kind) || cfg.dim != d || cfg.target != target {
            return Err(Error::Mismatch(format!(
                "estimate for {} {} in d = {} cannot be normalized as {} {} in d = {d}",
                cfg.kind.name(),
                cfg.target.name(),
                cfg.dim,
                kind.name(),
                target.name()
            )));
        }
        let radius = kind.speeds().map_or(T::one(), |v| v.c_s) * cfg.tau;
        if !shifts.iter().any(|&s| (s - radius).abs() <= tol * (T::one() + radius)) {
            shifts.push(radius);
        }
        if !dirs.iter().any(|v| v.iter().zip(&cfg.xhat).all(|(a, b)| (*a - *b).abs() <= tol)) {
            dirs.push(cfg.xhat.clone());
        }
    }
    shifts.sort_by(|a, b| a.partial_cmp(b).expect("finite shifts"));
    let directions = DirectionSet::from_vectors(d, &dirs)?;
    let count = shifts.len() * dirs.len();
    if estimates.len() != count {
        return Err(Error::Config(format!(
            "{} estimates do not form a full {} shift × {} direction set",
            estimates.len(),
            shifts.len(),
            dirs.len()
        )));
    }
    let components = estimates[0].components;
    let mut values = vec![Vec::new(); count];
    let mut std_errors = vec![Vec::new(); count];
    for e in estimates {
        let radius = kind.speeds().map_or(T::one(), |v| v.c_s) * e.config.tau;
        let i = shifts
            .iter()
            .position(|&s| (s - radius).abs() <= tol * (T::one() + radius))
            .expect("shift recorded");
        let j = dirs
            .iter()
            .position(|v| v.iter().zip(&e.config.xhat).all(|(a, b)| (*a - *b).abs() <= tol))
            .expect("direction recorded");
        let slot = i * dirs.len() + j;
        if !values[slot].is_empty() {
            return Err(Error::Config("duplicate (shift, direction) estimate".into()));
        }
        values[slot] = e.estimate.iter().map(|&v| v / constant).collect();
        std_errors[slot] = e.std_error.iter().map(|&s| s / constant.norm()).collect();
    }
    Ok(PolarFourierData {
        kind,
        target,
        dim: d,
        components,
        directions,
        shifts,
        values,
        std_errors,
    })
}
