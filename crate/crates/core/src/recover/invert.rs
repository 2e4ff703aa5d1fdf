use num_complex::Complex;
use rayon::prelude::*;

use super::data::PolarFourierData;
use super::grid::StrengthGrid;
use crate::error::{Error, Result};
use crate::estimate::Target;
use crate::field::Grid;
use crate::scalar::{cis, Real};

/// Radial taper applied to the polar samples before inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// Unit weight up to `0.8 τ_max`, then a half cosine down to zero at `τ_max`.
    RaisedCosine,
    /// No taper.
    None,
}

impl Window {
    pub fn name(self) -> &'static str {
        match self {
            Window::RaisedCosine => "raised-cosine",
            Window::None => "none",
        }
    }

    pub fn factor<T: Real>(self, tau: T, tau_max: T) -> T {
        match self {
            Window::None => T::one(),
            Window::RaisedCosine => {
                let start = T::lit(0.8) * tau_max;
                if tau <= start {
                    T::one()
                } else if tau >= tau_max {
                    T::zero()
                } else {
                    let phase = T::PI() * (tau - start) / (tau_max - start);
                    T::lit(0.5) * (T::one() + phase.cos())
                }
            }
        }
    }
}

/// Output of [`invert_polar_fourier`].
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction<T> {
    pub strengths: StrengthGrid<T>,
    pub target: Target,
    pub window: Window,
    pub tau_max: T,
    /// Largest imaginary part (scalar covariance) or anti-Hermitian part
    /// (matrix covariance) removed by symmetrization; zero for relations.
    pub imag_residual: T,
    /// Standard error of each reconstructed value propagated from the
    /// sample standard errors.
    pub propagated_error: T,
}

/// Radial quadrature weights `τ^{d-1} Δτ` with trapezoid endpoints; in two
/// dimensions the origin carries the Euler-Maclaurin term `Δτ²/12`.
pub fn radial_weights<T: Real>(shifts: &[T], d: usize) -> Vec<T> {
    let n = shifts.len();
    let step = shifts[1] - shifts[0];
    shifts
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let base = t.powi(d as i32 - 1) * step;
            if i == 0 {
                if d == 2 {
                    step * step / T::lit(12.0)
                } else {
                    T::zero()
                }
            } else if i + 1 == n {
                T::lit(0.5) * base
            } else {
                base
            }
        })
        .collect()
}

fn check_shifts<T: Real>(shifts: &[T]) -> Result<T> {
    if shifts.len() < 2 {
        return Err(Error::Config("inversion needs at least two shifts".into()));
    }
    if shifts[0] != T::zero() {
        return Err(Error::Config("the shift grid must start at zero".into()));
    }
    let step = shifts[1] - shifts[0];
    for (i, &t) in shifts.iter().enumerate() {
        let expected = step * T::from_usize_lossy(i);
        if (t - expected).abs() > T::lit(1e-6) * (T::one() + expected) {
            return Err(Error::Config(format!("shift {i} breaks the uniform spacing {}", step.as_f64())));
        }
    }
    Ok(step)
}

/// Evaluates the truncated polar Fourier inversion
/// `a(x) ≈ (2π)^{-d} Σ_ij w_ij W(τ_i) â(τ_i x̂_j) e^{i τ_i x̂_j · x}`
/// on `grid`.
pub fn invert_polar_fourier<T: Real>(data: &PolarFourierData<T>, grid: &Grid<T>, window: Window) -> Result<Reconstruction<T>> {
    let d = grid.dim();
    if data.dim != d {
        return Err(Error::Mismatch(format!("data in d = {} cannot be inverted on a d = {d} grid", data.dim)));
    }
    check_shifts(&data.shifts)?;
    let tau_max = *data.shifts.last().expect("at least two shifts");
    if tau_max * grid.spacing() > T::PI() {
        return Err(Error::Nyquist {
            frequency: tau_max.as_f64(),
            limit: (T::PI() / grid.spacing()).as_f64(),
        });
    }
    if data.target == Target::Relation && !data.directions.is_negation_closed() {
        return Err(Error::Config("relation inversion needs a negation-closed direction set".into()));
    }
    let entries = data.components * data.components;
    let ndir = data.directions.len();
    let radial = radial_weights(&data.shifts, d);
    let norm = (T::lit(2.0) * T::PI()).powi(-(d as i32));

    // Weighted coefficients and per-axis phase tables for each sample.
    let n = grid.nodes_per_axis();
    let mut coeffs: Vec<Vec<Complex<T>>> = Vec::new();
    let mut tables: Vec<Vec<Vec<Complex<T>>>> = Vec::new();
    let mut variance = T::zero();
    for (i, &tau) in data.shifts.iter().enumerate() {
        let w_r = radial[i] * window.factor(tau, tau_max);
        if w_r == T::zero() {
            continue;
        }
        for j in 0..ndir {
            let w = w_r * data.directions.weight(j) * norm;
            let slot = i * ndir + j;
            coeffs.push(data.values[slot].iter().map(|&v| v * w).collect());
            let se_max = data.std_errors[slot].iter().fold(T::zero(), |a, &b| a.max(b));
            variance += (w * se_max).powi(2);
            let xhat = data.directions.get(j);
            tables.push(
                (0..d)
                    .map(|a| (0..n).map(|k| cis(tau * xhat[a] * grid.coord(k))).collect())
                    .collect(),
            );
        }
    }

    let len = grid.len();
    let mut nodes = vec![vec![Complex::new(T::zero(), T::zero()); entries]; len];
    nodes.par_iter_mut().enumerate().for_each(|(node, acc)| {
        let idx = grid.unflatten(node);
        for (c, t) in coeffs.iter().zip(&tables) {
            let mut phase = t[0][idx[0]];
            for a in 1..d {
                phase *= t[a][idx[a]];
            }
            for (v, &x) in acc.iter_mut().zip(c) {
                *v += x * phase;
            }
        }
    });

    let cpt = data.components;
    let mut residual = T::zero();
    let mut values = vec![Complex::new(T::zero(), T::zero()); entries * len];
    for (node, acc) in nodes.into_iter().enumerate() {
        for r in 0..cpt {
            for s in 0..cpt {
                let e = r * cpt + s;
                let v = if data.target == Target::Covariance {
                    let mirror = acc[s * cpt + r].conj();
                    residual = residual.max(((acc[e] - mirror) * T::lit(0.5)).norm());
                    (acc[e] + mirror) * T::lit(0.5)
                } else {
                    acc[e]
                };
                values[e * len + node] = v;
            }
        }
    }
    Ok(Reconstruction {
        strengths: StrengthGrid::new(*grid, cpt, values)?,
        target: data.target,
        window,
        tau_max,
        imag_residual: residual,
        propagated_error: variance.sqrt(),
    })
}
