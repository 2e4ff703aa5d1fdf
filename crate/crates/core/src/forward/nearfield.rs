use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::FieldRealization;
use crate::scalar::Real;
use crate::waves::{fundamental_biharmonic, fundamental_helmholtz, green_tensor_elastic, WaveKind};

/// Radiated field at a point outside the sampling box.
#[derive(Debug, Clone, PartialEq)]
pub enum NearFieldValue<T> {
    Scalar(Complex<T>),
    Vector(Vec<Complex<T>>),
}

/// Volume-potential quadrature of the radiated field at `x`:
/// `-∫Φ_d f`, `-∫F_d f`, `iκ∫Φ_3 f` or `-∫G_d f` for the acoustic,
/// biharmonic, electromagnetic and elastic models. Points closer than `2h`
/// to the sampling box are refused.
pub fn nearfield<T: Real>(kind: WaveKind<T>, f: &FieldRealization<T>, x: &[T], frequency: T) -> Result<NearFieldValue<T>> {
    let grid = f.grid;
    let d = grid.dim();
    if x.len() != d {
        return Err(Error::Mismatch(format!("point has {} coordinates, grid is {d}-dimensional", x.len())));
    }
    if !(frequency > T::zero()) {
        return Err(Error::Domain(format!("frequency must be positive, got {frequency}")));
    }
    let half = grid.extent() * T::lit(0.5);
    let gap = x
        .iter()
        .map(|&c| (c.abs() - half).max(T::zero()).powi(2))
        .sum::<T>()
        .sqrt();
    if gap < T::lit(2.0) * grid.spacing() {
        return Err(Error::Domain(format!(
            "near-field point lies within 2h of the source box (distance {gap})"
        )));
    }
    let want = if kind.is_vector() { d } else { 1 };
    if f.components != want {
        return Err(Error::Mismatch(format!(
            "{} waves need {want} source component(s), got {}",
            kind.name(),
            f.components
        )));
    }
    let vol = grid.cell_volume();
    let n = grid.len();
    let zero = Complex::new(T::zero(), T::zero());
    match kind {
        WaveKind::Acoustic | WaveKind::Biharmonic => {
            let values = f.component(0);
            let mut acc = zero;
            for (node, v) in values.iter().enumerate() {
                if *v == zero {
                    continue;
                }
                let y = grid.position(node);
                let k = match kind {
                    WaveKind::Acoustic => fundamental_helmholtz(x, &y[..d], Complex::new(frequency, T::zero()), d)?,
                    _ => fundamental_biharmonic(x, &y[..d], frequency, d)?,
                };
                acc += k * v;
            }
            Ok(NearFieldValue::Scalar(-acc * vol))
        }
        WaveKind::Electromagnetic => {
            if d != 3 {
                return Err(Error::Domain("the electromagnetic model is three-dimensional".into()));
            }
            let mut acc = vec![zero; 3];
            for node in 0..n {
                let fv: Vec<Complex<T>> = (0..3).map(|c| f.values[c * n + node]).collect();
                if fv.iter().all(|v| *v == zero) {
                    continue;
                }
                let y = grid.position(node);
                let k = fundamental_helmholtz(x, &y, Complex::new(frequency, T::zero()), 3)?;
                for c in 0..3 {
                    acc[c] += k * fv[c];
                }
            }
            let scale = Complex::new(T::zero(), frequency) * vol;
            Ok(NearFieldValue::Vector(acc.into_iter().map(|v| v * scale).collect()))
        }
        WaveKind::Elastic { .. } => {
            let speeds = kind.speeds().expect("elastic kind has speeds");
            let mut acc = vec![zero; d];
            for node in 0..n {
                let fv: Vec<Complex<T>> = (0..d).map(|c| f.values[c * n + node]).collect();
                if fv.iter().all(|v| *v == zero) {
                    continue;
                }
                let y = grid.position(node);
                let g = green_tensor_elastic(x, &y[..d], frequency, speeds, d)?;
                for a in 0..d {
                    for b in 0..d {
                        acc[a] += g[a * d + b] * fv[b];
                    }
                }
            }
            Ok(NearFieldValue::Vector(acc.into_iter().map(|v| -v * vol).collect()))
        }
    }
}
