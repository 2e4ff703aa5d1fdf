use num_complex::Complex;

use super::config::{compressional_rescaling, elastic_coefficients, EstimatorConfig, Target};
use crate::error::{Error, Result};
use crate::forward::{ElasticPart, FarFieldSource};
use crate::scalar::Real;

/// Far-field data at one query frequency, in the layout the estimator
/// combines. Elastic compressional values are taken at the rescaled
/// frequency `(c_s / c_p) ω`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Slot<T> {
    Plain(Vec<Complex<T>>),
    Elastic { p: Vec<Complex<T>>, s: Vec<Complex<T>> },
}

/// Slots along `f0 + j step`, `j < count`, in direction `xhat`.
pub(crate) fn slot_ray<T: Real, S: FarFieldSource<T> + ?Sized>(
    config: &EstimatorConfig<T>,
    source: &S,
    xhat: &[T],
    f0: T,
    step: T,
    count: usize,
) -> Result<Vec<Slot<T>>> {
    match config.kind.speeds() {
        Some(speeds) => {
            let r = compressional_rescaling(&speeds);
            let p = source.elastic_ray(xhat, r * f0, r * step, count, ElasticPart::Compressional)?;
            let s = source.elastic_ray(xhat, f0, step, count, ElasticPart::Shear)?;
            if p.len() != count || s.len() != count {
                return Err(Error::Mismatch("far-field source returned a short ray".into()));
            }
            Ok(p.into_iter().zip(s).map(|(p, s)| Slot::Elastic { p, s }).collect())
        }
        None => {
            let values = source.ray(xhat, f0, step, count)?;
            if values.len() != count {
                return Err(Error::Mismatch("far-field source returned a short ray".into()));
            }
            values
                .into_iter()
                .map(|v| {
                    let e = v.entries();
                    if e.len() == config.components() {
                        Ok(Slot::Plain(e))
                    } else {
                        Err(Error::Mismatch(format!(
                            "far-field value has {} entries, expected {}",
                            e.len(),
                            config.components()
                        )))
                    }
                })
                .collect()
        }
    }
}

fn accumulate<T: Real>(out: &mut [Complex<T>], a: &[Complex<T>], b: &[Complex<T>], scale: T, conjugate: bool) {
    let c = a.len();
    for j in 0..c {
        for l in 0..c {
            let bl = if conjugate { b[l].conj() } else { b[l] };
            out[j * c + l] += a[j] * bl * scale;
        }
    }
}

/// Weighted product matrix `weight · a ⊗ b̄` (covariance) or `weight · a ⊗ b`
/// (relation); elastic slots use the four-term compressional/shear sum.
pub(crate) fn slot_product<T: Real>(config: &EstimatorConfig<T>, a: &Slot<T>, b: &Slot<T>, weight: T) -> Vec<Complex<T>> {
    let c = config.components();
    let conjugate = config.target == Target::Covariance;
    let mut out = vec![Complex::new(T::zero(), T::zero()); c * c];
    match (a, b) {
        (Slot::Plain(a), Slot::Plain(b)) => accumulate(&mut out, a, b, weight, conjugate),
        (Slot::Elastic { p: ap, s: as_ }, Slot::Elastic { p: bp, s: bs }) => {
            let speeds = config.kind.speeds().expect("elastic slots come from an elastic kind");
            let [pp, ps, sp, ss] = elastic_coefficients(&speeds);
            accumulate(&mut out, ap, bp, weight * pp, conjugate);
            accumulate(&mut out, ap, bs, weight * ps, conjugate);
            accumulate(&mut out, as_, bp, weight * sp, conjugate);
            accumulate(&mut out, as_, bs, weight * ss, conjugate);
        }
        _ => unreachable!("slots of one configuration share a layout"),
    }
    out
}
