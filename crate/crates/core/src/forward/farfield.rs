use std::borrow::Cow;

use num_complex::Complex;

use super::band::{check_nyquist, DEFAULT_NYQUIST_FRACTION};
use super::fourier::ray_fourier;
use crate::error::{Error, Result};
use crate::field::FieldRealization;
use crate::scalar::Real;
use crate::waves::{prefactor_law, PrefactorLaw, WaveKind};

/// Far-field value: scalar, vector (electromagnetic) or the compressional
/// and shear pair (elastic).
#[derive(Debug, Clone, PartialEq)]
pub enum FarFieldValue<T> {
    Scalar(Complex<T>),
    Vector(Vec<Complex<T>>),
    Elastic {
        p: Vec<Complex<T>>,
        s: Vec<Complex<T>>,
    },
}

impl<T: Real> FarFieldValue<T> {
    pub fn as_scalar(&self) -> Option<Complex<T>> {
        match self {
            FarFieldValue::Scalar(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[Complex<T>]> {
        match self {
            FarFieldValue::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_elastic(&self) -> Option<(&[Complex<T>], &[Complex<T>])> {
        match self {
            FarFieldValue::Elastic { p, s } => Some((p, s)),
            _ => None,
        }
    }

    /// All complex entries in a fixed order (scalar; vector; p then s).
    pub fn entries(&self) -> Vec<Complex<T>> {
        match self {
            FarFieldValue::Scalar(v) => vec![*v],
            FarFieldValue::Vector(v) => v.clone(),
            FarFieldValue::Elastic { p, s } => p.iter().chain(s).cloned().collect(),
        }
    }
}

/// One far-field sample with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldRecord<T> {
    pub kind: WaveKind<T>,
    pub xhat: Vec<T>,
    pub frequency: T,
    pub value: FarFieldValue<T>,
    pub seed: u64,
}

/// Anything that yields far-field values for a fixed wave model.
pub trait FarFieldSource<T: Real> {
    fn kind(&self) -> WaveKind<T>;

    fn dim(&self) -> usize;

    fn value(&self, xhat: &[T], frequency: T) -> Result<FarFieldValue<T>>;

    /// Values at `frequency0 + j·step`, `j < count`.
    fn ray(&self, xhat: &[T], frequency0: T, step: T, count: usize) -> Result<Vec<FarFieldValue<T>>> {
        (0..count)
            .map(|j| self.value(xhat, frequency0 + T::from_usize_lossy(j) * step))
            .collect()
    }

    /// One elastic part along a ray. Sources that can evaluate the parts
    /// separately override this to skip the unused transform.
    fn elastic_ray(&self, xhat: &[T], frequency0: T, step: T, count: usize, part: ElasticPart) -> Result<Vec<Vec<Complex<T>>>> {
        self.ray(xhat, frequency0, step, count)?
            .into_iter()
            .map(|v| match v {
                FarFieldValue::Elastic { p, s } => Ok(match part {
                    ElasticPart::Compressional => p,
                    ElasticPart::Shear => s,
                }),
                _ => Err(Error::Mismatch("source does not produce elastic far fields".into())),
            })
            .collect()
    }

    /// Seed of the underlying realization, when there is one.
    fn seed(&self) -> Option<u64> {
        None
    }
}

/// Compressional or shear part of an elastic far field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElasticPart {
    Compressional,
    Shear,
}

/// Adapts a closure `(x̂, frequency) -> value` into a far-field source.
pub struct FnFarField<T, F> {
    kind: WaveKind<T>,
    dim: usize,
    eval: F,
}

impl<T: Real, F> FnFarField<T, F>
where
    F: Fn(&[T], T) -> Result<FarFieldValue<T>>,
{
    pub fn new(kind: WaveKind<T>, dim: usize, eval: F) -> Self {
        Self { kind, dim, eval }
    }
}

impl<T: Real, F> FarFieldSource<T> for FnFarField<T, F>
where
    F: Fn(&[T], T) -> Result<FarFieldValue<T>>,
{
    fn kind(&self) -> WaveKind<T> {
        self.kind
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, xhat: &[T], frequency: T) -> Result<FarFieldValue<T>> {
        (self.eval)(xhat, frequency)
    }
}

/// Far fields of one source realization via its trapezoid Fourier sums.
#[derive(Debug, Clone)]
pub struct RealizationFarField<'a, T: Real> {
    kind: WaveKind<T>,
    field: Cow<'a, FieldRealization<T>>,
    law: PrefactorLaw<T>,
    nyquist_fraction: T,
}

impl<'a, T: Real> RealizationFarField<'a, T> {
    pub fn new(kind: WaveKind<T>, field: &'a FieldRealization<T>) -> Result<Self> {
        Self::build(kind, Cow::Borrowed(field))
    }

    /// Source that owns its realization.
    pub fn owned(kind: WaveKind<T>, field: FieldRealization<T>) -> Result<RealizationFarField<'static, T>> {
        RealizationFarField::build(kind, Cow::Owned(field))
    }

    fn build(kind: WaveKind<T>, field: Cow<'a, FieldRealization<T>>) -> Result<Self> {
        let d = field.grid.dim();
        let law = prefactor_law(&kind, d)?;
        let want = if kind.is_vector() { d } else { 1 };
        if field.components != want {
            return Err(Error::Mismatch(format!(
                "{} waves need a source with {want} component(s), got {}",
                kind.name(),
                field.components
            )));
        }
        Ok(Self {
            kind,
            field,
            law,
            nyquist_fraction: T::lit(DEFAULT_NYQUIST_FRACTION),
        })
    }

    /// Overrides the admissible fraction of `π/h`.
    pub fn with_nyquist_fraction(mut self, fraction: T) -> Self {
        self.nyquist_fraction = fraction;
        self
    }

    pub fn field(&self) -> &FieldRealization<T> {
        &self.field
    }

    fn check(&self, wavenumber: T) -> Result<()> {
        check_nyquist(wavenumber, self.field.grid.spacing(), self.nyquist_fraction)
    }
}

/// `x̂x̂ᵀ F` and `(I - x̂x̂ᵀ) F`.
pub fn project<T: Real>(xhat: &[T], f: &[Complex<T>]) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
    let dot: Complex<T> = xhat.iter().zip(f).map(|(&a, &b)| b * a).sum();
    let p: Vec<Complex<T>> = xhat.iter().map(|&a| dot * a).collect();
    let s = f.iter().zip(&p).map(|(a, b)| a - b).collect();
    (p, s)
}

impl<T: Real> FarFieldSource<T> for RealizationFarField<'_, T> {
    fn kind(&self) -> WaveKind<T> {
        self.kind
    }

    fn seed(&self) -> Option<u64> {
        Some(self.field.seed)
    }

    fn elastic_ray(&self, xhat: &[T], frequency0: T, step: T, count: usize, part: ElasticPart) -> Result<Vec<Vec<Complex<T>>>> {
        let (law, speed) = match (self.law, self.kind.speeds()) {
            (PrefactorLaw::Elastic { p, s }, Some(v)) => match part {
                ElasticPart::Compressional => (p, v.c_p),
                ElasticPart::Shear => (s, v.c_s),
            },
            _ => return Err(Error::Mismatch("source does not produce elastic far fields".into())),
        };
        if count == 0 {
            return Ok(Vec::new());
        }
        if !(frequency0 > T::zero()) || step < T::zero() {
            return Err(Error::Domain(format!(
                "frequencies must be positive and increasing (start {frequency0}, step {step})"
            )));
        }
        self.check(speed * (frequency0 + step * T::from_usize_lossy(count - 1)))?;
        let fh = ray_fourier(&self.field, xhat, speed * frequency0, speed * step, count)?;
        let d = self.dim();
        Ok((0..count)
            .map(|j| {
                let w = frequency0 + T::from_usize_lossy(j) * step;
                let v: Vec<Complex<T>> = (0..d).map(|c| fh[c][j]).collect();
                let (vp, vs) = project(xhat, &v);
                let c = law.at(w);
                let chosen = match part {
                    ElasticPart::Compressional => vp,
                    ElasticPart::Shear => vs,
                };
                chosen.into_iter().map(|x| x * c).collect()
            })
            .collect())
    }

    fn dim(&self) -> usize {
        self.field.grid.dim()
    }

    fn value(&self, xhat: &[T], frequency: T) -> Result<FarFieldValue<T>> {
        Ok(self.ray(xhat, frequency, T::zero(), 1)?.pop().expect("one value"))
    }

    fn ray(&self, xhat: &[T], frequency0: T, step: T, count: usize) -> Result<Vec<FarFieldValue<T>>> {
        if !(frequency0 > T::zero()) || step < T::zero() {
            return Err(Error::Domain(format!(
                "frequencies must be positive and increasing (start {frequency0}, step {step})"
            )));
        }
        if count == 0 {
            return Ok(Vec::new());
        }
        let top = frequency0 + step * T::from_usize_lossy(count - 1);
        let freqs = (0..count).map(move |j| frequency0 + T::from_usize_lossy(j) * step);
        match (self.law, self.kind) {
            (PrefactorLaw::Scalar(law), WaveKind::Electromagnetic) => {
                self.check(top)?;
                let fh = ray_fourier(&self.field, xhat, frequency0, step, count)?;
                Ok(freqs
                    .enumerate()
                    .map(|(j, k)| {
                        let c = law.at(k);
                        FarFieldValue::Vector(fh.iter().map(|comp| comp[j] * c).collect())
                    })
                    .collect())
            }
            (PrefactorLaw::Scalar(law), _) => {
                self.check(top)?;
                let fh = ray_fourier(&self.field, xhat, frequency0, step, count)?;
                Ok(freqs
                    .enumerate()
                    .map(|(j, k)| FarFieldValue::Scalar(fh[0][j] * law.at(k)))
                    .collect())
            }
            (PrefactorLaw::Elastic { p, s }, _) => {
                let speeds = self.kind.speeds().expect("elastic kind has speeds");
                self.check(speeds.c_p.max(speeds.c_s) * top)?;
                let fp = ray_fourier(&self.field, xhat, speeds.c_p * frequency0, speeds.c_p * step, count)?;
                let fs = ray_fourier(&self.field, xhat, speeds.c_s * frequency0, speeds.c_s * step, count)?;
                let d = self.dim();
                Ok(freqs
                    .enumerate()
                    .map(|(j, w)| {
                        let vp: Vec<Complex<T>> = (0..d).map(|c| fp[c][j]).collect();
                        let vs: Vec<Complex<T>> = (0..d).map(|c| fs[c][j]).collect();
                        let (cp, cs) = (p.at(w), s.at(w));
                        let up = project(xhat, &vp).0.into_iter().map(|v| v * cp).collect();
                        let us = project(xhat, &vs).1.into_iter().map(|v| v * cs).collect();
                        FarFieldValue::Elastic { p: up, s: us }
                    })
                    .collect())
            }
        }
    }
}

/// Far-field record of one realization at one direction and frequency
/// (`κ`, or `ω` for elastic waves).
pub fn farfield<T: Real>(kind: WaveKind<T>, f: &FieldRealization<T>, xhat: &[T], frequency: T) -> Result<FarFieldRecord<T>> {
    let value = RealizationFarField::new(kind, f)?.value(xhat, frequency)?;
    Ok(FarFieldRecord {
        kind,
        xhat: xhat.to_vec(),
        frequency,
        value,
        seed: f.seed,
    })
}

/// Far-field records along a frequency ray.
pub fn farfield_ray<T: Real>(
    kind: WaveKind<T>,
    f: &FieldRealization<T>,
    xhat: &[T],
    frequency0: T,
    step: T,
    count: usize,
) -> Result<Vec<FarFieldRecord<T>>> {
    let values = RealizationFarField::new(kind, f)?.ray(xhat, frequency0, step, count)?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(j, value)| FarFieldRecord {
            kind,
            xhat: xhat.to_vec(),
            frequency: frequency0 + T::from_usize_lossy(j) * step,
            value,
            seed: f.seed,
        })
        .collect())
}
