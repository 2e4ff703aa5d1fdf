use std::cell::RefCell;

use num_complex::Complex;

use super::farfield::{ElasticPart, FarFieldSource, FarFieldValue};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::waves::WaveKind;

#[derive(Debug, Clone)]
struct StoredRay<T> {
    xhat: Vec<T>,
    start: T,
    step: T,
    values: Vec<FarFieldValue<T>>,
}

/// Wraps a far-field source and serves ray queries from precomputed rays
/// when the requested nodes lie on a stored ray; other queries go to the
/// wrapped source.
pub struct RayCache<'a, T: Real, S: FarFieldSource<T> + ?Sized> {
    inner: &'a S,
    rays: RefCell<Vec<StoredRay<T>>>,
}

impl<'a, T: Real, S: FarFieldSource<T> + ?Sized> RayCache<'a, T, S> {
    pub fn new(inner: &'a S) -> Self {
        Self {
            inner,
            rays: RefCell::new(Vec::new()),
        }
    }

    /// Evaluates and stores the ray `start + j step`, `j < count`.
    pub fn precompute(&self, xhat: &[T], start: T, step: T, count: usize) -> Result<()> {
        let values = self.inner.ray(xhat, start, step, count)?;
        self.rays.borrow_mut().push(StoredRay {
            xhat: xhat.to_vec(),
            start,
            step,
            values,
        });
        Ok(())
    }

    fn lookup(&self, xhat: &[T], start: T, step: T, count: usize) -> Option<Vec<FarFieldValue<T>>> {
        let tol = T::lit(1e-9);
        let rays = self.rays.borrow();
        rays.iter().find_map(|r| {
            if r.xhat.len() != xhat.len() || r.xhat.iter().zip(xhat).any(|(a, b)| (*a - *b).abs() > tol) {
                return None;
            }
            let offset = (start - r.start) / r.step;
            let k = offset.round();
            let aligned = (offset - k).abs() <= tol * (T::one() + offset.abs()) && k >= T::zero();
            let same_step = count <= 1 || (step - r.step).abs() <= tol * r.step;
            if !aligned || !same_step {
                return None;
            }
            let k = k.to_usize()?;
            (k + count <= r.values.len()).then(|| r.values[k..k + count].to_vec())
        })
    }
}

impl<T: Real, S: FarFieldSource<T> + ?Sized> FarFieldSource<T> for RayCache<'_, T, S> {
    fn kind(&self) -> WaveKind<T> {
        self.inner.kind()
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, xhat: &[T], frequency: T) -> Result<FarFieldValue<T>> {
        match self.lookup(xhat, frequency, T::one(), 1) {
            Some(mut v) => Ok(v.remove(0)),
            None => self.inner.value(xhat, frequency),
        }
    }

    fn ray(&self, xhat: &[T], frequency0: T, step: T, count: usize) -> Result<Vec<FarFieldValue<T>>> {
        match self.lookup(xhat, frequency0, step, count) {
            Some(v) => Ok(v),
            None => self.inner.ray(xhat, frequency0, step, count),
        }
    }

    fn elastic_ray(&self, xhat: &[T], frequency0: T, step: T, count: usize, part: ElasticPart) -> Result<Vec<Vec<Complex<T>>>> {
        match self.lookup(xhat, frequency0, step, count) {
            Some(values) => values
                .into_iter()
                .map(|v| match v {
                    FarFieldValue::Elastic { p, s } => Ok(match part {
                        ElasticPart::Compressional => p,
                        ElasticPart::Shear => s,
                    }),
                    _ => Err(Error::Mismatch("source does not produce elastic far fields".into())),
                })
                .collect(),
            None => self.inner.elastic_ray(xhat, frequency0, step, count, part),
        }
    }

    fn seed(&self) -> Option<u64> {
        self.inner.seed()
    }
}
