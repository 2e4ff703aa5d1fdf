//! Special functions, radiating fundamental solutions and far-field constants
//! for the acoustic, biharmonic, electromagnetic and elastic models.

pub mod bessel;
mod fundamental;
mod prefactor;

pub use bessel::{bessel_jy, bessel_k0, hankel1, hankel1_0, hankel1_1, Order};
pub use fundamental::{
    fundamental_biharmonic, fundamental_helmholtz, green_tensor_elastic, helmholtz_hessian,
    helmholtz_radial, HelmholtzRadial, Wavenumber,
};
pub use prefactor::{farfield_prefactor, prefactor_law, PowerLaw, Prefactor, PrefactorLaw};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

/// Wave model. The elastic variant carries its Lamé parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveKind<T> {
    Acoustic,
    Biharmonic,
    Electromagnetic,
    Elastic { lambda: T, mu: T },
}

impl<T: Real> WaveKind<T> {
    /// Elastic model with strong-ellipticity check (`mu > 0`, `lambda + 2 mu > 0`).
    pub fn elastic(lambda: T, mu: T) -> Result<Self> {
        let kind = WaveKind::Elastic { lambda, mu };
        kind.validate()?;
        Ok(kind)
    }

    pub fn validate(&self) -> Result<()> {
        if let WaveKind::Elastic { lambda, mu } = *self {
            if !(mu > T::zero()) || !(lambda + T::lit(2.0) * mu > T::zero()) {
                return Err(Error::Config(format!(
                    "Lamé parameters must satisfy mu > 0 and lambda + 2 mu > 0 (got lambda = {lambda}, mu = {mu})"
                )));
            }
        }
        Ok(())
    }

    /// Compressional and shear speeds; `None` for non-elastic kinds.
    pub fn speeds(&self) -> Option<ElasticSpeeds<T>> {
        match *self {
            WaveKind::Elastic { lambda, mu } => ElasticSpeeds::new(lambda, mu).ok(),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WaveKind::Acoustic => "acoustic",
            WaveKind::Biharmonic => "biharmonic",
            WaveKind::Electromagnetic => "electromagnetic",
            WaveKind::Elastic { .. } => "elastic",
        }
    }

    /// Whether sources for this model are vector valued.
    pub fn is_vector(&self) -> bool {
        matches!(self, WaveKind::Electromagnetic | WaveKind::Elastic { .. })
    }

    /// Admissible open/closed interval `(lo, hi]` for the order `m`.
    pub fn order_interval(&self, d: usize) -> (f64, f64) {
        let d = d as f64;
        match self {
            WaveKind::Acoustic | WaveKind::Elastic { .. } => (d - 4.0, d),
            WaveKind::Biharmonic => (d - 6.0, d),
            WaveKind::Electromagnetic => (-1.0, 3.0),
        }
    }
}

/// Wave-number-per-frequency factors of the elastic model:
/// `c_p = (lambda + 2 mu)^{-1/2}` and `c_s = mu^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticSpeeds<T> {
    pub c_p: T,
    pub c_s: T,
}

impl<T: Real> ElasticSpeeds<T> {
    pub fn new(lambda: T, mu: T) -> Result<Self> {
        WaveKind::Elastic { lambda, mu }.validate()?;
        Ok(Self {
            c_p: (lambda + T::lit(2.0) * mu).sqrt().recip(),
            c_s: mu.sqrt().recip(),
        })
    }

    pub fn mu(&self) -> T {
        (self.c_s * self.c_s).recip()
    }

    pub fn kappa_p(&self, omega: T) -> T {
        self.c_p * omega
    }

    pub fn kappa_s(&self, omega: T) -> T {
        self.c_s * omega
    }
}

/// `C_d`, the leading constant of the outgoing Helmholtz kernel at infinity.
pub fn radiation_constant<T: Real>(d: usize) -> Result<Complex<T>> {
    match d {
        2 => Ok(cis(T::FRAC_PI_4()) / (T::lit(8.0) * T::PI()).sqrt()),
        3 => Ok(Complex::new((T::lit(4.0) * T::PI()).recip(), T::zero())),
        _ => Err(Error::Domain(format!("dimension must be 2 or 3, got {d}"))),
    }
}

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::Domain(format!("dimension must be 2 or 3, got {d}")))
    }
}
