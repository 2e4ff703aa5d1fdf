//! Multipliers in front of the source Fourier transform in each far-field
//! formula, kept in closed power-law form `coeff · frequency^exponent`.

use num_complex::Complex;

use super::{check_dim, radiation_constant, ElasticSpeeds, WaveKind};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `coeff · s^exponent` as a function of a frequency `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw<T> {
    pub coeff: Complex<T>,
    pub exponent: T,
}

impl<T: Real> PowerLaw<T> {
    pub fn at(&self, s: T) -> Complex<T> {
        self.coeff * s.powf(self.exponent)
    }
}

/// Far-field multiplier law; elastic waves carry one law per polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrefactorLaw<T> {
    Scalar(PowerLaw<T>),
    Elastic { p: PowerLaw<T>, s: PowerLaw<T> },
}

/// Far-field multiplier evaluated at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prefactor<T> {
    Scalar(Complex<T>),
    Elastic { p: Complex<T>, s: Complex<T> },
}

impl<T: Real> Prefactor<T> {
    /// The scalar multiplier; `None` for the elastic pair.
    pub fn scalar(&self) -> Option<Complex<T>> {
        match *self {
            Prefactor::Scalar(c) => Some(c),
            Prefactor::Elastic { .. } => None,
        }
    }
}

/// Multiplier law for a wave model in dimension `d`:
///
/// | model | law |
/// |---|---|
/// | acoustic | `-C_d κ^{(d-3)/2}` |
/// | biharmonic | `-(C_d/2) κ^{(d-7)/2}` |
/// | electromagnetic (`d = 3`) | `i C_3 κ` |
/// | elastic | `-C_d c_{p,s}^{(d+1)/2} ω^{(d-3)/2}` |
pub fn prefactor_law<T: Real>(kind: &WaveKind<T>, d: usize) -> Result<PrefactorLaw<T>> {
    check_dim(d)?;
    kind.validate()?;
    let c = radiation_constant::<T>(d)?;
    let df = T::from_usize_lossy(d);
    let half = T::lit(0.5);
    Ok(match *kind {
        WaveKind::Acoustic => PrefactorLaw::Scalar(PowerLaw {
            coeff: -c,
            exponent: (df - T::lit(3.0)) * half,
        }),
        WaveKind::Biharmonic => PrefactorLaw::Scalar(PowerLaw {
            coeff: -c * half,
            exponent: (df - T::lit(7.0)) * half,
        }),
        WaveKind::Electromagnetic => {
            if d != 3 {
                return Err(Error::Domain(format!(
                    "the electromagnetic model is three-dimensional, got d = {d}"
                )));
            }
            PrefactorLaw::Scalar(PowerLaw {
                coeff: Complex::<T>::i() * c,
                exponent: T::one(),
            })
        }
        WaveKind::Elastic { lambda, mu } => {
            let sp = ElasticSpeeds::new(lambda, mu)?;
            let exponent = (df - T::lit(3.0)) * half;
            let speed_power = (df + T::one()) * half;
            PrefactorLaw::Elastic {
                p: PowerLaw {
                    coeff: -c * sp.c_p.powf(speed_power),
                    exponent,
                },
                s: PowerLaw {
                    coeff: -c * sp.c_s.powf(speed_power),
                    exponent,
                },
            }
        }
    })
}

/// Multiplier evaluated at `frequency` (`κ`, or `ω` for elastic waves).
pub fn farfield_prefactor<T: Real>(kind: &WaveKind<T>, d: usize, frequency: T) -> Result<Prefactor<T>> {
    if !(frequency > T::zero()) || !frequency.is_finite() {
        return Err(Error::Domain(format!("frequency must be positive, got {frequency}")));
    }
    Ok(match prefactor_law(kind, d)? {
        PrefactorLaw::Scalar(law) => Prefactor::Scalar(law.at(frequency)),
        PrefactorLaw::Elastic { p, s } => Prefactor::Elastic {
            p: p.at(frequency),
            s: s.at(frequency),
        },
    })
}
