use num_complex::Complex;

use crate::error::{Error, Result};
use crate::forward::{FrequencyBand, MAX_BAND_STEP};
use crate::scalar::Real;
use crate::waves::{check_dim, prefactor_law, ElasticSpeeds, PrefactorLaw, WaveKind};

/// Default band step `Δκ`.
pub const DEFAULT_BAND_STEP: f64 = 0.25;

/// Second-moment target of an estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Products `u(x̂, κ+τ) conj(u(x̂, κ))`.
    Covariance,
    /// Products `u(x̂, κ+τ) u(-x̂, κ)`.
    Relation,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Covariance => "covariance",
            Target::Relation => "relation",
        }
    }
}

/// Single-realization band average or high-frequency ensemble mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode<T> {
    Single,
    Ensemble { realizations: usize, kappa_eval: T },
}

/// Everything an estimator needs besides the far-field data.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig<T> {
    pub kind: WaveKind<T>,
    pub dim: usize,
    pub order: T,
    pub target: Target,
    pub xhat: Vec<T>,
    pub tau: T,
    pub q: T,
    pub step: T,
    pub mode: Mode<T>,
}

impl<T: Real> EstimatorConfig<T> {
    /// Single-realization configuration with `Q = 64` and the default step.
    pub fn new(kind: WaveKind<T>, dim: usize, order: T, target: Target, xhat: Vec<T>, tau: T) -> Self {
        Self {
            kind,
            dim,
            order,
            target,
            xhat,
            tau,
            q: T::lit(64.0),
            step: T::lit(DEFAULT_BAND_STEP),
            mode: Mode::Single,
        }
    }

    pub fn with_band(mut self, q: T, step: T) -> Self {
        self.q = q;
        self.step = step;
        self
    }

    pub fn with_mode(mut self, mode: Mode<T>) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_direction(mut self, xhat: Vec<T>) -> Self {
        self.xhat = xhat;
        self
    }

    pub fn with_shift(mut self, tau: T) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_target(mut self, target: Target) -> Self {
        self.target = target;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.dim)?;
        self.kind.validate()?;
        prefactor_law(&self.kind, self.dim)?;
        if self.xhat.len() != self.dim {
            return Err(Error::Config(format!(
                "direction has {} entries, dimension is {}",
                self.xhat.len(),
                self.dim
            )));
        }
        let norm = self.xhat.iter().map(|&v| v * v).sum::<T>().sqrt();
        if !((norm - T::one()).abs() <= T::lit(1e-10)) {
            return Err(Error::Config(format!("direction must be a unit vector (norm {norm})")));
        }
        if !(self.tau >= T::zero()) || !self.tau.is_finite() {
            return Err(Error::Config(format!("shift must be finite and nonnegative, got {}", self.tau)));
        }
        if !self.order.is_finite() {
            return Err(Error::Config("order must be finite".into()));
        }
        match self.mode {
            Mode::Single => {
                if !(self.q > T::zero()) || !self.q.is_finite() {
                    return Err(Error::Config(format!("band parameter Q must be positive, got {}", self.q)));
                }
                if !(self.step > T::zero()) || self.step > T::lit(MAX_BAND_STEP) {
                    return Err(Error::Config(format!(
                        "band step must lie in (0, {MAX_BAND_STEP}], got {}",
                        self.step
                    )));
                }
            }
            Mode::Ensemble { realizations, kappa_eval } => {
                if realizations < 2 {
                    return Err(Error::Config(format!(
                        "ensemble mode needs at least 2 realizations for a variance estimate, got {realizations}"
                    )));
                }
                if !(kappa_eval > T::zero()) || !kappa_eval.is_finite() {
                    return Err(Error::Config(format!("evaluation frequency must be positive, got {kappa_eval}")));
                }
            }
        }
        Ok(())
    }

    /// Number of far-field components (1 for scalar models, `d` otherwise).
    pub fn components(&self) -> usize {
        if self.kind.is_vector() {
            self.dim
        } else {
            1
        }
    }

    /// Direction of the second factor: `x̂` or `-x̂`.
    pub fn partner_direction(&self) -> Vec<T> {
        match self.target {
            Target::Covariance => self.xhat.clone(),
            Target::Relation => self.xhat.iter().map(|&v| -v).collect(),
        }
    }

    /// Exponent `p` of the frequency weight `s^p`: `m - 2e` for a prefactor
    /// `coeff · s^e`, which gives `m + 3 - d` (acoustic, elastic),
    /// `m + 7 - d` (biharmonic) and `m - 2` (electromagnetic).
    pub fn weight_exponent(&self) -> Result<T> {
        let e = match prefactor_law(&self.kind, self.dim)? {
            PrefactorLaw::Scalar(law) => law.exponent,
            PrefactorLaw::Elastic { s, .. } => s.exponent,
        };
        Ok(self.order - T::lit(2.0) * e)
    }

    /// Weight at one frequency: `κ^p`, or `(c_s ω)^{m+3-d}` for elastic waves.
    pub fn weight(&self, frequency: T) -> Result<T> {
        let p = self.weight_exponent()?;
        Ok(match self.kind.speeds() {
            Some(v) => (v.c_s * frequency).powf(p),
            None => frequency.powf(p),
        })
    }

    /// Frequency band `[Q, 2Q]`.
    pub fn band(&self) -> Result<FrequencyBand<T>> {
        FrequencyBand::new(self.q, self.step, vec![self.tau])
    }

    /// Fourier argument sampled by the estimate: `τ x̂`, or `c_s τ x̂` for
    /// elastic waves.
    pub fn fourier_argument(&self) -> Vec<T> {
        let scale = self.kind.speeds().map_or(T::one(), |v| v.c_s);
        self.xhat.iter().map(|&v| v * self.tau * scale).collect()
    }
}

/// Limit constant of the weighted products: `c conj(c)` (covariance) or
/// `c c` (relation) for the leading prefactor coefficient `c`. The elastic
/// coefficient is taken with its speed power removed, since the estimator
/// weights already carry it.
pub fn normalization_constant<T: Real>(kind: &WaveKind<T>, d: usize, target: Target) -> Result<Complex<T>> {
    let c = match prefactor_law(kind, d)? {
        PrefactorLaw::Scalar(law) => law.coeff,
        PrefactorLaw::Elastic { s, .. } => {
            let speeds = kind.speeds().expect("elastic kind has speeds");
            s.coeff / speeds.c_s.powf(T::lit((d as f64 + 1.0) / 2.0))
        }
    };
    Ok(match target {
        Target::Covariance => c * c.conj(),
        Target::Relation => c * c,
    })
}

/// Coefficients of the compressional/shear products `(pp, ps, sp, ss)`:
/// `c_p^{-4}`, `c_s^{-2} c_p^{-2}`, `c_s^{-2} c_p^{-2}`, `c_s^{-4}`.
pub fn elastic_coefficients<T: Real>(speeds: &ElasticSpeeds<T>) -> [T; 4] {
    let p2 = speeds.c_p * speeds.c_p;
    let s2 = speeds.c_s * speeds.c_s;
    [(p2 * p2).recip(), (s2 * p2).recip(), (s2 * p2).recip(), (s2 * s2).recip()]
}

/// Ratio `c_s / c_p` applied to the compressional query frequencies.
pub fn compressional_rescaling<T: Real>(speeds: &ElasticSpeeds<T>) -> T {
    speeds.c_s / speeds.c_p
}
