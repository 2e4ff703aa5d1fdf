//! Radiating fundamental solutions of the Helmholtz and biharmonic wave
//! operators and the elastic Green tensor.

use num_complex::Complex;

use super::bessel::{bessel_k0, hankel1_0, hankel1_1, EULER_GAMMA};
use super::{check_dim, ElasticSpeeds};
use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};

/// Relative radius (in wavelengths) below which the biharmonic kernel is
/// replaced by its small-argument series.
const SERIES_RADIUS: f64 = 1e-6;

/// A wavenumber on one of the two supported rays of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wavenumber<T> {
    /// Real `κ > 0`: outgoing oscillatory kernel.
    Real(T),
    /// `iκ₀` with `κ₀ > 0`: exponentially decaying kernel.
    Imaginary(T),
}

impl<T: Real> Wavenumber<T> {
    /// Classifies a complex wavenumber; anything off the two rays is refused.
    pub fn from_complex(kappa: Complex<T>) -> Result<Self> {
        let w = if kappa.im == T::zero() {
            Wavenumber::Real(kappa.re)
        } else if kappa.re == T::zero() {
            Wavenumber::Imaginary(kappa.im)
        } else {
            return Err(Error::Domain(format!(
                "wavenumber must be real or purely imaginary, got {kappa}"
            )));
        };
        w.check()?;
        Ok(w)
    }

    fn check(self) -> Result<()> {
        let k = self.modulus();
        if !(k > T::zero()) || !k.is_finite() {
            return Err(Error::Domain(format!(
                "wavenumber must be finite with positive real or imaginary part, got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn modulus(self) -> T {
        match self {
            Wavenumber::Real(k) | Wavenumber::Imaginary(k) => k,
        }
    }

    pub fn to_complex(self) -> Complex<T> {
        match self {
            Wavenumber::Real(k) => cplx(k, T::zero()),
            Wavenumber::Imaginary(k) => cplx(T::zero(), k),
        }
    }
}

/// `Φ_d` together with its first two radial derivatives at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelmholtzRadial<T> {
    pub value: Complex<T>,
    pub d1: Complex<T>,
    pub d2: Complex<T>,
}

fn distance<T: Real>(x: &[T], y: &[T], d: usize) -> Result<T> {
    check_dim(d)?;
    if x.len() != d || y.len() != d {
        return Err(Error::Mismatch(format!(
            "points must have {d} coordinates, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter()
        .zip(y)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<T>()
        .sqrt())
}

/// `Φ_d(r)`, `Φ_d'(r)` and `Φ_d''(r)` for `r > 0`.
pub fn helmholtz_radial<T: Real>(r: T, kappa: Wavenumber<T>, d: usize) -> Result<HelmholtzRadial<T>> {
    check_dim(d)?;
    kappa.check()?;
    if !(r > T::zero()) {
        return Err(Error::Singular(r.as_f64()));
    }
    let i = Complex::<T>::i();
    let quarter = T::lit(0.25);
    match (d, kappa) {
        (3, _) => {
            let ik = i * kappa.to_complex();
            let value = (ik * r).exp() / (T::lit(4.0) * T::PI() * r);
            let g = ik - cplx(r.recip(), T::zero());
            Ok(HelmholtzRadial {
                value,
                d1: value * g,
                d2: value * (g * g + r.powi(-2)),
            })
        }
        (_, Wavenumber::Real(k)) => {
            let z = cplx(k * r, T::zero());
            let h0 = hankel1_0(z)?;
            let h1 = hankel1_1(z)?;
            let c = i * quarter;
            Ok(HelmholtzRadial {
                value: c * h0,
                d1: -c * h1 * k,
                d2: -c * (h0 - h1 / (k * r)) * (k * k),
            })
        }
        (_, Wavenumber::Imaginary(k)) => {
            // (i/4) H_0^{(1)}(i t) = K_0(t) / (2π) and K_0' = -K_1.
            let t = k * r;
            let k0 = bessel_k0(t)?;
            let k1 = bessel_k1(t)?;
            let two_pi = T::lit(2.0) * T::PI();
            let value = k0 / two_pi;
            let d1 = -k * k1 / two_pi;
            // K_0'' = K_0 + K_1 / t
            let d2 = k * k * (k0 + k1 / t) / two_pi;
            Ok(HelmholtzRadial {
                value: cplx(value, T::zero()),
                d1: cplx(d1, T::zero()),
                d2: cplx(d2, T::zero()),
            })
        }
    }
}

/// `K_1(t)` for `t > 0` by the same quadrature as `K_0`:
/// `K_1(t) = ∫_0^∞ exp(-t cosh s) cosh s ds`.
fn bessel_k1<T: Real>(t: T) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!("K1 needs a finite t > 0, got {t}")));
    }
    let tf = t.as_f64();
    let step = (0.35 / tf.sqrt()).min(0.1);
    let s_max = (40.0 / tf + 1.0).acosh() + step;
    let count = (s_max / step).ceil() as usize;
    let mut acc = 0.5;
    for k in 1..=count {
        let s = k as f64 * step;
        acc += (-tf * (s.cosh() - 1.0)).exp() * s.cosh();
    }
    Ok(T::lit(acc * step * (-tf).exp()))
}

/// Outgoing fundamental solution `Φ_d(x, y, κ)` of `Δ + κ²`.
///
/// `d = 2`: `(i/4) H_0^{(1)}(κ|x-y|)`; `d = 3`: `e^{iκ|x-y|} / (4π|x-y|)`.
/// Purely imaginary `κ = iκ₀` is evaluated through `K_0` and a real
/// exponential respectively.
pub fn fundamental_helmholtz<T: Real>(x: &[T], y: &[T], kappa: Complex<T>, d: usize) -> Result<Complex<T>> {
    let kappa = Wavenumber::from_complex(kappa)?;
    let r = distance(x, y, d)?;
    if r == T::zero() {
        return Err(Error::Singular(0.0));
    }
    match (d, kappa) {
        (3, _) => {
            let ik = Complex::<T>::i() * kappa.to_complex();
            Ok((ik * r).exp() / (T::lit(4.0) * T::PI() * r))
        }
        (_, Wavenumber::Real(k)) => Ok(Complex::<T>::i() * T::lit(0.25) * hankel1_0(cplx(k * r, T::zero()))?),
        (_, Wavenumber::Imaginary(k)) => Ok(cplx(bessel_k0(k * r)? / (T::lit(2.0) * T::PI()), T::zero())),
    }
}

/// Fundamental solution of `Δ² - κ⁴`:
/// `F_d = (Φ_d(κ) - Φ_d(iκ)) / (2κ²)`.
///
/// The kernel is bounded at the origin. Below `10⁻⁶` wavelengths the value
/// comes from its ascending series, and at `x = y` the finite limit
/// (`i/(8κ²)` in 2D, `(1+i)/(8πκ)` in 3D) is returned.
pub fn fundamental_biharmonic<T: Real>(x: &[T], y: &[T], kappa: T, d: usize) -> Result<Complex<T>> {
    if !(kappa > T::zero()) || !kappa.is_finite() {
        return Err(Error::Domain(format!("biharmonic wavenumber must be positive, got {kappa}")));
    }
    let r = distance(x, y, d)?;
    let wavelength = T::lit(2.0) * T::PI() / kappa;
    if r < T::lit(SERIES_RADIUS) * wavelength {
        return Ok(biharmonic_series(r, kappa, d));
    }
    let outgoing = fundamental_helmholtz(x, y, cplx(kappa, T::zero()), d)?;
    let decaying = fundamental_helmholtz(x, y, cplx(T::zero(), kappa), d)?;
    Ok((outgoing - decaying) / (T::lit(2.0) * kappa * kappa))
}

fn biharmonic_series<T: Real>(r: T, kappa: T, d: usize) -> Complex<T> {
    let i = Complex::<T>::i();
    let two_k2 = T::lit(2.0) * kappa * kappa;
    if d == 3 {
        // (e^{iκr} - e^{-κr}) / r = Σ_{n≥1} ((iκ)^n - (-κ)^n) r^{n-1} / n!
        let mut sum = Complex::<T>::new(T::zero(), T::zero());
        let mut ik_pow = Complex::<T>::new(T::one(), T::zero());
        let mut mk_pow = T::one();
        let mut fact = T::one();
        let mut r_pow = T::one();
        for n in 1..12 {
            ik_pow = ik_pow * i * kappa;
            mk_pow = -mk_pow * kappa;
            fact = fact * T::lit(n as f64);
            sum = sum + (ik_pow - mk_pow) * r_pow / fact;
            r_pow = r_pow * r;
        }
        return sum / (T::lit(4.0) * T::PI() * two_k2);
    }
    // (i/4) H_0(z) - K_0(z)/(2π) with z = κr; the logarithms of Y_0 and K_0
    // cancel except in the combination ℓ (I_0 - J_0), which vanishes at 0.
    let q = (kappa * r) * (kappa * r) / T::lit(4.0);
    let mut j0 = T::zero();
    let mut i0_minus_j0 = T::zero();
    let mut odd_sum = T::zero();
    let mut term = T::one(); // q^k / (k!)^2
    let mut harmonic = T::zero();
    for k in 0..10 {
        if k > 0 {
            let kk = T::lit(k as f64);
            term = term * q / (kk * kk);
            harmonic = harmonic + kk.recip();
        }
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        j0 = j0 + sign * term;
        if k % 2 == 1 {
            i0_minus_j0 = i0_minus_j0 + T::lit(2.0) * term;
            odd_sum = odd_sum + harmonic * term;
        }
    }
    let log_part = if q > T::zero() {
        ((kappa * r) / T::lit(2.0)).ln() + T::lit(EULER_GAMMA)
    } else {
        T::zero()
    };
    let real = (log_part * i0_minus_j0 / T::lit(2.0) - odd_sum) / T::PI();
    (i * (j0 / T::lit(4.0)) + real) / two_k2
}

/// Hessian `∇_x∇_xᵀ Φ_d(x, y, κ)` (row-major `d×d`) from the radial
/// derivatives: `Φ'' r̂r̂ᵀ + (Φ'/r)(I - r̂r̂ᵀ)`.
pub fn helmholtz_hessian<T: Real>(x: &[T], y: &[T], kappa: Wavenumber<T>, d: usize) -> Result<Vec<Complex<T>>> {
    let r = distance(x, y, d)?;
    if r == T::zero() {
        return Err(Error::Singular(0.0));
    }
    let rad = helmholtz_radial(r, kappa, d)?;
    let unit: Vec<T> = x.iter().zip(y).map(|(&a, &b)| (a - b) / r).collect();
    let transverse = rad.d1 / r;
    let mut out = vec![Complex::new(T::zero(), T::zero()); d * d];
    for a in 0..d {
        for b in 0..d {
            let outer = unit[a] * unit[b];
            let delta = if a == b { T::one() } else { T::zero() };
            out[a * d + b] = rad.d2 * outer + transverse * (delta - outer);
        }
    }
    Ok(out)
}

/// Elastic Green tensor (row-major `d×d`):
/// `(1/μ) Φ_d(κ_s) I + (1/ω²) ∇∇ᵀ[Φ_d(κ_s) - Φ_d(κ_p)]`.
pub fn green_tensor_elastic<T: Real>(
    x: &[T],
    y: &[T],
    omega: T,
    speeds: ElasticSpeeds<T>,
    d: usize,
) -> Result<Vec<Complex<T>>> {
    if !(omega > T::zero()) {
        return Err(Error::Domain(format!("angular frequency must be positive, got {omega}")));
    }
    let r = distance(x, y, d)?;
    if r == T::zero() {
        return Err(Error::Singular(0.0));
    }
    let ks = Wavenumber::Real(speeds.kappa_s(omega));
    let kp = Wavenumber::Real(speeds.kappa_p(omega));
    let phi_s = helmholtz_radial(r, ks, d)?.value;
    let hs = helmholtz_hessian(x, y, ks, d)?;
    let hp = helmholtz_hessian(x, y, kp, d)?;
    let inv_w2 = (omega * omega).recip();
    let mu = speeds.mu();
    let mut out: Vec<Complex<T>> = hs.iter().zip(&hp).map(|(s, p)| (s - p) * inv_w2).collect();
    for a in 0..d {
        out[a * d + a] += phi_s / mu;
    }
    Ok(out)
}
