//! Cylinder functions of order 0 and 1 needed by the two-dimensional kernels.
//!
//! `H_n^{(1)}` is evaluated with the ascending series for `|z| <= SERIES_LIMIT`
//! and the Hankel asymptotic expansion beyond. At the switch point both
//! branches carry an error of roughly `1e-11`, which the overlap test checks.
//! `K_0` uses trapezoidal quadrature of `∫_0^∞ exp(-t cosh s) ds`, which
//! converges geometrically and has no cancellation for moderate `t`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest `|z|` handled by the ascending series.
pub const SERIES_LIMIT: f64 = 12.0;

const K0_ASYMPTOTIC_FROM: f64 = 14.0;

/// Which kind of cylinder function order is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

impl Order {
    fn n(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::One => 1.0,
        }
    }
}

fn check_nonzero<T: Real>(z: Complex<T>) -> Result<()> {
    if z.norm() == T::zero() {
        return Err(Error::Domain(
            "Hankel function has a logarithmic singularity at z = 0".into(),
        ));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    Ok(())
}

/// `H_0^{(1)}(z) = J_0(z) + i Y_0(z)` on the principal branch.
pub fn hankel1_0<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    hankel1(Order::Zero, z)
}

/// `H_1^{(1)}(z) = J_1(z) + i Y_1(z)` on the principal branch.
pub fn hankel1_1<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    hankel1(Order::One, z)
}

pub fn hankel1<T: Real>(order: Order, z: Complex<T>) -> Result<Complex<T>> {
    check_nonzero(z)?;
    if z.norm() <= T::lit(SERIES_LIMIT) {
        Ok(hankel1_series(order, z))
    } else {
        Ok(hankel1_asymptotic(order, z))
    }
}

/// Ascending-series branch. Accurate for `|z|` up to about 15; callers
/// normally go through [`hankel1`].
pub fn hankel1_series<T: Real>(order: Order, z: Complex<T>) -> Complex<T> {
    let (j, y) = jy_series(order, z);
    j + Complex::<T>::i() * y
}

/// Hankel asymptotic expansion, summed until the terms stop decreasing.
pub fn hankel1_asymptotic<T: Real>(order: Order, z: Complex<T>) -> Complex<T> {
    let n = order.n();
    let mu = T::lit(4.0 * n * n);
    let i = Complex::<T>::i();
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    let mut last = T::one();
    let eps = T::epsilon();
    for k in 1..60 {
        let kk = T::lit(k as f64);
        let odd = T::lit((2 * k - 1) as f64);
        term = term * i * (mu - odd * odd) / (z * (T::lit(8.0) * kk));
        let mag = term.norm();
        if mag >= last {
            break;
        }
        sum += term;
        last = mag;
        if mag <= eps * sum.norm() {
            break;
        }
    }
    let phase = z - T::lit(std::f64::consts::FRAC_PI_4 + n * std::f64::consts::FRAC_PI_2);
    let pref = (Complex::new(T::lit(2.0) / T::PI(), T::zero()) / z).sqrt();
    pref * (i * phase).exp() * sum
}

/// `(J_n(z), Y_n(z))` from their ascending series.
fn jy_series<T: Real>(order: Order, z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let two = T::lit(2.0);
    let half_z = z / two;
    let q = half_z * half_z;
    let minus_q = -q;
    let log_term = half_z.ln();
    let gamma = T::lit(EULER_GAMMA);
    let eps = T::epsilon();
    match order {
        Order::Zero => {
            // J0 = sum t_k, Y0 = (2/pi)[(ln(z/2)+gamma) J0 - sum H_k t_k]
            let mut t = Complex::new(T::one(), T::zero());
            let mut j = t;
            let mut hsum = Complex::new(T::zero(), T::zero());
            let mut harmonic = T::zero();
            for k in 1..200 {
                let kk = T::lit(k as f64);
                t = t * minus_q / (kk * kk);
                harmonic += T::one() / kk;
                j += t;
                hsum += t * harmonic;
                if t.norm() * harmonic <= eps * (j.norm() + hsum.norm()) * T::lit(1e-2) {
                    break;
                }
            }
            let y = ((log_term + gamma) * j - hsum) * (two / T::PI());
            (j, y)
        }
        Order::One => {
            // s_k = (-q)^k / (k!(k+1)!)
            let mut s = Complex::new(T::one(), T::zero());
            let mut jsum = s;
            // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
            let mut hk = T::zero();
            let mut psisum = s * (T::one() - two * gamma);
            for k in 1..200 {
                let kk = T::lit(k as f64);
                s = s * minus_q / (kk * (kk + T::one()));
                hk += T::one() / kk;
                let hk1 = hk + T::one() / (kk + T::one());
                jsum += s;
                psisum += s * (hk + hk1 - two * gamma);
                if s.norm() * (hk1 + T::one()) <= eps * (jsum.norm() + psisum.norm()) * T::lit(1e-2)
                {
                    break;
                }
            }
            let j = half_z * jsum;
            let y = -(Complex::new(two, T::zero()) / (z * T::PI()))
                + log_term * j * (two / T::PI())
                - half_z * psisum / T::PI();
            (j, y)
        }
    }
}

/// `(J_n(x), Y_n(x))` for real `x > 0`.
pub fn bessel_jy<T: Real>(order: Order, x: T) -> Result<(T, T)> {
    if x <= T::zero() {
        return Err(Error::Domain(format!("real Bessel pair needs x > 0, got {x}")));
    }
    let h = hankel1(order, cplx(x, T::zero()))?;
    Ok((h.re, h.im))
}

/// Modified Bessel function `K_0(t)` for real `t > 0`.
pub fn bessel_k0<T: Real>(t: T) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!("K0 needs a finite t > 0, got {t}")));
    }
    if t >= T::lit(K0_ASYMPTOTIC_FROM) {
        return Ok(k0_asymptotic(t));
    }
    // e^{t} K0(t) = ∫_0^∞ exp(-t (cosh s - 1)) ds, trapezoid with step 0.1.
    let tf = t.as_f64();
    let step = 0.1_f64;
    let cutoff = 40.0_f64;
    let s_max = (cutoff / tf + 1.0).acosh() + step;
    let count = (s_max / step).ceil() as usize;
    let mut acc = 0.5;
    for k in 1..=count {
        let s = k as f64 * step;
        acc += (-tf * (s.cosh() - 1.0)).exp();
    }
    Ok(T::lit(acc * step * (-tf).exp()))
}

fn k0_asymptotic<T: Real>(t: T) -> T {
    // K0(t) ~ sqrt(pi/(2t)) e^{-t} sum_k prod_j (-(2j-1)^2) / (k! (8t)^k)
    let mut term = T::one();
    let mut sum = T::one();
    let mut last = T::one();
    for k in 1..60 {
        let kk = T::lit(k as f64);
        let odd = T::lit((2 * k - 1) as f64);
        term = term * (-(odd * odd)) / (T::lit(8.0) * kk * t);
        let mag = term.abs();
        if mag >= last {
            break;
        }
        sum += term;
        last = mag;
        if mag <= T::epsilon() * sum.abs() {
            break;
        }
    }
    (T::PI() / (T::lit(2.0) * t)).sqrt() * (-t).exp() * sum
}
