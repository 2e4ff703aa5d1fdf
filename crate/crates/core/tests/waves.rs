use std::f64::consts::{FRAC_PI_4, PI};

use gmig_core::waves::{
    bessel_jy, bessel_k0, fundamental_biharmonic, fundamental_helmholtz, green_tensor_elastic,
    hankel1_0, helmholtz_hessian, radiation_constant, ElasticSpeeds, Order, Wavenumber,
};
use gmig_core::waves::bessel::{hankel1_asymptotic, hankel1_series, SERIES_LIMIT};
use num_complex::Complex64 as C64;

const GAMMA: f64 = 0.577_215_664_901_532_9;

/// Ascending series of `J_0`, `Y_0` and `K_0` for moderate real arguments.
fn j0_y0_k0_series(x: f64) -> (f64, f64, f64) {
    let q = x * x / 4.0;
    let (mut j0, mut i0, mut ysum, mut ksum) = (0.0, 0.0, 0.0, 0.0);
    let mut term = 1.0;
    let mut harmonic = 0.0;
    for k in 0..80 {
        if k > 0 {
            term *= q / (k * k) as f64;
            harmonic += 1.0 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        j0 += sign * term;
        i0 += term;
        ysum += sign * harmonic * term;
        ksum += harmonic * term;
    }
    let ell = (x / 2.0).ln() + GAMMA;
    let y0 = 2.0 / PI * (ell * j0 - ysum);
    let k0 = -ell * i0 + ksum;
    (j0, y0, k0)
}

#[test]
fn wronskian_on_unit_to_fifty() {
    let mut x = 0.1;
    while x <= 50.0 {
        let (j0, y0) = bessel_jy(Order::Zero, x).unwrap();
        let (j1, y1) = bessel_jy(Order::One, x).unwrap();
        let w = j1 * y0 - j0 * y1;
        let expect = 2.0 / (PI * x);
        assert!((w - expect).abs() <= 1e-10 * expect.max(1e-2), "x = {x}: {w} vs {expect}");
        x += 0.0731;
    }
}

#[test]
fn branches_overlap_at_switch() {
    for order in [Order::Zero, Order::One] {
        for &shift in &[0.0_f64, 1e-9] {
            let z = C64::new(SERIES_LIMIT + shift, 0.0);
            let a = hankel1_series(order, z);
            let b = hankel1_asymptotic(order, z);
            assert!((a - b).norm() <= 1e-10 * b.norm(), "{order:?} at {z}: {a} vs {b}");
        }
    }
}

#[test]
fn hankel_against_series_oracle() {
    for &x in &[0.3_f64, 1.0, 2.5, 7.0, 11.0] {
        let (j0, y0, _) = j0_y0_k0_series(x);
        let h = hankel1_0(C64::new(x, 0.0)).unwrap();
        assert!((h - C64::new(j0, y0)).norm() < 1e-12, "x = {x}");
    }
    let h1 = hankel1_0(C64::new(1.0, 0.0)).unwrap();
    assert!((h1 - C64::new(0.7651976865579666, 0.08825696421567696)).norm() < 1e-13);
}

#[test]
fn hankel_large_argument() {
    let z = 100.0_f64;
    let h = hankel1_0(C64::new(z, 0.0)).unwrap();
    let lead = (2.0 / (PI * z)).sqrt() * C64::from_polar(1.0, z - FRAC_PI_4);
    // The first neglected term has relative size 1/(8z).
    let rel = (h - lead).norm() / lead.norm();
    assert!((rel - 1.0 / (8.0 * z)).abs() < 1e-5, "relative gap {rel}");
    // scipy.special.hankel1(0, 100)
    assert!((h - C64::new(0.019985850304223136, -0.07724431336508318)).norm() < 1e-14);
}

#[test]
fn hankel_on_imaginary_axis_is_k0() {
    for &t in &[0.2_f64, 1.0, 3.0] {
        let (_, _, k0) = j0_y0_k0_series(t);
        let h = hankel1_0(C64::new(0.0, t)).unwrap();
        let expect = C64::new(0.0, -2.0 / PI) * k0;
        assert!((h - expect).norm() <= 1e-11 * expect.norm(), "t = {t}: {h} vs {expect}");
        assert!((bessel_k0(t).unwrap() - k0).abs() <= 1e-12 * k0);
    }
    // scipy.special.k0(6)
    let k6 = 0.0012439943280131234;
    let h = hankel1_0(C64::new(0.0, 6.0)).unwrap();
    assert!((h - C64::new(0.0, -2.0 / PI * k6)).norm() <= 1e-10 * k6);
    assert!((bessel_k0(6.0).unwrap() - k6).abs() <= 1e-13 * k6);
}

#[test]
fn helmholtz_examples() {
    let o3 = [0.0; 3];
    let x3 = [0.0, 1.0, 0.0];
    let v = fundamental_helmholtz(&x3, &o3, C64::new(PI, 0.0), 3).unwrap();
    assert!((v - C64::new(-1.0 / (4.0 * PI), 0.0)).norm() < 1e-15);
    let w = fundamental_helmholtz(&x3, &o3, C64::new(0.0, 1.0), 3).unwrap();
    assert!((w.re - (-1.0_f64).exp() / (4.0 * PI)).abs() < 1e-16 && w.im == 0.0);
    let x2 = [0.6, 0.8];
    let v2 = fundamental_helmholtz(&x2, &[0.0, 0.0], C64::new(1.0, 0.0), 2).unwrap();
    let expect = C64::new(0.0, 0.25) * C64::new(0.7651976865579666, 0.08825696421567696);
    assert!((v2 - expect).norm() < 1e-14);
}

#[test]
fn biharmonic_examples() {
    let o3 = [0.0; 3];
    let x3 = [0.0, 0.0, 1.0];
    let f = fundamental_biharmonic(&x3, &o3, 1.0, 3).unwrap();
    let expect = (C64::new(0.0, 1.0).exp() - (-1.0_f64).exp()) / (8.0 * PI);
    assert!((f - expect).norm() < 1e-16);

    // Independent value from J0, Y0, K0 series at r = 0.5, κ = 2.
    let (j0, y0, k0) = j0_y0_k0_series(1.0);
    let oracle = (C64::new(0.0, 0.25) * C64::new(j0, y0) - k0 / (2.0 * PI)) / 8.0;
    let f2 = fundamental_biharmonic(&[0.3, 0.4], &[0.0, 0.0], 2.0, 2).unwrap();
    assert!((f2 - oracle).norm() < 1e-14);
    assert!((f2 - C64::new(-0.011134045195302048, 0.02391242770493645)).norm() < 1e-14);
}

#[test]
fn biharmonic_defining_identity() {
    let pts = [([0.1, -0.4], [1.3, 0.2]), ([2.0, 2.0], [-1.0, 0.5])];
    for &k in &[0.5_f64, 2.0, 9.0] {
        for (x, y) in &pts {
            let f = fundamental_biharmonic(x, y, k, 2).unwrap();
            let a = fundamental_helmholtz(x, y, C64::new(k, 0.0), 2).unwrap();
            let b = fundamental_helmholtz(x, y, C64::new(0.0, k), 2).unwrap();
            assert!((2.0 * k * k * f + b - a).norm() <= 1e-15 * a.norm().max(b.norm()) * 4.0);
        }
        let x = [0.2, 0.7, -1.1];
        let y = [0.0, 0.1, 0.4];
        let f = fundamental_biharmonic(&x, &y, k, 3).unwrap();
        let a = fundamental_helmholtz(&x, &y, C64::new(k, 0.0), 3).unwrap();
        let b = fundamental_helmholtz(&x, &y, C64::new(0.0, k), 3).unwrap();
        assert!((2.0 * k * k * f + b - a).norm() <= 4e-16 * a.norm().max(b.norm()));
    }
}

fn fd_hessian(x: &[f64], y: &[f64], kappa: f64, d: usize, h: f64) -> Vec<C64> {
    let phi = |p: &[f64]| fundamental_helmholtz(p, y, C64::new(kappa, 0.0), d).unwrap();
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for a in 0..d {
        for b in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for (sa, sb, w) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
                let mut p = x.to_vec();
                p[a] += sa * h;
                p[b] += sb * h;
                acc += phi(&p) * w;
            }
            out[a * d + b] = acc / (4.0 * h * h);
        }
    }
    out
}

fn frob(m: &[C64]) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn hessian_matches_finite_differences() {
    for d in [2usize, 3] {
        let y = vec![0.1; d];
        let mut x = vec![0.1; d];
        x[0] += 1.2;
        x[1] -= 1.6; // |x - y| = 2
        for &k in &[1.5_f64, 3.0] {
            let exact = helmholtz_hessian(&x, &y, Wavenumber::Real(k), d).unwrap();
            let approx = fd_hessian(&x, &y, k, d, 2e-4);
            let diff: Vec<C64> = exact.iter().zip(&approx).map(|(a, b)| a - b).collect();
            assert!(frob(&diff) <= 1e-6 * frob(&exact), "d = {d}, κ = {k}");
        }
    }
}

#[test]
fn green_tensor_against_finite_differences() {
    let speeds = ElasticSpeeds::new(0.5_f64, 1.3).unwrap();
    let omega = 3.0;
    for d in [2usize, 3] {
        let y = vec![-0.2; d];
        let mut x = vec![-0.2; d];
        x[0] += 1.2;
        x[d - 1] += 1.6;
        let g = green_tensor_elastic(&x, &y, omega, speeds, d).unwrap();
        let hs = fd_hessian(&x, &y, speeds.kappa_s(omega), d, 2e-4);
        let hp = fd_hessian(&x, &y, speeds.kappa_p(omega), d, 2e-4);
        let phi_s = fundamental_helmholtz(&x, &y, C64::new(speeds.kappa_s(omega), 0.0), d).unwrap();
        let mut diff = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let mut v = (hs[a * d + b] - hp[a * d + b]) / (omega * omega);
                if a == b {
                    v += phi_s / speeds.mu();
                }
                diff.push(g[a * d + b] - v);
            }
        }
        assert!(frob(&diff) <= 1e-6 * frob(&g), "d = {d}");
    }
}

#[test]
fn green_tensor_reciprocity() {
    let speeds = ElasticSpeeds::new(1.0_f64, 0.7).unwrap();
    let pairs = [
        (vec![0.3, -1.2, 0.8], vec![-0.5, 0.4, 0.1]),
        (vec![1.7, 0.2], vec![-0.4, -0.9]),
    ];
    for (x, y) in &pairs {
        let d = x.len();
        let g = green_tensor_elastic(x, y, 2.3, speeds, d).unwrap();
        let gt = green_tensor_elastic(y, x, 2.3, speeds, d).unwrap();
        for a in 0..d {
            for b in 0..d {
                assert!((g[a * d + b] - gt[b * d + a]).norm() <= 1e-14 * frob(&g));
            }
        }
    }
}

fn unit(d: usize) -> Vec<f64> {
    let v: Vec<f64> = if d == 2 { vec![0.6, -0.8] } else { vec![2.0 / 7.0, 3.0 / 7.0, 6.0 / 7.0] };
    v
}

#[test]
fn helmholtz_far_field_residual_decays_like_inverse_distance() {
    for d in [2usize, 3] {
        let kappa = 3.0_f64;
        let xhat = unit(d);
        let y: Vec<f64> = (0..d).map(|i| 0.3 - 0.25 * i as f64).collect();
        let c = radiation_constant::<f64>(d).unwrap();
        let dot: f64 = xhat.iter().zip(&y).map(|(a, b)| a * b).sum();
        let lead = c * kappa.powf((d as f64 - 3.0) / 2.0) * C64::from_polar(1.0, -kappa * dot);
        let residual = |r: f64| {
            let x: Vec<f64> = xhat.iter().map(|v| v * r).collect();
            let phi = fundamental_helmholtz(&x, &y, C64::new(kappa, 0.0), d).unwrap();
            (phi * r.powf((d as f64 - 1.0) / 2.0) * C64::from_polar(1.0, -kappa * r) - lead).norm()
        };
        let (r50, r100, r200) = (residual(50.0), residual(100.0), residual(200.0));
        for ratio in [r50 / r100, r100 / r200] {
            assert!((1.5..=2.5).contains(&ratio), "d = {d}: ratio {ratio}");
        }
    }
}

#[test]
fn elastic_far_field_two_term_asymptotics() {
    let speeds = ElasticSpeeds::new(0.0_f64, 1.0).unwrap();
    let omega = 2.0;
    for d in [2usize, 3] {
        let c = radiation_constant::<f64>(d).unwrap();
        let xhat = unit(d);
        let y: Vec<f64> = (0..d).map(|i| -0.2 + 0.3 * i as f64).collect();
        let dot: f64 = xhat.iter().zip(&y).map(|(a, b)| a * b).sum();
        let df = d as f64;
        let scaled = |r: f64| {
            let x: Vec<f64> = xhat.iter().map(|v| v * r).collect();
            let g = green_tensor_elastic(&x, &y, omega, speeds, d).unwrap();
            let (kp, ks) = (speeds.kappa_p(omega), speeds.kappa_s(omega));
            let amp = r.powf(-(df - 1.0) / 2.0) * omega.powf((df - 3.0) / 2.0);
            let p = c * amp * speeds.c_p.powf((df + 1.0) / 2.0) * C64::from_polar(1.0, kp * r - kp * dot);
            let s = c * amp * speeds.c_s.powf((df + 1.0) / 2.0) * C64::from_polar(1.0, ks * r - ks * dot);
            let mut worst: f64 = 0.0;
            for a in 0..d {
                for b in 0..d {
                    let outer = xhat[a] * xhat[b];
                    let delta = if a == b { 1.0 } else { 0.0 };
                    let lead = p * outer + s * (delta - outer);
                    worst = worst.max((g[a * d + b] - lead).norm());
                }
            }
            worst * r.powf((df + 1.0) / 2.0)
        };
        let values: Vec<f64> = [50.0, 100.0, 200.0, 400.0].iter().map(|&r| scaled(r)).collect();
        let hi = values.iter().cloned().fold(0.0, f64::max);
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(hi.is_finite() && hi < 3.0 * lo.max(1e-3 * hi), "d = {d}: {values:?}");
        assert!(hi < 10.0, "d = {d}: residual constant {hi}");
    }
}

/// `∫ Φ_3(x, y, κ) (Δφ + κ²φ)(x) dx = -φ(y)` for a Gaussian bump `φ`,
/// integrated in spherical coordinates about `y`.
#[test]
fn three_dimensional_kernel_inverts_helmholtz_operator() {
    let kappa = 2.0_f64;
    let s = 0.35_f64;
    let center = [0.2, -0.1, 0.15];
    let y = [0.0, 0.05, 0.0];
    let phi = |p: &[f64; 3]| {
        let r2: f64 = p.iter().zip(&center).map(|(a, b)| (a - b) * (a - b)).sum();
        (-r2 / (2.0 * s * s)).exp()
    };
    let op = |p: &[f64; 3]| {
        let r2: f64 = p.iter().zip(&center).map(|(a, b)| (a - b) * (a - b)).sum();
        (r2 / s.powi(4) - 3.0 / (s * s) + kappa * kappa) * phi(p)
    };
    let rmax = 0.4 + 9.0 * s;
    let (nr, nmu, nphi) = (600usize, 120usize, 64usize);
    let simpson = |i: usize, n: usize| if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
    let (dr, dmu, dph) = (rmax / nr as f64, 2.0 / nmu as f64, 2.0 * PI / nphi as f64);
    let mut acc = C64::new(0.0, 0.0);
    for ir in 1..=nr {
        let r = ir as f64 * dr;
        let x = [r, 0.0, 0.0];
        let kernel = fundamental_helmholtz(&x, &[0.0; 3], C64::new(kappa, 0.0), 3).unwrap() * r * r;
        let mut shell = 0.0;
        for im in 0..=nmu {
            let mu = -1.0 + im as f64 * dmu;
            let st = (1.0 - mu * mu).max(0.0).sqrt();
            let mut ring = 0.0;
            for ip in 0..nphi {
                let ph = ip as f64 * dph;
                let p = [y[0] + r * st * ph.cos(), y[1] + r * st * ph.sin(), y[2] + r * mu];
                ring += op(&p);
            }
            shell += simpson(im, nmu) * ring * dph;
        }
        acc += kernel * simpson(ir, nr) * shell * dmu / 3.0;
    }
    let integral = acc * dr / 3.0;
    let expect = -phi(&y);
    assert!((integral - expect).norm() < 1e-6, "{integral} vs {expect}");
}
