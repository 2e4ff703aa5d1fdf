//! Field synthesis: spectral density, stationary sampling, GMIG sampling
//! and strength validation.

use gmig_core::field::{
    default_delta, sample_scalar_gmig, sample_stationary_pair, sample_vector_gmig, spectral_density, validate_strengths,
    GaussianBump, Grid, MatrixStrengths, ScalarStrengths, Shape, Strengths,
};
use gmig_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn bump(width: f64) -> Shape<f64> {
    Shape::bump(GaussianBump::real(vec![0.0, 0.0], width, 1.0).unwrap())
}

#[test]
fn spectral_density_examples() {
    assert!((spectral_density::<f64>(2.0, 0.5, &[0.0, 0.0]) - 4.0).abs() < 1e-14);
    assert!((spectral_density::<f64>(2.0, 1.0, &[1.0, 0.0]) - 0.5).abs() < 1e-15);
    let s: f64 = spectral_density(2.0, 1.0, &[64.0, 0.0]);
    assert!((s - 64f64.powi(-2)).abs() <= 64f64.powi(-4));
}

#[test]
fn stationary_variance_matches_lattice_sum() {
    let grid = Grid::new(2, 16, 4.0).unwrap();
    let (m, delta) = (1.5, default_delta(&grid));
    let k0 = std::f64::consts::TAU / 4.0;
    let mut expected = 0.0;
    for a in -8..8 {
        for b in -8..8 {
            let k2 = k0 * k0 * (a * a + b * b) as f64;
            expected += (k2 + delta * delta).powf(-m / 2.0);
        }
    }
    expected /= 16.0;

    let centre = grid.flatten(&[8, 8]);
    let draws = 2000;
    let (mut s1, mut s2) = (0.0, 0.0);
    for seed in 0..draws {
        let (g1, g2) = sample_stationary_pair(&grid, m, delta, seed).unwrap();
        s1 += g1[centre] * g1[centre];
        s2 += g2[centre] * g2[centre];
    }
    let se = expected * (2.0 / (draws as f64 - 1.0)).sqrt();
    for s in [s1, s2] {
        let var = s / draws as f64;
        assert!((var - expected).abs() <= 3.0 * se, "variance {var} vs {expected} ± {se}");
    }
}

#[test]
fn stationary_pair_is_deterministic() {
    let grid = Grid::new(2, 16, 4.0).unwrap();
    let a = sample_stationary_pair(&grid, 2.0, 1.0, 99).unwrap();
    let b = sample_stationary_pair(&grid, 2.0, 1.0, 99).unwrap();
    let c = sample_stationary_pair(&grid, 2.0, 1.0, 100).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

fn scalar_strengths(ratio: f64, phase: f64) -> ScalarStrengths<f64> {
    let grid = Grid::new(2, 32, 6.0).unwrap();
    let a_c = bump(0.8);
    ScalarStrengths::from_shapes(grid, 2.0, &a_c, &a_c.scaled(ratio, phase)).unwrap()
}

#[test]
fn boundary_relation_gives_real_field() {
    let s = scalar_strengths(1.0, 0.0);
    let f = sample_scalar_gmig(&s, 1.0, 3).unwrap();
    let peak = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    assert!(peak > 0.0);
    assert!(f.values.iter().all(|v| v.im.abs() <= 1e-12 * peak));
}

#[test]
fn zero_relation_gives_iid_parts() {
    let s = scalar_strengths(0.0, 0.0);
    let node = s.grid.flatten(&[16, 16]);
    let (mut rr, mut ii, mut ri) = (0.0, 0.0, 0.0);
    let draws = 2000;
    for seed in 0..draws {
        let v = sample_scalar_gmig(&s, 1.0, seed).unwrap().values[node];
        rr += v.re * v.re;
        ii += v.im * v.im;
        ri += v.re * v.im;
    }
    let n = draws as f64;
    let scale = (rr + ii) / (2.0 * n);
    let se = scale * (2.0 / n).sqrt();
    assert!((rr / n - ii / n).abs() <= 4.0 * se * 2f64.sqrt());
    assert!((ri / n).abs() <= 4.0 * scale / n.sqrt());
}

#[test]
fn inadmissible_relation_is_rejected_with_node() {
    let s = scalar_strengths(1.1, 0.3);
    match sample_scalar_gmig(&s, 1.0, 1) {
        Err(Error::Inadmissible { node, .. }) => assert!(s.a_c[node] > 0.0),
        other => panic!("expected inadmissible error, got {other:?}"),
    }
}

#[test]
fn field_vanishes_where_strength_vanishes() {
    let s = scalar_strengths(0.5, 1.0);
    let f = sample_scalar_gmig(&s, 1.0, 8).unwrap();
    for (v, a) in f.values.iter().zip(&s.a_c) {
        if *a == 0.0 {
            assert_eq!(v.norm(), 0.0);
        }
    }
}

#[test]
fn scalar_realization_is_reproducible() {
    let s = scalar_strengths(0.5, 1.0);
    assert_eq!(sample_scalar_gmig(&s, 1.0, 21).unwrap(), sample_scalar_gmig(&s, 1.0, 21).unwrap());
}

#[test]
fn vector_component_variances_follow_diagonal() {
    let grid = Grid::new(2, 16, 6.0).unwrap();
    let b = bump(1.0);
    let two = b.scaled(2.0, 0.0);
    let s = MatrixStrengths::from_shapes(grid, 2.0, &[two, Shape::zero(), Shape::zero(), b], &[Shape::zero(), Shape::zero(), Shape::zero(), Shape::zero()]).unwrap();
    let node = grid.flatten(&[8, 8]);
    let n = grid.len();
    let draws = 3000;
    let (mut v0, mut v1) = (0.0, 0.0);
    for seed in 0..draws {
        let f = sample_vector_gmig(&s, 1.0, seed).unwrap();
        v0 += f.values[node].norm_sqr();
        v1 += f.values[n + node].norm_sqr();
    }
    let ratio = v0 / v1;
    // Each |f_j|² is a scaled χ²₂ variable: relative SE 1/√M per sum.
    let se = ratio * (2.0 / draws as f64).sqrt();
    assert!((ratio - 2.0).abs() <= 4.0 * se, "ratio {ratio} ± {se}");
}

#[test]
fn validation_examples() {
    let ok = Strengths::Scalar(scalar_strengths(0.5, std::f64::consts::FRAC_PI_3));
    let report = validate_strengths(&ok);
    assert!(report.passed);
    if let Strengths::Scalar(s) = &ok {
        for (i, m) in report.margins.iter().enumerate() {
            assert!((m - 0.5 * s.a_c[i]).abs() <= 1e-12);
        }
    }

    let mut bad = scalar_strengths(0.5, 0.0);
    let node = bad.grid.flatten(&[16, 16]);
    bad.a_r[node] = Complex64::new(1.1 * bad.a_c[node], 0.0);
    let report = validate_strengths(&Strengths::Scalar(bad));
    assert!(!report.passed);
    assert_eq!(report.inadmissible, vec![node]);

    let grid = Grid::new(2, 16, 6.0).unwrap();
    let b = bump(1.0);
    let z = Shape::zero();
    let m = MatrixStrengths::from_shapes(grid, 2.0, &[b.clone(), z.clone(), z.clone(), b.clone()], &[z.clone(), b.clone(), b, z]).unwrap();
    let report = validate_strengths(&Strengths::Matrix(m));
    assert!(report.passed);
    let (_, worst) = report.worst_margin().unwrap();
    assert!(worst.abs() <= 1e-12, "smallest augmented eigenvalue {worst}");
}

#[test]
fn strength_in_margin_is_reported() {
    let grid = Grid::new(2, 16, 6.0).unwrap();
    let mut a_c = vec![0.0; grid.len()];
    a_c[0] = 1.0;
    let s = ScalarStrengths::new(grid, 2.0, a_c, vec![Complex64::new(0.0, 0.0); grid.len()]).unwrap();
    let report = validate_strengths(&Strengths::Scalar(s));
    assert!(!report.passed);
    assert_eq!(report.support_violations, vec![0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn density_residual_is_lower_order(m in 0.5f64..3.0, k in 8.0f64..200.0) {
        let s = spectral_density(m, 1.0, &[k, 0.0]);
        let principal = k.powf(-m);
        prop_assert!((s - principal).abs() <= m * k.powf(-m - 2.0));
    }

    #[test]
    fn admissible_pairs_always_sample(ratio in 0.0f64..=1.0, phase in -3.0f64..3.0, seed in 0u64..1000) {
        let s = scalar_strengths(ratio, phase);
        prop_assert!(sample_scalar_gmig(&s, 1.0, seed).is_ok());
    }
}
