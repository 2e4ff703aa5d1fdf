//! Forward operators: discrete source transforms, far fields for the four
//! models, ray evaluation and the near-field potential.

use std::f64::consts::{PI, TAU};

use gmig_core::field::{sample_scalar_gmig, FieldRealization, GaussianBump, Grid, ScalarStrengths, Shape};
use gmig_core::forward::{
    farfield, farfield_ray, nearfield, source_fourier, DirectionSet, FarFieldSource, FarFieldValue, NearFieldValue,
    RayCache, RealizationFarField,
};
use gmig_core::waves::WaveKind;
use gmig_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn deterministic(grid: Grid<f64>, shapes: &[Shape<f64>]) -> FieldRealization<f64> {
    let mut values = Vec::new();
    for s in shapes {
        values.extend(s.sample(&grid).unwrap());
    }
    FieldRealization::from_values(grid, shapes.len(), values, 0, 1.0, 2.0).unwrap()
}

fn gaussian(grid: Grid<f64>) -> FieldRealization<f64> {
    let b = Shape::bump(GaussianBump::new(vec![0.3, -0.4], 0.6, 1.0, 0.7).unwrap());
    deterministic(grid, &[b])
}

fn random_field(a_r_ratio: f64, seed: u64) -> FieldRealization<f64> {
    let grid = Grid::new(2, 128, 6.0).unwrap();
    let b = Shape::bump(GaussianBump::real(vec![0.0, 0.2], 0.9, 1.0).unwrap());
    let s = ScalarStrengths::from_shapes(grid, 2.0, &b, &b.scaled(a_r_ratio, 0.0)).unwrap();
    sample_scalar_gmig(&s, 1.0, seed).unwrap()
}

#[test]
fn point_mass_transform_is_a_modulation() {
    let grid = Grid::new(2, 32, 4.0).unwrap();
    let node = grid.flatten(&[19, 11]);
    let mut values = vec![c(0.0, 0.0); grid.len()];
    values[node] = c(1.0 / grid.cell_volume(), 0.0);
    let f = FieldRealization::from_values(grid, 1, values, 0, 1.0, 2.0).unwrap();
    let y = grid.position(node);
    for xi in [[1.0, 0.5], [-7.0, 3.0], [12.0, -20.0]] {
        let got = source_fourier(&f, &xi).unwrap()[0];
        let want = Complex64::from_polar(1.0, -(xi[0] * y[0] + xi[1] * y[1]));
        assert!(rel(got, want) < 1e-12);
    }
}

#[test]
fn gaussian_transform_matches_closed_form() {
    let grid = Grid::new(2, 128, 10.0).unwrap();
    let f = gaussian(grid);
    let (x0, y0, s, phase) = (0.3, -0.4, 0.6, 0.7);
    for xi in [[0.0, 0.0], [2.0, 1.0], [-3.0, 4.5], [6.0, -6.0]] {
        let got = source_fourier(&f, &xi).unwrap()[0];
        let k2 = xi[0] * xi[0] + xi[1] * xi[1];
        let want = Complex64::from_polar(TAU * s * s * (-s * s * k2 / 2.0).exp(), phase - (xi[0] * x0 + xi[1] * y0));
        assert!((got - want).norm() < 1e-8 * TAU * s * s, "ξ = {xi:?}: {got} vs {want}");
    }
}

#[test]
fn transform_beyond_nyquist_is_refused() {
    let grid = Grid::new(2, 32, 4.0).unwrap();
    let f = gaussian(grid);
    let limit = PI / grid.spacing();
    assert!(matches!(source_fourier(&f, &[1.01 * limit, 0.0]), Err(Error::Nyquist { .. })));
}

#[test]
fn ray_matches_pointwise_evaluation() {
    let f = random_field(0.5, 4);
    let xhat = [0.6, -0.8];
    let ray = farfield_ray(WaveKind::Acoustic, &f, &xhat, 10.0, 0.37, 50).unwrap();
    for (j, r) in ray.iter().enumerate().step_by(7) {
        let direct = farfield(WaveKind::Acoustic, &f, &xhat, 10.0 + 0.37 * j as f64).unwrap();
        let a = r.value.as_scalar().unwrap();
        let b = direct.value.as_scalar().unwrap();
        assert!(rel(a, b) < 1e-8);
    }
}

#[test]
fn biharmonic_is_scaled_acoustic() {
    let f = random_field(0.3, 11);
    let xhat = [0.0, 1.0];
    for k in [3.0, 17.5, 30.0] {
        let a = farfield(WaveKind::Acoustic, &f, &xhat, k).unwrap().value.as_scalar().unwrap();
        let b = farfield(WaveKind::Biharmonic, &f, &xhat, k).unwrap().value.as_scalar().unwrap();
        assert!(rel(b, a / (2.0 * k * k)) < 1e-14);
    }
}

#[test]
fn acoustic_prefactor_in_two_dimensions() {
    let grid = Grid::new(2, 128, 10.0).unwrap();
    let f = gaussian(grid);
    let xhat = [0.8, 0.6];
    for k in [1.0, 4.0] {
        let u = farfield(WaveKind::Acoustic, &f, &xhat, k).unwrap().value.as_scalar().unwrap();
        let fhat = source_fourier(&f, &[k * xhat[0], k * xhat[1]]).unwrap()[0];
        let c2 = Complex64::from_polar(1.0 / (8.0 * PI).sqrt(), PI / 4.0);
        assert!(rel(u, -c2 * k.powf(-0.5) * fhat) < 1e-13);
    }
}

#[test]
fn doubling_frequency_follows_prefactor_and_transform() {
    let grid = Grid::new(2, 128, 10.0).unwrap();
    let f = gaussian(grid);
    let xhat = [1.0, 0.0];
    let (k, s) = (1.5, 0.6);
    let u1 = farfield(WaveKind::Acoustic, &f, &xhat, k).unwrap().value.as_scalar().unwrap();
    let u2 = farfield(WaveKind::Acoustic, &f, &xhat, 2.0 * k).unwrap().value.as_scalar().unwrap();
    let shift = Complex64::from_polar(1.0, -0.3 * k);
    let expected = 2f64.powf(-0.5) * (-s * s * 3.0 * k * k / 2.0).exp() * shift;
    assert!(rel(u2 / u1, expected) < 1e-7, "{} vs {expected}", u2 / u1);
}

#[test]
fn electromagnetic_far_field_is_ik_c3_times_transform() {
    let grid = Grid::new(3, 32, 6.0).unwrap();
    let b = Shape::bump(GaussianBump::real(vec![0.1, 0.0, -0.2], 0.8, 1.0).unwrap());
    let f = deterministic(grid, &[b.clone(), b.scaled(0.5, 1.0), b.scaled(0.2, -0.4)]);
    let xhat = [0.0, 0.6, 0.8];
    let k = 2.5;
    let FarFieldValue::Vector(e) = farfield(WaveKind::Electromagnetic, &f, &xhat, k).unwrap().value else {
        panic!("vector far field expected");
    };
    let fhat = source_fourier(&f, &[0.0, 0.6 * k, 0.8 * k]).unwrap();
    for (a, b) in e.iter().zip(&fhat) {
        assert!(rel(*a, c(0.0, k / (4.0 * PI)) * b) < 1e-13);
    }
}

#[test]
fn elastic_parts_are_polarized_and_match_components() {
    let grid = Grid::new(2, 128, 6.0).unwrap();
    let b = Shape::bump(GaussianBump::real(vec![0.1, 0.0], 0.7, 1.0).unwrap());
    let f = deterministic(grid, &[b.clone(), b.scaled(0.6, 1.1)]);
    let (lambda, mu) = (1.0, 2.0);
    let kind = WaveKind::elastic(lambda, mu).unwrap();
    let xhat = [0.28, -0.96];
    let omega = 3.0;
    let FarFieldValue::Elastic { p, s } = farfield(kind, &f, &xhat, omega).unwrap().value else {
        panic!("elastic far field expected");
    };
    let dot = |v: &[Complex64]| v[0] * xhat[0] + v[1] * xhat[1];
    let scale = p.iter().chain(&s).map(|v| v.norm()).fold(0.0, f64::max);
    assert!(dot(&s).norm() <= 1e-12 * scale);
    let along = dot(&p);
    for j in 0..2 {
        assert!((p[j] - along * xhat[j]).norm() <= 1e-12 * scale);
    }

    let c2 = Complex64::from_polar(1.0 / (8.0 * PI).sqrt(), PI / 4.0);
    let cp = 1.0 / (lambda + 2.0 * mu).sqrt();
    let cs = 1.0 / mu.sqrt();
    let fp = source_fourier(&f, &[cp * omega * xhat[0], cp * omega * xhat[1]]).unwrap();
    let fs = source_fourier(&f, &[cs * omega * xhat[0], cs * omega * xhat[1]]).unwrap();
    let pre_p = -c2 * cp.powf(1.5) * omega.powf(-0.5);
    let pre_s = -c2 * cs.powf(1.5) * omega.powf(-0.5);
    for j in 0..2 {
        // v_{p,j} = x̂_j x̂ and v_{s,j} = e_j - x̂_j x̂.
        let vp = xhat[j] * dot(&fp);
        let vs = fs[j] - xhat[j] * dot(&fs);
        assert!(rel(p[j], pre_p * vp) < 1e-12);
        assert!(rel(s[j], pre_s * vs) < 1e-12);
    }
}

#[test]
fn real_fields_have_conjugate_symmetric_transforms() {
    let real = random_field(1.0, 2);
    let complex = random_field(0.2, 2);
    let xi = [3.0, -1.5];
    let minus = [-3.0, 1.5];
    let a = source_fourier(&real, &xi).unwrap()[0];
    let b = source_fourier(&real, &minus).unwrap()[0];
    assert!(rel(b, a.conj()) < 1e-12);
    let a = source_fourier(&complex, &xi).unwrap()[0];
    let b = source_fourier(&complex, &minus).unwrap()[0];
    assert!(rel(b, a.conj()) > 1e-3);
}

#[test]
fn ray_cache_serves_aligned_queries_unchanged() {
    let f = random_field(0.5, 9);
    let source = RealizationFarField::new(WaveKind::Acoustic, &f).unwrap();
    let cache = RayCache::new(&source);
    let xhat = [0.0, -1.0];
    cache.precompute(&xhat, 20.0, 0.25, 40).unwrap();
    let hit = cache.ray(&xhat, 22.5, 0.25, 20).unwrap();
    let direct = source.ray(&xhat, 22.5, 0.25, 20).unwrap();
    for (a, b) in hit.iter().zip(&direct) {
        assert!(rel(a.as_scalar().unwrap(), b.as_scalar().unwrap()) < 1e-8);
    }
    let miss = cache.value(&xhat, 22.6).unwrap();
    assert_eq!(miss, source.value(&xhat, 22.6).unwrap());
}

#[test]
fn nearfield_is_linear_and_refuses_nearby_points() {
    let grid = Grid::new(2, 32, 4.0).unwrap();
    let f1 = gaussian(grid);
    let b = Shape::bump(GaussianBump::real(vec![-0.5, 0.5], 0.4, 2.0).unwrap());
    let f2 = deterministic(grid, &[b]);
    let sum = f1.add(&f2).unwrap();
    let x = [9.0, -4.0];
    let get = |f: &FieldRealization<f64>| match nearfield(WaveKind::Acoustic, f, &x, 3.0).unwrap() {
        NearFieldValue::Scalar(v) => v,
        NearFieldValue::Vector(_) => panic!("scalar expected"),
    };
    let (a, b, s) = (get(&f1), get(&f2), get(&sum));
    assert!(rel(s, a + b) < 1e-12);
    assert!(nearfield(WaveKind::Acoustic, &f1, &[2.05, 0.0], 3.0).is_err());
    assert!(nearfield(WaveKind::Acoustic, &f1, &[0.0, 0.0], 3.0).is_err());
}

#[test]
fn direction_sets_are_unit_and_negation_closed() {
    for set in [DirectionSet::<f64>::circle(16).unwrap(), DirectionSet::sphere(32).unwrap()] {
        assert!(set.is_negation_closed());
        for x in set.iter() {
            let n: f64 = x.iter().map(|v| v * v).sum();
            assert!((n.sqrt() - 1.0).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ray_and_direct_agree_on_random_probes(angle in 0.0f64..TAU, k0 in 1.0f64..28.0, seed in 0u64..50) {
        let f = random_field(0.5, seed);
        let xhat = [angle.cos(), angle.sin()];
        let ray = farfield_ray(WaveKind::Acoustic, &f, &xhat, k0, 0.5, 9).unwrap();
        let last = farfield(WaveKind::Acoustic, &f, &xhat, k0 + 4.0).unwrap();
        prop_assert!(rel(ray[8].value.as_scalar().unwrap(), last.value.as_scalar().unwrap()) < 1e-8);
    }
}
