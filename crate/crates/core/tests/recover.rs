//! Recovery: normalization, polar Fourier inversion and error metrics.

use std::f64::consts::{PI, TAU};

use gmig_core::estimate::{BandAverageResult, EstimatorConfig, Target};
use gmig_core::field::{GaussianBump, Grid, MatrixStrengths, Shape, Strengths};
use gmig_core::forward::DirectionSet;
use gmig_core::recover::{
    invert_polar_fourier, normalize, recovery_error, PolarFourierData, RecoveryReport, StrengthGrid, Window,
};
use gmig_core::seeds::rng_from_seed;
use gmig_core::waves::WaveKind;
use gmig_core::Error;
use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

fn bump_at(x: f64, y: f64) -> Shape<f64> {
    Shape::bump(GaussianBump::real(vec![x, y], 0.8, 1.0).unwrap())
}

fn shifts(count: usize, tau_max: f64) -> Vec<f64> {
    (0..count).map(|i| tau_max * i as f64 / (count - 1) as f64).collect()
}

fn analytic(shape: &Shape<f64>, target: Target, directions: usize, shift_list: Vec<f64>) -> PolarFourierData<f64> {
    PolarFourierData::from_fn(
        WaveKind::Acoustic,
        target,
        DirectionSet::circle(directions).unwrap(),
        shift_list,
        1,
        |xi| vec![shape.fourier(xi)],
    )
}

fn target_grid() -> Grid<f64> {
    Grid::new(2, 64, TAU).unwrap()
}

fn error_of(shape: &Shape<f64>, data: &PolarFourierData<f64>, window: Window) -> f64 {
    let grid = target_grid();
    let r = invert_polar_fourier(data, &grid, window).unwrap();
    let truth = StrengthGrid::from_shapes(grid, std::slice::from_ref(shape)).unwrap();
    recovery_error(&r.strengths, &truth).unwrap().relative_l2()
}

#[test]
fn zero_data_reconstructs_zero() {
    let data = analytic(&Shape::zero(), Target::Covariance, 16, shifts(17, 8.0));
    let r = invert_polar_fourier(&data, &target_grid(), Window::RaisedCosine).unwrap();
    assert!(r.strengths.values.iter().all(|v| v.norm() == 0.0));
}

#[test]
fn dense_analytic_inversion_is_within_two_percent() {
    let shape = bump_at(0.3, -0.2);
    for window in [Window::RaisedCosine, Window::None] {
        let e = error_of(&shape, &analytic(&shape, Target::Covariance, 32, shifts(33, 8.0)), window);
        assert!(e <= 0.02, "{window:?}: {e}");
    }
}

#[test]
fn relation_inversion_keeps_complex_values() {
    let shape = bump_at(0.3, -0.2).scaled(0.7, 1.0);
    let data = analytic(&shape, Target::Relation, 32, shifts(33, 8.0));
    let e = error_of(&shape, &data, Window::RaisedCosine);
    assert!(e <= 0.02, "{e}");
}

#[test]
fn peak_lands_on_the_truth_and_follows_translation() {
    let grid = target_grid();
    let h = grid.spacing();
    let peak_of = |shape: &Shape<f64>| {
        let data = analytic(shape, Target::Covariance, 32, shifts(33, 8.0));
        let r = invert_polar_fourier(&data, &grid, Window::RaisedCosine).unwrap();
        grid.unflatten(r.strengths.peak(0))
    };
    let centre = [grid.coord(37), grid.coord(25)];
    let p = peak_of(&bump_at(centre[0], centre[1]));
    assert!((p[0] as i64 - 37).abs() <= 1 && (p[1] as i64 - 25).abs() <= 1, "{p:?}");
    let q = peak_of(&bump_at(centre[0] + h, centre[1]));
    assert_eq!(q[0], p[0] + 1);
    assert_eq!(q[1], p[1]);
}

#[test]
fn inversion_is_linear() {
    let a = bump_at(0.3, -0.2);
    let b = bump_at(-1.0, 0.5).scaled(0.5, 2.0);
    let da = analytic(&a, Target::Relation, 16, shifts(17, 8.0));
    let db = analytic(&b, Target::Relation, 16, shifts(17, 8.0));
    let grid = target_grid();
    let ra = invert_polar_fourier(&da, &grid, Window::RaisedCosine).unwrap();
    let rb = invert_polar_fourier(&db, &grid, Window::RaisedCosine).unwrap();
    let rs = invert_polar_fourier(&da.add(&db).unwrap(), &grid, Window::RaisedCosine).unwrap();
    let scale = rs.strengths.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for ((x, y), s) in ra.strengths.values.iter().zip(&rb.strengths.values).zip(&rs.strengths.values) {
        assert!((x + y - s).norm() <= 1e-12 * scale);
    }
}

#[test]
fn noiseless_error_falls_as_sampling_is_refined() {
    let shape = bump_at(0.3, -0.2);
    let monotone = |e: &[f64]| e.windows(2).all(|w| w[1] <= 1.1 * w[0]);
    let by_directions: Vec<f64> = [8, 16, 32]
        .iter()
        .map(|&n| error_of(&shape, &analytic(&shape, Target::Covariance, n, shifts(33, 8.0)), Window::None))
        .collect();
    let by_step: Vec<f64> = [9, 17, 33]
        .iter()
        .map(|&n| error_of(&shape, &analytic(&shape, Target::Covariance, 32, shifts(n, 8.0)), Window::None))
        .collect();
    let by_extent: Vec<f64> = [2.0, 4.0, 8.0]
        .iter()
        .map(|&t| {
            let count = (t / 0.25) as usize + 1;
            error_of(&shape, &analytic(&shape, Target::Covariance, 64, shifts(count, t)), Window::None)
        })
        .collect();
    assert!(monotone(&by_directions), "{by_directions:?}");
    assert!(monotone(&by_step), "{by_step:?}");
    assert!(monotone(&by_extent), "{by_extent:?}");
}

#[test]
fn preconditions_are_enforced() {
    let shape = bump_at(0.0, 0.0);
    let grid = target_grid();
    let open = DirectionSet::from_vectors(2, &[vec![1.0, 0.0], vec![0.0, 1.0], vec![-0.6, -0.8]]).unwrap();
    let rel = PolarFourierData::from_fn(WaveKind::Acoustic, Target::Relation, open.clone(), shifts(9, 4.0), 1, |xi| {
        vec![shape.fourier(xi)]
    });
    assert!(matches!(invert_polar_fourier(&rel, &grid, Window::None), Err(Error::Config(_))));
    let cov = PolarFourierData::from_fn(WaveKind::Acoustic, Target::Covariance, open, shifts(9, 4.0), 1, |xi| {
        vec![shape.fourier(xi)]
    });
    assert!(invert_polar_fourier(&cov, &grid, Window::None).is_ok());

    let offset: Vec<f64> = (1..10).map(|i| i as f64 * 0.5).collect();
    let data = analytic(&shape, Target::Covariance, 8, offset);
    assert!(invert_polar_fourier(&data, &grid, Window::None).is_err());

    let coarse = Grid::new(2, 16, TAU).unwrap();
    let data = analytic(&shape, Target::Covariance, 8, shifts(17, 10.0));
    assert!(matches!(invert_polar_fourier(&data, &coarse, Window::None), Err(Error::Nyquist { .. })));
}

#[test]
fn symmetrization_residual_is_within_propagated_error() {
    let shape = bump_at(0.3, -0.2);
    let mut data = analytic(&shape, Target::Covariance, 16, shifts(17, 8.0));
    let mut rng = rng_from_seed(4);
    let sigma = 0.05;
    for (v, e) in data.values.iter_mut().zip(data.std_errors.iter_mut()) {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        v[0] += Complex64::new(re, im) * (sigma / 2f64.sqrt());
        e[0] = sigma;
    }
    let r = invert_polar_fourier(&data, &target_grid(), Window::RaisedCosine).unwrap();
    assert!(r.propagated_error > 0.0);
    assert!(r.imag_residual <= 3.0 * r.propagated_error, "{} vs {}", r.imag_residual, r.propagated_error);
    assert!(r.strengths.values.iter().all(|v| v.im == 0.0));
}

fn result(kind: WaveKind<f64>, d: usize, target: Target, xhat: Vec<f64>, tau: f64, value: Complex64, c: usize) -> BandAverageResult<f64> {
    let mut estimate = vec![Complex64::new(0.0, 0.0); c * c];
    estimate[0] = value;
    BandAverageResult {
        config: EstimatorConfig::new(kind, d, 2.0, target, xhat, tau),
        components: c,
        estimate,
        std_error: vec![0.1; c * c],
        nodes: 1,
        samples: 1,
        seeds: vec![1],
    }
}

#[test]
fn normalization_examples() {
    let one = Complex64::new(1.0, 0.0);
    let ac3 = result(WaveKind::Acoustic, 3, Target::Covariance, vec![0.0, 0.0, 1.0], 0.0, one, 1);
    let data = normalize(&[ac3], WaveKind::Acoustic, 3, Target::Covariance).unwrap();
    assert!((data.values[0][0].re - 16.0 * PI * PI).abs() < 1e-10);

    let ac2 = result(WaveKind::Acoustic, 2, Target::Covariance, vec![1.0, 0.0], 0.0, one, 1);
    let bi2 = result(WaveKind::Biharmonic, 2, Target::Covariance, vec![1.0, 0.0], 0.0, one, 1);
    let a = normalize(&[ac2], WaveKind::Acoustic, 2, Target::Covariance).unwrap().values[0][0];
    let b = normalize(&[bi2], WaveKind::Biharmonic, 2, Target::Covariance).unwrap().values[0][0];
    assert!((b - a * 4.0).norm() < 1e-10);

    let em = result(WaveKind::Electromagnetic, 3, Target::Relation, vec![0.0, 0.0, 1.0], 0.0, one, 3);
    let v = normalize(&[em], WaveKind::Electromagnetic, 3, Target::Relation).unwrap().values[0][0];
    assert!((v.re + 16.0 * PI * PI).abs() < 1e-9 && v.im.abs() < 1e-9);

    let mismatched = result(WaveKind::Acoustic, 2, Target::Relation, vec![1.0, 0.0], 0.0, one, 1);
    assert!(matches!(
        normalize(&[mismatched.clone()], WaveKind::Acoustic, 2, Target::Covariance),
        Err(Error::Mismatch(_))
    ));
    assert!(normalize(&[mismatched], WaveKind::Biharmonic, 2, Target::Relation).is_err());
}

#[test]
fn elastic_normalization_rescales_the_shift_axis() {
    let kind = WaveKind::elastic(0.0, 4.0).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let rows: Vec<_> = [0.0, 1.0, 2.0]
        .iter()
        .map(|&t| result(kind, 2, Target::Covariance, vec![1.0, 0.0], t, one, 2))
        .collect();
    let data = normalize(&rows, kind, 2, Target::Covariance).unwrap();
    // c_s = µ^{-1/2} = 0.5.
    assert_eq!(data.shifts, vec![0.0, 0.5, 1.0]);
}

#[test]
fn normalize_groups_by_shift_and_direction() {
    let dirs = DirectionSet::<f64>::circle(4).unwrap();
    let mut rows = Vec::new();
    for t in [0.0, 0.5] {
        for x in dirs.iter() {
            rows.push(result(WaveKind::Acoustic, 2, Target::Covariance, x.to_vec(), t, Complex64::new(t + x[0], x[1]), 1));
        }
    }
    rows.reverse();
    let data = normalize(&rows, WaveKind::Acoustic, 2, Target::Covariance).unwrap();
    assert_eq!(data.shifts, vec![0.0, 0.5]);
    assert_eq!(data.directions.len(), 4);
    assert!(normalize(&rows[1..], WaveKind::Acoustic, 2, Target::Covariance).is_err());
}

#[test]
fn error_metrics() {
    let grid = target_grid();
    let truth = StrengthGrid::from_shapes(grid, &[bump_at(0.0, 0.0)]).unwrap();
    let e = recovery_error(&truth, &truth).unwrap();
    assert_eq!(e.relative_l2(), 0.0);
    assert!(!e.degenerate);

    let zero = StrengthGrid::zeros(grid, 1);
    let e = recovery_error(&truth, &zero).unwrap();
    assert!(e.degenerate);
    let l2: f64 = truth.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell_volume();
    assert!((e.relative_l2() - l2.sqrt()).abs() < 1e-12);

    let other = StrengthGrid::zeros(Grid::new(2, 32, TAU).unwrap(), 1);
    assert!(recovery_error(&truth, &other).is_err());
}

#[test]
fn matrix_metrics_are_per_entry_and_frobenius() {
    let grid = Grid::new(2, 32, TAU).unwrap();
    let b = bump_at(0.0, 0.0);
    let z = Shape::zero();
    let m = MatrixStrengths::from_shapes(grid, 2.0, &[b.clone(), z.clone(), z.clone(), b.scaled(2.0, 0.0)], &[z.clone(), z.clone(), z.clone(), z]).unwrap();
    let truth = StrengthGrid::covariance_of(&Strengths::Matrix(m));
    let mut est = truth.clone();
    let n = grid.len();
    for v in &mut est.values[..n] {
        *v *= 1.1;
    }
    let e = recovery_error(&est, &truth).unwrap();
    assert!((e.entries[0].relative_l2 - 0.1).abs() < 1e-12);
    assert!(e.entries[1].degenerate && e.entries[1].relative_l2 == 0.0);
    assert!(e.entries[3].relative_l2 < 1e-15);
    assert!((e.frobenius_relative - 0.1 / 5f64.sqrt()).abs() < 1e-12);
    assert!((e.worst_entry() - 0.1).abs() < 1e-12);
}

#[test]
fn report_renders_metrics() {
    let shape = bump_at(0.3, -0.2);
    let grid = target_grid();
    let data = analytic(&shape, Target::Covariance, 16, shifts(17, 8.0));
    let r = invert_polar_fourier(&data, &grid, Window::RaisedCosine).unwrap();
    let truth = StrengthGrid::from_shapes(grid, &[shape]).unwrap();
    let err = recovery_error(&r.strengths, &truth).unwrap();
    let text = RecoveryReport::new("demo", &r, Some(err)).render();
    assert!(text.starts_with("demo [covariance] window=raised-cosine"));
    assert!(text.contains("relative_l2="));
}
