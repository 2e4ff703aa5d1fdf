use num_complex::Complex;

use super::band::check_nyquist;
use crate::error::{Error, Result};
use crate::fft::Czt;
use crate::field::{FieldRealization, Grid};
use crate::scalar::{cis, Real};

/// Rays with at most this many nodes are summed directly per frequency.
const DIRECT_RAY_LIMIT: usize = 4;

fn check_direction<T: Real>(grid: &Grid<T>, xhat: &[T]) -> Result<()> {
    if xhat.len() != grid.dim() {
        return Err(Error::Mismatch(format!(
            "direction has {} entries on a {}-dimensional grid",
            xhat.len(),
            grid.dim()
        )));
    }
    let n: T = xhat.iter().map(|&v| v * v).sum::<T>().sqrt();
    if (n - T::one()).abs() > T::lit(1e-10) {
        return Err(Error::Domain(format!("direction must be a unit vector (norm {n})")));
    }
    Ok(())
}

/// Trapezoid quadrature `h^d Σ_y f(y) e^{-iξ·y}` of each component at one
/// frequency vector, with separable phase tables.
pub fn source_fourier<T: Real>(f: &FieldRealization<T>, xi: &[T]) -> Result<Vec<Complex<T>>> {
    let grid = f.grid;
    let d = grid.dim();
    if xi.len() != d {
        return Err(Error::Mismatch(format!("frequency has {} entries, grid is {d}-dimensional", xi.len())));
    }
    let modulus = xi.iter().map(|&v| v * v).sum::<T>().sqrt();
    check_nyquist(modulus, grid.spacing(), T::one())?;
    let n = grid.nodes_per_axis();
    let tables: Vec<Vec<Complex<T>>> = xi
        .iter()
        .map(|&k| (0..n).map(|i| cis(-k * grid.coord(i))).collect())
        .collect();
    let vol = grid.cell_volume();
    let mut out = Vec::with_capacity(f.components);
    for c in 0..f.components {
        let values = f.component(c);
        let last = &tables[d - 1];
        let mut total = Complex::new(T::zero(), T::zero());
        for (row, chunk) in values.chunks_exact(n).enumerate() {
            let inner: Complex<T> = chunk.iter().zip(last).map(|(v, p)| v * p).sum();
            let mut phase = Complex::new(T::one(), T::zero());
            let mut rest = row;
            for a in (0..d - 1).rev() {
                phase *= tables[a][rest % n];
                rest /= n;
            }
            total += inner * phase;
        }
        out.push(total * vol);
    }
    Ok(out)
}

/// `f̂(κ_j x̂)` for `κ_j = κ0 + j Δκ`, `j < count`, for every component.
///
/// The last axis is transformed by a chirp-z transform per grid line; the
/// remaining axes are summed directly with recursively updated phases.
/// Returns `[component][j]`.
pub fn ray_fourier<T: Real>(
    f: &FieldRealization<T>,
    xhat: &[T],
    kappa0: T,
    dkappa: T,
    count: usize,
) -> Result<Vec<Vec<Complex<T>>>> {
    let grid = f.grid;
    check_direction(&grid, xhat)?;
    if count == 0 {
        return Ok(vec![Vec::new(); f.components]);
    }
    let top = kappa0.abs().max((kappa0 + dkappa * T::from_usize_lossy(count - 1)).abs());
    check_nyquist(top, grid.spacing(), T::one())?;
    if count <= DIRECT_RAY_LIMIT {
        let mut out = vec![Vec::with_capacity(count); f.components];
        for j in 0..count {
            let k = kappa0 + dkappa * T::from_usize_lossy(j);
            let xi: Vec<T> = xhat.iter().map(|&v| v * k).collect();
            for (c, v) in source_fourier(f, &xi)?.into_iter().enumerate() {
                out[c].push(v);
            }
        }
        return Ok(out);
    }
    let d = grid.dim();
    let n = grid.nodes_per_axis();
    let rows = grid.len() / n;
    let h = grid.spacing().as_f64();
    let origin = grid.coord(0).as_f64();
    let last = xhat[d - 1].as_f64();
    let czt = Czt::<T>::new(n, count, kappa0.as_f64() * last, dkappa.as_f64() * last, origin, h);

    // Projection of each remaining-axes index onto x̂.
    let projections: Vec<f64> = (0..rows)
        .map(|row| {
            let mut rest = row;
            let mut s = 0.0;
            for a in (0..d - 1).rev() {
                s += xhat[a].as_f64() * grid.coord(rest % n).as_f64();
                rest /= n;
            }
            s
        })
        .collect();

    let vol = grid.cell_volume();
    let k0 = kappa0.as_f64();
    let dk = dkappa.as_f64();
    let mut out = Vec::with_capacity(f.components);
    let mut lines = vec![Complex::new(T::zero(), T::zero()); rows * count];
    for c in 0..f.components {
        czt.apply_rows(f.component(c), &mut lines);
        let mut acc = vec![Complex::new(T::zero(), T::zero()); count];
        for (row, line) in lines.chunks_exact(count).enumerate() {
            let p = projections[row];
            let start = cis(T::lit(-k0 * p));
            let step = cis(T::lit(-dk * p));
            let mut phase = start;
            for (j, (a, v)) in acc.iter_mut().zip(line).enumerate() {
                *a += *v * phase;
                phase *= step;
                if j % 64 == 63 {
                    phase = cis(T::lit(-(k0 + (j + 1) as f64 * dk) * p));
                }
            }
        }
        out.push(acc.into_iter().map(|v| v * vol).collect());
    }
    Ok(out)
}
