//! Multidimensional FFT helpers and a chirp-z transform for evaluating
//! Fourier sums on uniformly spaced frequency rays.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Real;

/// In-place unnormalized FFT over every axis of a row-major cube with `n`
/// points per axis. `inverse` selects the `e^{+i}` kernel.
pub fn fft_nd<T: Real>(data: &mut [Complex<T>], n: usize, d: usize, inverse: bool) {
    assert_eq!(data.len(), n.pow(d as u32), "cube size does not match n^d");
    let mut planner = FftPlanner::<T>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    let mut scratch = vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()];
    // Last axis is contiguous.
    fft.process_with_scratch(data, &mut scratch);
    let mut line = vec![Complex::new(T::zero(), T::zero()); n];
    for axis in 0..d.saturating_sub(1) {
        let stride = n.pow((d - 1 - axis) as u32);
        let block = stride * n;
        for base in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[start + k * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (k, v) in line.iter().enumerate() {
                    data[start + k * stride] = *v;
                }
            }
        }
    }
}

/// Chirp-z transform
/// `out_j = Σ_{k<n} x_k exp(-i (a + j b)(c + k h))`, `j < m`,
/// evaluated by Bluestein's convolution in `O((n + m) log(n + m))`.
pub struct Czt<T: Real> {
    n: usize,
    m: usize,
    size: usize,
    pre: Vec<Complex<T>>,
    post: Vec<Complex<T>>,
    kernel: Vec<Complex<T>>,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

fn unit_phase<T: Real>(phase: f64) -> Complex<T> {
    let (s, c) = phase.sin_cos();
    Complex::new(T::lit(c), T::lit(s))
}

impl<T: Real> Czt<T> {
    /// Transform of `n` samples at positions `c + k h` onto `m` frequencies
    /// `a + j b`.
    pub fn new(n: usize, m: usize, a: f64, b: f64, c: f64, h: f64) -> Self {
        assert!(n > 0 && m > 0, "chirp-z needs non-empty input and output");
        let size = (n + m - 1).next_power_of_two();
        let beta = b * h;
        let pre = (0..n)
            .map(|k| {
                let kf = k as f64;
                unit_phase(-(a * kf * h + 0.5 * beta * kf * kf))
            })
            .collect();
        let post = (0..m)
            .map(|j| {
                let jf = j as f64;
                unit_phase(-(a * c + jf * b * c + 0.5 * beta * jf * jf))
            })
            .collect();
        let mut planner = FftPlanner::<T>::new();
        let forward = planner.plan_fft_forward(size);
        let inverse = planner.plan_fft_inverse(size);
        let scale = T::from_usize_lossy(size).recip();
        let mut kernel = vec![Complex::new(T::zero(), T::zero()); size];
        for (idx, slot) in kernel.iter_mut().enumerate() {
            // Lag `idx` for idx < m, lag `idx - size` for the wrapped negatives.
            let lag = if idx < m {
                Some(idx as f64)
            } else if idx + n > size {
                Some(idx as f64 - size as f64)
            } else {
                None
            };
            if let Some(l) = lag {
                *slot = unit_phase::<T>(0.5 * beta * l * l) * scale;
            }
        }
        forward.process(&mut kernel);
        Self {
            n,
            m,
            size,
            pre,
            post,
            kernel,
            forward,
            inverse,
        }
    }

    pub fn input_len(&self) -> usize {
        self.n
    }

    pub fn output_len(&self) -> usize {
        self.m
    }

    /// Length of the work buffer needed per row by [`Czt::apply_rows`].
    pub fn work_len(&self) -> usize {
        self.size
    }

    /// Transforms consecutive rows of `input` (each `n` long) into consecutive
    /// rows of `output` (each `m` long).
    pub fn apply_rows(&self, input: &[Complex<T>], output: &mut [Complex<T>]) {
        let rows = input.len() / self.n;
        assert_eq!(rows * self.n, input.len(), "input is not a whole number of rows");
        assert_eq!(rows * self.m, output.len(), "output size does not match row count");
        if rows == 0 {
            return;
        }
        let zero = Complex::new(T::zero(), T::zero());
        let mut work = vec![zero; rows * self.size];
        for (row, buf) in work.chunks_exact_mut(self.size).enumerate() {
            let src = &input[row * self.n..(row + 1) * self.n];
            for ((w, x), p) in buf.iter_mut().zip(src).zip(&self.pre) {
                *w = *x * *p;
            }
        }
        self.forward.process(&mut work);
        for buf in work.chunks_exact_mut(self.size) {
            for (w, k) in buf.iter_mut().zip(&self.kernel) {
                *w *= *k;
            }
        }
        self.inverse.process(&mut work);
        for (buf, dst) in work.chunks_exact(self.size).zip(output.chunks_exact_mut(self.m)) {
            for ((o, w), p) in dst.iter_mut().zip(buf).zip(&self.post) {
                *o = *w * *p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(x: &[Complex<f64>], m: usize, a: f64, b: f64, c: f64, h: f64) -> Vec<Complex<f64>> {
        (0..m)
            .map(|j| {
                let f = a + j as f64 * b;
                x.iter()
                    .enumerate()
                    .map(|(k, v)| v * Complex::from_polar(1.0, -f * (c + k as f64 * h)))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn chirp_matches_direct_sum() {
        let n = 37;
        let m = 53;
        let x: Vec<Complex<f64>> = (0..2 * n)
            .map(|k| Complex::new((k as f64 * 0.37).sin(), (k as f64 * 1.3).cos()))
            .collect();
        let (a, b, c, h) = (3.1, 0.25, -1.7, 0.09);
        let czt = Czt::<f64>::new(n, m, a, b, c, h);
        let mut out = vec![Complex::new(0.0, 0.0); 2 * m];
        czt.apply_rows(&x, &mut out);
        for row in 0..2 {
            let expect = direct(&x[row * n..(row + 1) * n], m, a, b, c, h);
            for (o, e) in out[row * m..(row + 1) * m].iter().zip(&expect) {
                assert!((o - e).norm() < 1e-12 * (1.0 + e.norm()), "{o} vs {e}");
            }
        }
    }

    #[test]
    fn nd_fft_roundtrip_and_impulse() {
        let n = 8;
        let mut data = vec![Complex::new(0.0_f64, 0.0); n * n * n];
        data[1 * n * n + 2 * n + 3] = Complex::new(1.0, 0.0);
        let orig = data.clone();
        fft_nd(&mut data, n, 3, false);
        let k = (2usize, 5usize, 1usize);
        let phase = -2.0 * std::f64::consts::PI * (k.0 * 1 + k.1 * 2 + k.2 * 3) as f64 / n as f64;
        let v = data[k.0 * n * n + k.1 * n + k.2];
        assert!((v - Complex::from_polar(1.0, phase)).norm() < 1e-13);
        fft_nd(&mut data, n, 3, true);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a / (n * n * n) as f64 - b).norm() < 1e-14);
        }
    }
}
