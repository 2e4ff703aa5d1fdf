//! Small dense symmetric eigenproblems in double precision.

use nalgebra::{DMatrix, SymmetricEigen};

/// Eigenvalues (ascending) and column eigenvectors of a real symmetric
/// row-major `n×n` matrix.
pub fn symmetric_eigen(n: usize, data: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let m = DMatrix::from_row_slice(n, n, data);
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Symmetric square root `V diag(√λ) Vᵀ` (row-major) with eigenvalues below
/// zero clamped to zero. Returns the root and the smallest eigenvalue.
pub fn psd_sqrt(n: usize, data: &[f64]) -> (Vec<f64>, f64) {
    let (values, vectors) = symmetric_eigen(n, data);
    let mut root = vec![0.0; n * n];
    for (k, &lam) in values.iter().enumerate() {
        let s = lam.max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        for r in 0..n {
            let vr = vectors[(r, k)] * s;
            for c in 0..n {
                root[r * n + c] += vr * vectors[(c, k)];
            }
        }
    }
    (root, values[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_squares_back() {
        let a = [4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0];
        let (r, min) = psd_sqrt(3, &a);
        assert!(min > 0.0);
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| r[i * 3 + k] * r[k * 3 + j]).sum();
                assert!((v - a[i * 3 + j]).abs() < 1e-13);
            }
        }
    }
}
