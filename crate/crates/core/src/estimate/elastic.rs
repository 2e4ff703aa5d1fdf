use crate::scalar::Real;

/// Polarization helpers `v_{p,j} = x̂_j x̂` and `v_{s,j} = e_j - v_{p,j}`
/// for `j < d`.
pub fn polarization_vectors<T: Real>(xhat: &[T]) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let d = xhat.len();
    let vp: Vec<Vec<T>> = (0..d).map(|j| xhat.iter().map(|&x| xhat[j] * x).collect()).collect();
    let vs = vp
        .iter()
        .enumerate()
        .map(|(j, v)| {
            v.iter()
                .enumerate()
                .map(|(k, &x)| if k == j { T::one() - x } else { -x })
                .collect()
        })
        .collect();
    (vp, vs)
}

/// Row-wise reshape of a `rows × cols` row-major matrix into a vector.
pub fn reshape<T: Real>(matrix: &[T], rows: usize, cols: usize) -> Vec<T> {
    assert_eq!(matrix.len(), rows * cols, "matrix size");
    matrix.to_vec()
}

fn outer<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Reshaped coefficient vectors `ℛ(v_{a,j} v_{b,l}ᵀ)` for
/// `(a, b) ∈ {(p,p), (p,s), (s,p), (s,s)}`. Their sum is `ℛ(e_j e_lᵀ)`.
pub fn reshaped_coefficients<T: Real>(xhat: &[T], j: usize, l: usize) -> [Vec<T>; 4] {
    let d = xhat.len();
    let (vp, vs) = polarization_vectors(xhat);
    [
        reshape(&outer(&vp[j], &vp[l]), d, d),
        reshape(&outer(&vp[j], &vs[l]), d, d),
        reshape(&outer(&vs[j], &vp[l]), d, d),
        reshape(&outer(&vs[j], &vs[l]), d, d),
    ]
}
