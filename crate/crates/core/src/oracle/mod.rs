//! Dense reference implementations used to check the fast paths: exact
//! node-pair kernels, a dense-covariance sampler and a direct far-field sum.
//! These are deliberately slow and limited to small grids.

mod cholesky;
mod empirical;
mod farfield;
mod kernels;

pub use cholesky::{cholesky_sample, DenseSampler};
pub use empirical::EmpiricalKernels;
pub use farfield::brute_force_farfield;
pub use kernels::{dense_kernels, stationary_kernel, DenseKernelPair, MAX_DENSE_DIM, MAX_NODES_PER_AXIS};
