use num_complex::Complex;

use super::grid::StrengthGrid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Error of one entry of a reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryError<T> {
    /// `‖â - a‖₂ / ‖a‖₂`, or the absolute `L²` error when the truth vanishes.
    pub relative_l2: T,
    pub max_abs: T,
    /// Set when the truth is identically zero and `relative_l2` is absolute.
    pub degenerate: bool,
}

/// Error summary of a reconstruction against a known strength.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryError<T> {
    /// Per entry, row-major.
    pub entries: Vec<EntryError<T>>,
    /// Relative `L²` error of the whole matrix field in the Frobenius norm.
    pub frobenius_relative: T,
    pub max_abs: T,
    pub degenerate: bool,
}

impl<T: Real> RecoveryError<T> {
    /// Relative `L²` error of a scalar reconstruction.
    pub fn relative_l2(&self) -> T {
        self.frobenius_relative
    }

    pub fn worst_entry(&self) -> T {
        self.entries.iter().fold(T::zero(), |a, e| a.max(e.relative_l2))
    }
}

fn norms<T: Real>(a: &[Complex<T>], b: &[Complex<T>], cell: T) -> (T, T, T) {
    let mut diff = T::zero();
    let mut truth = T::zero();
    let mut max = T::zero();
    for (x, y) in a.iter().zip(b) {
        let e = (*x - *y).norm();
        diff += e * e;
        truth += y.norm_sqr();
        max = max.max(e);
    }
    ((diff * cell).sqrt(), (truth * cell).sqrt(), max)
}

/// Compares a reconstruction with the true strength on the same grid.
pub fn recovery_error<T: Real>(estimate: &StrengthGrid<T>, truth: &StrengthGrid<T>) -> Result<RecoveryError<T>> {
    estimate.grid.check_same(&truth.grid)?;
    if estimate.components != truth.components {
        return Err(Error::Mismatch(format!(
            "{}-component reconstruction compared with {}-component truth",
            estimate.components, truth.components
        )));
    }
    let cell = truth.grid.cell_volume();
    let tiny = T::epsilon();
    let mut entries = Vec::with_capacity(truth.entries());
    let mut diff_sq = T::zero();
    let mut truth_sq = T::zero();
    let mut max_abs = T::zero();
    for e in 0..truth.entries() {
        let (diff, norm, max) = norms(estimate.entry(e), truth.entry(e), cell);
        let degenerate = norm <= tiny;
        entries.push(EntryError {
            relative_l2: if degenerate { diff } else { diff / norm },
            max_abs: max,
            degenerate,
        });
        diff_sq += diff * diff;
        truth_sq += norm * norm;
        max_abs = max_abs.max(max);
    }
    let degenerate = truth_sq.sqrt() <= tiny;
    let frobenius_relative = if degenerate { diff_sq.sqrt() } else { (diff_sq / truth_sq).sqrt() };
    Ok(RecoveryError {
        entries,
        frobenius_relative,
        max_abs,
        degenerate,
    })
}
