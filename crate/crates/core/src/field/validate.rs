use super::strengths::PSD_TOLERANCE;
use super::{MatrixStrengths, ScalarStrengths, Strengths};
use crate::linalg::symmetric_eigen;
use crate::scalar::Real;

/// Relative jump between neighbouring nodes that triggers a smoothness warning.
pub const JUMP_WARNING: f64 = 0.5;

/// Outcome of [`validate_strengths`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// Admissible at every node and zero in the boundary margin.
    pub passed: bool,
    /// Per-node admissibility margin: `a^c - |a^r|` (scalar) or the smallest
    /// eigenvalue of the augmented matrix (matrix).
    pub margins: Vec<f64>,
    /// Nodes whose margin is below `-1e-10 · trace`.
    pub inadmissible: Vec<usize>,
    /// Nodes in the boundary margin carrying nonzero strength.
    pub support_violations: Vec<usize>,
    /// Node pairs `(i, j)` of axis neighbours whose relative jump exceeds 0.5.
    pub smoothness_warnings: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn worst_margin(&self) -> Option<(usize, f64)> {
        self.margins
            .iter()
            .cloned()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn summary(&self) -> String {
        let worst = self
            .worst_margin()
            .map(|(n, m)| format!("node {n}: {m:e}"))
            .unwrap_or_else(|| "n/a".into());
        format!(
            "{}: worst margin {worst}; {} inadmissible node(s); {} support violation(s); {} smoothness warning(s)",
            if self.passed { "pass" } else { "fail" },
            self.inadmissible.len(),
            self.support_violations.len(),
            self.smoothness_warnings.len()
        )
    }
}

/// Admissibility margins, support check and smoothness warnings.
pub fn validate_strengths<T: Real>(strengths: &Strengths<T>) -> ValidationReport {
    let grid = *strengths.grid();
    let (margins, traces, magnitude): (Vec<f64>, Vec<f64>, Vec<f64>) = match strengths {
        Strengths::Scalar(s) => scalar_margins(s),
        Strengths::Matrix(s) => matrix_margins(s),
    };
    let inadmissible: Vec<usize> = margins
        .iter()
        .zip(&traces)
        .enumerate()
        .filter(|(_, (&m, &t))| !m.is_finite() || m < -PSD_TOLERANCE * t.abs())
        .map(|(i, _)| i)
        .collect();
    let support_violations: Vec<usize> = (0..grid.len())
        .filter(|&i| grid.in_margin(i) && magnitude[i] != 0.0)
        .collect();
    let peak = magnitude.iter().cloned().fold(0.0, f64::max);
    let floor = 1e-8 * peak;
    let n = grid.nodes_per_axis();
    let d = grid.dim();
    let mut smoothness_warnings = Vec::new();
    for i in 0..grid.len() {
        let idx = grid.unflatten(i);
        for a in 0..d {
            if idx[a] + 1 >= n {
                continue;
            }
            let j = i + n.pow((d - 1 - a) as u32);
            let (u, v) = (magnitude[i], magnitude[j]);
            let big = u.max(v);
            if big > floor && (u - v).abs() > JUMP_WARNING * big {
                smoothness_warnings.push((i, j));
            }
        }
    }
    ValidationReport {
        passed: inadmissible.is_empty() && support_violations.is_empty(),
        margins,
        inadmissible,
        support_violations,
        smoothness_warnings,
    }
}

fn scalar_margins<T: Real>(s: &ScalarStrengths<T>) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = s.grid.len();
    let margins = (0..n).map(|i| s.margin(i).as_f64()).collect();
    let traces = (0..n).map(|i| s.augmented_trace(i).as_f64()).collect();
    let mags = (0..n)
        .map(|i| s.a_c[i].abs().as_f64().max(s.a_r[i].norm().as_f64()))
        .collect();
    (margins, traces, mags)
}

fn matrix_margins<T: Real>(s: &MatrixStrengths<T>) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = s.grid.len();
    let n2 = 2 * s.grid.dim();
    let mut margins = Vec::with_capacity(n);
    let mut traces = Vec::with_capacity(n);
    let mut mags = Vec::with_capacity(n);
    for node in 0..n {
        let mag = s
            .block_c(node)
            .iter()
            .chain(s.block_r(node))
            .map(|v| v.norm().as_f64())
            .fold(0.0, f64::max);
        let asym = s.asymmetry(node).as_f64();
        let margin = if mag == 0.0 {
            0.0
        } else if asym > PSD_TOLERANCE * mag {
            f64::NEG_INFINITY
        } else {
            2.0 * symmetric_eigen(n2, &s.real_covariance(node)).0[0]
        };
        margins.push(margin);
        traces.push(s.augmented_trace(node).as_f64());
        mags.push(mag);
    }
    (margins, traces, mags)
}
