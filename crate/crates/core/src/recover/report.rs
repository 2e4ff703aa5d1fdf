use std::fmt::Write;

use super::invert::Reconstruction;
use super::metrics::RecoveryError;
use crate::scalar::Real;

/// Text summary of one reconstruction and, when the truth is known, its
/// error.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryReport<T> {
    pub label: String,
    pub target: &'static str,
    pub window: &'static str,
    pub tau_max: T,
    pub imag_residual: T,
    pub propagated_error: T,
    pub error: Option<RecoveryError<T>>,
}

impl<T: Real> RecoveryReport<T> {
    pub fn new(label: impl Into<String>, recon: &Reconstruction<T>, error: Option<RecoveryError<T>>) -> Self {
        Self {
            label: label.into(),
            target: recon.target.name(),
            window: recon.window.name(),
            tau_max: recon.tau_max,
            imag_residual: recon.imag_residual,
            propagated_error: recon.propagated_error,
            error,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} [{}] window={} tau_max={:.4} imag_residual={:.3e} propagated_se={:.3e}",
            self.label,
            self.target,
            self.window,
            self.tau_max.as_f64(),
            self.imag_residual.as_f64(),
            self.propagated_error.as_f64()
        );
        if let Some(err) = &self.error {
            let _ = writeln!(
                out,
                "  relative_l2={:.4} max_abs={:.4e}{}",
                err.frobenius_relative.as_f64(),
                err.max_abs.as_f64(),
                if err.degenerate { " (zero truth, absolute)" } else { "" }
            );
            if err.entries.len() > 1 {
                for (e, entry) in err.entries.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  entry {e}: relative_l2={:.4} max_abs={:.4e}{}",
                        entry.relative_l2.as_f64(),
                        entry.max_abs.as_f64(),
                        if entry.degenerate { " (zero truth, absolute)" } else { "" }
                    );
                }
            }
        }
        out
    }
}
