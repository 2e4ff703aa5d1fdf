//! Convergence sweeps along one configuration axis with paired seeds.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use gmig_core::io::write_trace_csv;

use crate::config::{ExperimentConfig, ModeSpec};
use crate::error::RunError;
use crate::pipeline::{run, Stage, TRACE_HEADER};

/// Minimum number of values in a sweep.
pub const MIN_SWEEP_VALUES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Band start `Q` (one value per run).
    Q,
    /// Realization count `M`.
    Realizations,
    /// Direction count.
    Directions,
    /// Largest shift, keeping the shift spacing fixed.
    TauMax,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Q => "q",
            SweepAxis::Realizations => "realizations",
            SweepAxis::Directions => "directions",
            SweepAxis::TauMax => "tau_max",
        }
    }

    pub fn parse(s: &str) -> Result<Self, RunError> {
        match s {
            "q" | "Q" => Ok(SweepAxis::Q),
            "m" | "M" | "realizations" => Ok(SweepAxis::Realizations),
            "directions" => Ok(SweepAxis::Directions),
            "tau_max" | "tau-max" => Ok(SweepAxis::TauMax),
            _ => Err(RunError::Config(format!(
                "unknown sweep axis {s:?}; expected q, realizations, directions or tau_max"
            ))),
        }
    }

    fn apply(self, base: &ExperimentConfig, value: f64) -> Result<ExperimentConfig, RunError> {
        let mut c = base.clone();
        let count = |v: f64| -> Result<usize, RunError> {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(RunError::Config(format!("{} values must be positive integers, got {v}", self.name())))
            }
        };
        match self {
            SweepAxis::Q => c.band.q = vec![value],
            SweepAxis::Realizations => {
                let m = count(value)?;
                match &mut c.mode {
                    ModeSpec::Single { realizations } | ModeSpec::Ensemble { realizations, .. } => *realizations = m,
                }
            }
            SweepAxis::Directions => c.directions.count = count(value)?,
            SweepAxis::TauMax => {
                let spacing = base.band.tau_max / (base.band.shift_count - 1) as f64;
                let steps = (value / spacing).round();
                if (steps * spacing - value).abs() > 1e-9 * value.max(1.0) {
                    return Err(RunError::Config(format!(
                        "tau_max {value} is not a multiple of the shift spacing {spacing}"
                    )));
                }
                c.band.tau_max = value;
                c.band.shift_count = steps as usize + 1;
            }
        }
        Ok(c)
    }
}

/// Outcome of a sweep: per-value errors and the trace file.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub trace: PathBuf,
    pub rows: Vec<Vec<f64>>,
}

/// Runs the pipeline once per value with the same root seed, each into
/// `<output>/sweep_<axis>/<value>`, and writes `<output>/sweep_<axis>.csv`.
pub fn sweep(base: &ExperimentConfig, axis: SweepAxis, values: &[f64]) -> Result<SweepOutcome, RunError> {
    if values.len() < MIN_SWEEP_VALUES {
        return Err(RunError::Config(format!(
            "a sweep needs at least {MIN_SWEEP_VALUES} values along {}, got {}",
            axis.name(),
            values.len()
        )));
    }
    let configs = values
        .iter()
        .map(|&v| {
            let mut c = axis.apply(base, v)?;
            c.run.output = base.run.output.join(format!("sweep_{}", axis.name())).join(v.to_string());
            c.validate()?;
            Ok(c)
        })
        .collect::<Result<Vec<_>, RunError>>()?;
    let mut rows = Vec::with_capacity(values.len());
    for (c, &v) in configs.iter().zip(values) {
        let outcome = run(c, Stage::Configure)?;
        let s = outcome.manifest.summary.expect("complete runs carry a summary");
        rows.push(vec![
            v,
            s.estimate_error_covariance,
            s.estimate_error_relation,
            s.recovery_error_covariance,
            s.recovery_error_relation,
        ]);
    }
    std::fs::create_dir_all(&base.run.output)?;
    let trace = base.run.output.join(format!("sweep_{}.csv", axis.name()));
    let w = BufWriter::new(File::create(&trace)?);
    write_trace_csv(w, &TRACE_HEADER, &rows).map_err(RunError::stage("sweep"))?;
    Ok(SweepOutcome { trace, rows })
}
