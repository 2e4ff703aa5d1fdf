//! Experiment configuration: TOML schema, defaults and validation.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use gmig_core::field::{GaussianBump, Grid, MatrixStrengths, ScalarStrengths, Shape, Strengths};
use gmig_core::forward::DEFAULT_NYQUIST_FRACTION;
use gmig_core::recover::Window;
use gmig_core::waves::WaveKind;
use serde::{Deserialize, Serialize};

use crate::error::RunError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub grid: GridSpec,
    pub strengths: StrengthSpec,
    pub band: BandSpec,
    pub directions: DirectionSpec,
    #[serde(default)]
    pub mode: ModeSpec,
    pub recovery: RecoverySpec,
    #[serde(default)]
    pub run: RunSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindName {
    Acoustic,
    Biharmonic,
    Electromagnetic,
    Elastic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: KindName,
    pub dim: usize,
    pub order: f64,
    /// Regularization of the spectral density; `2π/L` when absent.
    pub delta: Option<f64>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub nodes: usize,
    pub extent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpSpec {
    pub center: Vec<f64>,
    pub width: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default)]
    pub phase: f64,
}

fn one() -> f64 {
    1.0
}

/// Matrix entry `(row, col)` given as a sum of bumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub row: usize,
    pub col: usize,
    pub bumps: Vec<BumpSpec>,
}

/// Analytic strengths: bump sums for scalar models, per-entry bump sums for
/// vector models. Unlisted entries are zero.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrengthSpec {
    #[serde(default)]
    pub covariance: Vec<BumpSpec>,
    #[serde(default)]
    pub relation: Vec<BumpSpec>,
    #[serde(default)]
    pub covariance_entries: Vec<EntrySpec>,
    #[serde(default)]
    pub relation_entries: Vec<EntrySpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSpec {
    /// Band starts; every value is estimated, the largest feeds recovery.
    pub q: Vec<f64>,
    #[serde(default = "default_step")]
    pub step: f64,
    /// Largest shift; shifts are `tau_max · i / (shift_count - 1)`.
    pub tau_max: f64,
    pub shift_count: usize,
}

fn default_step() -> f64 {
    gmig_core::estimate::DEFAULT_BAND_STEP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionSpec {
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModeSpec {
    /// Band averages per realization, averaged over `realizations` draws.
    Single {
        #[serde(default = "one_usize")]
        realizations: usize,
    },
    /// High-frequency ensemble mean at one evaluation frequency.
    Ensemble { realizations: usize, kappa_eval: f64 },
}

fn one_usize() -> usize {
    1
}

impl Default for ModeSpec {
    fn default() -> Self {
        ModeSpec::Single { realizations: 1 }
    }
}

impl ModeSpec {
    pub fn realizations(&self) -> usize {
        match *self {
            ModeSpec::Single { realizations } | ModeSpec::Ensemble { realizations, .. } => realizations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowName {
    RaisedCosine,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecoverySpec {
    pub nodes: usize,
    pub extent: f64,
    #[serde(default = "default_window")]
    pub window: WindowName,
}

fn default_window() -> WindowName {
    WindowName::RaisedCosine
}

/// Which realizations the sample stage writes to disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SaveRealizations {
    None,
    First,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default = "default_save")]
    pub save_realizations: SaveRealizations,
    /// Every how many band nodes a far-field record is written.
    #[serde(default = "default_stride")]
    pub farfield_stride: usize,
}

fn default_output() -> PathBuf {
    PathBuf::from("gmig-out")
}

fn default_save() -> SaveRealizations {
    SaveRealizations::First
}

fn default_stride() -> usize {
    64
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            output: default_output(),
            save_realizations: default_save(),
            farfield_stride: default_stride(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> RunError {
    RunError::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| invalid(format!("cannot parse configuration: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read configuration {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    pub fn kind(&self) -> Result<WaveKind<f64>, RunError> {
        let m = &self.model;
        match m.kind {
            KindName::Acoustic => Ok(WaveKind::Acoustic),
            KindName::Biharmonic => Ok(WaveKind::Biharmonic),
            KindName::Electromagnetic => Ok(WaveKind::Electromagnetic),
            KindName::Elastic => {
                let (Some(lambda), Some(mu)) = (m.lambda, m.mu) else {
                    return Err(invalid("elastic models need both lambda and mu"));
                };
                WaveKind::elastic(lambda, mu).map_err(|e| invalid(e.to_string()))
            }
        }
    }

    pub fn source_grid(&self) -> Result<Grid<f64>, RunError> {
        Grid::new(self.model.dim, self.grid.nodes, self.grid.extent).map_err(|e| invalid(e.to_string()))
    }

    pub fn target_grid(&self) -> Result<Grid<f64>, RunError> {
        Grid::new(self.model.dim, self.recovery.nodes, self.recovery.extent).map_err(|e| invalid(e.to_string()))
    }

    pub fn delta(&self) -> f64 {
        self.model.delta.unwrap_or(TAU / self.grid.extent)
    }

    pub fn window(&self) -> Window {
        match self.recovery.window {
            WindowName::RaisedCosine => Window::RaisedCosine,
            WindowName::None => Window::None,
        }
    }

    pub fn shifts(&self) -> Vec<f64> {
        let b = &self.band;
        let last = (b.shift_count - 1).max(1) as f64;
        (0..b.shift_count).map(|i| b.tau_max * i as f64 / last).collect()
    }

    /// Largest band start, used for recovery.
    pub fn recovery_q(&self) -> f64 {
        self.band.q.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Covariance and relation shapes: one for scalar models, `d²` row-major
    /// entries for vector models.
    pub fn shapes(&self) -> Result<(Vec<Shape<f64>>, Vec<Shape<f64>>), RunError> {
        let d = self.model.dim;
        let bumps = |list: &[BumpSpec]| -> Result<Shape<f64>, RunError> {
            let mut out = Vec::with_capacity(list.len());
            for b in list {
                if b.center.len() != d {
                    return Err(invalid(format!(
                        "bump centre {:?} has {} coordinates, model dimension is {d}",
                        b.center,
                        b.center.len()
                    )));
                }
                out.push(
                    GaussianBump::new(b.center.clone(), b.width, b.amplitude, b.phase)
                        .map_err(|e| invalid(e.to_string()))?,
                );
            }
            Ok(Shape::from_bumps(out))
        };
        let s = &self.strengths;
        if self.kind()?.is_vector() {
            if !s.covariance.is_empty() || !s.relation.is_empty() {
                return Err(invalid("vector models take covariance_entries/relation_entries, not scalar bump lists"));
            }
            let entries = |list: &[EntrySpec]| -> Result<Vec<Shape<f64>>, RunError> {
                let mut out = vec![Shape::zero(); d * d];
                for e in list {
                    if e.row >= d || e.col >= d {
                        return Err(invalid(format!("matrix entry ({}, {}) outside a {d}x{d} matrix", e.row, e.col)));
                    }
                    let slot = &mut out[e.row * d + e.col];
                    if !slot.is_zero() {
                        return Err(invalid(format!("matrix entry ({}, {}) given twice", e.row, e.col)));
                    }
                    *slot = bumps(&e.bumps)?;
                }
                Ok(out)
            };
            Ok((entries(&s.covariance_entries)?, entries(&s.relation_entries)?))
        } else {
            if !s.covariance_entries.is_empty() || !s.relation_entries.is_empty() {
                return Err(invalid("scalar models take covariance/relation bump lists, not matrix entries"));
            }
            Ok((vec![bumps(&s.covariance)?], vec![bumps(&s.relation)?]))
        }
    }

    /// Strengths sampled on `grid`.
    pub fn strengths_on(&self, grid: Grid<f64>) -> Result<Strengths<f64>, RunError> {
        let (c, r) = self.shapes()?;
        let out = if self.kind()?.is_vector() {
            MatrixStrengths::from_shapes(grid, self.model.order, &c, &r).map(Strengths::Matrix)
        } else {
            ScalarStrengths::from_shapes(grid, self.model.order, &c[0], &r[0]).map(Strengths::Scalar)
        };
        out.map_err(|e| invalid(e.to_string()))
    }

    /// Static checks that need no sampling.
    pub fn validate(&self) -> Result<(), RunError> {
        let kind = self.kind()?;
        let d = self.model.dim;
        if !(2..=3).contains(&d) {
            return Err(invalid(format!("dimension must be 2 or 3, got {d}")));
        }
        if kind == WaveKind::Electromagnetic && d != 3 {
            return Err(invalid("the electromagnetic model requires d = 3"));
        }
        let (lo, hi) = kind.order_interval(d);
        let m = self.model.order;
        if !(m > lo && m <= hi) {
            let interval = match kind {
                WaveKind::Acoustic | WaveKind::Elastic { .. } => "(d-4, d]",
                WaveKind::Biharmonic => "(d-6, d]",
                WaveKind::Electromagnetic => "(-1, 3]",
            };
            return Err(invalid(format!(
                "order m = {m} is outside the admissible interval {interval} = ({lo}, {hi}] for the {} model with d = {d}",
                kind.name()
            )));
        }
        if let Some(delta) = self.model.delta {
            if !(delta > 0.0) {
                return Err(invalid(format!("delta must be positive, got {delta}")));
            }
        }
        let source = self.source_grid()?;
        let target = self.target_grid()?;
        let b = &self.band;
        if b.q.is_empty() {
            return Err(invalid("band.q needs at least one value"));
        }
        if let Some(q) = b.q.iter().find(|q| !(**q > 0.0)) {
            return Err(invalid(format!("band starts must be positive, got {q}")));
        }
        if !(b.step > 0.0 && b.step <= gmig_core::forward::MAX_BAND_STEP) {
            return Err(invalid(format!(
                "band step must lie in (0, {}], got {}",
                gmig_core::forward::MAX_BAND_STEP,
                b.step
            )));
        }
        if b.shift_count < 2 || !(b.tau_max > 0.0) {
            return Err(invalid("recovery needs shift_count >= 2 and tau_max > 0"));
        }
        if self.directions.count < 2 {
            return Err(invalid("at least two directions are needed"));
        }
        if self.directions.count % 2 == 1 {
            return Err(invalid(format!(
                "direction count {} is odd; relation recovery needs a negation-closed set, use an even count",
                self.directions.count
            )));
        }
        let reach = match &self.mode {
            ModeSpec::Single { realizations } => {
                if *realizations == 0 {
                    return Err(invalid("at least one realization is needed"));
                }
                2.0 * self.recovery_q() + b.tau_max
            }
            ModeSpec::Ensemble { realizations, kappa_eval } => {
                if *realizations < 2 {
                    return Err(invalid("ensemble mode needs at least two realizations"));
                }
                if !(*kappa_eval > 0.0) {
                    return Err(invalid("kappa_eval must be positive"));
                }
                kappa_eval + b.tau_max
            }
        };
        let wavenumber = match kind.speeds() {
            // Compressional and shear wavenumbers scale with 1/√(λ+2µ) and 1/√µ.
            Some(s) => reach * s.kappa_s(1.0).max(s.kappa_p(1.0)),
            None => reach,
        };
        let limit = DEFAULT_NYQUIST_FRACTION * std::f64::consts::PI / source.spacing();
        if wavenumber > limit {
            return Err(invalid(format!(
                "highest wavenumber {wavenumber} exceeds the source-grid budget {limit}; refine the grid or lower Q / tau_max"
            )));
        }
        let recovered_max = match kind.speeds() {
            Some(s) => b.tau_max * s.kappa_s(1.0),
            None => b.tau_max,
        };
        if recovered_max * target.spacing() > std::f64::consts::PI {
            return Err(invalid(format!(
                "recovered frequencies up to {recovered_max} exceed the target-grid Nyquist {}",
                std::f64::consts::PI / target.spacing()
            )));
        }
        if self.run.farfield_stride == 0 {
            return Err(invalid("farfield_stride must be positive"));
        }
        self.shapes()?;
        Ok(())
    }
}
