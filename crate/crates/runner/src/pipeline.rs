//! The staged pipeline: configure, sample, far fields, estimate, recover,
//! report.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use gmig_core::estimate::{
    band_average, ensemble_limits, BandAverageResult, EstimatorConfig, Mode, Target,
};
use gmig_core::field::{
    validate_strengths, FieldRealization, ScalarGmigSampler, Shape, Strengths, VectorGmigSampler,
};
use gmig_core::forward::{
    farfield, DirectionSet, FarFieldRecord, FrequencyBand, RayCache, RealizationFarField,
};
use gmig_core::io::{write_band_csv, write_farfield_csv, write_slice_csv, write_trace_csv, Container, Precision};
use gmig_core::recover::{
    invert_polar_fourier, normalize, recovery_error, PolarFourierData, Reconstruction, RecoveryReport, StrengthGrid,
};
use gmig_core::seeds::derive_seed;
use gmig_core::waves::WaveKind;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, ModeSpec, SaveRealizations};
use crate::error::RunError;
use crate::manifest::{RunManifest, RunSummary, SeedEntry, StageRecord};

/// Pipeline stages in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Configure,
    Sample,
    FarField,
    Estimate,
    Recover,
    Report,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Configure,
        Stage::Sample,
        Stage::FarField,
        Stage::Estimate,
        Stage::Recover,
        Stage::Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Configure => "configure",
            Stage::Sample => "sample",
            Stage::FarField => "farfield",
            Stage::Estimate => "estimate",
            Stage::Recover => "recover",
            Stage::Report => "report",
        }
    }

    pub fn parse(name: &str) -> Result<Self, RunError> {
        Stage::ALL.into_iter().find(|s| s.name() == name).ok_or_else(|| {
            let names: Vec<_> = Stage::ALL.iter().map(|s| s.name()).collect();
            RunError::Config(format!("unknown stage {name:?}; expected one of {}", names.join(", ")))
        })
    }

    /// Stream identifier used with [`derive_seed`].
    pub fn stream(self) -> u64 {
        self as u64
    }
}

pub const CONFIG_FILE: &str = "config.toml";
pub const FARFIELD_FILE: &str = "farfield.csv";
pub const ESTIMATES_FILE: &str = "estimates.csv";
pub const REPORT_FILE: &str = "report.txt";
pub const TRACE_FILE: &str = "error_vs_q.csv";
const REALIZATION_DIR: &str = "realizations";

fn realization_file(i: usize) -> String {
    format!("{REALIZATION_DIR}/realization_{i:05}.gmig")
}

const TARGETS: [Target; 2] = [Target::Covariance, Target::Relation];

enum Sampler {
    Scalar(ScalarGmigSampler<f64>),
    Vector(VectorGmigSampler<f64>),
}

impl Sampler {
    fn draw(&self, seed: u64) -> FieldRealization<f64> {
        match self {
            Sampler::Scalar(s) => s.draw(seed),
            Sampler::Vector(s) => s.draw(seed),
        }
    }
}

/// Normalized data and errors for one band start.
struct BandOutcome {
    q: f64,
    estimate_error: [f64; 2],
    recon: [Reconstruction<f64>; 2],
    recon_error: [gmig_core::recover::RecoveryError<f64>; 2],
}

/// Relative L² distance between normalized estimates and the analytic
/// transforms of the truth shapes over the whole `(τ, x̂)` set.
fn estimate_error(data: &PolarFourierData<f64>, shapes: &[Shape<f64>]) -> f64 {
    let ndir = data.directions.len();
    let (mut num, mut den) = (0.0, 0.0);
    for (i, &tau) in data.shifts.iter().enumerate() {
        for j in 0..ndir {
            let xi: Vec<f64> = data.directions.get(j).iter().map(|v| v * tau).collect();
            for (e, shape) in shapes.iter().enumerate() {
                let truth = shape.fourier(&xi);
                num += (data.value(i, j)[e] - truth).norm_sqr();
                den += truth.norm_sqr();
            }
        }
    }
    if den > 0.0 {
        (num / den).sqrt()
    } else {
        num.sqrt()
    }
}

struct Pipeline<'c> {
    cfg: &'c ExperimentConfig,
    out: PathBuf,
    from: Stage,
    kind: WaveKind<f64>,
    manifest: RunManifest,
    config_hash: String,
    current: Stage,
}

impl<'c> Pipeline<'c> {
    fn writes(&self, stage: Stage) -> bool {
        stage >= self.from
    }

    fn record(&mut self, stage: Stage, seconds: f64, outputs: Vec<String>) {
        self.current = Stage::ALL.get(stage as usize + 1).copied().unwrap_or(Stage::Report);
        let status = if self.writes(stage) { "run" } else { "replayed" };
        self.manifest.stages.push(StageRecord {
            name: stage.name().into(),
            status: status.into(),
            seconds,
            outputs,
        });
    }

    fn seed(&self, stage: Stage, index: usize) -> u64 {
        derive_seed(self.cfg.run.seed, stage.stream(), index as u64)
    }

    fn configure(&mut self) -> Result<(Sampler, Strengths<f64>), RunError> {
        let start = Instant::now();
        self.cfg.validate()?;
        let strengths = self.cfg.strengths_on(self.cfg.source_grid()?)?;
        let report = validate_strengths(&strengths);
        if !report.inadmissible.is_empty() {
            return Err(RunError::Config(format!(
                "strengths violate admissibility (a_c >= |a_r| pointwise, augmented matrix PSD): {}",
                report.summary()
            )));
        }
        let delta = self.cfg.delta();
        let st = RunError::stage(Stage::Configure.name());
        let sampler = match &strengths {
            Strengths::Scalar(s) => Sampler::Scalar(ScalarGmigSampler::new(s, delta).map_err(st)?),
            Strengths::Matrix(s) => Sampler::Vector(VectorGmigSampler::new(s, delta).map_err(st)?),
        };
        let mut outputs = Vec::new();
        if self.writes(Stage::Configure) {
            let mut stored = self.cfg.clone();
            stored.run.output = PathBuf::from(".");
            std::fs::write(self.out.join(CONFIG_FILE), stored.to_toml())?;
            outputs.push(CONFIG_FILE.to_string());
        }
        self.record(Stage::Configure, start.elapsed().as_secs_f64(), outputs);
        Ok((sampler, strengths))
    }

    fn saves(&self, i: usize) -> bool {
        match self.cfg.run.save_realizations {
            SaveRealizations::None => false,
            SaveRealizations::First => i == 0,
            SaveRealizations::All => true,
        }
    }

    /// Realization `i`, loaded from disk when a later stage resumes and the
    /// container exists, drawn from its ledger seed otherwise.
    fn realization(&self, sampler: &Sampler, i: usize) -> Result<FieldRealization<f64>, RunError> {
        let path = self.out.join(realization_file(i));
        if !self.writes(Stage::Sample) && path.exists() {
            let c = Container::load(&path).map_err(RunError::stage(Stage::Sample.name()))?;
            return c.to_realization().map_err(RunError::stage(Stage::Sample.name()));
        }
        let field = sampler.draw(self.seed(Stage::Sample, i));
        if self.writes(Stage::Sample) && self.saves(i) {
            std::fs::create_dir_all(self.out.join(REALIZATION_DIR))?;
            Container::from_realization(&field, &self.kind, Precision::Double)
                .save(&path)
                .map_err(RunError::stage(Stage::Sample.name()))?;
        }
        Ok(field)
    }

    fn directions(&self) -> Result<DirectionSet<f64>, RunError> {
        DirectionSet::uniform(self.cfg.model.dim, self.cfg.directions.count)
            .map_err(RunError::stage(Stage::Configure.name()))
    }

    fn estimator(&self, target: Target, xhat: &[f64], tau: f64, q: f64) -> EstimatorConfig<f64> {
        let c = EstimatorConfig::new(self.kind, self.cfg.model.dim, self.cfg.model.order, target, xhat.to_vec(), tau)
            .with_band(q, self.cfg.band.step);
        match self.cfg.mode {
            ModeSpec::Single { .. } => c,
            ModeSpec::Ensemble { realizations, kappa_eval } => c.with_mode(Mode::Ensemble {
                realizations,
                kappa_eval,
            }),
        }
    }

    fn farfield_records(&self, field: &FieldRealization<f64>, dirs: &DirectionSet<f64>) -> Result<Vec<FarFieldRecord<f64>>, RunError> {
        let st = || RunError::stage(Stage::FarField.name());
        let freqs: Vec<f64> = match self.cfg.mode {
            ModeSpec::Single { .. } => {
                let band = FrequencyBand::new(self.cfg.recovery_q(), self.cfg.band.step, vec![]).map_err(st())?;
                band.nodes().into_iter().step_by(self.cfg.run.farfield_stride).collect()
            }
            ModeSpec::Ensemble { kappa_eval, .. } => vec![kappa_eval],
        };
        let mut records = Vec::with_capacity(dirs.len() * freqs.len());
        for x in dirs.iter() {
            for &k in &freqs {
                records.push(farfield(self.kind, field, x, k).map_err(st())?);
            }
        }
        Ok(records)
    }

    /// Band averages of one realization for every band start, direction,
    /// shift and target, in that nesting order.
    fn single_estimates(&self, field: &FieldRealization<f64>, dirs: &DirectionSet<f64>) -> Result<Vec<BandAverageResult<f64>>, RunError> {
        let st = || RunError::stage(Stage::Estimate.name());
        let source = RealizationFarField::new(self.kind, field).map_err(st())?;
        let shifts = self.cfg.shifts();
        let bands: Vec<FrequencyBand<f64>> = self
            .cfg
            .band
            .q
            .iter()
            .map(|&q| FrequencyBand::new(q, self.cfg.band.step, shifts.clone()))
            .collect::<Result<_, _>>()
            .map_err(st())?;
        let per_direction: Vec<Vec<Vec<BandAverageResult<f64>>>> = dirs
            .iter()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|x| {
                let cache = RayCache::new(&source);
                let minus: Vec<f64> = x.iter().map(|v| -v).collect();
                let mut out = Vec::with_capacity(bands.len());
                for band in &bands {
                    let extra = band.shift_in_steps(band.max_shift()).unwrap_or(0);
                    cache.precompute(x, band.q(), band.step(), band.len() + extra)?;
                    cache.precompute(&minus, band.q(), band.step(), band.len())?;
                    let mut rows = Vec::with_capacity(2 * shifts.len());
                    for &tau in &shifts {
                        for target in TARGETS {
                            rows.push(band_average(&self.estimator(target, x, tau, band.q()), &cache)?);
                        }
                    }
                    out.push(rows);
                }
                Ok(out)
            })
            .collect::<Result<_, gmig_core::Error>>()
            .map_err(st())?;
        let mut flat = Vec::new();
        for b in 0..bands.len() {
            for d in &per_direction {
                flat.extend(d[b].iter().cloned());
            }
        }
        Ok(flat)
    }

    /// Sample, far-field and estimate stages. Returns every band-average
    /// result.
    fn sample_and_estimate(&mut self, sampler: &Sampler) -> Result<Vec<BandAverageResult<f64>>, RunError> {
        let dirs = self.directions()?;
        let m = self.cfg.mode.realizations();
        for i in 0..m {
            self.manifest.seed_ledger.push(SeedEntry {
                stage: Stage::Sample.name().into(),
                index: i as u64,
                seed: self.seed(Stage::Sample, i),
            });
        }
        let (mut t_sample, mut t_far, mut t_est) = (0.0, 0.0, 0.0);
        let mut records = Vec::new();
        let mut results = Vec::new();
        match self.cfg.mode {
            ModeSpec::Single { realizations } => {
                for i in 0..realizations {
                    let t = Instant::now();
                    let field = self.realization(sampler, i)?;
                    t_sample += t.elapsed().as_secs_f64();
                    if i == 0 {
                        let t = Instant::now();
                        records = self.farfield_records(&field, &dirs)?;
                        t_far += t.elapsed().as_secs_f64();
                    }
                    let t = Instant::now();
                    results.extend(self.single_estimates(&field, &dirs)?);
                    t_est += t.elapsed().as_secs_f64();
                }
            }
            ModeSpec::Ensemble { .. } => {
                let q = self.cfg.recovery_q();
                let mut configs = Vec::new();
                for x in dirs.iter() {
                    for &tau in &self.cfg.shifts() {
                        for target in TARGETS {
                            configs.push(self.estimator(target, x, tau, q));
                        }
                    }
                }
                let t = Instant::now();
                let mut inner = 0.0;
                let mut err = None;
                let this = &*self;
                let out = ensemble_limits(&configs, |i| {
                    let t = Instant::now();
                    let field = this.realization(sampler, i).map_err(|e| {
                        let msg = e.to_string();
                        err = Some(e);
                        gmig_core::Error::Io(msg)
                    })?;
                    t_sample += t.elapsed().as_secs_f64();
                    if i == 0 {
                        let t = Instant::now();
                        records = this.farfield_records(&field, &dirs).map_err(|e| {
                            let msg = e.to_string();
                            err = Some(e);
                            gmig_core::Error::Io(msg)
                        })?;
                        t_far += t.elapsed().as_secs_f64();
                    }
                    inner += t.elapsed().as_secs_f64();
                    RealizationFarField::owned(this.kind, field)
                });
                if let Some(e) = err {
                    return Err(e);
                }
                results = out.map_err(RunError::stage(Stage::Estimate.name()))?;
                t_est = t.elapsed().as_secs_f64() - inner;
            }
        }
        let sample_outputs: Vec<String> = (0..m)
            .filter(|&i| self.saves(i))
            .map(realization_file)
            .collect();
        let sample_outputs = if self.writes(Stage::Sample) { sample_outputs } else { Vec::new() };
        self.record(Stage::Sample, t_sample, sample_outputs);

        let mut far_outputs = Vec::new();
        if self.writes(Stage::FarField) {
            let w = BufWriter::new(File::create(self.out.join(FARFIELD_FILE))?);
            write_farfield_csv(w, &records).map_err(RunError::stage(Stage::FarField.name()))?;
            far_outputs.push(FARFIELD_FILE.to_string());
        }
        self.record(Stage::FarField, t_far, far_outputs);

        let mut est_outputs = Vec::new();
        if self.writes(Stage::Estimate) {
            let w = BufWriter::new(File::create(self.out.join(ESTIMATES_FILE))?);
            write_band_csv(w, &self.config_hash, &results).map_err(RunError::stage(Stage::Estimate.name()))?;
            est_outputs.push(ESTIMATES_FILE.to_string());
        }
        self.record(Stage::Estimate, t_est, est_outputs);
        Ok(results)
    }

    /// Reads the persisted band averages back.
    fn load_estimates(&mut self) -> Result<Vec<BandAverageResult<f64>>, RunError> {
        self.current = Stage::Recover;
        let path = self.out.join(ESTIMATES_FILE);
        if !path.exists() {
            return Err(RunError::Config(format!(
                "cannot resume: {} is missing; rerun from an earlier stage",
                path.display()
            )));
        }
        let results = read_band_csv(&path, self.cfg, self.kind, &self.config_hash)?;
        for s in [Stage::Sample, Stage::FarField, Stage::Estimate] {
            self.record(s, 0.0, Vec::new());
        }
        Ok(results)
    }

    fn recover(&mut self, results: &[BandAverageResult<f64>], truth_shapes: &[Vec<Shape<f64>>; 2]) -> Result<Vec<BandOutcome>, RunError> {
        let start = Instant::now();
        let st = || RunError::stage(Stage::Recover.name());
        let d = self.cfg.model.dim;
        let target_grid = self.cfg.target_grid()?;
        let truth = self.cfg.strengths_on(target_grid)?;
        let truth_grids = [StrengthGrid::covariance_of(&truth), StrengthGrid::relation_of(&truth)];
        let qs: Vec<f64> = match self.cfg.mode {
            ModeSpec::Single { .. } => self.cfg.band.q.clone(),
            ModeSpec::Ensemble { .. } => vec![self.cfg.recovery_q()],
        };
        let mut outcomes = Vec::with_capacity(qs.len());
        for &q in &qs {
            let mut data = Vec::with_capacity(2);
            for target in TARGETS {
                let mut by_seed: BTreeMap<Vec<u64>, Vec<BandAverageResult<f64>>> = BTreeMap::new();
                for r in results.iter().filter(|r| r.config.target == target && r.config.q == q) {
                    by_seed.entry(r.seeds.clone()).or_default().push(r.clone());
                }
                let sets = by_seed
                    .values()
                    .map(|rows| normalize(rows, self.kind, d, target))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(st())?;
                data.push(PolarFourierData::average(&sets).map_err(st())?);
            }
            let data: [PolarFourierData<f64>; 2] = data.try_into().unwrap_or_else(|_| unreachable!("one entry per target"));
            let estimate_error = [
                estimate_error(&data[0], &truth_shapes[0]),
                estimate_error(&data[1], &truth_shapes[1]),
            ];
            let window = self.cfg.window();
            let rc = invert_polar_fourier(&data[0], &target_grid, window).map_err(st())?;
            let rr = invert_polar_fourier(&data[1], &target_grid, window).map_err(st())?;
            let ec = recovery_error(&rc.strengths, &truth_grids[0]).map_err(st())?;
            let er = recovery_error(&rr.strengths, &truth_grids[1]).map_err(st())?;
            outcomes.push(BandOutcome {
                q,
                estimate_error,
                recon: [rc, rr],
                recon_error: [ec, er],
            });
        }
        let mut outputs = Vec::new();
        if self.writes(Stage::Recover) {
            let best = outcomes.last().expect("at least one band");
            for (k, target) in TARGETS.into_iter().enumerate() {
                let (order, delta, seed) = (self.cfg.model.order, self.cfg.delta(), self.cfg.run.seed);
                let recon = format!("recon_{}.gmig", target.name());
                Container::from_strength_grid(&best.recon[k].strengths, target, &self.kind, order, delta, seed, Precision::Double)
                    .save(self.out.join(&recon))
                    .map_err(st())?;
                let truth = format!("truth_{}.gmig", target.name());
                Container::from_strength_grid(&truth_grids[k], target, &self.kind, order, delta, 0, Precision::Double)
                    .save(self.out.join(&truth))
                    .map_err(st())?;
                outputs.extend([recon, truth]);
            }
        }
        self.record(Stage::Recover, start.elapsed().as_secs_f64(), outputs);
        Ok(outcomes)
    }

    fn report(&mut self, outcomes: &[BandOutcome]) -> Result<(RunSummary, String), RunError> {
        let start = Instant::now();
        let st = || RunError::stage(Stage::Report.name());
        let best = outcomes.last().expect("at least one band");
        let target_grid = self.cfg.target_grid()?;
        let truth = self.cfg.strengths_on(target_grid)?;
        let truth_grids = [StrengthGrid::covariance_of(&truth), StrengthGrid::relation_of(&truth)];

        let mut text = format!(
            "config {}\nmodel {} d={} m={} mode={} realizations={}\n",
            self.config_hash,
            self.kind.name(),
            self.cfg.model.dim,
            self.cfg.model.order,
            match self.cfg.mode {
                ModeSpec::Single { .. } => "single",
                ModeSpec::Ensemble { .. } => "ensemble",
            },
            self.cfg.mode.realizations()
        );
        for o in outcomes {
            text.push_str(&format!(
                "Q={} estimate_error covariance={:.6} relation={:.6}; recovery_error covariance={:.6} relation={:.6}\n",
                o.q,
                o.estimate_error[0],
                o.estimate_error[1],
                o.recon_error[0].relative_l2(),
                o.recon_error[1].relative_l2()
            ));
        }
        for (k, target) in TARGETS.into_iter().enumerate() {
            let label = format!("{} Q={}", target.name(), best.q);
            text.push_str(&RecoveryReport::new(&label, &best.recon[k], Some(best.recon_error[k].clone())).render());
        }
        let summary = RunSummary {
            recovery_q: best.q,
            estimate_error_covariance: best.estimate_error[0],
            estimate_error_relation: best.estimate_error[1],
            recovery_error_covariance: best.recon_error[0].relative_l2(),
            recovery_error_relation: best.recon_error[1].relative_l2(),
        };

        let mut outputs = Vec::new();
        if self.writes(Stage::Report) {
            std::fs::write(self.out.join(REPORT_FILE), &text)?;
            outputs.push(REPORT_FILE.to_string());
            for (k, target) in TARGETS.into_iter().enumerate() {
                for e in 0..truth_grids[k].entries() {
                    if truth_grids[k].entry(e).iter().all(|v| v.norm() == 0.0) {
                        continue;
                    }
                    let name = format!("slice_{}_{e}.csv", target.name());
                    let w = BufWriter::new(File::create(self.out.join(&name))?);
                    write_slice_csv(w, &truth_grids[k], &best.recon[k].strengths, e).map_err(st())?;
                    outputs.push(name);
                }
            }
            let rows: Vec<Vec<f64>> = outcomes
                .iter()
                .map(|o| {
                    vec![
                        o.q,
                        o.estimate_error[0],
                        o.estimate_error[1],
                        o.recon_error[0].relative_l2(),
                        o.recon_error[1].relative_l2(),
                    ]
                })
                .collect();
            let w = BufWriter::new(File::create(self.out.join(TRACE_FILE))?);
            write_trace_csv(w, &TRACE_HEADER, &rows).map_err(st())?;
            outputs.push(TRACE_FILE.to_string());
        }
        self.record(Stage::Report, start.elapsed().as_secs_f64(), outputs);
        Ok((summary, text))
    }
}

/// Columns of the error-vs-axis traces.
pub const TRACE_HEADER: [&str; 5] = [
    "value",
    "estimate_error_covariance",
    "estimate_error_relation",
    "recovery_error_covariance",
    "recovery_error_relation",
];

/// Parses a band-average CSV written by the estimate stage.
fn read_band_csv(path: &Path, cfg: &ExperimentConfig, kind: WaveKind<f64>, hash: &str) -> Result<Vec<BandAverageResult<f64>>, RunError> {
    let bad = |msg: String| RunError::Io(format!("{}: {msg}", path.display()));
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name).ok_or_else(|| bad(format!("missing column {name}")));
    let idx: Vec<usize> = [
        "config_hash", "seeds", "target", "q", "tau", "xhat", "row", "col", "re", "im", "std_error", "nodes", "samples",
    ]
    .iter()
    .map(|n| col(n))
    .collect::<Result<_, _>>()?;
    let num = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("bad number {s:?}: {e}")));
    let int = |s: &str| s.parse::<u64>().map_err(|e| bad(format!("bad integer {s:?}: {e}")));
    let components = if kind.is_vector() { cfg.model.dim } else { 1 };
    let mut out: Vec<BandAverageResult<f64>> = Vec::new();
    let mut current: Option<BandAverageResult<f64>> = None;
    for rec in reader.records() {
        let rec = rec?;
        let f = |k: usize| &rec[idx[k]];
        if f(0) != hash {
            return Err(RunError::Config(format!(
                "{} was produced by configuration {}, not {hash}",
                path.display(),
                f(0)
            )));
        }
        let (row, colm) = (int(f(6))? as usize, int(f(7))? as usize);
        if row == 0 && colm == 0 {
            if let Some(done) = current.take() {
                out.push(done);
            }
            let target = match f(2) {
                "covariance" => Target::Covariance,
                "relation" => Target::Relation,
                t => return Err(bad(format!("unknown target {t}"))),
            };
            let xhat = f(5).split(';').map(num).collect::<Result<Vec<_>, _>>()?;
            let seeds = if f(1).is_empty() {
                Vec::new()
            } else {
                f(1).split(';').map(int).collect::<Result<Vec<_>, _>>()?
            };
            let base = EstimatorConfig::new(kind, cfg.model.dim, cfg.model.order, target, xhat, num(f(4))?)
                .with_band(num(f(3))?, cfg.band.step);
            let config = match cfg.mode {
                ModeSpec::Single { .. } => base,
                ModeSpec::Ensemble { realizations, kappa_eval } => base.with_mode(Mode::Ensemble {
                    realizations,
                    kappa_eval,
                }),
            };
            current = Some(BandAverageResult {
                config,
                components,
                estimate: vec![Complex64::new(0.0, 0.0); components * components],
                std_error: vec![0.0; components * components],
                nodes: int(f(11))? as usize,
                samples: int(f(12))? as usize,
                seeds,
            });
        }
        let r = current.as_mut().ok_or_else(|| bad("entry row before its (0, 0) row".into()))?;
        if row >= components || colm >= components {
            return Err(bad(format!("entry ({row}, {colm}) outside {components}x{components}")));
        }
        r.estimate[row * components + colm] = Complex64::new(num(f(8))?, num(f(9))?);
        r.std_error[row * components + colm] = num(f(10))?;
    }
    if let Some(done) = current {
        out.push(done);
    }
    Ok(out)
}

/// Result of a completed run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub manifest: RunManifest,
    pub report: String,
}

/// Runs the pipeline into `config.run.output`, starting output writes at
/// `from`. Earlier stages are replayed from persisted files or recomputed
/// from the seed ledger. On failure the partial manifest is written with the
/// failing stage.
pub fn run(config: &ExperimentConfig, from: Stage) -> Result<RunOutcome, RunError> {
    let out = config.run.output.clone();
    std::fs::create_dir_all(&out)?;
    let manifest = RunManifest::new(config);
    let config_hash = manifest.config_hash.clone();
    let mut p = Pipeline {
        cfg: config,
        out: out.clone(),
        from,
        kind: gmig_core::waves::WaveKind::Acoustic,
        manifest,
        config_hash,
        current: Stage::Configure,
    };
    let result = (|| {
        p.kind = config.kind()?;
        config.validate()?;
        let truth_shapes = {
            let (c, r) = config.shapes()?;
            [c, r]
        };
        let (sampler, _strengths) = p.configure()?;
        let results = if from >= Stage::Recover {
            p.load_estimates()?
        } else {
            p.sample_and_estimate(&sampler)?
        };
        let outcomes = p.recover(&results, &truth_shapes)?;
        p.report(&outcomes)
    })();
    match result {
        Ok((summary, report)) => {
            p.manifest.summary = Some(summary);
            p.manifest.status = "complete".into();
            p.manifest.hash_outputs(&out)?;
            p.manifest.save(&out)?;
            Ok(RunOutcome {
                manifest: p.manifest,
                report,
            })
        }
        Err(e) => {
            let failed = match &e {
                RunError::Stage { stage, .. } => stage,
                _ => p.current.name(),
            };
            p.manifest.status = "failed".into();
            p.manifest.failed_stage = Some(failed.to_string());
            p.manifest.error = Some(e.to_string());
            let _ = p.manifest.hash_outputs(&out);
            let _ = p.manifest.save(&out);
            Err(e)
        }
    }
}

/// Number of band-average results the estimate stage produces.
pub fn expected_results(config: &ExperimentConfig) -> usize {
    let per = config.directions.count * config.band.shift_count * TARGETS.len();
    match config.mode {
        ModeSpec::Single { realizations } => per * config.band.q.len() * realizations,
        ModeSpec::Ensemble { .. } => per,
    }
}
