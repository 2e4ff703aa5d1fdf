//! End-to-end pipeline runs, determinism, resumption and configuration
//! rejection.

use std::path::{Path, PathBuf};

use gmig_runner::config::{ExperimentConfig, KindName, ModeSpec};
use gmig_runner::manifest::{config_hash, RunManifest};
use gmig_runner::pipeline::{expected_results, ESTIMATES_FILE, REPORT_FILE, TRACE_FILE};
use gmig_runner::{run, sweep, RunError, Stage, SweepAxis};

fn demo(out: &Path) -> ExperimentConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/demo.toml");
    let mut c = ExperimentConfig::load(&path).unwrap();
    c.run.output = out.to_path_buf();
    c
}

#[test]
fn demo_config_completes_with_a_populated_report() {
    let dir = tempfile::tempdir().unwrap();
    let c = demo(dir.path());
    assert_eq!((c.model.dim, c.model.order, c.grid.nodes, c.recovery_q()), (2, 2.0, 256, 128.0));
    let outcome = run(&c, Stage::Configure).unwrap();
    let m = &outcome.manifest;
    assert_eq!(m.status, "complete");
    let s = m.summary.as_ref().unwrap();
    for e in [s.recovery_error_covariance, s.recovery_error_relation, s.estimate_error_covariance] {
        assert!(e.is_finite() && e > 0.0);
    }
    let report = std::fs::read_to_string(dir.path().join(REPORT_FILE)).unwrap();
    assert!(report.contains("relative_l2="));
    assert_eq!(report, outcome.report);
    let names: Vec<_> = m.stages.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["configure", "sample", "farfield", "estimate", "recover", "report"]);
    assert!(m.stages.iter().all(|s| s.status == "run"));
    assert_eq!(m.seed_ledger.len(), 1);
    for file in ["farfield.csv", ESTIMATES_FILE, TRACE_FILE, "recon_covariance.gmig", "truth_relation.gmig", "slice_covariance_0.csv"] {
        assert!(m.output_hashes.contains_key(file), "{file}");
    }
    let rows = std::fs::read_to_string(dir.path().join(ESTIMATES_FILE)).unwrap().lines().count();
    assert_eq!(rows, 1 + expected_results(&c));
    let trace = std::fs::read_to_string(dir.path().join(TRACE_FILE)).unwrap();
    assert_eq!(trace.lines().count(), 1 + c.band.q.len());
    assert_eq!(RunManifest::load(dir.path()).unwrap(), outcome.manifest);
}

#[test]
fn identical_configurations_give_identical_outputs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ma = run(&demo(a.path()), Stage::Configure).unwrap().manifest;
    let mb = run(&demo(b.path()), Stage::Configure).unwrap().manifest;
    assert_eq!(ma.config_hash, mb.config_hash);
    assert_eq!(ma.seed_ledger, mb.seed_ledger);
    assert_eq!(ma.output_hashes, mb.output_hashes);

    let mut other = demo(b.path());
    other.run.seed += 1;
    assert_ne!(config_hash(&other), ma.config_hash);
    let mc = run(&other, Stage::Configure).unwrap().manifest;
    assert_ne!(mc.output_hashes["estimates.csv"], ma.output_hashes["estimates.csv"]);
}

#[test]
fn resuming_from_any_stage_reproduces_the_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let c = demo(dir.path());
    let first = run(&c, Stage::Configure).unwrap().manifest;
    for stage in [Stage::Sample, Stage::Estimate, Stage::Recover, Stage::Report] {
        let again = run(&c, stage).unwrap().manifest;
        assert_eq!(again.output_hashes, first.output_hashes, "{}", stage.name());
        for s in &again.stages {
            let expected = if Stage::parse(&s.name).unwrap() >= stage { "run" } else { "replayed" };
            assert_eq!(s.status, expected);
        }
    }
}

#[test]
fn resuming_without_estimates_fails_and_records_the_stage() {
    let dir = tempfile::tempdir().unwrap();
    let err = run(&demo(dir.path()), Stage::Recover).unwrap_err();
    assert!(matches!(err, RunError::Config(_)));
    let m = RunManifest::load(dir.path()).unwrap();
    assert_eq!(m.status, "failed");
    assert_eq!(m.failed_stage.as_deref(), Some("recover"));
    assert!(m.error.unwrap().contains(ESTIMATES_FILE));
}

#[test]
fn order_outside_the_interval_is_rejected_with_the_interval() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = demo(dir.path());
    c.model.order = -3.0;
    let err = c.validate().unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let msg = err.to_string();
    assert!(msg.contains("(d-4, d]") && msg.contains("(-2, 2]"), "{msg}");
    assert!(run(&c, Stage::Configure).is_err());

    c.model.kind = KindName::Biharmonic;
    c.model.order = -3.0;
    assert!(c.validate().is_ok());
    c.model.order = -4.0;
    assert!(c.validate().unwrap_err().to_string().contains("(d-6, d]"));
    c.model.order = 2.5;
    assert!(c.validate().is_err());
}

#[test]
fn other_configuration_errors() {
    let dir = tempfile::tempdir().unwrap();
    let base = demo(dir.path());

    let mut c = base.clone();
    c.model.kind = KindName::Electromagnetic;
    assert!(c.validate().unwrap_err().to_string().contains("d = 3"));

    let mut c = base.clone();
    c.directions.count = 15;
    assert!(c.validate().unwrap_err().to_string().contains("negation-closed"));

    let mut c = base.clone();
    c.band.q = vec![256.0];
    assert!(c.validate().unwrap_err().to_string().contains("budget"));

    let mut c = base.clone();
    c.recovery.nodes = 16;
    c.band.tau_max = 40.0;
    assert!(c.validate().is_err());

    let mut c = base.clone();
    c.model.kind = KindName::Elastic;
    assert!(c.validate().unwrap_err().to_string().contains("lambda"));

    let mut c = base.clone();
    c.strengths.relation[0].amplitude = 1.5;
    assert!(c.validate().is_ok());
    let err = run(&c, Stage::Configure).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("admissib"), "{err}");

    let mut c = base.clone();
    c.mode = ModeSpec::Ensemble { realizations: 1, kappa_eval: 64.0 };
    assert!(c.validate().is_err());

    assert!(ExperimentConfig::from_toml("[model]\nkind = \"sound\"").is_err());
    let text = base.to_toml().replace("[grid]", "[grid]\nbogus = 1");
    assert!(ExperimentConfig::from_toml(&text).is_err());
}

#[test]
fn configuration_round_trips_through_toml() {
    let dir = tempfile::tempdir().unwrap();
    let c = demo(dir.path());
    assert_eq!(ExperimentConfig::from_toml(&c.to_toml()).unwrap(), c);
    for name in ["ensemble.toml", "elastic.toml"] {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name);
        ExperimentConfig::load(&path).unwrap().validate().unwrap();
    }
}

#[test]
fn q_sweep_trace_is_monotone_within_slack() {
    let dir = tempfile::tempdir().unwrap();
    let c = demo(dir.path());
    let outcome = sweep(&c, SweepAxis::Q, &[32.0, 64.0, 128.0]).unwrap();
    assert_eq!(outcome.rows.len(), 3);
    let text = std::fs::read_to_string(&outcome.trace).unwrap();
    assert_eq!(text.lines().count(), 4);
    for col in [1, 3] {
        for w in outcome.rows.windows(2) {
            assert!(w[1][col] <= 1.1 * w[0][col], "column {col}: {:?}", outcome.rows);
        }
    }
}

#[test]
fn sweeps_need_three_values() {
    let dir = tempfile::tempdir().unwrap();
    let c = demo(dir.path());
    let err = sweep(&c, SweepAxis::Q, &[64.0]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(sweep(&c, SweepAxis::Directions, &[8.0, 16.0, 15.0]).is_err());
    assert!(sweep(&c, SweepAxis::TauMax, &[8.0, 16.0, 17.0]).is_err());
    assert!(SweepAxis::parse("width").is_err());
}
