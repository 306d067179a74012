//! Benchmark harness: solves single instances and instance directories under
//! budgets, aggregates outcomes and PAR-2 scores, compares a baseline
//! configuration against its CRVR extension, and emits CSV/JSON reports and
//! SVG plots.
//!
//! The CSV report contains only deterministic columns (outcome and solver
//! counters), so two runs of the same spec with one worker produce
//! byte-identical files; wall times and the run timestamp live in the JSON
//! report, whose rows are also what PAR-2 is recomputable from.

pub mod plots;

use std::collections::VecDeque;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::analytics::{RunStats, STATS_SCHEMA_VERSION};
use crate::cnf::parse_dimacs;
use crate::engine::{Outcome, Solver, SolverConfig};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("no instances to run")]
    NoInstances,
    #[error("invalid run spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What to run and under which budgets.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub instances: Vec<PathBuf>,
    /// Per-instance wall-clock budget; also the PAR-2 timeout.
    pub timeout: Duration,
    pub solver: SolverConfig,
    /// Runs every instance under both the baseline and the CRVR
    /// configuration and adds a paired comparison to the report.
    pub compare_crvr: bool,
    pub jobs: usize,
    /// When set, DRAT proofs of UNSAT instances are written here.
    pub proof_dir: Option<PathBuf>,
}

impl RunSpec {
    pub fn new(instances: Vec<PathBuf>) -> RunSpec {
        RunSpec {
            instances,
            timeout: Duration::from_secs(60),
            solver: SolverConfig::default(),
            compare_crvr: false,
            jobs: 1,
            proof_dir: None,
        }
    }

    fn validate(&self) -> Result<(), HarnessError> {
        if self.instances.is_empty() {
            return Err(HarnessError::NoInstances);
        }
        if self.timeout.is_zero() {
            return Err(HarnessError::BadSpec("timeout must be positive".into()));
        }
        if self.jobs < 1 {
            return Err(HarnessError::BadSpec("worker count must be >= 1".into()));
        }
        Ok(())
    }
}

/// One per-instance result line.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub config: String,
    pub outcome: String,
    pub wall_time_secs: f64,
    /// Set when the instance could not be parsed or run.
    pub error: Option<String>,
    pub stats: Option<RunStats>,
}

impl ReportRow {
    pub fn solved(&self) -> bool {
        self.outcome == "SAT" || self.outcome == "UNSAT"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigAggregate {
    pub config: String,
    pub sat: u64,
    pub unsat: u64,
    pub combined: u64,
    pub unknown: u64,
    pub errors: u64,
    pub par2: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceDelta {
    pub instance: String,
    pub baseline_outcome: String,
    pub crvr_outcome: String,
    /// `crvr time - baseline time`, seconds.
    pub time_delta_secs: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub baseline: String,
    pub crvr: String,
    pub sat_delta: i64,
    pub unsat_delta: i64,
    pub combined_delta: i64,
    pub par2_delta: f64,
    /// Instances where one configuration reports SAT and the other UNSAT.
    pub contradictions: u64,
    pub per_instance: Vec<InstanceDelta>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportMeta {
    pub created_unix_secs: u64,
    pub timeout_secs: f64,
    pub conflict_budget: Option<u64>,
    pub seed: u64,
    pub jobs: usize,
    pub stats_version: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchmarkReport {
    pub meta: ReportMeta,
    pub rows: Vec<ReportRow>,
    pub aggregates: Vec<ConfigAggregate>,
    pub comparison: Option<Comparison>,
}

/// PAR-2: sum of runtimes over solved rows plus twice the timeout for every
/// unsolved row (unknown or error).
pub fn par2(rows: &[ReportRow], timeout: Duration) -> f64 {
    rows.iter()
        .map(|r| {
            if r.solved() {
                r.wall_time_secs
            } else {
                2.0 * timeout.as_secs_f64()
            }
        })
        .sum()
}

/// DIMACS files of a directory, sorted by file name.
pub fn collect_instances(dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| matches!(e, "cnf" | "dimacs"))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(HarnessError::NoInstances);
    }
    Ok(files)
}

fn instance_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Solves one instance under one configuration and produces its report row.
/// Parse failures mark the row as an error; budget exhaustion is an UNKNOWN
/// outcome, not an error.
pub fn run_instance(
    path: &Path,
    config_label: &str,
    solver_cfg: &SolverConfig,
    timeout: Duration,
    proof_dir: Option<&Path>,
) -> ReportRow {
    let name = instance_name(path);
    let error_row = |msg: String| ReportRow {
        instance: name.clone(),
        config: config_label.to_string(),
        outcome: "ERROR".into(),
        wall_time_secs: 0.0,
        error: Some(msg),
        stats: None,
    };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return error_row(format!("read failed: {e}")),
    };
    let formula = match parse_dimacs(&text) {
        Ok(f) => f,
        Err(e) => return error_row(format!("parse failed: {e}")),
    };
    let mut cfg = solver_cfg.clone();
    cfg.time_budget = Some(timeout);
    let mut solver = match Solver::new(&formula, cfg) {
        Ok(s) => s,
        Err(e) => return error_row(format!("solver setup failed: {e}")),
    };
    let proof_path = proof_dir.map(|d| d.join(format!("{name}.drat")));
    if let Some(p) = &proof_path {
        match fs::File::create(p) {
            Ok(f) => solver.set_proof_sink(Box::new(std::io::BufWriter::new(f))),
            Err(e) => return error_row(format!("proof file failed: {e}")),
        }
    }
    let result = match solver.solve() {
        Ok(r) => r,
        Err(e) => return error_row(format!("solve failed: {e}")),
    };
    if let Some(p) = &proof_path {
        if !matches!(result.outcome, Outcome::Unsat) {
            let _ = fs::remove_file(p);
        }
    }
    ReportRow {
        instance: name,
        config: config_label.to_string(),
        outcome: result.outcome.as_str().to_string(),
        wall_time_secs: result.stats.wall_time_secs,
        error: None,
        stats: Some(result.stats),
    }
}

struct Task {
    path: PathBuf,
    label: &'static str,
    crvr: bool,
}

/// Runs the whole spec: every instance under every configuration, with
/// `jobs` independent workers. Rows are sorted by (instance, config), so the
/// report layout does not depend on the worker count.
pub fn run_benchmark(spec: &RunSpec) -> Result<BenchmarkReport, HarnessError> {
    spec.validate()?;
    if let Some(dir) = &spec.proof_dir {
        fs::create_dir_all(dir)?;
    }
    let configs: Vec<(&'static str, bool)> = if spec.compare_crvr {
        vec![("baseline", false), ("crvr", true)]
    } else if spec.solver.crvr_enabled {
        vec![("crvr", true)]
    } else {
        vec![("baseline", false)]
    };
    let tasks: VecDeque<Task> = spec
        .instances
        .iter()
        .flat_map(|p| {
            configs.iter().map(|&(label, crvr)| Task {
                path: p.clone(),
                label,
                crvr,
            })
        })
        .collect();

    let run_task = {
        let solver_cfg = spec.solver.clone();
        let timeout = spec.timeout;
        let proof_dir = spec.proof_dir.clone();
        move |task: Task| {
            let mut cfg = solver_cfg.clone();
            cfg.crvr_enabled = task.crvr;
            run_instance(
                &task.path,
                task.label,
                &cfg,
                timeout,
                proof_dir.as_deref(),
            )
        }
    };

    let mut rows: Vec<ReportRow> = if spec.jobs == 1 {
        tasks.into_iter().map(run_task).collect()
    } else {
        let queue = Arc::new(Mutex::new(tasks));
        let run_task = Arc::new(run_task);
        let (tx, rx) = mpsc::channel::<ReportRow>();
        let workers: Vec<_> = (0..spec.jobs)
            .map(|_| {
                let queue = Arc::clone(&queue);
                let run_task = Arc::clone(&run_task);
                let tx = tx.clone();
                std::thread::spawn(move || loop {
                    let task = queue.lock().unwrap().pop_front();
                    let Some(task) = task else { break };
                    if tx.send(run_task(task)).is_err() {
                        break;
                    }
                })
            })
            .collect();
        drop(tx);
        let rows = rx.iter().collect();
        for w in workers {
            let _ = w.join();
        }
        rows
    };
    rows.sort_by(|a, b| (&a.instance, &a.config).cmp(&(&b.instance, &b.config)));

    let aggregates: Vec<ConfigAggregate> = configs
        .iter()
        .map(|&(label, _)| {
            let config_rows: Vec<&ReportRow> = rows.iter().filter(|r| r.config == label).collect();
            let count = |outcome: &str| config_rows.iter().filter(|r| r.outcome == outcome).count() as u64;
            let owned: Vec<ReportRow> = config_rows.iter().map(|r| (*r).clone()).collect();
            ConfigAggregate {
                config: label.to_string(),
                sat: count("SAT"),
                unsat: count("UNSAT"),
                combined: count("SAT") + count("UNSAT"),
                unknown: count("UNKNOWN"),
                errors: count("ERROR"),
                par2: par2(&owned, spec.timeout),
            }
        })
        .collect();

    let comparison = (configs.len() == 2).then(|| {
        let (base, crvr) = (&aggregates[0], &aggregates[1]);
        let mut contradictions = 0;
        let mut per_instance = Vec::new();
        for pair in rows.chunks(2) {
            let [a, b] = pair else { continue };
            debug_assert_eq!(a.instance, b.instance);
            let (base_row, crvr_row) = if a.config == "baseline" { (a, b) } else { (b, a) };
            let contradictory = (base_row.outcome == "SAT" && crvr_row.outcome == "UNSAT")
                || (base_row.outcome == "UNSAT" && crvr_row.outcome == "SAT");
            if contradictory {
                contradictions += 1;
            }
            per_instance.push(InstanceDelta {
                instance: base_row.instance.clone(),
                baseline_outcome: base_row.outcome.clone(),
                crvr_outcome: crvr_row.outcome.clone(),
                time_delta_secs: crvr_row.wall_time_secs - base_row.wall_time_secs,
            });
        }
        Comparison {
            baseline: base.config.clone(),
            crvr: crvr.config.clone(),
            sat_delta: crvr.sat as i64 - base.sat as i64,
            unsat_delta: crvr.unsat as i64 - base.unsat as i64,
            combined_delta: crvr.combined as i64 - base.combined as i64,
            par2_delta: crvr.par2 - base.par2,
            contradictions,
            per_instance,
        }
    });

    Ok(BenchmarkReport {
        meta: ReportMeta {
            created_unix_secs: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            timeout_secs: spec.timeout.as_secs_f64(),
            conflict_budget: spec.solver.conflict_budget,
            seed: spec.solver.seed,
            jobs: spec.jobs,
            stats_version: STATS_SCHEMA_VERSION,
        },
        rows,
        aggregates,
        comparison,
    })
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Deterministic per-instance CSV: instance, config, then the stats columns.
/// Wall times are deliberately absent; see the JSON report for timing.
pub fn render_csv(report: &BenchmarkReport, max_tracked_burst: usize) -> String {
    let mut out = String::new();
    out.push_str("instance,config,");
    out.push_str(&RunStats::csv_header(max_tracked_burst).join(","));
    out.push('\n');
    let empty_cells = RunStats::csv_header(max_tracked_burst).len();
    for row in &report.rows {
        out.push_str(&csv_escape(&row.instance));
        out.push(',');
        out.push_str(&row.config);
        out.push(',');
        match &row.stats {
            Some(stats) => out.push_str(&stats.csv_values().join(",")),
            None => {
                // Error rows keep the outcome column and leave the rest empty.
                out.push_str(&row.outcome);
                out.push_str(&",".repeat(empty_cells - 1));
            }
        }
        out.push('\n');
    }
    out
}

/// Plain-text comparison table: one row per configuration with deltas on the
/// extension row.
pub fn comparison_table(report: &BenchmarkReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<10} {:>6} {:>7} {:>9} {:>12}\n",
        "config", "SAT", "UNSAT", "combined", "PAR-2"
    ));
    for agg in &report.aggregates {
        let delta = report
            .comparison
            .as_ref()
            .filter(|c| c.crvr == agg.config)
            .map(|c| {
                format!(
                    " (SAT {:+}, UNSAT {:+}, comb {:+}, PAR-2 {:+.1})",
                    c.sat_delta, c.unsat_delta, c.combined_delta, c.par2_delta
                )
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{:<10} {:>6} {:>7} {:>9} {:>12.1}{}\n",
            agg.config, agg.sat, agg.unsat, agg.combined, agg.par2, delta
        ));
    }
    if let Some(c) = &report.comparison {
        out.push_str(&format!("outcome contradictions: {}\n", c.contradictions));
    }
    out
}

/// Writes the requested report artifacts; returns the created paths.
pub fn emit_report(
    report: &BenchmarkReport,
    max_tracked_burst: usize,
    csv: Option<&Path>,
    json: Option<&Path>,
    plots_dir: Option<&Path>,
) -> Result<Vec<PathBuf>, HarnessError> {
    let mut written = Vec::new();
    if let Some(path) = csv {
        fs::write(path, render_csv(report, max_tracked_burst))?;
        written.push(path.to_path_buf());
    }
    if let Some(path) = json {
        let mut file = fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut file, report)
            .map_err(|e| HarnessError::BadSpec(format!("json serialization failed: {e}")))?;
        file.write_all(b"\n")?;
        written.push(path.to_path_buf());
    }
    if let Some(dir) = plots_dir {
        fs::create_dir_all(dir)?;
        written.extend(plots::emit_plots(report, max_tracked_burst, dir)?);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{pigeonhole, random_3sat};
    use std::io::Write;

    fn write_instance(dir: &Path, name: &str, text: &str) -> PathBuf {
        let path = dir.join(name);
        let mut f = fs::File::create(&path).unwrap();
        f.write_all(text.as_bytes()).unwrap();
        path
    }

    fn sample_dir() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        write_instance(dir.path(), "a_unsat.cnf", &pigeonhole(4, 3).to_dimacs());
        write_instance(dir.path(), "b_sat.cnf", &random_3sat(15, 40, 3).to_dimacs());
        write_instance(dir.path(), "c_sat.cnf", &random_3sat(12, 30, 5).to_dimacs());
        dir
    }

    fn spec_for(dir: &Path) -> RunSpec {
        let mut spec = RunSpec::new(collect_instances(dir).unwrap());
        spec.timeout = Duration::from_secs(30);
        spec.solver.conflict_budget = Some(50_000);
        spec
    }

    #[test]
    fn par2_arithmetic() {
        let row = |outcome: &str, t: f64| ReportRow {
            instance: "i".into(),
            config: "baseline".into(),
            outcome: outcome.into(),
            wall_time_secs: t,
            error: None,
            stats: None,
        };
        let rows = vec![row("SAT", 10.0), row("UNSAT", 20.0), row("UNKNOWN", 100.0)];
        assert_eq!(par2(&rows, Duration::from_secs(100)), 10.0 + 20.0 + 200.0);
        let all_solved = vec![row("SAT", 1.5), row("UNSAT", 2.5)];
        assert_eq!(par2(&all_solved, Duration::from_secs(100)), 4.0);
    }

    #[test]
    fn bench_on_directory_produces_consistent_report() {
        let dir = sample_dir();
        let report = run_benchmark(&spec_for(dir.path())).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert_eq!(report.aggregates.len(), 1);
        let agg = &report.aggregates[0];
        assert_eq!(agg.sat + agg.unsat + agg.unknown + agg.errors, 3);
        assert!(agg.unsat >= 1, "pigeonhole instance is UNSAT");
        // PAR-2 identity: recomputable from rows.
        assert_eq!(agg.par2, par2(&report.rows, Duration::from_secs(30)));
        // Rows sorted by instance name.
        let names: Vec<&str> = report.rows.iter().map(|r| r.instance.as_str()).collect();
        assert_eq!(names, vec!["a_unsat.cnf", "b_sat.cnf", "c_sat.cnf"]);
    }

    #[test]
    fn empty_directory_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            collect_instances(dir.path()),
            Err(HarnessError::NoInstances)
        ));
        assert!(matches!(
            run_benchmark(&RunSpec::new(vec![])),
            Err(HarnessError::NoInstances)
        ));
    }

    #[test]
    fn parse_failure_marks_row_as_error() {
        let dir = tempfile::tempdir().unwrap();
        write_instance(dir.path(), "bad.cnf", "p cnf 1 1\n3 0\n");
        let report = run_benchmark(&spec_for(dir.path())).unwrap();
        assert_eq!(report.rows[0].outcome, "ERROR");
        assert!(report.rows[0].error.as_deref().unwrap().contains("parse failed"));
        assert_eq!(report.aggregates[0].errors, 1);
    }

    #[test]
    fn single_worker_csv_is_byte_identical_across_runs() {
        let dir = sample_dir();
        let spec = spec_for(dir.path());
        let a = render_csv(&run_benchmark(&spec).unwrap(), 10);
        let b = render_csv(&run_benchmark(&spec).unwrap(), 10);
        assert_eq!(a, b);
        assert!(a.starts_with("instance,config,outcome,"));
    }

    #[test]
    fn parallel_rows_match_sequential_rows() {
        let dir = sample_dir();
        let mut spec = spec_for(dir.path());
        let seq = run_benchmark(&spec).unwrap();
        spec.jobs = 3;
        let par = run_benchmark(&spec).unwrap();
        let key = |r: &ReportRow| (r.instance.clone(), r.config.clone(), r.outcome.clone());
        assert_eq!(
            seq.rows.iter().map(key).collect::<Vec<_>>(),
            par.rows.iter().map(key).collect::<Vec<_>>()
        );
    }

    #[test]
    fn compare_mode_pairs_every_instance() {
        let dir = sample_dir();
        let mut spec = spec_for(dir.path());
        spec.compare_crvr = true;
        let report = run_benchmark(&spec).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert_eq!(report.aggregates.len(), 2);
        let cmp = report.comparison.as_ref().unwrap();
        assert_eq!(cmp.per_instance.len(), 3);
        assert_eq!(cmp.contradictions, 0);
        // Identical instance set for both configurations.
        for pair in report.rows.chunks(2) {
            assert_eq!(pair[0].instance, pair[1].instance);
            assert_ne!(pair[0].config, pair[1].config);
        }
        let table = comparison_table(&report);
        assert!(table.contains("baseline"));
        assert!(table.contains("crvr"));
        assert!(table.contains("contradictions: 0"));
    }

    #[test]
    fn proof_dir_collects_unsat_proofs_only() {
        let dir = sample_dir();
        let mut spec = spec_for(dir.path());
        let proof_dir = tempfile::tempdir().unwrap();
        spec.proof_dir = Some(proof_dir.path().to_path_buf());
        let report = run_benchmark(&spec).unwrap();
        let proofs: Vec<_> = fs::read_dir(proof_dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        let unsat_rows = report.rows.iter().filter(|r| r.outcome == "UNSAT").count();
        assert_eq!(proofs.len(), unsat_rows);
        assert!(proofs.iter().all(|p| p.ends_with(".drat")));
    }

    #[test]
    fn emit_report_writes_requested_files() {
        let dir = sample_dir();
        let mut spec = spec_for(dir.path());
        spec.compare_crvr = true;
        let report = run_benchmark(&spec).unwrap();
        let out = tempfile::tempdir().unwrap();
        let csv = out.path().join("report.csv");
        let json = out.path().join("report.json");
        let plots = out.path().join("plots");
        let written = emit_report(&report, 10, Some(&csv), Some(&json), Some(&plots)).unwrap();
        assert!(csv.exists() && json.exists());
        assert_eq!(written.len(), 2 + 4, "csv + json + four plot kinds");
        let parsed: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 6);
        assert!(parsed["meta"]["created_unix_secs"].as_u64().unwrap() > 0);
        assert!(parsed["rows"][0]["wall_time_secs"].is_number());
    }
}
