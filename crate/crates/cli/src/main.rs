//! Command-line interface: `solve` for single instances (SAT-competition
//! style output and exit codes), `bench` for instance directories with
//! CSV/JSON reports, comparison tables, and SVG plots.

use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use burstsat::cnf::parse_dimacs_with_warnings;
use burstsat::engine::{Outcome, Solver, SolverConfig};
use burstsat::harness::{collect_instances, comparison_table, emit_report, run_benchmark, RunSpec};

#[derive(Parser)]
#[command(name = "burstsat", version, about = "CDCL SAT solver with conflict-burst analytics and CRVR branching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one DIMACS CNF file.
    ///
    /// Prints `s SATISFIABLE` / `s UNSATISFIABLE` / `s UNKNOWN` plus `v`
    /// model lines, and exits with 10 / 20 / 0 accordingly.
    Solve {
        /// DIMACS CNF input file.
        file: PathBuf,
        /// Enable the CRVR branching extension.
        #[arg(long)]
        crvr: bool,
        /// CRVR window length over recent learned clauses.
        #[arg(long, default_value_t = 50)]
        k: usize,
        /// CRVR activity reduction factor, in (0, 1).
        #[arg(long, default_value_t = 0.1)]
        q: f64,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Conflict budget.
        #[arg(long)]
        conflicts: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a DRAT proof here (kept only for UNSAT results).
        #[arg(long)]
        proof: Option<PathBuf>,
        /// Write the run statistics as JSON here.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Solve every .cnf/.dimacs file in a directory.
    Bench {
        /// Directory of DIMACS CNF files.
        dir: PathBuf,
        /// Run both the baseline and the CRVR configuration and compare.
        #[arg(long)]
        compare_crvr: bool,
        /// Run the single configuration with CRVR enabled.
        #[arg(long, conflicts_with = "compare_crvr")]
        crvr: bool,
        /// Parallel workers (independent solver instances).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the per-instance CSV report here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the full JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write SVG plots into this directory.
        #[arg(long)]
        plots: Option<PathBuf>,
        /// Per-instance wall-clock budget in seconds (also the PAR-2 timeout).
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        /// Per-instance conflict budget.
        #[arg(long)]
        conflicts: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        k: usize,
        #[arg(long, default_value_t = 0.1)]
        q: f64,
        /// Write DRAT proofs of UNSAT instances into this directory.
        #[arg(long)]
        proof_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Solve {
            file,
            crvr,
            k,
            q,
            timeout,
            conflicts,
            seed,
            proof,
            stats,
        } => {
            if timeout.is_some_and(|t| !t.is_finite() || t <= 0.0) {
                return Err("timeout must be positive".into());
            }
            let cfg = SolverConfig {
                seed,
                crvr_enabled: crvr,
                crvr_k: k,
                crvr_q: q,
                conflict_budget: conflicts,
                time_budget: timeout.map(Duration::from_secs_f64),
                ..SolverConfig::default()
            };
            solve_one(&file, cfg, proof.as_deref(), stats.as_deref())
        }
        Command::Bench {
            dir,
            compare_crvr,
            crvr,
            jobs,
            csv,
            json,
            plots,
            timeout,
            conflicts,
            seed,
            k,
            q,
            proof_dir,
        } => {
            if !timeout.is_finite() || timeout <= 0.0 {
                return Err("timeout must be positive".into());
            }
            let spec = RunSpec {
                instances: collect_instances(&dir).map_err(|e| e.to_string())?,
                timeout: Duration::from_secs_f64(timeout),
                solver: SolverConfig {
                    seed,
                    crvr_enabled: crvr,
                    crvr_k: k,
                    crvr_q: q,
                    conflict_budget: conflicts,
                    ..SolverConfig::default()
                },
                compare_crvr,
                jobs,
                proof_dir,
            };
            let report = run_benchmark(&spec).map_err(|e| e.to_string())?;
            for row in &report.rows {
                println!(
                    "{:<40} {:<9} {:<8} {:>9.3}s{}",
                    row.instance,
                    row.config,
                    row.outcome,
                    row.wall_time_secs,
                    row.error
                        .as_deref()
                        .map(|e| format!("  ({e})"))
                        .unwrap_or_default()
                );
            }
            println!();
            print!("{}", comparison_table(&report));
            let written = emit_report(
                &report,
                spec.solver.max_tracked_burst,
                csv.as_deref(),
                json.as_deref(),
                plots.as_deref(),
            )
            .map_err(|e| e.to_string())?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
    }
}

fn solve_one(
    file: &std::path::Path,
    cfg: SolverConfig,
    proof: Option<&std::path::Path>,
    stats_out: Option<&std::path::Path>,
) -> Result<u8, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let (formula, warnings) =
        parse_dimacs_with_warnings(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    println!("c burstsat solving {}", file.display());
    println!(
        "c parsed {} variables, {} clauses",
        formula.num_vars(),
        formula.clauses().len()
    );
    for w in &warnings {
        println!("c warning: line {}: {}", w.line, w.message);
    }
    let mut solver = Solver::new(&formula, cfg).map_err(|e| e.to_string())?;
    if let Some(path) = proof {
        let f = fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
        solver.set_proof_sink(Box::new(BufWriter::new(f)));
    }
    let result = solver.solve().map_err(|e| e.to_string())?;
    if let Some(path) = proof {
        if !matches!(result.outcome, Outcome::Unsat) {
            let _ = fs::remove_file(path);
            println!("c proof discarded (outcome not UNSAT)");
        } else {
            println!("c proof written to {}", path.display());
        }
    }
    if let Some(path) = stats_out {
        let json = serde_json::to_string_pretty(&result.stats).map_err(|e| e.to_string())?;
        fs::write(path, json + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let s = &result.stats;
    println!(
        "c decisions {} conflicts {} propagations {} restarts {} reduces {}",
        s.decisions, s.conflicts, s.propagations, s.restarts, s.reduces
    );
    println!(
        "c sc {} mc {} glr {} albd {} time {:.3}s",
        s.sc_decisions,
        s.mc_decisions,
        s.glr.map(|v| format!("{v:.3}")).unwrap_or_else(|| "-".into()),
        s.albd.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into()),
        s.wall_time_secs
    );
    match &result.outcome {
        Outcome::Sat(model) => {
            println!("s SATISFIABLE");
            let lits = model.to_dimacs_lits();
            for chunk in lits.chunks(20) {
                let line: Vec<String> = chunk.iter().map(|l| l.to_string()).collect();
                println!("v {}", line.join(" "));
            }
            println!("v 0");
            Ok(10)
        }
        Outcome::Unsat => {
            println!("s UNSATISFIABLE");
            Ok(20)
        }
        Outcome::Unknown => {
            println!("s UNKNOWN");
            Ok(0)
        }
    }
}
