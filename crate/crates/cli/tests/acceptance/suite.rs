//! The shared desk-scale instance suite: 50 seeded uniform random 3-SAT
//! instances at the n=100, m=430 generation point plus crafted pigeonhole
//! and off-ratio random instances, solved once and reused by several
//! criteria.

use std::sync::OnceLock;
use std::time::Duration;

use burstsat::analytics::RunStats;
use burstsat::cnf::Formula;
use burstsat::engine::{Solver, SolverConfig};
use burstsat::instances::{pigeonhole, random_3sat};

pub struct SuiteRun {
    pub name: String,
    pub stats: RunStats,
}

pub fn suite_instances() -> Vec<(String, Formula)> {
    let mut out = Vec::new();
    for seed in 0..50u64 {
        out.push((format!("rnd100_{seed:02}.cnf"), random_3sat(100, 430, seed)));
    }
    out.push(("php_4_3.cnf".into(), pigeonhole(4, 3)));
    out.push(("php_5_4.cnf".into(), pigeonhole(5, 4)));
    out.push(("php_6_5.cnf".into(), pigeonhole(6, 5)));
    out.push(("php_4_4.cnf".into(), pigeonhole(4, 4)));
    out.push(("php_5_5.cnf".into(), pigeonhole(5, 5)));
    for seed in 0..3u64 {
        out.push((
            format!("rnd_easy_{seed}.cnf"),
            random_3sat(100, 300, 500 + seed),
        ));
    }
    for seed in 0..3u64 {
        out.push((
            format!("rnd_dense_{seed}.cnf"),
            random_3sat(60, 330, 700 + seed),
        ));
    }
    out
}

fn run_suite() -> Vec<SuiteRun> {
    suite_instances()
        .into_iter()
        .map(|(name, formula)| {
            let cfg = SolverConfig {
                time_budget: Some(Duration::from_secs(60)),
                ..SolverConfig::default()
            };
            let result = Solver::new(&formula, cfg)
                .expect("valid config")
                .solve()
                .expect("no proof sink, no io errors");
            SuiteRun {
                name,
                stats: result.stats,
            }
        })
        .collect()
}

/// Solved once, shared by criteria 3, 5, 6, 7 and 8.
pub fn suite_results() -> &'static [SuiteRun] {
    static RESULTS: OnceLock<Vec<SuiteRun>> = OnceLock::new();
    RESULTS.get_or_init(run_suite)
}
