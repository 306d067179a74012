//! The CDCL core: trail management, watched-literal unit propagation,
//! first-UIP conflict analysis with recursive clause minimization,
//! backjumping, Luby restarts, learned-clause database reduction, and DRAT
//! proof output.
//!
//! Every branching decision and every learned clause is reported to the
//! analytics layer exactly once. Within one decision, consecutive learned
//! clauses carry a chain certificate: the trail position where the previous
//! conflict's negated fUIP was asserted and the position of the current
//! fUIP, which the analytics layer checks for the expected ordering.
//!
//! LBD here counts all distinct decision levels of a clause, including level
//! 0 when a literal is assigned there; learned clauses produced by conflict
//! analysis never contain level-0 literals, so their LBD is 1 plus the number
//! of distinct earlier levels in the reason part.

mod analyze;
mod clause_db;
mod drat;
mod restart;
mod trail;

pub use analyze::ConflictAnalysisResult;
pub use clause_db::{ClauseDb, ClauseId};
pub use restart::{luby, RestartSchedule};
pub use trail::{AssignmentRecord, Reason, Trail};

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::analytics::{Analytics, ConflictEvent, EngineCounters, RunStats};
use crate::branching::Brancher;
use crate::cnf::{check_model, Formula, Literal, Model, Var};
use drat::DratWriter;

/// The deadline is polled every this many conflicts.
const DEADLINE_CHECK_INTERVAL: u64 = 1024;

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub seed: u64,
    /// Enables the CRVR branching extension.
    pub crvr_enabled: bool,
    /// CRVR window length k over recent learned clauses.
    pub crvr_k: usize,
    /// CRVR activity reduction factor Q, in (0, 1).
    pub crvr_q: f64,
    /// Luby restart unit, in conflicts.
    pub luby_unit: u64,
    /// First clause-database reduction happens after this many conflicts.
    pub reduce_base: u64,
    /// Each reduction pushes the next one this much further out.
    pub reduce_inc: u64,
    /// Bursts above this size are excluded from the histogram and from
    /// proximity sampling.
    pub max_tracked_burst: usize,
    pub conflict_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Records the decision literals (DIMACS-signed) into the result.
    pub record_decision_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            seed: 0,
            crvr_enabled: false,
            crvr_k: 50,
            crvr_q: 0.1,
            luby_unit: 128,
            reduce_base: 2000,
            reduce_inc: 300,
            max_tracked_burst: 10,
            conflict_budget: None,
            time_budget: None,
            record_decision_trace: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.crvr_q > 0.0 && self.crvr_q < 1.0) {
            return Err(SolverError::Config(format!(
                "crvr_q must be in (0, 1), got {}",
                self.crvr_q
            )));
        }
        if self.crvr_k < 1 {
            return Err(SolverError::Config("crvr_k must be >= 1".into()));
        }
        if self.luby_unit < 1 {
            return Err(SolverError::Config("luby_unit must be >= 1".into()));
        }
        if self.max_tracked_burst < 2 {
            return Err(SolverError::Config("max_tracked_burst must be >= 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("proof output failed: {0}")]
    ProofIo(#[from] std::io::Error),
}

/// Outcome of a solve call.
#[derive(Debug)]
pub enum Outcome {
    Sat(Model),
    Unsat,
    /// Budget exhausted before a verdict.
    Unknown,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Sat(_) => "SAT",
            Outcome::Unsat => "UNSAT",
            Outcome::Unknown => "UNKNOWN",
        }
    }

    pub fn model(&self) -> Option<&Model> {
        match self {
            Outcome::Sat(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: RunStats,
    pub decision_trace: Option<Vec<i32>>,
}

#[derive(Clone, Copy)]
struct Watch {
    clause: ClauseId,
    blocker: Literal,
}

/// One CDCL solver instance. Strictly single-threaded; the harness gets
/// parallelism from independent instances.
pub struct Solver {
    num_vars: Var,
    formula: Formula,
    cfg: SolverConfig,
    db: ClauseDb,
    watches: Vec<Vec<Watch>>,
    trail: Trail,
    prop_head: usize,
    brancher: Brancher,
    analytics: Analytics,
    phase: Vec<bool>,
    // Conflict-analysis scratch.
    seen: Vec<bool>,
    min_stack: Vec<Literal>,
    to_clear: Vec<Var>,
    conflicts: u64,
    decisions: u64,
    propagations: u64,
    reduces: u64,
    learned_deleted: u64,
    restart: RestartSchedule,
    next_reduce_at: u64,
    /// Trail position of the most recent learned-clause assertion within the
    /// current decision; cleared by decisions and restarts.
    chain_anchor: Option<usize>,
    proof: Option<DratWriter<Box<dyn Write + Send>>>,
    /// False once a top-level contradiction was found while loading clauses.
    ok: bool,
    decision_trace: Option<Vec<i32>>,
}

impl Solver {
    pub fn new(formula: &Formula, cfg: SolverConfig) -> Result<Solver, SolverError> {
        cfg.validate()?;
        let brancher = if cfg.crvr_enabled {
            Brancher::with_crvr(formula.num_vars(), cfg.seed, cfg.crvr_k, cfg.crvr_q)
        } else {
            Brancher::plain(formula.num_vars(), cfg.seed)
        };
        Ok(Solver::build(formula, cfg, brancher))
    }

    /// Builds a solver around an explicit brancher. Used to compare the
    /// config-disabled CRVR path against a brancher constructed without any
    /// CRVR state.
    pub fn with_brancher(
        formula: &Formula,
        cfg: SolverConfig,
        brancher: Brancher,
    ) -> Result<Solver, SolverError> {
        cfg.validate()?;
        Ok(Solver::build(formula, cfg, brancher))
    }

    fn build(formula: &Formula, cfg: SolverConfig, brancher: Brancher) -> Solver {
        let num_vars = formula.num_vars();
        let n = num_vars as usize + 1;
        let mut solver = Solver {
            num_vars,
            formula: formula.clone(),
            db: ClauseDb::new(),
            watches: (0..2 * n).map(|_| Vec::new()).collect(),
            trail: Trail::new(num_vars),
            prop_head: 0,
            brancher,
            analytics: Analytics::new(cfg.max_tracked_burst),
            phase: vec![false; n],
            seen: vec![false; n],
            min_stack: Vec::new(),
            to_clear: Vec::new(),
            conflicts: 0,
            decisions: 0,
            propagations: 0,
            reduces: 0,
            learned_deleted: 0,
            restart: RestartSchedule::new(cfg.luby_unit),
            next_reduce_at: cfg.reduce_base,
            chain_anchor: None,
            proof: None,
            ok: true,
            decision_trace: cfg.record_decision_trace.then(Vec::new),
            cfg,
        };
        solver.load_clauses();
        solver
    }

    /// Enables DRAT proof logging into `sink`.
    pub fn set_proof_sink(&mut self, sink: Box<dyn Write + Send>) {
        self.proof = Some(DratWriter::new(sink));
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    fn load_clauses(&mut self) {
        let clauses: Vec<_> = self.formula.clauses().to_vec();
        for clause in &clauses {
            if clause.is_tautology() {
                continue;
            }
            match clause.literals() {
                [] => self.ok = false,
                [unit] => match self.trail.value(*unit) {
                    Some(true) => {}
                    Some(false) => self.ok = false,
                    None => self.trail.assign(*unit, Reason::Unit),
                },
                lits => {
                    let id = self.db.add(lits.to_vec(), false, 0);
                    self.attach_watches(id);
                }
            }
        }
    }

    fn attach_watches(&mut self, id: ClauseId) {
        let lits = self.db.lits(id);
        debug_assert!(lits.len() >= 2);
        let (w0, w1) = (lits[0], lits[1]);
        self.watches[w0.code()].push(Watch { clause: id, blocker: w1 });
        self.watches[w1.code()].push(Watch { clause: id, blocker: w0 });
    }

    fn detach_watches(&mut self, id: ClauseId) {
        let lits = self.db.lits(id);
        let (w0, w1) = (lits[0], lits[1]);
        for w in [w0, w1] {
            let list = &mut self.watches[w.code()];
            let i = list
                .iter()
                .position(|entry| entry.clause == id)
                .expect("watch entry present");
            list.swap_remove(i);
        }
    }

    /// Unit propagation to fixpoint. Returns the first clause found with all
    /// literals false, if any; conflicts are a normal return, not an error.
    pub(crate) fn propagate(&mut self) -> Option<ClauseId> {
        let mut conflict = None;
        'queue: while conflict.is_none() && self.prop_head < self.trail.len() {
            let p = self.trail.literal_at(self.prop_head);
            self.prop_head += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut i = 0;
            while i < ws.len() {
                if self.trail.value(ws[i].blocker) == Some(true) {
                    i += 1;
                    continue;
                }
                let cid = ws[i].clause;
                let lits = self.db.lits_mut(cid);
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                debug_assert_eq!(lits[1], false_lit);
                let first = lits[0];
                if self.trail.value(first) == Some(true) {
                    ws[i].blocker = first;
                    i += 1;
                    continue;
                }
                // Look for a non-false replacement watch.
                let lits = self.db.lits_mut(cid);
                let mut moved = false;
                for k in 2..lits.len() {
                    if self.trail.value(lits[k]) != Some(false) {
                        lits.swap(1, k);
                        let new_watch = lits[1];
                        self.watches[new_watch.code()].push(Watch {
                            clause: cid,
                            blocker: first,
                        });
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[i].blocker = first;
                if self.trail.value(first) == Some(false) {
                    conflict = Some(cid);
                    self.watches[false_lit.code()] = ws;
                    self.prop_head = self.trail.len();
                    continue 'queue;
                }
                // Unit: the remaining literal is implied.
                self.trail.assign(first, Reason::Clause(cid));
                self.propagations += 1;
                i += 1;
            }
            self.watches[false_lit.code()] = ws;
        }
        conflict
    }

    pub(crate) fn decide(&mut self, lit: Literal) {
        // Closing here is a no-op in the solve loop, which already closed the
        // previous decision before consulting the brancher.
        self.analytics.on_decision_end(self.brancher.crvr_mut());
        self.decisions += 1;
        self.analytics.on_decision();
        self.chain_anchor = None;
        if let Some(trace) = &mut self.decision_trace {
            trace.push(lit.to_dimacs());
        }
        self.trail.new_level();
        self.trail.assign(lit, Reason::Decision);
    }

    /// Removes all assignments above `bl`; freed variables go back to the
    /// branching heap and keep their phase.
    pub(crate) fn backjump(&mut self, bl: u32) {
        let brancher = &mut self.brancher;
        let phase = &mut self.phase;
        self.trail.backjump_to(bl, |var, value| {
            phase[var as usize] = value;
            brancher.on_unassign(var);
        });
        self.prop_head = self.trail.len();
    }

    fn do_restart(&mut self) {
        self.restart.on_restart(self.conflicts);
        self.chain_anchor = None;
        self.backjump(0);
    }

    fn reduce_clause_db(&mut self) -> Result<(), SolverError> {
        let locked: HashSet<ClauseId> = self
            .trail
            .records()
            .iter()
            .filter_map(|r| match r.reason {
                Reason::Clause(id) => Some(id),
                _ => None,
            })
            .collect();
        let removed = self.db.reduce_mark(|id| locked.contains(&id));
        for &id in &removed {
            if let Some(p) = &mut self.proof {
                p.delete_clause(self.db.lits(id))?;
            }
            self.detach_watches(id);
            self.learned_deleted += 1;
        }
        self.db.finish_reduce(&removed);
        self.reduces += 1;
        self.next_reduce_at = self.conflicts + self.cfg.reduce_base + self.cfg.reduce_inc * self.reduces;
        #[cfg(debug_assertions)]
        for r in self.trail.records() {
            if let Reason::Clause(id) = r.reason {
                assert!(!self.db.is_deleted(id), "reduce removed a reason clause");
            }
        }
        Ok(())
    }

    fn extract_model(&self) -> Model {
        Model::from_values(
            (1..=self.num_vars)
                .map(|v| self.trail.value_var(v).expect("total assignment"))
                .collect(),
        )
    }

    fn flush_proof(&mut self) -> Result<(), SolverError> {
        if let Some(p) = &mut self.proof {
            p.flush()?;
        }
        Ok(())
    }

    fn proof_empty_clause(&mut self) -> Result<(), SolverError> {
        if let Some(p) = &mut self.proof {
            p.add_empty()?;
        }
        Ok(())
    }

    fn finish(&mut self, outcome: Outcome, start: Instant) -> Result<SolveResult, SolverError> {
        self.flush_proof()?;
        self.analytics.on_decision_end(self.brancher.crvr_mut());
        let counters = EngineCounters {
            decisions: self.decisions,
            propagations: self.propagations,
            restarts: self.restart.restarts(),
            reduces: self.reduces,
            learned_deleted: self.learned_deleted,
        };
        let stats: RunStats =
            self.analytics
                .finalize(outcome.as_str(), start.elapsed().as_secs_f64(), counters);
        Ok(SolveResult {
            outcome,
            stats,
            decision_trace: self.decision_trace.take(),
        })
    }

    /// Runs the CDCL loop to completion or budget exhaustion.
    pub fn solve(&mut self) -> Result<SolveResult, SolverError> {
        let start = Instant::now();
        let deadline = self.cfg.time_budget.map(|d| start + d);
        if !self.ok {
            self.proof_empty_clause()?;
            return self.finish(Outcome::Unsat, start);
        }
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                if self.trail.current_level() == 0 {
                    self.proof_empty_clause()?;
                    return self.finish(Outcome::Unsat, start);
                }
                let result = self.analyze(confl);
                if let Some(p) = &mut self.proof {
                    p.add_clause(&result.learned)?;
                }
                self.analytics.on_conflict(ConflictEvent {
                    conflict_index: self.conflicts,
                    lbd: result.lbd,
                    reason_levels: result.reason_levels.clone(),
                    fuip_var: result.fuip.var(),
                    level_decision_vars: result.level_decision_vars.clone(),
                    chain: result.chain,
                });
                if let Some(crvr) = self.brancher.crvr_mut() {
                    crvr.record_lbd(result.lbd);
                }
                self.brancher.bump_and_decay(&result.bumped);
                self.db.decay_activity();
                self.learn_and_assert(&result);
                if let Some(budget) = self.cfg.conflict_budget {
                    if self.conflicts >= budget {
                        return self.finish(Outcome::Unknown, start);
                    }
                }
                if self.conflicts.is_multiple_of(DEADLINE_CHECK_INTERVAL) {
                    if let Some(d) = deadline {
                        if Instant::now() >= d {
                            return self.finish(Outcome::Unknown, start);
                        }
                    }
                }
                if self.conflicts >= self.next_reduce_at {
                    self.reduce_clause_db()?;
                }
            } else {
                if self.trail.len() == self.num_vars as usize {
                    let model = self.extract_model();
                    assert!(
                        check_model(&self.formula, &model),
                        "internal error: SAT model failed verification"
                    );
                    return self.finish(Outcome::Sat(model), start);
                }
                if self.restart.due(self.conflicts) {
                    self.do_restart();
                    continue;
                }
                self.analytics.on_decision_end(self.brancher.crvr_mut());
                let v = self
                    .brancher
                    .next_var(|var| self.trail.is_assigned(var))
                    .expect("a free variable exists while the trail is incomplete");
                self.decide(Literal::new(v, self.phase[v as usize]));
            }
        }
    }

    /// Backjumps and asserts the learned clause: after the jump, the
    /// asserting literal is the only unassigned one and is unit-propagated
    /// from the learned clause (or as a level-0 fact for a unit clause).
    fn learn_and_assert(&mut self, result: &ConflictAnalysisResult) {
        self.backjump(result.backjump_level);
        let assert_lit = result.learned[0];
        debug_assert_eq!(self.trail.value(assert_lit), None);
        let anchor = self.trail.len();
        if result.learned.len() == 1 {
            debug_assert_eq!(self.trail.current_level(), 0);
            self.trail.assign(assert_lit, Reason::Unit);
        } else {
            debug_assert!(result.learned[1..]
                .iter()
                .all(|&l| self.trail.value(l) == Some(false)));
            let id = self.db.add(result.learned.clone(), true, result.lbd);
            self.attach_watches(id);
            self.trail.assign(assert_lit, Reason::Clause(id));
        }
        self.chain_anchor = Some(anchor);
    }
}

/// Number of distinct decision levels among a clause's literals. All literals
/// must be assigned.
pub fn compute_lbd(lits: &[Literal], trail: &Trail) -> u32 {
    let mut levels: Vec<u32> = lits.iter().map(|l| trail.level_of(l.var())).collect();
    levels.sort_unstable();
    levels.dedup();
    levels.len() as u32
}
