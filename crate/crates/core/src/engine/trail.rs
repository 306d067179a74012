//! The assignment trail: the ordered sequence of current assignments with
//! their decision levels and reasons.

use crate::cnf::{Literal, Var};

use super::clause_db::ClauseId;

/// Why a literal is on the trail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The single branching literal of its level.
    Decision,
    /// Propagated by this clause; all other literals were false.
    Clause(ClauseId),
    /// Level-0 fact without a stored clause (input unit or learned unit).
    Unit,
}

#[derive(Clone, Copy, Debug)]
pub struct AssignmentRecord {
    pub literal: Literal,
    pub level: u32,
    pub reason: Reason,
}

/// Partial assignment with level bookkeeping.
///
/// Invariants: levels along the trail are non-decreasing, each level `>= 1`
/// has exactly one `Decision` record (its first), and no variable appears
/// twice.
pub struct Trail {
    records: Vec<AssignmentRecord>,
    values: Vec<Option<bool>>, // var-indexed, slot 0 unused
    positions: Vec<usize>,     // var -> index into records
    level_starts: Vec<usize>,  // level -> first record index of that level
}

const NO_POSITION: usize = usize::MAX;

impl Trail {
    pub fn new(num_vars: Var) -> Trail {
        let n = num_vars as usize + 1;
        Trail {
            records: Vec::with_capacity(n),
            values: vec![None; n],
            positions: vec![NO_POSITION; n],
            level_starts: vec![0],
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[AssignmentRecord] {
        &self.records
    }

    pub fn record(&self, pos: usize) -> &AssignmentRecord {
        &self.records[pos]
    }

    pub fn literal_at(&self, pos: usize) -> Literal {
        self.records[pos].literal
    }

    pub fn current_level(&self) -> u32 {
        (self.level_starts.len() - 1) as u32
    }

    pub fn value_var(&self, var: Var) -> Option<bool> {
        self.values[var as usize]
    }

    /// Truth value of a literal under the current partial assignment.
    pub fn value(&self, lit: Literal) -> Option<bool> {
        self.values[lit.var() as usize].map(|v| v == lit.is_positive())
    }

    pub fn is_assigned(&self, var: Var) -> bool {
        self.values[var as usize].is_some()
    }

    /// Decision level of an assigned variable.
    pub fn level_of(&self, var: Var) -> u32 {
        debug_assert!(self.is_assigned(var));
        self.records[self.positions[var as usize]].level
    }

    pub fn reason_of(&self, var: Var) -> Reason {
        debug_assert!(self.is_assigned(var));
        self.records[self.positions[var as usize]].reason
    }

    /// Trail index of an assigned variable's record.
    pub fn position_of(&self, var: Var) -> usize {
        debug_assert!(self.is_assigned(var));
        self.positions[var as usize]
    }

    /// The decision variable of level `dl`.
    ///
    /// Contract: `1 <= dl <= current_level`.
    pub fn decision_var(&self, dl: u32) -> Var {
        assert!(
            dl >= 1 && dl <= self.current_level(),
            "decision_var: level {dl} not on trail (current {})",
            self.current_level()
        );
        let rec = &self.records[self.level_starts[dl as usize]];
        debug_assert_eq!(rec.reason, Reason::Decision);
        rec.literal.var()
    }

    /// Opens a new decision level; the next assignment must be the decision.
    pub fn new_level(&mut self) {
        self.level_starts.push(self.records.len());
    }

    /// Appends an assignment at the current level. The literal becomes true.
    pub fn assign(&mut self, lit: Literal, reason: Reason) {
        let var = lit.var() as usize;
        debug_assert!(self.values[var].is_none(), "variable {var} already assigned");
        debug_assert!(
            reason != Reason::Unit || self.current_level() == 0,
            "Unit reason outside level 0"
        );
        self.values[var] = Some(lit.is_positive());
        self.positions[var] = self.records.len();
        self.records.push(AssignmentRecord {
            literal: lit,
            level: self.current_level(),
            reason,
        });
    }

    /// Removes all records above `bl`, reporting each freed variable and its
    /// dropped value (for phase saving and heap reinsertion), newest first.
    pub fn backjump_to(&mut self, bl: u32, mut on_unassign: impl FnMut(Var, bool)) {
        debug_assert!(bl <= self.current_level());
        if bl == self.current_level() {
            return;
        }
        let keep = self.level_starts[bl as usize + 1];
        for rec in self.records.drain(keep..).rev() {
            let var = rec.literal.var();
            self.values[var as usize] = None;
            self.positions[var as usize] = NO_POSITION;
            on_unassign(var, rec.literal.is_positive());
        }
        self.level_starts.truncate(bl as usize + 1);
    }

    /// Debug validation of trail well-formedness.
    #[cfg(debug_assertions)]
    pub fn check_well_formed(&self) {
        let mut last_level = 0;
        for (i, rec) in self.records.iter().enumerate() {
            assert!(rec.level >= last_level, "levels must be non-decreasing");
            last_level = rec.level;
            assert_eq!(self.positions[rec.literal.var() as usize], i);
            let is_decision = rec.reason == Reason::Decision;
            let is_level_start = rec.level >= 1
                && self.level_starts.get(rec.level as usize) == Some(&i);
            assert_eq!(is_decision, is_level_start);
        }
    }
}
