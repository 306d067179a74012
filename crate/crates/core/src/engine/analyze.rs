//! First-UIP conflict analysis.
//!
//! Starting from the conflicting clause, literals of the current decision
//! level are resolved against their reason clauses in reverse trail order
//! until a single current-level literal remains; its negation becomes the
//! asserting literal of the learned clause. The learned clause is then
//! shrunk by recursive self-subsumption minimization before the backjump
//! level, LBD, and reason-level set are computed.

use crate::analytics::{self, ChainCertificate};
use crate::cnf::{Literal, Var};

use super::{compute_lbd, ClauseId, Reason, Solver};

/// Everything conflict analysis produces for one conflict.
///
/// `learned[0]` is the asserting literal (the negated fUIP); the remaining
/// literals form the reason clause, all assigned at earlier levels.
#[derive(Clone, Debug)]
pub struct ConflictAnalysisResult {
    pub learned: Vec<Literal>,
    pub lbd: u32,
    pub backjump_level: u32,
    /// The fUIP literal, as assigned on the trail.
    pub fuip: Literal,
    /// Distinct decision levels of the reason clause, sorted ascending.
    pub reason_levels: Vec<u32>,
    /// Decision variable of each reason level, snapshotted now.
    pub level_decision_vars: Vec<(u32, Var)>,
    /// Chain evidence linking this conflict to the previous one of the same
    /// decision; `None` for a decision's first conflict.
    pub chain: Option<ChainCertificate>,
    /// Variables seen during resolution, for activity bumping.
    pub bumped: Vec<Var>,
}

impl Solver {
    /// Analyzes a conflict at decision level >= 1. Level-0 conflicts mean
    /// global unsatisfiability and are handled by the caller.
    pub(crate) fn analyze(&mut self, conflict: ClauseId) -> ConflictAnalysisResult {
        let current = self.trail.current_level();
        debug_assert!(current >= 1, "level-0 conflicts are not analyzed");
        debug_assert!(self
            .db
            .lits(conflict)
            .iter()
            .all(|&l| self.trail.value(l) == Some(false)));

        let mut learned: Vec<Literal> = vec![Literal::new(1, true)]; // slot 0 filled below
        let mut bumped: Vec<Var> = Vec::new();
        let mut path = 0u32;
        let mut idx = self.trail.len();
        let mut resolving = false;
        let mut cid = conflict;
        let fuip = loop {
            if self.db.is_learnt(cid) {
                self.db.bump_activity(cid);
            }
            // Skip index 0 of a reason clause: that is the literal whose
            // propagation is being resolved.
            for i in usize::from(resolving)..self.db.lits(cid).len() {
                let q = self.db.lits(cid)[i];
                let v = q.var();
                if !self.seen[v as usize] && self.trail.level_of(v) > 0 {
                    self.seen[v as usize] = true;
                    self.to_clear.push(v);
                    bumped.push(v);
                    if self.trail.level_of(v) >= current {
                        path += 1;
                    } else {
                        learned.push(q);
                    }
                }
            }
            // Next marked literal, in reverse trail order (deterministic fUIP).
            loop {
                idx -= 1;
                if self.seen[self.trail.literal_at(idx).var() as usize] {
                    break;
                }
            }
            let p = self.trail.literal_at(idx);
            self.seen[p.var() as usize] = false;
            path -= 1;
            if path == 0 {
                learned[0] = !p;
                break p;
            }
            resolving = true;
            cid = match self.trail.reason_of(p.var()) {
                Reason::Clause(id) => id,
                other => unreachable!("resolved literal {p} has non-clause reason {other:?}"),
            };
        };

        self.minimize(&mut learned);

        // Move the highest remaining level to slot 1: it is the backjump
        // level and the second watch of the learned clause.
        let backjump_level = if learned.len() == 1 {
            0
        } else {
            let mut best = 1;
            for i in 2..learned.len() {
                if self.trail.level_of(learned[i].var()) > self.trail.level_of(learned[best].var())
                {
                    best = i;
                }
            }
            learned.swap(1, best);
            self.trail.level_of(learned[1].var())
        };

        let lbd = compute_lbd(&learned, &self.trail);
        let reason_levels = analytics::level_set(&learned[1..], &self.trail);
        debug_assert!(reason_levels.first().is_none_or(|&dl| dl >= 1));
        let level_decision_vars = reason_levels
            .iter()
            .map(|&dl| (dl, self.trail.decision_var(dl)))
            .collect();

        let fuip_pos = self.trail.position_of(fuip.var());
        let chain = self.chain_anchor.map(|anchor| ChainCertificate {
            prev_assert_pos: anchor,
            fuip_pos,
            decision_between: fuip_pos > anchor
                && self.trail.records()[anchor + 1..=fuip_pos]
                    .iter()
                    .any(|r| r.reason == Reason::Decision),
        });
        for v in self.to_clear.drain(..) {
            self.seen[v as usize] = false;
        }

        ConflictAnalysisResult {
            learned,
            lbd,
            backjump_level,
            fuip,
            reason_levels,
            level_decision_vars,
            chain,
            bumped,
        }
    }

    /// Recursive self-subsumption minimization: drops a reason literal when
    /// every path through its implication ancestors ends in literals already
    /// in the clause or at level 0.
    fn minimize(&mut self, learned: &mut Vec<Literal>) {
        let mut abstract_levels = 0u64;
        for l in &learned[1..] {
            abstract_levels |= 1 << (self.trail.level_of(l.var()) & 63);
        }
        let mut i = 1;
        while i < learned.len() {
            let redundant = match self.trail.reason_of(learned[i].var()) {
                Reason::Decision | Reason::Unit => false,
                Reason::Clause(_) => self.lit_redundant(learned[i], abstract_levels),
            };
            if redundant {
                learned.swap_remove(i);
            } else {
                i += 1;
            }
        }
    }

    fn lit_redundant(&mut self, lit: Literal, abstract_levels: u64) -> bool {
        self.min_stack.clear();
        self.min_stack.push(lit);
        let undo_mark = self.to_clear.len();
        while let Some(p) = self.min_stack.pop() {
            let cid = match self.trail.reason_of(p.var()) {
                Reason::Clause(id) => id,
                _ => unreachable!("minimization stack holds propagated literals only"),
            };
            let lits = self.db.lits(cid);
            for &q in &lits[1..] {
                let v = q.var();
                if self.seen[v as usize] || self.trail.level_of(v) == 0 {
                    continue;
                }
                let propagated = matches!(self.trail.reason_of(v), Reason::Clause(_));
                if propagated && (1u64 << (self.trail.level_of(v) & 63)) & abstract_levels != 0 {
                    self.seen[v as usize] = true;
                    self.to_clear.push(v);
                    self.min_stack.push(q);
                } else {
                    for &u in &self.to_clear[undo_mark..] {
                        self.seen[u as usize] = false;
                    }
                    self.to_clear.truncate(undo_mark);
                    return false;
                }
            }
        }
        true
    }
}
