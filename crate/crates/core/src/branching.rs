//! Activity-based variable selection (EVSIDS) extended with the CRVR
//! strategy.
//!
//! Activities follow the usual scheme: each conflict bumps the variables seen
//! during resolution by an increment, and the increment is divided by a decay
//! factor of 0.95 afterwards. When any value crosses 1e100, all activities
//! and the increment are rescaled by 1e-100, which leaves the selection order
//! unchanged.
//!
//! CRVR adds two pieces on top: [`detect_poor_crv`] flags the common reason
//! decision variables of a poor multi-conflict decision, and [`crvr_branch`]
//! lazily applies a one-shot activity reduction by `(1 - Q)` when a flagged
//! variable reaches the top of the order. CRVR state is held as an
//! `Option<CrvrState>` inside [`Brancher`]; a brancher built without it
//! contains no CRVR code path at all.

use std::collections::VecDeque;

use crate::analytics::DecisionRecord;
use crate::cnf::Var;
use crate::rng::SplitMix64;

const RESCALE_THRESHOLD: f64 = 1e100;
const RESCALE_FACTOR: f64 = 1e-100;
const DECAY: f64 = 0.95;
/// Spread of the seeded initial activity jitter.
const INIT_JITTER: f64 = 1e-6;

const ABSENT: u32 = u32::MAX;

/// Indexed binary max-heap over variables, ordered by activity with ties
/// broken by the smaller variable index for determinism.
struct ActivityHeap {
    heap: Vec<Var>,
    pos: Vec<u32>, // var -> heap index
}

impl ActivityHeap {
    fn new(num_vars: Var) -> ActivityHeap {
        ActivityHeap {
            heap: Vec::with_capacity(num_vars as usize),
            pos: vec![ABSENT; num_vars as usize + 1],
        }
    }

    fn contains(&self, v: Var) -> bool {
        self.pos[v as usize] != ABSENT
    }

    fn better(a: Var, b: Var, act: &[f64]) -> bool {
        let (aa, ab) = (act[a as usize], act[b as usize]);
        aa > ab || (aa == ab && a < b)
    }

    fn insert(&mut self, v: Var, act: &[f64]) {
        debug_assert!(!self.contains(v));
        self.pos[v as usize] = self.heap.len() as u32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn pop_max(&mut self, act: &[f64]) -> Option<Var> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    /// Restores heap order after `v`'s activity changed.
    fn update(&mut self, v: Var, act: &[f64]) {
        let i = self.pos[v as usize];
        if i == ABSENT {
            return;
        }
        self.sift_up(i as usize, act);
        self.sift_down(self.pos[v as usize] as usize, act);
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if Self::better(self.heap[i], self.heap[parent], act) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && Self::better(self.heap[l], self.heap[best], act) {
                best = l;
            }
            if r < self.heap.len() && Self::better(self.heap[r], self.heap[best], act) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i] as usize] = i as u32;
        self.pos[self.heap[j] as usize] = j as u32;
    }
}

/// Per-variable activity scores plus the priority structure over free
/// variables.
pub struct ActivityState {
    activity: Vec<f64>,
    heap: ActivityHeap,
    increment: f64,
}

impl ActivityState {
    /// Builds the state with seeded initial jitter so different seeds explore
    /// different tie-breaks. Every variable starts inside the heap.
    pub fn new(num_vars: Var, seed: u64) -> ActivityState {
        let mut rng = SplitMix64::new(seed);
        let mut activity = vec![0.0; num_vars as usize + 1];
        for slot in activity.iter_mut().skip(1) {
            *slot = rng.next_f64() * INIT_JITTER;
        }
        let mut heap = ActivityHeap::new(num_vars);
        for v in 1..=num_vars {
            heap.insert(v, &activity);
        }
        ActivityState {
            activity,
            heap,
            increment: 1.0,
        }
    }

    /// Test constructor: explicit per-variable activities (`acts[0]` unused).
    #[cfg(test)]
    fn with_activities(acts: Vec<f64>) -> ActivityState {
        let num_vars = (acts.len() - 1) as Var;
        let mut heap = ActivityHeap::new(num_vars);
        for v in 1..=num_vars {
            heap.insert(v, &acts);
        }
        ActivityState {
            activity: acts,
            heap,
            increment: 1.0,
        }
    }

    pub fn activity(&self, v: Var) -> f64 {
        self.activity[v as usize]
    }

    /// Bumps every variable involved in a conflict, then decays the increment.
    pub fn bump_and_decay(&mut self, vars: &[Var]) {
        for &v in vars {
            self.activity[v as usize] += self.increment;
            if self.activity[v as usize] > RESCALE_THRESHOLD {
                self.rescale();
            }
            self.heap.update(v, &self.activity);
        }
        self.increment /= DECAY;
        if self.increment > RESCALE_THRESHOLD {
            self.rescale();
        }
    }

    fn rescale(&mut self) {
        for a in &mut self.activity {
            *a *= RESCALE_FACTOR;
        }
        self.increment *= RESCALE_FACTOR;
        // Uniform scaling keeps the heap order valid.
    }

    /// Puts a freed variable back into the priority structure.
    pub fn on_unassign(&mut self, v: Var) {
        if !self.heap.contains(v) {
            self.heap.insert(v, &self.activity);
        }
    }

    /// Pops the highest-activity free variable, discarding stale entries.
    pub fn pop_top_free(&mut self, mut is_assigned: impl FnMut(Var) -> bool) -> Option<Var> {
        while let Some(v) = self.heap.pop_max(&self.activity) {
            if !is_assigned(v) {
                return Some(v);
            }
        }
        None
    }

    /// Applies a multiplicative reduction and reinserts `v` at its new rank.
    pub fn scale_and_requeue(&mut self, v: Var, factor: f64) {
        self.activity[v as usize] *= factor;
        debug_assert!(self.activity[v as usize] >= 0.0);
        if self.heap.contains(v) {
            self.heap.update(v, &self.activity);
        } else {
            self.heap.insert(v, &self.activity);
        }
    }
}

/// Poor-CRV markers, set by [`detect_poor_crv`] and cleared exactly once at
/// the variable's next selection attempt.
pub struct PoorCrvFlags {
    flags: Vec<bool>,
    num_set: usize,
}

impl PoorCrvFlags {
    pub fn new(num_vars: Var) -> PoorCrvFlags {
        PoorCrvFlags {
            flags: vec![false; num_vars as usize + 1],
            num_set: 0,
        }
    }

    pub fn is_flagged(&self, v: Var) -> bool {
        self.flags[v as usize]
    }

    /// Returns true when the flag was newly set (flags do not stack).
    pub fn set(&mut self, v: Var) -> bool {
        if self.flags[v as usize] {
            false
        } else {
            self.flags[v as usize] = true;
            self.num_set += 1;
            true
        }
    }

    pub fn clear(&mut self, v: Var) {
        if self.flags[v as usize] {
            self.flags[v as usize] = false;
            self.num_set -= 1;
        }
    }

    pub fn num_set(&self) -> usize {
        self.num_set
    }
}

/// CRVR parameters: window length `k`, reduction factor `q`, and the last
/// threshold computed by [`detect_poor_crv`].
#[derive(Clone, Debug)]
pub struct CrvrParams {
    pub k: usize,
    pub q: f64,
    pub theta: Option<f64>,
}

/// All CRVR state: parameters, poor flags, and the sliding window of recent
/// learned-clause LBD values that defines the threshold.
pub struct CrvrState {
    pub params: CrvrParams,
    pub flags: PoorCrvFlags,
    lbd_window: VecDeque<u32>,
}

impl CrvrState {
    pub fn new(num_vars: Var, k: usize, q: f64) -> CrvrState {
        assert!(k >= 1, "crvr window length must be >= 1");
        assert!(q > 0.0 && q < 1.0, "crvr reduction factor must be in (0, 1)");
        CrvrState {
            params: CrvrParams { k, q, theta: None },
            flags: PoorCrvFlags::new(num_vars),
            lbd_window: VecDeque::with_capacity(k),
        }
    }

    /// Feeds one learned-clause LBD into the threshold window.
    pub fn record_lbd(&mut self, lbd: u32) {
        if self.lbd_window.len() == self.params.k {
            self.lbd_window.pop_front();
        }
        self.lbd_window.push_back(lbd);
    }

    /// Mean LBD of the last `k` learned clauses (all clauses so far when
    /// fewer than `k` exist); `None` before any clause is learned.
    pub fn theta(&self) -> Option<f64> {
        if self.lbd_window.is_empty() {
            return None;
        }
        let sum: u64 = self.lbd_window.iter().map(|&x| x as u64).sum();
        Some(sum as f64 / self.lbd_window.len() as f64)
    }

    pub fn window_len(&self) -> usize {
        self.lbd_window.len()
    }
}

/// Variable selection: plain EVSIDS, or EVSIDS with the CRVR reduction loop.
pub struct Brancher {
    pub activity: ActivityState,
    crvr: Option<CrvrState>,
}

impl Brancher {
    /// Plain activity-based brancher with no CRVR state at all.
    pub fn plain(num_vars: Var, seed: u64) -> Brancher {
        Brancher {
            activity: ActivityState::new(num_vars, seed),
            crvr: None,
        }
    }

    pub fn with_crvr(num_vars: Var, seed: u64, k: usize, q: f64) -> Brancher {
        Brancher {
            activity: ActivityState::new(num_vars, seed),
            crvr: Some(CrvrState::new(num_vars, k, q)),
        }
    }

    pub fn crvr(&self) -> Option<&CrvrState> {
        self.crvr.as_ref()
    }

    pub fn crvr_mut(&mut self) -> Option<&mut CrvrState> {
        self.crvr.as_mut()
    }

    pub fn bump_and_decay(&mut self, vars: &[Var]) {
        self.activity.bump_and_decay(vars);
    }

    pub fn on_unassign(&mut self, v: Var) {
        self.activity.on_unassign(v);
    }

    /// Picks the next decision variable, or `None` when no free variable
    /// remains (the caller must have detected SAT before that).
    pub fn next_var(&mut self, is_assigned: impl FnMut(Var) -> bool) -> Option<Var> {
        match &mut self.crvr {
            None => self.activity.pop_top_free(is_assigned),
            Some(crvr) => crvr_branch(&mut self.activity, crvr, is_assigned),
        }
    }
}

/// The CRVR selection loop: take the highest-activity free variable; if it is
/// flagged poor, reduce its activity by `(1 - Q)`, clear the flag, reorder,
/// and try again. A variable is returned only with its flag clear, after at
/// most one reduction per flag, so the loop runs at most
/// `#flagged free vars + 1` iterations.
pub fn crvr_branch(
    activity: &mut ActivityState,
    crvr: &mut CrvrState,
    mut is_assigned: impl FnMut(Var) -> bool,
) -> Option<Var> {
    loop {
        let y = activity.pop_top_free(&mut is_assigned)?;
        if crvr.flags.is_flagged(y) {
            activity.scale_and_requeue(y, 1.0 - crvr.params.q);
            crvr.flags.clear(y);
        } else {
            return Some(y);
        }
    }
}

/// Invoked at the end of a multi-conflict decision, before the next branching
/// decision. Recomputes the threshold θ as the mean LBD of the last `k`
/// learned clauses; if the decision's best (minimum) LBD is worse than θ, the
/// decision variable of every level common to all its reason clauses is
/// flagged poor. Returns the number of newly flagged variables.
///
/// Levels are resolved through the per-conflict decision-variable snapshots
/// taken at analysis time, so an interleaved backjump or restart cannot
/// invalidate the lookup. Level 0 has no decision variable and is skipped.
pub fn detect_poor_crv(record: &DecisionRecord, crvr: &mut CrvrState) -> usize {
    debug_assert!(record.burst() >= 2, "detect_poor_crv expects an mc decision");
    let Some(theta) = crvr.theta() else {
        return 0;
    };
    crvr.params.theta = Some(theta);
    let Some(min_lbd) = record.min_lbd() else {
        return 0;
    };
    if f64::from(min_lbd) <= theta {
        return 0;
    }
    let mut newly = 0;
    for dl in record.lbp() {
        if dl == 0 {
            continue;
        }
        if let Some(v) = record.decision_var_snapshot(dl) {
            if crvr.flags.set(v) {
                newly += 1;
            }
        }
    }
    newly
}
