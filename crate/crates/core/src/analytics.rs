//! Conflict analytics: classifies single-conflict (sc) and multi-conflict
//! (mc) decisions, tracks burst statistics and LBD aggregates, measures
//! conflicts-proximity between conflict sequences, and produces [`RunStats`].
//!
//! The engine reports three events: `on_decision` at each branching,
//! `on_conflict` per learned clause, and `on_decision_end` before the next
//! branching decision or at termination. A decision with exactly one conflict
//! is sc; with two or more it is mc with that burst. Conflicts between two
//! successive branchings all belong to the earlier decision, including those
//! found while re-propagating after backjumps.
//!
//! Proximity of a conflict sequence is measured over the decision-level sets
//! of its reason clauses: the literal-block-proximity set is their
//! intersection, and the proximity value is `|intersection| / |union|`.

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::branching::{self, CrvrState};
use crate::cnf::{Literal, Var};
use crate::engine::Trail;

/// Schema version for serialized [`RunStats`] (JSON object and CSV row).
pub const STATS_SCHEMA_VERSION: u32 = 1;

/// Ordering evidence for the chain of learned clauses inside one mc decision:
/// the trail position where the previous conflict's negated fUIP was asserted
/// and the position of this conflict's fUIP variable, plus whether any
/// branching decision sits between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainCertificate {
    pub prev_assert_pos: usize,
    pub fuip_pos: usize,
    pub decision_between: bool,
}

impl ChainCertificate {
    /// The chain property: the new fUIP lies at or after the previous
    /// assertion with no intervening branching decision.
    pub fn valid(&self) -> bool {
        self.fuip_pos >= self.prev_assert_pos && !self.decision_between
    }
}

/// One learned clause, as observed by the analytics layer.
#[derive(Clone, Debug)]
pub struct ConflictEvent {
    pub conflict_index: u64,
    pub lbd: u32,
    /// Distinct decision levels of the reason clause, sorted ascending.
    pub reason_levels: Vec<u32>,
    pub fuip_var: Var,
    /// Decision variable of each level in `reason_levels` (levels >= 1),
    /// snapshotted at analysis time while those levels were still assigned.
    pub level_decision_vars: Vec<(u32, Var)>,
    /// Present for the second and later conflicts of a decision.
    pub chain: Option<ChainCertificate>,
}

/// Per-branching-decision conflict log.
#[derive(Clone, Debug)]
pub struct DecisionRecord {
    pub decision_index: u64,
    pub conflicts: Vec<ConflictEvent>,
}

impl DecisionRecord {
    pub fn burst(&self) -> usize {
        self.conflicts.len()
    }

    pub fn min_lbd(&self) -> Option<u32> {
        self.conflicts.iter().map(|e| e.lbd).min()
    }

    pub fn level_sets(&self) -> Vec<&[u32]> {
        self.conflicts
            .iter()
            .map(|e| e.reason_levels.as_slice())
            .collect()
    }

    /// Intersection of the reason-level sets over all conflicts.
    pub fn lbp(&self) -> Vec<u32> {
        lbp(&self.level_sets())
    }

    /// Looks up the decision variable snapshotted for `dl` by any conflict.
    pub fn decision_var_snapshot(&self, dl: u32) -> Option<Var> {
        self.conflicts
            .iter()
            .flat_map(|e| e.level_decision_vars.iter())
            .find(|&&(level, _)| level == dl)
            .map(|&(_, v)| v)
    }
}

/// The set of distinct decision levels of a clause's literals, sorted
/// ascending. All literals must be assigned.
pub fn level_set(lits: &[Literal], trail: &Trail) -> Vec<u32> {
    let mut levels: Vec<u32> = lits.iter().map(|l| trail.level_of(l.var())).collect();
    levels.sort_unstable();
    levels.dedup();
    levels
}

/// Intersection of a non-empty sequence of sorted level sets.
pub fn lbp(sets: &[&[u32]]) -> Vec<u32> {
    assert!(!sets.is_empty(), "lbp of an empty sequence");
    let mut acc: Vec<u32> = sets[0].to_vec();
    for set in &sets[1..] {
        acc.retain(|x| set.binary_search(x).is_ok());
    }
    acc
}

/// Union of a non-empty sequence of sorted level sets.
pub fn level_union(sets: &[&[u32]]) -> Vec<u32> {
    assert!(!sets.is_empty(), "union of an empty sequence");
    let mut acc: Vec<u32> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    acc.sort_unstable();
    acc.dedup();
    acc
}

/// A proximity value kept as the exact ratio of set sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Proximity {
    pub lbp_size: usize,
    pub union_size: usize,
}

impl Proximity {
    pub fn value(&self) -> f64 {
        self.lbp_size as f64 / self.union_size as f64
    }
}

/// Conflicts-proximity of a non-empty sequence of level sets:
/// `|intersection| / |union|`. Undefined (`None`) when the union is empty.
pub fn conflicts_proximity(sets: &[&[u32]]) -> Option<Proximity> {
    assert!(!sets.is_empty(), "proximity of an empty sequence");
    let union_size = level_union(sets).len();
    if union_size == 0 {
        return None;
    }
    Some(Proximity {
        lbp_size: lbp(sets).len(),
        union_size,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Mc,
    Sc,
}

/// One recorded proximity measurement.
#[derive(Clone, Debug)]
pub struct ProximitySample {
    pub kind: SampleKind,
    pub burst: usize,
    pub lbp_size: usize,
    pub union_size: usize,
    pub cp: f64,
}

/// Ring buffer of the most recent conflict events from sc decisions. The
/// window persists across restarts.
pub struct ScWindow {
    buf: std::collections::VecDeque<ConflictEvent>,
    cap: usize,
}

impl ScWindow {
    pub fn new(cap: usize) -> ScWindow {
        ScWindow {
            buf: std::collections::VecDeque::with_capacity(cap),
            cap,
        }
    }

    pub fn push(&mut self, event: ConflictEvent) {
        if self.buf.len() == self.cap {
            self.buf.pop_front();
        }
        self.buf.push_back(event);
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    /// The most recent `n` events, oldest first. Requires `n <= len()`.
    pub fn last_n(&self, n: usize) -> Vec<&ConflictEvent> {
        self.buf.iter().skip(self.buf.len() - n).collect()
    }
}

/// Emits up to two proximity samples for a finished mc decision: one over its
/// own reason clauses, and one over the last `burst` conflicts from sc
/// decisions when the window holds enough of them. Bursts above
/// `max_tracked_burst` produce no samples; sequences with an empty union are
/// skipped rather than recorded as 0 or 1.
pub fn sample_proximity(
    record: &DecisionRecord,
    window: &ScWindow,
    max_tracked_burst: usize,
) -> Vec<ProximitySample> {
    let x = record.burst();
    debug_assert!(x >= 2, "proximity sampling expects an mc decision");
    if x > max_tracked_burst {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Some(p) = conflicts_proximity(&record.level_sets()) {
        out.push(ProximitySample {
            kind: SampleKind::Mc,
            burst: x,
            lbp_size: p.lbp_size,
            union_size: p.union_size,
            cp: p.value(),
        });
    }
    if window.len() >= x {
        let events = window.last_n(x);
        let sets: Vec<&[u32]> = events.iter().map(|e| e.reason_levels.as_slice()).collect();
        if let Some(p) = conflicts_proximity(&sets) {
            out.push(ProximitySample {
                kind: SampleKind::Sc,
                burst: x,
                lbp_size: p.lbp_size,
                union_size: p.union_size,
                cp: p.value(),
            });
        }
    }
    out
}

/// Engine-side counters merged into [`RunStats`] at finalization.
#[derive(Clone, Copy, Debug, Default)]
pub struct EngineCounters {
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub reduces: u64,
    pub learned_deleted: u64,
}

/// Observes one solver run and accumulates every aggregate.
pub struct Analytics {
    max_tracked_burst: usize,
    current: Option<DecisionRecord>,
    d: u64,
    s: u64,
    m: u64,
    no_conflict_decisions: u64,
    c: u64,
    c_s: u64,
    c_m: u64,
    sum_lbd: u64,
    sum_lbd_sc: u64,
    sum_lbd_mc: u64,
    sum_min_lbd_mc: u64,
    glue: u64,
    count_b: Vec<u64>, // indexed by burst size, entries 2..=max_tracked_burst
    bursts_beyond_cap: u64,
    conflicts_beyond_cap: u64,
    max_burst: u64,
    sc_window: ScWindow,
    sum_cp_mc: f64,
    n_cp_mc: u64,
    sum_cp_sc: f64,
    n_cp_sc: u64,
    cp_bound_violations: u64,
    chain_pairs: u64,
    chain_violations: u64,
}

impl Analytics {
    pub fn new(max_tracked_burst: usize) -> Analytics {
        assert!(max_tracked_burst >= 2);
        Analytics {
            max_tracked_burst,
            current: None,
            d: 0,
            s: 0,
            m: 0,
            no_conflict_decisions: 0,
            c: 0,
            c_s: 0,
            c_m: 0,
            sum_lbd: 0,
            sum_lbd_sc: 0,
            sum_lbd_mc: 0,
            sum_min_lbd_mc: 0,
            glue: 0,
            count_b: vec![0; max_tracked_burst + 1],
            bursts_beyond_cap: 0,
            conflicts_beyond_cap: 0,
            max_burst: 0,
            sc_window: ScWindow::new(max_tracked_burst),
            sum_cp_mc: 0.0,
            n_cp_mc: 0,
            sum_cp_sc: 0.0,
            n_cp_sc: 0,
            cp_bound_violations: 0,
            chain_pairs: 0,
            chain_violations: 0,
        }
    }

    /// A new branching decision begins. The previous one must be closed.
    pub fn on_decision(&mut self) {
        assert!(
            self.current.is_none(),
            "on_decision while a decision is still open"
        );
        self.d += 1;
        self.current = Some(DecisionRecord {
            decision_index: self.d,
            conflicts: Vec::new(),
        });
    }

    /// A clause was learned within the open decision.
    pub fn on_conflict(&mut self, event: ConflictEvent) {
        let record = self
            .current
            .as_mut()
            .expect("on_conflict without an open decision");
        self.c += 1;
        self.sum_lbd += u64::from(event.lbd);
        if event.lbd == 2 {
            self.glue += 1;
        }
        if !record.conflicts.is_empty() {
            self.chain_pairs += 1;
            let ok = event.chain.as_ref().is_some_and(ChainCertificate::valid);
            if !ok {
                self.chain_violations += 1;
            }
        }
        record.conflicts.push(event);
    }

    /// Closes the open decision: classifies it, updates aggregates, samples
    /// proximity for mc decisions, and (when CRVR is active) runs poor-CRV
    /// detection. A call with no open decision is a no-op so termination
    /// paths can close unconditionally.
    pub fn on_decision_end(&mut self, crvr: Option<&mut CrvrState>) {
        let Some(record) = self.current.take() else {
            return;
        };
        let x = record.burst();
        match x {
            0 => self.no_conflict_decisions += 1,
            1 => {
                self.s += 1;
                self.c_s += 1;
                self.sum_lbd_sc += u64::from(record.conflicts[0].lbd);
                self.sc_window.push(record.conflicts[0].clone());
            }
            _ => {
                self.m += 1;
                self.c_m += x as u64;
                self.sum_lbd_mc += record.conflicts.iter().map(|e| u64::from(e.lbd)).sum::<u64>();
                self.sum_min_lbd_mc += u64::from(record.min_lbd().unwrap());
                self.max_burst = self.max_burst.max(x as u64);
                if x <= self.max_tracked_burst {
                    self.count_b[x] += 1;
                } else {
                    self.bursts_beyond_cap += 1;
                    self.conflicts_beyond_cap += x as u64;
                }
                for sample in sample_proximity(&record, &self.sc_window, self.max_tracked_burst) {
                    self.record_sample(&sample);
                }
                if let Some(crvr) = crvr {
                    branching::detect_poor_crv(&record, crvr);
                }
            }
        }
    }

    fn record_sample(&mut self, sample: &ProximitySample) {
        if !(0.0..=1.0).contains(&sample.cp) || sample.lbp_size > sample.union_size {
            self.cp_bound_violations += 1;
            return;
        }
        match sample.kind {
            SampleKind::Mc => {
                self.sum_cp_mc += sample.cp;
                self.n_cp_mc += 1;
            }
            SampleKind::Sc => {
                self.sum_cp_sc += sample.cp;
                self.n_cp_sc += 1;
            }
        }
    }

    pub fn decisions(&self) -> u64 {
        self.d
    }

    pub fn conflicts(&self) -> u64 {
        self.c
    }

    /// Produces the final aggregate statistics. Ratios with zero denominators
    /// are absent rather than zero.
    pub fn finalize(&self, outcome: &str, wall_time_secs: f64, eng: EngineCounters) -> RunStats {
        assert!(self.current.is_none(), "finalize with an open decision");
        debug_assert_eq!(self.d, eng.decisions);
        let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
        let stats = RunStats {
            outcome: outcome.to_string(),
            wall_time_secs,
            decisions: self.d,
            conflicts: self.c,
            propagations: eng.propagations,
            restarts: eng.restarts,
            reduces: eng.reduces,
            learned_deleted: eng.learned_deleted,
            sc_decisions: self.s,
            mc_decisions: self.m,
            no_conflict_decisions: self.no_conflict_decisions,
            sc_conflicts: self.c_s,
            mc_conflicts: self.c_m,
            glue: self.glue,
            sum_lbd: self.sum_lbd,
            sum_lbd_sc: self.sum_lbd_sc,
            sum_lbd_mc: self.sum_lbd_mc,
            sum_min_lbd_mc: self.sum_min_lbd_mc,
            pdsc: ratio(self.s, self.d),
            pdmc: ratio(self.m, self.d),
            glr: ratio(self.c, self.d),
            g2l: ratio(self.glue, self.c),
            albd: ratio(self.sum_lbd, self.c),
            albd_sc: ratio(self.sum_lbd_sc, self.c_s),
            albd_mc: ratio(self.sum_lbd_mc, self.c_m),
            avg_min_lbd_mc: ratio(self.sum_min_lbd_mc, self.m),
            avg_burst: ratio(self.c_m, self.m),
            max_burst: (self.m > 0).then_some(self.max_burst),
            count_b: self.count_b[2..].to_vec(),
            max_tracked_burst: self.max_tracked_burst,
            bursts_beyond_cap: self.bursts_beyond_cap,
            conflicts_beyond_cap: self.conflicts_beyond_cap,
            cp_mc_samples: self.n_cp_mc,
            cp_sc_samples: self.n_cp_sc,
            mean_cp_mc: (self.n_cp_mc > 0).then(|| self.sum_cp_mc / self.n_cp_mc as f64),
            mean_cp_sc: (self.n_cp_sc > 0).then(|| self.sum_cp_sc / self.n_cp_sc as f64),
            cp_bound_violations: self.cp_bound_violations,
            chain_pairs: self.chain_pairs,
            chain_violations: self.chain_violations,
        };
        debug_assert!(stats.identity_violations().is_empty());
        stats
    }
}

/// Aggregate metrics of one solver run.
///
/// Serializes to a flat JSON object (see [`STATS_SCHEMA_VERSION`]); the burst
/// histogram appears as `count_b2 .. count_b{max_tracked_burst}`. The CSV row
/// (see [`RunStats::csv_header`]) contains only deterministic fields, so it
/// excludes `wall_time_secs`.
#[derive(Clone, Debug)]
pub struct RunStats {
    pub outcome: String,
    pub wall_time_secs: f64,
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub reduces: u64,
    pub learned_deleted: u64,
    pub sc_decisions: u64,
    pub mc_decisions: u64,
    pub no_conflict_decisions: u64,
    pub sc_conflicts: u64,
    pub mc_conflicts: u64,
    pub glue: u64,
    pub sum_lbd: u64,
    pub sum_lbd_sc: u64,
    pub sum_lbd_mc: u64,
    pub sum_min_lbd_mc: u64,
    pub pdsc: Option<f64>,
    pub pdmc: Option<f64>,
    pub glr: Option<f64>,
    pub g2l: Option<f64>,
    pub albd: Option<f64>,
    pub albd_sc: Option<f64>,
    pub albd_mc: Option<f64>,
    pub avg_min_lbd_mc: Option<f64>,
    pub avg_burst: Option<f64>,
    pub max_burst: Option<u64>,
    /// `count_b[i]` is the number of mc decisions with burst `i + 2`.
    pub count_b: Vec<u64>,
    pub max_tracked_burst: usize,
    pub bursts_beyond_cap: u64,
    pub conflicts_beyond_cap: u64,
    pub cp_mc_samples: u64,
    pub cp_sc_samples: u64,
    pub mean_cp_mc: Option<f64>,
    pub mean_cp_sc: Option<f64>,
    pub cp_bound_violations: u64,
    pub chain_pairs: u64,
    pub chain_violations: u64,
}

impl RunStats {
    /// Number of mc decisions with burst `b` (2 <= b <= max tracked).
    pub fn count_for_burst(&self, b: usize) -> u64 {
        assert!((2..=self.max_tracked_burst).contains(&b));
        self.count_b[b - 2]
    }

    /// Checks the accounting identities; returns one message per violation.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |ok: bool, msg: &str| {
            if !ok {
                out.push(msg.to_string());
            }
        };
        check(
            self.conflicts == self.sc_conflicts + self.mc_conflicts,
            "c != c_s + c_m",
        );
        check(self.sc_conflicts == self.sc_decisions, "c_s != s");
        check(
            self.decisions
                == self.sc_decisions + self.mc_decisions + self.no_conflict_decisions,
            "d != s + m + no-conflict decisions",
        );
        let tracked: u64 = self
            .count_b
            .iter()
            .enumerate()
            .map(|(i, &n)| (i as u64 + 2) * n)
            .sum();
        check(
            tracked + self.conflicts_beyond_cap == self.mc_conflicts,
            "sum of bursts != c_m",
        );
        if let (Some(pdsc), Some(pdmc)) = (self.pdsc, self.pdmc) {
            check(pdsc + pdmc <= 1.0 + 1e-12, "PDSC + PDMC > 1");
        }
        if self.mc_decisions > 0 {
            check(self.max_burst.unwrap_or(0) >= 2, "maxBurst < 2 with m > 0");
        }
        check(
            self.chain_pairs == self.mc_conflicts - self.mc_decisions,
            "chain pairs != c_m - m",
        );
        check(self.cp_bound_violations == 0, "cp sample out of bounds");
        out
    }

    /// CSV column names, matching [`RunStats::csv_values`].
    pub fn csv_header(max_tracked_burst: usize) -> Vec<String> {
        let mut cols: Vec<String> = [
            "outcome",
            "decisions",
            "conflicts",
            "propagations",
            "restarts",
            "reduces",
            "learned_deleted",
            "sc_decisions",
            "mc_decisions",
            "no_conflict_decisions",
            "sc_conflicts",
            "mc_conflicts",
            "glue",
            "sum_lbd",
            "sum_lbd_sc",
            "sum_lbd_mc",
            "sum_min_lbd_mc",
            "pdsc",
            "pdmc",
            "glr",
            "g2l",
            "albd",
            "albd_sc",
            "albd_mc",
            "avg_min_lbd_mc",
            "avg_burst",
            "max_burst",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        for b in 2..=max_tracked_burst {
            cols.push(format!("count_b{b}"));
        }
        cols.extend(
            [
                "bursts_beyond_cap",
                "conflicts_beyond_cap",
                "cp_mc_samples",
                "cp_sc_samples",
                "mean_cp_mc",
                "mean_cp_sc",
                "chain_pairs",
                "chain_violations",
            ]
            .iter()
            .map(|s| s.to_string()),
        );
        cols
    }

    /// Deterministic CSV values; absent ratios serialize as empty cells.
    pub fn csv_values(&self) -> Vec<String> {
        let opt_f = |o: Option<f64>| o.map(|v| format!("{v}")).unwrap_or_default();
        let opt_u = |o: Option<u64>| o.map(|v| v.to_string()).unwrap_or_default();
        let mut vals = vec![
            self.outcome.clone(),
            self.decisions.to_string(),
            self.conflicts.to_string(),
            self.propagations.to_string(),
            self.restarts.to_string(),
            self.reduces.to_string(),
            self.learned_deleted.to_string(),
            self.sc_decisions.to_string(),
            self.mc_decisions.to_string(),
            self.no_conflict_decisions.to_string(),
            self.sc_conflicts.to_string(),
            self.mc_conflicts.to_string(),
            self.glue.to_string(),
            self.sum_lbd.to_string(),
            self.sum_lbd_sc.to_string(),
            self.sum_lbd_mc.to_string(),
            self.sum_min_lbd_mc.to_string(),
            opt_f(self.pdsc),
            opt_f(self.pdmc),
            opt_f(self.glr),
            opt_f(self.g2l),
            opt_f(self.albd),
            opt_f(self.albd_sc),
            opt_f(self.albd_mc),
            opt_f(self.avg_min_lbd_mc),
            opt_f(self.avg_burst),
            opt_u(self.max_burst),
        ];
        for &n in &self.count_b {
            vals.push(n.to_string());
        }
        vals.extend([
            self.bursts_beyond_cap.to_string(),
            self.conflicts_beyond_cap.to_string(),
            self.cp_mc_samples.to_string(),
            self.cp_sc_samples.to_string(),
            opt_f(self.mean_cp_mc),
            opt_f(self.mean_cp_sc),
            self.chain_pairs.to_string(),
            self.chain_violations.to_string(),
        ]);
        vals
    }
}

impl Serialize for RunStats {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("stats_version", &STATS_SCHEMA_VERSION)?;
        map.serialize_entry("outcome", &self.outcome)?;
        map.serialize_entry("wall_time_secs", &self.wall_time_secs)?;
        map.serialize_entry("decisions", &self.decisions)?;
        map.serialize_entry("conflicts", &self.conflicts)?;
        map.serialize_entry("propagations", &self.propagations)?;
        map.serialize_entry("restarts", &self.restarts)?;
        map.serialize_entry("reduces", &self.reduces)?;
        map.serialize_entry("learned_deleted", &self.learned_deleted)?;
        map.serialize_entry("sc_decisions", &self.sc_decisions)?;
        map.serialize_entry("mc_decisions", &self.mc_decisions)?;
        map.serialize_entry("no_conflict_decisions", &self.no_conflict_decisions)?;
        map.serialize_entry("sc_conflicts", &self.sc_conflicts)?;
        map.serialize_entry("mc_conflicts", &self.mc_conflicts)?;
        map.serialize_entry("glue", &self.glue)?;
        map.serialize_entry("sum_lbd", &self.sum_lbd)?;
        map.serialize_entry("sum_lbd_sc", &self.sum_lbd_sc)?;
        map.serialize_entry("sum_lbd_mc", &self.sum_lbd_mc)?;
        map.serialize_entry("sum_min_lbd_mc", &self.sum_min_lbd_mc)?;
        map.serialize_entry("pdsc", &self.pdsc)?;
        map.serialize_entry("pdmc", &self.pdmc)?;
        map.serialize_entry("glr", &self.glr)?;
        map.serialize_entry("g2l", &self.g2l)?;
        map.serialize_entry("albd", &self.albd)?;
        map.serialize_entry("albd_sc", &self.albd_sc)?;
        map.serialize_entry("albd_mc", &self.albd_mc)?;
        map.serialize_entry("avg_min_lbd_mc", &self.avg_min_lbd_mc)?;
        map.serialize_entry("avg_burst", &self.avg_burst)?;
        map.serialize_entry("max_burst", &self.max_burst)?;
        for (i, &n) in self.count_b.iter().enumerate() {
            map.serialize_entry(&format!("count_b{}", i + 2), &n)?;
        }
        map.serialize_entry("bursts_beyond_cap", &self.bursts_beyond_cap)?;
        map.serialize_entry("conflicts_beyond_cap", &self.conflicts_beyond_cap)?;
        map.serialize_entry("cp_mc_samples", &self.cp_mc_samples)?;
        map.serialize_entry("cp_sc_samples", &self.cp_sc_samples)?;
        map.serialize_entry("mean_cp_mc", &self.mean_cp_mc)?;
        map.serialize_entry("mean_cp_sc", &self.mean_cp_sc)?;
        map.serialize_entry("cp_bound_violations", &self.cp_bound_violations)?;
        map.serialize_entry("chain_pairs", &self.chain_pairs)?;
        map.serialize_entry("chain_violations", &self.chain_violations)?;
        map.end()
    }
}
