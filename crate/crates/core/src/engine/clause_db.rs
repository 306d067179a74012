//! Clause storage for original and learned clauses.
//!
//! Slots are referenced by stable [`ClauseId`]s. Deleted slots are recycled
//! only after the caller has detached every reference, so a live id never
//! aliases a removed clause.

use crate::cnf::Literal;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ClauseId(u32);

impl ClauseId {
    pub fn from_index(i: usize) -> ClauseId {
        ClauseId(i as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct Slot {
    lits: Vec<Literal>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

pub struct ClauseDb {
    slots: Vec<Slot>,
    free: Vec<u32>,
    num_learnt: usize,
    cla_inc: f64,
}

const CLA_RESCALE: f64 = 1e20;
const CLA_DECAY: f64 = 0.999;

impl Default for ClauseDb {
    fn default() -> Self {
        Self::new()
    }
}

impl ClauseDb {
    pub fn new() -> ClauseDb {
        ClauseDb {
            slots: Vec::new(),
            free: Vec::new(),
            num_learnt: 0,
            cla_inc: 1.0,
        }
    }

    pub fn add(&mut self, lits: Vec<Literal>, learnt: bool, lbd: u32) -> ClauseId {
        debug_assert!(lits.len() >= 2, "unit and empty clauses are not stored");
        if learnt {
            self.num_learnt += 1;
        }
        let slot = Slot {
            lits,
            learnt,
            deleted: false,
            lbd,
            activity: 0.0,
        };
        match self.free.pop() {
            Some(i) => {
                self.slots[i as usize] = slot;
                ClauseId(i)
            }
            None => {
                self.slots.push(slot);
                ClauseId(self.slots.len() as u32 - 1)
            }
        }
    }

    /// Readable for live clauses and for clauses marked by `reduce_mark`
    /// until their slot is recycled.
    pub fn lits(&self, id: ClauseId) -> &[Literal] {
        debug_assert!(!self.slots[id.index()].lits.is_empty(), "recycled slot");
        &self.slots[id.index()].lits
    }

    pub fn lits_mut(&mut self, id: ClauseId) -> &mut [Literal] {
        debug_assert!(!self.slots[id.index()].deleted, "stale clause id");
        &mut self.slots[id.index()].lits
    }

    pub fn is_learnt(&self, id: ClauseId) -> bool {
        self.slots[id.index()].learnt
    }

    pub fn is_deleted(&self, id: ClauseId) -> bool {
        self.slots[id.index()].deleted
    }

    pub fn lbd(&self, id: ClauseId) -> u32 {
        self.slots[id.index()].lbd
    }

    pub fn num_learnt(&self) -> usize {
        self.num_learnt
    }

    pub fn live_ids(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.deleted)
            .map(|(i, _)| ClauseId(i as u32))
    }

    pub fn bump_activity(&mut self, id: ClauseId) {
        let slot = &mut self.slots[id.index()];
        slot.activity += self.cla_inc;
        if slot.activity > CLA_RESCALE {
            for s in &mut self.slots {
                s.activity *= 1.0 / CLA_RESCALE;
            }
            self.cla_inc *= 1.0 / CLA_RESCALE;
        }
    }

    pub fn decay_activity(&mut self) {
        self.cla_inc /= CLA_DECAY;
    }

    /// Marks for removal the worst half of the learned clauses that are
    /// neither glue (`lbd <= 2`) nor locked, ordered worst-first by
    /// `(lbd desc, activity asc)`. Returns the marked ids; their literals stay
    /// readable until [`ClauseDb::finish_reduce`] recycles the slots.
    pub fn reduce_mark(&mut self, is_locked: impl Fn(ClauseId) -> bool) -> Vec<ClauseId> {
        let mut candidates: Vec<ClauseId> = self
            .live_ids()
            .filter(|&id| {
                let s = &self.slots[id.index()];
                s.learnt && s.lbd > 2 && !is_locked(id)
            })
            .collect();
        candidates.sort_by(|&a, &b| {
            let (sa, sb) = (&self.slots[a.index()], &self.slots[b.index()]);
            sb.lbd
                .cmp(&sa.lbd)
                .then(sa.activity.partial_cmp(&sb.activity).unwrap())
                .then(a.0.cmp(&b.0))
        });
        let removed: Vec<ClauseId> = candidates[..candidates.len() / 2].to_vec();
        for &id in &removed {
            self.slots[id.index()].deleted = true;
            self.num_learnt -= 1;
        }
        removed
    }

    /// Recycles slots marked by [`ClauseDb::reduce_mark`]. The caller must
    /// have detached all watches and emitted any proof deletions first.
    pub fn finish_reduce(&mut self, removed: &[ClauseId]) {
        for &id in removed {
            let slot = &mut self.slots[id.index()];
            debug_assert!(slot.deleted);
            slot.lits = Vec::new();
            self.free.push(id.0);
        }
    }
}
