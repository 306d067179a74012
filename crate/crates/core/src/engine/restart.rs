//! Luby restart scheduling.

/// The `i`-th term of the Luby sequence (0-indexed): 1,1,2,1,1,2,4,1,...
pub fn luby(mut i: u64) -> u64 {
    // Find the finite subsequence containing index i and its size.
    let mut size = 1u64;
    while size < i + 1 {
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) / 2;
        i %= size;
    }
    size.div_ceil(2)
}

/// Restarts after `unit * luby(restarts)` conflicts since the last restart.
pub struct RestartSchedule {
    unit: u64,
    restarts: u64,
    conflicts_at_last: u64,
}

impl RestartSchedule {
    pub fn new(unit: u64) -> RestartSchedule {
        RestartSchedule {
            unit,
            restarts: 0,
            conflicts_at_last: 0,
        }
    }

    pub fn due(&self, conflicts: u64) -> bool {
        conflicts - self.conflicts_at_last >= self.unit * luby(self.restarts)
    }

    pub fn on_restart(&mut self, conflicts: u64) {
        self.restarts += 1;
        self.conflicts_at_last = conflicts;
    }

    pub fn restarts(&self) -> u64 {
        self.restarts
    }
}
