//! Independent forward DRAT checker (RUP additions, explicit deletions).
//!
//! Deliberately shares no propagation code with the solver: clauses are kept
//! as DIMACS integers with occurrence lists and free-literal counters, and
//! each added clause is verified by reverse-unit-propagation over the current
//! database. The proof is accepted once the empty clause is derived.

use std::collections::HashMap;

use burstsat::cnf::Formula;

struct CheckerClause {
    lits: Vec<i32>,
    alive: bool,
}

pub struct DratChecker {
    num_vars: usize,
    clauses: Vec<CheckerClause>,
    /// literal -> indexes of clauses containing it (may hold dead entries).
    occurrences: HashMap<i32, Vec<usize>>,
    /// sorted literal vector -> live clause indexes, for deletions.
    by_key: HashMap<Vec<i32>, Vec<usize>>,
}

fn key_of(lits: &[i32]) -> Vec<i32> {
    let mut k = lits.to_vec();
    k.sort_unstable();
    k
}

impl DratChecker {
    pub fn new(formula: &Formula) -> DratChecker {
        let mut checker = DratChecker {
            num_vars: formula.num_vars() as usize,
            clauses: Vec::new(),
            occurrences: HashMap::new(),
            by_key: HashMap::new(),
        };
        for clause in formula.clauses() {
            let lits: Vec<i32> = clause.iter().map(|l| l.to_dimacs()).collect();
            checker.insert(lits);
        }
        checker
    }

    fn insert(&mut self, lits: Vec<i32>) {
        let idx = self.clauses.len();
        for &l in &lits {
            self.occurrences.entry(l).or_default().push(idx);
        }
        self.by_key.entry(key_of(&lits)).or_default().push(idx);
        self.clauses.push(CheckerClause { lits, alive: true });
    }

    fn delete(&mut self, lits: &[i32]) -> Result<(), String> {
        let key = key_of(lits);
        let slot = self
            .by_key
            .get_mut(&key)
            .and_then(|v| v.pop())
            .ok_or_else(|| format!("deletion of absent clause {lits:?}"))?;
        self.clauses[slot].alive = false;
        Ok(())
    }

    /// Reverse unit propagation: assuming every literal of `clause` false
    /// must yield a conflict by unit propagation over the live database.
    fn has_rup(&self, clause: &[i32]) -> bool {
        // values[var]: 0 unassigned, 1 true, -1 false.
        let mut values = vec![0i8; self.num_vars + 1];
        let mut queue: Vec<i32> = Vec::new();
        for &l in clause {
            let v = l.unsigned_abs() as usize;
            let want: i8 = if l > 0 { -1 } else { 1 };
            if values[v] == 0 {
                values[v] = want;
                queue.push(-l);
            } else if values[v] != want {
                // The negated clause is already contradictory: l and !l both
                // appear, so the assumption assigns both ways; RUP holds.
                return true;
            }
        }
        let mut sat_cache = vec![false; self.clauses.len()];
        let mut head = 0;
        // Process assignments; also scan clauses once up front for units.
        let mut scan: Vec<usize> = (0..self.clauses.len()).collect();
        loop {
            // Propagate queued assignments through occurrence lists.
            while head < queue.len() {
                let assigned = queue[head];
                head += 1;
                if let Some(occ) = self.occurrences.get(&-assigned) {
                    scan.extend(occ.iter().copied());
                }
            }
            if scan.is_empty() {
                return false;
            }
            let mut progressed = false;
            for idx in std::mem::take(&mut scan) {
                let c = &self.clauses[idx];
                if !c.alive || sat_cache[idx] {
                    continue;
                }
                let mut unassigned: Option<i32> = None;
                let mut free = 0;
                let mut satisfied = false;
                for &l in &c.lits {
                    let v = l.unsigned_abs() as usize;
                    let val = values[v];
                    if val == 0 {
                        free += 1;
                        unassigned = Some(l);
                    } else if (val == 1) == (l > 0) {
                        satisfied = true;
                        break;
                    }
                }
                if satisfied {
                    sat_cache[idx] = true;
                    continue;
                }
                match free {
                    0 => return true, // conflict found
                    1 => {
                        let l = unassigned.unwrap();
                        let v = l.unsigned_abs() as usize;
                        values[v] = if l > 0 { 1 } else { -1 };
                        queue.push(l);
                        progressed = true;
                    }
                    _ => {}
                }
            }
            if !progressed && head >= queue.len() {
                return false;
            }
        }
    }

    /// Checks a full textual DRAT proof. Returns the number of verified
    /// addition steps on success.
    pub fn check(&mut self, proof: &str) -> Result<usize, String> {
        let mut additions = 0usize;
        for (line_no, raw) in proof.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let (is_delete, body) = match line.strip_prefix("d ") {
                Some(rest) => (true, rest),
                None => (false, line),
            };
            let mut lits: Vec<i32> = Vec::new();
            let mut terminated = false;
            for tok in body.split_whitespace() {
                let n: i32 = tok
                    .parse()
                    .map_err(|_| format!("proof line {}: bad token {tok}", line_no + 1))?;
                if n == 0 {
                    terminated = true;
                    break;
                }
                if n.unsigned_abs() as usize > self.num_vars {
                    return Err(format!("proof line {}: variable out of range", line_no + 1));
                }
                lits.push(n);
            }
            if !terminated {
                return Err(format!("proof line {}: missing terminating 0", line_no + 1));
            }
            if is_delete {
                self.delete(&lits)?;
            } else {
                if !self.has_rup(&lits) {
                    return Err(format!(
                        "proof line {}: clause {lits:?} is not RUP",
                        line_no + 1
                    ));
                }
                additions += 1;
                if lits.is_empty() {
                    return Ok(additions); // empty clause: unsatisfiability derived
                }
                self.insert(lits);
            }
        }
        Err("proof ended without deriving the empty clause".into())
    }
}

#[cfg(test)]
mod self_checks {
    use super::*;
    use burstsat::cnf::parse_dimacs;

    #[test]
    fn accepts_a_hand_written_proof() {
        // (1 2) (1 -2) (-1 3) (-1 -3) is UNSAT; resolvents: (1), (3)... empty.
        let f = parse_dimacs("p cnf 3 4\n1 2 0\n1 -2 0\n-1 3 0\n-1 -3 0\n").unwrap();
        let mut checker = DratChecker::new(&f);
        assert!(checker.check("1 0\n0\n").is_ok());
    }

    #[test]
    fn rejects_a_non_rup_addition() {
        let f = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        let mut checker = DratChecker::new(&f);
        let err = checker.check("-1 0\n0\n").unwrap_err();
        assert!(err.contains("not RUP"));
    }

    #[test]
    fn rejects_proof_without_empty_clause() {
        let f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap();
        let mut checker = DratChecker::new(&f);
        assert!(checker.check("").is_err());
        let mut checker2 = DratChecker::new(&f);
        assert!(checker2.check("0\n").is_ok());
    }

    #[test]
    fn deletions_remove_exactly_one_copy() {
        let f = parse_dimacs("p cnf 2 3\n1 2 0\n2 1 0\n-1 0\n").unwrap();
        let mut checker = DratChecker::new(&f);
        // Delete one (1 2) copy; (2) must still be RUP through the second.
        assert!(checker.check("d 1 2 0\n2 0\n1 -2 0\n0\n").is_err());
        // The final empty clause is not derivable here, but the deletion and
        // the RUP addition of (2) must have been accepted first.
    }
}
