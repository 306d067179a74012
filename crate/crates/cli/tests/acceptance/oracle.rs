//! Exhaustive truth-table satisfiability oracle, independent of the solver.
//!
//! Assignments are enumerated 64 at a time: the first (up to) six variables
//! vary across the lanes of a 64-bit word, the rest across block indices.

use burstsat::cnf::Formula;

pub fn oracle_sat(f: &Formula) -> bool {
    let n = f.num_vars() as usize;
    assert!(n <= 26, "oracle is exponential in the variable count");
    let lane_vars = n.min(6);
    // lane_pattern[v] has bit b set iff variable v is true in lane b.
    let lane_pattern: Vec<u64> = (0..=lane_vars)
        .map(|v| {
            if v == 0 {
                0
            } else {
                let mut mask = 0u64;
                for b in 0..64u64 {
                    if (b >> (v - 1)) & 1 == 1 {
                        mask |= 1 << b;
                    }
                }
                mask
            }
        })
        .collect();
    let lanes_used: u64 = if lane_vars == 6 { u64::MAX } else { (1u64 << (1 << lane_vars)) - 1 };
    let blocks: u64 = 1 << (n - lane_vars);

    for block in 0..blocks {
        let mut live = lanes_used;
        for clause in f.clauses() {
            let mut satisfied = 0u64;
            for lit in clause.iter() {
                let v = lit.var() as usize;
                if v <= lane_vars {
                    satisfied |= if lit.is_positive() {
                        lane_pattern[v]
                    } else {
                        !lane_pattern[v]
                    };
                } else {
                    let bit = (block >> (v - lane_vars - 1)) & 1;
                    if (bit == 1) == lit.is_positive() {
                        satisfied = u64::MAX;
                        break;
                    }
                }
            }
            live &= satisfied;
            if live == 0 {
                break;
            }
        }
        if live != 0 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod self_checks {
    use super::*;
    use burstsat::cnf::parse_dimacs;
    use burstsat::instances::pigeonhole;

    #[test]
    fn oracle_agrees_on_known_cases() {
        assert!(oracle_sat(&parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n").unwrap()));
        assert!(!oracle_sat(&parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap()));
        assert!(!oracle_sat(&pigeonhole(4, 3)));
        assert!(oracle_sat(&pigeonhole(4, 4)));
        // A formula over more than six variables, forcing multi-block paths.
        let wide = parse_dimacs("p cnf 9 3\n9 0\n-9 8 0\n-8 -9 0\n").unwrap();
        assert!(!oracle_sat(&wide));
    }
}
