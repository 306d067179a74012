//! Seeded instance generators for tests and benchmarks: uniform random 3-SAT
//! and pigeonhole formulas.

use crate::cnf::{Clause, Formula, Literal, Var};
use crate::rng::SplitMix64;

/// Uniform random k-SAT: `num_clauses` clauses of `k` distinct variables each,
/// each literal negated with probability 1/2. Deterministic for a seed.
pub fn random_ksat(num_vars: Var, num_clauses: usize, k: usize, seed: u64) -> Formula {
    assert!(k as u32 <= num_vars);
    let mut rng = SplitMix64::new(seed);
    let mut clauses = Vec::with_capacity(num_clauses);
    while clauses.len() < num_clauses {
        let mut vars: Vec<Var> = Vec::with_capacity(k);
        while vars.len() < k {
            let v = rng.below(num_vars as u64) as Var + 1;
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let lits = vars
            .iter()
            .map(|&v| Literal::new(v, rng.next_bool()))
            .collect();
        clauses.push(Clause::new(lits));
    }
    Formula::new(num_vars, clauses).expect("generated literals are in range")
}

/// Uniform random 3-SAT.
pub fn random_3sat(num_vars: Var, num_clauses: usize, seed: u64) -> Formula {
    random_ksat(num_vars, num_clauses, 3, seed)
}

/// Pigeonhole principle PHP(pigeons, holes): unsatisfiable iff
/// `pigeons > holes`. Variable `x_{p,h}` means pigeon `p` sits in hole `h`.
pub fn pigeonhole(pigeons: u32, holes: u32) -> Formula {
    let var = |p: u32, h: u32| -> Var { p * holes + h + 1 };
    let num_vars = pigeons * holes;
    let mut clauses = Vec::new();
    // Every pigeon goes somewhere.
    for p in 0..pigeons {
        clauses.push(Clause::new(
            (0..holes).map(|h| Literal::new(var(p, h), true)).collect(),
        ));
    }
    // No two pigeons share a hole.
    for h in 0..holes {
        for p1 in 0..pigeons {
            for p2 in (p1 + 1)..pigeons {
                clauses.push(Clause::new(vec![
                    Literal::new(var(p1, h), false),
                    Literal::new(var(p2, h), false),
                ]));
            }
        }
    }
    Formula::new(num_vars, clauses).expect("generated literals are in range")
}
