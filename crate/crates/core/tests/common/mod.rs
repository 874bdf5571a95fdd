#![allow(dead_code)]

use nmrsat::cnf::{generate_random_ksat, Clause, CnfFormula, Literal};
use proptest::prelude::*;

/// Clause as (positive mask, negative mask) over bit `v-1` for variable `v`.
pub fn masks(clause: &Clause) -> (u64, u64) {
    clause.literals().iter().fold((0, 0), |(p, n), l| {
        let bit = 1u64 << (l.var - 1);
        if l.negated {
            (p, n | bit)
        } else {
            (p | bit, n)
        }
    })
}

/// Truth table of each clause by bit arithmetic, independent of `evaluate`.
pub fn clause_value(clause: &Clause, x: u64) -> bool {
    let (p, n) = masks(clause);
    (x & p) != 0 || (!x & n) != 0
}

pub fn formula_value(f: &CnfFormula, x: u64) -> bool {
    f.clauses().iter().all(|c| clause_value(c, x))
}

pub fn solution_indices(f: &CnfFormula) -> Vec<u64> {
    (0..1u64 << f.num_vars()).filter(|&x| formula_value(f, x)).collect()
}

pub const WORKED_3SAT: &str = "p cnf 3 3\n1 2 3 0\n1 2 -3 0\n-1 2 3 0";
pub const WORKED_1SAT: &str = "p cnf 3 3\n-1 0\n2 0\n3 0";

/// Arbitrary formula with `1..=max_n` variables and up to `max_m` non-empty
/// clauses of width `1..=max_k` (literals may repeat a variable).
pub fn arb_formula(max_n: usize, max_m: usize, max_k: usize) -> impl Strategy<Value = CnfFormula> {
    (1..=max_n).prop_flat_map(move |n| {
        let lit = (1..=n, any::<bool>()).prop_map(|(v, neg)| Literal::new(v, neg));
        let clause = prop::collection::vec(lit, 1..=max_k).prop_map(Clause::new);
        prop::collection::vec(clause, 1..=max_m)
            .prop_map(move |cs| CnfFormula::new(n, cs).unwrap())
    })
}

/// 200 seeded random k-SAT instances with n <= 4, m <= 5, k <= 3.
pub fn seeded_corpus() -> Vec<CnfFormula> {
    (0..200u64)
        .map(|seed| {
            let n = 1 + (seed % 4) as usize;
            let m = 1 + ((seed / 4) % 5) as usize;
            let k = 1 + ((seed / 20) % 3) as usize;
            generate_random_ksat(n, m, k.min(n), seed).unwrap()
        })
        .collect()
}

/// Every non-empty set of distinct non-tautological clauses over `n`
/// variables with at most `max_k` literals.
pub fn all_formulas(n: usize, max_k: usize) -> Vec<CnfFormula> {
    let mut clauses = Vec::new();
    // each variable absent / positive / negative
    let states = 3usize.pow(n as u32);
    for code in 1..states {
        let mut lits = Vec::new();
        let mut c = code;
        for v in 1..=n {
            match c % 3 {
                1 => lits.push(Literal::positive(v)),
                2 => lits.push(Literal::negative(v)),
                _ => {}
            }
            c /= 3;
        }
        if lits.len() <= max_k {
            clauses.push(Clause::new(lits));
        }
    }
    (1u64..1 << clauses.len())
        .map(|set| {
            let picked = clauses
                .iter()
                .enumerate()
                .filter(|(i, _)| set >> i & 1 == 1)
                .map(|(_, c)| c.clone())
                .collect();
            CnfFormula::new(n, picked).unwrap()
        })
        .collect()
}
