//! Shared helpers for the integration suites: worked formulas and a
//! truth-table oracle kept deliberately independent of the propagation and
//! reification code paths.
#![allow(dead_code)] // each test binary uses its own subset

use reifup::{CnfFormula, Literal, SplitMix64};

/// (a ∨ b) ∧ (¬b ∨ c) ∧ (¬b ∨ ¬c): no unit clause, two failed literals.
pub fn sigma1() -> CnfFormula {
    CnfFormula::from_dimacs(3, &[&[1, 2], &[-2, 3], &[-2, -3]])
}

/// (¬a) ∧ (a ∨ b) ∧ (¬b ∨ c) ∧ (¬b ∨ ¬c): conflicts under propagation.
pub fn sigma2() -> CnfFormula {
    CnfFormula::from_dimacs(3, &[&[-1], &[1, 2], &[-2, 3], &[-2, -3]])
}

/// Evaluates a formula under the total assignment where variable `v` is
/// true iff bit `v - 1` of `bits` is set.
pub fn eval_total(f: &CnfFormula, bits: u64) -> bool {
    f.clauses().iter().all(|clause| {
        clause
            .iter()
            .any(|lit| (bits >> (lit.var() - 1)) & 1 == lit.is_positive() as u64)
    })
}

/// All satisfying total assignments as bit masks (only for small n).
pub fn satisfying_set(f: &CnfFormula) -> Vec<u64> {
    assert!(f.num_vars() <= 20, "truth table too large");
    (0..1u64 << f.num_vars())
        .filter(|&bits| eval_total(f, bits))
        .collect()
}

/// Random partial assignment: per variable one draw, 0/1 unassigned,
/// 2 true, 3 false.
pub fn sample_assumptions(stream: &mut SplitMix64, num_vars: u32) -> Vec<Literal> {
    let mut out = Vec::new();
    for var in 1..=num_vars {
        match stream.next_below(4) {
            0 | 1 => {}
            2 => out.push(Literal::positive(var)),
            _ => out.push(Literal::negative(var)),
        }
    }
    out
}
