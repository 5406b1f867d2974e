//! The failed-literal rule, natively and by reified simulation.
//!
//! Probing a literal `w` natively means propagating `f ∧ w` and concluding
//! `¬w` if that conflicts. The reified route builds
//! `(¬l ∨ ¬w) ∧ reify(f ∧ (w))` — with `l` the conflict-output variable —
//! and simply propagates: the probe fails exactly when plain unit
//! propagation derives `¬w`, with no conflict ever arising. [`probe_all`]
//! runs both routes over every literal and records their agreement.

use crate::cnf::{Clause, CnfFormula, Literal};
use crate::propagation::{propagate_queue, PropagationOutcome};
use crate::reify::{reify, ReifiedVarMap, ReifyOptions};

/// Outcome of natively probing one literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    pub probed: Literal,
    /// Whether propagating `f ∧ probed` derived the empty clause; if so,
    /// the sound conclusion is that the negation of `probed` must hold.
    pub failed: bool,
    /// The propagation fixpoint of `f ∧ probed` when it did not fail
    /// (includes the probed literal itself); empty otherwise.
    pub implied: Vec<Literal>,
}

/// Probes `w` natively: propagate `f ∧ w` and report whether it conflicts.
pub fn probe_literal(f: &CnfFormula, w: Literal) -> ProbeResult {
    assert!(w.var() <= f.num_vars(), "probed variable out of range");
    match propagate_queue(f, &[w]) {
        PropagationOutcome::Conflict => ProbeResult {
            probed: w,
            failed: true,
            implied: Vec::new(),
        },
        PropagationOutcome::Fixpoint(a) => ProbeResult {
            probed: w,
            failed: false,
            implied: a.assigned_literals(),
        },
    }
}

/// Builds the probe formula `(¬l ∨ ¬w) ∧ reify(f ∧ (w))` over the combined
/// variable space: original variables keep `1..=n`, the reified block sits
/// above them, and `l` is the conflict-output variable of the reification.
///
/// The clause `(¬l ∨ ¬w)` comes first; the layer count is `n + 1` with `n`
/// taken from `f` (appending the unit `(w)` adds no variable).
pub fn build_flp_formula(f: &CnfFormula, w: Literal) -> (CnfFormula, ReifiedVarMap) {
    assert!(w.var() <= f.num_vars(), "probed variable out of range");
    let sigma_prime = f.with_clause(Clause::unit(w));
    let (psi, map) = reify(&sigma_prime, &ReifyOptions::default())
        .expect("default reification options never fail");
    let l = map
        .conflict_var()
        .expect("default options emit the conflict output");

    let mut clauses = Vec::with_capacity(psi.num_clauses() + 1);
    clauses.push(Clause::new(vec![Literal::negative(l), w.negated()]));
    clauses.extend(psi.clauses().iter().cloned());
    (CnfFormula::new(psi.num_vars(), clauses), map)
}

/// Simulates the failed-literal rule for `w` by unit propagation alone:
/// propagates [`build_flp_formula`]'s output with no assumptions and
/// reports whether the original literal `¬w` ends up in the fixpoint.
///
/// Panics if that propagation conflicts — the probe formula admits no empty
/// clause under unit propagation, so a conflict would mean the construction
/// is broken.
pub fn simulate_flp(f: &CnfFormula, w: Literal) -> bool {
    let (probe, _) = build_flp_formula(f, w);
    match propagate_queue(&probe, &[]) {
        PropagationOutcome::Conflict => {
            panic!("unit propagation conflicted on the probe formula for {w}")
        }
        PropagationOutcome::Fixpoint(a) => a.literal_value(w.negated()) == Some(true),
    }
}

/// Native and reified verdicts for one probed literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlpRecord {
    pub probed: Literal,
    pub native_failed: bool,
    pub reified_derives_not_w: bool,
}

/// Per-literal agreement between the native probe and its reified
/// simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlpReport {
    pub records: Vec<FlpRecord>,
    /// True iff every record has `native_failed == reified_derives_not_w`.
    pub agree: bool,
}

impl FlpReport {
    /// Literals forced by the rule: the negations of the failed probes.
    pub fn forced_literals(&self) -> Vec<Literal> {
        self.records
            .iter()
            .filter(|r| r.native_failed)
            .map(|r| r.probed.negated())
            .collect()
    }
}

/// Probes all `2n` literals, each natively and through a fresh reified
/// instance, against the original formula (conclusions are reported, never
/// applied). Probe order is ascending variable, negative polarity first.
pub fn probe_all(f: &CnfFormula) -> FlpReport {
    let mut records = Vec::with_capacity(2 * f.num_vars() as usize);
    for var in 1..=f.num_vars() {
        for positive in [false, true] {
            let w = Literal::new(var, positive);
            records.push(FlpRecord {
                probed: w,
                native_failed: probe_literal(f, w).failed,
                reified_derives_not_w: simulate_flp(f, w),
            });
        }
    }
    let agree = records
        .iter()
        .all(|r| r.native_failed == r.reified_derives_not_w);
    FlpReport { records, agree }
}
