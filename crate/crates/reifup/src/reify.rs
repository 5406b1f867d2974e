//! Construction of the reified counterpart of a CNF formula.
//!
//! Given a normalized formula σ over variables `1..=n`, [`reify`] builds a
//! companion formula ψ over layered variables `v_i^+` / `v_i^-` ("v is
//! known true / false by propagation round i") plus a conflict-output
//! variable `s`, such that unit propagation on ψ mirrors unit propagation on
//! σ round for round:
//!
//! * ψ is always satisfiable — every clause carries a positive layered
//!   literal — and propagation on it never assigns false to a layered
//!   variable, so a conflict in σ shows up not as an empty clause but as
//!   `s` being forced true.
//! * `[v, i, p]` is forced true exactly when the decoupled closure of σ
//!   marks `(v, p)` by round `i` (see
//!   [`decoupled_closure`](crate::propagation::decoupled_closure)).
//!
//! The clause groups, in fixed emission order:
//!
//! 1. **Seed units** — for each unit clause `(l)` of σ, the unit `([l]₁)`.
//! 2. Per layer transition `i → i+1`, ascending `i`: **propagation
//!    clauses** `(¬[v,i,p] ∨ [v,i+1,p])` for every variable and polarity
//!    (negative before positive), carrying known facts forward one round;
//!    then **deduction clauses** — for each non-unit clause `C` of σ and
//!    each literal `l ∈ C`, a clause forcing `[l]` at layer `i+1` once
//!    every other literal of `C` is known false at layer `i`.
//! 3. **Conflict-output clauses** `(¬[v,L,+] ∨ ¬[v,L,-] ∨ s)`, one per
//!    variable: a variable known both true and false forces `s`.
//! 4. **Injection clauses** `(¬v ∨ [v,1,+]) ∧ (v ∨ [v,1,-])` for each
//!    injected original variable, importing an external assignment of σ's
//!    variables into layer 1.
//! 5. If σ contains the empty clause, the unit `(s)`: propagation on σ
//!    conflicts unconditionally, so `s` must be forced unconditionally.
//!
//! Unit clauses of σ get no deduction clauses: their seed unit plus the
//! propagation clauses already carry their effect to every later layer.

use crate::cnf::{Clause, CnfFormula, Literal};
use std::collections::BTreeSet;
use thiserror::Error;

/// Which original variables receive injection clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injection {
    All,
    None,
    Vars(BTreeSet<u32>),
}

/// Options for [`reify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReifyOptions {
    /// Layer count L; `None` means `num_vars + 1`, enough for propagation
    /// on σ to run to completion under any partial assignment.
    pub layers: Option<u32>,
    pub inject: Injection,
    /// Emit the conflict-output variable `s` and its clauses.
    pub emit_conflict_output: bool,
}

impl Default for ReifyOptions {
    fn default() -> Self {
        ReifyOptions {
            layers: None,
            inject: Injection::All,
            emit_conflict_output: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReifyError {
    #[error(
        "the formula contains the empty clause; reifying it requires the conflict-output variable"
    )]
    ConflictOutputRequired,
    #[error("layer count must be at least 1")]
    ZeroLayers,
    #[error("injected variable {var} is outside 1..={num_vars}")]
    InjectOutOfRange { var: u32, num_vars: u32 },
}

/// The deterministic variable layout of a reified formula.
///
/// Original variables keep indices `1..=n`. Layered variables occupy
/// `n+1..=n+2nL`, layer-major: `[v, i, +]` sits at
/// `n + 2n(i-1) + 2(v-1) + 1` and `[v, i, -]` right after it. The
/// conflict-output variable, when emitted, is the last index `n + 2nL + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReifiedVarMap {
    num_original: u32,
    layers: u32,
    conflict_var: Option<u32>,
}

/// What a ψ variable index stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    Original(u32),
    Layered {
        var: u32,
        layer: u32,
        positive: bool,
    },
    ConflictOutput,
}

impl ReifiedVarMap {
    fn new(num_original: u32, layers: u32, emit_conflict_output: bool) -> Self {
        let layered = 2 * num_original as u64 * layers as u64;
        assert!(
            num_original as u64 + layered < u32::MAX as u64,
            "reified variable space exceeds u32"
        );
        let conflict_var =
            emit_conflict_output.then(|| num_original + 2 * num_original * layers + 1);
        ReifiedVarMap {
            num_original,
            layers,
            conflict_var,
        }
    }

    /// Number of original variables (n).
    pub fn num_original(&self) -> u32 {
        self.num_original
    }

    /// Layer count (L).
    pub fn layers(&self) -> u32 {
        self.layers
    }

    /// Index of the conflict-output variable `s`, when emitted.
    pub fn conflict_var(&self) -> Option<u32> {
        self.conflict_var
    }

    /// Total number of ψ variables.
    pub fn num_vars(&self) -> u32 {
        self.num_original + 2 * self.num_original * self.layers + self.conflict_var.is_some() as u32
    }

    /// Index of the layered variable `[var, layer, positive]`.
    pub fn reified_var(&self, var: u32, layer: u32, positive: bool) -> u32 {
        assert!(
            (1..=self.num_original).contains(&var),
            "variable {var} outside 1..={}",
            self.num_original
        );
        assert!(
            (1..=self.layers).contains(&layer),
            "layer {layer} outside 1..={}",
            self.layers
        );
        let base = self.num_original + 2 * self.num_original * (layer - 1) + 2 * (var - 1) + 1;
        if positive {
            base
        } else {
            base + 1
        }
    }

    /// The layered literal `[l]ᵢ` for an original literal `l`.
    pub fn layered(&self, lit: Literal, layer: u32) -> Literal {
        Literal::positive(self.reified_var(lit.var(), layer, lit.is_positive()))
    }

    /// Decodes a ψ variable index.
    pub fn decode(&self, index: u32) -> VarRole {
        assert!(
            (1..=self.num_vars()).contains(&index),
            "index {index} out of range"
        );
        if index <= self.num_original {
            return VarRole::Original(index);
        }
        if Some(index) == self.conflict_var {
            return VarRole::ConflictOutput;
        }
        let offset = index - self.num_original - 1;
        let layer = offset / (2 * self.num_original) + 1;
        let within = offset % (2 * self.num_original);
        VarRole::Layered {
            var: within / 2 + 1,
            layer,
            positive: within.is_multiple_of(2),
        }
    }
}

/// Builds the reified counterpart ψ of a normalized formula.
///
/// See the module docs for the construction. The clause and variable counts
/// of the result always equal [`expected_counts`] exactly, and two calls on
/// equal inputs produce identical formulas.
pub fn reify(
    f: &CnfFormula,
    opts: &ReifyOptions,
) -> Result<(CnfFormula, ReifiedVarMap), ReifyError> {
    debug_assert!(f.is_normalized(), "reify requires a normalized formula");
    let n = f.num_vars();
    let layers = match opts.layers {
        Some(0) => return Err(ReifyError::ZeroLayers),
        Some(l) => l,
        None => n + 1,
    };
    if f.has_empty_clause() && !opts.emit_conflict_output {
        return Err(ReifyError::ConflictOutputRequired);
    }
    let inject = resolve_injection(&opts.inject, n)?;
    let map = ReifiedVarMap::new(n, layers, opts.emit_conflict_output);

    let mut clauses: Vec<Clause> = Vec::new();

    // (1) Seed units.
    for lit in f.unit_literals() {
        clauses.push(Clause::unit(map.layered(lit, 1)));
    }

    // (2) Layer transitions.
    for layer in 1..layers {
        for var in 1..=n {
            for positive in [false, true] {
                clauses.push(Clause::new(vec![
                    Literal::negative(map.reified_var(var, layer, positive)),
                    Literal::positive(map.reified_var(var, layer + 1, positive)),
                ]));
            }
        }
        for clause in f.clauses() {
            if clause.len() < 2 {
                continue;
            }
            for (i, &head) in clause.iter().enumerate() {
                let mut lits: Vec<Literal> = Vec::with_capacity(clause.len());
                for (j, &other) in clause.iter().enumerate() {
                    if j != i {
                        lits.push(map.layered(other.negated(), layer).negated());
                    }
                }
                lits.push(map.layered(head, layer + 1));
                clauses.push(Clause::new(lits));
            }
        }
    }

    // (3) Conflict-output clauses.
    if let Some(s) = map.conflict_var() {
        for var in 1..=n {
            clauses.push(Clause::new(vec![
                Literal::negative(map.reified_var(var, layers, true)),
                Literal::negative(map.reified_var(var, layers, false)),
                Literal::positive(s),
            ]));
        }
    }

    // (4) Injection clauses.
    for &var in &inject {
        clauses.push(Clause::new(vec![
            Literal::negative(var),
            Literal::positive(map.reified_var(var, 1, true)),
        ]));
        clauses.push(Clause::new(vec![
            Literal::positive(var),
            Literal::positive(map.reified_var(var, 1, false)),
        ]));
    }

    // (5) The empty clause of σ conflicts unconditionally.
    if f.has_empty_clause() {
        let s = map.conflict_var().expect("checked above");
        clauses.push(Clause::unit(Literal::positive(s)));
    }

    Ok((CnfFormula::new(map.num_vars(), clauses), map))
}

fn resolve_injection(inject: &Injection, num_vars: u32) -> Result<Vec<u32>, ReifyError> {
    match inject {
        Injection::All => Ok((1..=num_vars).collect()),
        Injection::None => Ok(Vec::new()),
        Injection::Vars(vars) => {
            for &var in vars {
                if var == 0 || var > num_vars {
                    return Err(ReifyError::InjectOutOfRange { var, num_vars });
                }
            }
            Ok(vars.iter().copied().collect())
        }
    }
}

/// Clause and variable counts of a reified formula, by clause group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedCounts {
    pub seed_units: usize,
    pub propagation: usize,
    pub deduction: usize,
    pub conflict_output: usize,
    pub injection: usize,
    pub empty_clause_units: usize,
    pub variables: usize,
}

impl ExpectedCounts {
    pub fn clauses(&self) -> usize {
        self.seed_units
            + self.propagation
            + self.deduction
            + self.conflict_output
            + self.injection
            + self.empty_clause_units
    }
}

/// Closed-form counts for the construction:
/// `clauses = u + (L-1)·(2n + Σ k_C) + n·[s] + 2·|inject| + [empty]` and
/// `variables = n + 2nL + [s]`, where `u` is the unit-clause count and the
/// widths `k_C` range over non-unit clauses.
pub fn expected_counts(
    num_vars: u32,
    unit_count: usize,
    nonunit_widths: &[usize],
    layers: u32,
    inject_count: u32,
    has_empty_clause: bool,
    emit_conflict_output: bool,
) -> ExpectedCounts {
    let n = num_vars as usize;
    let transitions = layers.saturating_sub(1) as usize;
    let width_sum: usize = nonunit_widths.iter().sum();
    ExpectedCounts {
        seed_units: unit_count,
        propagation: transitions * 2 * n,
        deduction: transitions * width_sum,
        conflict_output: if emit_conflict_output { n } else { 0 },
        injection: 2 * inject_count as usize,
        empty_clause_units: has_empty_clause as usize,
        variables: n + 2 * n * layers as usize + emit_conflict_output as usize,
    }
}

/// [`expected_counts`] with the parameters read off a formula and options.
pub fn expected_counts_for(
    f: &CnfFormula,
    opts: &ReifyOptions,
) -> Result<ExpectedCounts, ReifyError> {
    let n = f.num_vars();
    let layers = match opts.layers {
        Some(0) => return Err(ReifyError::ZeroLayers),
        Some(l) => l,
        None => n + 1,
    };
    if f.has_empty_clause() && !opts.emit_conflict_output {
        return Err(ReifyError::ConflictOutputRequired);
    }
    let inject_count = resolve_injection(&opts.inject, n)?.len() as u32;
    let unit_count = f.clauses().iter().filter(|c| c.is_unit()).count();
    let nonunit_widths: Vec<usize> = f
        .clauses()
        .iter()
        .filter(|c| c.len() >= 2)
        .map(|c| c.len())
        .collect();
    Ok(expected_counts(
        n,
        unit_count,
        &nonunit_widths,
        layers,
        inject_count,
        f.has_empty_clause(),
        opts.emit_conflict_output,
    ))
}
