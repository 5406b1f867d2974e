//! Unit propagation over a CNF formula, in three semantics.
//!
//! * [`propagate_queue`] — the usual fixpoint: repeatedly fix variables
//!   occurring in unit clauses, halting with a conflict when the empty
//!   clause is derived.
//! * [`propagate_rounds`] — synchronous stepping: round `i` fixes, all at
//!   once, every literal that became unit-implied by the end of round
//!   `i - 1`. Assumptions form round 0. At most `n + 1` rounds.
//! * [`decoupled_closure`] — a monotone marker closure in which the two
//!   polarities of a variable are tracked independently and a conflict
//!   never halts anything. This is exactly the semantics the reified
//!   counterpart realizes, and serves as the reference oracle for it.
//!
//! The three are implemented separately on purpose; differential tests
//! compare them against each other, so they share only the data model.
//!
//! All functions expect a normalized formula (no duplicate literals, no
//! tautological clauses).

use crate::cnf::{CnfFormula, Literal};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A partial truth assignment over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn empty(num_vars: u32) -> Self {
        Assignment {
            values: vec![None; num_vars as usize],
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, var: u32) -> Option<bool> {
        self.values[var as usize - 1]
    }

    /// `Some(true)` when `lit` is satisfied, `Some(false)` when falsified.
    pub fn literal_value(&self, lit: Literal) -> Option<bool> {
        self.value(lit.var()).map(|v| v == lit.is_positive())
    }

    pub fn is_assigned(&self, var: u32) -> bool {
        self.value(var).is_some()
    }

    pub fn assigned_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// The assigned variables as satisfied literals, ascending by variable.
    pub fn assigned_literals(&self) -> Vec<Literal> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|positive| Literal::new(i as u32 + 1, positive)))
            .collect()
    }

    fn assign(&mut self, lit: Literal) {
        debug_assert!(
            self.literal_value(lit) != Some(false),
            "contradictory assign"
        );
        self.values[lit.var() as usize - 1] = Some(lit.is_positive());
    }
}

/// Outcome of running unit propagation to fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropagationOutcome {
    /// The unique fixpoint, reached without deriving the empty clause.
    Fixpoint(Assignment),
    /// The empty clause was derived.
    Conflict,
}

impl PropagationOutcome {
    pub fn is_conflict(&self) -> bool {
        matches!(self, PropagationOutcome::Conflict)
    }

    pub fn fixpoint(&self) -> Option<&Assignment> {
        match self {
            PropagationOutcome::Fixpoint(a) => Some(a),
            PropagationOutcome::Conflict => None,
        }
    }
}

fn lit_slot(lit: Literal) -> usize {
    2 * (lit.var() as usize - 1) + lit.is_positive() as usize
}

/// Queue-based unit propagation of `f ∧ assumptions` to fixpoint.
///
/// Clause state is tracked with per-clause satisfied flags and false-literal
/// counters. The fixpoint is independent of clause and assumption order;
/// complementary assumptions yield an immediate conflict rather than an
/// error.
pub fn propagate_queue(f: &CnfFormula, assumptions: &[Literal]) -> PropagationOutcome {
    debug_assert!(
        f.is_normalized(),
        "propagation requires a normalized formula"
    );
    if f.has_empty_clause() {
        return PropagationOutcome::Conflict;
    }

    let num_clauses = f.num_clauses();
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); 2 * f.num_vars() as usize];
    for (idx, clause) in f.clauses().iter().enumerate() {
        for &lit in clause {
            occurrences[lit_slot(lit)].push(idx);
        }
    }

    let mut assignment = Assignment::empty(f.num_vars());
    let mut satisfied = vec![false; num_clauses];
    let mut false_count = vec![0usize; num_clauses];
    let mut queue: VecDeque<Literal> = VecDeque::new();

    fn enqueue(lit: Literal, assignment: &mut Assignment, queue: &mut VecDeque<Literal>) -> bool {
        match assignment.literal_value(lit) {
            Some(true) => true,
            Some(false) => false,
            None => {
                assignment.assign(lit);
                queue.push_back(lit);
                true
            }
        }
    }

    for &lit in assumptions {
        if !enqueue(lit, &mut assignment, &mut queue) {
            return PropagationOutcome::Conflict;
        }
    }
    for lit in f.unit_literals() {
        if !enqueue(lit, &mut assignment, &mut queue) {
            return PropagationOutcome::Conflict;
        }
    }

    while let Some(lit) = queue.pop_front() {
        for &idx in &occurrences[lit_slot(lit)] {
            satisfied[idx] = true;
        }
        for &idx in &occurrences[lit_slot(lit.negated())] {
            false_count[idx] += 1;
            if satisfied[idx] {
                continue;
            }
            let clause = &f.clauses()[idx];
            if false_count[idx] == clause.len() {
                return PropagationOutcome::Conflict;
            }
            if false_count[idx] == clause.len() - 1 {
                // Counters lag behind assignments still waiting in the
                // queue, so the remaining literal may in fact be decided.
                let forced = clause
                    .iter()
                    .copied()
                    .find(|&l| assignment.literal_value(l) != Some(false));
                match forced {
                    None => return PropagationOutcome::Conflict,
                    Some(lit) => match assignment.literal_value(lit) {
                        Some(true) => satisfied[idx] = true,
                        Some(false) => unreachable!(),
                        None => {
                            assignment.assign(lit);
                            queue.push_back(lit);
                        }
                    },
                }
            }
        }
    }
    PropagationOutcome::Fixpoint(assignment)
}

/// Where and why round-synchronous propagation derived the empty clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceConflict {
    /// 1-based round of the conflict; 0 is the assumption round.
    pub round: u32,
    /// Smallest variable forced both ways, or the variable whose assignment
    /// completed the falsified clause. `None` when the falsified clause is
    /// the empty clause itself.
    pub var: Option<u32>,
    /// Index of a falsified clause of `f`, lowest first. `None` when the
    /// conflict comes from complementary assumptions alone.
    pub clause: Option<usize>,
}

/// The history of a round-synchronous propagation run.
///
/// `rounds[i]` holds round `i + 1`; assumptions are round 0 and kept
/// separately. Round literal sets are sorted by (variable, polarity). When a
/// round forces both polarities of a variable, the full round is recorded
/// but not folded into `final_assignment`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationTrace {
    pub assumptions: Vec<Literal>,
    pub rounds: Vec<Vec<Literal>>,
    pub conflict: Option<TraceConflict>,
    pub final_assignment: Assignment,
}

impl PropagationTrace {
    pub fn conflicted(&self) -> bool {
        self.conflict.is_some()
    }

    /// Number of propagation rounds recorded (excluding the assumption
    /// round). Never exceeds `num_vars + 1`.
    pub fn num_rounds(&self) -> u32 {
        self.rounds.len() as u32
    }
}

/// Looks for a clause with every literal false, returning its index and the
/// smallest clause variable assigned in `just_fixed`.
fn falsified_clause(
    f: &CnfFormula,
    assignment: &Assignment,
    just_fixed: &[Literal],
) -> Option<(usize, Option<u32>)> {
    for (idx, clause) in f.clauses().iter().enumerate() {
        let all_false = clause
            .iter()
            .all(|&l| assignment.literal_value(l) == Some(false));
        if all_false {
            let completing = clause
                .iter()
                .filter(|l| just_fixed.iter().any(|j| j.var() == l.var()))
                .map(|l| l.var())
                .min();
            return Some((idx, completing));
        }
    }
    None
}

/// Returns the smallest variable occurring in both polarities in a sorted
/// literal set.
fn double_forced_var(sorted: &[Literal]) -> Option<u32> {
    sorted
        .windows(2)
        .find(|w| w[0].var() == w[1].var())
        .map(|w| w[0].var())
}

/// Round-synchronous unit propagation of `f ∧ assumptions`.
///
/// Round 0 records the assumptions; round `i` then fixes, simultaneously,
/// every literal unit-implied by the assignment accumulated through round
/// `i - 1` and not yet assigned. The run halts at an empty round (fixpoint)
/// or on a conflict: both polarities of a variable forced within one round,
/// or a clause fully falsified by the round just applied. The final
/// assignment and the conflict verdict agree with [`propagate_queue`].
pub fn propagate_rounds(f: &CnfFormula, assumptions: &[Literal]) -> PropagationTrace {
    debug_assert!(
        f.is_normalized(),
        "propagation requires a normalized formula"
    );
    let mut assignment = Assignment::empty(f.num_vars());

    let mut round0: Vec<Literal> = assumptions.to_vec();
    round0.sort();
    round0.dedup();

    if let Some(var) = double_forced_var(&round0) {
        return PropagationTrace {
            assumptions: round0,
            rounds: Vec::new(),
            conflict: Some(TraceConflict {
                round: 0,
                var: Some(var),
                clause: None,
            }),
            final_assignment: assignment,
        };
    }
    for &lit in &round0 {
        assignment.assign(lit);
    }
    if let Some((idx, var)) = falsified_clause(f, &assignment, &round0) {
        return PropagationTrace {
            assumptions: round0,
            rounds: Vec::new(),
            conflict: Some(TraceConflict {
                round: 0,
                var,
                clause: Some(idx),
            }),
            final_assignment: assignment,
        };
    }

    let mut rounds: Vec<Vec<Literal>> = Vec::new();
    let mut conflict = None;
    loop {
        // Literal -> lowest-index clause that unit-implies it.
        let mut implied: BTreeMap<Literal, usize> = BTreeMap::new();
        for (idx, clause) in f.clauses().iter().enumerate() {
            let mut false_count = 0;
            let mut satisfied = false;
            for &lit in clause {
                match assignment.literal_value(lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => false_count += 1,
                    None => {}
                }
            }
            if satisfied {
                continue;
            }
            debug_assert!(
                false_count < clause.len(),
                "falsified clause missed earlier"
            );
            if false_count == clause.len() - 1 {
                let forced = clause
                    .iter()
                    .copied()
                    .find(|&l| assignment.literal_value(l).is_none())
                    .expect("the non-false literal of an unsatisfied clause is unassigned");
                implied.entry(forced).or_insert(idx);
            }
        }

        if implied.is_empty() {
            break;
        }
        let round: Vec<Literal> = implied.keys().copied().collect();
        rounds.push(round.clone());
        let round_no = rounds.len() as u32;

        if let Some(var) = double_forced_var(&round) {
            let lowest_clause =
                implied[&Literal::positive(var)].min(implied[&Literal::negative(var)]);
            conflict = Some(TraceConflict {
                round: round_no,
                var: Some(var),
                clause: Some(lowest_clause),
            });
            break;
        }
        for &lit in &round {
            assignment.assign(lit);
        }
        if let Some((idx, var)) = falsified_clause(f, &assignment, &round) {
            conflict = Some(TraceConflict {
                round: round_no,
                var,
                clause: Some(idx),
            });
            break;
        }
    }

    PropagationTrace {
        assumptions: round0,
        rounds,
        conflict,
        final_assignment: assignment,
    }
}

/// The monotone closure computed with decoupled polarities.
///
/// `rounds[i]` holds the markers first derived at round `i + 1`, each
/// rendered as the literal it makes true; a variable may appear with both
/// polarities, and derivation continues past any conflict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoupledClosure {
    pub rounds: Vec<Vec<Literal>>,
    /// Variables marked with both polarities.
    pub conflict_vars: BTreeSet<u32>,
    /// Earliest round at which some variable carried both polarities.
    pub first_conflict_round: Option<u32>,
    marked: Vec<[Option<u32>; 2]>,
}

impl DecoupledClosure {
    /// The round at which `(var, positive)` was marked, if ever.
    pub fn marked_round(&self, var: u32, positive: bool) -> Option<u32> {
        self.marked[var as usize - 1][positive as usize]
    }

    /// Whether `(var, positive)` is marked by round `round` (inclusive).
    pub fn marked_by(&self, var: u32, positive: bool, round: u32) -> bool {
        self.marked_round(var, positive).is_some_and(|r| r <= round)
    }

    pub fn has_conflict(&self) -> bool {
        !self.conflict_vars.is_empty()
    }

    /// All markers as literals, sorted by (variable, polarity).
    pub fn marker_literals(&self) -> Vec<Literal> {
        let mut out = Vec::new();
        for (i, slots) in self.marked.iter().enumerate() {
            let var = i as u32 + 1;
            if slots[0].is_some() {
                out.push(Literal::negative(var));
            }
            if slots[1].is_some() {
                out.push(Literal::positive(var));
            }
        }
        out
    }
}

/// Computes the decoupled closure of `f ∧ assumptions`.
///
/// Round 1 marks the unit-clause literals of `f` together with the
/// assumptions. Round `i + 1` marks `(var(l), pol(l))` whenever some clause
/// containing `l` has every other literal marked false by round `i`. A
/// conflict (both polarities marked) never halts the closure; it stops at a
/// fixpoint or after `max_rounds` rounds.
pub fn decoupled_closure(
    f: &CnfFormula,
    assumptions: &[Literal],
    max_rounds: u32,
) -> DecoupledClosure {
    assert!(max_rounds >= 1, "max_rounds must be at least 1");
    debug_assert!(
        f.is_normalized(),
        "propagation requires a normalized formula"
    );

    let n = f.num_vars() as usize;
    let mut marked: Vec<[Option<u32>; 2]> = vec![[None; 2]; n];
    let mut rounds: Vec<Vec<Literal>> = Vec::new();

    let mut seeds: BTreeSet<Literal> = f.unit_literals().collect();
    seeds.extend(assumptions.iter().copied());
    if !seeds.is_empty() {
        for &lit in &seeds {
            marked[lit.var() as usize - 1][lit.is_positive() as usize] = Some(1);
        }
        rounds.push(seeds.into_iter().collect());
    }

    while !rounds.is_empty() && (rounds.len() as u32) < max_rounds {
        let round_no = rounds.len() as u32 + 1;
        let mut fresh: BTreeSet<Literal> = BTreeSet::new();
        for clause in f.clauses() {
            for (i, &lit) in clause.iter().enumerate() {
                if marked[lit.var() as usize - 1][lit.is_positive() as usize].is_some() {
                    continue;
                }
                let others_false = clause.iter().enumerate().all(|(j, &other)| {
                    j == i
                        || marked[other.var() as usize - 1][!other.is_positive() as usize].is_some()
                });
                if others_false {
                    fresh.insert(lit);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        for &lit in &fresh {
            marked[lit.var() as usize - 1][lit.is_positive() as usize] = Some(round_no);
        }
        rounds.push(fresh.into_iter().collect());
    }

    let mut conflict_vars = BTreeSet::new();
    let mut first_conflict_round = None;
    for (i, slots) in marked.iter().enumerate() {
        if let (Some(neg), Some(pos)) = (slots[0], slots[1]) {
            conflict_vars.insert(i as u32 + 1);
            let both_at = neg.max(pos);
            first_conflict_round = Some(match first_conflict_round {
                None => both_at,
                Some(best) => both_at.min(best),
            });
        }
    }

    DecoupledClosure {
        rounds,
        conflict_vars,
        first_conflict_round,
        marked,
    }
}
