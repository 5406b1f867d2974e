//! Seeded random CNF generation and the differential harness that checks
//! the reified construction against direct propagation oracles.
//!
//! Randomness comes exclusively from SplitMix64 streams, consumed in the
//! fixed orders documented on each function, so every instance, assumption
//! set and trial is bit-reproducible from a single seed — in any
//! implementation of the same recipe, not just this one.

use crate::cnf::{normalize, Clause, CnfFormula, Literal};
use crate::flp::probe_all;
use crate::propagation::{decoupled_closure, propagate_queue, PropagationOutcome};
use crate::reify::{reify, ReifiedVarMap, ReifyOptions};
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

/// SplitMix64: `state += 0x9e3779b97f4a7c15`, then two xor-multiply mixing
/// rounds. Tiny, seedable with any 64-bit value, and identical everywhere.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Draws uniformly in `0..bound` as `next_u64() % bound`.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below requires a positive bound");
        self.next_u64() % bound
    }
}

/// Configuration for seeded random CNF generation. For the differential
/// harness the numeric fields act as inclusive per-trial upper bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub num_vars: u32,
    pub num_clauses: usize,
    pub max_width: u32,
    pub allow_units: bool,
}

fn min_width(allow_units: bool) -> u64 {
    if allow_units {
        1
    } else {
        2
    }
}

/// Draws `num_clauses` random clauses over `1..=num_vars` and normalizes
/// the result (a no-op here apart from re-checking: clauses never repeat a
/// variable by construction).
///
/// Draw order, from a stream seeded with `cfg.seed`, per clause: one draw
/// for the width `w` (uniform in `[lo, max_width]`, `lo` = 1 with units
/// allowed, else 2), then `w` draws picking distinct variables by partial
/// Fisher-Yates over `1..=num_vars` (`pos + next_below(n - pos)` at each
/// position), then `w` polarity draws (`next_below(2)`, 1 = positive).
pub fn gen_random_cnf(cfg: &GenConfig) -> CnfFormula {
    let n = cfg.num_vars;
    let lo = min_width(cfg.allow_units);
    assert!(n >= 1, "generation requires at least one variable");
    assert!(
        lo <= cfg.max_width as u64 && cfg.max_width <= n,
        "width range [{lo}, {}] is invalid for {n} variables",
        cfg.max_width
    );

    let mut stream = SplitMix64::new(cfg.seed);
    let mut clauses = Vec::with_capacity(cfg.num_clauses);
    for _ in 0..cfg.num_clauses {
        let width = (lo + stream.next_below(cfg.max_width as u64 - lo + 1)) as usize;
        let mut pool: Vec<u32> = (1..=n).collect();
        for pos in 0..width {
            let pick = pos + stream.next_below((n as usize - pos) as u64) as usize;
            pool.swap(pos, pick);
        }
        let literals = pool[..width]
            .iter()
            .map(|&var| Literal::new(var, stream.next_below(2) == 1))
            .collect();
        clauses.push(Clause::new(literals));
    }
    normalize(&CnfFormula::new(n, clauses))
}

/// Which of the differential checks disagreed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MismatchKind {
    /// Conflict on σ vs. the conflict-output variable of ψ.
    Conflict,
    /// Per-layer correspondence between ψ's fixpoint and the decoupled
    /// closure.
    Layer,
    /// Final-assignment transparency in conflict-free runs.
    Final,
    /// Native failed-literal probe vs. reified simulation.
    Flp,
}

impl fmt::Display for MismatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MismatchKind::Conflict => "conflict",
            MismatchKind::Layer => "layer",
            MismatchKind::Final => "final",
            MismatchKind::Flp => "flp",
        };
        write!(f, "{name}")
    }
}

/// One reproducible disagreement: the seed regenerates the instance, the
/// assumption set pins the failing run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub seed: u64,
    pub assumptions: Vec<Literal>,
    pub kind: MismatchKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub trials: u64,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

impl CheckReport {
    fn new(trials: u64, mismatches: Vec<Mismatch>) -> Self {
        let passed = mismatches.is_empty();
        CheckReport {
            trials,
            mismatches,
            passed,
        }
    }
}

/// A planned trial: a generated instance plus its assumption sets (the
/// empty assignment always comes first).
#[derive(Debug, Clone)]
pub struct Trial {
    pub seed: u64,
    pub formula: CnfFormula,
    pub assumption_sets: Vec<Vec<Literal>>,
}

/// Expands a bound configuration into concrete trials.
///
/// Trial seeds are drawn first, one `next_u64` per trial from a stream
/// seeded with `cfg.seed`. Each trial then consumes its own stream in this
/// order: `n` in `[lo, cfg.num_vars]` (`lo` = 2 when units are disallowed),
/// `m` in `[0, cfg.num_clauses]`, `k` in `[lo, min(cfg.max_width, n)]`, a
/// generator sub-seed, and per assumption set one `next_below(4)` draw per
/// variable — 0 or 1 leaves it unassigned, 2 fixes it true, 3 fixes it
/// false.
pub fn trial_plan(cfg: &GenConfig, trials: u64, assumptions_per_trial: u32) -> Vec<Trial> {
    let lo = min_width(cfg.allow_units);
    assert!(
        cfg.num_vars as u64 >= lo && cfg.max_width as u64 >= lo,
        "bounds admit no valid instance"
    );
    let mut master = SplitMix64::new(cfg.seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.next_u64()).collect();

    seeds
        .into_iter()
        .map(|seed| {
            let mut stream = SplitMix64::new(seed);
            let n = lo + stream.next_below(cfg.num_vars as u64 - lo + 1);
            let m = stream.next_below(cfg.num_clauses as u64 + 1);
            let k_hi = (cfg.max_width as u64).min(n);
            let k = lo + stream.next_below(k_hi - lo + 1);
            let gen_seed = stream.next_u64();
            let formula = gen_random_cnf(&GenConfig {
                seed: gen_seed,
                num_vars: n as u32,
                num_clauses: m as usize,
                max_width: k as u32,
                allow_units: cfg.allow_units,
            });
            let mut assumption_sets = vec![Vec::new()];
            for _ in 0..assumptions_per_trial {
                assumption_sets.push(sample_assumptions(&mut stream, n as u32));
            }
            Trial {
                seed,
                formula,
                assumption_sets,
            }
        })
        .collect()
}

/// Per variable: unassigned with probability 1/2, true or false with 1/4
/// each. Complementary pairs are impossible by construction.
fn sample_assumptions(stream: &mut SplitMix64, num_vars: u32) -> Vec<Literal> {
    let mut out = Vec::new();
    for var in 1..=num_vars {
        match stream.next_below(4) {
            0 | 1 => {}
            2 => out.push(Literal::positive(var)),
            3 => out.push(Literal::negative(var)),
            _ => unreachable!(),
        }
    }
    out
}

/// Runs the three simulation checks for one `(formula, assumptions)` pair
/// against a prebuilt default reification, recording at most one mismatch
/// per kind.
///
/// (a) conflict equivalence: propagation on σ conflicts iff ψ's fixpoint
/// fixes `s`; (b) layer correspondence: `[v, i, p]` is fixed iff the
/// decoupled closure marks `(v, p)` by round `i`; (c) transparency: in
/// conflict-free runs the layer-L markers reproduce σ's fixpoint exactly.
fn run_simulation_checks(
    f: &CnfFormula,
    psi: &CnfFormula,
    map: &ReifiedVarMap,
    assumptions: &[Literal],
    seed: u64,
    out: &mut Vec<Mismatch>,
) {
    let record = |kind: MismatchKind, out: &mut Vec<Mismatch>| {
        out.push(Mismatch {
            seed,
            assumptions: assumptions.to_vec(),
            kind,
        });
    };

    let sigma_outcome = propagate_queue(f, assumptions);
    let psi_fixpoint = match propagate_queue(psi, assumptions) {
        // ψ admits no empty clause under propagation; a conflict here is a
        // construction bug, reported as data.
        PropagationOutcome::Conflict => {
            record(MismatchKind::Conflict, out);
            return;
        }
        PropagationOutcome::Fixpoint(a) => a,
    };

    let s_fixed = map
        .conflict_var()
        .is_some_and(|s| psi_fixpoint.value(s) == Some(true));
    if s_fixed != sigma_outcome.is_conflict() {
        record(MismatchKind::Conflict, out);
    }

    let layers = map.layers();
    let closure = decoupled_closure(f, assumptions, layers);
    'layer_check: for var in 1..=map.num_original() {
        for layer in 1..=layers {
            for positive in [false, true] {
                let in_fixpoint =
                    psi_fixpoint.value(map.reified_var(var, layer, positive)) == Some(true);
                if in_fixpoint != closure.marked_by(var, positive, layer) {
                    record(MismatchKind::Layer, out);
                    break 'layer_check;
                }
            }
        }
    }

    if let PropagationOutcome::Fixpoint(sigma_fixpoint) = &sigma_outcome {
        for var in 1..=map.num_original() {
            let true_at_last = psi_fixpoint.value(map.reified_var(var, layers, true)) == Some(true);
            let false_at_last =
                psi_fixpoint.value(map.reified_var(var, layers, false)) == Some(true);
            if true_at_last != (sigma_fixpoint.value(var) == Some(true))
                || false_at_last != (sigma_fixpoint.value(var) == Some(false))
            {
                record(MismatchKind::Final, out);
                break;
            }
        }
    }
}

fn run_trial(trial: &Trial) -> Vec<Mismatch> {
    let (psi, map) = reify(&trial.formula, &ReifyOptions::default())
        .expect("default reification options never fail");
    let mut out = Vec::new();
    for assumptions in &trial.assumption_sets {
        run_simulation_checks(
            &trial.formula,
            &psi,
            &map,
            assumptions,
            trial.seed,
            &mut out,
        );
    }
    out
}

/// Differential check over random instances: per trial, the empty
/// assignment plus `assumptions_per_trial` random partial assignments, each
/// run through the three simulation checks. Trials run in parallel; the
/// report is identical to [`differential_check_sequential`]'s.
pub fn differential_check(cfg: &GenConfig, trials: u64, assumptions_per_trial: u32) -> CheckReport {
    let plan = trial_plan(cfg, trials, assumptions_per_trial);
    let mismatches: Vec<Mismatch> = plan.par_iter().flat_map_iter(run_trial).collect();
    CheckReport::new(trials, mismatches)
}

/// [`differential_check`] on a single thread.
pub fn differential_check_sequential(
    cfg: &GenConfig,
    trials: u64,
    assumptions_per_trial: u32,
) -> CheckReport {
    let plan = trial_plan(cfg, trials, assumptions_per_trial);
    let mismatches: Vec<Mismatch> = plan.iter().flat_map(run_trial).collect();
    CheckReport::new(trials, mismatches)
}

/// Default variable limit for [`exhaustive_check`]: 3^n partial assignments
/// grow fast.
pub const EXHAUSTIVE_VAR_LIMIT: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{num_vars} variables exceed the exhaustive limit of {limit} (3^n partial assignments)")]
pub struct ExhaustiveLimitExceeded {
    pub num_vars: u32,
    pub limit: u32,
}

/// Runs the three simulation checks for **every** partial assignment of the
/// formula's variables (3^n of them, enumerated in ternary counting order
/// with variable 1 as the least significant digit: 0 unassigned, 1 true,
/// 2 false). Mismatch seeds carry the enumeration index.
pub fn exhaustive_check(f: &CnfFormula) -> Result<CheckReport, ExhaustiveLimitExceeded> {
    exhaustive_check_bounded(f, EXHAUSTIVE_VAR_LIMIT)
}

/// [`exhaustive_check`] with a caller-chosen variable limit.
pub fn exhaustive_check_bounded(
    f: &CnfFormula,
    limit: u32,
) -> Result<CheckReport, ExhaustiveLimitExceeded> {
    let n = f.num_vars();
    if n > limit {
        return Err(ExhaustiveLimitExceeded { num_vars: n, limit });
    }
    let (psi, map) =
        reify(f, &ReifyOptions::default()).expect("default reification options never fail");
    let total = 3u64.pow(n);
    let mut mismatches = Vec::new();
    for index in 0..total {
        let mut digits = index;
        let mut assumptions = Vec::new();
        for var in 1..=n {
            match digits % 3 {
                0 => {}
                1 => assumptions.push(Literal::positive(var)),
                2 => assumptions.push(Literal::negative(var)),
                _ => unreachable!(),
            }
            digits /= 3;
        }
        run_simulation_checks(f, &psi, &map, &assumptions, index, &mut mismatches);
    }
    Ok(CheckReport::new(total, mismatches))
}

/// Probes every literal of `trials` random instances both natively and
/// through the reified construction. Instances are planned exactly like
/// [`differential_check`]'s (with no random assumption sets); a mismatch
/// records the probed literal as its assumption set.
pub fn flp_check(cfg: &GenConfig, trials: u64) -> CheckReport {
    let plan = trial_plan(cfg, trials, 0);
    let mismatches: Vec<Mismatch> = plan
        .par_iter()
        .flat_map_iter(|trial| {
            let report = probe_all(&trial.formula);
            report
                .records
                .into_iter()
                .filter(|r| r.native_failed != r.reified_derives_not_w)
                .map(|r| Mismatch {
                    seed: trial.seed,
                    assumptions: vec![r.probed],
                    kind: MismatchKind::Flp,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    CheckReport::new(trials, mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimacs::to_dimacs;

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig {
            seed: 1,
            num_vars: 5,
            num_clauses: 8,
            max_width: 3,
            allow_units: true,
        };
        let a = gen_random_cnf(&cfg);
        let b = gen_random_cnf(&cfg);
        assert_eq!(a, b);
        assert_eq!(to_dimacs(&a), to_dimacs(&b));
    }

    #[test]
    fn zero_clauses_generate_an_empty_clause_list() {
        let cfg = GenConfig {
            seed: 7,
            num_vars: 4,
            num_clauses: 0,
            max_width: 2,
            allow_units: false,
        };
        assert_eq!(gen_random_cnf(&cfg).num_clauses(), 0);
    }

    #[test]
    fn generated_clauses_respect_width_and_distinct_variables() {
        for seed in 0..100 {
            let cfg = GenConfig {
                seed,
                num_vars: 7,
                num_clauses: 100,
                max_width: 4,
                allow_units: seed % 2 == 0,
            };
            let f = gen_random_cnf(&cfg);
            assert_eq!(f.num_clauses(), 100);
            for clause in f.clauses() {
                let lo = if cfg.allow_units { 1 } else { 2 };
                assert!(clause.len() >= lo && clause.len() <= 4);
                let mut vars: Vec<u32> = clause.iter().map(|l| l.var()).collect();
                vars.sort_unstable();
                vars.dedup();
                assert_eq!(vars.len(), clause.len(), "repeated variable in clause");
            }
        }
    }

    #[test]
    fn trial_plans_are_reproducible_and_start_with_the_empty_assignment() {
        let cfg = GenConfig {
            seed: 42,
            num_vars: 6,
            num_clauses: 10,
            max_width: 3,
            allow_units: true,
        };
        let a = trial_plan(&cfg, 5, 3);
        let b = trial_plan(&cfg, 5, 3);
        assert_eq!(a.len(), 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.seed, y.seed);
            assert_eq!(x.formula, y.formula);
            assert_eq!(x.assumption_sets, y.assumption_sets);
            assert!(x.assumption_sets[0].is_empty());
            assert_eq!(x.assumption_sets.len(), 4);
        }
    }

    #[test]
    fn sampled_assumptions_never_contain_complementary_pairs() {
        let mut stream = SplitMix64::new(99);
        for _ in 0..200 {
            let assumptions = sample_assumptions(&mut stream, 10);
            for (i, a) in assumptions.iter().enumerate() {
                assert!(!assumptions[..i].contains(&a.negated()));
            }
        }
    }

    #[test]
    fn differential_check_passes_on_the_worked_conflict_example() {
        // σ = (¬a)(a∨b)(¬b∨c)(¬b∨¬c): propagation conflicts, s is derived.
        let f = CnfFormula::from_dimacs(3, &[&[-1], &[1, 2], &[-2, 3], &[-2, -3]]);
        let (psi, map) = reify(&f, &ReifyOptions::default()).unwrap();
        let mut mismatches = Vec::new();
        run_simulation_checks(&f, &psi, &map, &[], 0, &mut mismatches);
        assert!(mismatches.is_empty());
        let fixpoint = propagate_queue(&psi, &[]);
        assert_eq!(
            fixpoint
                .fixpoint()
                .unwrap()
                .value(map.conflict_var().unwrap()),
            Some(true)
        );
    }

    #[test]
    fn differential_check_passes_on_a_probe_style_assumption() {
        // σ = (a∨b)(¬b∨c)(¬b∨¬c) under ¬a: conflict on the σ side, s on ψ's.
        let f = CnfFormula::from_dimacs(3, &[&[1, 2], &[-2, 3], &[-2, -3]]);
        let (psi, map) = reify(&f, &ReifyOptions::default()).unwrap();
        let assumptions = [Literal::negative(1)];
        assert!(propagate_queue(&f, &assumptions).is_conflict());
        let fixpoint = propagate_queue(&psi, &assumptions);
        assert_eq!(
            fixpoint
                .fixpoint()
                .unwrap()
                .value(map.conflict_var().unwrap()),
            Some(true)
        );
        let mut mismatches = Vec::new();
        run_simulation_checks(&f, &psi, &map, &assumptions, 0, &mut mismatches);
        assert!(mismatches.is_empty());
    }

    #[test]
    fn small_differential_run_passes() {
        let cfg = GenConfig {
            seed: 7,
            num_vars: 6,
            num_clauses: 12,
            max_width: 3,
            allow_units: true,
        };
        let report = differential_check(&cfg, 50, 3);
        assert!(report.passed, "mismatches: {:?}", report.mismatches);
        assert_eq!(report.trials, 50);
    }

    #[test]
    fn parallel_and_sequential_reports_are_identical() {
        let cfg = GenConfig {
            seed: 11,
            num_vars: 6,
            num_clauses: 10,
            max_width: 3,
            allow_units: true,
        };
        assert_eq!(
            differential_check(&cfg, 40, 2),
            differential_check_sequential(&cfg, 40, 2)
        );
    }

    #[test]
    fn exhaustive_check_passes_on_the_worked_examples() {
        let sigma1 = CnfFormula::from_dimacs(3, &[&[1, 2], &[-2, 3], &[-2, -3]]);
        let sigma2 = CnfFormula::from_dimacs(3, &[&[-1], &[1, 2], &[-2, 3], &[-2, -3]]);
        for f in [sigma1, sigma2] {
            let report = exhaustive_check(&f).unwrap();
            assert_eq!(report.trials, 27);
            assert!(report.passed, "mismatches: {:?}", report.mismatches);
        }
    }

    #[test]
    fn exhaustive_check_covers_the_empty_clause_and_complementary_units() {
        // Neither shape can come out of the generator, so exercise the
        // unconditional-conflict paths directly.
        let with_empty = CnfFormula::from_dimacs(2, &[&[], &[1, 2]]);
        let report = exhaustive_check(&with_empty).unwrap();
        assert_eq!(report.trials, 9);
        assert!(report.passed, "mismatches: {:?}", report.mismatches);

        let complementary_units = CnfFormula::from_dimacs(1, &[&[1], &[-1]]);
        let report = exhaustive_check(&complementary_units).unwrap();
        assert_eq!(report.trials, 3);
        assert!(report.passed, "mismatches: {:?}", report.mismatches);
    }

    #[test]
    fn exhaustive_check_passes_trivially_on_the_empty_formula() {
        let report = exhaustive_check(&CnfFormula::empty(0)).unwrap();
        assert_eq!(report.trials, 1);
        assert!(report.passed);
    }

    #[test]
    fn exhaustive_check_refuses_large_formulas() {
        let f = CnfFormula::empty(9);
        assert_eq!(
            exhaustive_check(&f).unwrap_err(),
            ExhaustiveLimitExceeded {
                num_vars: 9,
                limit: 8
            }
        );
    }

    #[test]
    fn flp_check_agrees_on_random_instances() {
        let cfg = GenConfig {
            seed: 3,
            num_vars: 5,
            num_clauses: 10,
            max_width: 3,
            allow_units: true,
        };
        let report = flp_check(&cfg, 25);
        assert!(report.passed, "mismatches: {:?}", report.mismatches);
    }
}
