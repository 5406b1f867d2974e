//! Reified unit propagation over CNF formulas.
//!
//! For any CNF formula σ, [`reify()`](reify::reify) builds a satisfiable companion ψ whose
//! unit propagation mirrors unit propagation on σ under any partial
//! assignment of σ's variables — layer by layer, with both polarities of a
//! variable tracked independently, and with derivation of the empty clause
//! surfacing as a dedicated output variable being forced true. One payoff
//! is that the failed-literal rule reduces to plain propagation: probing a
//! literal `w` becomes propagating `(¬l ∨ ¬w) ∧ reify(σ ∧ w)` and watching
//! for `¬w` ([`flp`]).
//!
//! Everything is cross-checked differentially: the reified route runs
//! against independent direct oracles (queue fixpoint, synchronous rounds,
//! decoupled closure) over seeded random instances and exhaustive
//! small-instance sweeps ([`testgen`]).
//!
//! # Examples
//!
//! Each capability has a runnable example:
//!
//! ```bash
//! cargo run --example propagate_trace    # round-by-round propagation
//! cargo run --example reify_formula      # build ψ and print its DIMACS
//! cargo run --example failed_literal     # native vs. reified probing
//! cargo run --example generate_cnf       # seeded random instances
//! cargo run --example differential_check # random differential harness
//! cargo run --example exhaustive_check   # all 3^n partial assignments
//! ```
//!
//! The same functionality is scriptable through the `reifup` binary; see
//! `reifup --help`.

pub mod cli;
pub mod cnf;
pub mod dimacs;
pub mod flp;
pub mod propagation;
pub mod reify;
pub mod testgen;

pub use cnf::{normalize, Clause, CnfFormula, Literal};
pub use dimacs::{parse_dimacs, serialize_dimacs};
pub use flp::{build_flp_formula, probe_all, probe_literal, simulate_flp, FlpReport, ProbeResult};
pub use propagation::{
    decoupled_closure, propagate_queue, propagate_rounds, Assignment, DecoupledClosure,
    PropagationOutcome, PropagationTrace,
};
pub use reify::{
    expected_counts, expected_counts_for, reify, Injection, ReifiedVarMap, ReifyOptions,
};
pub use testgen::{
    differential_check, differential_check_sequential, exhaustive_check, flp_check, gen_random_cnf,
    CheckReport, GenConfig, SplitMix64,
};
