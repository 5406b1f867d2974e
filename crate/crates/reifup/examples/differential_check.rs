//! The random differential harness: reified propagation vs. the direct
//! oracles over seeded instances.
//!
//! ```bash
//! cargo run --example differential_check
//! ```

use reifup::{differential_check, GenConfig};
use std::time::Instant;

fn main() {
    let cfg = GenConfig {
        seed: 42,
        num_vars: 10, // per-trial upper bounds
        num_clauses: 30,
        max_width: 4,
        allow_units: true,
    };
    let trials = 500;
    let assumptions_per_trial = 5;

    println!(
        "checking {trials} random instances (n ≤ {}, m ≤ {}, k ≤ {}), each under the empty \
         assignment plus {assumptions_per_trial} random partial assignments...",
        cfg.num_vars, cfg.num_clauses, cfg.max_width
    );
    println!("per assignment: conflict-output equivalence, per-layer marker correspondence,");
    println!("and final-assignment transparency when propagation does not conflict.\n");

    let started = Instant::now();
    let report = differential_check(&cfg, trials, assumptions_per_trial);
    let elapsed = started.elapsed();

    println!("trials:     {}", report.trials);
    println!("mismatches: {}", report.mismatches.len());
    for mismatch in &report.mismatches {
        println!("  {:?}", mismatch);
    }
    println!("elapsed:    {elapsed:?}");
    println!(
        "result:     {}",
        if report.passed { "pass" } else { "FAIL" }
    );
    std::process::exit(if report.passed { 0 } else { 20 });
}
