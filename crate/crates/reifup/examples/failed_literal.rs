//! The failed-literal rule: native probing vs. pure-propagation simulation.
//!
//! ```bash
//! cargo run --example failed_literal
//! ```

use reifup::{build_flp_formula, probe_all, probe_literal, CnfFormula, Literal};

fn main() {
    // (a ∨ b) ∧ (¬b ∨ c) ∧ (¬b ∨ ¬c): no unit clause, so propagation alone
    // fixes nothing — but probing ¬a or b runs into the empty clause.
    let sigma = CnfFormula::from_dimacs(3, &[&[1, 2], &[-2, 3], &[-2, -3]]);
    println!("formula: (1 2) (-2 3) (-2 -3)\n");

    let report = probe_all(&sigma);
    println!("literal  native  reified");
    for record in &report.records {
        println!(
            "{:>7}  {:>6}  {:>7}",
            record.probed.to_string(),
            record.native_failed as u8,
            record.reified_derives_not_w as u8
        );
    }
    println!("routes agree: {}", report.agree);

    let forced: Vec<String> = report
        .forced_literals()
        .iter()
        .map(|l| l.to_string())
        .collect();
    println!("forced literals: {}\n", forced.join(", "));

    // A closer look at one probe. Natively: propagate σ ∧ ¬a and watch for
    // the conflict. Reified: propagate (¬l ∨ ¬w) ∧ reify(σ ∧ ¬a) — the
    // conflict output l fires, and the binary clause turns it into a.
    let w = Literal::negative(1);
    let native = probe_literal(&sigma, w);
    println!("probe {w}: failed = {}", native.failed);

    let (probe_formula, map) = build_flp_formula(&sigma, w);
    println!(
        "probe formula: {} vars, {} clauses, conflict output l = {}",
        probe_formula.num_vars(),
        probe_formula.num_clauses(),
        map.conflict_var().unwrap()
    );
    let fixpoint = reifup::propagate_queue(&probe_formula, &[])
        .fixpoint()
        .cloned()
        .expect("probe formulas never conflict");
    println!(
        "propagation fixes l = {:?} and a = {:?}",
        fixpoint.value(map.conflict_var().unwrap()),
        fixpoint.value(1)
    );
}
