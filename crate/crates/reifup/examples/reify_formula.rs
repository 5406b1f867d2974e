//! Build the reified counterpart ψ of a formula and inspect it.
//!
//! ```bash
//! cargo run --example reify_formula
//! ```

use reifup::{
    expected_counts_for, propagate_queue, reify, serialize_dimacs, CnfFormula, ReifyOptions,
};

fn main() {
    let sigma = CnfFormula::from_dimacs(3, &[&[-1], &[1, 2], &[-2, 3], &[-2, -3]]);
    let opts = ReifyOptions::default(); // layers = n + 1, inject all, emit s

    let (psi, map) = reify(&sigma, &opts).expect("default options always reify");
    let counts = expected_counts_for(&sigma, &opts).unwrap();

    println!(
        "σ: {} vars, {} clauses  →  ψ: {} vars, {} clauses ({} layers)",
        sigma.num_vars(),
        sigma.num_clauses(),
        psi.num_vars(),
        psi.num_clauses(),
        map.layers()
    );
    println!(
        "ψ breakdown: {} seed + {} propagation + {} deduction + {} conflict-output + {} injection",
        counts.seed_units,
        counts.propagation,
        counts.deduction,
        counts.conflict_output,
        counts.injection
    );
    println!(
        "layered variable [v=2, layer=3, +] lives at index {}",
        map.reified_var(2, 3, true)
    );
    println!("conflict output s = {}\n", map.conflict_var().unwrap());

    // Propagation on ψ mirrors the conflict of σ by fixing s true.
    let fixpoint = propagate_queue(&psi, &[])
        .fixpoint()
        .cloned()
        .expect("ψ never conflicts");
    println!(
        "propagation on ψ fixes {} variables; s = {:?}",
        fixpoint.assigned_count(),
        fixpoint.value(map.conflict_var().unwrap())
    );

    println!(
        "\nψ in DIMACS:\n{}",
        serialize_dimacs(&psi, ["reified counterpart"])
    );
}
