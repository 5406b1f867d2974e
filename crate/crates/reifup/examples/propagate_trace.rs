//! Round-by-round unit propagation, including the conflict case.
//!
//! ```bash
//! cargo run --example propagate_trace
//! ```

use reifup::{propagate_queue, propagate_rounds, CnfFormula, Literal, PropagationOutcome};

fn show_round(label: &str, lits: &[Literal]) {
    let rendered: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
    println!("  {label}: {{{}}}", rendered.join(", "));
}

fn main() {
    // (¬a) ∧ (a ∨ b) ∧ (¬b ∨ c) ∧ (¬b ∨ ¬c) with a = 1, b = 2, c = 3.
    // Propagation fixes ¬a, then b, then forces c both ways.
    let sigma = CnfFormula::from_dimacs(3, &[&[-1], &[1, 2], &[-2, 3], &[-2, -3]]);
    println!("formula: (-1) (1 2) (-2 3) (-2 -3)");

    let trace = propagate_rounds(&sigma, &[]);
    for (i, round) in trace.rounds.iter().enumerate() {
        show_round(&format!("round {}", i + 1), round);
    }
    match &trace.conflict {
        Some(conflict) => {
            let var = conflict.var.map_or("-".to_string(), |v| v.to_string());
            let clause = conflict.clause.map_or("-".to_string(), |c| c.to_string());
            println!(
                "  conflict at round {} on variable {var} (clause {clause})",
                conflict.round
            );
        }
        None => println!("  fixpoint"),
    }

    // The same engine under an assumption: (a ∨ b)(¬b ∨ c)(¬b ∨ ¬c) has no
    // unit clause, but assuming b triggers the same c-contradiction.
    let no_units = CnfFormula::from_dimacs(3, &[&[1, 2], &[-2, 3], &[-2, -3]]);
    println!("\nformula: (1 2) (-2 3) (-2 -3), assuming 2");
    let trace = propagate_rounds(&no_units, &[Literal::positive(2)]);
    show_round("round 0 (assumptions)", &trace.assumptions);
    for (i, round) in trace.rounds.iter().enumerate() {
        show_round(&format!("round {}", i + 1), round);
    }
    println!("  conflicted: {}", trace.conflicted());

    // The queue-based fixpoint agrees with the synchronous rounds.
    match propagate_queue(&no_units, &[]) {
        PropagationOutcome::Fixpoint(assignment) => println!(
            "\nwithout assumptions the queue fixpoint assigns {} variables",
            assignment.assigned_count()
        ),
        PropagationOutcome::Conflict => unreachable!("no unit clauses to start from"),
    }
}
