//! Exhaustive simulation check: every one of the 3^n partial assignments.
//!
//! ```bash
//! cargo run --example exhaustive_check
//! ```

use reifup::{exhaustive_check, propagate_queue, CnfFormula};

fn main() {
    let sigma = CnfFormula::from_dimacs(3, &[&[-1], &[1, 2], &[-2, 3], &[-2, -3]]);
    println!("formula: (-1) (1 2) (-2 3) (-2 -3)");
    println!(
        "sweeping all 3^{} = {} partial assignments...\n",
        sigma.num_vars(),
        3u32.pow(sigma.num_vars())
    );

    let report = exhaustive_check(&sigma).expect("3 variables is within the limit");
    println!("assignments checked: {}", report.trials);
    println!("mismatches:          {}", report.mismatches.len());
    println!(
        "result:              {}\n",
        if report.passed { "pass" } else { "FAIL" }
    );

    // For the curious: how many of those assignments make propagation
    // conflict on the original formula? (The unit clause (¬a) makes the
    // empty assignment one of them.)
    let n = sigma.num_vars();
    let mut conflicting = 0;
    for index in 0..3u64.pow(n) {
        let mut digits = index;
        let mut assumptions = Vec::new();
        for var in 1..=n {
            match digits % 3 {
                0 => {}
                1 => assumptions.push(reifup::Literal::positive(var)),
                _ => assumptions.push(reifup::Literal::negative(var)),
            }
            digits /= 3;
        }
        if propagate_queue(&sigma, &assumptions).is_conflict() {
            conflicting += 1;
        }
    }
    println!(
        "{conflicting} of {} assignments conflict under propagation,",
        report.trials
    );
    println!("and the reified counterpart fixes s on exactly those.");
}
