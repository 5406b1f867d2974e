//! Seeded random CNF generation: reproducible instances for testing.
//!
//! ```bash
//! cargo run --example generate_cnf
//! ```

use reifup::{gen_random_cnf, serialize_dimacs, GenConfig};

fn main() {
    let cfg = GenConfig {
        seed: 1,
        num_vars: 5,
        num_clauses: 8,
        max_width: 3,
        allow_units: true,
    };
    let formula = gen_random_cnf(&cfg);
    println!(
        "seed {} → {} vars, {} clauses:",
        cfg.seed,
        formula.num_vars(),
        formula.num_clauses()
    );
    print!("{}", serialize_dimacs(&formula, std::iter::empty::<&str>()));

    // Identical configuration, identical bytes — the generator draws from
    // a SplitMix64 stream in a fixed documented order.
    let again = gen_random_cnf(&cfg);
    println!("\nsame seed reproduces the instance: {}", formula == again);

    let other = gen_random_cnf(&GenConfig { seed: 2, ..cfg });
    println!("a different seed varies it:         {}", formula != other);
}
