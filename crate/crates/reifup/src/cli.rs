//! The `reifup` command-line interface.
//!
//! Subcommands: `reify`, `propagate`, `flp`, `gen`, `check`, `stats`. All
//! file I/O is DIMACS text; `-` reads from stdin. Input formulas are
//! normalized automatically. Exit codes: 0 success, 1 usage error, 2
//! unreadable or invalid input, 10 propagation reported a conflict, 20
//! equivalence or size mismatch.

use crate::cnf::{normalize, CnfFormula, Literal};
use crate::dimacs::{parse_dimacs, serialize_dimacs};
use crate::flp::{probe_literal, simulate_flp};
use crate::propagation::{
    decoupled_closure, propagate_queue, propagate_rounds, PropagationOutcome,
};
use crate::reify::{expected_counts_for, reify, Injection, ReifiedVarMap, ReifyOptions};
use crate::testgen::{
    differential_check, differential_check_sequential, exhaustive_check, gen_random_cnf,
    CheckReport, GenConfig,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONFLICT: i32 = 10;
pub const EXIT_MISMATCH: i32 = 20;

#[derive(Parser)]
#[command(
    name = "reifup",
    version,
    about = "Reified unit propagation over DIMACS CNF formulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the reified counterpart and write it as DIMACS with a map header.
    Reify(ReifyArgs),
    /// Run unit propagation: queue fixpoint, rounds, or decoupled closure.
    Propagate(PropagateArgs),
    /// Apply the failed-literal rule, natively and/or by reified simulation.
    Flp(FlpArgs),
    /// Generate a seeded random CNF instance.
    Gen(GenArgs),
    /// Differentially check reified propagation against the direct oracles.
    Check(CheckArgs),
    /// Print actual vs. expected sizes of the reified counterpart.
    Stats(StatsArgs),
}

#[derive(Args)]
struct ReifyArgs {
    /// Input DIMACS file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Layer count (default: variable count + 1).
    #[arg(long)]
    layers: Option<u32>,
    /// Variables injected into layer 1: 'all', 'none', or a comma-separated list.
    #[arg(long, default_value = "all")]
    inject: String,
    /// Omit the conflict-output variable and its clauses.
    #[arg(long)]
    no_conflict_var: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Queue,
    Rounds,
    Decoupled,
}

#[derive(Args)]
struct PropagateArgs {
    /// Input DIMACS file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t = Mode::Queue)]
    mode: Mode,
    /// Print one line per round before the verdict (rounds/decoupled modes).
    #[arg(long)]
    trace: bool,
    /// Assumed literals as a space-separated signed list, e.g. "1 -3".
    #[arg(long, allow_hyphen_values = true)]
    assume: Option<String>,
    /// Round cap for decoupled mode (default: variable count + 1).
    #[arg(long)]
    max_rounds: Option<u32>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Via {
    Native,
    Reified,
    Both,
}

#[derive(Args)]
struct FlpArgs {
    /// Input DIMACS file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Probe one literal (signed DIMACS code).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "all")]
    probe: Option<i32>,
    /// Probe all 2n literals.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Via::Both)]
    via: Via,
}

#[derive(Args)]
struct GenArgs {
    /// Generator seed (decimal or 0x-hex).
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    seed: u64,
    #[arg(long)]
    vars: u32,
    #[arg(long)]
    clauses: usize,
    /// Maximum clause width.
    #[arg(long)]
    width: u32,
    /// Permit unit clauses (width 1).
    #[arg(long)]
    allow_units: bool,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Master seed (decimal or 0x-hex).
    #[arg(long, value_parser = parse_seed, default_value = "42")]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    max_vars: u32,
    #[arg(long, default_value_t = 30)]
    max_clauses: usize,
    #[arg(long, default_value_t = 4)]
    max_width: u32,
    #[arg(long, default_value_t = 5)]
    assumptions_per_trial: u32,
    /// Check every partial assignment of this file instead of random trials.
    #[arg(long)]
    exhaustive: Option<String>,
    /// Run trials on a single thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// Input DIMACS file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Layer count (default: variable count + 1).
    #[arg(long)]
    layers: Option<u32>,
    /// Variables injected into layer 1: 'all', 'none', or a comma-separated list.
    #[arg(long, default_value = "all")]
    inject: String,
    /// Omit the conflict-output variable and its clauses.
    #[arg(long)]
    no_conflict_var: bool,
}

/// A subcommand failure: message for stderr plus the exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

/// Dispatches `argv`. Output on stdout is a function of the arguments and
/// input bytes alone; diagnostics go to stderr.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = write!(stdout, "{err}");
                return EXIT_OK;
            }
            _ => {
                let _ = write!(stderr, "{err}");
                return EXIT_USAGE;
            }
        },
    };

    let result = match cli.command {
        Command::Reify(args) => cmd_reify(args, stdin, stdout, stderr),
        Command::Propagate(args) => cmd_propagate(args, stdin, stdout, stderr),
        Command::Flp(args) => cmd_flp(args, stdin, stdout, stderr),
        Command::Gen(args) => cmd_gen(args, stdout),
        Command::Check(args) => cmd_check(args, stdin, stdout, stderr),
        Command::Stats(args) => cmd_stats(args, stdin, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

fn parse_seed(text: &str) -> Result<u64, String> {
    let text = text.trim();
    let parsed = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => text.parse(),
    };
    parsed.map_err(|_| format!("'{text}' is not a 64-bit seed (decimal or 0x-hex)"))
}

fn parse_inject(text: &str) -> Result<Injection, Failure> {
    match text {
        "all" => Ok(Injection::All),
        "none" => Ok(Injection::None),
        list => {
            let mut vars = std::collections::BTreeSet::new();
            for part in list.split(',') {
                let var: u32 = part
                    .trim()
                    .parse()
                    .map_err(|_| Failure::usage(format!("invalid --inject variable '{part}'")))?;
                vars.insert(var);
            }
            Ok(Injection::Vars(vars))
        }
    }
}

fn parse_assumptions(text: &str, num_vars: u32) -> Result<Vec<Literal>, Failure> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let code: i32 = token
            .parse()
            .map_err(|_| Failure::usage(format!("invalid literal '{token}' in --assume")))?;
        if code == 0 {
            return Err(Failure::usage("literal 0 is not assumable"));
        }
        let lit = Literal::from_dimacs(code);
        if lit.var() > num_vars {
            return Err(Failure::usage(format!(
                "assumed variable {} exceeds the formula's {num_vars} variables",
                lit.var()
            )));
        }
        out.push(lit);
    }
    Ok(out)
}

fn parse_probe(code: i32, num_vars: u32) -> Result<Literal, Failure> {
    if code == 0 {
        return Err(Failure::usage("literal 0 is not probeable"));
    }
    let lit = Literal::from_dimacs(code);
    if lit.var() > num_vars {
        return Err(Failure::usage(format!(
            "probed variable {} exceeds the formula's {num_vars} variables",
            lit.var()
        )));
    }
    Ok(lit)
}

/// Reads, parses and normalizes a DIMACS input ('-' = stdin); warnings go
/// to stderr.
fn read_formula(
    input: &str,
    stdin: &mut dyn Read,
    stderr: &mut dyn Write,
) -> Result<CnfFormula, Failure> {
    let text = if input == "-" {
        let mut buffer = String::new();
        stdin
            .read_to_string(&mut buffer)
            .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
        buffer
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| Failure::input(format!("cannot read '{input}': {e}")))?
    };
    let parsed = parse_dimacs(&text).map_err(|e| Failure::input(e.to_string()))?;
    for warning in &parsed.warnings {
        let _ = writeln!(stderr, "warning: {warning}");
    }
    Ok(normalize(&parsed.formula))
}

fn write_output(
    text: &str,
    output: Option<&PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write '{}': {e}", path.display()))),
        None => {
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn reify_options(
    layers: Option<u32>,
    inject: &str,
    no_conflict_var: bool,
) -> Result<ReifyOptions, Failure> {
    Ok(ReifyOptions {
        layers,
        inject: parse_inject(inject)?,
        emit_conflict_output: !no_conflict_var,
    })
}

/// Map header lines (without the `c ` prefix), ascending by ψ index:
/// `rv <index> <origvar> <layer> <p|n>` per layered variable, then
/// `rs <index>` for the conflict-output variable.
fn map_comment_lines(map: &ReifiedVarMap) -> Vec<String> {
    let mut lines = Vec::new();
    for layer in 1..=map.layers() {
        for var in 1..=map.num_original() {
            for (positive, tag) in [(true, 'p'), (false, 'n')] {
                let index = map.reified_var(var, layer, positive);
                lines.push(format!("rv {index} {var} {layer} {tag}"));
            }
        }
    }
    if let Some(s) = map.conflict_var() {
        lines.push(format!("rs {s}"));
    }
    lines
}

fn cmd_reify(
    args: ReifyArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let formula = read_formula(&args.input, stdin, stderr)?;
    let opts = reify_options(args.layers, &args.inject, args.no_conflict_var)?;
    let (psi, map) = reify(&formula, &opts).map_err(|e| Failure::usage(e.to_string()))?;
    let text = serialize_dimacs(&psi, map_comment_lines(&map));
    write_output(&text, args.output.as_ref(), stdout)?;
    Ok(EXIT_OK)
}

fn literal_list(lits: &[Literal]) -> String {
    lits.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_propagate(
    args: PropagateArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let formula = read_formula(&args.input, stdin, stderr)?;
    let assumptions = match &args.assume {
        Some(text) => parse_assumptions(text, formula.num_vars())?,
        None => Vec::new(),
    };
    if args.trace && args.mode == Mode::Queue {
        return Err(Failure::usage(
            "--trace requires --mode rounds or --mode decoupled",
        ));
    }

    match args.mode {
        Mode::Queue => match propagate_queue(&formula, &assumptions) {
            PropagationOutcome::Conflict => {
                let _ = writeln!(stdout, "conflict");
                Ok(EXIT_CONFLICT)
            }
            PropagationOutcome::Fixpoint(assignment) => {
                let lits = assignment.assigned_literals();
                if lits.is_empty() {
                    let _ = writeln!(stdout, "fixpoint:");
                } else {
                    let _ = writeln!(stdout, "fixpoint: {}", literal_list(&lits));
                }
                Ok(EXIT_OK)
            }
        },
        Mode::Rounds => {
            let trace = propagate_rounds(&formula, &assumptions);
            if args.trace {
                if !trace.assumptions.is_empty() {
                    let _ = writeln!(stdout, "round 0: {}", literal_list(&trace.assumptions));
                }
                for (i, round) in trace.rounds.iter().enumerate() {
                    let _ = writeln!(stdout, "round {}: {}", i + 1, literal_list(round));
                }
            }
            match &trace.conflict {
                Some(conflict) => {
                    match conflict.var {
                        Some(var) => {
                            let _ =
                                writeln!(stdout, "conflict: var {var} round {}", conflict.round);
                        }
                        None => {
                            let _ =
                                writeln!(stdout, "conflict: empty clause round {}", conflict.round);
                        }
                    }
                    Ok(EXIT_CONFLICT)
                }
                None => {
                    let _ = writeln!(stdout, "fixpoint");
                    Ok(EXIT_OK)
                }
            }
        }
        Mode::Decoupled => {
            let max_rounds = match args.max_rounds {
                Some(0) => return Err(Failure::usage("--max-rounds must be at least 1")),
                Some(r) => r,
                None => formula.num_vars() + 1,
            };
            let closure = decoupled_closure(&formula, &assumptions, max_rounds);
            if args.trace {
                for (i, round) in closure.rounds.iter().enumerate() {
                    let _ = writeln!(stdout, "round {}: {}", i + 1, literal_list(round));
                }
            }
            match closure.first_conflict_round {
                Some(round) => {
                    let var = closure
                        .conflict_vars
                        .iter()
                        .copied()
                        .find(|&v| {
                            let neg = closure.marked_round(v, false).unwrap_or(u32::MAX);
                            let pos = closure.marked_round(v, true).unwrap_or(u32::MAX);
                            neg.max(pos) == round
                        })
                        .expect("some conflict variable completes at the first conflict round");
                    let _ = writeln!(stdout, "conflict: var {var} round {round}");
                    Ok(EXIT_CONFLICT)
                }
                None => {
                    let _ = writeln!(stdout, "fixpoint");
                    Ok(EXIT_OK)
                }
            }
        }
    }
}

fn cmd_flp(
    args: FlpArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let formula = read_formula(&args.input, stdin, stderr)?;
    let probes: Vec<Literal> = match (args.probe, args.all) {
        (Some(code), false) => vec![parse_probe(code, formula.num_vars())?],
        (None, true) => {
            let mut all = Vec::new();
            for var in 1..=formula.num_vars() {
                all.push(Literal::negative(var));
                all.push(Literal::positive(var));
            }
            all
        }
        (None, false) => return Err(Failure::usage("pass --probe <lit> or --all")),
        (Some(_), true) => unreachable!("clap rejects --probe with --all"),
    };

    let mut disagreement = false;
    for w in probes {
        let native = (args.via != Via::Reified).then(|| probe_literal(&formula, w).failed);
        let reified = (args.via != Via::Native).then(|| simulate_flp(&formula, w));
        let mut line = w.to_string();
        if let Some(n) = native {
            line.push_str(&format!(" native={}", n as u8));
        }
        if let Some(r) = reified {
            line.push_str(&format!(" reified={}", r as u8));
        }
        let _ = writeln!(stdout, "{line}");
        if let (Some(n), Some(r)) = (native, reified) {
            if n != r {
                disagreement = true;
            }
        }
    }
    Ok(if disagreement { EXIT_MISMATCH } else { EXIT_OK })
}

fn cmd_gen(args: GenArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let lo = if args.allow_units { 1 } else { 2 };
    if args.vars < 1 {
        return Err(Failure::usage("--vars must be at least 1"));
    }
    if args.width < lo || args.width > args.vars {
        return Err(Failure::usage(format!(
            "--width must lie in [{lo}, {}]",
            args.vars
        )));
    }
    let cfg = GenConfig {
        seed: args.seed,
        num_vars: args.vars,
        num_clauses: args.clauses,
        max_width: args.width,
        allow_units: args.allow_units,
    };
    let formula = gen_random_cnf(&cfg);
    let comment = format!(
        "gen seed={} vars={} clauses={} width={} units={}",
        args.seed, args.vars, args.clauses, args.width, args.allow_units
    );
    let text = serialize_dimacs(&formula, [comment]);
    write_output(&text, args.output.as_ref(), stdout)?;
    Ok(EXIT_OK)
}

fn print_report(report: &CheckReport, stdout: &mut dyn Write) -> i32 {
    let _ = writeln!(stdout, "trials: {}", report.trials);
    for mismatch in &report.mismatches {
        let _ = writeln!(
            stdout,
            "mismatch: kind={} seed={} assumptions=[{}]",
            mismatch.kind,
            mismatch.seed,
            literal_list(&mismatch.assumptions)
        );
    }
    if report.passed {
        let _ = writeln!(stdout, "result: pass");
        EXIT_OK
    } else {
        let _ = writeln!(
            stdout,
            "result: fail ({} mismatches)",
            report.mismatches.len()
        );
        EXIT_MISMATCH
    }
}

fn cmd_check(
    args: CheckArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    if let Some(input) = &args.exhaustive {
        let formula = read_formula(input, stdin, stderr)?;
        let report = exhaustive_check(&formula).map_err(|e| Failure::input(e.to_string()))?;
        return Ok(print_report(&report, stdout));
    }

    if args.trials < 1 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    if args.max_vars < 1 || args.max_width < 1 {
        return Err(Failure::usage(
            "--max-vars and --max-width must be at least 1",
        ));
    }
    let cfg = GenConfig {
        seed: args.seed,
        num_vars: args.max_vars,
        num_clauses: args.max_clauses,
        max_width: args.max_width,
        allow_units: true,
    };
    let report = if args.sequential {
        differential_check_sequential(&cfg, args.trials, args.assumptions_per_trial)
    } else {
        differential_check(&cfg, args.trials, args.assumptions_per_trial)
    };
    Ok(print_report(&report, stdout))
}

fn cmd_stats(
    args: StatsArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let formula = read_formula(&args.input, stdin, stderr)?;
    let opts = reify_options(args.layers, &args.inject, args.no_conflict_var)?;
    let expected =
        expected_counts_for(&formula, &opts).map_err(|e| Failure::usage(e.to_string()))?;
    let (psi, map) = reify(&formula, &opts).map_err(|e| Failure::usage(e.to_string()))?;

    let _ = writeln!(stdout, "layers: {}", map.layers());
    let _ = writeln!(
        stdout,
        "variables: actual={} expected={}",
        psi.num_vars(),
        expected.variables
    );
    let _ = writeln!(
        stdout,
        "clauses: actual={} expected={}",
        psi.num_clauses(),
        expected.clauses()
    );
    let _ = writeln!(stdout, "seed units: {}", expected.seed_units);
    let _ = writeln!(stdout, "propagation clauses: {}", expected.propagation);
    let _ = writeln!(stdout, "deduction clauses: {}", expected.deduction);
    let _ = writeln!(
        stdout,
        "conflict output clauses: {}",
        expected.conflict_output
    );
    let _ = writeln!(stdout, "injection clauses: {}", expected.injection);
    let _ = writeln!(
        stdout,
        "empty clause units: {}",
        expected.empty_clause_units
    );

    let agree =
        psi.num_vars() as usize == expected.variables && psi.num_clauses() == expected.clauses();
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}
