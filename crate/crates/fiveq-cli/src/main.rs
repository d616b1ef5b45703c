//! `fiveq` — command-line surface of the five-qubit invariant engine.
//!
//! Subcommands:
//!
//! * `hilbert dim|series`   — dimensions of the invariant ring, by any of
//!   three independent methods (character sums, the bundled series table,
//!   iterated residues) or all at once with cross-checking.
//! * `invariant eval`       — exact value of one of the six generators
//!   `Dx Dy Dz Dt Du F` on a state file.
//! * `fingerprint`          — the nine-row zero/nonzero covariant pattern of
//!   a state.
//! * `check invariance`     — seeded random SLOCC trials asserting the six
//!   generators are exactly unchanged.
//! * `check independence`   — exact Jacobian ranks at seeded random points.
//! * `validate table1`      — cross-examination of the bundled series table
//!   against the character oracle.
//!
//! Exit codes: 0 all assertions pass, 1 an assertion failed, 2 invalid
//! input (bad flags, unreadable/ill-formed state file).  Identical flags
//! (and seed) produce byte-identical output; every number printed is exact.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fiveq::hilbert::{character_series, validate_table, HilbertSeriesData, TableReading};
use fiveq::io::load_state;
use fiveq::jacobian::{eval_invariant, jacobian_rank, NamedInvariant};
use fiveq::residue::residue_series;
use fiveq::state::{
    apply_slocc, fingerprint, random_local_operation, random_rational_state, seeded_rng,
    FINGERPRINT_ROWS,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fiveq",
    version,
    about = "Exact SLOCC invariants of five-qubit states",
    propagate_version = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Symmetric-group character sums (any qubit count).
    Character,
    /// Taylor expansion of the bundled rational series (five qubits only).
    Table,
    /// Iterated contour residues of the Molien-Weyl integral.
    Residue,
    /// Every method available for the qubit count, cross-checked.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of the graded invariant ring.
    Hilbert {
        #[command(subcommand)]
        cmd: HilbertCmd,
    },
    /// Evaluate a named invariant exactly on a state.
    Invariant {
        #[command(subcommand)]
        cmd: InvariantCmd,
    },
    /// Nine-row covariant fingerprint of a state (Dx..Du, F, Bx, C31111, E11111).
    Fingerprint {
        /// Path to a JSON state file.
        #[arg(long)]
        state: PathBuf,
    },
    /// Seeded randomized exactness checks.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Validate bundled data against independent recomputation.
    Validate {
        #[command(subcommand)]
        cmd: ValidateCmd,
    },
}

#[derive(Args)]
struct HilbertCommon {
    /// Number of qubits.
    #[arg(long, default_value_t = 5)]
    qubits: u32,
    /// Computation method.
    #[arg(long, value_enum, default_value_t = Method::Character)]
    method: Method,
    /// Permit the residue method beyond four qubits (minutes to hours).
    #[arg(long)]
    allow_long: bool,
}

#[derive(Subcommand)]
enum HilbertCmd {
    /// Dimension of the degree-N invariants.
    Dim {
        /// Amplitude degree.
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        common: HilbertCommon,
    },
    /// Series coefficients through a maximum degree, comma-separated.
    Series {
        /// Largest degree to print.
        #[arg(long)]
        max_degree: u32,
        #[command(flatten)]
        common: HilbertCommon,
    },
}

#[derive(Subcommand)]
enum InvariantCmd {
    /// Print the exact value of one invariant on a state.
    Eval {
        /// Invariant name: Dx, Dy, Dz, Dt, Du or F.
        #[arg(long)]
        name: String,
        /// Path to a JSON state file.
        #[arg(long)]
        state: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Assert the six invariants are unchanged under random SLOCC action.
    Invariance {
        /// RNG seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of (state, operation) trials.
        #[arg(long, default_value_t = 25)]
        trials: u32,
    },
    /// Exact Jacobian ranks of the invariants at random rational points.
    Independence {
        /// RNG seed.
        #[arg(long, default_value_t = 11)]
        seed: u64,
        /// Number of sample points.
        #[arg(long, default_value_t = 5)]
        trials: u32,
    },
}

#[derive(Subcommand)]
enum ValidateCmd {
    /// Cross-examine the bundled degree-104 series table.
    Table1 {
        /// Largest even degree for the character cross-check.
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(true)` = all assertions passed (exit 0), `Ok(false)` = an assertion
/// failed (exit 1), `Err` = input error (exit 2).
fn run(cli: &Cli) -> Result<bool, fiveq::error::Error> {
    match &cli.command {
        Command::Hilbert { cmd } => match cmd {
            HilbertCmd::Dim { degree, common } => hilbert_dim(cli.format, *degree, common),
            HilbertCmd::Series { max_degree, common } => {
                hilbert_series(cli.format, *max_degree, common)
            }
        },
        Command::Invariant { cmd } => match cmd {
            InvariantCmd::Eval { name, state } => invariant_eval(cli.format, name, state),
        },
        Command::Fingerprint { state } => fingerprint_cmd(cli.format, state),
        Command::Check { cmd } => match cmd {
            CheckCmd::Invariance { seed, trials } => check_invariance(cli.format, *seed, *trials),
            CheckCmd::Independence { seed, trials } => {
                check_independence(cli.format, *seed, *trials)
            }
        },
        Command::Validate { cmd } => match cmd {
            ValidateCmd::Table1 { max_degree } => validate_table1(cli.format, *max_degree),
        },
    }
}

fn input_error(msg: impl Into<String>) -> fiveq::error::Error {
    fiveq::error::Error::OutOfRange(msg.into())
}

/// Which of the three series methods apply to `qubits`, given the flags.
fn methods_for(common: &HilbertCommon) -> Result<Vec<Method>, fiveq::error::Error> {
    if !(1..=5).contains(&common.qubits) {
        return Err(input_error(format!("--qubits must be 1..=5, got {}", common.qubits)));
    }
    let table_ok = common.qubits == 5;
    let residue_ok = common.qubits <= 4 || common.allow_long;
    match common.method {
        Method::Character => Ok(vec![Method::Character]),
        Method::Table => {
            if !table_ok {
                Err(input_error("--method table is defined only for --qubits 5"))
            } else {
                Ok(vec![Method::Table])
            }
        }
        Method::Residue => {
            if !residue_ok {
                Err(input_error(
                    "--method residue for 5 qubits is a long run; pass --allow-long to confirm",
                ))
            } else {
                Ok(vec![Method::Residue])
            }
        }
        Method::All => {
            let mut out = vec![Method::Character];
            if table_ok {
                out.push(Method::Table);
            }
            if residue_ok {
                out.push(Method::Residue);
            }
            Ok(out)
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Character => "character",
        Method::Table => "table",
        Method::Residue => "residue",
        Method::All => "all",
    }
}

/// Series coefficients `0..=n` for one concrete method.
fn series_by(
    method: Method,
    qubits: u32,
    n: u32,
) -> Result<Vec<BigInt>, fiveq::error::Error> {
    match method {
        Method::Character => character_series(qubits, n),
        Method::Table => Ok(HilbertSeriesData::corrected().series_expand(n)),
        Method::Residue => {
            let series = residue_series(qubits as usize, n)?;
            series
                .into_iter()
                .map(|c| {
                    if c.is_integer() {
                        Ok(c.to_integer())
                    } else {
                        Err(input_error(format!("residue series coefficient {} is not an integer", c)))
                    }
                })
                .collect()
        }
        Method::All => unreachable!("expanded by methods_for"),
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn hilbert_dim(
    format: Format,
    degree: u32,
    common: &HilbertCommon,
) -> Result<bool, fiveq::error::Error> {
    let methods = methods_for(common)?;
    let mut values: Vec<(Method, BigInt)> = Vec::new();
    for m in &methods {
        let series = series_by(*m, common.qubits, degree)?;
        values.push((*m, series[degree as usize].clone()));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    match format {
        Format::Text => {
            if values.len() == 1 {
                println!("{}", values[0].1);
            } else {
                let parts: Vec<String> = values
                    .iter()
                    .map(|(m, v)| format!("{}={}", method_name(*m), v))
                    .collect();
                println!(
                    "degree {}: {} agree={}",
                    degree,
                    parts.join(" "),
                    if agree { "yes" } else { "NO" }
                );
            }
        }
        Format::Json => {
            let mut by_method = Map::new();
            for (m, v) in &values {
                by_method.insert(method_name(*m).into(), Value::String(v.to_string()));
            }
            print_json(&json!({
                "command": "hilbert.dim",
                "qubits": common.qubits,
                "degree": degree,
                "dimensions": Value::Object(by_method),
                "agree": agree,
            }));
        }
    }
    Ok(agree)
}

fn hilbert_series(
    format: Format,
    max_degree: u32,
    common: &HilbertCommon,
) -> Result<bool, fiveq::error::Error> {
    let methods = methods_for(common)?;
    let mut lists: Vec<(Method, Vec<BigInt>)> = Vec::new();
    for m in &methods {
        lists.push((*m, series_by(*m, common.qubits, max_degree)?));
    }
    let agree = lists.windows(2).all(|w| w[0].1 == w[1].1);
    let joined = |v: &[BigInt]| -> String {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    };
    match format {
        Format::Text => {
            if lists.len() == 1 {
                println!("{}", joined(&lists[0].1));
            } else {
                for (m, v) in &lists {
                    println!("{}: {}", method_name(*m), joined(v));
                }
                println!("agree={}", if agree { "yes" } else { "NO" });
            }
        }
        Format::Json => {
            let mut by_method = Map::new();
            for (m, v) in &lists {
                by_method.insert(
                    method_name(*m).into(),
                    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect()),
                );
            }
            print_json(&json!({
                "command": "hilbert.series",
                "qubits": common.qubits,
                "max_degree": max_degree,
                "coefficients": Value::Object(by_method),
                "agree": agree,
            }));
        }
    }
    Ok(agree)
}

fn invariant_eval(
    format: Format,
    name: &str,
    state: &PathBuf,
) -> Result<bool, fiveq::error::Error> {
    let inv = NamedInvariant::from_name(name).ok_or_else(|| {
        input_error(format!("unknown invariant {:?}; expected one of Dx Dy Dz Dt Du F", name))
    })?;
    let psi = load_state(state)?;
    let value = eval_invariant(inv, &psi)?;
    match format {
        Format::Text => println!("{}", value),
        Format::Json => print_json(&json!({
            "command": "invariant.eval",
            "name": inv.name(),
            "state": state.display().to_string(),
            "value": value.to_string(),
        })),
    }
    Ok(true)
}

fn fingerprint_cmd(format: Format, state: &PathBuf) -> Result<bool, fiveq::error::Error> {
    let psi = load_state(state)?;
    let fp = fingerprint(&psi)?;
    let column: Vec<&str> = fp.rows.iter().map(|nz| if *nz { "\u{d7}" } else { "0" }).collect();
    match format {
        Format::Text => {
            for (label, nz) in FINGERPRINT_ROWS.iter().zip(fp.rows) {
                println!("{:<7} {}", label, if nz { "\u{d7}" } else { "0" });
            }
            println!("column: ({})", column.join(","));
        }
        Format::Json => {
            let mut rows = Map::new();
            for (label, nz) in FINGERPRINT_ROWS.iter().zip(fp.rows) {
                rows.insert((*label).into(), Value::Bool(nz));
            }
            print_json(&json!({
                "command": "fingerprint",
                "state": state.display().to_string(),
                "rows": Value::Object(rows),
                "column": format!("({})", column.join(",")),
            }));
        }
    }
    Ok(true)
}

fn check_invariance(format: Format, seed: u64, trials: u32) -> Result<bool, fiveq::error::Error> {
    let mut rng = seeded_rng(seed);
    let mut exact = [0u32; 6];
    for _ in 0..trials {
        let psi = random_rational_state(&mut rng, 4);
        let op = random_local_operation(&mut rng, 3);
        let moved = apply_slocc(&op, &psi);
        for (i, inv) in NamedInvariant::ALL.into_iter().enumerate() {
            let before = eval_invariant(inv, &psi)?;
            let after = eval_invariant(inv, &moved)?;
            if before == after {
                exact[i] += 1;
            }
        }
    }
    let pass = exact.iter().all(|&n| n == trials);
    match format {
        Format::Text => {
            for (i, inv) in NamedInvariant::ALL.into_iter().enumerate() {
                println!("{:<3} {}/{} exact", inv.name(), exact[i], trials);
            }
            println!("pass={}", if pass { "yes" } else { "NO" });
        }
        Format::Json => {
            let mut rows = Map::new();
            for (i, inv) in NamedInvariant::ALL.into_iter().enumerate() {
                rows.insert(inv.name().into(), json!({ "exact": exact[i], "trials": trials }));
            }
            print_json(&json!({
                "command": "check.invariance",
                "seed": seed,
                "trials": trials,
                "results": Value::Object(rows),
                "pass": pass,
            }));
        }
    }
    Ok(pass)
}

fn check_independence(
    format: Format,
    seed: u64,
    trials: u32,
) -> Result<bool, fiveq::error::Error> {
    let mut rng = seeded_rng(seed);
    let mut reports = Vec::new();
    let mut pass = true;
    for i in 0..trials {
        let psi = random_rational_state(&mut rng, 4);
        let rank5 = jacobian_rank(&NamedInvariant::QUARTICS, &psi)?;
        let rank6 = jacobian_rank(&NamedInvariant::ALL, &psi)?;
        pass &= rank5 == 5 && rank6 == 6;
        reports.push((i + 1, rank5, rank6));
    }
    match format {
        Format::Text => {
            for (i, rank5, rank6) in &reports {
                println!("point {}: rank(Dx..Du)={} rank(Dx..Du,F)={}", i, rank5, rank6);
            }
            println!(
                "pass={} (expect ranks 5 and 6 at every point)",
                if pass { "yes" } else { "NO" }
            );
        }
        Format::Json => {
            let points: Vec<Value> = reports
                .iter()
                .map(|(i, rank5, rank6)| {
                    json!({ "point": i, "rank_quartics": rank5, "rank_all": rank6 })
                })
                .collect();
            print_json(&json!({
                "command": "check.independence",
                "seed": seed,
                "trials": trials,
                "points": points,
                "pass": pass,
            }));
        }
    }
    Ok(pass)
}

fn validate_table1(format: Format, max_degree: u32) -> Result<bool, fiveq::error::Error> {
    let report = validate_table(max_degree)?;
    let pass = report.all_ok();
    let reading = |r: Option<TableReading>| match r {
        Some(TableReading::Verbatim) => "verbatim",
        Some(TableReading::Corrected) => "corrected",
        None => "none",
    };
    match format {
        Format::Text => {
            println!(
                "numerator degree: {} ({})",
                report.numerator_degree,
                if report.degree_ok { "ok" } else { "FAIL" }
            );
            println!("even support: {}", if report.even_support { "ok" } else { "FAIL" });
            if report.verbatim_palindrome_failures.is_empty() {
                println!("palindromy (verbatim): unexpectedly clean");
            } else {
                let pairs: Vec<String> = report
                    .verbatim_palindrome_failures
                    .iter()
                    .map(|(a, b)| format!("({}, {})", a, b))
                    .collect();
                println!("palindromy (verbatim): fails at {}", pairs.join(", "));
            }
            println!(
                "palindromy (corrected): {}",
                if report.corrected_palindrome_ok { "ok" } else { "FAIL" }
            );
            println!(
                "P(1) verbatim:  {} ({} target {})",
                report.p1_verbatim,
                if report.p1_verbatim == report.p1_target { "==" } else { "!=" },
                report.p1_target
            );
            println!(
                "P(1) corrected: {} ({} target {})",
                report.p1_corrected,
                if report.p1_corrected == report.p1_target { "==" } else { "!=" },
                report.p1_target
            );
            println!("accepted reading: {}", reading(report.accepted_reading));
            for d in &report.dimension_reports {
                println!(
                    "degree {:>2}: character={} table={} ({})",
                    d.degree,
                    d.dim_character,
                    d.dim_table,
                    if d.agreement() { "ok" } else { "FAIL" }
                );
            }
            println!(
                "expansion nonnegative: {}",
                if report.expansion_nonnegative { "ok" } else { "FAIL" }
            );
            println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
        }
        Format::Json => {
            let dims: Vec<Value> = report
                .dimension_reports
                .iter()
                .map(|d| {
                    json!({
                        "degree": d.degree,
                        "character": d.dim_character.to_string(),
                        "table": d.dim_table.to_string(),
                        "agree": d.agreement(),
                    })
                })
                .collect();
            print_json(&json!({
                "command": "validate.table1",
                "numerator_degree": report.numerator_degree,
                "degree_ok": report.degree_ok,
                "even_support": report.even_support,
                "verbatim_palindrome_failures": report.verbatim_palindrome_failures,
                "corrected_palindrome_ok": report.corrected_palindrome_ok,
                "p1_verbatim": report.p1_verbatim.to_string(),
                "p1_corrected": report.p1_corrected.to_string(),
                "p1_target": report.p1_target.to_string(),
                "accepted_reading": reading(report.accepted_reading),
                "dimensions": dims,
                "expansion_nonnegative": report.expansion_nonnegative,
                "pass": pass,
            }));
        }
    }
    Ok(pass)
}
