//! Command-line interface over the library.
//!
//! Every subcommand prints a human-readable report by default and, with
//! `--json`, a single JSON document shaped as
//! `{command, parameters, results, status}`.  `enumerate` additionally
//! streams one line per emitted system before the summary document.  The
//! process exit code mirrors the status: 0 for `ok`, 1 for `violation`,
//! 2 for usage errors, unmet hypotheses, and exceeded budgets.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::cohomology::{CohomologyClass, StiefelRing};
use crate::parity::{binom_parity, phi};
use crate::steenrod;
use crate::stunted::{
    admissible_degrees, image_generator_multiple, total_sw_of_line_multiple, AdmissibleMode,
    TruncatedPoly,
};
use crate::wu::{self, CharClassSystem, DegreeVerdict, EnumerateOptions};
use crate::Error;

#[derive(Parser)]
#[command(
    name = "stiefel",
    version,
    about = "Mod-2 cohomology of real Stiefel manifolds: basis queries, Steenrod squares, Wu-formula checks, and exhaustive verifiers"
)]
pub struct Cli {
    /// Emit a JSON report instead of text (enumerate also streams JSON lines)
    #[arg(long, global = true)]
    pub json: bool,

    /// Ambient dimension n of V_k(R^n)
    #[arg(long, global = true, value_name = "N")]
    pub n: Option<u32>,

    /// Number of orthonormal vectors k in each frame
    #[arg(long, global = true, value_name = "K")]
    pub k: Option<u32>,

    /// Largest raw assignment count enumeration may attempt
    #[arg(long, global = true, value_name = "COUNT")]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the monomial basis of one degree, or the full dimension table
    Basis {
        /// Cohomological degree to list; omit for dimensions of every degree
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Multiply two classes written like "a4*a5+a9"
    Mul {
        /// Left factor
        lhs: String,
        /// Right factor
        rhs: String,
    },
    /// Apply the Steenrod square Sq^i to a class
    Sq {
        /// Square index i
        #[arg(long)]
        i: u32,
        /// Class in text form
        class: String,
    },
    /// Count l in (0, m] with l congruent to 0, 1, 2 or 4 mod 8, and 2^count
    Phi {
        /// Upper end m of the counted range
        m: u64,
    },
    /// Parity of the binomial coefficient C(a, b)
    Binom {
        /// Top entry; -1 is accepted with b = 0
        #[arg(allow_hyphen_values = true)]
        a: i64,
        /// Bottom entry
        b: u64,
    },
    /// Degree bands T_p reachable by products of p distinct generators
    Tbands,
    /// Check a hand-entered class system against Wu's formula
    WuCheck {
        /// Assignment DEG=CLASS, repeatable, e.g. --w 4=a4
        #[arg(long = "w", value_name = "DEG=CLASS")]
        assignments: Vec<String>,
    },
    /// Stream class systems passing the selected filters
    Enumerate {
        /// Keep only Wu-consistent systems
        #[arg(long)]
        require_wu: bool,
        /// Force degrees below n to vanish except the admissible one (needs n >= 2k)
        #[arg(long)]
        require_low_vanishing: bool,
        /// Keep only systems whose least nonzero degree equals this
        #[arg(long, value_name = "DEG")]
        first_nonzero: Option<u32>,
    },
    /// Per-degree verdicts forced by a first nonzero class in degree 2^q
    Derive {
        /// Exponent q of the first nonzero degree
        #[arg(long)]
        q: u32,
    },
    /// Cross-check admissible degree windows against line-bundle classes
    VerifyThm1 {
        /// Largest multiplier of the image generator to test
        #[arg(long, default_value_t = 16)]
        d_max: u64,
    },
    /// Enumerate filtered systems and confirm the forced product relations
    VerifyThm2,
    /// Run the Steenrod axiom families over every basis class
    Axioms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok,
    Violation,
    HypothesisUnmet,
    BudgetExceeded,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::HypothesisUnmet => "hypothesis_unmet",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }

    fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::HypothesisUnmet | Status::BudgetExceeded => 2,
        }
    }
}

struct Outcome {
    command: &'static str,
    parameters: Value,
    results: Value,
    status: Status,
    text: String,
}

impl Outcome {
    fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "status": self.status.as_str(),
        })
    }

    fn emit(&self, json: bool) {
        if json {
            println!("{}", self.to_value());
        } else {
            print!("{}", self.text);
        }
    }
}

/// Parses argv, runs the subcommand, prints the report, and returns the
/// process exit code.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            outcome.emit(cli.json);
            outcome.status.exit_code()
        }
        Err(err) => {
            let status = match err {
                Error::Hypothesis { .. } => Status::HypothesisUnmet,
                Error::BudgetExceeded { .. } => Status::BudgetExceeded,
                _ => {
                    eprintln!("error: {err}");
                    return 2;
                }
            };
            let outcome = Outcome {
                command: command_name(&cli.command),
                parameters: json!({"n": cli.n, "k": cli.k, "budget": cli.budget}),
                results: json!({"error": err.to_string()}),
                status,
                text: format!("error: {err}\nstatus: {}\n", status.as_str()),
            };
            outcome.emit(cli.json);
            status.exit_code()
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Basis { .. } => "basis",
        Command::Mul { .. } => "mul",
        Command::Sq { .. } => "sq",
        Command::Phi { .. } => "phi",
        Command::Binom { .. } => "binom",
        Command::Tbands => "tbands",
        Command::WuCheck { .. } => "wu-check",
        Command::Enumerate { .. } => "enumerate",
        Command::Derive { .. } => "derive",
        Command::VerifyThm1 { .. } => "verify-thm1",
        Command::VerifyThm2 => "verify-thm2",
        Command::Axioms => "axioms",
    }
}

fn execute(cli: &Cli) -> crate::Result<Outcome> {
    match &cli.command {
        Command::Basis { degree } => basis_cmd(cli, *degree),
        Command::Mul { lhs, rhs } => mul_cmd(cli, lhs, rhs),
        Command::Sq { i, class } => sq_cmd(cli, *i, class),
        Command::Phi { m } => Ok(phi_cmd(*m)),
        Command::Binom { a, b } => binom_cmd(*a, *b),
        Command::Tbands => tbands_cmd(cli),
        Command::WuCheck { assignments } => wu_check_cmd(cli, assignments),
        Command::Enumerate {
            require_wu,
            require_low_vanishing,
            first_nonzero,
        } => enumerate_cmd(cli, *require_wu, *require_low_vanishing, *first_nonzero),
        Command::Derive { q } => derive_cmd(cli, *q),
        Command::VerifyThm1 { d_max } => verify_thm1_cmd(cli, *d_max),
        Command::VerifyThm2 => verify_thm2_cmd(cli),
        Command::Axioms => axioms_cmd(cli),
    }
}

fn ring_from(cli: &Cli) -> crate::Result<StiefelRing> {
    let n = cli.n.ok_or(Error::MissingFlag { flag: "--n" })?;
    let k = cli.k.ok_or(Error::MissingFlag { flag: "--k" })?;
    StiefelRing::new(n, k)
}

fn biguint_value(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

/// JSON object mapping each degree to the sorted list of its monomials.
fn classes_value(classes: &BTreeMap<u32, CohomologyClass>) -> Value {
    let map: Map<String, Value> = classes
        .iter()
        .map(|(degree, class)| {
            (
                degree.to_string(),
                Value::Array(class.terms().map(|m| Value::String(m.to_string())).collect()),
            )
        })
        .collect();
    Value::Object(map)
}

/// The JSON line emitted for one enumerated system; shared with the snapshot
/// tests so the stream format stays frozen.
pub fn system_line(system: &CharClassSystem) -> Value {
    json!({
        "classes": classes_value(system.classes()),
        "wu_consistent": wu::is_wu_consistent(system),
        "first_nonzero": system.first_nonzero_degree(),
        "relations_ok": relations_verdict(system),
    })
}

/// Relation-table verdict for one system: null when the band hypothesis
/// fails or the system is trivial, false when the first nonzero degree is
/// not a power of two, otherwise whether every table constraint holds.
fn relations_verdict(system: &CharClassSystem) -> Value {
    let ring = system.ring();
    if 4 * ring.n() <= ring.k() * (ring.k() + 4) {
        return Value::Null;
    }
    let Some(first) = system.first_nonzero_degree() else {
        return Value::Null;
    };
    if !first.is_power_of_two() {
        return Value::Bool(false);
    }
    match wu::relation_violations(system, first.trailing_zeros()) {
        Ok(violations) => Value::Bool(violations.is_empty()),
        Err(_) => Value::Bool(false),
    }
}

fn system_text(system: &CharClassSystem, line: &Value) -> String {
    let classes = if system.classes().is_empty() {
        "(trivial)".to_string()
    } else {
        system
            .classes()
            .iter()
            .map(|(d, c)| format!("w{d}={c}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let first = match line["first_nonzero"].as_u64() {
        Some(d) => d.to_string(),
        None => "-".to_string(),
    };
    let wu_ok = if line["wu_consistent"] == Value::Bool(true) {
        "yes"
    } else {
        "no"
    };
    let relations = match line["relations_ok"] {
        Value::Bool(true) => "ok",
        Value::Bool(false) => "fail",
        _ => "-",
    };
    format!("{classes} | first={first} wu={wu_ok} relations={relations}")
}

fn basis_cmd(cli: &Cli, degree: Option<u32>) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let mut text = String::new();
    let (parameters, results) = match degree {
        Some(d) => {
            let monomials: Vec<String> = ring.basis(d).iter().map(|m| m.to_string()).collect();
            for m in &monomials {
                writeln!(text, "{m}").unwrap();
            }
            (
                json!({"n": ring.n(), "k": ring.k(), "degree": d}),
                json!({"degree": d, "dimension": monomials.len(), "monomials": monomials}),
            )
        }
        None => {
            let dims: Vec<u64> = (0..=ring.top_degree())
                .map(|d| ring.dim(d) as u64)
                .collect();
            let total: u64 = dims.iter().sum();
            for (d, dim) in dims.iter().enumerate() {
                writeln!(text, "degree {d}: dim {dim}").unwrap();
            }
            writeln!(text, "total dimension: {total}").unwrap();
            (
                json!({"n": ring.n(), "k": ring.k()}),
                json!({
                    "top_degree": ring.top_degree(),
                    "dimensions": dims,
                    "total_dimension": total,
                }),
            )
        }
    };
    writeln!(text, "status: ok").unwrap();
    Ok(Outcome {
        command: "basis",
        parameters,
        results,
        status: Status::Ok,
        text,
    })
}

fn mul_cmd(cli: &Cli, lhs: &str, rhs: &str) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let x = ring.parse_class(lhs)?;
    let y = ring.parse_class(rhs)?;
    let product = ring.multiply(&x, &y)?;
    let text = format!("{product}\nstatus: ok\n");
    Ok(Outcome {
        command: "mul",
        parameters: json!({"n": ring.n(), "k": ring.k(), "lhs": lhs, "rhs": rhs}),
        results: json!({
            "lhs": x.to_string(),
            "rhs": y.to_string(),
            "product": product.to_string(),
        }),
        status: Status::Ok,
        text,
    })
}

fn sq_cmd(cli: &Cli, i: u32, class: &str) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let x = ring.parse_class(class)?;
    let result = steenrod::sq(&ring, i, &x)?;
    let text = format!("{result}\nstatus: ok\n");
    Ok(Outcome {
        command: "sq",
        parameters: json!({"n": ring.n(), "k": ring.k(), "i": i, "class": class}),
        results: json!({
            "i": i,
            "class": x.to_string(),
            "result": result.to_string(),
        }),
        status: Status::Ok,
        text,
    })
}

fn phi_cmd(m: u64) -> Outcome {
    let value = phi(m);
    let mut text = String::new();
    writeln!(text, "phi({m}) = {}", value.phi).unwrap();
    writeln!(text, "power: {}", value.power).unwrap();
    writeln!(text, "status: ok").unwrap();
    Outcome {
        command: "phi",
        parameters: json!({"m": m}),
        results: json!({"m": m, "phi": value.phi, "power": biguint_value(&value.power)}),
        status: Status::Ok,
        text,
    }
}

fn binom_cmd(a: i64, b: u64) -> crate::Result<Outcome> {
    let parity = binom_parity(a, b)?;
    let text = format!("C({a}, {b}) is {parity}\nstatus: ok\n");
    Ok(Outcome {
        command: "binom",
        parameters: json!({"a": a, "b": b}),
        results: json!({"a": a, "b": b, "parity": parity.to_string()}),
        status: Status::Ok,
        text,
    })
}

fn tbands_cmd(cli: &Cli) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let mut bands = Vec::new();
    let mut text = String::new();
    for p in 0..=ring.k() {
        let band = ring.t_band(p)?;
        writeln!(text, "T_{p}: [{}, {}] width {}", band.lo, band.hi, band.width()).unwrap();
        bands.push(json!({"p": p, "lo": band.lo, "hi": band.hi, "width": band.width()}));
    }
    // Band endpoints grow with p, so consecutive disjointness is pairwise.
    let disjoint = (0..ring.k()).all(|p| {
        ring.t_band(p).unwrap().hi < ring.t_band(p + 1).unwrap().lo
    });
    writeln!(
        text,
        "pairwise disjoint: {}",
        if disjoint { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(text, "status: ok").unwrap();
    Ok(Outcome {
        command: "tbands",
        parameters: json!({"n": ring.n(), "k": ring.k()}),
        results: json!({"bands": bands, "pairwise_disjoint": disjoint}),
        status: Status::Ok,
        text,
    })
}

fn parse_assignment(ring: &StiefelRing, entry: &str) -> crate::Result<(u32, CohomologyClass)> {
    let (deg_text, class_text) = entry.split_once('=').ok_or_else(|| Error::Parse {
        input: entry.to_string(),
        reason: "expected DEG=CLASS".to_string(),
    })?;
    let degree: u32 = deg_text.trim().parse().map_err(|_| Error::Parse {
        input: entry.to_string(),
        reason: "degree must be a non-negative integer".to_string(),
    })?;
    let class = ring.parse_class(class_text.trim())?;
    Ok((degree, class))
}

fn wu_check_cmd(cli: &Cli, assignments: &[String]) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let mut classes = BTreeMap::new();
    for entry in assignments {
        let (degree, class) = parse_assignment(&ring, entry)?;
        if classes.insert(degree, class).is_some() {
            return Err(Error::Parse {
                input: entry.clone(),
                reason: format!("degree {degree} assigned twice"),
            });
        }
    }
    let system = CharClassSystem::new(ring.clone(), classes)?;
    let violations = wu::wu_violations(&system);
    let consistent = violations.is_empty();
    let mut text = String::new();
    writeln!(
        text,
        "wu consistent: {}",
        if consistent { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(
        text,
        "first nonzero: {}",
        match system.first_nonzero_degree() {
            Some(d) => d.to_string(),
            None => "-".to_string(),
        }
    )
    .unwrap();
    for v in &violations {
        writeln!(
            text,
            "violation (i={}, j={}): Sq = {}, wu rhs = {}",
            v.i, v.j, v.lhs, v.rhs
        )
        .unwrap();
    }
    let status = if consistent {
        Status::Ok
    } else {
        Status::Violation
    };
    writeln!(text, "status: {}", status.as_str()).unwrap();
    Ok(Outcome {
        command: "wu-check",
        parameters: json!({"n": ring.n(), "k": ring.k(), "assignments": assignments}),
        results: json!({
            "system": classes_value(system.classes()),
            "first_nonzero": system.first_nonzero_degree(),
            "wu_consistent": consistent,
            "violations": violations
                .iter()
                .map(|v| json!({
                    "i": v.i,
                    "j": v.j,
                    "lhs": v.lhs.to_string(),
                    "rhs": v.rhs.to_string(),
                }))
                .collect::<Vec<_>>(),
        }),
        status,
        text,
    })
}

fn enumerate_cmd(
    cli: &Cli,
    require_wu: bool,
    require_low_vanishing: bool,
    first_nonzero: Option<u32>,
) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let options = EnumerateOptions {
        require_wu,
        require_low_vanishing,
        first_nonzero,
        budget: cli.budget.unwrap_or(wu::DEFAULT_BUDGET),
    };
    let iter = wu::enumerate_systems(&ring, &options)?;
    let mut count = 0u64;
    let mut wu_ok = 0u64;
    let mut relations_pass = 0u64;
    let mut relations_fail = 0u64;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for system in iter {
        count += 1;
        let line = system_line(&system);
        if line["wu_consistent"] == Value::Bool(true) {
            wu_ok += 1;
        }
        match line["relations_ok"] {
            Value::Bool(true) => relations_pass += 1,
            Value::Bool(false) => relations_fail += 1,
            _ => {}
        }
        if cli.json {
            writeln!(out, "{line}").expect("write to stdout");
        } else {
            writeln!(out, "{}", system_text(&system, &line)).expect("write to stdout");
        }
    }
    drop(out);
    let mut text = String::new();
    writeln!(text, "systems: {count}").unwrap();
    writeln!(text, "wu consistent: {wu_ok}").unwrap();
    writeln!(text, "relations pass: {relations_pass}").unwrap();
    writeln!(text, "relations fail: {relations_fail}").unwrap();
    writeln!(text, "status: ok").unwrap();
    Ok(Outcome {
        command: "enumerate",
        parameters: json!({
            "n": ring.n(),
            "k": ring.k(),
            "require_wu": require_wu,
            "require_low_vanishing": require_low_vanishing,
            "first_nonzero": first_nonzero,
            "budget": options.budget,
        }),
        results: json!({
            "systems": count,
            "wu_consistent": wu_ok,
            "relations_pass": relations_pass,
            "relations_fail": relations_fail,
            "state_bits": wu::state_bits(&ring),
        }),
        status: Status::Ok,
        text,
    })
}

fn derive_cmd(cli: &Cli, q: u32) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let table = wu::relation_table(&ring, q)?;
    let mut text = String::new();
    let mut entries = Map::new();
    for (degree, verdict) in &table.verdicts {
        let (line, value) = match verdict {
            DegreeVerdict::ForcedZero => {
                ("forced zero".to_string(), json!({"kind": "forced_zero"}))
            }
            DegreeVerdict::FreeGenerator => (
                "free generator".to_string(),
                json!({"kind": "free_generator"}),
            ),
            DegreeVerdict::ForcedProduct(parts) => (
                format!(
                    "product {}",
                    parts
                        .iter()
                        .map(|p| format!("w{p}"))
                        .collect::<Vec<_>>()
                        .join("*")
                ),
                json!({"kind": "forced_product", "factors": parts}),
            ),
        };
        writeln!(text, "degree {degree}: {line}").unwrap();
        entries.insert(degree.to_string(), value);
    }
    writeln!(text, "status: ok").unwrap();
    Ok(Outcome {
        command: "derive",
        parameters: json!({"n": ring.n(), "k": ring.k(), "q": q}),
        results: json!({"q": q, "top_degree": ring.top_degree(), "table": entries}),
        status: Status::Ok,
        text,
    })
}

/// Truncation of (1 + t)^{multiple * d}.  When the exponent overflows u64 its
/// lowest set bit is already past every positive truncated degree, so the
/// class collapses to 1.
fn line_class_multiple(modulus: u32, multiple: &BigUint, d: u64) -> crate::Result<TruncatedPoly> {
    let m = multiple * d;
    match u64::try_from(&m) {
        Ok(m) => total_sw_of_line_multiple(modulus, m),
        Err(_) => TruncatedPoly::one(modulus),
    }
}

fn format_degrees(degrees: &std::collections::BTreeSet<u32>) -> String {
    if degrees.is_empty() {
        "(none)".to_string()
    } else {
        degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn verify_thm1_cmd(cli: &Cli, d_max: u64) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let (n, k) = (ring.n(), ring.k());
    let twice = admissible_degrees(n, k, AdmissibleMode::TwiceCodimension)?;
    let projective = admissible_degrees(n, k, AdmissibleMode::ProjectiveDimension)?;
    let multiple = image_generator_multiple(n, k)?;
    let c = n - k;
    let mut violations = Vec::new();
    for d in 1..=d_max {
        let poly = line_class_multiple(n, &multiple, d)?;
        for e in poly.exponents() {
            if e < c {
                continue;
            }
            if e <= 2 * c && !twice.degrees.contains(&e) {
                violations.push(json!({"d": d, "degree": e, "window": "twice_codimension"}));
            }
            if e <= n - 1 && !projective.degrees.contains(&e) {
                violations.push(json!({"d": d, "degree": e, "window": "projective_dimension"}));
            }
        }
    }
    let mut text = String::new();
    writeln!(text, "image multiple: {multiple}").unwrap();
    writeln!(
        text,
        "admissible up to 2(n-k): {}",
        format_degrees(&twice.degrees)
    )
    .unwrap();
    writeln!(
        text,
        "admissible up to n-1: {}",
        format_degrees(&projective.degrees)
    )
    .unwrap();
    writeln!(text, "checked multiples: 1..={d_max}").unwrap();
    writeln!(text, "violations: {}", violations.len()).unwrap();
    let status = if violations.is_empty() {
        Status::Ok
    } else {
        Status::Violation
    };
    writeln!(text, "status: {}", status.as_str()).unwrap();
    Ok(Outcome {
        command: "verify-thm1",
        parameters: json!({"n": n, "k": k, "d_max": d_max}),
        results: json!({
            "image_multiple": biguint_value(&multiple),
            "twice_codimension": {
                "range_hi": twice.range_hi,
                "degrees": twice.degrees.iter().collect::<Vec<_>>(),
            },
            "projective_dimension": {
                "range_hi": projective.range_hi,
                "degrees": projective.degrees.iter().collect::<Vec<_>>(),
            },
            "violations": violations,
        }),
        status,
        text,
    })
}

fn verify_thm2_cmd(cli: &Cli) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    // Surface the band hypothesis before any enumeration starts.
    wu::relation_table(&ring, 0)?;
    let budget = cli.budget.unwrap_or(wu::DEFAULT_BUDGET);
    let top = ring.top_degree();

    let mut per_q = Vec::new();
    let mut filtered_systems = 0u64;
    let mut filtered_violations = 0u64;
    let mut text = String::new();
    let mut q = 0u32;
    while (1u64 << q) <= top as u64 {
        let first = 1u32 << q;
        let options = EnumerateOptions {
            require_wu: true,
            require_low_vanishing: true,
            first_nonzero: Some(first),
            budget,
        };
        let mut systems = 0u64;
        let mut violations = Vec::new();
        for system in wu::enumerate_systems(&ring, &options)? {
            systems += 1;
            for violation in wu::relation_violations(&system, q)? {
                violations.push(json!({
                    "degree": violation.degree,
                    "expected": violation.expected.to_string(),
                    "actual": violation.actual.to_string(),
                    "system": classes_value(system.classes()),
                }));
            }
        }
        filtered_systems += systems;
        filtered_violations += violations.len() as u64;
        writeln!(
            text,
            "q={q} first_nonzero={first}: {systems} systems, {} violations",
            violations.len()
        )
        .unwrap();
        per_q.push(json!({
            "q": q,
            "first_nonzero": first,
            "systems": systems,
            "violations": violations,
        }));
        q += 1;
    }

    // Informational rerun without the low-degree filter: report whether
    // Wu-consistency alone already forces the product relations.
    let wu_only_options = EnumerateOptions {
        require_wu: true,
        require_low_vanishing: false,
        first_nonzero: None,
        budget,
    };
    let mut wu_only = 0u64;
    let mut trivial = 0u64;
    let mut pass = 0u64;
    let mut fail = 0u64;
    let mut non_power = 0u64;
    for system in wu::enumerate_systems(&ring, &wu_only_options)? {
        wu_only += 1;
        match system.first_nonzero_degree() {
            None => trivial += 1,
            Some(first) if !first.is_power_of_two() => non_power += 1,
            Some(first) => match wu::relation_violations(&system, first.trailing_zeros()) {
                Ok(v) if v.is_empty() => pass += 1,
                _ => fail += 1,
            },
        }
    }
    writeln!(
        text,
        "filtered systems: {filtered_systems}, violations: {filtered_violations}"
    )
    .unwrap();
    writeln!(
        text,
        "wu-only systems: {wu_only} (trivial {trivial}), relations pass: {pass}, \
         fail: {fail}, first nonzero not a power of two: {non_power}"
    )
    .unwrap();
    let status = if filtered_violations == 0 {
        Status::Ok
    } else {
        Status::Violation
    };
    writeln!(text, "status: {}", status.as_str()).unwrap();
    Ok(Outcome {
        command: "verify-thm2",
        parameters: json!({"n": ring.n(), "k": ring.k(), "budget": budget}),
        results: json!({
            "per_q": per_q,
            "filtered_systems": filtered_systems,
            "filtered_violations": filtered_violations,
            "wu_only": {
                "systems": wu_only,
                "trivial": trivial,
                "relations_pass": pass,
                "relations_fail": fail,
                "first_nonzero_not_power_of_two": non_power,
            },
        }),
        status,
        text,
    })
}

fn axioms_cmd(cli: &Cli) -> crate::Result<Outcome> {
    let ring = ring_from(cli)?;
    let report = steenrod::verify_axioms(&ring);
    let mut text = String::new();
    let mut checks = Map::new();
    for (family, count) in &report.checks {
        writeln!(text, "{family}: {count} checks").unwrap();
        checks.insert((*family).to_string(), json!(count));
    }
    writeln!(text, "total checks: {}", report.total_checks()).unwrap();
    writeln!(text, "violations: {}", report.violations.len()).unwrap();
    for v in &report.violations {
        writeln!(text, "violation [{}]: {}", v.family, v.detail).unwrap();
    }
    let status = if report.is_clean() {
        Status::Ok
    } else {
        Status::Violation
    };
    writeln!(text, "status: {}", status.as_str()).unwrap();
    Ok(Outcome {
        command: "axioms",
        parameters: json!({"n": ring.n(), "k": ring.k()}),
        results: json!({
            "checks": checks,
            "total_checks": report.total_checks(),
            "violations": report
                .violations
                .iter()
                .map(|v| json!({"family": v.family, "detail": v.detail}))
                .collect::<Vec<_>>(),
        }),
        status,
        text,
    })
}
