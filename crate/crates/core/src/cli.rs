//! Command-line frontend.
//!
//! Every command returns an [`Outcome`] instead of printing, so the binary
//! stays a thin wrapper and the whole surface can be tested in-process.
//! Big integers in JSON are always decimal strings.

use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::funcgraph::{enum_cap_from_env, enumerate_functions, parse_function, FiniteFunction};
use crate::linrep::{
    construct, construct_from, row_polynomials, threshold, verify, Certificate,
    LinearRepresentation, XChoice,
};
use crate::oracle::{search_minimal, SearchBudget, SearchOutcome};
use crate::poly::IntPoly;
use crate::polymat::PolyMatrix;

pub const SCHEMA_VERSION: &str = "1.0";

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
    pub const CHAIN_VIOLATION: i32 = 3;
    pub const BUDGET_EXHAUSTED: i32 = 4;
    pub const INTERNAL: i32 = 70;
}

#[derive(Parser, Debug)]
#[command(name = "linrep", version, about = "Linear representations of functions on finite sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Bound,
    Tight,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct and verify a linear representation
    Repr {
        /// Image table, e.g. "0,1,1"
        function: String,
        #[arg(long, value_enum, conflicts_with = "x")]
        mode: Option<ModeArg>,
        /// Evaluate at this x instead of choosing one
        #[arg(long)]
        x: Option<BigInt>,
        #[arg(long)]
        json: bool,
    },
    /// Check a supplied (m, a, j) against a function
    Verify {
        function: String,
        #[arg(long)]
        m: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        /// Comma-separated embedding values
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
    /// Characteristic polynomial and adjugate of xI - A
    Charpoly {
        function: String,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for the smallest modulus
    Minimal {
        function: String,
        #[arg(long, default_value_t = SearchBudget::default().max_m)]
        max_m: u64,
        #[arg(long, default_value_t = SearchBudget::default().max_assignments)]
        max_assignments: u64,
    },
    /// Construct and verify every function on n elements, writing CSV
    Batch {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bound")]
        mode: ModeArg,
        #[arg(long)]
        with_minimal: bool,
        /// CSV destination; without it the CSV is embedded in the envelope
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: String,
    pub result: Value,
    pub diagnostics: Vec<String>,
}

impl Envelope {
    fn new(command: &'static str, input: impl Into<String>, result: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            input: input.into(),
            result,
            diagnostics: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: exit::SUCCESS,
        }
    }

    fn error(err: &Error) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: exit_code(err),
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ChainViolation { .. } => exit::CHAIN_VIOLATION,
        Error::Invariant(_) => exit::INTERNAL,
        _ => exit::INPUT_ERROR,
    }
}

/// Parses arguments and runs the command. Argument errors exit with 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT_ERROR } else { exit::SUCCESS };
            let text = e.render().to_string();
            if code == exit::SUCCESS {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

/// Runs a parsed command. Panics inside the pipeline map to exit 70.
pub fn run(cli: Cli) -> Outcome {
    let result = panic::catch_unwind(AssertUnwindSafe(|| dispatch(cli.command)));
    match result {
        Ok(outcome) => outcome,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Outcome {
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
                code: exit::INTERNAL,
            }
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    let result = match command {
        Command::Repr {
            function,
            mode,
            x,
            json,
        } => cmd_repr(&function, mode, x, json),
        Command::Verify { function, m, a, j } => cmd_verify(&function, m, a, &j),
        Command::Charpoly { function, json } => cmd_charpoly(&function, json),
        Command::Minimal {
            function,
            max_m,
            max_assignments,
        } => cmd_minimal(&function, SearchBudget { max_m, max_assignments }),
        Command::Batch {
            n,
            mode,
            with_minimal,
            out,
        } => cmd_batch(n, mode, with_minimal, out, enum_cap_from_env()),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn s(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn big_list(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(s).collect())
}

fn poly_json(p: &IntPoly) -> Value {
    big_list(p.coeffs())
}

fn matrix_json(m: &PolyMatrix) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(poly_json).collect()))
            .collect(),
    )
}

fn certificate_json(cert: &Certificate) -> Value {
    let records: Vec<Value> = cert
        .records
        .iter()
        .map(|r| {
            json!({
                "i": r.i,
                "f_i": r.image,
                "j_i": s(&r.j_i),
                "j_f_i": s(&r.j_image),
                "a_j_i_mod_m": s(&r.a_j_mod_m),
                "congruent": r.congruent,
                "residual": r.residual.as_ref().map(s),
            })
        })
        .collect();
    json!({
        "records": records,
        "in_range": cert.in_range,
        "injective": cert.injective,
        "ordered": cert.ordered,
        "ordering_required": cert.ordering_required,
        "congruent": cert.congruent,
        "identity": cert.identity,
        "passed": cert.passed(),
        "failure": cert.failure.as_ref().map(|f| f.to_string()),
    })
}

fn rep_json(rep: &LinearRepresentation) -> Value {
    json!({
        "n": rep.n,
        "x": rep.x.as_ref().map(s),
        "m": s(&rep.m),
        "a": s(&rep.a),
        "j": big_list(&rep.j),
        "mode": rep.mode.as_str(),
    })
}

fn join(vs: &[BigInt], sep: &str) -> String {
    vs.iter().map(BigInt::to_string).collect::<Vec<_>>().join(sep)
}

fn choice_for(mode: ModeArg) -> XChoice {
    match mode {
        ModeArg::Bound => XChoice::BoundDerived,
        ModeArg::Tight => XChoice::Tight,
    }
}

const DEGENERATE_NOTICE: &str = "degenerate input: n = 0, every condition holds vacuously";

pub fn cmd_repr(
    text: &str,
    mode: Option<ModeArg>,
    x: Option<BigInt>,
    json: bool,
) -> Result<Outcome, Error> {
    let f = parse_function(text)?;
    let choice = match x {
        Some(x) => XChoice::Explicit(x),
        None => choice_for(mode.unwrap_or(ModeArg::Bound)),
    };
    let mut diagnostics = Vec::new();
    let rep = if f.n() == 0 {
        diagnostics.push(DEGENERATE_NOTICE.to_string());
        construct(&f, &choice)?
    } else {
        let rp = row_polynomials(&f)?;
        let rep = construct_from(&rp, &choice)?;
        let bound = threshold(&rp)?;
        if let Some(x) = &rep.x {
            if *x != bound {
                diagnostics.push(format!("bound-derived threshold x* = {bound}, chosen x = {x}"));
            }
        }
        rep
    };
    let cert = verify(&f, &rep)?;
    if !cert.passed() {
        return Err(Error::Invariant(format!(
            "constructed representation fails verification: {}",
            cert.failure.as_ref().expect("failure recorded")
        )));
    }

    if !json {
        return Ok(Outcome::ok(render_repr(&f, &rep, &cert, &diagnostics)));
    }
    let mut result = rep_json(&rep);
    result["certificate"] = certificate_json(&cert);
    let mut env = Envelope::new("repr", text, result);
    env.diagnostics = diagnostics;
    Ok(Outcome::ok(env.to_json() + "\n"))
}

fn render_repr(
    f: &FiniteFunction,
    rep: &LinearRepresentation,
    cert: &Certificate,
    diagnostics: &[String],
) -> String {
    let mut out = String::new();
    let x = rep.x.as_ref().map_or("-".to_string(), BigInt::to_string);
    let _ = writeln!(out, "f = [{f}]  (n = {}, mode {}, x = {x})", rep.n, rep.mode);
    let _ = writeln!(out, "m = {}", rep.m);
    let _ = writeln!(out, "a = {}", rep.a);
    let _ = writeln!(out, "j = [{}]", join(&rep.j, ", "));
    let _ = writeln!(out);
    let _ = writeln!(out, "    i --f--> f(i)");
    let _ = writeln!(out, "    |         |");
    let _ = writeln!(out, "    j         j");
    let _ = writeln!(out, "    v         v");
    let _ = writeln!(out, "  j(i) --*a--> j(f(i))   in Z/{}Z", rep.m);
    let _ = writeln!(out);
    for r in &cert.records {
        let _ = writeln!(
            out,
            "  {} -> {}:  j = {}, a*j mod m = {}, j(f(i)) = {}  {}",
            r.i,
            r.image,
            r.j_i,
            r.a_j_mod_m,
            r.j_image,
            if r.congruent { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        out,
        "injective: {}, ordered: {}, congruent: {}, identity: {}",
        cert.injective,
        cert.ordered,
        cert.congruent,
        cert.identity.map_or("n/a".into(), |b| b.to_string())
    );
    for d in diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    out
}

fn parse_big_list(text: &str) -> Result<Vec<BigInt>, Error> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid integer {t:?} in j")))
        })
        .collect()
}

pub fn cmd_verify(text: &str, m: BigInt, a: BigInt, j_text: &str) -> Result<Outcome, Error> {
    let f = parse_function(text)?;
    let j = parse_big_list(j_text)?;
    if j.len() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            actual: j.len(),
        });
    }
    let rep = LinearRepresentation::user_supplied(m, a, j);
    let cert = verify(&f, &rep)?;
    let mut result = rep_json(&rep);
    result["valid"] = Value::Bool(cert.passed());
    result["certificate"] = certificate_json(&cert);
    let mut env = Envelope::new("verify", text, result);
    if f.n() == 0 {
        env.diagnostics.push(DEGENERATE_NOTICE.to_string());
    }
    let mut outcome = Outcome::ok(env.to_json() + "\n");
    if let Some(failure) = &cert.failure {
        outcome.code = exit::VERIFICATION_FAILED;
        outcome.stderr = match failure.index() {
            Some(i) => format!("verification failed at index {i}: {failure}\n"),
            None => format!("verification failed: {failure}\n"),
        };
    }
    Ok(outcome)
}

pub fn cmd_charpoly(text: &str, json: bool) -> Result<Outcome, Error> {
    let f = parse_function(text)?;
    let (char_poly, adj) = if f.n() == 0 {
        (IntPoly::one(), PolyMatrix::zeros(0))
    } else {
        let rp = row_polynomials(&f)?;
        (rp.char_poly, rp.adjugate)
    };
    if !json {
        let mut out = format!("char_poly = {char_poly}\nadjugate =\n");
        for row in adj.rows() {
            let cells: Vec<String> = row.iter().map(IntPoly::to_string).collect();
            let _ = writeln!(out, "  {}", cells.join("  "));
        }
        return Ok(Outcome::ok(out));
    }
    let result = json!({
        "n": f.n(),
        "char_poly": poly_json(&char_poly),
        "adjugate": matrix_json(&adj),
    });
    let mut env = Envelope::new("charpoly", text, result);
    if f.n() == 0 {
        env.diagnostics.push(DEGENERATE_NOTICE.to_string());
    }
    Ok(Outcome::ok(env.to_json() + "\n"))
}

pub fn cmd_minimal(text: &str, budget: SearchBudget) -> Result<Outcome, Error> {
    let f = parse_function(text)?;
    let outcome = search_minimal(&f, budget)?;
    let constructive = construct(&f, &XChoice::Tight)?;
    let mut result = json!({
        "n": f.n(),
        "max_m": budget.max_m,
        "max_assignments": budget.max_assignments,
        "nodes": outcome.nodes(),
        "constructive_m": s(&constructive.m),
        "constructive_x": constructive.x.as_ref().map(s),
    });
    let code = match &outcome {
        SearchOutcome::Found { rep, .. } => {
            let cert = verify(&f, rep)?;
            if !cert.passed() {
                return Err(Error::Invariant(format!(
                    "search result fails verification: {}",
                    cert.failure.as_ref().expect("failure recorded")
                )));
            }
            result["found"] = Value::Bool(true);
            result["m"] = s(&rep.m);
            result["a"] = s(&rep.a);
            result["j"] = big_list(&rep.j);
            exit::SUCCESS
        }
        SearchOutcome::NotFound {
            searched_through,
            budget_exhausted,
            ..
        } => {
            result["found"] = Value::Bool(false);
            result["searched_through"] = json!(searched_through);
            result["budget_exhausted"] = Value::Bool(*budget_exhausted);
            exit::BUDGET_EXHAUSTED
        }
    };
    let env = Envelope::new("minimal", text, result);
    let mut out = Outcome::ok(env.to_json() + "\n");
    out.code = code;
    if code == exit::BUDGET_EXHAUSTED {
        out.stderr = match outcome {
            SearchOutcome::NotFound {
                searched_through: Some(m),
                ..
            } => format!("no representation found through m = {m}\n"),
            _ => "no representation found; budget exhausted before any modulus was completed\n"
                .to_string(),
        };
    }
    Ok(out)
}

pub fn cmd_batch(
    n: usize,
    mode: ModeArg,
    with_minimal: bool,
    out: Option<PathBuf>,
    cap: usize,
) -> Result<Outcome, Error> {
    let functions = enumerate_functions(n, cap)?;
    let choice = choice_for(mode);

    let mut writer = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    let mut header = vec!["f", "x", "m", "a", "j", "verified"];
    if with_minimal {
        header.push("minimal_m");
    }
    let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    writer.write_record(&header).map_err(csv_err)?;

    let mut total = 0usize;
    let mut failures = Vec::new();
    let mut minimal_unresolved = 0usize;
    for f in functions {
        total += 1;
        let rep = construct(&f, &choice)?;
        let verified = verify(&f, &rep)?.passed();
        if !verified {
            failures.push(f.to_string());
        }
        let mut row = vec![
            f.to_string(),
            rep.x.as_ref().map_or(String::new(), BigInt::to_string),
            rep.m.to_string(),
            rep.a.to_string(),
            join(&rep.j, ";"),
            verified.to_string(),
        ];
        if with_minimal {
            let cell = if f.n() == 0 {
                String::new()
            } else {
                match search_minimal(&f, SearchBudget::default())? {
                    SearchOutcome::Found { rep, .. } => rep.m.to_string(),
                    SearchOutcome::NotFound { .. } => {
                        minimal_unresolved += 1;
                        String::new()
                    }
                }
            };
            row.push(cell);
        }
        writer.write_record(&row).map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    let csv_text = String::from_utf8(bytes).expect("csv output is utf-8");

    let mut result = json!({
        "n": n,
        "mode": choice_label(mode),
        "total": total,
        "verified": total - failures.len(),
        "failures": failures,
    });
    match &out {
        Some(path) => {
            std::fs::write(path, &csv_text).map_err(|e| {
                Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
            })?;
            result["out"] = Value::String(path.display().to_string());
        }
        None => result["csv"] = Value::String(csv_text),
    }
    let mut env = Envelope::new("batch", format!("n={n}"), result);
    if n == 0 {
        env.diagnostics.push(DEGENERATE_NOTICE.to_string());
    }
    if minimal_unresolved > 0 {
        env.diagnostics.push(format!(
            "minimal search found nothing within the default budget for {minimal_unresolved} functions"
        ));
    }
    let mut outcome = Outcome::ok(env.to_json() + "\n");
    if !failures.is_empty() {
        outcome.code = exit::VERIFICATION_FAILED;
        outcome.stderr = format!("{} functions failed verification\n", failures.len());
    }
    Ok(outcome)
}

fn choice_label(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Bound => "bound-derived",
        ModeArg::Tight => "tight",
    }
}
