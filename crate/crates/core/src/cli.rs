//! The `divcrit` command line.
//!
//! Exit codes: 0 for an affirmative or clean result, 1 for a negative
//! result or when findings exist, 2 for usage and input errors.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::numeral::format_value;
use crate::params::{classify, enumerate, select_best, DEFAULT_Q_MAX};
use crate::rules::{default_max_iters, default_threshold, gdc_coefficients, gdc_evaluate, reduce};
use crate::tables::{
    audit_generated, audit_paper_table, default_bound, generate, render, rule_text, PaperTable,
    TableFormat,
};
use crate::verify::{oracle_divisible, sound_parameters, verdict_with, Method};
use crate::{Error, Numeral, ParameterSet};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "divcrit",
    version,
    about = "Derive, apply and audit digit-based divisibility rules in any base"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List divisibility parameter sets for a divisor
    Derive(DeriveArgs),
    /// Decide whether a numeral is divisible by the divisor
    Check(CheckArgs),
    /// Show the iterated restricted-rule reduction of a numeral
    Reduce(ApplyArgs),
    /// Evaluate the all-digit criterion of a numeral
    Gdc(GdcArgs),
    /// Generate a rule table for a divisor range
    Table(TableArgs),
    /// Audit a published table or a generated range
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
struct BaseArg {
    /// Radix of numerals and table entries (2..=36)
    #[arg(short = 'b', long = "base", default_value_t = 10,
          value_parser = clap::value_parser!(u32).range(2..=36))]
    base: u32,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Divisor n (at least 2)
    #[arg(short = 'n', long = "divisor", value_parser = clap::value_parser!(u64).range(2..))]
    divisor: u64,

    /// Largest |q| searched for N = q*n
    #[arg(long = "q-max", default_value_t = DEFAULT_Q_MAX,
          value_parser = clap::value_parser!(u32).range(1..))]
    q_max: u32,

    /// Explicit w (requires --u)
    #[arg(long = "w", requires = "u", allow_hyphen_values = true)]
    w: Option<i64>,

    /// Explicit u (requires --w)
    #[arg(long = "u", requires = "w", allow_hyphen_values = true)]
    u: Option<i64>,
}

#[derive(Debug, Args)]
struct DeriveArgs {
    #[command(flatten)]
    base: BaseArg,
    #[command(flatten)]
    params: ParamArgs,
    /// List every candidate instead of the preferred one
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Args)]
struct ApplyArgs {
    #[command(flatten)]
    base: BaseArg,
    #[command(flatten)]
    params: ParamArgs,
    /// Test number, written in the chosen base
    #[arg(allow_hyphen_values = true)]
    numeral: String,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    apply: ApplyArgs,
    /// restricted, gdc or oracle
    #[arg(long, default_value = "restricted")]
    method: Method,
}

#[derive(Debug, Args)]
struct GdcArgs {
    #[command(flatten)]
    apply: ApplyArgs,
    /// Also print the coefficients c_k, units first
    #[arg(long = "show-coefficients")]
    show_coefficients: bool,
}

#[derive(Debug, Args)]
struct RangeArgs {
    /// First divisor
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    from: Option<u64>,
    /// Last divisor
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    to: Option<u64>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    base: BaseArg,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long = "q-max", default_value_t = DEFAULT_Q_MAX,
          value_parser = clap::value_parser!(u32).range(1..))]
    q_max: u32,
    /// text or csv
    #[arg(long, default_value = "text")]
    format: TableFormat,
}

#[derive(Debug, Args)]
struct AuditArgs {
    /// Audit an embedded published table (1 = decimal, 2 = octal)
    #[arg(long = "paper-table", value_parser = clap::value_parser!(u8).range(1..=2),
          conflicts_with_all = ["from", "to"])]
    paper_table: Option<u8>,
    #[command(flatten)]
    base: BaseArg,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long = "q-max", default_value_t = DEFAULT_Q_MAX,
          value_parser = clap::value_parser!(u32).range(1..))]
    q_max: u32,
    /// Scan A in [0, bound] per row (default n*t^2)
    #[arg(long)]
    bound: Option<u64>,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(EXIT_YES, text)
            };
        }
    };
    let result = match cli.command {
        Command::Derive(a) => derive(&a),
        Command::Check(a) => check(&a),
        Command::Reduce(a) => reduce_cmd(&a),
        Command::Gdc(a) => gdc_cmd(&a),
        Command::Table(a) => table_cmd(&a),
        Command::Audit(a) => audit_cmd(&a),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn param_line(ps: &ParameterSet) -> String {
    format!(
        "q={} N={} w={} u={} rule={}",
        ps.multiplier(),
        ps.multiple(),
        ps.w(),
        ps.u(),
        rule_text(ps.u(), ps.w())
    )
}

fn verdict_line(divisible: bool) -> &'static str {
    if divisible {
        "divisible"
    } else {
        "not divisible"
    }
}

fn verdict_code(divisible: bool) -> i32 {
    if divisible {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn derive(a: &DeriveArgs) -> Result<Outcome, Error> {
    if a.params.w.is_some() || a.params.u.is_some() {
        return Err(Error::InvalidParameters(
            "derive computes w and u; --w/--u cannot be given".into(),
        ));
    }
    let (n, t) = (a.params.divisor, a.base.base);
    let candidates = enumerate(n, t, a.params.q_max)?;
    let bound = default_bound(n, t);
    let line =
        |ps: &ParameterSet| format!("{} soundness={}\n", param_line(ps), classify(ps, bound));
    if a.all {
        return Ok(Outcome::ok(EXIT_YES, candidates.iter().map(line).collect()));
    }
    match select_best(&candidates, true) {
        Ok(best) => Ok(Outcome::ok(EXIT_YES, line(&best))),
        Err(Error::NoSoundCandidate { .. }) => Ok(Outcome::ok(
            EXIT_NO,
            format!(
                "no sound rule for n={n} in base {t} with |q| <= {}\n",
                a.params.q_max
            ),
        )),
        Err(e) => Err(e),
    }
}

/// Parses the numeral and resolves the parameter set, explicit or derived.
fn resolve(a: &ApplyArgs) -> Result<(Numeral, ParameterSet), Error> {
    let t = a.base.base;
    let x = Numeral::parse(&a.numeral, t)?;
    let n = a.params.divisor;
    let ps = match (a.params.w, a.params.u) {
        (Some(w), Some(u)) => {
            let ps = ParameterSet::from_pair(n, t, w, u)?;
            if !ps.is_sound() {
                return Err(Error::NoSoundCriterion(format!(
                    "w={w}, u={u} is forward-only for n={n} (gcd(|w|, n) > 1)"
                )));
            }
            ps
        }
        _ => sound_parameters(n, t, a.params.q_max)?,
    };
    Ok((x, ps))
}

fn check(a: &CheckArgs) -> Result<Outcome, Error> {
    let divisible = if a.method == Method::Oracle && a.apply.params.w.is_none() {
        let x = Numeral::parse(&a.apply.numeral, a.apply.base.base)?;
        oracle_divisible(&x.to_value(), a.apply.params.divisor)?
    } else {
        let (x, ps) = resolve(&a.apply)?;
        verdict_with(&x, &ps, a.method)?
    };
    Ok(Outcome::ok(
        verdict_code(divisible),
        format!("{}\n", verdict_line(divisible)),
    ))
}

fn reduce_cmd(a: &ApplyArgs) -> Result<Outcome, Error> {
    let (x, ps) = resolve(a)?;
    let t = ps.base();
    let value = x.to_value();
    let trace = reduce(
        &value,
        &ps,
        default_threshold(t),
        default_max_iters(&value, t),
    );
    let mut out = format!("params: {}\n", param_line(&ps));
    for (k, v) in trace.values.iter().enumerate() {
        let _ = writeln!(out, "step {k}: R = {}", format_value(v, t));
    }
    let divisible = oracle_divisible(trace.last(), ps.divisor())?;
    out.push_str(verdict_line(divisible));
    out.push('\n');
    Ok(Outcome::ok(verdict_code(divisible), out))
}

fn gdc_cmd(a: &GdcArgs) -> Result<Outcome, Error> {
    let (x, ps) = resolve(&a.apply)?;
    let t = ps.base();
    let mut out = format!("params: {}\n", param_line(&ps));
    if a.show_coefficients {
        let coefficients: Vec<String> = gdc_coefficients(&ps, x.degree())
            .iter()
            .map(|c| format_value(c, t))
            .collect();
        let _ = writeln!(out, "coefficients: [{}]", coefficients.join(", "));
    }
    let c: BigInt = gdc_evaluate(&x, &ps)?;
    let _ = writeln!(out, "C = {}", format_value(&c, t));
    let divisible = oracle_divisible(&c, ps.divisor())?;
    out.push_str(verdict_line(divisible));
    out.push('\n');
    Ok(Outcome::ok(verdict_code(divisible), out))
}

fn range_of(r: &RangeArgs) -> Result<std::ops::RangeInclusive<u64>, Error> {
    match (r.from, r.to) {
        (Some(from), Some(to)) if from <= to => Ok(from..=to),
        (Some(from), Some(to)) => Err(Error::InvalidParameters(format!(
            "empty divisor range {from}..{to}"
        ))),
        _ => Err(Error::InvalidParameters(
            "both --from and --to are required".into(),
        )),
    }
}

fn table_cmd(a: &TableArgs) -> Result<Outcome, Error> {
    let rows = generate(a.base.base, range_of(&a.range)?, a.q_max)?;
    Ok(Outcome::ok(EXIT_YES, render(&rows, a.format)))
}

fn audit_cmd(a: &AuditArgs) -> Result<Outcome, Error> {
    let findings = match a.paper_table {
        Some(id) => {
            let table = PaperTable::from_id(id)
                .ok_or_else(|| Error::InvalidParameters(format!("no published table {id}")))?;
            audit_paper_table(table, a.bound)
        }
        None => {
            let rows = generate(a.base.base, range_of(&a.range)?, a.q_max)?;
            audit_generated(&rows, a.bound)
        }
    };
    let out: String = findings.iter().map(|f| format!("{f}\n")).collect();
    let code = if findings.is_empty() {
        EXIT_YES
    } else {
        EXIT_NO
    };
    Ok(Outcome::ok(code, out))
}
