//! Command-line front end: `eval`, `verify`, `table` and `gf-check`.
//!
//! [`run`] parses arguments, executes one command and returns the captured
//! output together with the process exit code:
//! 0 success, 1 verification failure, 2 usage or parse error, 3 arithmetic error.

pub mod parse;
pub mod render;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::families::{Family, FamilySpec};
use crate::identities::{coherence_checks, referee, verify_suite, Grid, IdentityId, Role, VerifyReport};
use crate::mpoly::MPoly;
use crate::qarith::{format_rational, parse_rational, QContext, Rational};
use crate::qseries::generating_kernel;

pub use parse::{parse_family, FamilyExpr, ParseError};
pub use render::{poly_from_json, poly_json, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ARITHMETIC: i32 = 3;

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }

    fn from_error(e: &Error) -> Self {
        let code = if e.is_arithmetic() { EXIT_ARITHMETIC } else { EXIT_USAGE };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qlghp", version, about = "Exact q-Laguerre-Gould-Hopper polynomials and identity verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand one family member, e.g. `LH(2,2,2)`.
    Eval(EvalArgs),
    /// Check identities from the catalog.
    Verify(VerifyArgs),
    /// Expand a family over a grid of indices.
    Table(TableArgs),
    /// Compare generating-function coefficients with the family.
    GfCheck(GfArgs),
}

fn q_value(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Comma-separated values of `q`.
#[derive(Debug, Clone)]
struct QList(Vec<Rational>);

fn q_values(text: &str) -> Result<QList, String> {
    text.split(',').map(q_value).collect::<Result<Vec<_>, _>>().map(QList)
}

/// `a..b` (inclusive) or a single `a`.
fn index_range(text: &str) -> Result<RangeInclusive<u32>, String> {
    let int = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("invalid index `{s}`"));
    let range = match text.split_once("..") {
        Some((a, b)) => int(a)?..=int(b)?,
        None => {
            let a = int(text)?;
            a..=a
        }
    };
    if range.is_empty() {
        return Err(format!("empty range `{text}`"));
    }
    Ok(range)
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, env = "QLGHP_Q", allow_hyphen_values = true, default_value = "1/2", value_parser = q_value)]
    q: Rational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `gh(n,m)`, `qgh(n,m)`, `L(n,m)`, `LH(n,m,s)` or `H(n)`.
    expr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated identity tags; all tags when omitted.
    #[arg(long)]
    tags: Option<String>,
    /// Largest value of the indices k, l, n, r.
    #[arg(long, default_value_t = 4)]
    max: u32,
    /// Largest value of the shape indices m, s.
    #[arg(long, default_value_t = 3)]
    ms: u32,
    #[arg(long, env = "QLGHP_Q", allow_hyphen_values = true, default_value = "1/2,2/3,3", value_parser = q_values)]
    q: QList,
    /// Truncation order of series identities.
    #[arg(long = "N", env = "QLGHP_N", default_value_t = 12)]
    order: u32,
    /// Number of random instances for the rearrangement lemmas.
    #[arg(long, default_value_t = 100)]
    seeds: u32,
    /// Certify each pass as an identity in q.
    #[arg(long)]
    certify: bool,
    /// Also run the reading referee and the specialization coherence checks.
    #[arg(long)]
    referee: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFamily {
    #[value(name = "L")]
    L,
    #[value(name = "LH")]
    Lh,
    #[value(name = "gh")]
    Gh,
    #[value(name = "qgh")]
    Qgh,
    #[value(name = "H")]
    H,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: TableFamily,
    #[arg(long, default_value = "1", value_parser = index_range)]
    m: RangeInclusive<u32>,
    #[arg(long, default_value = "1", value_parser = index_range)]
    s: RangeInclusive<u32>,
    #[arg(long, default_value = "0..4", value_parser = index_range)]
    n: RangeInclusive<u32>,
    #[arg(long, env = "QLGHP_Q", allow_hyphen_values = true, default_value = "1/2", value_parser = q_value)]
    q: Rational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GfFamily {
    #[value(name = "L")]
    L,
    #[value(name = "LH")]
    Lh,
}

#[derive(Debug, Args)]
struct GfArgs {
    #[arg(long, value_enum, default_value_t = GfFamily::Lh)]
    family: GfFamily,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    s: u32,
    /// Highest power of t compared.
    #[arg(long = "N", env = "QLGHP_N", default_value_t = 6)]
    order: u32,
    #[arg(long, env = "QLGHP_Q", allow_hyphen_values = true, default_value = "1/2", value_parser = q_value)]
    q: Rational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome::ok(text) };
        }
    };
    match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Table(a) => cmd_table(&a),
        Command::GfCheck(a) => cmd_gf_check(&a),
    }
}

/// `(x,y,z|q)` argument list with the value of `q` filled in.
fn latex_with_q(spec: &FamilySpec, q: &Rational) -> String {
    let name = render::family_latex(spec);
    match spec.family {
        Family::ClassicalGh { .. } => name,
        _ => name.replacen("|q)", &format!("|{})", render::rational_latex(q)), 1),
    }
}

fn cmd_eval(a: &EvalArgs) -> Outcome {
    let expr = match parse_family(&a.expr) {
        Ok(e) => e,
        Err(e) => return Outcome::usage(format!("{}\n", e.render(&a.expr))),
    };
    let poly = match expr.spec.build(&QContext::new(a.q.clone())) {
        Ok(p) => p,
        Err(e) => return Outcome::from_error(&e),
    };
    let out = match a.format {
        Format::Text => format!("{poly}\n"),
        Format::Json => {
            let mut doc = poly_json(&poly);
            doc["family"] = json!(expr.spec.to_string());
            doc["q"] = json!(format_rational(&a.q));
            format!("{doc}\n")
        }
        Format::Latex => format!("{} = {}\n", latex_with_q(&expr.spec, &a.q), poly.to_latex()),
    };
    Outcome::ok(out)
}

fn parse_tags(tags: &Option<String>) -> Result<Vec<IdentityId>, String> {
    let Some(list) = tags else { return Ok(IdentityId::all()) };
    let mut ids = Vec::new();
    for tag in list.split(',').map(str::trim) {
        if tag.is_empty() {
            return Err("error: empty identity tag in --tags\n".into());
        }
        let id = tag.parse::<IdentityId>().map_err(|e| format!("error: {e}\n"))?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    Ok(ids)
}

fn role_name(role: Role) -> &'static str {
    match role {
        Role::Claim => "claim",
        Role::Reading => "reading",
        Role::Diagnostic => "diagnostic",
    }
}

fn report_line(r: &VerifyReport) -> String {
    let mut line = format!("{} {}", r.status.as_str(), r.case);
    let role = r.case.id.role();
    if role != Role::Claim {
        let _ = write!(line, " ({})", role_name(role));
    }
    if let Some(c) = &r.certificate {
        let _ = write!(line, " [bound {}, {} points]", c.bound, c.points.len());
    }
    if let Some(e) = &r.error {
        let _ = write!(line, " error: {e}");
    }
    line
}

fn report_json(r: &VerifyReport) -> Value {
    let params: serde_json::Map<String, Value> =
        r.case.id.params().iter().map(|&p| (p.name().to_string(), json!(r.case.params.get(p)))).collect();
    json!({
        "tag": r.case.id.as_str(),
        "role": role_name(r.case.id.role()),
        "params": params,
        "q": r.case.q.as_ref().map(format_rational),
        "status": r.status.as_str(),
        "difference": render::terms_json(&r.difference),
        "elapsed_us": r.elapsed.as_micros() as u64,
        "error": r.error.as_ref().map(|e| e.to_string()),
        "certificate": r.certificate.as_ref().map(|c| json!({
            "bound": c.bound,
            "points": c.points.iter().map(format_rational).collect::<Vec<_>>(),
        })),
    })
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let ids = match parse_tags(&a.tags) {
        Ok(ids) => ids,
        Err(msg) => return Outcome::usage(msg),
    };
    if a.ms == 0 {
        return Outcome::usage("error: --ms must be at least 1\n");
    }
    let grid = Grid { index: 0..=a.max, shape: 1..=a.ms, order: a.order, seeds: a.seeds };
    let reports = verify_suite(&ids, &grid, &a.q.0, a.certify);
    let claims = || reports.iter().filter(|r| r.case.id.role() == Role::Claim);
    let claim_failures = claims().filter(|r| !r.passed()).count();
    let arithmetic = claims().any(|r| r.error.as_ref().is_some_and(Error::is_arithmetic));
    let passes = reports.iter().filter(|r| r.passed()).count();
    let (referees, coherence) =
        if a.referee { (referee(&grid, &a.q.0), coherence_checks(&grid, &a.q.0)) } else { (Vec::new(), Vec::new()) };

    let mut out = String::new();
    match a.format {
        ReportFormat::Text => {
            for r in &reports {
                let _ = writeln!(out, "{}", report_line(r));
            }
            for r in &referees {
                let winner = r.winner().map(|w| w.as_str()).unwrap_or_else(|| "none".into());
                let _ = writeln!(
                    out,
                    "referee {} {}/{} vs {} {}/{}: winner {}",
                    r.default, r.default_passes, r.cases, r.literal, r.literal_passes, r.cases, winner
                );
            }
            for c in &coherence {
                let status = if c.passed() { "pass" } else { "fail" };
                let _ = write!(out, "coherence {status} {} {}/{}", c.name, c.agreements, c.cases);
                if let Some(f) = &c.first_failure {
                    let _ = write!(out, " first failure: {f}");
                }
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "summary: {} cases, {} pass, {} fail, {} failing claims",
                reports.len(),
                passes,
                reports.len() - passes,
                claim_failures
            );
        }
        ReportFormat::Json => {
            let doc = json!({
                "schema": render::SCHEMA,
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                "referee": referees.iter().map(|r| json!({
                    "default": r.default.as_str(),
                    "literal": r.literal.as_str(),
                    "cases": r.cases,
                    "default_passes": r.default_passes,
                    "literal_passes": r.literal_passes,
                    "winner": r.winner().map(|w| w.as_str()),
                })).collect::<Vec<_>>(),
                "coherence": coherence.iter().map(|c| json!({
                    "name": c.name,
                    "cases": c.cases,
                    "agreements": c.agreements,
                    "passed": c.passed(),
                    "first_failure": c.first_failure,
                })).collect::<Vec<_>>(),
                "summary": {
                    "cases": reports.len(),
                    "passes": passes,
                    "failing_claims": claim_failures,
                },
            });
            let _ = writeln!(out, "{doc}");
        }
    }
    let code = if arithmetic {
        EXIT_ARITHMETIC
    } else if claim_failures > 0 {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    Outcome { code, stdout: out, stderr: String::new() }
}

fn check_shape(range: &RangeInclusive<u32>, name: &str) -> Result<(), String> {
    if *range.start() == 0 || *range.end() > parse::MAX_INDEX {
        return Err(format!("error: --{name} must lie in 1..{}\n", parse::MAX_INDEX));
    }
    Ok(())
}

fn table_specs(a: &TableArgs) -> Result<Vec<FamilySpec>, String> {
    if *a.n.end() > parse::MAX_DEGREE {
        return Err(format!("error: --n must lie in 0..{}\n", parse::MAX_DEGREE));
    }
    let uses_m = a.family != TableFamily::H;
    if uses_m {
        check_shape(&a.m, "m")?;
    }
    if a.family == TableFamily::Lh {
        check_shape(&a.s, "s")?;
    }
    let mut families = Vec::new();
    for m in a.m.clone() {
        for s in a.s.clone() {
            let family = match a.family {
                TableFamily::L => Family::Q2dlp { m },
                TableFamily::Lh => Family::QLghp { m, s },
                TableFamily::Gh => Family::ClassicalGh { m },
                TableFamily::Qgh => Family::QGh { m },
                TableFamily::H => Family::QHermite,
            };
            if !families.contains(&family) {
                families.push(family);
            }
        }
    }
    Ok(families.into_iter().flat_map(|f| a.n.clone().map(move |n| FamilySpec::new(f, n))).collect())
}

fn cmd_table(a: &TableArgs) -> Outcome {
    let specs = match table_specs(a) {
        Ok(s) => s,
        Err(msg) => return Outcome::usage(msg),
    };
    let ctx = QContext::new(a.q.clone());
    let mut rows = Vec::with_capacity(specs.len());
    for spec in specs {
        match spec.build(&ctx) {
            Ok(p) => rows.push((spec, p)),
            Err(e) => return Outcome::from_error(&e),
        }
    }
    let mut out = String::new();
    match a.format {
        Format::Text => {
            for (spec, p) in &rows {
                let _ = writeln!(out, "{spec} = {p}");
            }
        }
        Format::Json => {
            let doc = json!({
                "schema": render::SCHEMA,
                "q": format_rational(&a.q),
                "rows": rows.iter().map(|(spec, p)| json!({
                    "family": spec.to_string(),
                    "n": spec.n,
                    "terms": render::terms_json(p),
                })).collect::<Vec<_>>(),
            });
            let _ = writeln!(out, "{doc}");
        }
        Format::Latex => {
            out.push_str("\\begin{align*}\n");
            for (i, (spec, p)) in rows.iter().enumerate() {
                let end = if i + 1 < rows.len() { " \\\\" } else { "" };
                let _ = writeln!(out, "{} &= {}{end}", latex_with_q(spec, &a.q), p.to_latex());
            }
            out.push_str("\\end{align*}\n");
        }
    }
    Outcome::ok(out)
}

/// One row of a generating-function check.
struct GfRow {
    n: u32,
    /// `[n]_q!` times the coefficient of `t^n` in the kernel product.
    series: MPoly,
    family: MPoly,
}

fn gf_rows(a: &GfArgs) -> crate::error::Result<(Family, Vec<GfRow>)> {
    let family = match a.family {
        GfFamily::L => Family::Q2dlp { m: a.m },
        GfFamily::Lh => Family::QLghp { m: a.m, s: a.s },
    };
    family.validate()?;
    let ctx = QContext::new(a.q.clone());
    let s = (a.family == GfFamily::Lh).then_some(a.s);
    let kernel = generating_kernel(&ctx, a.m, s, a.order as usize)?;
    let mut rows = Vec::new();
    for n in 0..=a.order {
        let series = kernel.coeff(n as usize)?.scale(&ctx.q_factorial(1, n));
        rows.push(GfRow { n, series, family: FamilySpec::new(family, n).build(&ctx)? });
    }
    Ok((family, rows))
}

fn cmd_gf_check(a: &GfArgs) -> Outcome {
    if a.order > parse::MAX_DEGREE {
        return Outcome::usage(format!("error: --N must be at most {}\n", parse::MAX_DEGREE));
    }
    let (family, rows) = match gf_rows(a) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let passes = rows.iter().filter(|r| r.series == r.family).count();
    let label = FamilySpec::new(family, 0).to_string().replacen("(0", "(n", 1);
    let q = format_rational(&a.q);
    let mut out = String::new();
    match a.format {
        Format::Text => {
            let _ = writeln!(out, "gf-check {label} q={q} N={}", a.order);
            for r in &rows {
                if r.series == r.family {
                    let _ = writeln!(out, "n={} pass {}", r.n, r.series);
                } else {
                    let _ = writeln!(out, "n={} fail {} != {}", r.n, r.series, r.family);
                }
            }
            let _ = writeln!(out, "{passes}/{} orders pass", rows.len());
        }
        Format::Json => {
            let doc = json!({
                "schema": render::SCHEMA,
                "family": label,
                "q": q,
                "N": a.order,
                "rows": rows.iter().map(|r| json!({
                    "n": r.n,
                    "status": if r.series == r.family { "pass" } else { "fail" },
                    "series": render::terms_json(&r.series),
                    "family": render::terms_json(&r.family),
                })).collect::<Vec<_>>(),
                "passes": passes,
            });
            let _ = writeln!(out, "{doc}");
        }
        Format::Latex => {
            out.push_str("\\begin{array}{rll}\n");
            for r in &rows {
                let status = if r.series == r.family { "pass" } else { "fail" };
                let spec = FamilySpec::new(family, r.n);
                let _ = writeln!(
                    out,
                    "{} & {} = {} & \\text{{{status}}} \\\\",
                    r.n,
                    latex_with_q(&spec, &a.q),
                    r.series.to_latex()
                );
            }
            out.push_str("\\end{array}\n");
        }
    }
    let code = if passes == rows.len() { EXIT_OK } else { EXIT_FAILURE };
    Outcome { code, stdout: out, stderr: String::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("qlghp").chain(args.iter().copied()))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(run_args(&["eval", "--q", "1/2", "LH(2,2,2)"]).stdout, "y^2 + 3/2*x + 3/2*z\n");
        assert_eq!(run_args(&["eval", "--q", "1/2", "LH(0,2,2)"]).stdout, "1\n");
        assert_eq!(run_args(&["eval", "--q", "1", "gh(2,2)"]).stdout, "x^2 + 2*y\n");
    }

    #[test]
    fn eval_json_round_trips_to_text() {
        let text = run_args(&["eval", "--q", "2/3", "LH(5,2,3)"]).stdout;
        let json = run_args(&["eval", "--q", "2/3", "--format", "json", "LH(5,2,3)"]).stdout;
        assert_eq!(format!("{}\n", poly_from_json(&json).unwrap()), text);
    }

    #[test]
    fn eval_latex_header() {
        let out = run_args(&["eval", "--q", "1/2", "--format", "latex", "LH(2,2,2)"]).stdout;
        assert!(out.starts_with("{}_LH_{2}^{(2,2)}(x,y,z|\\frac{1}{2}) = "), "{out}");
    }

    #[test]
    fn exit_codes() {
        let bad = run_args(&["eval", "LH(2 2,2)"]);
        assert_eq!(bad.code, EXIT_USAGE);
        assert!(bad.stderr.contains('^'));
        assert_eq!(run_args(&["eval", "--q", "0.5", "H(2)"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["eval", "--q", "-1", "qgh(2,1)"]).code, EXIT_ARITHMETIC);
        assert_eq!(run_args(&["verify", "--tags", ""]).code, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "--tags", "X9.9"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["table", "--family", "L", "--n", "3..1"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn verify_passing_tag() {
        let out = run_args(&["verify", "--tags", "H3.24", "--max", "6"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
        assert_eq!(out.stdout.lines().count(), 7 + 1);
    }

    #[test]
    fn table_rows() {
        let out = run_args(&["table", "--family", "L", "--m", "1", "--n", "0..2", "--q", "1/2"]);
        assert_eq!(out.code, EXIT_OK);
        let names: Vec<&str> = out.stdout.lines().map(|l| l.split(" = ").next().unwrap()).collect();
        assert_eq!(names, ["L(0,1)", "L(1,1)", "L(2,1)"]);
    }

    #[test]
    fn gf_check_rows() {
        let out = run_args(&["gf-check", "--family", "LH", "--m", "2", "--s", "2", "--N", "6", "--q", "1/2"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
        assert_eq!(out.stdout.lines().filter(|l| l.starts_with("n=")).count(), 7);
        assert!(out.stdout.ends_with("7/7 orders pass\n"));
        let single = run_args(&["gf-check", "--N", "0"]);
        assert_eq!(single.stdout.lines().filter(|l| l.starts_with("n=")).collect::<Vec<_>>(), ["n=0 pass 1"]);
    }
}
