//! The `msym` command line.
//!
//! [`run`] takes the argument list, the `MSYM_FORMAT` override and the engine
//! to use, writes results to `out` and diagnostics to `err`, and returns the
//! process exit code.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use msym_core::arith::gcd;
use msym_core::oracle::{self, SweepReport};
use msym_core::rewrite::{msym_enumerate, rationality, representative, EngineError, Status};
use msym_core::term::{parse, DimensionError, ParseError};
use msym_core::{BrauerError, BrauerModel, Context, Engine, VarietyTerm};

pub const SCHEMA: &str = "msym/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_CONTEXT: u8 = 2;
pub const EXIT_UNRESOLVED: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "msym", version, about = "Stable birational classes of symmetric powers, Grassmannians and map spaces of a Severi-Brauer variety")]
struct Cli {
    /// Output format; MSYM_FORMAT overrides it.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ContextArgs {
    /// Order N of the cyclic Brauer model Z/N.
    #[arg(long)]
    order: u64,
    /// Class a of P in Z/N [default: 1 mod N].
    #[arg(long)]
    class: Option<u64>,
    /// Dimension n of P [default: index - 1].
    #[arg(long)]
    dim: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Monoid,
    Confluence,
    Dims,
    Maps,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stable class, normal form and rationality of a term, with its derivation.
    Normalize {
        expr: String,
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// The classes over the base of the context and their gcd table.
    Enumerate {
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Dimension of a term, and of one birational expansion when available.
    Dims {
        expr: String,
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Brute-force sweeps of the underlying arithmetic.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest index for the monoid sweep.
        #[arg(long, default_value_t = 360)]
        max_index: u64,
        /// Largest index of the contexts in the confluence sweep.
        #[arg(long, default_value_t = 24)]
        max_confluence_index: u64,
        /// Random terms per confluence context.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest dimension for the dimension identities.
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        /// Largest model order for the maps sweep.
        #[arg(long, default_value_t = 100)]
        max_order: u64,
        /// Largest source dimension for the maps sweep.
        #[arg(long, default_value_t = 12)]
        max_m: u64,
    },
}

struct Io<'a> {
    format: Format,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, record: Value, text: impl FnOnce() -> String) {
        let _ = match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string_pretty(&record).expect("json")),
            Format::Text => write!(self.out, "{}", text()),
        };
    }

    fn diag(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "msym: {msg}");
    }
}

pub fn run<I, T>(
    args: I,
    format_override: Option<&str>,
    engine: &Engine,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let format = match format_override {
        None => cli.format,
        Some(s) => match Format::from_str(s, true) {
            Ok(f) => f,
            Err(_) => {
                let _ = writeln!(err, "msym: MSYM_FORMAT must be text or json, got `{s}`");
                return EXIT_INPUT;
            }
        },
    };
    let mut io = Io { format, out, err };
    match cli.command {
        Command::Normalize { expr, ctx } => normalize(&mut io, engine, &expr, &ctx),
        Command::Enumerate { ctx } => enumerate(&mut io, &ctx),
        Command::Dims { expr, ctx } => dims(&mut io, engine, &expr, &ctx),
        Command::Verify {
            suite,
            max_index,
            max_confluence_index,
            samples,
            seed,
            n_max,
            max_order,
            max_m,
        } => {
            let plan = VerifyPlan {
                suite,
                max_index,
                max_confluence_index,
                samples,
                seed,
                n_max,
                max_order,
                max_m,
            };
            verify(&mut io, engine, &plan)
        }
    }
}

fn build_context(args: &ContextArgs) -> Result<Context, BrauerError> {
    let model = BrauerModel::new(args.order)?;
    let class = model.class(args.class.unwrap_or(1 % args.order))?;
    let dim = args.dim.unwrap_or(class.index() - 1);
    Context::from_parts(args.order, class.value(), dim)
}

fn context_json(ctx: &Context) -> Value {
    let c = ctx.base().class();
    json!({
        "order": ctx.model().order(),
        "class": c.value(),
        "dim": ctx.dim(),
        "index": c.index(),
        "period": c.period(),
    })
}

fn context_text(ctx: &Context) -> String {
    let c = ctx.base().class();
    format!(
        "Z/{}, class {}, dim {} (index {}, period {})",
        ctx.model().order(),
        c.value(),
        ctx.dim(),
        c.index(),
        c.period()
    )
}

/// Parses `expr` or reports the failure with the matching exit code.
fn setup(io: &mut Io, expr: &str, args: &ContextArgs) -> Result<(Context, VarietyTerm), u8> {
    let ctx = build_context(args).map_err(|e| {
        io.diag(format_args!("invalid context: {e}"));
        EXIT_CONTEXT
    })?;
    let term = parse(expr, &ctx).map_err(|e| {
        match &e {
            ParseError::Syntax(s) => {
                io.diag(format_args!("{e}"));
                let _ = writeln!(io.err, "  {expr}\n  {}^", " ".repeat(s.position));
            }
            ParseError::Invalid(_) => io.diag(format_args!("{e}")),
        }
        EXIT_INPUT
    })?;
    Ok((ctx, term))
}

fn normalize(io: &mut Io, engine: &Engine, expr: &str, args: &ContextArgs) -> u8 {
    let (ctx, term) = match setup(io, expr, args) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let (class, mut derivation) = match engine.stable_class(&term, &ctx) {
        Ok(x) => x,
        Err(e) => {
            io.diag(e);
            return EXIT_INPUT;
        }
    };
    let rep = match engine.normal_form(&term, &ctx) {
        Ok((rep, full)) => {
            derivation = full;
            Some(rep)
        }
        Err(EngineError::NoCanonicalRepresentative(_)) => None,
        Err(e) => {
            io.diag(e);
            return EXIT_INPUT;
        }
    };
    let verdict = rationality(&class);
    let mut warnings: Vec<String> = Vec::new();
    warnings.extend(class.exceptional_cases().map(|c| format!("exceptional: {c}")));
    warnings.extend(class.unresolved_reasons().map(|r| format!("unresolved: {r}")));
    if rep.is_none() && class.is_resolved() {
        warnings.push("no single-base representative".to_owned());
    }
    let steps = derivation.report();

    let record = json!({
        "schema": SCHEMA,
        "command": "normalize",
        "input": expr,
        "term": term.to_string(),
        "context": context_json(&ctx),
        "stable_class": class.summary(),
        "stable_class_text": class.to_string(),
        "normal_form": rep.as_ref().map(ToString::to_string),
        "stably_rational": verdict,
        "derivation": steps,
        "warnings": warnings,
    });
    io.emit(record, || {
        let mut s = String::new();
        s += &format!("term:             {term}\n");
        s += &format!("context:          {}\n", context_text(&ctx));
        s += &format!("stable class:     {class}\n");
        match &rep {
            Some(rep) => s += &format!("normal form:      {rep}\n"),
            None => s += "normal form:      none\n",
        }
        s += &format!("stably rational:  {verdict}\n");
        s += "derivation:\n";
        for (k, step) in steps.iter().enumerate() {
            s += &format!(
                "  {:>3}. {:<3} at {:?}: {} => {}\n         {}: {}\n",
                k + 1,
                step.rule,
                step.path,
                step.before,
                step.after,
                step.name,
                step.citation
            );
        }
        s
    });
    for w in &warnings {
        io.diag(format_args!("warning: {w}"));
    }
    match class.status() {
        Status::Resolved => EXIT_OK,
        _ => EXIT_UNRESOLVED,
    }
}

fn enumerate(io: &mut Io, args: &ContextArgs) -> u8 {
    let ctx = match build_context(args) {
        Ok(ctx) => ctx,
        Err(e) => {
            io.diag(format_args!("invalid context: {e}"));
            return EXIT_CONTEXT;
        }
    };
    let i = ctx.index();
    let classes = msym_enumerate(&ctx);
    let divisors: Vec<u64> = classes
        .iter()
        .map(|k| k.divisor_for(ctx.base().class()).unwrap_or(i))
        .collect();
    let reps: Vec<String> = classes
        .iter()
        .map(|k| representative(k, &ctx).expect("enumerated classes are resolved").to_string())
        .collect();
    let table: Vec<Vec<u64>> = divisors
        .iter()
        .map(|a| divisors.iter().map(|b| gcd(*a, *b)).collect())
        .collect();
    let elements: Vec<Value> = classes
        .iter()
        .zip(&divisors)
        .zip(&reps)
        .map(|((k, d), rep)| {
            json!({
                "divisor": d,
                "representative": rep,
                "identity": k.is_identity(),
                "stably_rational": rationality(k),
            })
        })
        .collect();
    let record = json!({
        "schema": SCHEMA,
        "command": "enumerate",
        "context": context_json(&ctx),
        "elements": elements,
        "gcd_table": table,
    });
    io.emit(record, || {
        let mut s = format!("context: {}\n{} classes:\n", context_text(&ctx), divisors.len());
        for ((k, d), rep) in classes.iter().zip(&divisors).zip(&reps) {
            let note = if k.is_identity() { "  (identity)" } else { "" };
            s += &format!("  g = {d:<4} {rep}{note}\n");
        }
        let width = i.to_string().len().max(3);
        s += &format!("gcd table:\n  {:>width$} |", "");
        for d in &divisors {
            s += &format!(" {d:>width$}");
        }
        s += "\n";
        for (a, row) in divisors.iter().zip(&table) {
            s += &format!("  {a:>width$} |");
            for v in row {
                s += &format!(" {v:>width$}");
            }
            s += "\n";
        }
        s
    });
    EXIT_OK
}

fn dims(io: &mut Io, engine: &Engine, expr: &str, args: &ContextArgs) -> u8 {
    let (ctx, term) = match setup(io, expr, args) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let (dimension, code, warning) = match term.dimension() {
        Ok(d) => (Some(d), EXIT_OK, None),
        Err(DimensionError::Exceptional { coarse }) => (
            None,
            EXIT_UNRESOLVED,
            Some(format!("exceptional: only the coarse space is counted, of dimension {coarse}")),
        ),
        Err(e) => {
            io.diag(e);
            return EXIT_INPUT;
        }
    };
    let expansion = engine.birational_expand(&term, &ctx).ok().map(|(out, derivation)| {
        let rule = derivation.steps()[0].rule;
        (out.to_string(), out.dimension().ok(), rule.id(), rule.name())
    });
    let record = json!({
        "schema": SCHEMA,
        "command": "dims",
        "input": expr,
        "term": term.to_string(),
        "context": context_json(&ctx),
        "dimension": dimension,
        "expanded": expansion.as_ref().map(|(t, d, id, name)| json!({
            "term": t,
            "dimension": d,
            "rule": id,
            "name": name,
        })),
        "warnings": warning.iter().collect::<Vec<_>>(),
    });
    io.emit(record, || {
        let mut s = format!("term:      {term}\n");
        match dimension {
            Some(d) => s += &format!("dimension: {d}\n"),
            None => s += "dimension: none\n",
        }
        if let Some((t, d, id, _)) = &expansion {
            let d = d.map_or_else(|| "none".to_owned(), |d| d.to_string());
            s += &format!("expanded:  {t}  ({id}, dimension {d})\n");
        }
        s
    });
    if let Some(w) = warning {
        io.diag(format_args!("warning: {w}"));
    }
    code
}

struct VerifyPlan {
    suite: Suite,
    max_index: u64,
    max_confluence_index: u64,
    samples: u64,
    seed: u64,
    n_max: u64,
    max_order: u64,
    max_m: u64,
}

/// Runs the selected sweeps in a fixed order.
pub fn sweep_reports(engine: &Engine, suites: &[&str], plan: &[(&str, u64)]) -> Vec<SweepReport> {
    let get = |k: &str| plan.iter().find(|(n, _)| *n == k).map(|(_, v)| *v).expect("plan key");
    let mut reports = Vec::new();
    for suite in suites {
        let report = match *suite {
            "monoid" => {
                let mut r = SweepReport::new("monoid", &[("max_index", get("max_index"))]);
                for i in 1..=get("max_index") {
                    r.absorb(oracle::check_monoid(i, engine));
                }
                r
            }
            "confluence" => {
                let mut r = SweepReport::new(
                    "confluence",
                    &[
                        ("max_index", get("max_confluence_index")),
                        ("samples", get("samples")),
                        ("seed", get("seed")),
                    ],
                );
                for i in 1..=get("max_confluence_index") {
                    let ctx = Context::with_index(i).expect("positive index");
                    let seed = get("seed").wrapping_add(i);
                    r.absorb(oracle::check_confluence(&ctx, get("samples"), seed, engine));
                }
                r
            }
            "dims" => oracle::check_dimension_identities(get("n_max")),
            "maps" => oracle::check_maps_lemma(get("max_order"), get("max_m")),
            other => unreachable!("unknown suite {other}"),
        };
        reports.push(report);
    }
    reports
}

fn verify(io: &mut Io, engine: &Engine, plan: &VerifyPlan) -> u8 {
    let suites: &[&str] = match plan.suite {
        Suite::Monoid => &["monoid"],
        Suite::Confluence => &["confluence"],
        Suite::Dims => &["dims"],
        Suite::Maps => &["maps"],
        Suite::All => &["monoid", "confluence", "dims", "maps"],
    };
    let reports = sweep_reports(
        engine,
        suites,
        &[
            ("max_index", plan.max_index),
            ("max_confluence_index", plan.max_confluence_index),
            ("samples", plan.samples),
            ("seed", plan.seed),
            ("n_max", plan.n_max),
            ("max_order", plan.max_order),
            ("max_m", plan.max_m),
        ],
    );
    let passed = reports.iter().all(SweepReport::passed);
    let record = json!({
        "schema": SCHEMA,
        "command": "verify",
        "passed": passed,
        "reports": reports,
    });
    io.emit(record, || {
        let mut s = String::new();
        for r in &reports {
            let ranges: Vec<String> = r.ranges.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let verdict = if r.passed() { "ok" } else { "FAILED" };
            s += &format!(
                "{:<11} {:<6} {} cases, {} failures ({})\n",
                r.suite,
                verdict,
                r.cases_checked,
                r.failures_total,
                ranges.join(" ")
            );
            if let Some(f) = r.first_failure() {
                s += &format!("  first failure: {}: expected {}, got {}\n", f.inputs, f.expected, f.actual);
            }
        }
        s
    });
    if passed {
        EXIT_OK
    } else {
        for r in reports.iter().filter(|r| !r.passed()) {
            let f = r.first_failure().expect("failed report has a failure");
            io.diag(format_args!(
                "{} sweep failed at {}: expected {}, got {}",
                r.suite, f.inputs, f.expected, f.actual
            ));
        }
        EXIT_VERIFY
    }
}
