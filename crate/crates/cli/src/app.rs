use std::ffi::OsString;
use std::fmt::Write as _;

use arith_monoid::arith::{self, ArithElement};
use arith_monoid::oracle::{self, CompositionCheck};
use arith_monoid::padic::{self, CantorPoint, DigitOrder};
use arith_monoid::polycyclic::{PolyElement, Word};
use arith_monoid::{CongruenceClass, Natural, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{self, EvalError, SyntaxError};

#[derive(Debug, Parser)]
#[command(name = "arithmon", version, about = "Exact arithmetic in the arithmetic inverse monoid")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Nf { expr: String },
    /// Apply an expression to a natural number.
    Apply { expr: String, n: Natural },
    /// Intersect aN+b with cN+d.
    Intersect { a: Natural, b: Natural, c: Natural, d: Natural },
    /// Write R(a,b) as a product of prime-modulus generators.
    Factor { a: Natural, b: Natural },
    /// p-adic norms, distances and Cantor-point evaluation.
    Padic {
        #[command(subcommand)]
        command: PadicCommand,
    },
    /// Polycyclic monoid operations.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
    /// Check symbolic products against finite windows.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run randomised consistency checks.
    Selftest {
        #[arg(long, default_value_t = 200)]
        samples: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PadicCommand {
    /// ‖n‖_p
    Norm { p: u32, n: Natural },
    /// ‖a − b‖_p
    Dist { p: u32, a: Natural, b: Natural },
    /// Evaluate a Cantor point at n.
    Eval {
        p: u32,
        n: Natural,
        /// `zero`, or `cant:<a>` for the digits of a.
        #[arg(long, default_value = "zero")]
        gamma: String,
        #[arg(long, value_enum, default_value_t = Order::Msb)]
        digit_order: Order,
    },
    /// CSV table of ‖n‖_p for from ≤ n ≤ to.
    Table { p: u32, from: u64, to: u64 },
    /// Compare eval_cant(a)(n) with ‖n − a‖_p on a grid.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    primes: Vec<u32>,
    #[arg(long, default_value_t = 20)]
    a_max: u64,
    #[arg(long, default_value_t = 200)]
    n_max: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Msb,
    Lsb,
}

#[derive(Debug, Subcommand)]
enum PolyCommand {
    /// (v‡u)(v'‡u') over k letters.
    Compose { k: u32, v: String, u: String, v2: String, u2: String },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Check every product in an expression.
    Check {
        expr: String,
        #[arg(long, default_value_t = oracle::DEFAULT_WINDOW)]
        window: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Domain(#[from] arith_monoid::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 2,
            _ => 1,
        }
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, ..Outcome::default() }
            } else {
                Outcome { code, stderr: text, ..Outcome::default() }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(()) => Outcome { code: 0, stdout: out, ..Outcome::default() },
        Err(e) => {
            let stderr = format!("error: {e}\n");
            if cli.json {
                out = format!("{}\n", json!({ "error": e.to_string(), "exit": e.exit_code() }));
            }
            Outcome { code: e.exit_code(), stdout: out, stderr }
        }
    }
}

fn evaluate(text: &str) -> Result<ArithElement, CliError> {
    Ok(expr::evaluate(&expr::parse(text)?)?)
}

fn class_json(c: &CongruenceClass) -> Value {
    json!({ "mod": c.modulus().to_string(), "res": c.residue().to_string() })
}

fn rational_json(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn poly_json(e: &PolyElement) -> Value {
    match e {
        PolyElement::Zero => json!({ "zero": true }),
        PolyElement::Pair { up, down } => {
            json!({ "k": up.k(), "up": up.to_string(), "down": down.to_string() })
        }
    }
}

fn emit(out: &mut String, json: bool, value: Value, text: impl std::fmt::Display) {
    if json {
        writeln!(out, "{value}").expect("write to string");
    } else {
        writeln!(out, "{text}").expect("write to string");
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    let j = cli.json;
    match &cli.command {
        Command::Nf { expr } => {
            let e = evaluate(expr)?;
            emit(out, j, e.to_json(), &e);
        }
        Command::Apply { expr, n } => {
            let v = evaluate(expr)?.apply(n);
            let text = v.as_ref().map_or("undef".to_string(), Natural::to_string);
            emit(out, j, json!({ "value": v.map(|v| v.to_string()) }), text);
        }
        Command::Intersect { a, b, c, d } => {
            let x = CongruenceClass::new(a.clone(), b.clone())?;
            let y = CongruenceClass::new(c.clone(), d.clone())?;
            match x.intersect(&y) {
                Some(z) => emit(out, j, class_json(&z), &z),
                None => emit(out, j, json!({ "empty": true }), "empty"),
            }
        }
        Command::Factor { a, b } => {
            let chain = arith::factor_into_prime_generators(a.clone(), b.clone())?;
            if arith::compose_chain(&chain)? != ArithElement::generator(a.clone(), b.clone())? {
                return Err(CliError::Invariant(format!("factorisation of R({a},{b}) does not recompose")));
            }
            let text = chain.iter().map(|(p, q)| format!("R({p},{q})")).collect::<Vec<_>>().join("∘");
            let value = json!({
                "factors": chain.iter().map(|(p, q)| json!({ "mod": p.to_string(), "res": q.to_string() })).collect::<Vec<_>>()
            });
            emit(out, j, value, text);
        }
        Command::Padic { command } => padic_command(command, j, out)?,
        Command::Poly { command: PolyCommand::Compose { k, v, u, v2, u2 } } => {
            let lhs = PolyElement::new(Word::parse(*k, v)?, Word::parse(*k, u)?)?;
            let rhs = PolyElement::new(Word::parse(*k, v2)?, Word::parse(*k, u2)?)?;
            let product = lhs.compose(&rhs)?;
            let text = match &product {
                PolyElement::Zero => "zero".to_string(),
                PolyElement::Pair { up, down } => format!("P({k}; \"{up}\",\"{down}\")"),
            };
            emit(out, j, poly_json(&product), text);
        }
        Command::Oracle { command: OracleCommand::Check { expr, window } } => {
            oracle_check(expr, *window, j, out)?;
        }
        Command::Selftest { samples } => selftest(cli.seed, *samples, j, out)?,
    }
    Ok(())
}

fn padic_command(command: &PadicCommand, j: bool, out: &mut String) -> Result<(), CliError> {
    match command {
        PadicCommand::Norm { p, n } => {
            let v = padic::norm(*p, n)?;
            emit(out, j, rational_json(&v), &v);
        }
        PadicCommand::Dist { p, a, b } => {
            let v = padic::distance(*p, a, b)?;
            emit(out, j, rational_json(&v), &v);
        }
        PadicCommand::Eval { p, n, gamma, digit_order } => {
            let order = match digit_order {
                Order::Msb => DigitOrder::MsbFirst,
                Order::Lsb => DigitOrder::LsbFirst,
            };
            let point = if gamma == "zero" {
                CantorPoint::constant_zero(*p)?
            } else if let Some(a) = gamma.strip_prefix("cant:") {
                let a: Natural = a.parse().map_err(|_| {
                    arith_monoid::Error::Malformed(format!("bad Cantor point `{gamma}`"))
                })?;
                CantorPoint::cant(*p, &a, order)?
            } else {
                return Err(arith_monoid::Error::Malformed(format!(
                    "bad Cantor point `{gamma}`: expected `zero` or `cant:<a>`"
                ))
                .into());
            };
            let v = padic::eval_gamma(&point, n)?;
            emit(out, j, rational_json(&v), &v);
        }
        PadicCommand::Table { p, from, to } => {
            if j {
                let rows = (*from..=*to)
                    .map(|n| {
                        let v = padic::norm(*p, &Natural::from(n))?;
                        Ok(json!({ "n": n.to_string(), "num": v.numer().to_string(), "den": v.denom().to_string() }))
                    })
                    .collect::<Result<Vec<_>, arith_monoid::Error>>()?;
                writeln!(out, "{}", Value::Array(rows)).expect("write to string");
            } else {
                let mut buf = Vec::new();
                padic::write_norm_table(*p, *from, *to, &mut buf)?;
                out.push_str(&String::from_utf8(buf).expect("ascii table"));
            }
        }
        PadicCommand::Audit(args) => {
            let report = padic::corollary_audit(&args.primes, args.a_max, args.n_max)?;
            let cells = report
                .cells
                .iter()
                .map(|c| {
                    json!({
                        "p": c.prime,
                        "order": c.order.to_string(),
                        "cases": c.cases,
                        "holds": c.holds,
                        "counterexamples": c.counterexamples.iter().map(|(a, n, lhs, rhs)| json!({
                            "a": a, "n": n, "eval": lhs.to_string(), "distance": rhs.to_string()
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>();
            let value = json!({ "a_max": report.a_max, "n_max": report.n_max, "cells": cells });
            if j {
                writeln!(out, "{value}").expect("write to string");
            } else {
                write!(out, "{report}").expect("write to string");
            }
        }
    }
    Ok(())
}

fn oracle_check(text: &str, window: u64, j: bool, out: &mut String) -> Result<(), CliError> {
    let steps = expr::parse(text)?.products()?;
    let mut results = Vec::new();
    for (f, g) in &steps {
        let check = oracle::check_compose(f, g, window)?;
        results.push((f, g, check));
    }
    let failed = results.iter().find(|(_, _, c)| !c.agrees());
    if j {
        let checks = results
            .iter()
            .map(|(f, g, c)| {
                json!({
                    "left": f.to_string(), "right": g.to_string(),
                    "margin": c.margin, "compared": c.compared,
                    "first_disagreement": c.first_disagreement,
                })
            })
            .collect::<Vec<_>>();
        writeln!(out, "{}", json!({ "window": window, "ok": failed.is_none(), "checks": checks }))
            .expect("write to string");
    } else {
        for (f, g, c) in &results {
            let verdict = match c.first_disagreement {
                None => "ok".to_string(),
                Some(n) => format!("MISMATCH at {n}"),
            };
            writeln!(out, "{verdict}: ({f}) * ({g}), {} points compared, margin {}", c.compared, c.margin)
                .expect("write to string");
        }
        writeln!(out, "{} product(s) checked on window {window}", results.len()).expect("write to string");
    }
    match failed {
        Some((f, g, CompositionCheck { first_disagreement: Some(n), .. })) => Err(CliError::Invariant(
            format!("({f}) * ({g}) disagrees with its window composite at {n}"),
        )),
        _ => Ok(()),
    }
}

fn random_element(rng: &mut ChaCha8Rng) -> ArithElement {
    let mut class = || {
        let m = rng.gen_range(1..=12u32);
        CongruenceClass::new(m, rng.gen_range(0..m)).expect("residue below modulus")
    };
    ArithElement::between(class(), class())
}

fn selftest(seed: u64, samples: u64, j: bool, out: &mut String) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0u64;
    let fail = |what: String| Err(CliError::Invariant(format!("selftest (seed {seed}): {what}")));
    for _ in 0..samples {
        let (f, g, h) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        if f.dagger().dagger() != f || f.compose(&f.dagger()).compose(&f) != f {
            return fail(format!("inverse laws fail for {f}"));
        }
        if f.compose(&g).compose(&h) != f.compose(&g.compose(&h)) {
            return fail(format!("associativity fails for {f}, {g}, {h}"));
        }
        if f.compose(&g).dagger() != g.dagger().compose(&f.dagger()) {
            return fail(format!("converse of ({f}) * ({g}) is wrong"));
        }
        if ArithElement::from_json(&f.to_json())? != f || evaluate(&f.to_string())? != f {
            return fail(format!("{f} does not round-trip"));
        }
        let check = oracle::check_compose(&f, &g, 600)?;
        if let Some(n) = check.first_disagreement {
            return fail(format!("({f}) * ({g}) disagrees with its window composite at {n}"));
        }
        checks += 5;
    }
    if j {
        writeln!(out, "{}", json!({ "seed": seed, "samples": samples, "checks": checks, "ok": true }))
            .expect("write to string");
    } else {
        writeln!(out, "selftest: {checks} checks passed ({samples} samples, seed {seed})")
            .expect("write to string");
    }
    Ok(())
}
