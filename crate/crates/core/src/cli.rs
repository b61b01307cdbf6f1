//! The `palg` command line.

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::algebra::{AlgElement, SymbolAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::laurent::LaurentScalar;
use crate::linkage::{self, SymbolPresentation};
use crate::parse::{parse_scalar_with, Bindings};
use crate::ratfunc::RatFunc;
use crate::report::{field, Check, Report};
use crate::valuation;

#[derive(Parser, Debug)]
#[command(name = "palg", version, about = "Exact computations in symbol p-algebras [alpha, beta)_p")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Turn right-linked [alpha, beta), [gamma, beta) into left-linked presentations
    Link(LinkArgs),
    /// Check (x + t)^p - (x + t) = x^p - x + t^p for t x - x t = k t
    VerifyLemma(LemmaArgs),
    /// Split an element into eigencomponents of v -> v x - x v
    Decompose(DecomposeArgs),
    /// Rewrite [alpha, beta) as [alpha + beta, beta)
    Identity(AlgebraArgs),
    /// Rewrite [alpha, beta) as [alpha, N(u) beta) for u in F[x]
    Scale(ScaleArgs),
    /// Sample the p-central family u*y in [1, a) and [1, b) over F_p((a))((b))
    Counterexample(CounterexampleArgs),
    /// Parse an element and print its normal form
    Eval(EvalArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FieldChoice {
    Rational,
    Laurent,
}

#[derive(Args, Debug)]
struct Common {
    /// Characteristic and degree
    #[arg(short = 'p', value_name = "PRIME")]
    p: u64,
    /// Base field: F_p(a, b) or truncated F_p((a))((b))
    #[arg(long, value_enum, default_value = "rational")]
    field: FieldChoice,
    /// Exponent window of the Laurent field
    #[arg(long, value_name = "N")]
    precision: Option<u32>,
    /// Bind a scalar name, e.g. --let l=a^2+b
    #[arg(long = "let", value_name = "NAME=EXPR")]
    lets: Vec<String>,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[command(flatten)]
    common: Common,
    /// Left slot
    #[arg(long, value_name = "EXPR", default_value = "a")]
    alpha: String,
    /// Right slot, nonzero
    #[arg(long, value_name = "EXPR", default_value = "b")]
    beta: String,
}

#[derive(Args, Debug)]
struct LinkArgs {
    #[command(flatten)]
    common: Common,
    /// Left slot of A = [alpha, beta)
    #[arg(long, value_name = "EXPR")]
    alpha: String,
    /// Shared right slot, nonzero
    #[arg(long, value_name = "EXPR")]
    beta: String,
    /// Left slot of A' = [gamma, beta)
    #[arg(long, value_name = "EXPR")]
    gamma: String,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[command(flatten)]
    alg: AlgebraArgs,
    /// The element playing x
    #[arg(long = "x", value_name = "ELEMENT", default_value = "x")]
    x_el: String,
    /// The element playing y
    #[arg(long = "t", value_name = "ELEMENT")]
    t_el: String,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    alg: AlgebraArgs,
    /// Artin-Schreier element defining ad
    #[arg(long = "x", value_name = "ELEMENT", default_value = "x")]
    x_el: String,
    /// Element to decompose
    #[arg(long = "t", value_name = "ELEMENT")]
    t_el: String,
}

#[derive(Args, Debug)]
struct ScaleArgs {
    #[command(flatten)]
    alg: AlgebraArgs,
    /// u, a nonzero polynomial in x
    #[arg(long = "t", value_name = "ELEMENT")]
    t_el: String,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    alg: AlgebraArgs,
    /// Element in x, y with scalar coefficients
    #[arg(long = "t", value_name = "ELEMENT")]
    t_el: String,
}

#[derive(Args, Debug)]
struct CounterexampleArgs {
    /// Characteristic and degree
    #[arg(short = 'p', value_name = "PRIME")]
    p: u64,
    /// Exponent window of F_p((a))((b))
    #[arg(long, value_name = "N", default_value_t = 8)]
    precision: u32,
    /// Number of sampled u per algebra
    #[arg(long, value_name = "COUNT", default_value_t = 100)]
    samples: usize,
    /// Sampling seed
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    seed: u64,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

const DEFAULT_WINDOW: u32 = 8;

struct Ctx<S> {
    field: FieldDescriptor,
    bindings: Bindings<S>,
}

impl<S: Scalar> Ctx<S> {
    fn new(common: &Common, field: FieldDescriptor) -> Result<Self> {
        let mut ctx = Ctx { field, bindings: Bindings::new() };
        for spec in &common.lets {
            let Some((name, expr)) = spec.split_once('=') else {
                return Err(Error::Syntax { position: 0, message: format!("--let expects NAME=EXPR, got `{spec}`") });
            };
            let name = name.trim();
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !matches!(name, "a" | "b" | "x" | "y");
            if !valid {
                return Err(Error::Syntax { position: 0, message: format!("cannot bind `{name}`") });
            }
            let value = ctx.scalar(expr)?;
            ctx.bindings.insert(name.to_string(), value);
        }
        Ok(ctx)
    }

    fn scalar(&self, text: &str) -> Result<S> {
        parse_scalar_with(text, &self.field, Some(&self.bindings))
    }

    fn algebra(&self, args: &AlgebraArgs) -> Result<SymbolAlgebra<S>> {
        SymbolAlgebra::new(args.common.p, self.scalar(&args.alpha)?, self.scalar(&args.beta)?, self.field)
    }

    fn element(&self, alg: &SymbolAlgebra<S>, text: &str) -> Result<AlgElement<S>> {
        alg.parse_with(text, Some(&self.bindings))
    }

    fn inputs(&self, p: u64) -> Vec<(String, String)> {
        let mut v = vec![field("p", p), field("field", self.field)];
        let mut names: Vec<_> = self.bindings.iter().collect();
        names.sort_by(|x, y| x.0.cmp(y.0));
        v.extend(names.into_iter().map(|(k, s)| field(k, s)));
        v
    }
}

fn descriptor(common: &Common) -> Result<FieldDescriptor> {
    match common.field {
        FieldChoice::Rational => FieldDescriptor::rational(common.p),
        FieldChoice::Laurent => FieldDescriptor::laurent(common.p, common.precision.unwrap_or(DEFAULT_WINDOW)),
    }
}

macro_rules! on_field {
    ($common:expr, $verb:ident, $args:expr) => {{
        let d = descriptor($common)?;
        match d.kind() {
            crate::field::FieldKind::Rational => $verb::<RatFunc>(&Ctx::new($common, d)?, $args),
            crate::field::FieldKind::Laurent => $verb::<LaurentScalar>(&Ctx::new($common, d)?, $args),
        }
    }};
}

fn link<S: Scalar>(ctx: &Ctx<S>, args: &LinkArgs) -> Result<Report> {
    let (alpha, beta, gamma) = (ctx.scalar(&args.alpha)?, ctx.scalar(&args.beta)?, ctx.scalar(&args.gamma)?);
    let r = linkage::right_to_left(&alpha, &gamma, &beta, args.common.p, ctx.field)?;
    let mut rep = Report::new("link");
    rep.inputs = ctx.inputs(args.common.p);
    rep.inputs.extend([field("alpha", &alpha), field("beta", &beta), field("gamma", &gamma)]);
    rep.results = vec![
        field("lambda", &r.lambda),
        field("common left slot", &r.common_left),
        field("A", &r.pres_a),
        field("A'", &r.pres_aprime),
        field("z in A", &r.witness_a.z),
        field("w in A", &r.witness_a.w),
        field("z' in A'", &r.witness_aprime.z),
        field("w' in A'", &r.witness_aprime.w),
    ];
    rep.checks = r.checks;
    Ok(rep)
}

fn verify_lemma<S: Scalar>(ctx: &Ctx<S>, args: &LemmaArgs) -> Result<Report> {
    let alg = ctx.algebra(&args.alg)?;
    let (x_el, y_el) = (ctx.element(&alg, &args.x_el)?, ctx.element(&alg, &args.t_el)?);
    let r = linkage::verify_lemma(&alg, &x_el, &y_el)?;
    let mut rep = Report::new("verify-lemma");
    rep.inputs = ctx.inputs(args.alg.common.p);
    rep.inputs.extend([field("algebra", &alg), field("x", &x_el), field("y", &y_el)]);
    rep.results = vec![
        field("k", r.k),
        field("m", r.m),
        field("(x + y)^p - (x + y)", &r.lhs),
        field("x^p - x + y^p", &r.rhs),
        field("y^m (x + y)", &r.twisted),
    ];
    rep.checks = r.checks;
    Ok(rep)
}

fn decompose<S: Scalar>(ctx: &Ctx<S>, args: &DecomposeArgs) -> Result<Report> {
    let alg = ctx.algebra(&args.alg)?;
    let (x_el, t) = (ctx.element(&alg, &args.x_el)?, ctx.element(&alg, &args.t_el)?);
    let parts = t.ad_decompose(&x_el)?;
    let mut rep = Report::new("decompose");
    rep.inputs = ctx.inputs(args.alg.common.p);
    rep.inputs.extend([field("algebra", &alg), field("x", &x_el), field("t", &t)]);
    rep.checks.push(Check::compare("sum of parts = t", &t, &parts.sum()));
    for (i, part) in parts.parts.iter().enumerate() {
        rep.results.push(field(&format!("t_{i}"), part));
        rep.checks.push(Check::compare(format!("t_{i} x - x t_{i} = {i} t_{i}"), &part.scale_int(i as u32), &part.ad(&x_el)));
    }
    Ok(rep)
}

fn identity<S: Scalar>(ctx: &Ctx<S>, args: &AlgebraArgs) -> Result<Report> {
    let alg = ctx.algebra(args)?;
    let pres = SymbolPresentation::of(&alg);
    let (out, wit) = linkage::chain_identity(&pres)?;
    let mut rep = Report::new("identity");
    rep.inputs = ctx.inputs(args.common.p);
    rep.inputs.push(field("presentation", &pres));
    rep.results = vec![field("presentation", &out), field("z", &wit.z), field("w", &wit.w)];
    rep.checks = linkage::witness_checks("z = x + y, w = y", &wit.z, &wit.w, &pres.left.add(&pres.right), &pres.right)?;
    Ok(rep)
}

fn scale<S: Scalar>(ctx: &Ctx<S>, args: &ScaleArgs) -> Result<Report> {
    let alg = ctx.algebra(&args.alg)?;
    let pres = SymbolPresentation::of(&alg);
    let u = ctx.element(&alg, &args.t_el)?;
    let (out, wit) = linkage::scale_slot_by_norm(&pres, &u)?;
    let n = u.norm_fx()?;
    let mut rep = Report::new("scale");
    rep.inputs = ctx.inputs(args.alg.common.p);
    rep.inputs.extend([field("presentation", &pres), field("u", &u)]);
    rep.results = vec![field("N(u)", &n), field("presentation", &out), field("z", &wit.z), field("w", &wit.w)];
    rep.checks = linkage::witness_checks("z = x, w = u y", &wit.z, &wit.w, &pres.left, &n.mul(&pres.right))?;
    Ok(rep)
}

fn eval<S: Scalar>(ctx: &Ctx<S>, args: &EvalArgs) -> Result<Report> {
    let alg = ctx.algebra(&args.alg)?;
    let t = ctx.element(&alg, &args.t_el)?;
    let show = |c: Option<S>| c.map_or_else(|| "no".to_string(), |c| c.to_string());
    let mut rep = Report::new("eval");
    rep.inputs = ctx.inputs(args.alg.common.p);
    rep.inputs.extend([field("algebra", &alg), field("t", &args.t_el)]);
    rep.results = vec![
        field("normal form", &t),
        field("t^p - t (if central)", show(t.is_artin_schreier())),
        field("t^p (if central)", show(t.is_p_central())),
    ];
    if t.coeffs().iter().all(S::is_exact) {
        let again = ctx.element(&alg, &t.to_string())?;
        rep.checks.push(Check::compare("parse(print(t)) = t", &t, &again));
    } else {
        rep.notes.push("coefficients carry truncation bounds; the printed form is not re-parsed".into());
    }
    Ok(rep)
}

fn dispatch(verb: &Verb) -> Result<(Report, bool)> {
    Ok(match verb {
        Verb::Link(a) => (on_field!(&a.common, link, a)?, a.common.json),
        Verb::VerifyLemma(a) => (on_field!(&a.alg.common, verify_lemma, a)?, a.alg.common.json),
        Verb::Decompose(a) => (on_field!(&a.alg.common, decompose, a)?, a.alg.common.json),
        Verb::Identity(a) => (on_field!(&a.common, identity, a)?, a.common.json),
        Verb::Scale(a) => (on_field!(&a.alg.common, scale, a)?, a.alg.common.json),
        Verb::Eval(a) => (on_field!(&a.alg.common, eval, a)?, a.alg.common.json),
        Verb::Counterexample(a) => (valuation::counterexample_check(a.p, a.precision, a.samples, a.seed)?, a.json),
    })
}

fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::Syntax { .. } | Error::UnknownSymbol(_) | Error::InvalidPrime(_))
}

/// Runs one command; `argv` excludes the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args = std::iter::once("palg".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let mut text = e.render().to_string();
            return if e.use_stderr() {
                if !text.contains("Usage:") {
                    text = format!("{text}\n{}\n", Cli::command().render_usage());
                }
                Outcome { stdout: String::new(), stderr: text, code: 2 }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: 0 }
            };
        }
    };
    match dispatch(&cli.verb) {
        Ok((report, json)) => {
            let stdout = if json {
                serde_json::to_string_pretty(&report.json()).expect("report serializes") + "\n"
            } else {
                report.text()
            };
            let code = if report.passed() { 0 } else { 1 };
            Outcome { stdout, stderr: String::new(), code }
        }
        Err(e) if is_usage_error(&e) => {
            let usage = Cli::command().render_usage().to_string();
            Outcome { stdout: String::new(), stderr: format!("error: {e}\n\n{usage}\n"), code: 2 }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_2() {
        for argv in [vec![], vec!["frobnicate"], vec!["link", "-p", "2"], vec!["eval", "-p", "x"]] {
            let o = run(argv.clone());
            assert_eq!(o.code, 2, "{argv:?}");
            assert!(o.stderr.contains("Usage"), "{argv:?}: {}", o.stderr);
        }
        let o = run(["eval", "-p", "3", "--t", "x^"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("offset 2"), "{}", o.stderr);
        assert_eq!(run(["eval", "-p", "4", "--t", "x"]).code, 2);
    }

    #[test]
    fn math_failures_exit_1() {
        let o = run(["verify-lemma", "-p", "2", "--t", "x"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.starts_with("error: hypothesis fails"));
        assert_eq!(run(["scale", "-p", "3", "--t", "y"]).code, 1);
    }

    #[test]
    fn let_bindings() {
        let o = run(["eval", "-p", "2", "--let", "l=a", "--t", "x + l*y + x*y"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("normal form = a*y + x + x*y"), "{}", o.stdout);
        assert_eq!(run(["eval", "-p", "2", "--let", "x=a", "--t", "x"]).code, 2);
    }

    #[test]
    fn help_goes_to_stdout() {
        let o = run(["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("counterexample"));
    }

    #[test]
    fn laurent_field_flag() {
        let o = run(["eval", "-p", "2", "--field", "laurent", "--precision", "4", "--alpha", "1", "--t", "1/(1+a)*y"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("O(a^4)"), "{}", o.stdout);
    }
}
