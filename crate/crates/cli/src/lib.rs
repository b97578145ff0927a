//! Command-line front end for `tanglekit`. All computation happens in the
//! library; this crate parses notation, dispatches and formats.

pub mod notation;

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use tanglekit::bracket::{
    bracket_contfrac, bracket_tangle, closure_bracket, determinant_of_poly, normalize_by_writhe,
    BracketPair,
};
use tanglekit::classify::{
    achiral_form, is_achiral, is_strongly_invertible, oriented_equiv, strong_form,
    unoriented_equiv, Witness,
};
use tanglekit::coloring::{color_diagram, color_standard_default};
use tanglekit::diagram::{build_standard, from_expr, Closure};
use tanglekit::dna::{
    format_observations, parse_observations, solve, Machine, SearchBounds, SolveStatus,
};
use tanglekit::tangle::{component_count, connectivity, parity};
use tanglekit::{ContinuedFraction, Fraction, PlanarDiagram};

pub use notation::{parse, ErrorKind, Notation, NotationError};

/// Version tag carried by every JSON record.
pub const SCHEMA: &str = "tanglekit/1";

#[derive(Debug, Parser)]
#[command(
    name = "tanglekit",
    version,
    about = "Rational tangles, their fractions and closures"
)]
pub struct Cli {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also print the PD code of the diagram the command builds.
    #[arg(long, global = true)]
    pub dump_pd: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fraction of a tangle.
    Frac {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Canonical continued fraction of a fraction or tangle.
    Canon {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Bracket polynomial of a tangle (as a pair) or of a closure.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum)]
        closure: Option<ClosureArg>,
        /// Writhe-normalize the closure's bracket.
        #[arg(long)]
        normalized: bool,
    },
    /// Determinant of a closure.
    Det {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum)]
        closure: Option<ClosureArg>,
    },
    /// Whether two rational closures are isotopic.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        #[arg(long)]
        oriented: bool,
    },
    /// Whether a rational closure is isotopic to its mirror image.
    Achiral {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Whether a two-component rational link is strongly invertible.
    Stronginv {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Number of components of a rational closure.
    Components {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Recombination products and their inverse problem.
    #[command(subcommand)]
    Dna(DnaCommand),
}

#[derive(Debug, Subcommand)]
pub enum DnaCommand {
    /// Solve an observation file (`-` for stdin).
    Solve {
        obsfile: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Observation file for `K_0..K_N` of the machine `p/q`, `r`.
    Generate {
        #[arg(allow_hyphen_values = true)]
        substrate: String,
        #[arg(allow_hyphen_values = true)]
        r: BigInt,
        n: u64,
    },
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = SearchBounds::default().pmax)]
    pub pmax: u64,
    #[arg(long, default_value_t = SearchBounds::default().qmax)]
    pub qmax: u64,
    #[arg(long, default_value_t = SearchBounds::default().rmax)]
    pub rmax: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bracket,
    Coloring,
    Contfrac,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClosureArg {
    #[value(name = "N")]
    N,
    #[value(name = "D")]
    D,
}

impl From<ClosureArg> for Closure {
    fn from(c: ClosureArg) -> Self {
        match c {
            ClosureArg::N => Closure::Numerator,
            ClosureArg::D => Closure::Denominator,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Notation(#[from] NotationError),
    #[error("{0}")]
    Domain(#[from] tanglekit::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Notation(e) if e.kind == ErrorKind::Syntax => 2,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Notation(e) if e.kind == ErrorKind::Syntax => "syntax",
            CliError::Usage(_) => "usage",
            _ => "domain",
        };
        let mut err = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Notation(e) = self {
            err["offset"] = json!(e.offset);
        }
        json!({ "schema": SCHEMA, "error": err })
    }
}

/// What a command prints: text for people, a record for `--json`.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn record(command: &str, fields: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Some(out), Value::Object(extra)) = (v.as_object_mut(), fields) {
        out.extend(extra);
    }
    v
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn tangle_diagram(n: &Notation) -> Result<PlanarDiagram, CliError> {
    Ok(match n {
        Notation::Fraction(f) => build_standard(&ContinuedFraction::expand_canonical(f))?,
        Notation::ContinuedFraction(cf) => build_standard(cf)?,
        Notation::Tangle(t) => from_expr(t)?,
        Notation::Closed(..) => return Err(closed_input()),
    })
}

fn closed_input() -> CliError {
    CliError::Failed("expected a tangle, got a closed diagram N(...) or D(...)".into())
}

fn pair_of(n: &Notation) -> Result<BracketPair, CliError> {
    Ok(match n {
        Notation::Fraction(f) => bracket_contfrac(&ContinuedFraction::expand_canonical(f)),
        Notation::ContinuedFraction(cf) => bracket_contfrac(cf),
        Notation::Tangle(t) => bracket_tangle(t),
        Notation::Closed(_, t) => bracket_tangle(t),
    })
}

/// Arithmetic fraction of a tangle, with whether the tree is rational.
fn arithmetic(n: &Notation) -> Result<(Fraction, bool), CliError> {
    Ok(match n {
        Notation::Fraction(f) => (f.clone(), true),
        Notation::ContinuedFraction(cf) => (cf.eval(), true),
        Notation::Tangle(t) => {
            let e = t.eval();
            if e.degenerate {
                return Err(CliError::Failed(format!(
                    "{t} contains a split loop (a sum of two [inf] or a product of two [0]); it has no fraction"
                )));
            }
            (e.value, e.rational)
        }
        Notation::Closed(..) => return Err(closed_input()),
    })
}

/// Fraction whose numerator closure is the given closure: `N(T)` has `F(T)`
/// and `D(T) = N(T^r)` has `-1/F(T)`.
fn knot_fraction(text: &str) -> Result<Fraction, CliError> {
    let n = parse(text)?;
    Ok(match &n {
        Notation::Closed(Closure::Numerator, t) => arithmetic(&Notation::Tangle(t.clone()))?.0,
        Notation::Closed(Closure::Denominator, t) => {
            arithmetic(&Notation::Tangle(t.clone()))?.0.rotate()
        }
        other => arithmetic(other)?.0,
    })
}

fn closure_of(n: &Notation, flag: Option<ClosureArg>) -> Result<Option<Closure>, CliError> {
    match (n, flag) {
        (Notation::Closed(w, _), None) => Ok(Some(*w)),
        (Notation::Closed(w, _), Some(f)) if *w == Closure::from(f) => Ok(Some(*w)),
        (Notation::Closed(..), Some(_)) => Err(CliError::Usage(
            "--closure disagrees with the closure written in the expression".into(),
        )),
        (_, f) => Ok(f.map(Closure::from)),
    }
}

fn closure_name(c: Closure) -> &'static str {
    match c {
        Closure::Numerator => "N",
        Closure::Denominator => "D",
    }
}

fn dump(out: &mut Output, enabled: bool, d: &PlanarDiagram) {
    if enabled {
        let pd = d.to_string();
        let _ = write!(out.text, "\n# pd\n{}", pd.trim_end());
        out.json["pd"] = json!(pd);
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut out = match &cli.command {
        Command::Frac { expr, method } => frac(expr, *method, cli.dump_pd)?,
        Command::Canon { expr } => canon(expr)?,
        Command::Bracket {
            expr,
            closure,
            normalized,
        } => bracket(expr, *closure, *normalized, cli.dump_pd)?,
        Command::Det { expr, closure } => det(expr, *closure, cli.dump_pd)?,
        Command::Equiv {
            first,
            second,
            oriented,
        } => equiv(first, second, *oriented)?,
        Command::Achiral { fraction } => achiral(fraction)?,
        Command::Stronginv { fraction } => stronginv(fraction)?,
        Command::Components { fraction } => components(fraction, cli.dump_pd)?,
        Command::Dna(DnaCommand::Generate { substrate, r, n }) => dna_generate(substrate, r, *n)?,
        Command::Dna(DnaCommand::Solve { obsfile, bounds }) => dna_solve(obsfile, bounds)?,
    };
    if !out.text.ends_with('\n') {
        out.text.push('\n');
    }
    Ok(out)
}

fn frac(expr: &str, method: Method, dump_pd: bool) -> Result<Output, CliError> {
    let n = parse(expr)?;
    let (value, rational) = arithmetic(&n)?;
    let want = |m: Method| method == m || method == Method::All;
    let mut results: Vec<(&str, Result<Fraction, String>)> = Vec::new();
    if want(Method::Contfrac) {
        results.push(("contfrac", Ok(value.clone())));
    }
    if want(Method::Bracket) {
        results.push((
            "bracket",
            pair_of(&n)?.fraction().map_err(|e| e.to_string()),
        ));
    }
    if want(Method::Coloring) {
        let colored = match &n {
            Notation::Fraction(f) => {
                color_standard_default(&ContinuedFraction::expand_canonical(f)).map(|t| t.matrix)
            }
            Notation::ContinuedFraction(cf) => color_standard_default(cf).map(|t| t.matrix),
            _ => color_diagram(&tangle_diagram(&n)?),
        };
        results.push((
            "coloring",
            colored
                .and_then(|m| m.fraction())
                .map_err(|e| e.to_string()),
        ));
    }
    let mut methods = serde_json::Map::new();
    for (name, r) in &results {
        methods.insert(
            name.to_string(),
            match r {
                Ok(f) => json!(f.to_string()),
                Err(e) => json!({ "error": e }),
            },
        );
    }
    let ok: Vec<&Fraction> = results
        .iter()
        .filter_map(|(_, r)| r.as_ref().ok())
        .collect();
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    if ok.windows(2).any(|w| w[0] != w[1]) || (rational && !failed.is_empty()) || ok.is_empty() {
        let listing: Vec<String> = results
            .iter()
            .map(|(name, r)| match r {
                Ok(f) => format!("{name} {f}"),
                Err(e) => format!("{name} failed ({e})"),
            })
            .collect();
        return Err(CliError::Failed(format!(
            "methods disagree: {}",
            listing.join(", ")
        )));
    }
    let f = ok[0].clone();
    let mut text = f.to_string();
    if !rational {
        text.push_str(" (algebraic, not rational: the fraction does not classify the tangle)");
    }
    let mut out = Output {
        text,
        json: record(
            "frac",
            json!({ "input": expr, "fraction": f.to_string(), "rational": rational, "methods": methods }),
        ),
    };
    dump(&mut out, dump_pd, &tangle_diagram(&n)?);
    Ok(out)
}

fn canon(expr: &str) -> Result<Output, CliError> {
    let n = parse(expr)?;
    let (f, rational) = arithmetic(&n)?;
    let cf = ContinuedFraction::expand_canonical(&f);
    let mut text = cf.to_string();
    if !rational {
        text.push_str(" (from the arithmetic fraction of an algebraic, non-rational tangle)");
    }
    Ok(Output {
        text,
        json: record(
            "canon",
            json!({ "input": expr, "fraction": f.to_string(), "canonical": cf.to_string(), "rational": rational }),
        ),
    })
}

fn bracket(
    expr: &str,
    flag: Option<ClosureArg>,
    normalized: bool,
    dump_pd: bool,
) -> Result<Output, CliError> {
    let n = parse(expr)?;
    let pair = pair_of(&n)?;
    let tangle = match &n {
        Notation::Closed(_, t) => Notation::Tangle(t.clone()),
        other => other.clone(),
    };
    let diagram = tangle_diagram(&tangle)?;
    let Some(which) = closure_of(&n, flag)? else {
        if normalized {
            return Err(CliError::Usage(
                "--normalized needs a closure (--closure N|D)".into(),
            ));
        }
        let mut out = Output {
            text: format!("d = {}\nn = {}", pair.d, pair.n),
            json: record("bracket", json!({ "input": expr, "pair": to_value(&pair) })),
        };
        dump(&mut out, dump_pd, &diagram);
        return Ok(out);
    };
    let mut poly = closure_bracket(&pair, which);
    let mut writhe = None;
    let (closed, orientation) = diagram.close_oriented(which)?;
    if normalized {
        let w = closed.writhe(&orientation)?;
        poly = normalize_by_writhe(&poly, w);
        writhe = Some(w);
    }
    let mut out = Output {
        text: poly.to_string(),
        json: record(
            "bracket",
            json!({
                "input": expr,
                "closure": closure_name(which),
                "normalized": normalized,
                "writhe": writhe,
                "polynomial": to_value(&poly),
            }),
        ),
    };
    dump(&mut out, dump_pd, &closed);
    Ok(out)
}

fn det(expr: &str, flag: Option<ClosureArg>, dump_pd: bool) -> Result<Output, CliError> {
    let n = parse(expr)?;
    let which = closure_of(&n, flag)?.unwrap_or(Closure::Numerator);
    let d = determinant_of_poly(&closure_bracket(&pair_of(&n)?, which))?;
    let mut out = Output {
        text: d.to_string(),
        json: record(
            "det",
            json!({ "input": expr, "closure": closure_name(which), "determinant": d.to_string() }),
        ),
    };
    if dump_pd {
        let tangle = match &n {
            Notation::Closed(_, t) => Notation::Tangle(t.clone()),
            other => other.clone(),
        };
        dump(&mut out, true, &tangle_diagram(&tangle)?.close(which)?);
    }
    Ok(out)
}

fn equiv(first: &str, second: &str, oriented: bool) -> Result<Output, CliError> {
    let (f1, f2) = (knot_fraction(first)?, knot_fraction(second)?);
    let e = if oriented {
        oriented_equiv(&f1, &f2)
    } else {
        unoriented_equiv(&f1, &f2)
    };
    let text = match &e.witness {
        None => "false".to_string(),
        Some(Witness::Congruent { modulus, .. }) => format!("true (q \u{2261} q' mod {modulus})"),
        Some(Witness::Inverse { modulus, .. }) => format!("true (qq' \u{2261} 1 mod {modulus})"),
        Some(Witness::Degenerate { class }) => format!("true (both {class})"),
    };
    Ok(Output {
        text,
        json: record(
            "equiv",
            json!({
                "first": f1.to_string(),
                "second": f2.to_string(),
                "oriented": oriented,
                "equivalent": e.equivalent,
                "witness": e.witness.as_ref().map(to_value),
                "witness_text": e.witness.as_ref().map(|w| w.to_string()),
            }),
        ),
    })
}

fn achiral(text: &str) -> Result<Output, CliError> {
    let f = knot_fraction(text)?;
    let yes = is_achiral(&f);
    let form = if yes { achiral_form(&f).ok() } else { None };
    Ok(yes_no("achiral", &f, yes, form))
}

fn stronginv(text: &str) -> Result<Output, CliError> {
    let f = knot_fraction(text)?;
    let yes = is_strongly_invertible(&f)?;
    let form = if yes { strong_form(&f).ok() } else { None };
    Ok(yes_no("stronginv", &f, yes, form))
}

fn yes_no(command: &str, f: &Fraction, yes: bool, form: Option<ContinuedFraction>) -> Output {
    let text = match &form {
        Some(cf) => format!("{yes} {cf}"),
        None => yes.to_string(),
    };
    Output {
        text,
        json: record(
            command,
            json!({ "fraction": f.to_string(), "value": yes, "form": form.map(|c| c.to_string()) }),
        ),
    }
}

fn components(text: &str, dump_pd: bool) -> Result<Output, CliError> {
    let f = knot_fraction(text)?;
    let (count, par, conn) = if f.is_infinite() {
        (1, "o/e".to_string(), "[inf]".to_string())
    } else {
        (
            component_count(&f),
            parity(&f).to_string(),
            connectivity(&f).to_string(),
        )
    };
    let mut out = Output {
        text: format!("{count} (parity {par}, connectivity {conn})"),
        json: record(
            "components",
            json!({ "fraction": f.to_string(), "components": count, "parity": par, "connectivity": conn }),
        ),
    };
    if dump_pd {
        let d = build_standard(&ContinuedFraction::expand_canonical(&f))?.numerator()?;
        dump(&mut out, true, &d);
    }
    Ok(out)
}

fn dna_generate(substrate: &str, r: &BigInt, n: u64) -> Result<Output, CliError> {
    let f: Fraction = match parse(substrate)? {
        Notation::Fraction(f) => f,
        _ => {
            return Err(CliError::Usage(format!(
                "`{substrate}` is not a fraction p/q"
            )))
        }
    };
    let m = Machine::from_fraction(&f, r.clone())?;
    let text = format_observations(&m, n);
    let obs = tanglekit::dna::observe(&m, n);
    Ok(Output {
        text,
        json: record(
            "dna generate",
            json!({
                "machine": to_value(&m),
                "products": tanglekit::dna::generate(&m, n).iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "observations": to_value(&obs),
            }),
        ),
    })
}

fn dna_solve(path: &str, b: &BoundArgs) -> Result<Output, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Failed(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Failed(format!("reading {path}: {e}")))?;
    }
    let obs = parse_observations(&text)?;
    let bounds = SearchBounds {
        pmax: b.pmax,
        qmax: b.qmax,
        rmax: b.rmax,
    };
    let sol = solve(&obs, bounds)?;
    let mut lines = Vec::new();
    match (sol.status, sol.unique()) {
        (SolveStatus::Unique, Some(m)) => lines.push(format!("unique {m}")),
        (SolveStatus::Inconsistent, _) => {
            return Err(CliError::Failed(
                "inconsistent: no machine reproduces the observations".into(),
            ))
        }
        _ => {
            lines.push(format!("{} ({} machines)", sol.status, sol.machines.len()));
            for c in &sol.machines {
                lines.push(format!("  {}", c.machine));
            }
        }
    }
    if sol.bounded {
        lines.push(format!(
            "search limited to pmax={}, qmax={}, rmax={}",
            bounds.pmax, bounds.qmax, bounds.rmax
        ));
    }
    Ok(Output {
        text: lines.join("\n"),
        json: record(
            "dna solve",
            json!({ "observations": to_value(&obs), "solution": to_value(&sol) }),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Output, CliError> {
        let mut full = vec!["tanglekit"];
        full.extend(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn worked_examples() {
        assert_eq!(run_args(&["frac", "[2,3,4]"]).unwrap().text, "30/13\n");
        assert_eq!(
            run_args(&["equiv", "30/13", "30/7"]).unwrap().text,
            "true (qq' \u{2261} 1 mod 30)\n"
        );
        assert_eq!(run_args(&["canon", "23/14"]).unwrap().text, "[1,1,1,1,4]\n");
        assert_eq!(
            run_args(&["det", "[2,2,3]", "--closure", "N"])
                .unwrap()
                .text,
            "17\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["frac", "[2,0,3]"]).unwrap_err().exit_code(), 1);
        assert_eq!(run_args(&["frac", "[2,3"]).unwrap_err().exit_code(), 2);
        assert_eq!(run_args(&["stronginv", "3/1"]).unwrap_err().exit_code(), 1);
        assert_eq!(
            run_args(&["bracket", "[3]", "--normalized"])
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn json_records_carry_the_schema() {
        let out = run_args(&["--json", "frac", "[1] + inv([2])"]).unwrap();
        assert_eq!(out.json["schema"], SCHEMA);
        assert_eq!(out.json["fraction"], "3/2");
        assert_eq!(out.json["rational"], true);
    }
}
