//! The `incmon` command line front end.
//!
//! Every command prints either plain text or, with `--json`, a single JSON
//! object carrying `"schema_version": 1`. Exit codes: 0 on success, 1 on a
//! domain error, 2 on a syntax or usage error.

pub mod expr;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, ParseError};
use crate::invariants::{self, EffectivityVerdict, Engine};
use crate::kgroup::KElement;
use crate::modengine::{self, TruncatedModule};
use crate::monomial::{self, ExponentVector, MonomialTuple};
use crate::ncseries::{bigint_json, NCSeries};
use crate::word::Word;

/// Version tag written into every JSON output.
pub const SCHEMA_VERSION: u64 = 1;

/// Environment variable capping the truncation degree.
pub const MAX_DEGREE_VAR: &str = "INCMON_MAX_DEGREE";

/// Default cap on the truncation degree.
pub const DEFAULT_MAX_DEGREE: usize = 16;

#[derive(Debug, Parser)]
#[command(
    name = "incmon",
    version,
    about = "Exact invariants of graded representations of the increasing monoid"
)]
struct Cli {
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KOp {
    Eval,
    Psi,
    Gamma,
    Xi,
    Sigma,
    Dual,
    Transpose,
    Pi,
    Kappa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    G,
    F,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression or apply an operator to it.
    Kgroup {
        #[arg(value_enum)]
        op: KOp,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The multiplicity series (g) or the pairing series (f) of a class.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Also list the coefficients of all words up to this length.
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long)]
        smooth: bool,
    },
    /// Hilbert series in t and its pole order at t = 1.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        smooth: bool,
    },
    /// Upper bound for the level: the largest rank with a nonzero coefficient.
    Level {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Multiplicity of a word in a class.
    Mult {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        word: String,
        #[arg(long)]
        smooth: bool,
    },
    /// Euler characteristic pairing of two classes.
    Pair {
        /// LEFT, or RIGHT when --left-word is given.
        #[arg(allow_hyphen_values = true)]
        first: String,
        /// RIGHT.
        #[arg(allow_hyphen_values = true)]
        second: Option<String>,
        #[arg(long)]
        left_word: Option<String>,
        #[arg(long)]
        smooth: bool,
    },
    /// Bounded effectivity test.
    Effective {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        smooth: bool,
    },
    /// Explicit truncated modules.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Monomials of principal modules.
    Monomial {
        #[command(subcommand)]
        cmd: MonomialCmd,
    },
}

#[derive(Debug, Subcommand)]
enum ModuleCmd {
    /// Build a module, optionally applying an operation, and print it.
    Build {
        /// std:WORD, inj:WORD, prin:R, simple:N, J:N, trivial, zero or @FILE.json.
        spec: String,
        /// Truncation degree D.
        #[arg(long)]
        deg: usize,
        /// shift, smooth-shift, transpose, coind, ind, positive, xi,
        /// tau R, concat SPEC or sum SPEC.
        #[arg(long, num_args = 1..=2, value_names = ["OP", "ARG"])]
        op: Option<Vec<String>>,
    },
    /// Like build, printing only dimensions.
    Dims {
        /// std:WORD, inj:WORD, prin:R, simple:N, J:N, trivial, zero or @FILE.json.
        spec: String,
        /// Truncation degree D.
        #[arg(long)]
        deg: usize,
        #[arg(long, num_args = 1..=2, value_names = ["OP", "ARG"])]
        op: Option<Vec<String>>,
    },
    /// Betti table from Koszul homology.
    Betti {
        /// std:WORD, inj:WORD, prin:R, simple:N, J:N, trivial, zero or @FILE.json.
        spec: String,
        /// Truncation degree D.
        #[arg(long)]
        deg: usize,
    },
    /// Dimension of the truncated Hom space.
    Hom {
        /// Source module.
        source: String,
        /// Target module.
        target: String,
        /// Truncation degree D.
        #[arg(long)]
        deg: usize,
    },
    /// Minimal generator counts per degree.
    Tfunctor {
        /// std:WORD, inj:WORD, prin:R, simple:N, J:N, trivial, zero or @FILE.json.
        spec: String,
        /// Truncation degree D.
        #[arg(long)]
        deg: usize,
    },
    /// Rank of the stabilization map from degree N to the top degree.
    Saturation {
        /// std:WORD, inj:WORD, prin:R, simple:N, J:N, trivial, zero or @FILE.json.
        spec: String,
        /// Truncation degree D.
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        n: usize,
    },
    /// Check the shape and the relations of a module.
    Verify {
        /// std:WORD, inj:WORD, prin:R, simple:N, J:N, trivial, zero or @FILE.json.
        spec: String,
        /// Truncation degree D.
        #[arg(long)]
        deg: usize,
    },
}

#[derive(Debug, Subcommand)]
enum MonomialCmd {
    /// Tuple such as 2,3,5 to exponents.
    ToExponents { tuple: String },
    /// Exponents such as 1,0,1 to a tuple.
    ToTuple { exps: String },
    /// Membership of a tuple in the submodule generated by tuples.
    Member {
        /// Generators separated by ';', e.g. "2,3;1,4".
        #[arg(long)]
        gens: String,
        #[arg(long)]
        tuple: String,
    },
    /// Initial tuple of a combination written "coef:tuple;coef:tuple".
    Initial {
        #[arg(allow_hyphen_values = true)]
        terms: String,
    },
    /// Stabilization index of a chain of generator sets separated by '|'.
    Chain { chain: String },
}

/// A command failure, split by exit code.
#[derive(Debug)]
enum Failure {
    Syntax(String),
    Domain(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Syntax(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

/// What a command produced: a text rendering and a JSON object.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Output {
        Output {
            text: text.into(),
            json,
        }
    }
}

/// Runs the tool on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = dispatch(&cli.command);
    match result {
        Ok(output) => {
            if cli.json {
                let mut json = output.json;
                if let Value::Object(map) = &mut json {
                    map.insert("schema_version".to_string(), json!(SCHEMA_VERSION));
                }
                let _ = writeln!(out, "{json}");
            } else {
                let _ = writeln!(out, "{}", output.text);
            }
            0
        }
        Err(Failure::Syntax(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn element(s: &str) -> Result<KElement, Failure> {
    Ok(expr::parse_element(s)?)
}

fn word(s: &str) -> Result<Word, Failure> {
    Ok(s.trim().parse::<Word>()?)
}

fn kelement_json(x: &KElement) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn bigint_value(c: &BigInt) -> Value {
    bigint_json::to_value(c)
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Kgroup { op, expr } => kgroup(*op, expr),
        Command::Series {
            kind,
            expr,
            expand,
            smooth,
        } => series(*kind, expr, *expand, *smooth),
        Command::Hilbert { expr, smooth } => {
            let h = invariants::hilbert(&element(expr)?, *smooth);
            let text = h.series.to_string_in('t');
            Ok(Output::new(
                format!("{text}; pole order {}", h.pole_order),
                json!({ "series": h.series, "text": text, "pole_order": h.pole_order }),
            ))
        }
        Command::Level { expr } => {
            let level = invariants::level_upper(&element(expr)?);
            let text = level.map_or("-inf".to_string(), |l| l.to_string());
            Ok(Output::new(text, json!({ "level": level })))
        }
        Command::Mult { expr, word: w, smooth } => {
            let m = invariants::mult(&element(expr)?, &word(w)?, *smooth);
            Ok(Output::new(m.to_string(), json!({ "multiplicity": bigint_value(&m) })))
        }
        Command::Pair {
            first,
            second,
            left_word,
            smooth,
        } => {
            let value = match (left_word, second) {
                (Some(w), None) => invariants::pair_left(&word(w)?, &element(first)?, *smooth),
                (None, Some(right)) => invariants::pair(&element(first)?, &element(right)?, *smooth),
                (Some(_), _) => return Err(Failure::Syntax("--left-word takes exactly one expression".into())),
                (None, _) => return Err(Failure::Syntax("pair takes two expressions".into())),
            };
            Ok(Output::new(
                value.to_string(),
                json!({ "pairing": bigint_value(&value) }),
            ))
        }
        Command::Effective { expr, bound, smooth } => {
            let verdict = invariants::effective(&element(expr)?, *bound, *smooth);
            let text = match &verdict {
                EffectivityVerdict::EffectiveUpTo(l) => format!("effective up to length {l}"),
                EffectivityVerdict::NotEffective { witness, coefficient } => {
                    let w = if witness.is_empty() {
                        "1".to_string()
                    } else {
                        witness.to_string()
                    };
                    format!("NOT effective; witness {w} (coefficient {coefficient})")
                }
            };
            Ok(Output::new(text, serde_json::to_value(&verdict).expect("serializable")))
        }
        Command::Module { cmd } => module(cmd),
        Command::Monomial { cmd } => monomial_cmd(cmd),
    }
}

fn kgroup(op: KOp, expr: &str) -> Result<Output, Failure> {
    let x = element(expr)?;
    let (name, y) = match op {
        KOp::Eval => ("eval", x),
        KOp::Psi => ("psi", x.psi()),
        KOp::Gamma => ("gamma", x.gamma()),
        KOp::Xi => ("xi", x.xi()),
        KOp::Sigma => ("sigma", x.sigma()),
        KOp::Dual => ("dual", x.dual()),
        KOp::Transpose => ("transpose", x.transpose()),
        KOp::Pi => ("pi", x.pi()),
        KOp::Kappa => ("kappa", x.kappa()),
    };
    let text = y.to_string();
    Ok(Output::new(
        text.clone(),
        json!({ "op": name, "element": kelement_json(&y), "text": text }),
    ))
}

fn series(kind: SeriesKind, expr: &str, expand: Option<usize>, smooth: bool) -> Result<Output, Failure> {
    let x = element(expr)?;
    let engine = Engine::new();
    let s: NCSeries = match (kind, smooth) {
        (SeriesKind::G, false) => engine.gser(&x),
        (SeriesKind::G, true) => engine.gser_smooth(&x),
        (SeriesKind::F, false) => engine.fser(&x),
        (SeriesKind::F, true) => engine.fser_smooth(&x),
    };
    let series_text = s.to_string();
    let mut text = series_text.clone();
    let mut json = json!({
        "kind": if kind == SeriesKind::G { "g" } else { "f" },
        "smooth": smooth,
        "series": s,
        "text": series_text,
    });
    if let Some(l) = expand {
        let mut entries: Vec<(Word, BigInt)> = s.expand(l).into_iter().filter(|(_, c)| c != &BigInt::from(0)).collect();
        entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut rows = Vec::new();
        for (w, c) in &entries {
            let name = if w.is_empty() { "1".to_string() } else { w.to_string() };
            text.push_str(&format!("\n{name} {c}"));
            rows.push(json!({ "word": name, "coefficient": bigint_value(c) }));
        }
        json["expansion"] = Value::Array(rows);
    }
    Ok(Output::new(text, json))
}

fn max_degree() -> Result<usize, Failure> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Domain(format!("{MAX_DEGREE_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn load_module(spec: &str, deg: usize) -> Result<TruncatedModule, Failure> {
    let cap = max_degree()?;
    if deg > cap {
        return Err(Failure::Domain(format!(
            "truncation degree {deg} exceeds the cap {cap} set by {MAX_DEGREE_VAR}"
        )));
    }
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("cannot read {path}: {e}")))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Syntax(format!("{path}: invalid JSON: {e}")))?;
        let m = modengine::from_json(&value)?;
        return Ok(m.truncate(deg)?);
    }
    Ok(modengine::from_spec(spec, deg)?)
}

/// Result of `module build` and `module dims`.
enum Built {
    Module(TruncatedModule),
    Tau(usize, modengine::GradingPieces),
    Xi(modengine::XiDims),
}

fn build(spec: &str, deg: usize, op: &Option<Vec<String>>) -> Result<Built, Failure> {
    let m = load_module(spec, deg)?;
    let Some(op) = op else {
        return Ok(Built::Module(m));
    };
    let arg = op.get(1).map(String::as_str);
    let no_arg = |name: &str| -> Result<(), Failure> {
        match arg {
            None => Ok(()),
            Some(_) => Err(Failure::Syntax(format!("--op {name} takes no argument"))),
        }
    };
    let need_arg = |name: &str| -> Result<&str, Failure> {
        arg.ok_or_else(|| Failure::Syntax(format!("--op {name} needs an argument")))
    };
    Ok(match op[0].as_str() {
        "shift" => {
            no_arg("shift")?;
            Built::Module(modengine::shift(&m)?)
        }
        "smooth-shift" => {
            no_arg("smooth-shift")?;
            Built::Module(modengine::smooth_shift(&m)?)
        }
        "transpose" => {
            no_arg("transpose")?;
            Built::Module(modengine::transpose(&m))
        }
        "coind" => {
            no_arg("coind")?;
            Built::Module(modengine::coinduction(&m))
        }
        "ind" => {
            no_arg("ind")?;
            Built::Module(modengine::induction(&m))
        }
        "positive" => {
            no_arg("positive")?;
            Built::Module(m.positive_part())
        }
        "concat" => Built::Module(modengine::concat(&m, &load_module(need_arg("concat")?, deg)?)?),
        "sum" => Built::Module(modengine::direct_sum(&m, &load_module(need_arg("sum")?, deg)?)?),
        "tau" => {
            let r = need_arg("tau")?;
            let r: usize = r
                .parse()
                .map_err(|_| Failure::Syntax(format!("--op tau expects a non-negative integer, got {r:?}")))?;
            Built::Tau(r, modengine::canonical_grading_pieces(&m, r)?)
        }
        "xi" => {
            no_arg("xi")?;
            Built::Xi(modengine::xi_truncated(&m))
        }
        other => return Err(Failure::Syntax(format!("unknown module operation {other:?}"))),
    })
}

fn join_dims(d: &[usize]) -> String {
    format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn derived_output(b: &Built) -> Option<Output> {
    match b {
        Built::Module(_) => None,
        Built::Tau(r, g) => Some(Output::new(
            format!(
                "total {}; pieces {}; reliable through degree {}",
                g.total,
                join_dims(&g.pieces),
                g.reliable_degree
            ),
            json!({ "tau": r, "total": g.total, "pieces": g.pieces, "reliable_degree": g.reliable_degree }),
        )),
        Built::Xi(x) => Some(Output::new(
            format!("{}; reliable through degree {}", join_dims(&x.dims), x.reliable_degree),
            json!({ "dims": x.dims, "reliable_degree": x.reliable_degree }),
        )),
    }
}

fn module(cmd: &ModuleCmd) -> Result<Output, Failure> {
    match cmd {
        ModuleCmd::Build { spec, deg, op } => {
            let b = build(spec, *deg, op)?;
            if let Some(o) = derived_output(&b) {
                return Ok(o);
            }
            let Built::Module(m) = b else { unreachable!() };
            let violations = modengine::verify_module(&m);
            let module_json = modengine::to_json(&m);
            let text = format!("{m}\n{module_json}");
            Ok(Output::new(
                text,
                json!({ "module": module_json, "violations": violations }),
            ))
        }
        ModuleCmd::Dims { spec, deg, op } => {
            let b = build(spec, *deg, op)?;
            if let Some(o) = derived_output(&b) {
                return Ok(o);
            }
            let Built::Module(m) = b else { unreachable!() };
            Ok(Output::new(
                join_dims(m.dims()),
                json!({ "D": m.degree(), "dims": m.dims() }),
            ))
        }
        ModuleCmd::Betti { spec, deg } => {
            let m = load_module(spec, *deg)?;
            let table = modengine::koszul_betti(&m);
            let mut lines = Vec::new();
            for i in 0..=table.reliable_degree {
                let row: Vec<String> = (0..=table.reliable_degree - i)
                    .map(|j| table.get(i, j).to_string())
                    .collect();
                lines.push(format!("{i}: {}", row.join(" ")));
            }
            lines.push(format!("reliable through i+j = {}", table.reliable_degree));
            let entries: Vec<Value> = table
                .entries
                .iter()
                .map(|(&(i, j), &v)| json!({ "i": i, "j": j, "value": v }))
                .collect();
            Ok(Output::new(
                lines.join("\n"),
                json!({ "entries": entries, "reliable_degree": table.reliable_degree }),
            ))
        }
        ModuleCmd::Hom { source, target, deg } => {
            let h = modengine::hom_dim(&load_module(source, *deg)?, &load_module(target, *deg)?)?;
            let flag = if h.reliable { "reliable" } else { "unreliable" };
            Ok(Output::new(
                format!("{} ({flag})", h.dim),
                serde_json::to_value(&h).expect("serializable"),
            ))
        }
        ModuleCmd::Tfunctor { spec, deg } => {
            let t = modengine::t_functor(&load_module(spec, *deg)?);
            Ok(Output::new(join_dims(&t), json!({ "dims": t })))
        }
        ModuleCmd::Saturation { spec, deg, n } => {
            let r = modengine::saturation_rank(&load_module(spec, *deg)?, *n)?;
            Ok(Output::new(r.to_string(), json!({ "rank": r })))
        }
        ModuleCmd::Verify { spec, deg } => {
            let violations = modengine::verify_module(&load_module(spec, *deg)?);
            let text = if violations.is_empty() {
                "ok".to_string()
            } else {
                violations.join("\n")
            };
            Ok(Output::new(text, json!({ "violations": violations })))
        }
    }
}

fn tuple(s: &str) -> Result<MonomialTuple, Failure> {
    Ok(monomial::parse_tuple(s)??)
}

fn tuple_set(s: &str) -> Result<Vec<MonomialTuple>, Failure> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(tuple).collect()
}

fn rational(s: &str) -> Result<BigRational, Failure> {
    modengine::linalg::parse_rational(s).ok_or_else(|| Failure::Syntax(format!("invalid coefficient {s:?}")))
}

fn monomial_cmd(cmd: &MonomialCmd) -> Result<Output, Failure> {
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    match cmd {
        MonomialCmd::ToExponents { tuple: t } => {
            let e = monomial::tuple_to_exponents(&tuple(t)?);
            Ok(Output::new(list(&e.0), json!({ "exponents": e })))
        }
        MonomialCmd::ToTuple { exps } => {
            let e: ExponentVector = exps.parse()?;
            let t = monomial::exponents_to_tuple(&e);
            Ok(Output::new(list(t.entries()), json!({ "tuple": t })))
        }
        MonomialCmd::Member { gens, tuple: t } => {
            let member = monomial::submodule_member(&tuple_set(gens)?, &tuple(t)?)?;
            Ok(Output::new(member.to_string(), json!({ "member": member })))
        }
        MonomialCmd::Initial { terms } => {
            let mut v = Vec::new();
            for part in terms.split(';').filter(|p| !p.trim().is_empty()) {
                let (c, t) = part
                    .split_once(':')
                    .ok_or_else(|| Failure::Syntax(format!("expected coef:tuple, got {part:?}")))?;
                v.push((rational(c)?, tuple(t)?));
            }
            let init = monomial::initial_tuple(&v)?;
            Ok(Output::new(list(init.entries()), json!({ "initial": init })))
        }
        MonomialCmd::Chain { chain } => {
            let sets = chain.split('|').map(tuple_set).collect::<Result<Vec<_>, _>>()?;
            let k = monomial::chain_stabilizes(&sets)?;
            let text = k.map_or("none within input".to_string(), |k| k.to_string());
            Ok(Output::new(text, json!({ "stabilizes_at": k })))
        }
    }
}
