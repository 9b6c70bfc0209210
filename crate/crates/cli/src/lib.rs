//! Argument handling and output for the `qabtors` binary, kept in a library
//! so the exit-code contract can be tested without spawning processes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qab_arith::{parse_rational, Rational};
use qab_torsion::corpus::{parse_corpus, run_corpus, CorpusSummary, SHIPPED_CORPUS};
use qab_torsion::isogeny::{cyclic_degrees, kenku_check};
use qab_torsion::{curve_from_j, isogeny_class, torsion_over_qab_with_caps, Caps, Error, RationalCurve};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
/// A corpus mismatch or a failed verification.
pub const EXIT_MISMATCH: i32 = 1;
/// Bad input, a singular curve, or a field test undecided at its cap.
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_BREACH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qabtors", version, about = "Torsion of elliptic curves over Q in the maximal abelian extension")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// E(Q^ab)_tors of one curve.
    Torsion {
        #[command(flatten)]
        curve: CurveArgs,
        /// Include the branch taken and the field computations behind it.
        #[arg(long)]
        trace: bool,
        /// Largest degree of a field tested for being abelian.
        #[arg(long)]
        degree_cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The Q-isogeny class and its cyclic isogeny degrees.
    IsogenyClass {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Re-run the checks on the modular curves behind the classification.
    VerifyPaper {
        /// Naive height bound for the rational point searches.
        #[arg(long, default_value_t = qab_modular::points::DEFAULT_HEIGHT_BOUND)]
        height_bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Replay a corpus of curves with known torsion.
    Corpus {
        /// Line-delimited JSON corpus; the shipped one when omitted.
        path: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct CurveArgs {
    /// j-invariant, plain (`p/q`) or factored (`-2^12*31^3/11^5`).
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    /// `a1,a2,a3,a4,a6`, or `a,b` for y^2 = x^3 + ax + b.
    #[arg(long, allow_hyphen_values = true)]
    pub a_invariants: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// What a command printed and how it exits.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantBreach(_) => EXIT_BREACH,
        _ => EXIT_UNDECIDED,
    }
}

impl CurveArgs {
    pub fn curve(&self) -> Result<RationalCurve, Error> {
        match (&self.j, &self.a_invariants) {
            (Some(j), None) => Ok(curve_from_j(&parse_rational(j)?)),
            (None, Some(a)) => {
                let coeffs = a
                    .split(',')
                    .map(|c| parse_rational(c.trim()))
                    .collect::<Result<Vec<Rational>, _>>()?;
                match <[Rational; 2]>::try_from(coeffs) {
                    Ok([a, b]) => RationalCurve::short(a, b),
                    Err(coeffs) => RationalCurve::from_a_invariants(&coeffs),
                }
            }
            _ => Err(Error::Input("exactly one of --j and --a-invariants is required".into())),
        }
    }
}

/// Serializes with sorted keys, so parsing and re-serializing the output
/// reproduces it byte for byte.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Torsion { curve, trace, degree_cap, format } => torsion(&curve, trace, degree_cap, format),
        Command::IsogenyClass { curve, format } => isogeny(&curve, format),
        Command::VerifyPaper { height_bound, format } => verify(height_bound, format),
        Command::Corpus { path, jobs, format } => corpus(path, jobs, format),
    }
}

fn torsion(args: &CurveArgs, with_trace: bool, cap: Option<usize>, format: Format) -> Outcome {
    let caps = cap.map(Caps::uniform).unwrap_or_default();
    let e = match args.curve() {
        Ok(e) => e,
        Err(e) => return Outcome::error(&e),
    };
    let (t, trace) = match torsion_over_qab_with_caps(&e, caps) {
        Ok(r) => r,
        Err(err) => return Outcome::error(&err),
    };
    let out = match format {
        Format::Json => {
            let mut v = json!({
                "model": e.to_string(),
                "j": e.j.to_string(),
                "torsion": {"m": t.m, "k": t.k},
                "group": t.to_string(),
                "isogeny_degrees": trace.degrees,
            });
            if with_trace {
                v["trace"] = value(&trace);
            }
            to_json(&v)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "curve: {e}");
            let _ = writeln!(s, "j: {}", e.j);
            let _ = writeln!(s, "torsion: {t}");
            let _ = writeln!(s, "isogeny degrees: {:?}", trace.degrees);
            if with_trace {
                for step in &trace.steps {
                    let _ = writeln!(s, "branch: {}", step.statement);
                    if let Some(t2) = step.two_part {
                        let _ = writeln!(s, "  2-part: {t2}");
                    }
                    for ev in &step.evidence {
                        let _ = writeln!(s, "  evidence: {}", serde_json::to_string(ev).expect("evidence serializes"));
                    }
                }
            }
            s
        }
    };
    Outcome::ok(out)
}

fn isogeny(args: &CurveArgs, format: Format) -> Outcome {
    let result = args.curve().and_then(|e| {
        let class = isogeny_class(&e)?;
        let degrees = cyclic_degrees(&class)?;
        let kenku = kenku_check(&class)?;
        Ok((class, degrees, kenku))
    });
    let (class, degrees, kenku) = match result {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let code = if kenku.passed() { EXIT_OK } else { EXIT_BREACH };
    let out = match format {
        Format::Json => to_json(&json!({
            "curves": class.curves.iter().map(|c| json!({"model": c.to_string(), "j": c.j.to_string()})).collect::<Vec<_>>(),
            "edges": value(&class.edges),
            "isogeny_degrees": degrees.degrees,
            "kenku": value(&kenku),
        })),
        Format::Text => {
            let mut s = String::new();
            for (i, c) in class.curves.iter().enumerate() {
                let _ = writeln!(s, "{i}: {c}  j = {}", c.j);
            }
            for edge in &class.edges {
                let _ = writeln!(s, "{} -> {}  degree {}", edge.source, edge.target, edge.degree);
            }
            let _ = writeln!(s, "isogeny degrees: {:?}", degrees.degrees);
            for v in &kenku.violations {
                let _ = writeln!(s, "violation: {v}");
            }
            s
        }
    };
    Outcome { code, stdout: out, stderr: String::new() }
}

fn verify(height_bound: i64, format: Format) -> Outcome {
    let report = qab_modular::verify_paper(height_bound);
    let code = if report.passed() { EXIT_OK } else { EXIT_MISMATCH };
    let out = match format {
        Format::Json => to_json(&value(&report)),
        Format::Text => {
            let mut s = String::new();
            for (id, p) in &report.propositions {
                let _ = writeln!(s, "{} {id}: {}", if p.passed { "ok  " } else { "FAIL" }, p.statement);
                for c in &p.checks {
                    let _ = writeln!(s, "    {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
                }
                for n in &p.notes {
                    let _ = writeln!(s, "    note: {n}");
                }
            }
            s
        }
    };
    Outcome { code, stdout: out, stderr: String::new() }
}

fn corpus(path: Option<PathBuf>, jobs: Option<usize>, format: Format) -> Outcome {
    let text = match &path {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => return Outcome::error(&Error::Input(format!("{}: {e}", p.display()))),
        },
        None => SHIPPED_CORPUS.to_string(),
    };
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let (entries, malformed) = parse_corpus(&text);
    let summary = run_corpus(&entries, malformed, jobs);
    let code = if summary.ok() { EXIT_OK } else { EXIT_MISMATCH };
    let out = match format {
        Format::Json => to_json(&value(&summary)),
        Format::Text => corpus_text(&summary),
    };
    Outcome { code, stdout: out, stderr: String::new() }
}

fn corpus_text(summary: &CorpusSummary) -> String {
    let mut s = String::new();
    for r in &summary.results {
        let computed = match (&r.computed, &r.error) {
            (Some(t), _) => t.to_string(),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => "-".into(),
        };
        let _ = writeln!(s, "{} {:<12} expected {:<14} computed {}", if r.matched { "ok  " } else { "FAIL" }, r.label, r.expected.to_string(), computed);
    }
    for m in &summary.malformed {
        let _ = writeln!(s, "malformed line {}: {}", m.line, m.message);
    }
    for (g, n) in &summary.per_group {
        let _ = writeln!(s, "{g}: {n}");
    }
    let _ = writeln!(s, "{} matched, {} mismatched, {} malformed", summary.matched, summary.mismatched, summary.malformed.len());
    s
}
