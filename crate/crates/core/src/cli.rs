//! Command-line front end: argument parsing, dispatch and report emission.
//!
//! Exit codes: 0 when every verdict passes, 1 on a verification failure
//! (the report is still written), 2 on an input error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::cotruss::{builtin, check_all, check_morphism, AxiomOptions, AxiomReport, CotrussPresentation};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::points::{check_truss, Mode, PointSpace, TestAlgebra, TrussReport, DEFAULT_BUDGET};
use crate::stx::{parse_map, parse_stx, render_stx};
use crate::superalg::{Field, Scalar};
use crate::tensor::SwapConvention;
use crate::ybe::{check_ybe, MapKind, YbeMode, YbeReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "supertruss", version, about = "Verify supercotruss presentations, their points and Yang-Baxter maps")]
struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Run every check on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sigma13 {
    Graded,
    Plain,
}

#[derive(Debug, Args)]
struct Sampling {
    /// Test algebra field: `qq` or `fp:P`.
    #[arg(long, default_value = "qq")]
    field: String,
    /// Number of odd generators of the Grassmann test algebra.
    #[arg(long, default_value_t = 2)]
    grassmann: usize,
    /// Enumerate every point (finite fields only).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Number of sampled tuples.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on tuple evaluations in exhaustive mode.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the structure axioms, counit and cozero.
    Check {
        input: String,
        #[arg(long, value_enum, default_value = "graded")]
        sigma13: Sigma13,
        /// Base field to check over (defaults to the presentation's own).
        #[arg(long)]
        field: Option<String>,
        /// Extra random elements compared besides the generators.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the truss and semi-brace identities at points.
    Points {
        input: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check a Yang-Baxter map: braid relation, components, non-degeneracy.
    Ybe {
        input: String,
        /// flip, superflip, left-action, inverse-map, odd-scaling, parity(KIND), odd-scaling(KIND)
        #[arg(long)]
        map: String,
        /// Scalar for odd-scaling.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Write the reduced presentation.
    Reduce {
        input: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check that a homomorphism intertwines two presentations.
    Morphism { phi: PathBuf, source: String, target: String },
}

/// The envelope every report shares.
#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: String,
    input_digest: String,
    field: String,
    sign_blind: bool,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
    details: Value,
}

fn load(input: &str) -> Result<CotrussPresentation> {
    match input.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => parse_stx(&read(&PathBuf::from(input))?),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// SHA-256 of the canonical text of the presentations involved.
fn digest(parts: &[String]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn sampling_space(p: &CotrussPresentation, s: &Sampling) -> Result<(Arc<PointSpace>, bool)> {
    let field = Field::parse(&s.field)?;
    let space = PointSpace::new(p, TestAlgebra::new(field, s.grassmann)?)?;
    let exhaustive = s.exhaustive || (s.samples.is_none() && field.is_finite());
    if exhaustive && !field.is_finite() {
        return Err(Error::InfiniteBase);
    }
    Ok((Arc::new(space), exhaustive))
}

struct Outcome {
    command: &'static str,
    input: String,
    digest: String,
    field: Field,
    passed: bool,
    details: Value,
    human: String,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn human_axioms(r: &AxiomReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let _ = writeln!(out, "  {:<13} {}  ({} elements)", c.axiom.name(), verdict(c.passed), c.checked);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "    at {}:\n      lhs = {}\n      rhs = {}", w.element, w.lhs, w.rhs);
        }
    }
    out
}

fn human_truss(r: &TrussReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  mode: {} over {}", r.mode, r.algebra);
    if let Some(n) = r.points {
        let _ = writeln!(out, "  points: {n}, evaluations: {}", r.evaluations);
    }
    for i in &r.identities {
        let method = match i.lemma {
            Some(l) => format!("reduced: {l}"),
            None => format!("{:?}", i.method).to_lowercase(),
        };
        let _ = writeln!(out, "  {:<21} {}  ({} tuples, {method})", i.identity.name(), verdict(i.passed), i.tuples);
        if let Some(note) = &i.note {
            let _ = writeln!(out, "    {note}");
        }
        if let Some(w) = &i.witness {
            let _ = writeln!(out, "    witness: {}", w.join(", "));
        }
    }
    out
}

fn human_ybe(r: &YbeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  map: {}{}", r.map, r.q.as_ref().map_or(String::new(), |q| format!(" (q = {q})")));
    let _ = writeln!(out, "  mode: {} over {}, {} triples", r.mode, r.algebra, r.triples);
    for (name, v) in [("braid", &r.braid), ("yb1", &r.yb1), ("yb2", &r.yb2), ("yb3", &r.yb3)] {
        let _ = writeln!(out, "  {name:<15} {}", verdict(v.passed));
        if let Some(w) = &v.witness {
            let _ = writeln!(out, "    witness: {}", w.join(", "));
        }
    }
    let _ = writeln!(out, "  {:<15} {}", "components", verdict(r.components_agree));
    if let Some(nd) = &r.nondegenerate {
        let _ = writeln!(out, "  {:<15} {}", "nondegenerate", verdict(nd.passed()));
        if let Some(w) = &nd.witness {
            let _ = writeln!(out, "    witness: {}", w.join(", "));
        }
    }
    out
}

fn dispatch(cmd: Command, exec: Exec) -> Result<Outcome> {
    match cmd {
        Command::Check { input, sigma13, field, samples, seed } => {
            let mut p = load(&input)?;
            if let Some(f) = field {
                p = p.base_change(Field::parse(&f)?)?;
            }
            let sigma13 = match sigma13 {
                Sigma13::Graded => SwapConvention::Graded,
                Sigma13::Plain => SwapConvention::Plain,
            };
            let r = check_all(&p, &AxiomOptions { sigma13, exec, random_elements: samples, seed });
            Ok(Outcome {
                command: "check",
                digest: digest(&[render_stx(&p)]),
                input,
                field: p.field(),
                passed: r.passed(),
                details: to_value(&r),
                human: human_axioms(&r),
            })
        }
        Command::Points { input, sampling } => {
            let p = load(&input)?;
            let (space, exhaustive) = sampling_space(&p, &sampling)?;
            let mode = if exhaustive {
                Mode::Exhaustive { budget: sampling.budget }
            } else {
                Mode::Sampled { samples: sampling.samples.unwrap_or(100), seed: sampling.seed }
            };
            let r = check_truss(&space, mode, exec)?;
            Ok(Outcome {
                command: "points",
                digest: digest(&[render_stx(&p)]),
                input,
                field: space.algebra().field(),
                passed: r.passed(),
                details: to_value(&r),
                human: human_truss(&r),
            })
        }
        Command::Ybe { input, map, q, sampling } => {
            let p = load(&input)?;
            let (space, exhaustive) = sampling_space(&p, &sampling)?;
            let field = space.algebra().field();
            let q = q.map(|v| Scalar::parse(field, &v)).transpose()?;
            let kind = MapKind::parse(&map, q.as_ref())?;
            let mode = if exhaustive {
                YbeMode::Exhaustive { budget: sampling.budget }
            } else {
                YbeMode::Sampled { samples: sampling.samples.unwrap_or(100), seed: sampling.seed }
            };
            let r = check_ybe(&kind, &space, mode, exec)?;
            Ok(Outcome {
                command: "ybe",
                digest: digest(&[render_stx(&p)]),
                input,
                field,
                passed: r.passed(),
                details: to_value(&r),
                human: human_ybe(&r),
            })
        }
        Command::Reduce { input, output } => {
            let p = load(&input)?;
            let red = p.reduce();
            let text = render_stx(&red);
            std::fs::write(&output, &text).map_err(|e| Error::Invalid(format!("{}: {e}", output.display())))?;
            let details = serde_json::json!({
                "output": output.display().to_string(),
                "generators": red.gens().gens().iter().map(|g| g.name.clone()).collect::<Vec<_>>(),
            });
            Ok(Outcome {
                command: "reduce",
                digest: digest(&[render_stx(&p)]),
                input,
                field: p.field(),
                passed: true,
                details,
                human: format!("  wrote {}\n", output.display()),
            })
        }
        Command::Morphism { phi, source, target } => {
            let (p, q) = (load(&source)?, load(&target)?);
            let h = parse_map(&read(&phi)?, p.gens(), q.gens())?;
            let r = check_morphism(&h, &p, &q)?;
            let mut human = String::new();
            for c in &r.checks {
                let _ = writeln!(human, "  {:<8} {}  ({} symbols)", c.condition, verdict(c.passed), c.checked);
                if let Some(w) = &c.witness {
                    let _ = writeln!(human, "    at {}:\n      lhs = {}\n      rhs = {}", w.element, w.lhs, w.rhs);
                }
            }
            Ok(Outcome {
                command: "morphism",
                digest: digest(&[crate::stx::render_map(&h), render_stx(&p), render_stx(&q)]),
                input: format!("{} {source} {target}", phi.display()),
                field: p.field(),
                passed: r.passed(),
                details: to_value(&r),
                human,
            })
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let start = Instant::now();
    let outcome = match dispatch(cli.command, exec) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let timing = cli.timing.then(|| start.elapsed().as_millis());
    if cli.json {
        let report = Report {
            schema_version: SCHEMA_VERSION,
            tool: "supertruss",
            version: env!("CARGO_PKG_VERSION"),
            command: outcome.command,
            input: outcome.input,
            input_digest: outcome.digest,
            field: outcome.field.to_string(),
            sign_blind: outcome.field.is_sign_blind(),
            passed: outcome.passed,
            timing_ms: timing,
            details: outcome.details,
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        let _ = writeln!(out, "{} {} over {}", outcome.command, outcome.input, outcome.field);
        if outcome.field.is_sign_blind() {
            let _ = writeln!(out, "  note: characteristic 2 hides every sign");
        }
        let _ = write!(out, "{}", outcome.human);
        if let Some(ms) = timing {
            let _ = writeln!(out, "  time: {ms} ms");
        }
        let _ = writeln!(out, "{}", if outcome.passed { "PASS" } else { "FAIL" });
    }
    if outcome.passed {
        0
    } else {
        1
    }
}
