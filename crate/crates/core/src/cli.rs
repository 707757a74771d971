//! The `locequiv` command line.
//!
//! Exit status: 0 when the graphs are equivalent (or the command succeeded),
//! 1 when they are not, 2 on any error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::analysis::analyze;
use crate::decider::{decide_general_with, DecideOptions, Decision};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::graph::LabeledGraph;
use crate::io::{graph_to_value, ops_to_value, parse_graph, parse_ops, scalar_value, serialize_graph, serialize_ops};
use crate::lambda::{big_lambda, PhiVector};
use crate::orbit::orbit;
use crate::random::random_graph;
use crate::witness::extract_ops_general;

pub const EXIT_EQUIVALENT: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "locequiv", version, about = "Local equivalence of labelled graphs over odd finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Args)]
pub struct Config {
    /// Field characteristic; inputs must match it when given.
    #[arg(long, global = true)]
    pub field_p: Option<u64>,
    /// Extension degree.
    #[arg(long, global = true)]
    pub field_k: Option<u32>,
    /// Monic modulus coefficients, constant term first, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u64>>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Canonical search order even with several workers.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Search threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// RNG seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Node limit for orbit enumeration.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub limit: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether two graphs are locally equivalent.
    Decide { g: String, h: String },
    /// Print local operations taking the first graph to the second.
    Witness { g: String, h: String },
    /// Apply an operator sequence to a graph.
    Apply { g: String, ops: String },
    /// Enumerate the orbit of a graph.
    Orbit {
        g: String,
        /// List every member.
        #[arg(long)]
        members: bool,
    },
    /// Report the structure of the self-equivalence space.
    Analyze {
        g: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Emit a random graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

impl Config {
    fn field(&self) -> Result<Option<Field>> {
        match (self.field_p, self.field_k, &self.modulus) {
            (None, None, None) => Ok(None),
            (None, _, _) => Err(Error::InvalidArgument("--field-k and --modulus need --field-p".into())),
            (Some(p), k, m) => Field::from_parts(p, k.unwrap_or(1), m.as_deref()).map(Some),
        }
    }

    fn options(&self) -> DecideOptions {
        DecideOptions {
            deterministic: self.deterministic || self.workers <= 1,
            workers: self.workers.max(1),
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidArgument(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn load_graph(path: &str, expected: &Option<Field>) -> Result<LabeledGraph> {
    let g = parse_graph(&read_input(path)?)?;
    if let Some(f) = expected {
        if g.field() != f {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(g)
}

fn load_pair(g: &str, h: &str, cfg: &Config) -> Result<(LabeledGraph, LabeledGraph)> {
    let field = cfg.field()?;
    let g = load_graph(g, &field)?;
    let h = load_graph(h, &field)?;
    if g.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: h.n(),
        });
    }
    Ok((g, h))
}

fn phi_json(f: &Field, p: &PhiVector) -> Value {
    let vals = |v: &[Fe]| v.iter().map(|&a| scalar_value(f, a)).collect::<Vec<_>>();
    json!({"X": vals(&p.x), "Y": vals(&p.y), "Z": vals(&p.z), "T": vals(&p.t)})
}

fn phi_text(f: &Field, p: &PhiVector) -> String {
    let row = |v: &[Fe]| v.iter().map(|&a| f.format(a)).collect::<Vec<_>>().join(" ");
    format!("X: {}\nY: {}\nZ: {}\nT: {}", row(&p.x), row(&p.y), row(&p.z), row(&p.t))
}

/// Parse `args` (program name first) and run, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_EQUIVALENT };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
}

/// Run a parsed command; returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Decide { g, h } => {
            let (g, h) = load_pair(g, h, cfg)?;
            let f = g.field();
            let start = Instant::now();
            let (d, stats) = decide_general_with(&g, &h, &cfg.options())?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let dim = big_lambda(&g, &h)?.dim();
            let code = if d.is_equivalent() { EXIT_EQUIVALENT } else { EXIT_NOT_EQUIVALENT };
            if cfg.json {
                let mut v = json!({
                    "verdict": if d.is_equivalent() { "equivalent" } else { "not_equivalent" },
                    "lambda_dim": dim,
                    "component_dims": stats.dims,
                    "checks": stats.checks,
                    "elapsed_ms": elapsed,
                });
                match &d {
                    Decision::Equivalent { witness, .. } => v["witness"] = phi_json(f, witness),
                    Decision::NotEquivalent { certificate } => v["certificate"] = json!(certificate),
                }
                emit(out, &v.to_string())?;
            } else {
                match &d {
                    Decision::Equivalent { witness, .. } => {
                        emit(out, "equivalent")?;
                        emit(out, &phi_text(f, witness))?;
                    }
                    Decision::NotEquivalent { certificate } => {
                        emit(out, "not equivalent")?;
                        emit(out, certificate)?;
                    }
                }
                emit(out, &format!("dim Lambda: {dim}, checks: {}, time: {elapsed:.2} ms", stats.checks))?;
            }
            Ok(code)
        }
        Command::Witness { g, h } => {
            let (g, h) = load_pair(g, h, cfg)?;
            let (d, _) = decide_general_with(&g, &h, &cfg.options())?;
            let Some(phi) = d.witness() else {
                if cfg.json {
                    emit(out, &json!({"verdict": "not_equivalent"}).to_string())?;
                } else {
                    emit(out, "not equivalent")?;
                }
                return Ok(EXIT_NOT_EQUIVALENT);
            };
            let ops = extract_ops_general(&g, &h, phi)?;
            if g.apply_sequence(&ops)? != h {
                return Err(Error::InternalInvariantViolation("extracted operations do not reach the target".into()));
            }
            if cfg.json {
                let v = json!({"verdict": "equivalent", "ops": ops_to_value(g.field(), &ops)});
                emit(out, &v.to_string())?;
            } else {
                emit(out, &serialize_ops(g.field(), &ops))?;
            }
            Ok(EXIT_EQUIVALENT)
        }
        Command::Apply { g, ops } => {
            let g = load_graph(g, &cfg.field()?)?;
            let ops = parse_ops(g.field(), g.n(), &read_input(ops)?)?;
            emit(out, &serialize_graph(&g.apply_sequence(&ops)?))?;
            Ok(EXIT_EQUIVALENT)
        }
        Command::Orbit { g, members } => {
            let g = load_graph(g, &cfg.field()?)?;
            let o = orbit(&g, cfg.limit)?;
            if cfg.json {
                let mut v = json!({"size": o.len()});
                if *members {
                    v["members"] = Value::Array(o.members().iter().map(graph_to_value).collect());
                }
                emit(out, &v.to_string())?;
            } else {
                emit(out, &format!("orbit size: {}", o.len()))?;
                if *members {
                    for m in o.members() {
                        emit(out, &serialize_graph(&m))?;
                    }
                }
            }
            Ok(EXIT_EQUIVALENT)
        }
        Command::Analyze { g, samples } => {
            let g = load_graph(g, &cfg.field()?)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
            let report = analyze(&g, *samples, &mut rng)?;
            let v = report.to_json();
            if cfg.json {
                emit(out, &v.to_string())?;
            } else {
                emit(out, &serde_json::to_string_pretty(&v).expect("value serializes"))?;
            }
            Ok(EXIT_EQUIVALENT)
        }
        Command::Random { n, density } => {
            let seed = cfg
                .seed
                .ok_or_else(|| Error::InvalidArgument("random needs --seed".into()))?;
            if !(0.0..=1.0).contains(density) {
                return Err(Error::InvalidArgument(format!("density {density} is outside [0, 1]")));
            }
            if *n == 0 {
                return Err(Error::InvalidArgument("n must be positive".into()));
            }
            let f = cfg.field()?.unwrap_or(Field::prime(3)?);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            emit(out, &serialize_graph(&random_graph(&f, *n, *density, &mut rng)))?;
            Ok(EXIT_EQUIVALENT)
        }
    }
}
