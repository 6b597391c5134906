//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 invalid input, 2 failed internal check.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::circuit::{Circuit, CostReport};
use crate::covering::solve_cactus;
use crate::error::{Error, Result};
use crate::graph::{families, random_cactus, Graph};
use crate::hash::{find_good_set, reference_hash_circuit, synthesize_hash, vertex_angles, HashParams};
use crate::qft::{synthesize_qft, verify_qft};
use crate::sim::{equiv_up_to_permutation, unitary_of, DEFAULT_TOLERANCE};

#[derive(Debug, Parser)]
#[command(name = "cactus-synth", version, about = "Covering-path routing and circuit synthesis for cactus devices")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Qasm,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Hash,
    Qft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Random,
    Chain,
    Star,
    Line,
    Cycle,
}

#[derive(Debug, clap::Args)]
pub struct HashArgs {
    /// Number of applications of the hashing operator.
    #[arg(long = "l", default_value_t = 1)]
    pub l: usize,
    #[arg(long, default_value_t = 17)]
    pub p: u64,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_trials: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shortest 1-covering path.
    Path {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Hashing circuit for `l` applications.
    Hash {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        args: HashArgs,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(long)]
        report: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// QFT circuit.
    Qft {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(long)]
        report: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Simulates a synthesized circuit against its reference.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        #[command(flatten)]
        args: HashArgs,
    },
    /// Cost reports and bound checks, no circuits.
    Cost {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        args: HashArgs,
    },
    /// Writes a graph JSON.
    Gen {
        #[arg(long, value_enum, default_value_t = Family::Random)]
        family: Family,
        /// Vertex count (random, line, cycle), leaf count (star) or cycle count (chain).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PathNotCovering { .. } | Error::DisconnectedRemainder { .. } | Error::NotAdjacent { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("--graph {}: {e}", path.display())))?;
    let g = Graph::from_json(&text)?;
    g.check_connected()?;
    Ok(g)
}

fn hash_params(args: &HashArgs) -> Result<HashParams> {
    if args.l == 0 {
        return Err(Error::InvalidParameter("--l must be at least 1".into()));
    }
    find_good_set(args.p, args.epsilon, args.seed, args.max_trials)
}

fn circuit_text(c: &Circuit, emit: Emit) -> String {
    match emit {
        Emit::Qasm => c.to_qasm(),
        Emit::Json => c.to_json(),
    }
}

fn circuit_value(c: &Circuit, emit: Emit) -> Value {
    match emit {
        Emit::Qasm => Value::String(c.to_qasm()),
        Emit::Json => serde_json::to_value(c).expect("circuit serializes"),
    }
}

fn report_value(r: &CostReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

/// Prints the circuit alone when emitting without a report, the report JSON otherwise.
fn finish(
    circuit: &Circuit,
    mut body: Value,
    emit: Option<Emit>,
    report: bool,
    output: &Option<PathBuf>,
) -> Result<String> {
    if let Some(file) = output {
        std::fs::write(file, circuit_text(circuit, emit.unwrap_or(Emit::Json)))?;
    }
    match emit {
        Some(e) if !report && output.is_none() => Ok(circuit_text(circuit, e)),
        Some(e) if output.is_none() => {
            body["circuit"] = circuit_value(circuit, e);
            Ok(pretty(&body))
        }
        _ => Ok(pretty(&body)),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

/// Runs one command and returns what it prints on stdout.
pub fn execute(config: &RunConfig) -> std::result::Result<String, Failure> {
    match &config.command {
        Command::Path { graph } => {
            let g = load_graph(graph)?;
            let p = solve_cactus(&g)?;
            let covered = p.is_one_covering(&g);
            if !covered {
                return Err(Failure { code: 2, message: "solver path does not cover the graph".into() });
            }
            Ok(pretty(&json!({ "path": p.vertices, "length": p.length(), "covered_check": covered })))
        }
        Command::Hash { graph, args, emit, report, output } => {
            let g = load_graph(graph)?;
            let params = hash_params(args)?;
            let r = synthesize_hash(&g, args.l, &params)?;
            let body = json!({
                "path": r.path.vertices,
                "target_start": r.target_start,
                "l": r.l,
                "coefficients": params.coefficients,
                "cost": report_value(&r.cost),
                "theorem1_holds": r.cost.exact(),
                "final_layout": r.circuit.final_layout(),
            });
            Ok(finish(&r.circuit, body, *emit, *report, output)?)
        }
        Command::Qft { graph, emit, report, output } => {
            let g = load_graph(graph)?;
            let r = synthesize_qft(&g)?;
            let body = json!({
                "K": r.plan.k_sum(),
                "cnot_count": r.cost.cnot_count,
                "bounds": r.cost.bounds,
                "s": r.plan.s,
                "final_position": r.final_position,
            });
            Ok(finish(&r.circuit, body, *emit, *report, output)?)
        }
        Command::Verify { graph, what, args } => {
            let g = load_graph(graph)?;
            let (equivalence, permutation) = match what {
                What::Hash => {
                    let params = hash_params(args)?;
                    let r = synthesize_hash(&g, args.l, &params)?;
                    let angles = vertex_angles(g.n(), r.target_start, &params);
                    let reference = reference_hash_circuit(g.n(), r.target_start, &angles, args.l);
                    let layout = r.circuit.final_layout();
                    let e = equiv_up_to_permutation(
                        &unitary_of(&r.circuit)?,
                        &unitary_of(&reference)?,
                        &layout,
                        DEFAULT_TOLERANCE,
                    );
                    (e, layout)
                }
                What::Qft => {
                    let r = synthesize_qft(&g)?;
                    (verify_qft(&r, DEFAULT_TOLERANCE)?, r.final_position.clone())
                }
            };
            let body = json!({
                "what": format!("{what:?}").to_lowercase(),
                "deviation": equivalence.deviation,
                "permutation": permutation,
                "pass": equivalence.equivalent,
            });
            if equivalence.equivalent {
                Ok(pretty(&body))
            } else {
                Err(Failure { code: 2, message: pretty(&body) })
            }
        }
        Command::Cost { graph, args } => {
            let g = load_graph(graph)?;
            let params = hash_params(args)?;
            let hash = synthesize_hash(&g, args.l, &params)?;
            let qft = synthesize_qft(&g)?;
            Ok(pretty(&json!({ "hash": report_value(&hash.cost), "qft": report_value(&qft.cost) })))
        }
        Command::Gen { family, n, seed, output } => {
            if *n == 0 {
                return Err(Error::InvalidParameter("--n must be positive".into()).into());
            }
            let g = match family {
                Family::Random => random_cactus(*n, *seed),
                Family::Chain => families::chain_of_four_cycles(*n),
                Family::Star => families::star(*n),
                Family::Line => families::line(*n),
                Family::Cycle if *n >= 3 => families::cycle(*n),
                Family::Cycle => return Err(Error::InvalidParameter("a cycle needs --n >= 3".into()).into()),
            };
            let text = g.to_json();
            if let Some(file) = output {
                std::fs::write(file, &text).map_err(Error::from)?;
            }
            Ok(text)
        }
    }
}

/// Parses `args`, runs, writes outputs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&config) {
        Ok(text) => {
            let _ = writeln!(out, "{}", text.trim_end());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
