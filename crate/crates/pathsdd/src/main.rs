//! Command-line front end: compile graphs, run queries, export circuits.
//! Every invocation prints a single JSON document on stdout. Exit codes:
//! 0 success, 1 domain error, 2 usage error, 3 oracle mismatch.

use clap::{ArgAction, Args, Parser, Subcommand};
use num_bigint::BigUint;
use pathsdd::circuit::{Circuit, State};
use pathsdd::graph::{parse_edge_list, Dag};
use pathsdd::queries::{self, Logits, WeightedState};
use pathsdd::{compile, gen, oracle, CompileError, GraphError, ParseError, QueryError};
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const ORACLE_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "pathsdd", version, about = "Compile s-t simple-path constraints of a DAG into a decision diagram and query it exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// include elapsed wall time in the output (breaks byte-for-byte determinism)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args)]
struct Input {
    /// edge-list graph file
    #[arg(value_name = "GRAPH", required_unless_present = "circuit", conflicts_with = "circuit")]
    graph: Option<PathBuf>,
    /// pre-compiled circuit file (skips compilation)
    #[arg(long, value_name = "PATH")]
    circuit: Option<PathBuf>,
}

#[derive(Args)]
struct LogitsArg {
    /// logits file, JSON {"logits": [...]} or CSV one value per line; absent = all zeros
    #[arg(long, value_name = "PATH")]
    logits: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a graph and optionally write the circuit to a file
    Compile {
        graph: PathBuf,
        /// write the circuit in the text format to this path
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// include full size statistics in the output
        #[arg(long)]
        stats: bool,
    },
    /// Count accepted states (s-t simple paths)
    Count {
        #[command(flatten)]
        input: Input,
        /// cross-check against the brute-force path enumerator
        #[arg(long)]
        oracle: bool,
    },
    /// Probability that a random state satisfies the constraint
    Pqe {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        logits: LogitsArg,
        #[arg(long)]
        oracle: bool,
    },
    /// Most probable satisfying state
    Mpe {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        logits: LogitsArg,
        #[arg(long)]
        oracle: bool,
    },
    /// The k most probable satisfying states
    Topk {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        logits: LogitsArg,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Satisfying states above a probability threshold
    Thresh {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        logits: LogitsArg,
        #[arg(short)]
        t: f64,
        /// threshold the conditional probability P(y|a,κ) instead of P(y|a)
        #[arg(long, default_value_t = false, action = ArgAction::Set)]
        conditional: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate satisfying states in non-increasing probability order
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        logits: LogitsArg,
        /// stop after this many states; absent = exhaust
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        oracle: bool,
    },
    /// Size statistics of a compiled circuit
    Stats {
        #[command(flatten)]
        input: Input,
    },
    /// Graphviz DOT rendering of a compiled circuit
    ExportDot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Generate an (m+1)×(n+1) grid DAG edge list
    GenGrid {
        m: usize,
        n: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

struct CliError {
    code: &'static str,
    message: String,
    location: Option<String>,
    exit: u8,
}

impl CliError {
    fn new(code: &'static str, message: String) -> CliError {
        CliError {
            code,
            message,
            location: None,
            exit: 1,
        }
    }

    fn at(mut self, path: &Path) -> CliError {
        self.location = Some(path.display().to_string());
        self
    }

    fn mismatch(message: String) -> CliError {
        CliError {
            code: "E_ORACLE_MISMATCH",
            message,
            location: None,
            exit: 3,
        }
    }

    fn json(&self) -> Value {
        json!({
            "code": self.code,
            "message": self.message,
            "location": self.location,
        })
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::new("E_PARSE", e.to_string())
    }
}

impl From<CompileError> for CliError {
    fn from(e: CompileError) -> CliError {
        let code = match e {
            CompileError::Cycle(_) => "E_CYCLE",
            CompileError::Degenerate => "E_DEGENERATE",
            _ => "E_RANGE",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> CliError {
        let code = match e {
            GraphError::Cycle(_) => "E_CYCLE",
            GraphError::Degenerate => "E_DEGENERATE",
            GraphError::PrefixOutOfRange { .. } => "E_RANGE",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<QueryError> for CliError {
    fn from(e: QueryError) -> CliError {
        let code = match e {
            QueryError::Unsatisfiable => "E_UNSAT_CONDITION",
            QueryError::NonFinite { .. } => "E_PARSE",
            _ => "E_RANGE",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<oracle::OracleError> for CliError {
    fn from(e: oracle::OracleError) -> CliError {
        CliError::new("E_RANGE", e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::new("E_PARSE", format!("cannot read file: {e}")).at(path))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)
        .map_err(|e| CliError::new("E_PARSE", format!("cannot write file: {e}")).at(path))
}

/// Loads the circuit, compiling from a graph file when one is given; the
/// Dag is kept around for `--oracle` cross-checks.
fn load_input(input: &Input) -> Result<(Circuit, Option<Dag>), CliError> {
    if let Some(path) = &input.graph {
        let text = read_file(path)?;
        let d = parse_edge_list(&text).map_err(|e| CliError::from(e).at(path))?;
        let c = compile(&d).map_err(|e| CliError::from(e).at(path))?;
        Ok((c, Some(d)))
    } else {
        let path = input.circuit.as_ref().expect("clap enforces one of the two");
        let text = read_file(path)?;
        let c = Circuit::deserialize(&text)
            .map_err(|e| CliError::new("E_PARSE", e.to_string()).at(path))?;
        Ok((c, None))
    }
}

fn load_logits(arg: &LogitsArg, k: usize) -> Result<Logits<f64>, CliError> {
    let Some(path) = &arg.logits else {
        return Ok(Logits::zeros(k));
    };
    let text = read_file(path)?;
    let values: Vec<f64> = if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::new("E_PARSE", format!("bad logits JSON: {e}")).at(path))?;
        let arr = doc
            .get("logits")
            .and_then(Value::as_array)
            .ok_or_else(|| {
                CliError::new("E_PARSE", "logits JSON must be {\"logits\": [...]}".into()).at(path)
            })?;
        arr.iter()
            .map(|v| {
                v.as_f64().ok_or_else(|| {
                    CliError::new("E_PARSE", format!("non-numeric logit: {v}")).at(path)
                })
            })
            .collect::<Result<_, _>>()?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.parse::<f64>().map_err(|e| {
                    CliError::new("E_PARSE", format!("bad logit value {l:?}: {e}")).at(path)
                })
            })
            .collect::<Result<_, _>>()?
    };
    if values.len() != k {
        return Err(CliError::new(
            "E_RANGE",
            format!("expected {k} logits, file has {}", values.len()),
        )
        .at(path));
    }
    Logits::new(values).map_err(CliError::from)
}

fn require_dag<'a>(d: &'a Option<Dag>) -> Result<&'a Dag, CliError> {
    d.as_ref().ok_or_else(|| {
        CliError::new(
            "E_RANGE",
            "--oracle needs the graph file, not a pre-compiled circuit".into(),
        )
    })
}

fn weighted_json(w: &WeightedState<f64>) -> Value {
    json!({
        "state": w.state.to_string(),
        "log_weight": w.log_weight,
        "prob": w.prob,
        "cond_prob": w.cond_prob,
    })
}

fn close(a: f64, b: f64) -> bool {
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= ORACLE_TOL * scale
}

/// Conditional and unconditioned probabilities of every accepted state,
/// straight from the exhaustive oracle.
fn brute_accepted(d: &Dag, a: &Logits<f64>) -> Result<Vec<(State, f64, f64)>, CliError> {
    let rows = oracle::brute_distribution(d, a)?;
    let total: f64 = rows.iter().filter(|r| r.accepted).map(|r| r.prob).sum();
    Ok(rows
        .into_iter()
        .filter(|r| r.accepted)
        .map(|r| (r.state, r.prob, r.prob / total))
        .collect())
}

fn check_ranked(
    d: &Dag,
    a: &Logits<f64>,
    out: &[WeightedState<f64>],
    exhaustive: bool,
) -> Result<(), CliError> {
    let brute = brute_accepted(d, a)?;
    if exhaustive && out.len() != brute.len() {
        return Err(CliError::mismatch(format!(
            "enumerated {} states, oracle found {}",
            out.len(),
            brute.len()
        )));
    }
    let mut prev = f64::INFINITY;
    for w in out {
        let Some((_, p, _)) = brute.iter().find(|(s, _, _)| *s == w.state) else {
            return Err(CliError::mismatch(format!(
                "state {} is not an s-t path per the oracle",
                w.state
            )));
        };
        if !close(w.prob, *p) {
            return Err(CliError::mismatch(format!(
                "prob of {} is {} but oracle says {}",
                w.state, w.prob, p
            )));
        }
        if w.prob > prev + ORACLE_TOL {
            return Err(CliError::mismatch(format!(
                "ranking is not non-increasing at state {}",
                w.state
            )));
        }
        prev = w.prob;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Compile { graph, out, stats } => {
            let text = read_file(graph)?;
            let d = parse_edge_list(&text).map_err(|e| CliError::from(e).at(graph))?;
            let c = compile(&d).map_err(|e| CliError::from(e).at(graph))?;
            let s = c.stats();
            if let Some(path) = out {
                write_file(path, &c.serialize())?;
            }
            let mut doc = json!({
                "k": c.k(),
                "decision_count": s.decision_count,
                "node_count": c.node_count(),
                "out": out.as_ref().map(|p| p.display().to_string()),
            });
            if *stats {
                doc["stats"] = stats_json(&c);
            }
            Ok(doc)
        }
        Command::Count { input, oracle: check } => {
            let (c, d) = load_input(input)?;
            let count = queries::count_models(&c);
            if *check {
                let d = require_dag(&d)?;
                let brute = BigUint::from(oracle::brute_paths(d)?.states.len());
                if brute != count {
                    return Err(CliError::mismatch(format!(
                        "count {count} but oracle enumerated {brute} paths"
                    )));
                }
            }
            Ok(json!({ "count": count.to_string() }))
        }
        Command::Pqe { input, logits, oracle: check } => {
            let (c, d) = load_input(input)?;
            let a = load_logits(logits, c.k())?;
            let p = queries::pqe(&c, &a)?;
            if *check {
                let d = require_dag(&d)?;
                let brute: f64 = brute_accepted(d, &a)?.iter().map(|(_, p, _)| p).sum();
                if !close(p, brute) {
                    return Err(CliError::mismatch(format!(
                        "pqe {p} but oracle sums to {brute}"
                    )));
                }
            }
            Ok(json!({ "pqe": p }))
        }
        Command::Mpe { input, logits, oracle: check } => {
            let (c, d) = load_input(input)?;
            let a = load_logits(logits, c.k())?;
            let w = queries::mpe(&c, &a)?;
            if *check {
                let d = require_dag(&d)?;
                let (best, _) = oracle::dag_best_path(d, &a)
                    .map_err(|e| CliError::new("E_RANGE", e.to_string()))?;
                if best != w.state {
                    return Err(CliError::mismatch(format!(
                        "mpe state {} but oracle found {best}",
                        w.state
                    )));
                }
            }
            Ok(weighted_json(&w))
        }
        Command::Topk { input, logits, k, oracle: check } => {
            if *k == 0 {
                return Err(CliError::new("E_RANGE", "k must be at least 1".into()));
            }
            let (c, d) = load_input(input)?;
            let a = load_logits(logits, c.k())?;
            let out = queries::ranked_enumerate(&c, &a, *k)?;
            if *check {
                check_ranked(require_dag(&d)?, &a, &out, false)?;
            }
            Ok(json!({ "states": out.iter().map(weighted_json).collect::<Vec<_>>() }))
        }
        Command::Enumerate { input, logits, limit, oracle: check } => {
            let (c, d) = load_input(input)?;
            let a = load_logits(logits, c.k())?;
            let out = queries::ranked_enumerate(&c, &a, limit.unwrap_or(usize::MAX))?;
            if *check {
                check_ranked(require_dag(&d)?, &a, &out, limit.is_none())?;
            }
            Ok(json!({ "states": out.iter().map(weighted_json).collect::<Vec<_>>() }))
        }
        Command::Thresh { input, logits, t, conditional, oracle: check } => {
            let (c, d) = load_input(input)?;
            let a = load_logits(logits, c.k())?;
            let out = if *conditional {
                queries::cond_thresh(&c, &a, *t)?
            } else {
                queries::thresh(&c, &a, *t)?
            };
            if *check {
                let d = require_dag(&d)?;
                let brute: Vec<(State, f64, f64)> = brute_accepted(d, &a)?
                    .into_iter()
                    .filter(|(_, p, cp)| if *conditional { *cp } else { *p } >= *t - ORACLE_TOL)
                    .collect();
                for w in &out {
                    if !brute.iter().any(|(s, _, _)| *s == w.state) {
                        return Err(CliError::mismatch(format!(
                            "state {} fails the oracle filter",
                            w.state
                        )));
                    }
                }
                // extra oracle states must sit inside the tolerance band
                for (s, p, cp) in &brute {
                    let v = if *conditional { *cp } else { *p };
                    if !out.iter().any(|w| w.state == *s) && v > *t + ORACLE_TOL {
                        return Err(CliError::mismatch(format!(
                            "oracle keeps state {s} (value {v}) above threshold {t}"
                        )));
                    }
                }
            }
            Ok(json!({ "states": out.iter().map(weighted_json).collect::<Vec<_>>() }))
        }
        Command::Stats { input } => {
            let (c, _) = load_input(input)?;
            Ok(stats_json(&c))
        }
        Command::ExportDot { input, out } => {
            let (c, _) = load_input(input)?;
            let dot = c.to_dot();
            if let Some(path) = out {
                write_file(path, &dot)?;
                Ok(json!({ "out": path.display().to_string(), "bytes": dot.len() }))
            } else {
                Ok(json!({ "dot": dot }))
            }
        }
        Command::GenGrid { m, n, out } => {
            if *m == 0 || *n == 0 {
                return Err(CliError::new("E_RANGE", "m and n must be at least 1".into()));
            }
            let text = gen::grid(*m, *n);
            let vertices = (m + 1) * (n + 1);
            let edges = (m + 1) * n + (n + 1) * m;
            if let Some(path) = out {
                write_file(path, &text)?;
                Ok(json!({
                    "vertices": vertices,
                    "edges": edges,
                    "out": path.display().to_string(),
                }))
            } else {
                Ok(json!({ "vertices": vertices, "edges": edges, "graph": text }))
            }
        }
    }
}

fn stats_json(c: &Circuit) -> Value {
    let s = c.stats();
    json!({
        "k": c.k(),
        "node_count": c.node_count(),
        "decision_count": s.decision_count,
        "terminal_count": s.terminal_count,
        "wire_count": s.wire_count,
        "depth": s.depth,
        "reduced": c.is_reduced(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut doc) => {
            if cli.timing {
                doc["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            println!("{doc}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", e.json());
            ExitCode::from(e.exit)
        }
    }
}
