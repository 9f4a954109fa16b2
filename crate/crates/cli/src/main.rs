//! `pblock` command-line front end.
//!
//! Vertex ids in every file and in every printed set are 1-based, as in the
//! `.gr` format. Exit codes: 0 on YES or success, 1 on NO or a failed check,
//! 2 on usage and input errors.

mod gen;
mod random;
mod selftest;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use pblock::decomposition::{
    exact_td_small, heuristic_td, parse_td, to_nice, to_td, validate_td, NiceKind, TreeDecomposition,
    EXACT_TD_LIMIT,
};
use pblock::graph::parse_gr;
use pblock::labeling::{enumerate_connected, enumerate_ud};
use pblock::oracle::{brute_force_witness, verify_solution};
use pblock::{Graph, Instance, Mode, PFamily};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

/// Version of every JSON document the CLI prints or writes.
pub const JSON_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "pblock", version, about = "Bounded P-block / P-component vertex deletion")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance with the dynamic program or the brute-force oracle.
    Solve(SolveArgs),
    /// Check a given deletion set.
    Verify(VerifyArgs),
    /// Emit a gadget instance as `.gr`, `.td` and a JSON sidecar.
    #[command(subcommand)]
    Gen(gen::GenCmd),
    /// Tree decomposition utilities.
    #[command(subcommand)]
    Td(TdCmd),
    /// List the pattern universe for `d` and a family.
    EnumUd(EnumUdArgs),
    /// Run seeded oracle-equivalence and partition identity checks.
    Selftest(selftest::SelftestArgs),
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long, default_value = "block")]
    mode: Mode,
    #[arg(long)]
    family: PFamily,
    #[arg(short)]
    d: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(short)]
    k: usize,
    #[arg(long)]
    graph: PathBuf,
    /// Tree decomposition to use; computed when absent.
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "dp")]
    engine: Engine,
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    json: bool,
    /// Include wall-clock time in the output (breaks byte reproducibility).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Engine {
    Dp,
    Oracle,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Sidecar written by `gen`; supplies mode, family, d, k and the set.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    family: Option<PFamily>,
    #[arg(short)]
    d: Option<usize>,
    /// Comma-separated vertex ids; overrides the sidecar's planted set.
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum TdCmd {
    /// Check a decomposition against a graph.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
    },
    /// Min-fill elimination decomposition.
    Heuristic {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Optimal decomposition for small graphs.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = EXACT_TD_LIMIT)]
        limit: usize,
    },
    /// Print the nice decomposition, one node per line.
    Nice {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EnumUdArgs {
    #[arg(short)]
    d: usize,
    #[arg(long)]
    family: PFamily,
    /// List connected patterns (component mode) instead of biconnected ones.
    #[arg(long)]
    connected: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> anyhow::Result<ExitCode> {
    match cmd {
        Cmd::Solve(a) => solve(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Gen(g) => gen::run(g),
        Cmd::Td(t) => td(t),
        Cmd::EnumUd(a) => enum_ud(a),
        Cmd::Selftest(a) => selftest::run(a),
    }
}

pub fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_gr(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_td(path: &Path, g: &Graph) -> anyhow::Result<TreeDecomposition> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let td = parse_td(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Err(v) = validate_td(g, &td) {
        bail!("{} is not a tree decomposition of the graph: {v}", path.display());
    }
    Ok(td)
}

fn auto_td(g: &Graph) -> anyhow::Result<TreeDecomposition> {
    Ok(if g.n() <= EXACT_TD_LIMIT { exact_td_small(g, EXACT_TD_LIMIT)? } else { heuristic_td(g) })
}

/// Writes `text` to stdout, treating a closed pipe as success.
fn emit(text: &str) -> anyhow::Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Serialize)]
struct SolveReport {
    version: u32,
    engine: &'static str,
    mode: String,
    family: String,
    d: usize,
    k: usize,
    n: usize,
    m: usize,
    decision: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<Stats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_ms: Option<u128>,
}

#[derive(Serialize)]
struct Stats {
    width: usize,
    nodes: usize,
    states: usize,
    retained: usize,
    max_family: usize,
}

fn solve(a: SolveArgs) -> anyhow::Result<ExitCode> {
    let g = read_graph(&a.graph)?;
    let p = &a.problem;
    let inst = Instance::new(g.clone(), p.d, a.k, p.family, p.mode);
    let start = Instant::now();
    let (yes, witness, stats) = match a.engine {
        Engine::Dp => {
            let td = match &a.td {
                Some(path) => read_td(path, &g)?,
                None => auto_td(&g)?,
            };
            let ntd = to_nice(&g, &td)?;
            let sol = pblock::solve(&inst, &ntd, a.witness)?;
            let s = sol.stats;
            let stats = Stats {
                width: ntd.width(),
                nodes: s.nodes,
                states: s.states,
                retained: s.retained,
                max_family: s.max_family,
            };
            (sol.yes, sol.witness, Some(stats))
        }
        Engine::Oracle => {
            let w = brute_force_witness(&inst)?;
            (w.is_some(), if a.witness { w } else { None }, None)
        }
    };
    let elapsed = start.elapsed();
    let report = SolveReport {
        version: JSON_VERSION,
        engine: match a.engine {
            Engine::Dp => "dp",
            Engine::Oracle => "oracle",
        },
        mode: p.mode.to_string(),
        family: p.family.to_string(),
        d: p.d,
        k: a.k,
        n: g.n(),
        m: g.m(),
        decision: if yes { "YES" } else { "NO" },
        witness: witness.as_deref().map(one_based),
        stats,
        time_ms: a.timing.then_some(elapsed.as_millis()),
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}", report.decision);
        if let Some(w) = &report.witness {
            println!("witness: {}", w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        }
        if let Some(t) = report.time_ms {
            println!("time_ms: {t}");
        }
    }
    Ok(exit(yes))
}

fn verify(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    let g = read_graph(&a.graph)?;
    let side: Option<gen::Sidecar> = match &a.sidecar {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?)
        }
        None => None,
    };
    let mode = match (a.mode, &side) {
        (Some(m), _) => m,
        (None, Some(s)) => s.mode.parse()?,
        _ => bail!("--mode or --sidecar is required"),
    };
    let family = match (a.family, &side) {
        (Some(f), _) => f,
        (None, Some(s)) => s.family.parse()?,
        _ => bail!("--family or --sidecar is required"),
    };
    let d = a.d.or(side.as_ref().map(|s| s.d)).context("-d or --sidecar is required")?;
    let set = match (a.set, &side) {
        (Some(s), _) => s,
        (None, Some(s)) => s.planted.clone().context("sidecar has no planted set")?,
        _ => bail!("--set or --sidecar is required"),
    };
    if let Some(&v) = set.iter().find(|&&v| v == 0 || v > g.n()) {
        bail!("vertex {v} out of range");
    }
    let zero: Vec<usize> = set.iter().map(|v| v - 1).collect();
    let ok = verify_solution(&g, &zero, d, family, mode);
    let within = side.as_ref().is_none_or(|s| set.len() <= s.k);
    println!("{} ({} vertices, mode {mode}, family {family}, d {d})", if ok && within { "VALID" } else { "INVALID" }, set.len());
    Ok(exit(ok && within))
}

fn td(cmd: TdCmd) -> anyhow::Result<ExitCode> {
    match cmd {
        TdCmd::Validate { graph, td } => {
            let g = read_graph(&graph)?;
            let text = std::fs::read_to_string(&td).with_context(|| format!("reading {}", td.display()))?;
            let t = parse_td(&text)?;
            match validate_td(&g, &t) {
                Ok(()) => {
                    println!("valid, width {}", t.width());
                    Ok(ExitCode::SUCCESS)
                }
                Err(v) => {
                    println!("invalid: {v}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        TdCmd::Heuristic { graph } => {
            let g = read_graph(&graph)?;
            emit(&to_td(&heuristic_td(&g), g.n()))?;
            Ok(ExitCode::SUCCESS)
        }
        TdCmd::Exact { graph, limit } => {
            let g = read_graph(&graph)?;
            emit(&to_td(&exact_td_small(&g, limit)?, g.n()))?;
            Ok(ExitCode::SUCCESS)
        }
        TdCmd::Nice { graph, td } => {
            let g = read_graph(&graph)?;
            let t = match td {
                Some(p) => read_td(&p, &g)?,
                None => auto_td(&g)?,
            };
            let ntd = to_nice(&g, &t)?;
            let mut out = format!("c nice decomposition, {} nodes, width {}\n", ntd.nodes.len(), ntd.width());
            for (i, node) in ntd.nodes.iter().enumerate() {
                let kind = match node.kind {
                    NiceKind::Leaf => "leaf".to_string(),
                    NiceKind::Introduce(v) => format!("introduce {}", v + 1),
                    NiceKind::Forget(v) => format!("forget {}", v + 1),
                    NiceKind::Join => "join".to_string(),
                };
                let bag: Vec<String> = node.bag.iter().map(|v| (v + 1).to_string()).collect();
                let kids: Vec<String> = node.children.iter().map(|c| (c + 1).to_string()).collect();
                out += &format!("{} {kind} | children [{}] | bag [{}]\n", i + 1, kids.join(" "), bag.join(" "));
            }
            emit(&out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn enum_ud(a: EnumUdArgs) -> anyhow::Result<ExitCode> {
    let pats = if a.connected { enumerate_connected(a.d, a.family)? } else { enumerate_ud(a.d, a.family)? };
    let mut out = format!("{} patterns\n", pats.len());
    for p in &pats {
        out += &format!("{p}\n");
    }
    emit(&out)?;
    Ok(ExitCode::SUCCESS)
}
