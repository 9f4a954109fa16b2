//! `gen` subcommands.

use crate::JSON_VERSION;
use anyhow::{bail, Context};
use clap::{Args, Subcommand};
use pblock::decomposition::to_td;
use pblock::gadgets::{gen_fixed_d, gen_unbounded_d, ColoredGraph, Generated, GridISInstance, UnboundedVariant};
use pblock::graph::to_gr;
use pblock::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Subcommand)]
pub enum GenCmd {
    /// Fixed-d construction from a random permutation independent set grid.
    PermIs(PermIsArgs),
    /// Unbounded-d construction from a random multicolored clique instance.
    Clique(CliqueArgs),
    /// Unbounded-d construction from a subgraph isomorphism instance.
    SubgraphIso(SubgraphIsoArgs),
}

#[derive(Args)]
pub struct Common {
    /// Output prefix; writes PREFIX.gr, PREFIX.td and PREFIX.json.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Plant a solution and record the matching deletion set.
    #[arg(long)]
    planted: bool,
}

#[derive(Args)]
pub struct PermIsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(short, default_value_t = 2)]
    k: usize,
    #[arg(short, default_value_t = 4)]
    d: usize,
    #[arg(long, value_enum, default_value = "component")]
    variant: Variant,
    /// Probability of each extra grid edge.
    #[arg(long, default_value_t = 0.0)]
    density: f64,
}

#[derive(Clone, Copy, clap::ValueEnum)]
pub enum Variant {
    Component,
    Block,
}

#[derive(Args)]
pub struct CliqueArgs {
    #[command(flatten)]
    common: Common,
    #[arg(short, default_value_t = 3)]
    k: usize,
    #[arg(short, default_value_t = 2)]
    t: usize,
    /// Edges between every two classes; defaults to t.
    #[arg(long)]
    per_pair: Option<usize>,
}

#[derive(Args)]
pub struct SubgraphIsoArgs {
    #[command(flatten)]
    common: Common,
    /// Pattern graph in `.gr` format; the path on k vertices when absent.
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(short, default_value_t = 3)]
    k: usize,
    /// Host graph in `.gr` format; random when absent.
    #[arg(long)]
    host: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    host_size: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
}

/// The JSON sidecar written next to a generated instance.
#[derive(Serialize, Deserialize)]
pub struct Sidecar {
    pub version: u32,
    pub generator: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub mode: String,
    pub family: String,
    pub d: usize,
    /// Deletion budget.
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub width_bound: usize,
    pub td_width: usize,
    /// 1-based deletion set, when a solution was planted.
    pub planted: Option<Vec<usize>>,
}

pub fn run(cmd: GenCmd) -> anyhow::Result<ExitCode> {
    let (name, common, params, gen) = match cmd {
        GenCmd::PermIs(a) => {
            let g = perm_is(&a)?;
            let p = params(&[("k", a.k.into()), ("d", a.d.into()), ("density", a.density.into())]);
            ("perm-is", a.common, p, g)
        }
        GenCmd::Clique(a) => {
            let g = clique(&a)?;
            let p = params(&[("k", a.k.into()), ("t", a.t.into()), ("per_pair", a.per_pair.unwrap_or(a.t).into())]);
            ("clique", a.common, p, g)
        }
        GenCmd::SubgraphIso(a) => {
            let g = subgraph_iso(&a)?;
            let p = params(&[("k", a.k.into()), ("host_size", a.host_size.into()), ("density", a.density.into())]);
            ("subgraph-iso", a.common, p, g)
        }
    };
    let mut params = params;
    params.insert("seed".into(), common.seed.into());
    let inst = &gen.instance;
    let side = Sidecar {
        version: JSON_VERSION,
        generator: name.into(),
        params,
        mode: inst.mode.to_string(),
        family: inst.family.to_string(),
        d: inst.d,
        k: inst.k,
        n: inst.graph.n(),
        m: inst.graph.m(),
        width_bound: gen.width_bound,
        td_width: gen.td.width(),
        planted: gen.planted.as_ref().map(|s| s.iter().map(|v| v + 1).collect()),
    };
    let out = &common.out;
    let path = |ext: &str| {
        let mut s = out.clone().into_os_string();
        s.push(ext);
        PathBuf::from(s)
    };
    let write = |ext: &str, text: String| -> anyhow::Result<PathBuf> {
        let p = path(ext);
        std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        Ok(p)
    };
    let files = [
        write(".gr", to_gr(&inst.graph))?,
        write(".td", to_td(&gen.td, inst.graph.n()))?,
        write(".json", serde_json::to_string_pretty(&side)? + "\n")?,
    ];
    println!(
        "{name}: n={} m={} d={} k={} width={} (bound {})",
        side.n, side.m, side.d, side.k, side.td_width, side.width_bound
    );
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn params(kv: &[(&str, serde_json::Value)]) -> BTreeMap<String, serde_json::Value> {
    kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn check_prob(p: f64) -> anyhow::Result<()> {
    if !(0.0..=1.0).contains(&p) {
        bail!("density {p} is not a probability");
    }
    Ok(())
}

fn perm_is(a: &PermIsArgs) -> anyhow::Result<Generated> {
    check_prob(a.density)?;
    if a.k < 2 {
        bail!("k must be at least 2");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let mut cols: Vec<usize> = (0..a.k).collect();
    cols.shuffle(&mut rng);
    let chosen = |v: (usize, usize)| cols[v.0] == v.1;
    let cells: Vec<(usize, usize)> = (0..a.k).flat_map(|i| (0..a.k).map(move |j| (i, j))).collect();
    let mut extra = Vec::new();
    for (x, &u) in cells.iter().enumerate() {
        for &v in &cells[x + 1..] {
            if u.0 == v.0 || u.1 == v.1 || (a.common.planted && chosen(u) && chosen(v)) {
                continue;
            }
            if rng.gen_bool(a.density) {
                extra.push((u, v));
            }
        }
    }
    let grid = GridISInstance::new(a.k, &extra)?;
    let planted = a.common.planted.then_some(cols.as_slice());
    Ok(gen_fixed_d(&grid, a.d, matches!(a.variant, Variant::Block), planted)?)
}

fn clique(a: &CliqueArgs) -> anyhow::Result<Generated> {
    let (k, t) = (a.k, a.t);
    if k < 2 || t == 0 {
        bail!("need k >= 2 and t >= 1");
    }
    let per = a.per_pair.unwrap_or(t);
    if per == 0 || per > t * t {
        bail!("per-pair count must be in 1..={}", t * t);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let gamma: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=t)).collect();
    let mut g = Graph::new(k * t);
    let pairs: Vec<(usize, usize)> = (1..=t).flat_map(|x| (1..=t).map(move |y| (x, y))).collect();
    for i in 0..k {
        for j in i + 1..k {
            let mut pick: Vec<(usize, usize)> = pairs.clone();
            pick.shuffle(&mut rng);
            if a.common.planted {
                let want = (gamma[i], gamma[j]);
                pick.retain(|&p| p != want);
                pick.insert(0, want);
            }
            for &(x, y) in &pick[..per] {
                g.add_edge(i * t + x - 1, j * t + y - 1);
            }
        }
    }
    let cg = ColoredGraph::new(g, k, t)?;
    let planted = a.common.planted.then_some(gamma.as_slice());
    Ok(gen_unbounded_d(&cg, &UnboundedVariant::Clique, planted)?)
}

fn subgraph_iso(a: &SubgraphIsoArgs) -> anyhow::Result<Generated> {
    check_prob(a.density)?;
    let pattern = match &a.pattern {
        Some(p) => crate::read_graph(p)?,
        None => {
            let e: Vec<_> = (1..a.k).map(|i| (i - 1, i)).collect();
            Graph::from_edges(a.k, &e)?
        }
    };
    let k = pattern.n();
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let mut host = match &a.host {
        Some(p) => crate::read_graph(p)?,
        None => {
            let mut h = Graph::new(a.host_size);
            for u in 0..a.host_size {
                for v in u + 1..a.host_size {
                    if rng.gen_bool(a.density) {
                        h.add_edge(u, v);
                    }
                }
            }
            h
        }
    };
    let mut gamma = None;
    if a.common.planted {
        if host.n() < k {
            bail!("host has fewer vertices than the pattern");
        }
        let mut img: Vec<usize> = (0..host.n()).collect();
        img.shuffle(&mut rng);
        img.truncate(k);
        if a.host.is_none() {
            for (u, v) in pattern.edges() {
                host.add_edge(img[u], img[v]);
            }
        }
        gamma = Some(img.iter().map(|v| v + 1).collect::<Vec<_>>());
    }
    let cg = ColoredGraph::from_host(&host, k)?;
    Ok(gen_unbounded_d(&cg, &UnboundedVariant::SubgraphIso(pattern), gamma.as_deref())?)
}
