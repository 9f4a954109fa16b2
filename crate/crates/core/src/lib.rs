//! Exact solvers for Bounded P-Block Vertex Deletion and Bounded P-Component
//! Vertex Deletion on graphs of bounded treewidth.
//!
//! Given a graph `G`, integers `d` and `k` and a graph family `P`, the block
//! problem asks for at most `k` vertices whose removal leaves a graph in which
//! every block has at most `d` vertices and belongs to `P`. The component
//! problem asks the same of connected components.
//!
//! The crate contains a dynamic program over nice tree decompositions that
//! tracks, per bag, a guessed final shape for every partially built block
//! together with a rank-reduced family of connectivity partitions, a
//! brute-force oracle used to cross-check it, and generators for the two
//! lower-bound gadget families.

pub mod characteristics;
pub mod decomposition;
pub mod dp_block;
pub mod dp_component;
pub mod gadgets;
pub mod graph;
pub mod labeling;
pub mod oracle;
pub mod partitions;
pub mod repset;

mod bits;

use std::fmt;
use std::str::FromStr;

pub use graph::{BoundariedGraph, Graph};
pub use labeling::PFamily;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("boundaried graphs are not compatible: {0}")]
    IncompatibleBoundary(String),
    #[error("family `{0}` admits a non-chordal block for this d")]
    NonChordalFamily(String),
    #[error("d = {d} exceeds the pattern universe cap {cap}")]
    CapExceeded { d: usize, cap: usize },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("partition with {found} parts in a bucket of {expected}")]
    BadBucket { expected: usize, found: usize },
    #[error("characteristics are defined over different block sets")]
    DomainMismatch,
    #[error("no characteristic exists for this labeled boundaried graph")]
    NoCharacteristic,
    #[error("bad gadget sequence: {0}")]
    BadSequence(String),
    #[error("planted set is not a permutation independent set: {0}")]
    NotAnIs(String),
    #[error("planted embedding is not valid: {0}")]
    NotAClique(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Which structure of `G - S` is constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Block,
    Component,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "block" => Ok(Mode::Block),
            "component" => Ok(Mode::Component),
            other => Err(Error::InvalidInput(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Block => "block",
            Mode::Component => "component",
        })
    }
}

/// A problem instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub d: usize,
    pub k: usize,
    pub family: PFamily,
    pub mode: Mode,
}

impl Instance {
    pub fn new(graph: Graph, d: usize, k: usize, family: PFamily, mode: Mode) -> Self {
        Instance { graph, d, k, family, mode }
    }
}

/// Outcome of an exact solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub yes: bool,
    /// A deletion set of size at most `k`, when witness recovery was requested.
    pub witness: Option<Vec<usize>>,
    pub stats: SolveStats,
}

/// Counters collected while running a dynamic program.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Total number of table entries created over all nodes.
    pub states: usize,
    /// Total number of partitions retained after reduction over all nodes.
    pub retained: usize,
    /// Largest family stored for a single state.
    pub max_family: usize,
    pub nodes: usize,
}

/// Runs the exact dynamic program for `inst.mode` over `ntd`.
///
/// `d = 0` is answered directly, and block mode with `d = 1` is the same
/// problem as component mode with `d = 1`.
pub fn solve(inst: &Instance, ntd: &decomposition::NiceTreeDecomposition, witness: bool) -> Result<Solution> {
    if inst.d == 0 {
        let n = inst.graph.n();
        let yes = n <= inst.k;
        return Ok(Solution {
            yes,
            witness: (yes && witness).then(|| (0..n).collect()),
            stats: SolveStats::default(),
        });
    }
    match inst.mode {
        Mode::Block if inst.d > 1 => dp_block::solve_block(inst, ntd, witness),
        _ => dp_component::solve_component(inst, ntd, witness),
    }
}

/// Builds a tree decomposition (exact for small graphs, min-fill otherwise)
/// and runs [`solve`].
pub fn solve_auto(inst: &Instance, witness: bool) -> Result<Solution> {
    let g = &inst.graph;
    let td = if g.n() <= decomposition::EXACT_TD_LIMIT {
        decomposition::exact_td_small(g, decomposition::EXACT_TD_LIMIT)?
    } else {
        decomposition::heuristic_td(g)
    };
    let ntd = decomposition::to_nice(g, &td)?;
    solve(inst, &ntd, witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_d() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(g.clone(), 0, 3, PFamily::All, Mode::Block);
        assert_eq!(solve_auto(&inst, true).unwrap().witness, Some(vec![0, 1, 2]));
        let inst = Instance::new(g.clone(), 0, 2, PFamily::All, Mode::Block);
        assert!(!solve_auto(&inst, false).unwrap().yes);
        let inst = Instance::new(g, 1, 1, PFamily::All, Mode::Block);
        assert_eq!(solve_auto(&inst, true).unwrap().witness, Some(vec![1]));
    }
}
