//! Graph families, labeled patterns and block labelings.
//!
//! Labels are integers in `1..=d`. A [`Pattern`] is a graph whose vertices are
//! labels, so label-preserving isomorphism between patterns is plain equality.

use crate::graph::{biconnected_blocks, components_within, BoundariedGraph, Graph};
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Largest label supported by the bit-set representation.
pub const MAX_LABEL: usize = 15;

/// Default bound on `d` for pattern enumeration.
pub const DEFAULT_UD_CAP: usize = 6;

/// Environment variable overriding [`DEFAULT_UD_CAP`].
pub const UD_CAP_ENV: &str = "PBLOCK_UD_CAP";

/// The built-in graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PFamily {
    /// Blocks on at most two vertices; block mode is Feedback Vertex Set.
    K1K2,
    Cliques,
    Chordal,
    /// `K1`, `K2` and cycles.
    Cycles,
    All,
}

impl PFamily {
    pub const ALL: [PFamily; 5] =
        [PFamily::K1K2, PFamily::Cliques, PFamily::Chordal, PFamily::Cycles, PFamily::All];

    pub fn id(self) -> &'static str {
        match self {
            PFamily::K1K2 => "k1k2",
            PFamily::Cliques => "cliques",
            PFamily::Chordal => "chordal",
            PFamily::Cycles => "cycles",
            PFamily::All => "all",
        }
    }

    /// Whether every member is chordal.
    pub fn chordal_only(self) -> bool {
        matches!(self, PFamily::K1K2 | PFamily::Cliques | PFamily::Chordal)
    }

    /// All built-ins are closed under biconnected induced subgraphs.
    pub fn block_hereditary(self) -> bool {
        true
    }

    /// Membership of a biconnected graph, `K1` or `K2`.
    pub fn accepts_block(self, g: &Graph) -> bool {
        match self {
            PFamily::K1K2 => g.n() <= 2,
            PFamily::Cliques => g.is_complete(),
            PFamily::Chordal => crate::graph::is_chordal(g),
            PFamily::Cycles => g.n() <= 2 || g.is_cycle(),
            PFamily::All => true,
        }
    }

    /// Membership of a connected graph.
    ///
    /// A connected graph is a `K1K2`-block graph iff it is a tree, so that is
    /// the component family used for `k1k2`.
    pub fn accepts_component(self, g: &Graph) -> bool {
        match self {
            PFamily::K1K2 => g.is_forest(),
            PFamily::Cliques => g.is_complete(),
            PFamily::Chordal => crate::graph::is_chordal(g),
            PFamily::Cycles => g.n() <= 2 || g.is_cycle(),
            PFamily::All => true,
        }
    }

    fn accepts_block_pattern(self, p: &Pattern) -> bool {
        match self {
            PFamily::K1K2 => p.num_vertices() <= 2,
            PFamily::Cliques => p.is_complete(),
            PFamily::Chordal => p.is_chordal(),
            PFamily::Cycles => p.num_vertices() <= 2 || p.is_cycle(),
            PFamily::All => true,
        }
    }

    fn accepts_component_pattern(self, p: &Pattern) -> bool {
        match self {
            PFamily::K1K2 => p.num_edges() + 1 == p.num_vertices(),
            PFamily::Cliques => p.is_complete(),
            PFamily::Chordal => p.is_chordal(),
            PFamily::Cycles => p.num_vertices() <= 2 || p.is_cycle(),
            PFamily::All => true,
        }
    }
}

impl FromStr for PFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for PFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A graph whose vertices are labels. Bit `l` of `vmask` is set iff label `l`
/// is a vertex; `adj[l]` is the neighbor mask of label `l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    vmask: u16,
    adj: [u16; MAX_LABEL + 1],
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))?;
        for (a, b) in self.edges() {
            write!(f, " {a}-{b}")?;
        }
        Ok(())
    }
}

fn label_bits(mask: u16) -> impl Iterator<Item = u8> {
    crate::bits::ones(mask as u64).map(|b| b as u8)
}

impl Pattern {
    /// The edgeless pattern on the labels of `vmask`.
    pub fn empty(vmask: u16) -> Self {
        assert_eq!(vmask & 1, 0, "label 0 is not a label");
        Pattern { vmask, adj: [0; MAX_LABEL + 1] }
    }

    /// Builds a pattern from labeled edges over the given label set.
    pub fn from_edges(labels: &[u8], edges: &[(u8, u8)]) -> Result<Self> {
        let mut vmask = 0u16;
        for &l in labels {
            if l == 0 || l as usize > MAX_LABEL {
                return Err(Error::InvalidInput(format!("label {l} out of range")));
            }
            vmask |= 1 << l;
        }
        let mut p = Pattern::empty(vmask);
        for &(a, b) in edges {
            if a == b || vmask >> a & 1 == 0 || vmask >> b & 1 == 0 {
                return Err(Error::InvalidInput(format!("bad pattern edge {a}-{b}")));
            }
            p.add_edge(a, b);
        }
        Ok(p)
    }

    /// The pattern of a labeled graph, if its labels are pairwise distinct.
    pub fn from_labeled(g: &Graph, vs: &[usize], labels: &[u8]) -> Option<Self> {
        let mut vmask = 0u16;
        for &v in vs {
            let l = labels[v];
            if l == 0 || l as usize > MAX_LABEL || vmask >> l & 1 == 1 {
                return None;
            }
            vmask |= 1 << l;
        }
        let mut p = Pattern::empty(vmask);
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if g.has_edge(u, v) {
                    p.add_edge(labels[u], labels[v]);
                }
            }
        }
        Some(p)
    }

    pub(crate) fn add_edge(&mut self, a: u8, b: u8) {
        self.adj[a as usize] |= 1 << b;
        self.adj[b as usize] |= 1 << a;
    }

    pub fn vmask(&self) -> u16 {
        self.vmask
    }

    pub fn labels(&self) -> impl Iterator<Item = u8> {
        label_bits(self.vmask)
    }

    pub fn contains(&self, l: u8) -> bool {
        self.vmask >> l & 1 == 1
    }

    pub fn adjacent(&self, a: u8, b: u8) -> bool {
        self.adj[a as usize] >> b & 1 == 1
    }

    /// Neighbor mask of label `l`.
    pub fn nbr(&self, l: u8) -> u16 {
        self.adj[l as usize]
    }

    /// Union of neighbor masks over the labels of `mask`.
    pub fn nbr_of_set(&self, mask: u16) -> u16 {
        label_bits(mask).fold(0, |acc, l| acc | self.adj[l as usize])
    }

    pub fn num_vertices(&self) -> usize {
        self.vmask.count_ones() as usize
    }

    pub fn num_edges(&self) -> usize {
        self.labels().map(|l| self.adj[l as usize].count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for a in self.labels() {
            for b in label_bits(self.adj[a as usize]) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The subpattern induced by the labels of `mask`.
    pub fn induced(&self, mask: u16) -> Pattern {
        let mask = mask & self.vmask;
        let mut p = Pattern::empty(mask);
        for l in label_bits(mask) {
            p.adj[l as usize] = self.adj[l as usize] & mask;
        }
        p
    }

    /// The pattern as a graph on `0..n`, with the label of each vertex.
    pub fn to_graph(&self) -> (Graph, Vec<u8>) {
        let labels: Vec<u8> = self.labels().collect();
        let mut g = Graph::new(labels.len());
        for (i, &a) in labels.iter().enumerate() {
            for (j, &b) in labels.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, labels)
    }

    fn connected_within(&self, mask: u16) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask & mask.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for l in label_bits(frontier) {
                next |= self.adj[l as usize] & mask;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        self.connected_within(self.vmask)
    }

    /// Connected, at least two vertices, no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.num_vertices();
        if n < 2 || !self.is_connected() {
            return false;
        }
        n == 2 || self.labels().all(|l| self.connected_within(self.vmask & !(1 << l)))
    }

    pub fn is_complete(&self) -> bool {
        self.labels().all(|l| self.adj[l as usize] == self.vmask & !(1 << l))
    }

    pub fn is_cycle(&self) -> bool {
        self.num_vertices() >= 3
            && self.labels().all(|l| self.adj[l as usize].count_ones() == 2)
            && self.is_connected()
    }

    /// Chordality by repeated removal of simplicial vertices.
    pub fn is_chordal(&self) -> bool {
        let mut rest = self.vmask;
        'outer: while rest != 0 {
            for l in label_bits(rest) {
                let nb = self.adj[l as usize] & rest;
                if label_bits(nb).all(|a| nb & !(1 << a) & !self.adj[a as usize] == 0) {
                    rest &= !(1 << l);
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

/// The enumeration cap in force, from [`UD_CAP_ENV`] or the default.
pub fn ud_cap() -> usize {
    std::env::var(UD_CAP_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .map(|c: usize| c.min(MAX_LABEL))
        .unwrap_or(DEFAULT_UD_CAP)
}

fn enumerate_with(
    d: usize,
    fam: PFamily,
    min_vertices: usize,
    keep: impl Fn(&Pattern) -> bool,
) -> Result<Vec<Pattern>> {
    let cap = ud_cap();
    if d > cap {
        return Err(Error::CapExceeded { d, cap });
    }
    let mut out = Vec::new();
    for sub in 1u32..(1u32 << d) {
        if (sub.count_ones() as usize) < min_vertices {
            continue;
        }
        let vmask = (sub << 1) as u16;
        let labels: Vec<u8> = label_bits(vmask).collect();
        let mut pairs = Vec::new();
        for (i, &a) in labels.iter().enumerate() {
            for &b in &labels[i + 1..] {
                pairs.push((a, b));
            }
        }
        for emask in 0u64..(1u64 << pairs.len()) {
            let mut p = Pattern::empty(vmask);
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if emask >> i & 1 == 1 {
                    p.add_edge(a, b);
                }
            }
            if keep(&p) {
                if !p.is_chordal() {
                    return Err(Error::NonChordalFamily(fam.id().into()));
                }
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// All biconnected members of `fam` whose vertices are at least two distinct
/// labels from `1..=d`, ordered by label set then edge set.
pub fn enumerate_ud(d: usize, fam: PFamily) -> Result<Vec<Pattern>> {
    enumerate_with(d, fam, 2, |p| p.is_biconnected() && fam.accepts_block_pattern(p))
}

/// All connected members of `fam` (as component graphs) on distinct labels
/// from `1..=d`, including single vertices.
pub fn enumerate_connected(d: usize, fam: PFamily) -> Result<Vec<Pattern>> {
    enumerate_with(d, fam, 1, |p| p.is_connected() && fam.accepts_component_pattern(p))
}

/// Whether `labels` is injective on every block of `g`. Label 0 is invalid.
pub fn is_block_labeling(g: &Graph, labels: &[u8]) -> bool {
    if labels.len() < g.n() || labels[..g.n()].iter().any(|&l| l == 0 || l as usize > MAX_LABEL) {
        return false;
    }
    biconnected_blocks(g).blocks.iter().all(|b| {
        let mut seen = 0u32;
        b.iter().all(|&v| {
            let bit = 1u32 << labels[v];
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        })
    })
}

/// Whether the labeled graph `h` is label-isomorphic to the subgraph of `q`
/// induced by the labels of `h`.
pub fn partial_label_isomorphic(h: &Graph, labels: &[u8], q: &Pattern) -> bool {
    let vs: Vec<usize> = (0..h.n()).collect();
    partial_iso_on(h, &vs, labels, q)
}

/// [`partial_label_isomorphic`] for the subgraph of `g` induced by `vs`.
pub fn partial_iso_on(g: &Graph, vs: &[usize], labels: &[u8], q: &Pattern) -> bool {
    match Pattern::from_labeled(g, vs, labels) {
        Some(p) => p.vmask & !q.vmask == 0 && q.induced(p.vmask) == p,
        None => false,
    }
}

/// Blocks of the graph that contain an edge between two boundary vertices.
pub fn s_blocks(a: &BoundariedGraph) -> Vec<Vec<usize>> {
    let mut in_s = vec![false; a.graph.n()];
    for &s in &a.boundary {
        in_s[s] = true;
    }
    biconnected_blocks(&a.graph)
        .blocks
        .into_iter()
        .filter(|b| {
            b.iter().any(|&u| in_s[u] && b.iter().any(|&v| in_s[v] && a.graph.has_edge(u, v)))
        })
        .collect()
}

/// Blocks of `G[S]` with at least two vertices, in original ids.
pub fn boundary_blocks(a: &BoundariedGraph) -> Vec<Vec<usize>> {
    let sub = a.graph.induced(&a.boundary);
    let mut out: Vec<Vec<usize>> = biconnected_blocks(&sub)
        .blocks
        .into_iter()
        .filter(|b| b.len() >= 2)
        .map(|b| b.into_iter().map(|i| a.boundary[i]).collect())
        .collect();
    out.sort();
    out
}

/// Index of the block in `blocks` containing all of `vs`.
pub(crate) fn containing_block(blocks: &[Vec<usize>], vs: &[usize]) -> Option<usize> {
    blocks.iter().position(|b| vs.iter().all(|v| b.binary_search(v).is_ok()))
}

/// Labels of the non-boundary vertices of `sblock` adjacent to `core`.
pub(crate) fn outside_labels(
    a: &BoundariedGraph,
    labels: &[u8],
    sblock: &[usize],
    core: &[usize],
) -> u16 {
    let mut mask = 0u16;
    for &x in sblock {
        if a.boundary.binary_search(&x).is_err() && core.iter().any(|&c| a.graph.has_edge(c, x)) {
            mask |= 1 << labels[x];
        }
    }
    mask
}

/// Block-wise compatibility of two labeled boundaried graphs with a pattern.
///
/// Labels are indexed by vertex id in the shared universe.
pub fn blockwise_q_compatible(
    a: &BoundariedGraph,
    la: &[u8],
    b: &BoundariedGraph,
    lb: &[u8],
    q: &Pattern,
) -> Result<bool> {
    if a.boundary != b.boundary {
        return Err(Error::IncompatibleBoundary("boundaries differ".into()));
    }
    let sa = s_blocks(a);
    let sb = s_blocks(b);
    for blk in &sa {
        if !partial_iso_on(&a.graph, blk, la, q) {
            return Ok(false);
        }
    }
    for blk in &sb {
        if !partial_iso_on(&b.graph, blk, lb, q) {
            return Ok(false);
        }
    }
    for core in boundary_blocks(a) {
        let (Some(ia), Some(ib)) = (containing_block(&sa, &core), containing_block(&sb, &core))
        else {
            return Err(Error::IncompatibleBoundary("boundary block without S-block".into()));
        };
        let ha = outside_labels(a, la, &sa[ia], &core);
        let hb = outside_labels(b, lb, &sb[ib], &core);
        if ha & hb != 0 || q.nbr_of_set(ha) & hb != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Components of `g` restricted to `vs` whose labels are pairwise distinct,
/// as patterns. `None` if some component repeats a label.
pub fn component_patterns(g: &Graph, vs: &[usize], labels: &[u8]) -> Option<Vec<Pattern>> {
    components_within(g, vs)
        .iter()
        .map(|c| Pattern::from_labeled(g, c, labels))
        .collect()
}
