//! Simple undirected graphs, blocks, chordality and boundaried graphs.

use crate::partitions::{Dsu, Partition};
use crate::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge {u}-{v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Adds the edge `uv` if absent. Panics on self-loops or bad ids.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The subgraph induced by `vs`, relabeled to `0..vs.len()` in the given
    /// order.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut idx = vec![usize::MAX; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            idx[v] = i;
        }
        let mut g = Graph::new(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = idx[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// `G - S`, keeping all ids; removed vertices become isolated.
    pub fn without(&self, removed: &[usize]) -> Graph {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, nb)| {
                if gone[v] {
                    Vec::new()
                } else {
                    nb.iter().copied().filter(|&w| !gone[w]).collect()
                }
            })
            .collect();
        Graph { adj }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|nb| nb.len() + 1 == n)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    /// Whether the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.m() + connected_components(self).len() == self.n()
    }

    /// Whether the graph is a single cycle on all of its (at least 3) vertices.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|nb| nb.len() == 2) && self.is_connected()
    }

    /// Whether the graph is connected with at least two vertices and no cut
    /// vertex. `K2` counts as biconnected.
    pub fn is_biconnected(&self) -> bool {
        if self.n() < 2 || !self.is_connected() {
            return false;
        }
        let bd = biconnected_blocks(self);
        bd.blocks.len() == 1
    }
}

/// Connected components, each sorted, ordered by their smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Components of `G[vs]`, in terms of the original ids.
pub fn components_within(g: &Graph, vs: &[usize]) -> Vec<Vec<usize>> {
    let sub = g.induced(vs);
    let mut comps: Vec<Vec<usize>> = connected_components(&sub)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|i| vs[i]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort();
    comps
}

/// Blocks and cut vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, in lexicographic order.
    pub blocks: Vec<Vec<usize>>,
    /// Sorted.
    pub cut_vertices: Vec<usize>,
}

/// Blocks by the DFS low-point method. Isolated vertices are singleton blocks.
pub fn biconnected_blocks(g: &Graph) -> BlockDecomposition {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        let mut root_children = 0;
        stack.push((root, NONE, 0));
        while let Some(top) = stack.last_mut() {
            let (v, p) = (top.0, top.1);
            if top.2 < g.degree(v) {
                let w = g.neighbors(v)[top.2];
                top.2 += 1;
                if disc[w] == NONE {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != p && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        if u != root {
                            is_cut[u] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e.0);
                            block.push(e.1);
                            if e == (u, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    blocks.sort();
    BlockDecomposition {
        blocks,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
    }
}

/// Chordality via maximum cardinality search and a perfect elimination check.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    // order[i] is the i-th visited vertex; its reverse is a PEO iff chordal.
    let mut weight = vec![0usize; n];
    let mut pos = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for i in 0..n {
        let v = (0..n)
            .filter(|&v| pos[v] == usize::MAX)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        pos[v] = i;
        order.push(v);
        for &w in g.neighbors(v) {
            if pos[w] == usize::MAX {
                weight[w] += 1;
            }
        }
    }
    for &v in &order {
        let earlier: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        if let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) {
            if earlier.iter().any(|&w| w != parent && !g.has_edge(w, parent)) {
                return false;
            }
        }
    }
    true
}

/// Finds an induced cycle of length at least 4 by search over induced paths.
/// Exponential; intended as a test oracle.
pub fn chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>) -> Option<Vec<usize>> {
        let s = path[0];
        let last = *path.last().unwrap();
        for &x in g.neighbors(last) {
            if x <= s || path.contains(&x) {
                continue;
            }
            if path[1..path.len() - 1].iter().any(|&p| g.has_edge(p, x)) {
                continue;
            }
            if g.has_edge(s, x) {
                if path.len() >= 3 {
                    let mut cyc = path.clone();
                    cyc.push(x);
                    return Some(cyc);
                }
                continue;
            }
            path.push(x);
            if let Some(c) = extend(g, path) {
                return Some(c);
            }
            path.pop();
        }
        None
    }
    for s in 0..g.n() {
        for &a in g.neighbors(s) {
            if a > s {
                let mut path = vec![s, a];
                if let Some(c) = extend(g, &mut path) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Parses a PACE `.gr` file.
pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut expected_m = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let perr = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        if toks[0] == "p" {
            if graph.is_some() || toks.len() != 4 || toks[1] != "tw" {
                return Err(perr("expected a single header `p tw n m`"));
            }
            let n: usize = toks[2].parse().map_err(|_| perr("bad vertex count"))?;
            expected_m = toks[3].parse().map_err(|_| perr("bad edge count"))?;
            graph = Some(Graph::new(n));
            continue;
        }
        let g = graph.as_mut().ok_or_else(|| perr("edge before header"))?;
        if toks.len() != 2 {
            return Err(perr("expected `u v`"));
        }
        let u: usize = toks[0].parse().map_err(|_| perr("bad vertex id"))?;
        let v: usize = toks[1].parse().map_err(|_| perr("bad vertex id"))?;
        if u == 0 || v == 0 || u > g.n() || v > g.n() {
            return Err(perr("vertex id out of range"));
        }
        if u == v {
            return Err(perr("self-loop"));
        }
        g.add_edge(u - 1, v - 1);
    }
    let g = graph.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    if g.m() != expected_m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {expected_m} edges, found {}", g.m()),
        });
    }
    Ok(g)
}

/// Writes a PACE `.gr` file.
pub fn to_gr(g: &Graph) -> String {
    let mut s = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    s
}

/// A graph with a designated boundary.
///
/// Vertex ids live in a shared universe so that two boundaried graphs agree on
/// their boundary by identity. `vertices` lists the ids that are present;
/// the other ids of `graph` must be isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundariedGraph {
    pub graph: Graph,
    /// Sorted.
    pub vertices: Vec<usize>,
    /// Sorted.
    pub boundary: Vec<usize>,
}

impl BoundariedGraph {
    /// All ids of `graph` are present.
    pub fn new(graph: Graph, boundary: &[usize]) -> Result<Self> {
        let vertices: Vec<usize> = (0..graph.n()).collect();
        Self::with_vertices(graph, &vertices, boundary)
    }

    pub fn with_vertices(graph: Graph, vertices: &[usize], boundary: &[usize]) -> Result<Self> {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let mut boundary = boundary.to_vec();
        boundary.sort_unstable();
        boundary.dedup();
        let mut present = vec![false; graph.n()];
        for &v in &vertices {
            if v >= graph.n() {
                return Err(Error::InvalidInput(format!("vertex {v} out of range")));
            }
            present[v] = true;
        }
        if boundary.iter().any(|&b| b >= graph.n() || !present[b]) {
            return Err(Error::InvalidInput("boundary is not a subset of the vertices".into()));
        }
        for (u, v) in graph.edges() {
            if !present[u] || !present[v] {
                return Err(Error::InvalidInput(format!("edge {u}-{v} touches an absent vertex")));
            }
        }
        Ok(BoundariedGraph { graph, vertices, boundary })
    }

    /// Components of `G[S]`, ordered by smallest vertex.
    pub fn boundary_components(&self) -> Vec<Vec<usize>> {
        components_within(&self.graph, &self.boundary)
    }

    /// Components of the graph restricted to the present vertices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_within(&self.graph, &self.vertices)
    }
}

/// The sum of two compatible boundaried graphs over a shared id universe.
pub fn sum_boundaried(a: &BoundariedGraph, b: &BoundariedGraph) -> Result<BoundariedGraph> {
    if a.boundary != b.boundary {
        return Err(Error::IncompatibleBoundary("boundaries differ".into()));
    }
    let s = &a.boundary;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if a.graph.has_edge(u, v) != b.graph.has_edge(u, v) {
                return Err(Error::IncompatibleBoundary(format!(
                    "boundary pair {u}-{v} differs"
                )));
            }
        }
    }
    let n = a.graph.n().max(b.graph.n());
    let mut in_a = vec![false; n];
    for &v in &a.vertices {
        in_a[v] = true;
    }
    for &v in &b.vertices {
        if in_a[v] && s.binary_search(&v).is_err() {
            return Err(Error::IncompatibleBoundary(format!(
                "non-boundary vertex {v} present on both sides"
            )));
        }
    }
    let mut g = Graph::new(n);
    for (u, v) in a.graph.edges().into_iter().chain(b.graph.edges()) {
        g.add_edge(u, v);
    }
    let mut vertices = a.vertices.clone();
    vertices.extend_from_slice(&b.vertices);
    BoundariedGraph::with_vertices(g, &vertices, s)
}

/// The partition of the components of `G[S]` by containing component of `G`.
/// Ground element `i` is the `i`-th entry of `a.boundary_components()`.
pub fn aux_partition(a: &BoundariedGraph) -> Partition {
    let bcomps = a.boundary_components();
    let m = bcomps.len();
    let mut comp_of = vec![usize::MAX; a.graph.n()];
    for (ci, c) in a.components().iter().enumerate() {
        for &v in c {
            comp_of[v] = ci;
        }
    }
    let mut dsu = Dsu::new(m);
    let mut first_in: Vec<Option<usize>> = vec![None; a.graph.n()];
    for (i, bc) in bcomps.iter().enumerate() {
        let c = comp_of[bc[0]];
        match first_in[c] {
            Some(j) => {
                dsu.union(i, j);
            }
            None => first_in[c] = Some(i),
        }
    }
    let assign: Vec<usize> = (0..m).map(|i| dsu.find(i)).collect();
    Partition::from_assignment(&assign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn components_examples() {
        assert!(connected_components(&Graph::new(0)).is_empty());
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&g), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(connected_components(&cycle(5)), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn blocks_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let bd = biconnected_blocks(&g);
        assert_eq!(bd.blocks, vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(bd.cut_vertices, vec![2]);

        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bd = biconnected_blocks(&p4);
        assert_eq!(bd.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(bd.cut_vertices, vec![1, 2]);

        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let bd = biconnected_blocks(&k4);
        assert_eq!(bd.blocks, vec![vec![0, 1, 2, 3]]);
        assert!(bd.cut_vertices.is_empty());

        let iso = Graph::new(2);
        assert_eq!(biconnected_blocks(&iso).blocks, vec![vec![0], vec![1]]);
    }

    #[test]
    fn chordality_examples() {
        assert!(!is_chordal(&cycle(4)));
        assert!(is_chordal(&cycle(3)));
        let mut c5 = cycle(5);
        c5.add_edge(0, 2);
        assert!(!is_chordal(&c5));
        let cyc = chordless_cycle(&c5).unwrap();
        assert_eq!(cyc.len(), 4);
        c5.add_edge(0, 3);
        assert!(is_chordal(&c5));
        assert!(chordless_cycle(&c5).is_none());
    }

    #[test]
    fn gr_roundtrip() {
        let text = "c comment\np tw 3 2\n1 2\n2 3\n";
        let g = parse_gr(text).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(parse_gr(&to_gr(&g)).unwrap(), g);
        assert!(parse_gr("p tw 2 1\n1 3\n").is_err());
        assert!(parse_gr("p tw 2 2\n1 2\n").is_err());
    }

    #[test]
    fn sum_examples() {
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let a = BoundariedGraph::new(e.clone(), &[0, 1]).unwrap();
        let s = sum_boundaried(&a, &a).unwrap();
        assert_eq!(s.graph.edges(), vec![(0, 1)]);

        // Path 2-0-1 with boundary {0,1} glued to path 0-3-1.
        let ga = Graph::from_edges(4, &[(0, 2), (0, 1)]).unwrap();
        let gb = Graph::from_edges(4, &[(0, 3), (1, 3), (0, 1)]).unwrap();
        let a = BoundariedGraph::with_vertices(ga, &[0, 1, 2], &[0, 1]).unwrap();
        let b = BoundariedGraph::with_vertices(gb, &[0, 1, 3], &[0, 1]).unwrap();
        let s = sum_boundaried(&a, &b).unwrap();
        assert_eq!(s.graph.edges(), vec![(0, 1), (0, 2), (0, 3), (1, 3)]);
        assert_eq!(s.vertices, vec![0, 1, 2, 3]);

        let bad = BoundariedGraph::new(Graph::new(2), &[0, 1]).unwrap();
        assert!(matches!(sum_boundaried(&a, &bad), Err(Error::IncompatibleBoundary(_))));
    }

    #[test]
    fn aux_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let a = BoundariedGraph::new(g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(aux_partition(&a), Partition::singletons(2));

        let g = Graph::from_edges(5, &[(0, 4), (4, 2)]).unwrap();
        let a = BoundariedGraph::with_vertices(g, &[0, 2, 4], &[0, 2]).unwrap();
        assert_eq!(aux_partition(&a), Partition::whole(2));
    }
}
