//! Generators for the two lower-bound constructions, with planted solutions
//! and path decompositions.
//!
//! The fixed-`d` construction encodes a permutation independent set instance
//! on a `k x k` grid with cycles of length `d`. The unbounded-`d` construction
//! encodes a multicolored clique (or subgraph isomorphism) instance with
//! chains of thickened paths whose cut sizes carry the selected indices.

use crate::decomposition::TreeDecomposition;
use crate::graph::Graph;
use crate::labeling::PFamily;
use crate::{Error, Instance, Mode, Result};
use std::collections::BTreeSet;

/// A generated instance with its decomposition and optional planted solution.
#[derive(Debug, Clone)]
pub struct Generated {
    pub instance: Instance,
    /// A path decomposition.
    pub td: TreeDecomposition,
    pub planted: Option<Vec<usize>>,
    /// The closed-form bound on the width of `td`.
    pub width_bound: usize,
}

/// Bags of the path decomposition induced by a vertex order: each bag holds
/// the current vertex and every earlier vertex with a neighbour not yet
/// placed.
fn separation_bags(g: &Graph, order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let last: Vec<usize> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p != usize::MAX).max().unwrap_or(0))
        .collect();
    (0..order.len())
        .map(|i| {
            let mut bag: Vec<usize> =
                (0..i).filter(|&j| last[j] >= i).map(|j| order[j]).collect();
            bag.push(order[i]);
            bag
        })
        .collect()
}

/// `(a, b) -> 3t(a-1) + 3b` for `a, b` in `1..=t`.
pub fn phi(a: usize, b: usize, t: usize) -> Result<usize> {
    if a == 0 || b == 0 || a > t || b > t {
        return Err(Error::InvalidInput(format!("({a}, {b}) outside [1, {t}]^2")));
    }
    Ok(3 * t * (a - 1) + 3 * b)
}

/// The chain gadget of a sequence `x_0 < x_1 < ... < x_z`.
///
/// Vertices are numbered `P_0, u_1, P_1, ..., u_z, P_z`. Deleting `u_q`
/// leaves two components, of sizes `x_{q-1}` and `x_z - x_{q-1}`.
#[derive(Debug, Clone)]
pub struct GadgetChain {
    pub x: Vec<usize>,
    pub graph: Graph,
    /// `paths[q]` lists `w_{q,1}, w_{q,2}, ...`.
    pub paths: Vec<Vec<usize>>,
    /// `u[q - 1]` is `u_q`.
    pub u: Vec<usize>,
    pub b: [usize; 3],
    pub d: [usize; 3],
}

impl GadgetChain {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Path decomposition with bags of at most four vertices, in local ids.
    pub fn path_bags(&self) -> Vec<Vec<usize>> {
        let z = self.u.len();
        let mut order = Vec::with_capacity(self.n());
        for q in 0..z {
            order.extend(self.paths[q].iter().rev());
            order.push(self.u[q]);
        }
        order.extend(&self.paths[z]);
        separation_bags(&self.graph, &order)
    }
}

/// Builds the chain gadget of `x`. Needs `x_0 >= 3`, steps of at least 3 and
/// `z >= 1`.
pub fn gadget_chain(x: &[usize]) -> Result<GadgetChain> {
    if x.len() < 2 {
        return Err(Error::BadSequence("need at least two entries".into()));
    }
    if x[0] < 3 {
        return Err(Error::BadSequence(format!("x_0 = {} is below 3", x[0])));
    }
    if let Some(w) = x.windows(2).find(|w| w[1] < w[0] + 3) {
        return Err(Error::BadSequence(format!("step {} -> {} is below 3", w[0], w[1])));
    }
    let z = x.len() - 1;
    let sizes: Vec<usize> = (0..=z)
        .map(|q| {
            let dq = if q == 0 { x[0] } else { x[q] - x[q - 1] };
            if q == 0 || q == z {
                dq
            } else {
                dq - 1
            }
        })
        .collect();
    let mut g = Graph::new(0);
    let mut paths = Vec::with_capacity(z + 1);
    let mut u = Vec::with_capacity(z);
    for (q, &len) in sizes.iter().enumerate() {
        if q > 0 {
            u.push(g.add_vertex());
        }
        let reach = if q == 0 || q == z { 3 } else { 2 };
        let p: Vec<usize> = (0..len).map(|_| g.add_vertex()).collect();
        for i in 0..len {
            for j in i + 1..len.min(i + reach + 1) {
                g.add_edge(p[i], p[j]);
            }
        }
        paths.push(p);
    }
    for q in 1..=z {
        for &w in paths[q - 1][..2].iter().chain(&paths[q][..2]) {
            g.add_edge(u[q - 1], w);
        }
    }
    let b = [paths[0][0], paths[0][1], paths[0][2]];
    let d = [paths[z][0], paths[z][1], paths[z][2]];
    Ok(GadgetChain { x: x.to_vec(), graph: g, paths, u, b, d })
}

/// A `k x k` grid instance of the permutation independent set problem.
///
/// Grid vertex `(i, j)` is row `i`, column `j`, both 0-based. Every pair in a
/// common row or column is an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridISInstance {
    pub k: usize,
    pub edges: BTreeSet<GridEdge>,
}

/// Row and column of a grid vertex.
pub type Cell = (usize, usize);
/// A grid edge with its endpoints in increasing order.
pub type GridEdge = (Cell, Cell);

impl GridISInstance {
    pub fn new(k: usize, extra: &[GridEdge]) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        let mut edges = BTreeSet::new();
        let mut add = |a: Cell, b: Cell| {
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        };
        for i in 0..k {
            for j in 0..k {
                for h in 0..k {
                    add((i, j), (i, h));
                    add((i, j), (h, j));
                }
            }
        }
        for &(a, b) in extra {
            if a.0 >= k || a.1 >= k || b.0 >= k || b.1 >= k || a == b {
                return Err(Error::InvalidInput(format!("bad grid edge {a:?}-{b:?}")));
            }
            add(a, b);
        }
        Ok(GridISInstance { k, edges })
    }

    /// Checks that `cols[i]` picks one vertex per row and column and that the
    /// picks are pairwise non-adjacent.
    pub fn check_planted(&self, cols: &[usize]) -> Result<()> {
        let k = self.k;
        if cols.len() != k || cols.iter().any(|&c| c >= k) {
            return Err(Error::NotAnIs(format!("expected {k} columns in 0..{k}")));
        }
        let distinct: BTreeSet<usize> = cols.iter().copied().collect();
        if distinct.len() != k {
            return Err(Error::NotAnIs("columns repeat".into()));
        }
        for a in 0..k {
            for b in a + 1..k {
                if self.edges.contains(&((a, cols[a]), (b, cols[b]))) {
                    return Err(Error::NotAnIs(format!("({a},{}) and ({b},{}) are adjacent", cols[a], cols[b])));
                }
            }
        }
        Ok(())
    }
}

/// Fixed-`d` reduction. `block` adds the column selector paths for the block
/// variant; `planted[i]` is the column chosen in row `i`.
pub fn gen_fixed_d(inst: &GridISInstance, d: usize, block: bool, planted: Option<&[usize]>) -> Result<Generated> {
    if d < 4 {
        return Err(Error::InvalidInput(format!("d = {d} is below 4")));
    }
    if let Some(cols) = planted {
        inst.check_planted(cols)?;
    }
    let k = inst.k;
    let edges: Vec<_> = inst.edges.iter().copied().collect();
    let m = edges.len();
    if m == 0 {
        return Err(Error::InvalidInput("grid has no edges".into()));
    }
    let gsize = 3 * d - 2;
    let per_copy = 2 * k + k * k * gsize;
    let n = per_copy * m;
    // Vertex ids of copy h.
    let row = |h: usize, i: usize| h * per_copy + i;
    let col = |h: usize, j: usize| h * per_copy + k + j;
    let gadget = |h: usize, i: usize, j: usize| h * per_copy + 2 * k + (i * k + j) * gsize;
    // Inside a gadget: path (d - 3), plus vertex, two cycles of length d.
    let minus_a = |base: usize| base;
    let minus_b = |base: usize| base + d - 4;
    let plus = |base: usize| base + d - 3;
    let mut g = Graph::new(n);
    for (h, &(ea, eb)) in edges.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                let base = gadget(h, i, j);
                for p in 0..d - 4 {
                    g.add_edge(base + p, base + p + 1);
                }
                for c in 0..2 {
                    let start = plus(base) + 1 + c * d;
                    for p in 0..d {
                        g.add_edge(start + p, start + (p + 1) % d);
                    }
                }
                g.add_edge(minus_a(base), row(h, i));
                g.add_edge(minus_b(base), col(h, j));
                let next = (h + 1) % m;
                g.add_edge(plus(base), row(next, i));
                g.add_edge(plus(base), col(next, j));
            }
        }
        let mut join = |a: Cell, b: Cell| {
            let (ga, gb) = (gadget(h, a.0, a.1), gadget(h, b.0, b.1));
            for x in ga..ga + gsize {
                for y in gb..gb + gsize {
                    g.add_edge(x, y);
                }
            }
        };
        for i in 0..k {
            for j in 0..k {
                for j2 in j + 1..k {
                    join((i, j), (i, j2));
                }
            }
        }
        join(ea, eb);
        if block {
            for j in 0..k.saturating_sub(1) {
                g.add_edge(col(h, j), col(h, j + 1));
            }
        }
    }
    let selector = |h: usize| (row(h, 0)..row(h, 0) + 2 * k).collect::<Vec<_>>();
    let gadget_set = |h: usize, i: usize, j: usize| (gadget(h, i, j)..gadget(h, i, j) + gsize).collect::<Vec<_>>();
    let mut bags = Vec::with_capacity(m * k);
    for (h, &(a, b)) in edges.iter().enumerate() {
        let mut s = selector(0);
        s.extend(selector(h));
        if h + 1 < m {
            s.extend(selector(h + 1));
        }
        s.extend(gadget_set(h, a.0, a.1));
        s.extend(gadget_set(h, b.0, b.1));
        for i in 0..k {
            let mut bag = s.clone();
            for j in 0..k {
                bag.extend(gadget_set(h, i, j));
            }
            bags.push(bag);
        }
    }
    let planted = planted.map(|cols| {
        let mut s = Vec::with_capacity(gsize * k * (k - 1) * m);
        for h in 0..m {
            for (i, &c) in cols.iter().enumerate() {
                for j in (0..k).filter(|&j| j != c) {
                    s.extend(gadget_set(h, i, j));
                }
            }
        }
        s.sort_unstable();
        s
    });
    let budget = gsize * k * (k - 1) * m;
    let mode = if block { Mode::Block } else { Mode::Component };
    Ok(Generated {
        instance: Instance::new(g, d, budget, PFamily::Cycles, mode),
        td: TreeDecomposition::path(bags),
        planted,
        width_bound: (3 * d + 4) * k + 6 * d - 5,
    })
}

/// A graph whose vertices are split into `k` color classes of size `t`.
/// Vertex `v_i^a` (class `i`, index `a`, both 1-based) has id `(i-1)t + a-1`.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub k: usize,
    pub t: usize,
}

impl ColoredGraph {
    /// Checks the class structure: no edge inside a class and the same number
    /// of edges between every two classes.
    pub fn new(graph: Graph, k: usize, t: usize) -> Result<Self> {
        if k < 2 || t == 0 || graph.n() != k * t {
            return Err(Error::InvalidInput(format!("need k >= 2, t >= 1 and {} vertices", k * t)));
        }
        let cg = ColoredGraph { graph, k, t };
        let mut counts = BTreeSet::new();
        for i in 1..=k {
            for j in i..=k {
                let c = cg.class_edges(i, j).len();
                if i == j && c > 0 {
                    return Err(Error::InvalidInput(format!("edge inside class {i}")));
                }
                if i < j {
                    counts.insert(c);
                }
            }
        }
        if counts.len() > 1 {
            return Err(Error::InvalidInput("classes have different edge counts".into()));
        }
        Ok(cg)
    }

    pub fn id(&self, i: usize, a: usize) -> usize {
        (i - 1) * self.t + a - 1
    }

    /// Edges between classes `i` and `j` as index pairs `(a, b)`.
    pub fn class_edges(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.t {
            for b in 1..=self.t {
                if (i != j || a < b) && self.graph.has_edge(self.id(i, a), self.id(j, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The colored product used for subgraph isomorphism: `k` copies of the
    /// host's vertex set, with `v_i^a v_j^b` an edge iff `i != j` and `ab` is
    /// a host edge.
    pub fn from_host(host: &Graph, k: usize) -> Result<Self> {
        let t = host.n();
        let mut g = Graph::new(k * t);
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    for (a, b) in host.edges() {
                        g.add_edge(i * t + a, j * t + b);
                        g.add_edge(i * t + b, j * t + a);
                    }
                }
            }
        }
        ColoredGraph::new(g, k, t)
    }
}

/// Which source problem the unbounded-`d` reduction encodes.
#[derive(Debug, Clone)]
pub enum UnboundedVariant {
    Clique,
    /// Pattern graph on vertices `0..k`; class `i + 1` hosts pattern vertex `i`.
    SubgraphIso(Graph),
}

/// Unbounded-`d` reduction. `planted[i - 1]` is the chosen index in class `i`.
pub fn gen_unbounded_d(cg: &ColoredGraph, variant: &UnboundedVariant, planted: Option<&[usize]>) -> Result<Generated> {
    let (k, t) = (cg.k, cg.t);
    let wanted = |i: usize, j: usize| match variant {
        UnboundedVariant::Clique => true,
        UnboundedVariant::SubgraphIso(h) => h.has_edge(i - 1, j - 1),
    };
    if let UnboundedVariant::SubgraphIso(h) = variant {
        if h.n() != k {
            return Err(Error::InvalidInput(format!("pattern has {} vertices, expected {k}", h.n())));
        }
    }
    if let Some(gamma) = planted {
        if gamma.len() != k || gamma.iter().any(|&a| a == 0 || a > t) {
            return Err(Error::NotAClique(format!("expected {k} indices in 1..={t}")));
        }
        for i in 1..=k {
            for j in i + 1..=k {
                if wanted(i, j) && !cg.graph.has_edge(cg.id(i, gamma[i - 1]), cg.id(j, gamma[j - 1])) {
                    return Err(Error::NotAClique(format!("classes {i} and {j} are not joined")));
                }
            }
        }
    }
    // Edge encoding gadgets in cyclic order, with their sequences.
    let top = 3 * t * t + 3;
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for i in 1..k {
        for j in i..=k {
            if (i == j && i >= 2) || (i < j && wanted(i, j)) {
                slots.push((i, j));
            }
        }
    }
    if slots.is_empty() {
        return Err(Error::InvalidInput("pattern selects no gadgets".into()));
    }
    let mut g = Graph::new(0);
    let place = |chain: &GadgetChain, g: &mut Graph| -> usize {
        let off = g.n();
        for _ in 0..chain.n() {
            g.add_vertex();
        }
        for (a, b) in chain.graph.edges() {
            g.add_edge(off + a, off + b);
        }
        off
    };
    struct Placed {
        chain: GadgetChain,
        off: usize,
    }
    let mut edge_gadgets = Vec::with_capacity(slots.len());
    for &(i, j) in &slots {
        let mut seq: Vec<usize> = if i == j {
            (1..=t).map(|a| phi(a, a, t)).collect::<Result<_>>()?
        } else {
            cg.class_edges(i, j).iter().map(|&(a, b)| phi(a, b, t)).collect::<Result<_>>()?
        };
        seq.sort_unstable();
        seq.push(top);
        let chain = gadget_chain(&seq)?;
        let off = place(&chain, &mut g);
        edge_gadgets.push(Placed { chain, off });
    }
    let h_small: Vec<usize> = (1..=t + 1).map(|s| 3 * s).collect();
    let h_big: Vec<usize> = (1..=t + 1).map(|s| 3 * t * s).collect();
    // (from slot, to slot, propagator, selects by row index)
    let mut props: Vec<(usize, usize, Placed, bool)> = Vec::new();
    for (s, &(i, j)) in slots.iter().enumerate() {
        let n = slots.len();
        let next_row = (1..=n).map(|o| (s + o) % n).find(|&o| slots[o].0 == i).unwrap();
        let next_col = (1..=n).map(|o| (s + o) % n).find(|&o| slots[o].1 == j).unwrap();
        for (to, seq, by_row) in [(next_row, &h_big, true), (next_col, &h_small, false)] {
            let chain = gadget_chain(seq)?;
            let off = place(&chain, &mut g);
            props.push((s, to, Placed { chain, off }, by_row));
        }
    }
    let at = |p: &Placed, v: usize| p.off + v;
    for (from, to, p, _) in &props {
        let (src, dst) = (&edge_gadgets[*from], &edge_gadgets[*to]);
        for a in 0..3 {
            for b in 0..3 {
                g.add_edge(at(src, src.chain.d[a]), at(p, p.chain.b[b]));
                g.add_edge(at(p, p.chain.d[a]), at(dst, dst.chain.b[b]));
            }
        }
    }
    let td = unbounded_td(&g, &edge_gadgets.iter().map(|p| (p.off, &p.chain)).collect::<Vec<_>>(), &props
        .iter()
        .map(|(f, to, p, _)| (*f, *to, p.off, &p.chain))
        .collect::<Vec<_>>());
    let planted = planted.map(|gamma| {
        let mut s = Vec::with_capacity(3 * slots.len());
        for (e, &(i, j)) in edge_gadgets.iter().zip(&slots) {
            let left = if i == j { phi(gamma[i - 1], gamma[i - 1], t) } else { phi(gamma[i - 1], gamma[j - 1], t) }
                .expect("indices checked");
            // Deleting u_q leaves x_{q-1} on the left.
            let q = e.chain.x.iter().position(|&x| x == left).expect("planted pair is encoded") + 1;
            s.push(at(e, e.chain.u[q - 1]));
        }
        for (from, _, p, by_row) in &props {
            let (i, j) = slots[*from];
            let sel = if *by_row { gamma[i - 1] } else { gamma[j - 1] };
            s.push(at(p, p.chain.u[sel - 1]));
        }
        s.sort_unstable();
        s
    });
    let d = 3 * t * t + 3 * t + 3;
    let budget = 3 * slots.len();
    Ok(Generated {
        instance: Instance::new(g, d, budget, PFamily::Chordal, Mode::Component),
        td,
        planted,
        width_bound: (54 * k).saturating_sub(69),
    })
}

/// Path decomposition of the unbounded-`d` graph: a vertex-separation order
/// over the edge encoding gadgets, each step expanded into the gadget's own
/// path plus those of the propagators closing there, all joined with the
/// attachment triples of the active gadgets.
fn unbounded_td(
    g: &Graph,
    gadgets: &[(usize, &GadgetChain)],
    props: &[(usize, usize, usize, &GadgetChain)],
) -> TreeDecomposition {
    let n = gadgets.len();
    let mut f = Graph::new(n);
    for &(a, b, _, _) in props {
        if a != b {
            f.add_edge(a, b);
        }
    }
    let order: Vec<usize> = (0..n).collect();
    let zbags = separation_bags(&f, &order);
    let ends = |off: usize, c: &GadgetChain| -> Vec<usize> { c.b.iter().chain(&c.d).map(|&v| off + v).collect() };
    // Attachment triples of each edge gadget and its propagators.
    let mut x: Vec<Vec<usize>> = gadgets.iter().map(|&(off, c)| ends(off, c)).collect();
    for &(from, to, off, c) in props {
        x[from].extend(c.b.iter().map(|&v| off + v));
        x[to].extend(c.d.iter().map(|&v| off + v));
    }
    let sub = |off: usize, c: &GadgetChain, q: &[usize]| -> Vec<Vec<usize>> {
        let e = ends(off, c);
        c.path_bags()
            .into_iter()
            .map(|b| b.into_iter().map(|v| off + v).chain(e.iter().copied()).chain(q.iter().copied()).collect())
            .collect()
    };
    let mut bags = Vec::new();
    for (p, z) in zbags.iter().enumerate() {
        let q: Vec<usize> = z.iter().flat_map(|&s| x[s].iter().copied()).collect();
        let (off, c) = gadgets[p];
        bags.extend(sub(off, c, &q));
        for &(a, b, off, c) in props {
            if a.max(b) == p {
                bags.extend(sub(off, c, &q));
            }
        }
    }
    debug_assert!(bags.iter().flatten().all(|&v| v < g.n()));
    TreeDecomposition::path(bags)
}
