//! Tree decompositions: validation, nice form, construction and `.td` IO.

use crate::graph::Graph;
use crate::partitions::Dsu;
use crate::{Error, Result};
use std::collections::VecDeque;
use std::fmt;

/// Default vertex bound for [`exact_td_small`].
pub const EXACT_TD_LIMIT: usize = 14;

/// A tree decomposition. Bags are sorted vertex lists; `edges` connect node
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// A path decomposition with consecutive bags adjacent.
    pub fn path(bags: Vec<Vec<usize>>) -> Self {
        let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
        Self::new(bags, edges)
    }

    /// Largest bag size minus one, or 0 without bags.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }
}

/// The first violated condition found by [`validate_td`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    /// The node graph is not a tree (or has a bad node index).
    NotATree,
    /// A bag mentions a vertex outside the graph.
    UnknownVertex(usize),
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    /// The nodes containing this vertex do not induce a subtree.
    NotConnected(usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree => write!(f, "decomposition is not a tree"),
            TdViolation::UnknownVertex(v) => write!(f, "bag mentions unknown vertex {v}"),
            TdViolation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::EdgeUncovered(u, v) => write!(f, "edge {u}-{v} is in no bag"),
            TdViolation::NotConnected(v) => write!(f, "bags containing {v} are not connected"),
        }
    }
}

/// Checks the three decomposition conditions and that the node graph is a tree.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> std::result::Result<(), TdViolation> {
    let t = td.bags.len();
    if t == 0 {
        return if g.n() == 0 { Ok(()) } else { Err(TdViolation::VertexUncovered(0)) };
    }
    if td.edges.len() + 1 != t {
        return Err(TdViolation::NotATree);
    }
    let mut dsu = Dsu::new(t);
    for &(a, b) in &td.edges {
        if a >= t || b >= t || !dsu.union(a, b) {
            return Err(TdViolation::NotATree);
        }
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(TdViolation::UnknownVertex(v));
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return Err(TdViolation::VertexUncovered(v));
    }
    for (u, v) in g.edges() {
        let covered = holders[u].iter().any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !covered {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    // In a tree, a node subset induces a subtree iff it spans |subset| - 1 edges.
    let mut inner = vec![0usize; g.n()];
    for &(a, b) in &td.edges {
        for &v in &td.bags[a] {
            if td.bags[b].binary_search(&v).is_ok() {
                inner[v] += 1;
            }
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| inner[v] + 1 != holders[v].len()) {
        return Err(TdViolation::NotConnected(v));
    }
    Ok(())
}

/// Node kinds of a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// A nice tree decomposition. Children precede parents in `nodes`; the root is
/// the last node and has an empty bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// The underlying plain decomposition.
    pub fn as_td(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                edges.push((c, i));
            }
        }
        TreeDecomposition::new(self.nodes.iter().map(|n| n.bag.clone()).collect(), edges)
    }

    /// Checks node kinds, child ordering and the root bag.
    pub fn check_kinds(&self) -> std::result::Result<(), String> {
        let Some(root) = self.nodes.last() else {
            return Err("no nodes".into());
        };
        if !root.bag.is_empty() {
            return Err("root bag is not empty".into());
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if n.children.iter().any(|&c| c >= i) {
                return Err(format!("node {i} has a child after it"));
            }
            let ok = match (n.kind, n.children.as_slice()) {
                (NiceKind::Leaf, []) => n.bag.is_empty(),
                (NiceKind::Introduce(v), &[c]) => {
                    let cb = &self.nodes[c].bag;
                    cb.binary_search(&v).is_err() && with(cb, v) == n.bag
                }
                (NiceKind::Forget(v), &[c]) => {
                    let cb = &self.nodes[c].bag;
                    n.bag.binary_search(&v).is_err() && with(&n.bag, v) == *cb
                }
                (NiceKind::Join, &[a, b]) => {
                    self.nodes[a].bag == n.bag && self.nodes[b].bag == n.bag
                }
                _ => false,
            };
            if !ok {
                return Err(format!("node {i} violates its kind {:?}", n.kind));
            }
        }
        Ok(())
    }
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut b = bag.to_vec();
    let pos = b.binary_search(&v).unwrap_or_else(|p| p);
    b.insert(pos, v);
    b
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Walks from node `from` to a node with bag `target`: forgets first, then
    /// introduces, each in increasing vertex order.
    fn walk(&mut self, mut from: usize, target: &[usize]) -> usize {
        let cur = self.nodes[from].bag.clone();
        let mut bag = cur.clone();
        for &v in cur.iter().filter(|v| target.binary_search(v).is_err()) {
            bag.retain(|&x| x != v);
            from = self.push(NiceKind::Forget(v), bag.clone(), vec![from]);
        }
        for &v in target.iter().filter(|v| cur.binary_search(v).is_err()) {
            bag = with(&bag, v);
            from = self.push(NiceKind::Introduce(v), bag.clone(), vec![from]);
        }
        from
    }
}

/// Converts a valid decomposition to nice form rooted at node 0 with the same
/// width and an empty root bag.
pub fn to_nice(g: &Graph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    validate_td(g, td).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut b = NiceBuilder { nodes: Vec::new() };
    if td.bags.is_empty() {
        b.push(NiceKind::Leaf, vec![], vec![]);
        return Ok(NiceTreeDecomposition { nodes: b.nodes });
    }
    let adj = td.adjacency();
    let t = td.bags.len();
    let mut parent = vec![usize::MAX; t];
    let mut order = Vec::with_capacity(t);
    let mut queue = VecDeque::from([0usize]);
    parent[0] = 0;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut built = vec![usize::MAX; t];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let children: Vec<usize> =
            adj[x].iter().copied().filter(|&y| y != 0 && parent[y] == x).collect();
        let mut cur: Option<usize> = None;
        for c in children {
            let branch = b.walk(built[c], bag);
            cur = Some(match cur {
                None => branch,
                Some(prev) => b.push(NiceKind::Join, bag.clone(), vec![prev, branch]),
            });
        }
        let node = match cur {
            Some(n) => n,
            None => {
                let leaf = b.push(NiceKind::Leaf, vec![], vec![]);
                b.walk(leaf, bag)
            }
        };
        built[x] = node;
    }
    b.walk(built[0], &[]);
    Ok(NiceTreeDecomposition { nodes: b.nodes })
}

/// Builds the decomposition of an elimination ordering. Each vertex gets the
/// bag of itself plus its later neighbors in the filled graph; its parent is
/// the earliest-eliminated of those neighbors. Forest roots are chained.
pub fn elimination_td(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![vec![]], vec![]);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nb: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = nb[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                nb[x].insert(y);
                nb[y].insert(x);
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bags.push(bag);
        match later.iter().map(|&w| pos[w]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

/// The min-fill elimination ordering, ties broken by lowest vertex id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut nb: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = (usize::MAX, usize::MAX);
        for v in (0..n).filter(|&v| alive[v]) {
            let list: Vec<usize> = nb[v].iter().copied().collect();
            let mut fill = 0;
            for (a, &x) in list.iter().enumerate() {
                for &y in &list[a + 1..] {
                    if !nb[x].contains(&y) {
                        fill += 1;
                    }
                }
            }
            if fill < best.0 {
                best = (fill, v);
            }
        }
        let v = best.1;
        let list: Vec<usize> = nb[v].iter().copied().collect();
        for (a, &x) in list.iter().enumerate() {
            nb[x].remove(&v);
            for &y in &list[a + 1..] {
                nb[x].insert(y);
                nb[y].insert(x);
            }
        }
        alive[v] = false;
        order.push(v);
    }
    order
}

/// A decomposition from the min-fill heuristic.
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    elimination_td(g, &min_fill_order(g))
}

/// A minimum-width decomposition by dynamic programming over vertex subsets.
pub fn exact_td_small(g: &Graph, limit: usize) -> Result<TreeDecomposition> {
    let n = g.n();
    if n > limit || n > 20 {
        return Err(Error::TooLarge(format!("exact treewidth on {n} vertices")));
    }
    let nbm: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    // q(s, v): vertices outside s + v reachable from v through s.
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nx = nbm[x] & !seen;
            seen |= nx;
            out |= nx & !s;
            frontier |= nx & s;
        }
        out
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1usize << n];
    let mut choice = vec![0u8; 1usize << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut arg = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let val = tw[prev as usize].max(q(prev, v).count_ones() as u8);
            if val < best {
                best = val;
                arg = v as u8;
            }
        }
        tw[s as usize] = best;
        choice[s as usize] = arg;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(elimination_td(g, &order))
}

/// Parses a PACE `.td` file.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let perr = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let nums = |ts: &[&str]| -> Result<Vec<usize>> {
            ts.iter().map(|t| t.parse().map_err(|_| perr("bad number"))).collect()
        };
        match toks[0] {
            "s" => {
                if header.is_some() || toks.len() != 5 || toks[1] != "td" {
                    return Err(perr("expected a single header `s td bags width+1 n`"));
                }
                let v = nums(&toks[2..])?;
                header = Some((v[0], v[2]));
                bags = vec![None; v[0]];
            }
            "b" => {
                let (nb, n) = header.ok_or_else(|| perr("bag before header"))?;
                let v = nums(&toks[1..])?;
                let Some((&id, verts)) = v.split_first() else {
                    return Err(perr("missing bag id"));
                };
                if id == 0 || id > nb || bags[id - 1].is_some() {
                    return Err(perr("bad or repeated bag id"));
                }
                if verts.iter().any(|&x| x == 0 || x > n) {
                    return Err(perr("vertex out of range"));
                }
                bags[id - 1] = Some(verts.iter().map(|x| x - 1).collect());
            }
            _ => {
                let (nb, _) = header.ok_or_else(|| perr("edge before header"))?;
                let v = nums(&toks)?;
                if v.len() != 2 || v[0] == 0 || v[1] == 0 || v[0] > nb || v[1] > nb {
                    return Err(perr("bad tree edge"));
                }
                edges.push((v[0] - 1, v[1] - 1));
            }
        }
    }
    if header.is_none() {
        return Err(Error::Parse { line: 0, msg: "missing header".into() });
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(Error::Parse { line: 0, msg: format!("bag {} missing", i + 1) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition::new(bags, edges))
}

/// Writes a PACE `.td` file for a graph on `n` vertices.
pub fn to_td(td: &TreeDecomposition, n: usize) -> String {
    let mut s = format!("s td {} {} {}\n", td.bags.len(), td.max_bag(), n);
    for (i, bag) in td.bags.iter().enumerate() {
        s.push_str(&format!("b {}", i + 1));
        for v in bag {
            s.push_str(&format!(" {}", v + 1));
        }
        s.push('\n');
    }
    for &(a, b) in &td.edges {
        s.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn grid(r: usize, c: usize) -> Graph {
        let mut g = Graph::new(r * c);
        for i in 0..r {
            for j in 0..c {
                if i + 1 < r {
                    g.add_edge(i * c + j, (i + 1) * c + j);
                }
                if j + 1 < c {
                    g.add_edge(i * c + j, i * c + j + 1);
                }
            }
        }
        g
    }

    #[test]
    fn validate_examples() {
        let c3 = cycle(3);
        assert_eq!(validate_td(&c3, &TreeDecomposition::path(vec![vec![0, 1, 2]])), Ok(()));
        assert_eq!(
            validate_td(&c3, &TreeDecomposition::path(vec![vec![0, 1], vec![1, 2]])),
            Err(TdViolation::EdgeUncovered(0, 2))
        );
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let bad = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2], vec![0]]);
        assert_eq!(validate_td(&p3, &bad), Err(TdViolation::NotConnected(0)));
    }

    #[test]
    fn nice_examples() {
        let g = Graph::new(1);
        let nice = to_nice(&g, &TreeDecomposition::path(vec![vec![0]])).unwrap();
        let kinds: Vec<_> = nice.nodes.iter().map(|n| n.kind).collect();
        assert_eq!(kinds, vec![NiceKind::Leaf, NiceKind::Introduce(0), NiceKind::Forget(0)]);

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2]]);
        let nice = to_nice(&p3, &td).unwrap();
        assert_eq!(nice.width(), 1);
        nice.check_kinds().unwrap();
        assert_eq!(validate_td(&p3, &nice.as_td()), Ok(()));

        let c5 = cycle(5);
        let td = heuristic_td(&c5);
        let nice = to_nice(&c5, &td).unwrap();
        assert_eq!(nice.width(), 2);
        nice.check_kinds().unwrap();
        assert_eq!(validate_td(&c5, &nice.as_td()), Ok(()));
    }

    #[test]
    fn star_decomposition_gets_joins() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![(0, 1), (0, 2), (0, 3)],
        );
        let nice = to_nice(&g, &td).unwrap();
        nice.check_kinds().unwrap();
        assert_eq!(nice.nodes.iter().filter(|n| n.kind == NiceKind::Join).count(), 2);
        assert_eq!(validate_td(&g, &nice.as_td()), Ok(()));
    }

    #[test]
    fn heuristic_examples() {
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(heuristic_td(&tree).width(), 1);
        assert_eq!(heuristic_td(&cycle(5)).width(), 2);
        assert_eq!(heuristic_td(&complete(5)).width(), 4);
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(validate_td(&disconnected, &heuristic_td(&disconnected)), Ok(()));
        assert_eq!(validate_td(&Graph::new(0), &heuristic_td(&Graph::new(0))), Ok(()));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_td_small(&cycle(4), EXACT_TD_LIMIT).unwrap().width(), 2);
        let g = grid(3, 3);
        let td = exact_td_small(&g, EXACT_TD_LIMIT).unwrap();
        assert_eq!(validate_td(&g, &td), Ok(()));
        assert_eq!(td.width(), 3);
        let mut k4e = complete(4);
        k4e = Graph::from_edges(4, &k4e.edges().into_iter().filter(|&e| e != (0, 1)).collect::<Vec<_>>()).unwrap();
        assert_eq!(exact_td_small(&k4e, EXACT_TD_LIMIT).unwrap().width(), 2);
        assert!(exact_td_small(&cycle(15), EXACT_TD_LIMIT).is_err());
    }

    #[test]
    fn td_roundtrip() {
        let c5 = cycle(5);
        let td = heuristic_td(&c5);
        let text = to_td(&td, 5);
        assert_eq!(parse_td(&text).unwrap(), td);
        assert!(parse_td("s td 1 1 1\nb 2 1\n").is_err());
    }
}
