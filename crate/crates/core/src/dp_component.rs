//! Dynamic program for the component problem.
//!
//! A state groups the kept bag vertices by the component of the partial
//! solution they lie in. Each group stores that partial component as a small
//! labeled graph: bag vertices first in position order, then the forgotten
//! vertices in a canonical order. Groups are glued at introduce and join
//! nodes, and a component is checked against the family once its last
//! vertex is forgotten.
//!
//! [`compute_component_characteristic`] gives the guessed-pattern view of the
//! same information for a labeled boundaried graph.

use crate::bits::{insert_bit, ones, remove_bit};
use crate::decomposition::{NiceKind, NiceTreeDecomposition};
use crate::dp_block::{collect_witness, BagCtx, WNode, Wit, MAX_BAG};
use crate::graph::BoundariedGraph;
use crate::labeling::{PFamily, Pattern, MAX_LABEL};
use crate::partitions::Dsu;
use crate::{Error, Instance, Result, Solution, SolveStats};
use indexmap::IndexMap;
use rustc_hash::{FxBuildHasher, FxHashMap};
use std::rc::Rc;

/// Per-component data of a labeled boundaried graph.
///
/// Entry `j` describes the `j`-th component meeting the boundary:
/// `parts[j]` are its boundary vertices, `g[j]` the pattern it will be
/// isomorphic to and `h[j]` the labels of its non-boundary vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentCharacteristic {
    pub parts: Vec<Vec<usize>>,
    pub g: Vec<Pattern>,
    pub h: Vec<u16>,
}

fn mask_of(labels: &[u8], vs: &[usize]) -> u16 {
    vs.iter().fold(0u16, |m, &v| m | 1 << labels[v])
}

/// Every component characteristic of `a` under `labels` for the pattern list
/// `ud`, which should hold connected patterns.
///
/// A component that misses the boundary must already be one of the patterns.
/// Returns `NoCharacteristic` when some component fits none.
pub fn compute_component_characteristic(
    a: &BoundariedGraph,
    labels: &[u8],
    ud: &[Pattern],
) -> Result<Vec<ComponentCharacteristic>> {
    let mut boundary = vec![false; a.graph.n()];
    for &b in &a.boundary {
        boundary[b] = true;
    }
    let mut parts = Vec::new();
    let mut options: Vec<Vec<Pattern>> = Vec::new();
    let mut hs = Vec::new();
    for comp in a.components() {
        let p = Pattern::from_labeled(&a.graph, &comp, labels).ok_or(Error::NoCharacteristic)?;
        let inner: Vec<usize> = comp.iter().copied().filter(|&v| !boundary[v]).collect();
        let used = p.vmask();
        let fits = |f: &Pattern| {
            f.vmask() & used == used
                && f.induced(used) == p
                && inner.iter().all(|&x| f.nbr(labels[x]) & !used == 0)
        };
        let opts: Vec<Pattern> = ud.iter().copied().filter(fits).collect();
        if opts.is_empty() {
            return Err(Error::NoCharacteristic);
        }
        if inner.len() < comp.len() {
            parts.push(comp.iter().copied().filter(|&v| boundary[v]).collect());
            hs.push(mask_of(labels, &inner));
            options.push(opts);
        }
    }
    let mut out = vec![Vec::new()];
    for opts in &options {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<Pattern>| {
                opts.iter().map(move |&f| {
                    let mut v = pre.clone();
                    v.push(f);
                    v
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|g| ComponentCharacteristic { parts: parts.clone(), g, h: hs.clone() })
        .collect())
}

/// Whether `c` groups the boundary of `a` by the components of `a`.
pub fn groups_match(a: &BoundariedGraph, c: &ComponentCharacteristic) -> bool {
    let want: Vec<Vec<usize>> = a
        .components()
        .into_iter()
        .map(|comp| comp.into_iter().filter(|v| a.boundary.binary_search(v).is_ok()).collect())
        .filter(|p: &Vec<usize>| !p.is_empty())
        .collect();
    want == c.parts
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Group {
    /// Bag positions of the group.
    mask: u32,
    /// The part of the component built so far. Bag vertices carry labels
    /// `1..=b` in position order, forgotten vertices the labels after.
    p: Pattern,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    x: u32,
    i: u8,
    groups: Box<[Group]>,
}

type Table = IndexMap<Key, Wit, FxBuildHasher>;

/// Largest number of forgotten vertices whose order is canonicalized.
const CANON_LIMIT: usize = 6;

/// Whether a graph can still be an induced subgraph of a family member.
fn partial_ok(fam: PFamily, p: &Pattern) -> bool {
    match fam {
        PFamily::K1K2 => p.num_edges() < p.num_vertices(),
        PFamily::Cliques => p.is_complete(),
        PFamily::Chordal => p.is_chordal(),
        PFamily::Cycles => {
            p.labels().all(|l| p.nbr(l).count_ones() <= 2)
                && (p.num_edges() < p.num_vertices() || p.is_cycle())
        }
        PFamily::All => true,
    }
}

/// Canonical pattern of a local graph whose first `b` vertices are bag
/// vertices in position order. Forgotten vertices are ordered to minimize
/// the pattern when there are few of them.
fn canon(b: usize, adj: &[u16]) -> Pattern {
    let n = adj.len();
    let build = |perm: &[usize]| {
        // local index -> label
        let mut lab = [0u8; MAX_LABEL + 1];
        for (i, l) in lab.iter_mut().enumerate().take(b) {
            *l = i as u8 + 1;
        }
        for (j, &f) in perm.iter().enumerate() {
            lab[f] = (b + j) as u8 + 1;
        }
        let mut p = Pattern::empty((((1u32 << n) - 1) << 1) as u16);
        for u in 0..n {
            for w in ones(adj[u] as u64).filter(|&w| w > u) {
                p.add_edge(lab[u], lab[w]);
            }
        }
        p
    };
    let mut perm: Vec<usize> = (b..n).collect();
    if perm.len() <= 1 || perm.len() > CANON_LIMIT {
        return build(&perm);
    }
    let mut best = build(&perm);
    // Heap's algorithm over the forgotten vertices.
    let mut c = vec![0usize; perm.len()];
    let mut i = 0;
    while i < perm.len() {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(build(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

struct Dp {
    d: usize,
    k: usize,
    fam: PFamily,
    bags: Vec<BagCtx>,
    witness: bool,
}

fn insert(out: &mut Table, mut key: Key, wit: Wit) {
    key.groups.sort_unstable();
    out.entry(key).or_insert(wit);
}

impl Dp {
    /// Glues `pieces` along shared bag positions, adds `extra` edges between
    /// bag positions and turns bag vertices outside `mask` into forgotten
    /// ones. `None` if the result is too large or cannot be completed.
    fn build(&self, pieces: &[Group], mask: u32, extra: &[(usize, usize)]) -> Option<Pattern> {
        let union = pieces.iter().fold(0u32, |m, g| m | g.mask);
        let kept: Vec<usize> = ones(mask as u64).collect();
        let dropped: Vec<usize> = ones((union & !mask) as u64).collect();
        let bag_n = kept.len();
        let mut idx_of = [usize::MAX; MAX_BAG + 1];
        for (i, &p) in kept.iter().chain(&dropped).enumerate() {
            idx_of[p] = i;
        }
        let mut n = bag_n + dropped.len();
        if n > self.d {
            return None;
        }
        let mut adj = vec![0u16; n];
        for g in pieces {
            let pos: Vec<usize> = ones(g.mask as u64).collect();
            let mut local = [usize::MAX; MAX_LABEL + 1];
            for l in g.p.labels() {
                let l = l as usize;
                local[l] = if l <= pos.len() {
                    idx_of[pos[l - 1]]
                } else {
                    adj.push(0);
                    n += 1;
                    n - 1
                };
                if n > self.d {
                    return None;
                }
            }
            for (a, b) in g.p.edges() {
                let (u, w) = (local[a as usize], local[b as usize]);
                adj[u] |= 1 << w;
                adj[w] |= 1 << u;
            }
        }
        for &(a, b) in extra {
            let (u, w) = (idx_of[a], idx_of[b]);
            adj[u] |= 1 << w;
            adj[w] |= 1 << u;
        }
        let p = canon(bag_n, &adj);
        partial_ok(self.fam, &p).then_some(p)
    }

    fn wit_del(&self, v: usize, w: &Wit) -> Wit {
        self.witness.then(|| Rc::new(WNode::Del(v, w.clone())))
    }

    fn intro_step(&self, t: usize, v: usize, child: Table) -> Table {
        let pb = &self.bags[t];
        let vpos = pb.pos(v);
        let vbit = 1u32 << vpos;
        let mut out = Table::default();
        for (key, wit) in child {
            let groups: Vec<Group> =
                key.groups.iter().map(|g| Group { mask: insert_bit(g.mask, vpos), p: g.p }).collect();
            let px = insert_bit(key.x, vpos);
            if (key.x.count_ones() + 1) as usize + key.i as usize <= self.k {
                let nk = Key { x: px | vbit, i: key.i, groups: groups.clone().into_boxed_slice() };
                insert(&mut out, nk, wit.clone());
            }
            if self.d == 0 {
                continue;
            }
            let nbrs = pb.adj[vpos] & !px;
            let (mut pieces, mut rest): (Vec<Group>, Vec<Group>) =
                groups.iter().partition(|g| g.mask & nbrs != 0);
            pieces.push(Group { mask: vbit, p: Pattern::empty(1 << 1) });
            let mask = pieces.iter().fold(0u32, |m, g| m | g.mask);
            let extra: Vec<(usize, usize)> = ones(nbrs as u64).map(|u| (vpos, u)).collect();
            let Some(p) = self.build(&pieces, mask, &extra) else { continue };
            rest.push(Group { mask, p });
            insert(&mut out, Key { x: px, i: key.i, groups: rest.into_boxed_slice() }, wit);
        }
        out
    }

    fn forget_step(&self, c: usize, v: usize, child: Table) -> Table {
        let vpos = self.bags[c].pos(v);
        let vbit = 1u32 << vpos;
        let mut out = Table::default();
        for (key, wit) in child {
            let x = remove_bit(key.x & !vbit, vpos);
            if key.x & vbit != 0 {
                let groups = key.groups.iter().map(|g| Group { mask: remove_bit(g.mask, vpos), p: g.p }).collect();
                insert(&mut out, Key { x, i: key.i + 1, groups }, self.wit_del(v, &wit));
                continue;
            }
            let mut groups = Vec::with_capacity(key.groups.len());
            let mut ok = true;
            for g in key.groups.iter() {
                if g.mask & vbit == 0 {
                    groups.push(Group { mask: remove_bit(g.mask, vpos), p: g.p });
                    continue;
                }
                let mask = g.mask & !vbit;
                match self.build(std::slice::from_ref(g), mask, &[]) {
                    // The component is finished.
                    Some(p) if mask == 0 => ok = self.fam.accepts_component(&p.to_graph().0),
                    Some(p) => groups.push(Group { mask: remove_bit(mask, vpos), p }),
                    None => ok = false,
                }
            }
            if ok {
                insert(&mut out, Key { x, i: key.i, groups: groups.into_boxed_slice() }, wit);
            }
        }
        out
    }

    fn join_step(&self, left: Table, right: Table) -> Table {
        let mut by_x: FxHashMap<u32, Vec<usize>> = FxHashMap::default();
        for (idx, key) in right.keys().enumerate() {
            by_x.entry(key.x).or_default().push(idx);
        }
        let mut out = Table::default();
        for (k1, w1) in &left {
            let Some(list) = by_x.get(&k1.x) else { continue };
            for &idx in list {
                let (k2, w2) = right.get_index(idx).unwrap();
                let i = k1.i as usize + k2.i as usize;
                if k1.x.count_ones() as usize + i > self.k {
                    continue;
                }
                let Some(groups) = self.join_groups(&k1.groups, &k2.groups) else { continue };
                let nk = Key { x: k1.x, i: i as u8, groups: groups.into_boxed_slice() };
                let wit = self.witness.then(|| Rc::new(WNode::Join(w1.clone(), w2.clone())));
                insert(&mut out, nk, wit);
            }
        }
        out
    }

    fn join_groups(&self, a: &[Group], b: &[Group]) -> Option<Vec<Group>> {
        let all: Vec<Group> = a.iter().chain(b).copied().collect();
        let mut dsu = Dsu::new(all.len());
        for (i, ga) in a.iter().enumerate() {
            for (j, gb) in b.iter().enumerate() {
                if ga.mask & gb.mask != 0 {
                    dsu.union(i, a.len() + j);
                }
            }
        }
        let mut classes: IndexMap<usize, Vec<Group>, FxBuildHasher> = IndexMap::default();
        for (i, g) in all.iter().enumerate() {
            classes.entry(dsu.find(i)).or_default().push(*g);
        }
        classes
            .values()
            .map(|pieces| {
                let mask = pieces.iter().fold(0, |m, g| m | g.mask);
                self.build(pieces, mask, &[]).map(|p| Group { mask, p })
            })
            .collect()
    }
}

/// Decides the component problem on `inst` with the given decomposition.
pub fn solve_component(inst: &Instance, ntd: &NiceTreeDecomposition, witness: bool) -> Result<Solution> {
    let g = &inst.graph;
    if ntd.nodes.iter().any(|n| n.bag.len() > MAX_BAG) {
        return Err(Error::TooLarge(format!("bags above {MAX_BAG} vertices")));
    }
    let d = inst.d.min(g.n());
    if d > MAX_LABEL {
        return Err(Error::CapExceeded { d, cap: MAX_LABEL });
    }
    let dp = Dp {
        d,
        k: inst.k.min(g.n()).min(u8::MAX as usize),
        fam: inst.family,
        bags: ntd.nodes.iter().map(|n| BagCtx::new(g, &n.bag)).collect(),
        witness,
    };
    let mut stats = SolveStats { nodes: ntd.nodes.len(), ..Default::default() };
    let mut tables: Vec<Option<Table>> = (0..ntd.nodes.len()).map(|_| None).collect();
    for (t, node) in ntd.nodes.iter().enumerate() {
        let table = match node.kind {
            NiceKind::Leaf => {
                let mut tb = Table::default();
                tb.insert(Key { x: 0, i: 0, groups: Box::new([]) }, None);
                tb
            }
            NiceKind::Introduce(v) => {
                let c = node.children[0];
                dp.intro_step(t, v, tables[c].take().expect("child table"))
            }
            NiceKind::Forget(v) => {
                let c = node.children[0];
                dp.forget_step(c, v, tables[c].take().expect("child table"))
            }
            NiceKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                let ta = tables[a].take().expect("child table");
                let tb = tables[b].take().expect("child table");
                dp.join_step(ta, tb)
            }
        };
        stats.states += table.len();
        stats.retained += table.len();
        stats.max_family = stats.max_family.max(usize::from(!table.is_empty()));
        tables[t] = Some(table);
    }
    let root = tables[ntd.root()].take().unwrap_or_default();
    let best = root.iter().min_by_key(|(k, _)| k.i);
    Ok(Solution {
        yes: best.is_some(),
        witness: match (witness, best) {
            (true, Some((_, w))) => Some(collect_witness(w)),
            _ => None,
        },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{heuristic_td, to_nice};
    use crate::graph::Graph;
    use crate::labeling::enumerate_connected;
    use crate::Mode;

    fn run(g: &Graph, d: usize, k: usize, f: PFamily) -> Solution {
        let ntd = to_nice(g, &heuristic_td(g)).unwrap();
        solve_component(&Instance::new(g.clone(), d, k, f, Mode::Component), &ntd, true).unwrap()
    }

    #[test]
    fn examples() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(run(&k3, 3, 0, PFamily::Chordal).yes);
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let s = run(&p5, 2, 1, PFamily::Chordal);
        assert_eq!(s.witness, Some(vec![2]));
        assert!(!run(&p5, 2, 0, PFamily::Chordal).yes);
    }

    #[test]
    fn characteristic_examples() {
        let ud = enumerate_connected(3, PFamily::Chordal).unwrap();
        let single = BoundariedGraph::new(Graph::new(1), &[0]).unwrap();
        let cs = compute_component_characteristic(&single, &[2], &ud).unwrap();
        assert!(cs.iter().any(|c| c.g[0] == Pattern::empty(1 << 2) && c.h == vec![0]));

        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let a = BoundariedGraph::new(g, &[0, 1]).unwrap();
        let cs = compute_component_characteristic(&a, &[1, 2, 3], &ud).unwrap();
        assert!(!cs.is_empty());
        assert!(cs.iter().all(|c| c.h == vec![1 << 3] && groups_match(&a, c)));
    }
}
