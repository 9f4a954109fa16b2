//! Characteristics `(g, h)` of labeled boundaried graphs.
//!
//! For every non-trivial block `B` of `G[S]`, `g(B)` is a guessed final
//! pattern for the block of the eventual graph containing `B`, and `h(B)` is
//! the set of labels of non-boundary vertices of the `S`-block of `B` that are
//! adjacent to `B`.
//!
//! The module has two layers. The crate-internal layer works on bag positions
//! and is what the dynamic program runs. The public layer speaks in vertex ids
//! and exposes both the forward generators used by the program and the
//! relations they must satisfy, so the two can be checked against each other.

use crate::bits::ones;
use crate::graph::{biconnected_blocks, BoundariedGraph, Graph};
use crate::labeling::{
    boundary_blocks, containing_block, outside_labels, partial_iso_on, s_blocks, Pattern,
};
use crate::{Error, Result};

/// A characteristic over an explicit list of boundary blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic {
    /// Sorted vertex lists, in lexicographic order.
    pub blocks: Vec<Vec<usize>>,
    pub g: Vec<Pattern>,
    /// Label masks (bit `l` for label `l`).
    pub h: Vec<u16>,
}

impl Characteristic {
    pub fn empty() -> Self {
        Characteristic { blocks: vec![], g: vec![], h: vec![] }
    }
}

/// Pattern universe with an index of patterns by edge.
pub(crate) struct Ud {
    pub pats: Vec<Pattern>,
    by_edge: Vec<Vec<u16>>,
}

impl Ud {
    pub(crate) fn new(pats: Vec<Pattern>) -> Self {
        let mut by_edge = vec![Vec::new(); 16 * 16];
        for (i, p) in pats.iter().enumerate() {
            for (a, b) in p.edges() {
                by_edge[a as usize * 16 + b as usize].push(i as u16);
                by_edge[b as usize * 16 + a as usize].push(i as u16);
            }
        }
        Ud { pats, by_edge }
    }

    pub(crate) fn get(&self, id: u16) -> &Pattern {
        &self.pats[id as usize]
    }

    pub(crate) fn id_of(&self, p: &Pattern) -> Option<u16> {
        self.pats.iter().position(|q| q == p).map(|i| i as u16)
    }

    /// Patterns containing the edge `ab`.
    pub(crate) fn with_edge(&self, a: u8, b: u8) -> &[u16] {
        &self.by_edge[a as usize * 16 + b as usize]
    }
}

/// The labeled pattern of the bag positions in `block`, if labels are distinct.
pub(crate) fn block_pattern(adj: &[u32], labels: &[u8], block: u32) -> Option<Pattern> {
    let mut vmask = 0u16;
    for p in ones(block as u64) {
        let l = labels[p];
        if l == 0 || vmask >> l & 1 == 1 {
            return None;
        }
        vmask |= 1 << l;
    }
    let mut pat = Pattern::empty(vmask);
    for p in ones(block as u64) {
        for q in ones((adj[p] & block) as u64) {
            if p < q {
                pat.add_edge(labels[p], labels[q]);
            }
        }
    }
    Some(pat)
}

pub(crate) fn label_mask(labels: &[u8], block: u32) -> u16 {
    ones(block as u64).fold(0u16, |m, p| m | 1 << labels[p])
}

fn partial_iso_mask(adj: &[u32], labels: &[u8], block: u32, q: &Pattern) -> bool {
    match block_pattern(adj, labels, block) {
        Some(p) => p.vmask() & !q.vmask() == 0 && q.induced(p.vmask()) == p,
        None => false,
    }
}

/// Parent options at an introduce node.
///
/// `adj` and `labels` are over parent bag positions; `child_blocks` are the
/// child's non-trivial blocks already translated to parent positions, with
/// their `(g, h)` in `child_gh`. Every returned vector is aligned with
/// `parent_blocks`.
pub(crate) fn intro_core(
    ud: &Ud,
    adj: &[u32],
    labels: &[u8],
    vpos: usize,
    parent_blocks: &[u32],
    child_blocks: &[u32],
    child_gh: &[(u16, u16)],
) -> Vec<Vec<(u16, u16)>> {
    let lv = labels[vpos];
    let mut options: Vec<Vec<(u16, u16)>> = Vec::with_capacity(parent_blocks.len());
    for &b2 in parent_blocks {
        if b2 >> vpos & 1 == 0 {
            let j = child_blocks.iter().position(|&b| b == b2).expect("block survives introduce");
            options.push(vec![child_gh[j]]);
            continue;
        }
        let mut g = None;
        let mut h = 0u16;
        let mut consistent = true;
        for (j, &b1) in child_blocks.iter().enumerate() {
            if b1 & !b2 != 0 {
                continue;
            }
            let (g1, h1) = child_gh[j];
            if g.is_some_and(|g0| g0 != g1) || ud.get(g1).nbr(lv) & h1 != 0 {
                consistent = false;
                break;
            }
            g = Some(g1);
            h |= h1;
        }
        if !consistent {
            return vec![];
        }
        let opts: Vec<(u16, u16)> = match g {
            Some(g) => {
                let q = ud.get(g);
                if h & label_mask(labels, b2) != 0 || !partial_iso_mask(adj, labels, b2, q) {
                    return vec![];
                }
                vec![(g, h)]
            }
            None => {
                // Without child blocks inside, the new block is an edge.
                debug_assert_eq!(b2.count_ones(), 2);
                let u = ones((b2 & !(1 << vpos)) as u64).next().unwrap();
                if labels[u] == lv {
                    return vec![];
                }
                ud.with_edge(labels[u], lv).iter().map(|&id| (id, 0)).collect()
            }
        };
        if opts.is_empty() {
            return vec![];
        }
        options.push(opts);
    }
    cartesian(&options)
}

fn cartesian(options: &[Vec<(u16, u16)>]) -> Vec<Vec<(u16, u16)>> {
    let mut out = vec![Vec::with_capacity(options.len())];
    for opts in options {
        if opts.len() == 1 {
            for o in &mut out {
                o.push(opts[0]);
            }
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for o in &out {
            for &x in opts {
                let mut y = o.clone();
                y.push(x);
                next.push(y);
            }
        }
        out = next;
    }
    out
}

/// The parent characteristic at a forget node when the forgotten vertex stays.
///
/// All masks are over child positions; `parent_blocks` are the non-trivial
/// blocks after removing `vpos`.
pub(crate) fn forget_core(
    ud: &Ud,
    labels: &[u8],
    vpos: usize,
    child_blocks: &[u32],
    child_gh: &[(u16, u16)],
    parent_blocks: &[u32],
) -> Vec<(u16, u16)> {
    let lv = labels[vpos];
    parent_blocks
        .iter()
        .map(|&b1| {
            let j = child_blocks.iter().position(|&b2| b1 & !b2 == 0).expect("parent block inside a child block");
            let (g, h) = child_gh[j];
            if child_blocks[j] >> vpos & 1 == 0 {
                (g, h)
            } else {
                let q = ud.get(g);
                (g, 1 << lv | (h & q.nbr_of_set(label_mask(labels, b1))))
            }
        })
        .collect()
}

/// Combines the `h` parts at a join; `g` must already agree.
pub(crate) fn join_core(ud: &Ud, a: &[(u16, u16)], b: &[(u16, u16)]) -> Option<Vec<(u16, u16)>> {
    a.iter()
        .zip(b)
        .map(|(&(g, h1), &(g2, h2))| {
            debug_assert_eq!(g, g2);
            (h1 & h2 == 0 && ud.get(g).nbr_of_set(h1) & h2 == 0).then_some((g, h1 | h2))
        })
        .collect()
}

/// Every characteristic of a labeled boundaried graph for the pattern list.
///
/// Returns one entry per admissible choice of patterns, or `NoCharacteristic`
/// when some `S`-block fits no pattern.
pub fn compute_characteristic(
    a: &BoundariedGraph,
    labels: &[u8],
    ud: &[Pattern],
) -> Result<Vec<Characteristic>> {
    let blocks = boundary_blocks(a);
    let sb = s_blocks(a);
    let bcomps = a.boundary_components();
    let in_s = |v: usize| a.boundary.binary_search(&v).is_ok();
    // Per S-block: its boundary blocks and admissible patterns.
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        let x = containing_block(&sb, b).ok_or(Error::NoCharacteristic)?;
        match groups.iter_mut().find(|(gx, _)| *gx == x) {
            Some((_, v)) => v.push(bi),
            None => groups.push((x, vec![bi])),
        }
    }
    let mut choices: Vec<Vec<Pattern>> = Vec::new();
    for (x, _) in &groups {
        let xs = &sb[*x];
        // Vertices whose closed neighborhood in X must be complete.
        let mut ws: Vec<usize> = xs.iter().copied().filter(|&w| !in_s(w)).collect();
        for c in &bcomps {
            let inter: Vec<usize> = c.iter().copied().filter(|v| xs.binary_search(v).is_ok()).collect();
            if inter.len() == 1 {
                ws.push(inter[0]);
            }
        }
        let fits: Vec<Pattern> = ud
            .iter()
            .filter(|q| partial_iso_on(&a.graph, xs, labels, q))
            .filter(|q| {
                ws.iter().all(|&w| {
                    let nl = xs
                        .iter()
                        .filter(|&&y| a.graph.has_edge(w, y))
                        .fold(0u16, |m, &y| m | 1 << labels[y]);
                    nl == q.nbr(labels[w])
                })
            })
            .copied()
            .collect();
        if fits.is_empty() {
            return Err(Error::NoCharacteristic);
        }
        choices.push(fits);
    }
    let h: Vec<u16> = blocks
        .iter()
        .map(|b| {
            let x = containing_block(&sb, b).unwrap();
            outside_labels(a, labels, &sb[x], b)
        })
        .collect();
    let mut out = vec![Characteristic { blocks: blocks.clone(), g: vec![Pattern::empty(0); blocks.len()], h }];
    for ((_, members), fits) in groups.iter().zip(&choices) {
        let mut next = Vec::new();
        for c in &out {
            for q in fits {
                let mut c2 = c.clone();
                for &bi in members {
                    c2.g[bi] = *q;
                }
                next.push(c2);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Whether every `S`-block of the sum that contains a block of `c` is
/// label-isomorphic to its pattern.
pub fn respects_check(sum: &BoundariedGraph, labels: &[u8], c: &Characteristic) -> bool {
    let sb = s_blocks(sum);
    c.blocks.iter().zip(&c.g).all(|(b, q)| match containing_block(&sb, b) {
        Some(x) => Pattern::from_labeled(&sum.graph, &sb[x], labels).as_ref() == Some(q),
        None => false,
    })
}

/// Non-trivial blocks of `G[vs]`, sorted, in original ids.
pub fn nontrivial_blocks(g: &Graph, vs: &[usize]) -> Vec<Vec<usize>> {
    let mut vs = vs.to_vec();
    vs.sort_unstable();
    let sub = g.induced(&vs);
    let mut out: Vec<Vec<usize>> = biconnected_blocks(&sub)
        .blocks
        .into_iter()
        .filter(|b| b.len() >= 2)
        .map(|b| b.into_iter().map(|i| vs[i]).collect())
        .collect();
    out.sort();
    out
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn labels_of(labels: &[u8], vs: &[usize]) -> u16 {
    vs.iter().fold(0u16, |m, &v| m | 1 << labels[v])
}

/// Whether `(g, h)` is valid for the labeled bag graph `G[vs]`.
pub fn is_valid(g: &Graph, vs: &[usize], labels: &[u8], c: &Characteristic) -> bool {
    let sub_vs: Vec<usize> = {
        let mut v = vs.to_vec();
        v.sort_unstable();
        v
    };
    let sub = g.induced(&sub_vs);
    let sub_labels: Vec<u8> = sub_vs.iter().map(|&v| labels[v]).collect();
    crate::labeling::is_block_labeling(&sub, &sub_labels)
        && c.blocks == nontrivial_blocks(g, vs)
        && c.blocks.iter().zip(&c.g).zip(&c.h).all(|((b, q), &h)| {
            partial_iso_on(g, b, labels, q) && labels_of(labels, b) & h == 0
        })
}

/// All restrictions of a parent characteristic at an introduce node.
///
/// `alive` is the child's `B_t' \ X`; the parent bag graph is `G[alive + v]`.
/// `parent` is over the non-trivial blocks of the parent bag graph.
pub fn restriction_of(
    g: &Graph,
    alive: &[usize],
    v: usize,
    labels: &[u8],
    parent: &Characteristic,
) -> Vec<Characteristic> {
    let child_blocks = nontrivial_blocks(g, alive);
    let lv = labels[v];
    let mut per_block: Vec<Vec<(Pattern, u16)>> = Vec::new();
    for b1 in &child_blocks {
        let j = parent.blocks.iter().position(|b2| subset(b1, b2)).expect("child block inside a parent block");
        let (q, h2) = (parent.g[j], parent.h[j]);
        if parent.blocks[j].binary_search(&v).is_err() {
            per_block.push(vec![(q, h2)]);
        } else {
            let opts: Vec<(Pattern, u16)> = (0..=h2)
                .filter(|&s| s & !h2 == 0)
                .filter(|&s| q.nbr(lv) & s == 0)
                .map(|s| (q, s))
                .collect();
            per_block.push(opts);
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_block.len()];
    if per_block.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let gh: Vec<(Pattern, u16)> = idx.iter().zip(&per_block).map(|(&i, o)| o[i]).collect();
        // Union condition for parent blocks containing v.
        let ok = parent.blocks.iter().zip(&parent.h).all(|(b2, &h2)| {
            if b2.binary_search(&v).is_err() {
                return true;
            }
            let u = child_blocks
                .iter()
                .zip(&gh)
                .filter(|(b1, _)| subset(b1, b2))
                .fold(0u16, |m, (_, &(_, h))| m | h);
            u == h2
        });
        if ok {
            out.push(Characteristic {
                blocks: child_blocks.clone(),
                g: gh.iter().map(|x| x.0).collect(),
                h: gh.iter().map(|x| x.1).collect(),
            });
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < per_block[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Whether `child` is a restriction of `parent` at an introduce node.
pub fn is_restriction(
    g: &Graph,
    alive: &[usize],
    v: usize,
    labels: &[u8],
    parent: &Characteristic,
    child: &Characteristic,
) -> bool {
    restriction_of(g, alive, v, labels, parent).contains(child)
}

/// All valid extensions at a forget node.
///
/// `alive` is the child's `B_t' \ X` (it contains `v`); `labels` must label
/// all of it. `parent` is over the non-trivial blocks of `G[alive - v]`.
pub fn extensions_of(
    g: &Graph,
    alive: &[usize],
    v: usize,
    labels: &[u8],
    parent: &Characteristic,
    ud: &[Pattern],
    d: usize,
) -> Vec<Characteristic> {
    let child_blocks = nontrivial_blocks(g, alive);
    let lv = labels[v];
    let all_h = ((1u32 << (d + 1)) - 2) as u16;
    let mut per_block: Vec<Vec<(Pattern, u16)>> = Vec::new();
    for b2 in &child_blocks {
        let inner: Vec<usize> =
            (0..parent.blocks.len()).filter(|&j| subset(&parent.blocks[j], b2)).collect();
        let lb2 = labels_of(labels, b2);
        let hs = (0..=all_h).filter(|&s| s & !all_h == 0 && s & lb2 == 0);
        let opts: Vec<(Pattern, u16)> = if b2.binary_search(&v).is_err() {
            // Unchanged block.
            match inner.first() {
                Some(&j) => vec![(parent.g[j], parent.h[j])],
                None => vec![],
            }
        } else if inner.is_empty() {
            let qs: Vec<Pattern> =
                ud.iter().copied().filter(|q| partial_iso_on(g, b2, labels, q)).collect();
            hs.flat_map(|s| qs.iter().map(move |&q| (q, s))).collect()
        } else {
            let q = parent.g[inner[0]];
            if inner.iter().any(|&j| parent.g[j] != q) || !partial_iso_on(g, b2, labels, &q) {
                vec![]
            } else {
                hs.filter(|&s| {
                    inner.iter().all(|&j| {
                        let lb1 = labels_of(labels, &parent.blocks[j]);
                        parent.h[j] == 1 << lv | (q.nbr_of_set(lb1) & s)
                    })
                })
                .map(|s| (q, s))
                .collect()
            }
        };
        if opts.is_empty() {
            return vec![];
        }
        per_block.push(opts);
    }
    let mut out = vec![Characteristic { blocks: child_blocks.clone(), g: vec![], h: vec![] }];
    for opts in &per_block {
        let mut next = Vec::new();
        for c in &out {
            for &(q, s) in opts {
                let mut c2 = c.clone();
                c2.g.push(q);
                c2.h.push(s);
                next.push(c2);
            }
        }
        out = next;
    }
    out.retain(|c| is_valid(g, alive, labels, c));
    out
}

/// Whether two characteristics over the same blocks combine at a join into
/// one with the given `h`.
pub fn join_compatible(
    c1: &Characteristic,
    c2: &Characteristic,
    target_h: &[u16],
) -> Result<bool> {
    if c1.blocks != c2.blocks || c1.g != c2.g || target_h.len() != c1.blocks.len() {
        return Err(Error::DomainMismatch);
    }
    Ok(c1.g.iter().zip(c1.h.iter().zip(&c2.h)).zip(target_h).all(|((q, (&h1, &h2)), &h)| {
        h1 & h2 == 0 && h1 | h2 == h && q.nbr_of_set(h1) & h2 == 0
    }))
}

/// Bag context in positions for the vertex-level wrappers.
struct Positions {
    vs: Vec<usize>,
    adj: Vec<u32>,
    labels: Vec<u8>,
}

impl Positions {
    fn new(g: &Graph, vs: &[usize], labels: &[u8]) -> Self {
        let mut vs = vs.to_vec();
        vs.sort_unstable();
        let adj = vs
            .iter()
            .map(|&u| {
                vs.iter().enumerate().filter(|(_, &w)| g.has_edge(u, w)).fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let labels = vs.iter().map(|&u| labels[u]).collect();
        Positions { vs, adj, labels }
    }

    fn mask(&self, b: &[usize]) -> u32 {
        b.iter().fold(0u32, |m, v| m | 1 << self.vs.binary_search(v).unwrap())
    }

    fn pos(&self, v: usize) -> usize {
        self.vs.binary_search(&v).unwrap()
    }
}

fn to_ids(ud: &Ud, c: &Characteristic) -> Option<Vec<(u16, u16)>> {
    c.g.iter().zip(&c.h).map(|(q, &h)| ud.id_of(q).map(|id| (id, h))).collect()
}

/// Parent characteristics reachable from `child` when `v` is introduced and
/// kept; the forward form of [`restriction_of`].
pub fn introduce_parents(
    g: &Graph,
    alive: &[usize],
    v: usize,
    labels: &[u8],
    child: &Characteristic,
    ud: &[Pattern],
) -> Vec<Characteristic> {
    let udx = Ud::new(ud.to_vec());
    let mut all = alive.to_vec();
    all.push(v);
    let pos = Positions::new(g, &all, labels);
    let parent_blocks = nontrivial_blocks(g, &all);
    let pmasks: Vec<u32> = parent_blocks.iter().map(|b| pos.mask(b)).collect();
    let cmasks: Vec<u32> = child.blocks.iter().map(|b| pos.mask(b)).collect();
    let Some(gh) = to_ids(&udx, child) else { return vec![] };
    intro_core(&udx, &pos.adj, &pos.labels, pos.pos(v), &pmasks, &cmasks, &gh)
        .into_iter()
        .map(|opt| Characteristic {
            blocks: parent_blocks.clone(),
            g: opt.iter().map(|&(id, _)| *udx.get(id)).collect(),
            h: opt.iter().map(|&(_, h)| h).collect(),
        })
        .collect()
}

/// The parent characteristic when `v` is forgotten and kept; the forward form
/// of [`extensions_of`].
pub fn forget_parent(
    g: &Graph,
    alive: &[usize],
    v: usize,
    labels: &[u8],
    child: &Characteristic,
    ud: &[Pattern],
) -> Option<Characteristic> {
    let udx = Ud::new(ud.to_vec());
    let pos = Positions::new(g, alive, labels);
    let rest: Vec<usize> = alive.iter().copied().filter(|&u| u != v).collect();
    let parent_blocks = nontrivial_blocks(g, &rest);
    let pmasks: Vec<u32> = parent_blocks.iter().map(|b| pos.mask(b)).collect();
    let cmasks: Vec<u32> = child.blocks.iter().map(|b| pos.mask(b)).collect();
    let gh = to_ids(&udx, child)?;
    let out = forget_core(&udx, &pos.labels, pos.pos(v), &cmasks, &gh, &pmasks);
    Some(Characteristic {
        blocks: parent_blocks,
        g: out.iter().map(|&(id, _)| *udx.get(id)).collect(),
        h: out.iter().map(|&(_, h)| h).collect(),
    })
}

/// The combined characteristic at a join, if the two sides are compatible.
pub fn join_combine(c1: &Characteristic, c2: &Characteristic) -> Option<Characteristic> {
    if c1.blocks != c2.blocks || c1.g != c2.g {
        return None;
    }
    let h: Option<Vec<u16>> = c1
        .g
        .iter()
        .zip(c1.h.iter().zip(&c2.h))
        .map(|(q, (&h1, &h2))| (h1 & h2 == 0 && q.nbr_of_set(h1) & h2 == 0).then_some(h1 | h2))
        .collect();
    Some(Characteristic { blocks: c1.blocks.clone(), g: c1.g.clone(), h: h? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{enumerate_ud, PFamily};

    fn pat(labels: &[u8], edges: &[(u8, u8)]) -> Pattern {
        Pattern::from_edges(labels, edges).unwrap()
    }

    #[test]
    fn bare_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let a = BoundariedGraph::new(g, &[0, 1, 2]).unwrap();
        let ud = enumerate_ud(3, PFamily::Chordal).unwrap();
        let cs = compute_characteristic(&a, &[1, 2, 3], &ud).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].g[0], pat(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)]));
        assert_eq!(cs[0].h, vec![0]);
    }

    #[test]
    fn triangle_with_outside_vertex() {
        // Triangle 0,1,2 in S; vertex 3 outside, adjacent to 0 and 1.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]).unwrap();
        let a = BoundariedGraph::new(g, &[0, 1, 2]).unwrap();
        let ud = enumerate_ud(4, PFamily::Chordal).unwrap();
        let cs = compute_characteristic(&a, &[1, 2, 3, 4], &ud).unwrap();
        // Completeness pins label 4 to exactly neighbors {1,2}: the diamond.
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].h, vec![1 << 4]);
        assert_eq!(cs[0].g[0], pat(&[1, 2, 3, 4], &[(1, 2), (2, 3), (1, 3), (1, 4), (2, 4)]));
    }

    #[test]
    fn c4_block_has_no_characteristic() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let a = BoundariedGraph::new(g, &[0, 1]).unwrap();
        let ud = enumerate_ud(4, PFamily::Chordal).unwrap();
        assert_eq!(compute_characteristic(&a, &[1, 2, 3, 4], &ud), Err(Error::NoCharacteristic));
    }

    #[test]
    fn respects_examples() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let a = BoundariedGraph::new(g, &[0, 1]).unwrap();
        let tri = pat(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)]);
        let c = Characteristic { blocks: vec![vec![0, 1]], g: vec![tri], h: vec![1 << 3] };
        assert!(respects_check(&a, &[1, 2, 3], &c));
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let a = BoundariedGraph::new(g, &[0, 1]).unwrap();
        assert!(!respects_check(&a, &[1, 2], &c));
    }

    #[test]
    fn restriction_examples() {
        // Bag 0-1 edge; v = 2 isolated: one restriction, identical.
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let q = pat(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)]);
        let parent = Characteristic { blocks: vec![vec![0, 1]], g: vec![q], h: vec![1 << 3] };
        let rs = restriction_of(&g, &[0, 1], 2, &[1, 2, 3], &parent);
        assert_eq!(rs, vec![parent.clone()]);

        // v = 2 completes a triangle with h = 0: the child edge gets h = 0.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let parent = Characteristic { blocks: vec![vec![0, 1, 2]], g: vec![q], h: vec![0] };
        let rs = restriction_of(&g, &[0, 1], 2, &[1, 2, 3], &parent);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].h, vec![0]);

        // h(B2) = {5,6} split over two child blocks.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let big = pat(
            &[1, 2, 3, 4, 5, 6],
            &[(1, 2), (2, 3), (1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (2, 6), (3, 6)],
        );
        let parent =
            Characteristic { blocks: vec![vec![0, 1, 2, 3]], g: vec![big], h: vec![1 << 5 | 1 << 6] };
        let rs = restriction_of(&g, &[0, 1, 2], 3, &[1, 2, 3, 4], &parent);
        // Child blocks {0,1} and {1,2}; label 4 is adjacent to neither 5 nor 6.
        assert_eq!(rs.len(), 9);
    }

    #[test]
    fn extension_example() {
        // Child bag {0,1,2} triangle, forget 2 (label 7 mapped to 3 here).
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let ud = enumerate_ud(3, PFamily::Chordal).unwrap();
        let k3 = pat(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)]);
        let child = Characteristic { blocks: vec![vec![0, 1, 2]], g: vec![k3], h: vec![0] };
        let parent = forget_parent(&g, &[0, 1, 2], 2, &[1, 2, 3], &child, &ud).unwrap();
        assert_eq!(parent.h, vec![1 << 3]);
        assert!(extensions_of(&g, &[0, 1, 2], 2, &[1, 2, 3], &parent, &ud, 3).contains(&child));

        let k2 = pat(&[1, 2], &[(1, 2)]);
        let bad = Characteristic { blocks: vec![vec![0, 1]], g: vec![k2], h: vec![1 << 3] };
        assert!(!extensions_of(&g, &[0, 1, 2], 2, &[1, 2, 3], &bad, &ud, 3).contains(&child));
    }

    #[test]
    fn join_examples() {
        let q = pat(&[1, 2, 3, 4], &[(1, 2), (1, 3), (2, 3), (3, 4), (1, 4)]);
        let mk = |h: u16| Characteristic { blocks: vec![vec![0, 1]], g: vec![q], h: vec![h] };
        assert!(join_compatible(&mk(0), &mk(0), &[0]).unwrap());
        assert!(!join_compatible(&mk(1 << 3), &mk(1 << 3), &[1 << 3]).unwrap());
        assert!(!join_compatible(&mk(1 << 3), &mk(1 << 4), &[1 << 3 | 1 << 4]).unwrap());
        assert!(join_compatible(&mk(1 << 2), &mk(1 << 4), &[1 << 2 | 1 << 4]).is_ok());
        let other = Characteristic { blocks: vec![vec![0, 2]], g: vec![q], h: vec![0] };
        assert_eq!(join_compatible(&mk(0), &other, &[0]), Err(Error::DomainMismatch));
    }
}
