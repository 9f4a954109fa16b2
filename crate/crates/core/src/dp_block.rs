//! Dynamic program for the block problem over a nice tree decomposition.
//!
//! A table entry is keyed by the deleted bag vertices `X`, a labeling of the
//! other bag vertices, the number `i` of deleted forgotten vertices and a
//! characteristic `(g, h)` over the non-trivial blocks of the bag graph. Its
//! value is a representative family of partitions of the bag graph's
//! components, recording which of them are joined through forgotten vertices.
//!
//! Transitions run child to parent. Bag positions index the sorted bag; labels
//! are packed four bits per position.

use crate::bits::{insert_bit, ones, remove_bit};
use crate::characteristics::{forget_core, intro_core, join_core, Ud};
use crate::decomposition::{NiceKind, NiceTreeDecomposition};
use crate::graph::{biconnected_blocks, Graph};
use crate::labeling::enumerate_ud;
use crate::partitions::{inc_is_forest, uplus, Partition};
use crate::repset::rep_partition_indices;
use crate::{Error, Instance, Result, Solution, SolveStats};
use indexmap::IndexMap;
use rustc_hash::{FxBuildHasher, FxHashMap};
use std::cell::RefCell;
use std::rc::Rc;

/// Largest bag the packed key supports.
pub const MAX_BAG: usize = 15;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    x: u32,
    lab: u64,
    i: u8,
    gh: Box<[(u16, u16)]>,
}

/// Deleted vertices of a partial solution, shared between entries.
pub(crate) enum WNode {
    Del(usize, Wit),
    Join(Wit, Wit),
}

pub(crate) type Wit = Option<Rc<WNode>>;

pub(crate) fn collect_witness(w: &Wit) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![w.clone()];
    while let Some(w) = stack.pop() {
        match w.as_deref() {
            None => {}
            Some(WNode::Del(v, rest)) => {
                out.push(*v);
                stack.push(rest.clone());
            }
            Some(WNode::Join(a, b)) => {
                stack.push(a.clone());
                stack.push(b.clone());
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Default)]
struct Entry {
    fam: Vec<Partition>,
    wit: Vec<Wit>,
}

impl Entry {
    fn push(&mut self, p: Partition, w: Wit) {
        self.fam.push(p);
        self.wit.push(w);
    }
}

type Table = IndexMap<Key, Entry, FxBuildHasher>;

/// Structure of `G[bag - X]` in bag positions.
pub(crate) struct Shape {
    /// Non-trivial blocks, sorted numerically.
    pub blocks: Vec<u32>,
    /// Components, sorted by lowest position.
    pub comps: Vec<u32>,
    pub comp_of: [u8; MAX_BAG + 1],
}

pub(crate) struct BagCtx {
    pub verts: Vec<usize>,
    pub adj: Vec<u32>,
    shapes: RefCell<FxHashMap<u32, Rc<Shape>>>,
}

impl BagCtx {
    pub(crate) fn new(g: &Graph, bag: &[usize]) -> Self {
        let adj = bag
            .iter()
            .map(|&u| {
                bag.iter()
                    .enumerate()
                    .filter(|&(_, &w)| g.has_edge(u, w))
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .collect();
        BagCtx { verts: bag.to_vec(), adj, shapes: RefCell::new(FxHashMap::default()) }
    }

    pub(crate) fn pos(&self, v: usize) -> usize {
        self.verts.binary_search(&v).expect("vertex in bag")
    }

    /// Shape of the bag graph after deleting the positions of `x`.
    pub(crate) fn shape(&self, x: u32) -> Rc<Shape> {
        if let Some(s) = self.shapes.borrow().get(&x) {
            return s.clone();
        }
        let w = self.verts.len();
        let alive: Vec<usize> = (0..w).filter(|&p| x >> p & 1 == 0).collect();
        let mut sub = Graph::new(alive.len());
        for (i, &p) in alive.iter().enumerate() {
            for (j, &q) in alive.iter().enumerate().skip(i + 1) {
                if self.adj[p] >> q & 1 == 1 {
                    sub.add_edge(i, j);
                }
            }
        }
        let mut blocks: Vec<u32> = biconnected_blocks(&sub)
            .blocks
            .into_iter()
            .filter(|b| b.len() >= 2)
            .map(|b| b.into_iter().fold(0u32, |m, i| m | 1 << alive[i]))
            .collect();
        blocks.sort_unstable();
        let alive_mask = alive.iter().fold(0u32, |m, &p| m | 1 << p);
        let mut comps = Vec::new();
        let mut rest = alive_mask;
        while rest != 0 {
            let mut c = rest & rest.wrapping_neg();
            loop {
                let grow = ones(c as u64).fold(c, |m, p| m | (self.adj[p] & alive_mask));
                if grow == c {
                    break;
                }
                c = grow;
            }
            comps.push(c);
            rest &= !c;
        }
        let mut comp_of = [u8::MAX; MAX_BAG + 1];
        for (i, &c) in comps.iter().enumerate() {
            for p in ones(c as u64) {
                comp_of[p] = i as u8;
            }
        }
        let s = Rc::new(Shape { blocks, comps, comp_of });
        self.shapes.borrow_mut().insert(x, s.clone());
        s
    }
}

pub(crate) fn nib_get(l: u64, p: usize) -> u8 {
    (l >> (4 * p) & 0xF) as u8
}

pub(crate) fn nib_insert(l: u64, p: usize, v: u8) -> u64 {
    let low = l & ((1u64 << (4 * p)) - 1);
    let high = l >> (4 * p);
    low | (v as u64) << (4 * p) | high << (4 * (p + 1))
}

pub(crate) fn nib_remove(l: u64, p: usize) -> u64 {
    let low = l & ((1u64 << (4 * p)) - 1);
    let high = l >> (4 * (p + 1));
    low | high << (4 * p)
}

pub(crate) fn unpack(l: u64, w: usize) -> [u8; MAX_BAG + 1] {
    let mut out = [0u8; MAX_BAG + 1];
    for (p, o) in out.iter_mut().enumerate().take(w) {
        *o = nib_get(l, p);
    }
    out
}

struct Dp<'a> {
    d: usize,
    k: usize,
    ud: Ud,
    bags: Vec<BagCtx>,
    witness: bool,
    _g: &'a Graph,
}

fn add_all(out: &mut Table, key: Key, fam: Vec<Partition>, wit: Vec<Wit>) {
    if fam.is_empty() {
        return;
    }
    let e = out.entry(key).or_default();
    e.fam.extend(fam);
    e.wit.extend(wit);
}

impl Dp<'_> {
    fn wit_del(&self, v: usize, w: &Wit) -> Wit {
        self.witness.then(|| Rc::new(WNode::Del(v, w.clone())))
    }

    fn wit_join(&self, a: &Wit, b: &Wit) -> Wit {
        self.witness.then(|| Rc::new(WNode::Join(a.clone(), b.clone())))
    }

    fn intro_step(&self, t: usize, c: usize, v: usize, child: Table) -> Table {
        let pb = &self.bags[t];
        let cb = &self.bags[c];
        let vpos = pb.pos(v);
        let w = pb.verts.len();
        let mut out = Table::default();
        for (key, entry) in child {
            let xs = key.x.count_ones() as usize;
            if xs + 1 + key.i as usize <= self.k {
                let nk = Key {
                    x: insert_bit(key.x, vpos) | 1 << vpos,
                    lab: nib_insert(key.lab, vpos, 0),
                    i: key.i,
                    gh: key.gh.clone(),
                };
                add_all(&mut out, nk, entry.fam.clone(), entry.wit.clone());
            }
            if self.d == 0 {
                continue;
            }
            let cshape = cb.shape(key.x);
            let px = insert_bit(key.x, vpos);
            let pshape = pb.shape(px);
            let nbr = pb.adj[vpos] & !px;
            let cmapped: Vec<u32> = cshape.comps.iter().map(|&m| insert_bit(m, vpos)).collect();
            let touched: u64 = cmapped
                .iter()
                .enumerate()
                .filter(|(_, &m)| m & nbr != 0)
                .fold(0u64, |acc, (j, _)| acc | 1 << j);
            let pc: Vec<u64> =
                cmapped.iter().map(|&m| 1u64 << pshape.comp_of[m.trailing_zeros() as usize]).collect();
            let pv = 1u64 << pshape.comp_of[vpos];
            let mut fam = Vec::new();
            let mut wit = Vec::new();
            'outer: for (y, wy) in entry.fam.iter().zip(&entry.wit) {
                let mut parts = Vec::with_capacity(y.num_parts() + 1);
                let mut merged = pv;
                for &part in y.masks() {
                    let tp = part & touched;
                    if tp.count_ones() > 1 {
                        continue 'outer;
                    }
                    let mapped = ones(part).fold(0u64, |m, j| m | pc[j]);
                    if tp != 0 {
                        merged |= mapped;
                    } else {
                        parts.push(mapped);
                    }
                }
                parts.push(merged);
                fam.push(Partition::from_masks_unchecked(pshape.comps.len(), parts));
                wit.push(wy.clone());
            }
            if fam.is_empty() {
                continue;
            }
            let cblocks: Vec<u32> = cshape.blocks.iter().map(|&b| insert_bit(b, vpos)).collect();
            let mut labels = unpack(nib_insert(key.lab, vpos, 0), w);
            for l in 1..=self.d as u8 {
                labels[vpos] = l;
                let lab = nib_insert(key.lab, vpos, l);
                for gh in intro_core(&self.ud, &pb.adj, &labels, vpos, &pshape.blocks, &cblocks, &key.gh) {
                    let nk = Key { x: px, lab, i: key.i, gh: gh.into_boxed_slice() };
                    add_all(&mut out, nk, fam.clone(), wit.clone());
                }
            }
        }
        out
    }

    fn forget_step(&self, t: usize, c: usize, v: usize, child: Table) -> Table {
        let pb = &self.bags[t];
        let cb = &self.bags[c];
        let vpos = cb.pos(v);
        let w = cb.verts.len();
        let mut out = Table::default();
        for (key, entry) in child {
            if key.x >> vpos & 1 == 1 {
                let nk = Key {
                    x: remove_bit(key.x, vpos),
                    lab: nib_remove(key.lab, vpos),
                    i: key.i + 1,
                    gh: key.gh,
                };
                let wit = entry.wit.iter().map(|w| self.wit_del(v, w)).collect();
                add_all(&mut out, nk, entry.fam, wit);
                continue;
            }
            let cshape = cb.shape(key.x);
            let px = remove_bit(key.x, vpos);
            let pshape = pb.shape(px);
            let labels = unpack(key.lab, w);
            let pblocks: Vec<u32> = pshape.blocks.iter().map(|&b| insert_bit(b, vpos)).collect();
            let gh = forget_core(&self.ud, &labels, vpos, &cshape.blocks, &key.gh, &pblocks);
            // Child component index to a mask of parent components.
            let map: Vec<u64> = cshape
                .comps
                .iter()
                .map(|&cm| {
                    ones(remove_bit(cm & !(1 << vpos), vpos) as u64)
                        .fold(0u64, |m, p| m | 1 << pshape.comp_of[p])
                })
                .collect();
            let m = pshape.comps.len();
            let fam = entry
                .fam
                .iter()
                .map(|y| {
                    let parts: Vec<u64> = y
                        .masks()
                        .iter()
                        .map(|&part| ones(part).fold(0u64, |acc, j| acc | map[j]))
                        .filter(|&p| p != 0)
                        .collect();
                    Partition::from_masks_unchecked(m, parts)
                })
                .collect();
            let nk = Key { x: px, lab: nib_remove(key.lab, vpos), i: key.i, gh: gh.into_boxed_slice() };
            add_all(&mut out, nk, fam, entry.wit);
        }
        out
    }

    fn join_step(&self, t: usize, left: Table, right: Table) -> Table {
        let bag = &self.bags[t];
        let mut groups: FxHashMap<(u32, u64, Vec<u16>), Vec<usize>> = FxHashMap::default();
        for (idx, key) in right.keys().enumerate() {
            let g: Vec<u16> = key.gh.iter().map(|x| x.0).collect();
            groups.entry((key.x, key.lab, g)).or_default().push(idx);
        }
        let mut out = Table::default();
        for (k1, e1) in &left {
            let g: Vec<u16> = k1.gh.iter().map(|x| x.0).collect();
            let Some(list) = groups.get(&(k1.x, k1.lab, g)) else { continue };
            let m = bag.shape(k1.x).comps.len();
            for &idx in list {
                let (k2, e2) = right.get_index(idx).unwrap();
                let i = k1.i as usize + k2.i as usize;
                if k1.x.count_ones() as usize + i > self.k {
                    continue;
                }
                let Some(gh) = join_core(&self.ud, &k1.gh, &k2.gh) else { continue };
                let nk = Key { x: k1.x, lab: k1.lab, i: i as u8, gh: gh.into_boxed_slice() };
                let mut fam = Vec::new();
                let mut wit = Vec::new();
                for (a, wa) in e1.fam.iter().zip(&e1.wit) {
                    for (b, wb) in e2.fam.iter().zip(&e2.wit) {
                        if inc_is_forest(m, &[a, b]) {
                            fam.push(uplus(a, b));
                            wit.push(self.wit_join(wa, wb));
                        }
                    }
                }
                add_all(&mut out, nk, fam, wit);
            }
        }
        out
    }

    fn reduce(&self, t: usize, table: &mut Table, stats: &mut SolveStats) {
        let bag = &self.bags[t];
        for (key, entry) in table.iter_mut() {
            let m = bag.shape(key.x).comps.len();
            let keep = rep_partition_indices(m, &entry.fam);
            if keep.len() < entry.fam.len() {
                entry.fam = keep.iter().map(|&i| entry.fam[i].clone()).collect();
                entry.wit = keep.iter().map(|&i| entry.wit[i].clone()).collect();
            }
            stats.retained += entry.fam.len();
            stats.max_family = stats.max_family.max(entry.fam.len());
        }
        stats.states += table.len();
    }
}

/// Decides the block problem on `inst` with the given decomposition.
///
/// With `witness`, a deletion set is reconstructed from the retained partial
/// solutions.
pub fn solve_block(inst: &Instance, ntd: &NiceTreeDecomposition, witness: bool) -> Result<Solution> {
    let g = &inst.graph;
    if ntd.nodes.iter().any(|n| n.bag.len() > MAX_BAG) {
        return Err(Error::TooLarge(format!("bags above {MAX_BAG} vertices")));
    }
    if inst.d > crate::labeling::MAX_LABEL {
        return Err(Error::CapExceeded { d: inst.d, cap: crate::labeling::MAX_LABEL });
    }
    let ud = Ud::new(enumerate_ud(inst.d, inst.family)?);
    let k = inst.k.min(g.n()).min(u8::MAX as usize);
    let dp = Dp {
        d: inst.d,
        k,
        ud,
        bags: ntd.nodes.iter().map(|n| BagCtx::new(g, &n.bag)).collect(),
        witness,
        _g: g,
    };
    let mut stats = SolveStats { nodes: ntd.nodes.len(), ..Default::default() };
    let mut tables: Vec<Option<Table>> = (0..ntd.nodes.len()).map(|_| None).collect();
    for (t, node) in ntd.nodes.iter().enumerate() {
        let mut table = match node.kind {
            NiceKind::Leaf => {
                let mut tb = Table::default();
                let key = Key { x: 0, lab: 0, i: 0, gh: Box::new([]) };
                tb.entry(key).or_default().push(Partition::whole(0), None);
                tb
            }
            NiceKind::Introduce(v) => {
                let c = node.children[0];
                dp.intro_step(t, c, v, tables[c].take().expect("child table"))
            }
            NiceKind::Forget(v) => {
                let c = node.children[0];
                dp.forget_step(t, c, v, tables[c].take().expect("child table"))
            }
            NiceKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                let ta = tables[a].take().expect("child table");
                let tb = tables[b].take().expect("child table");
                dp.join_step(t, ta, tb)
            }
        };
        dp.reduce(t, &mut table, &mut stats);
        tables[t] = Some(table);
    }
    let root = tables[ntd.root()].take().unwrap_or_default();
    let best = root.iter().filter(|(_, e)| !e.fam.is_empty()).min_by_key(|(k, _)| k.i);
    let yes = best.is_some();
    let witness = match (witness, best) {
        (true, Some((_, e))) => Some(collect_witness(&e.wit[0])),
        _ => None,
    };
    Ok(Solution { yes, witness, stats })
}
