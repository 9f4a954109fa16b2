//! Partitions of a small ground set `{0, .., m-1}` and their incidence graphs.
//!
//! A partition is stored as a list of bit masks, one per part, sorted by the
//! smallest element of each part. Two partitions of the same ground set are
//! equal iff their representations are equal.

use crate::bits::ones;
use crate::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// A partition of `{0, .., m-1}` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    m: usize,
    parts: Vec<u64>,
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{:?}", ones(*p).collect::<Vec<_>>())?;
        }
        write!(f, "}}")
    }
}

fn full(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

impl Partition {
    /// Builds a partition from part masks, checking that they form a disjoint
    /// cover of the ground set.
    pub fn from_masks(m: usize, mut parts: Vec<u64>) -> Result<Self> {
        if m > MAX_GROUND {
            return Err(Error::TooLarge(format!("ground set of size {m}")));
        }
        let mut seen = 0u64;
        for &p in &parts {
            if p == 0 || p & !full(m) != 0 || p & seen != 0 {
                return Err(Error::InvalidInput("parts are not a disjoint cover".into()));
            }
            seen |= p;
        }
        if seen != full(m) {
            return Err(Error::InvalidInput("parts do not cover the ground set".into()));
        }
        parts.sort_unstable_by_key(|p| p.trailing_zeros());
        Ok(Partition { m, parts })
    }

    /// Builds a partition from lists of elements.
    pub fn from_parts(m: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(parts.len());
        for p in parts {
            let mut mask = 0u64;
            for &e in p {
                if e >= m || mask >> e & 1 == 1 {
                    return Err(Error::InvalidInput(format!("bad element {e}")));
                }
                mask |= 1 << e;
            }
            masks.push(mask);
        }
        Self::from_masks(m, masks)
    }

    /// Builds a partition from a block index per element.
    pub fn from_assignment(assign: &[usize]) -> Self {
        let m = assign.len();
        let k = assign.iter().map(|&a| a + 1).max().unwrap_or(0);
        let mut masks = vec![0u64; k];
        for (e, &a) in assign.iter().enumerate() {
            masks[a] |= 1 << e;
        }
        masks.retain(|&p| p != 0);
        masks.sort_unstable_by_key(|p| p.trailing_zeros());
        Partition { m, parts: masks }
    }

    /// Internal constructor for masks already known to be a disjoint cover.
    pub(crate) fn from_masks_unchecked(m: usize, mut parts: Vec<u64>) -> Self {
        parts.sort_unstable_by_key(|p| p.trailing_zeros());
        Partition { m, parts }
    }

    /// The partition into singletons.
    pub fn singletons(m: usize) -> Self {
        Partition { m, parts: (0..m).map(|e| 1u64 << e).collect() }
    }

    /// The partition with a single part (no parts when `m = 0`).
    pub fn whole(m: usize) -> Self {
        if m == 0 {
            Partition { m, parts: vec![] }
        } else {
            Partition { m, parts: vec![full(m)] }
        }
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn masks(&self) -> &[u64] {
        &self.parts
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|&p| ones(p).collect()).collect()
    }

    /// Index of the part containing `e`.
    pub fn part_of(&self, e: usize) -> usize {
        self.parts.iter().position(|&p| p >> e & 1 == 1).expect("element out of range")
    }

    /// Block index per element.
    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.m];
        for (i, &p) in self.parts.iter().enumerate() {
            for e in ones(p) {
                a[e] = i;
            }
        }
        a
    }
}

/// Union-find over a small universe.
#[derive(Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

/// Whether the incidence graph between the ground set and all parts of all
/// given partitions is a forest.
///
/// Adding a part node closes a cycle exactly when two of its elements are
/// already connected, so the test is a single union-find sweep.
pub fn inc_is_forest(m: usize, xs: &[&Partition]) -> bool {
    let mut dsu = Dsu::new(m);
    for x in xs {
        debug_assert_eq!(x.m, m);
        for &p in &x.parts {
            let mut it = ones(p);
            let first = it.next().expect("empty part");
            for e in it {
                if !dsu.union(first, e) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether the incidence graph of the given partitions is connected.
pub fn inc_is_connected(m: usize, xs: &[&Partition]) -> bool {
    if m == 0 {
        return true;
    }
    let mut dsu = Dsu::new(m);
    let mut comps = m;
    for x in xs {
        for &p in &x.parts {
            let mut it = ones(p);
            let first = it.next().expect("empty part");
            for e in it {
                if dsu.union(first, e) {
                    comps -= 1;
                }
            }
        }
    }
    comps == 1
}

/// The finest common coarsening of `x` and `y`.
pub fn uplus(x: &Partition, y: &Partition) -> Partition {
    assert_eq!(x.m, y.m, "partitions over different ground sets");
    let m = x.m;
    let mut dsu = Dsu::new(m);
    for &p in x.parts.iter().chain(y.parts.iter()) {
        let mut it = ones(p);
        if let Some(first) = it.next() {
            for e in it {
                dsu.union(first, e);
            }
        }
    }
    let mut masks = vec![0u64; m];
    for e in 0..m {
        let r = dsu.find(e);
        masks[r] |= 1 << e;
    }
    masks.retain(|&p| p != 0);
    Partition::from_masks_unchecked(m, masks)
}

/// All partitions obtained from `x` by merging one sub-collection of its parts
/// into a single part. The partition itself comes first; the rest follow in
/// increasing order of the merged sub-collection's bit mask.
pub fn one_coarsenings(x: &Partition) -> Vec<Partition> {
    let p = x.parts.len();
    assert!(p < 31, "too many parts for coarsening enumeration");
    let mut out = vec![x.clone()];
    for sel in 1u32..(1u32 << p) {
        if sel.count_ones() < 2 {
            continue;
        }
        let mut merged = 0u64;
        let mut rest = Vec::with_capacity(p);
        for (i, &part) in x.parts.iter().enumerate() {
            if sel >> i & 1 == 1 {
                merged |= part;
            } else {
                rest.push(part);
            }
        }
        rest.push(merged);
        out.push(Partition::from_masks_unchecked(x.m, rest));
    }
    out
}

/// All partitions of `{0, .., m-1}` in restricted-growth order.
pub fn all_partitions(m: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; m];
    fn rec(i: usize, max: usize, assign: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == assign.len() {
            out.push(Partition::from_assignment(assign));
            return;
        }
        for b in 0..=max {
            assign[i] = b;
            rec(i + 1, if b == max { max + 1 } else { max }, assign, out);
        }
    }
    if m == 0 {
        out.push(Partition::whole(0));
    } else {
        rec(0, 0, &mut assign, &mut out);
    }
    out
}
