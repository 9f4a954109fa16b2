//! Representative sets of partition families.
//!
//! A subfamily `A'` represents `A` if for every partition `Y` such that some
//! member of `A` has an acyclic incidence graph with `Y`, some member of `A'`
//! does too. The reduction coarsens, buckets by part count, and keeps a GF(2)
//! row basis of the cut matrix in each bucket.

use crate::partitions::{all_partitions, inc_is_forest, one_coarsenings, uplus, Partition};
use crate::{Error, Result};
use rustc_hash::FxHashSet;

/// Row of the cut matrix: bit `c >> 1` is set for every cut `c` (a subset of
/// the ground set containing element 0) that no part of `p` crosses.
pub fn cut_row(p: &Partition) -> Vec<u64> {
    let m = p.ground_size();
    let cols = 1usize << m.saturating_sub(1);
    let mut row = vec![0u64; cols.div_ceil(64)];
    if m == 0 {
        return row;
    }
    let parts = p.masks();
    // parts[0] holds element 0, so it is always inside the cut.
    let rest = &parts[1..];
    for sel in 0u64..(1u64 << rest.len()) {
        let mut cut = parts[0];
        for (i, &q) in rest.iter().enumerate() {
            if sel >> i & 1 == 1 {
                cut |= q;
            }
        }
        let col = (cut >> 1) as usize;
        row[col / 64] |= 1 << (col % 64);
    }
    row
}

/// GF(2) dot product of two rows.
pub fn dot(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2 == 1
}

/// Incremental row-echelon basis keeping the first independent rows.
struct Basis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Basis {
    fn new() -> Self {
        Basis { rows: Vec::new() }
    }

    /// Inserts `r` if it is independent of the current rows.
    fn insert(&mut self, mut r: Vec<u64>) -> bool {
        for (pivot, b) in &self.rows {
            if r[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        match r.iter().position(|&w| w != 0) {
            Some(w) => {
                let pivot = w * 64 + r[w].trailing_zeros() as usize;
                self.rows.push((pivot, r));
                true
            }
            None => false,
        }
    }
}

fn check_bucket(m: usize, bucket: &[Partition], j: usize) -> Result<usize> {
    if j == 0 || j > m {
        return Err(Error::InvalidInput(format!("j = {j} out of range for m = {m}")));
    }
    let i = m + 1 - j;
    for p in bucket {
        if p.ground_size() != m {
            return Err(Error::InvalidInput("ground set size mismatch".into()));
        }
        if p.num_parts() != i {
            return Err(Error::BadBucket { expected: i, found: p.num_parts() });
        }
    }
    Ok(i)
}

fn reduce_indices(bucket: &[Partition]) -> Vec<usize> {
    if bucket.len() <= 1 {
        return (0..bucket.len()).collect();
    }
    let mut basis = Basis::new();
    let mut kept = Vec::new();
    for (idx, p) in bucket.iter().enumerate() {
        if basis.insert(cut_row(p)) {
            kept.push(idx);
        }
    }
    kept
}

/// Reduces a bucket of `i`-part partitions against all `j`-part partitions,
/// where `i + j = m + 1`. Keeps at most `2^(m-1)` members such that every
/// `Y` with `j` parts that forms a connected incidence graph with a member
/// still does so with a kept member.
pub fn reduce_connected(m: usize, bucket: &[Partition], j: usize) -> Result<Vec<Partition>> {
    check_bucket(m, bucket, j)?;
    Ok(reduce_indices(bucket).into_iter().map(|i| bucket[i].clone()).collect())
}

/// Same contract as [`reduce_connected`], computed greedily against the
/// explicit list of `j`-part partitions. Small ground sets only.
pub fn reduce_connected_exhaustive(
    m: usize,
    bucket: &[Partition],
    j: usize,
) -> Result<Vec<Partition>> {
    check_bucket(m, bucket, j)?;
    if m > 7 {
        return Err(Error::TooLarge(format!("exhaustive reduction with m = {m}")));
    }
    let ys: Vec<Partition> = all_partitions(m).into_iter().filter(|y| y.num_parts() == j).collect();
    let mut covered = vec![false; ys.len()];
    let mut out = Vec::new();
    for p in bucket {
        let mut useful = false;
        for (yi, y) in ys.iter().enumerate() {
            if !covered[yi] && uplus(p, y).num_parts() == 1 {
                covered[yi] = true;
                useful = true;
            }
        }
        if useful {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Indices of the first occurrence of each distinct member.
fn dedup(family: &[Partition]) -> Vec<usize> {
    let mut seen = FxHashSet::default();
    (0..family.len()).filter(|&i| seen.insert(&family[i])).collect()
}

fn rep_with(
    m: usize,
    family: &[Partition],
    reduce: impl Fn(&[Partition], usize) -> Vec<usize>,
) -> Vec<usize> {
    let uniq = dedup(family);
    if uniq.len() <= 1 || m == 0 {
        return uniq.into_iter().take(1).collect();
    }
    // buckets[i] holds the i-part coarsenings with the index of their origin.
    let mut buckets: Vec<(Vec<Partition>, Vec<usize>)> = vec![(Vec::new(), Vec::new()); m + 1];
    let mut seen = FxHashSet::default();
    for (idx, &x) in uniq.iter().enumerate() {
        for c in one_coarsenings(&family[x]) {
            // A coarsening reachable from an earlier member adds no new row.
            if seen.insert(c.clone()) {
                let b = &mut buckets[c.num_parts()];
                b.0.push(c);
                b.1.push(idx);
            }
        }
    }
    let mut keep = vec![false; uniq.len()];
    for (i, (parts, origin)) in buckets.iter().enumerate().skip(1) {
        if parts.is_empty() {
            continue;
        }
        for k in reduce(parts, m + 1 - i) {
            keep[origin[k]] = true;
        }
    }
    uniq.into_iter().zip(keep).filter(|(_, k)| *k).map(|(i, _)| i).collect()
}

/// Indices into `family` of a representative subfamily, in increasing order.
pub fn rep_partition_indices(m: usize, family: &[Partition]) -> Vec<usize> {
    rep_with(m, family, |bucket, _| reduce_indices(bucket))
}

/// A representative subfamily of size at most `m * 2^(m-1)`.
///
/// The output is a subset of the deduplicated input in first-appearance
/// order.
pub fn rep_partitions(m: usize, family: &[Partition]) -> Vec<Partition> {
    rep_partition_indices(m, family).into_iter().map(|i| family[i].clone()).collect()
}

/// [`rep_partitions`] with the exhaustive reduction engine. Small ground sets
/// only.
pub fn rep_partitions_exhaustive(m: usize, family: &[Partition]) -> Result<Vec<Partition>> {
    if m > 7 {
        return Err(Error::TooLarge(format!("exhaustive reduction with m = {m}")));
    }
    let idx = rep_with(m, family, |bucket, j| {
        let kept = reduce_connected_exhaustive(m, bucket, j).expect("bucket is well formed");
        let mut out = Vec::new();
        let mut it = kept.iter().peekable();
        for (i, p) in bucket.iter().enumerate() {
            if it.peek() == Some(&p) {
                out.push(i);
                it.next();
            }
        }
        out
    });
    Ok(idx.into_iter().map(|i| family[i].clone()).collect())
}

/// Exhaustively checks the representative property over all partitions of the
/// ground set.
pub fn verify_representative(m: usize, family: &[Partition], sub: &[Partition]) -> Result<bool> {
    if m > 7 {
        return Err(Error::TooLarge(format!("verification with m = {m}")));
    }
    for y in all_partitions(m) {
        let needed = family.iter().any(|x| inc_is_forest(m, &[x, &y]));
        if needed && !sub.iter().any(|x| inc_is_forest(m, &[x, &y])) {
            return Ok(false);
        }
    }
    Ok(true)
}
