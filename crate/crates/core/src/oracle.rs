//! Brute-force solvers and a solution checker, used as ground truth in tests.

use crate::graph::{biconnected_blocks, connected_components, Graph};
use crate::labeling::PFamily;
use crate::{Error, Instance, Mode, Result};

/// Largest number of subsets the brute force will enumerate.
pub const SUBSET_BUDGET: u128 = 50_000_000;

/// Whether deleting `s` leaves every block (or component) with at most `d`
/// vertices and inside the family.
pub fn verify_solution(g: &Graph, s: &[usize], d: usize, fam: PFamily, mode: Mode) -> bool {
    let mut keep = vec![true; g.n()];
    for &v in s {
        if v < g.n() {
            keep[v] = false;
        }
    }
    let alive: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    let h = g.induced(&alive);
    let parts = match mode {
        Mode::Block => biconnected_blocks(&h).blocks,
        Mode::Component => connected_components(&h),
    };
    parts.iter().all(|p| {
        if p.len() > d {
            return false;
        }
        let sub = h.induced(p);
        match mode {
            Mode::Block => fam.accepts_block(&sub),
            Mode::Component => fam.accepts_component(&sub),
        }
    })
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k.min(n)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn check_budget(n: usize, k: usize) -> Result<()> {
    let total: u128 = (0..=k.min(n)).map(|i| binom(n, i)).sum();
    if n > 24 && total > SUBSET_BUDGET {
        return Err(Error::TooLarge(format!("{total} subsets for n = {n}, k = {k}")));
    }
    Ok(())
}

/// Visits the `r`-subsets of `0..n` in lexicographic order until `f` returns
/// true.
fn find_subset(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if r > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if f(&idx) {
            return Some(idx);
        }
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A smallest deletion set of size at most `k`, if one exists. Ties go to the
/// lexicographically first set.
pub fn brute_force_witness(inst: &Instance) -> Result<Option<Vec<usize>>> {
    let n = inst.graph.n();
    check_budget(n, inst.k)?;
    for r in 0..=inst.k.min(n) {
        let found = find_subset(n, r, |s| {
            verify_solution(&inst.graph, s, inst.d, inst.family, inst.mode)
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Size of a smallest deletion set, or `None` when it exceeds `k`.
pub fn brute_force_solve(inst: &Instance) -> Result<Option<usize>> {
    Ok(brute_force_witness(inst)?.map(|s| s.len()))
}

/// Size of a smallest feedback vertex set, searched up to `k`.
///
/// Independent of the family machinery: a set works when the rest is a
/// forest.
pub fn brute_force_fvs(g: &Graph, k: usize) -> Result<Option<usize>> {
    let n = g.n();
    check_budget(n, k)?;
    for r in 0..=k.min(n) {
        let found = find_subset(n, r, |s| {
            let alive: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
            g.induced(&alive).is_forest()
        });
        if found.is_some() {
            return Ok(Some(r));
        }
    }
    Ok(None)
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

    #[test]
    fn verify_examples() {
        let c5 = cycle(5);
        assert!(verify_solution(&c5, &[0], 3, PFamily::K1K2, Mode::Block));
        for f in [PFamily::K1K2, PFamily::Cliques, PFamily::Chordal] {
            assert!(!verify_solution(&c5, &[], 3, f, Mode::Block));
        }
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        find_subset(4, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        assert_eq!(find_subset(3, 0, |_| true), Some(vec![]));
        assert_eq!(find_subset(2, 3, |_| true), None);
    }

    #[test]
    fn brute_force_examples() {
        let inst = |g: Graph, d, k, f| Instance::new(g, d, k, f, Mode::Block);
        assert_eq!(brute_force_solve(&inst(cycle(4), 4, 0, PFamily::Cycles)).unwrap(), Some(0));
        assert_eq!(brute_force_solve(&inst(cycle(4), 3, 1, PFamily::Chordal)).unwrap(), Some(1));
        assert_eq!(brute_force_solve(&inst(complete(5), 2, 5, PFamily::K1K2)).unwrap(), Some(3));
        assert_eq!(brute_force_solve(&inst(complete(5), 2, 2, PFamily::K1K2)).unwrap(), None);
        assert_eq!(brute_force_fvs(&complete(5), 5).unwrap(), Some(3));
    }

    #[test]
    fn budget_guard() {
        let g = Graph::new(40);
        let inst = Instance::new(g, 1, 20, PFamily::K1K2, Mode::Block);
        assert!(matches!(brute_force_solve(&inst), Err(Error::TooLarge(_))));
    }
}
