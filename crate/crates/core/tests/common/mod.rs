#![allow(dead_code)]

use pblock::decomposition::{exact_td_small, to_nice, NiceTreeDecomposition};
use pblock::graph::{biconnected_blocks, BoundariedGraph};
use pblock::labeling::is_block_labeling;
use pblock::{Graph, PFamily};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random subgraph of a random `w`-tree on `n` vertices, keeping each edge
/// with probability `p`.
pub fn partial_ktree(rng: &mut ChaCha8Rng, n: usize, w: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut cliques: Vec<Vec<usize>> = vec![order[..(w + 1).min(n)].to_vec()];
    let mut edges = Vec::new();
    let first = &cliques[0];
    for i in 0..first.len() {
        for j in i + 1..first.len() {
            edges.push((first[i], first[j]));
        }
    }
    for &v in order.iter().skip(w + 1) {
        let base = cliques[rng.gen_range(0..cliques.len())].clone();
        let drop = rng.gen_range(0..base.len());
        let mut sep: Vec<usize> = base.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &u)| u).collect();
        for &u in &sep {
            edges.push((u, v));
        }
        sep.push(v);
        cliques.push(sep);
    }
    for (u, v) in edges {
        if rng.gen_bool(p) {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn nice(g: &Graph) -> NiceTreeDecomposition {
    let td = exact_td_small(g, 14).expect("small graph");
    to_nice(g, &td).expect("valid decomposition")
}

/// Whether the present part of `a` is a `d`-labeled graph whose blocks have at
/// most `d` vertices and lie in `fam`.
pub fn is_labeled_pblock(a: &BoundariedGraph, labels: &[u8], d: usize, fam: PFamily) -> bool {
    let sub = a.graph.induced(&a.vertices);
    let sub_labels: Vec<u8> = a.vertices.iter().map(|&v| labels[v]).collect();
    sub_labels.iter().all(|&l| (l as usize) <= d)
        && is_block_labeling(&sub, &sub_labels)
        && biconnected_blocks(&sub).blocks.iter().all(|b| b.len() <= d && fam.accepts_block(&sub.induced(b)))
}

/// A boundaried graph over the universe `0..n` with boundary `0..s`, outside
/// vertices `outside`, the boundary edges `base`, and random edges touching
/// `outside` kept with probability `p`.
pub fn random_side(
    rng: &mut ChaCha8Rng,
    n: usize,
    s: usize,
    outside: std::ops::Range<usize>,
    base: &[(usize, usize)],
    p: f64,
) -> BoundariedGraph {
    let mut g = Graph::new(n);
    for &(u, v) in base {
        g.add_edge(u, v);
    }
    let vs: Vec<usize> = (0..s).chain(outside.clone()).collect();
    for &u in &vs {
        for &v in &vs {
            if u < v && v >= outside.start && rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    let boundary: Vec<usize> = (0..s).collect();
    BoundariedGraph::with_vertices(g, &vs, &boundary).expect("ids in range")
}

/// Random boundary edges on `0..s`.
pub fn random_base(rng: &mut ChaCha8Rng, s: usize, p: f64) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for u in 0..s {
        for v in u + 1..s {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    e
}
