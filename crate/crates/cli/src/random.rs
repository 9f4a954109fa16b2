//! Seeded random instances.

use pblock::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random subgraph of a random `w`-tree on `n` vertices; each edge of the
/// `w`-tree is kept with probability `p`.
pub fn partial_ktree(rng: &mut ChaCha8Rng, n: usize, w: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let first = order[..(w + 1).min(n)].to_vec();
    let mut edges = Vec::new();
    for i in 0..first.len() {
        for j in i + 1..first.len() {
            edges.push((first[i], first[j]));
        }
    }
    let mut cliques = vec![first];
    for &v in order.iter().skip(w + 1) {
        let mut sep = cliques[rng.gen_range(0..cliques.len())].clone();
        sep.remove(rng.gen_range(0..sep.len()));
        edges.extend(sep.iter().map(|&u| (u, v)));
        sep.push(v);
        cliques.push(sep);
    }
    let mut g = Graph::new(n);
    for (u, v) in edges {
        if rng.gen_bool(p) {
            g.add_edge(u, v);
        }
    }
    g
}
