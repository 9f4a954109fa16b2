//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p pblock-cli --test acceptance -- --nocapture`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::{is_labeled_pblock, nice, partial_ktree, random_base, random_side};
use pblock::characteristics::{compute_characteristic, respects_check};
use pblock::decomposition::validate_td;
use pblock::gadgets::{gen_fixed_d, gen_unbounded_d, ColoredGraph, GridISInstance, UnboundedVariant};
use pblock::graph::{aux_partition, biconnected_blocks, connected_components, is_chordal, sum_boundaried};
use pblock::labeling::{enumerate_ud, s_blocks};
use pblock::oracle::{brute_force_fvs, brute_force_solve, verify_solution};
use pblock::partitions::{inc_is_forest, one_coarsenings, Partition};
use pblock::repset::{reduce_connected, rep_partitions, verify_representative};
use pblock::{Graph, Instance, Mode, PFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn oracle_equivalence(mode: Mode, seed: u64) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fams = [PFamily::K1K2, PFamily::Cliques, PFamily::Chordal];
    let cases = 300;
    let mut yes = 0;
    for case in 0..cases {
        let (n, w) = (rng.gen_range(3..=12), rng.gen_range(1..=4));
        let g = partial_ktree(&mut rng, n, w, 0.7);
        let (d, k) = (rng.gen_range(2..=4), rng.gen_range(0..=4));
        let fam = fams[rng.gen_range(0..fams.len())];
        let inst = Instance::new(g.clone(), d, k, fam, mode);
        let want = brute_force_solve(&inst).map_err(|e| e.to_string())?.is_some();
        let got = pblock::solve(&inst, &nice(&g), false).map_err(|e| e.to_string())?;
        if got.yes != want {
            return Err(format!("case {case}: {fam} d={d} k={k} edges={:?}", g.edges()));
        }
        yes += want as usize;
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 600.0 {
        return Err(format!("took {secs:.1}s"));
    }
    Ok(format!("{cases}/{cases} agree, {yes} YES, {secs:.1}s"))
}

fn fvs_cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..100 {
        let (n, w) = (rng.gen_range(3..=12), rng.gen_range(1..=4));
        let g = partial_ktree(&mut rng, n, w, 0.8);
        let k = rng.gen_range(0..=4);
        let want = brute_force_fvs(&g, k).map_err(|e| e.to_string())?.is_some();
        let inst = Instance::new(g.clone(), 3, k, PFamily::K1K2, Mode::Block);
        if pblock::solve(&inst, &nice(&g), false).map_err(|e| e.to_string())?.yes != want {
            return Err(format!("case {case}: k={k} edges={:?}", g.edges()));
        }
    }
    Ok("100/100 agree".into())
}

fn representative_sets() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut largest = 0;
    for case in 0..200 {
        let m = rng.gen_range(1..=6);
        let fam: Vec<Partition> = (0..rng.gen_range(1..=80))
            .map(|_| Partition::from_assignment(&(0..m).map(|_| rng.gen_range(0..m)).collect::<Vec<_>>()))
            .collect();
        let sub = rep_partitions(m, &fam);
        largest = largest.max(sub.len());
        if sub.len() > m << (m - 1) {
            return Err(format!("case {case}: {} kept for m={m}", sub.len()));
        }
        if !verify_representative(m, &fam, &sub).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: not representative"));
        }
        let coarse: BTreeSet<Partition> = fam.iter().flat_map(one_coarsenings).collect();
        for i in 1..=m {
            let bucket: Vec<Partition> = coarse.iter().filter(|p| p.num_parts() == i).cloned().collect();
            let kept = reduce_connected(m, &bucket, m + 1 - i).map_err(|e| e.to_string())?;
            if kept.len() > 1 << (m - 1) {
                return Err(format!("case {case}: bucket {i} keeps {}", kept.len()));
            }
        }
    }
    Ok(format!("200 families, largest output {largest}"))
}

fn chordal_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut done, mut chordal) = (0, 0);
    while done < 500 {
        let s = rng.gen_range(2..=5);
        let (na, nb) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let n = s + na + nb;
        let base = random_base(&mut rng, s, 0.4);
        let a = random_side(&mut rng, n, s, s..s + na, &base, 0.5);
        let b = random_side(&mut rng, n, s, s + na..n, &base, 0.5);
        if !is_chordal(&a.graph.induced(&a.vertices)) || !is_chordal(&b.graph.induced(&b.vertices)) {
            continue;
        }
        let sum = sum_boundaried(&a, &b).map_err(|e| e.to_string())?;
        if !s_blocks(&sum).iter().all(|x| is_chordal(&sum.graph.induced(x))) {
            continue;
        }
        done += 1;
        let m = a.boundary_components().len();
        let forest = inc_is_forest(m, &[&aux_partition(&a), &aux_partition(&b)]);
        let c = is_chordal(&sum.graph);
        chordal += c as usize;
        if c != forest {
            return Err(format!("a={:?} b={:?}", a.graph.edges(), b.graph.edges()));
        }
    }
    Ok(format!("500 pairs, {chordal} chordal sums"))
}

fn characteristic_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fams = [PFamily::K1K2, PFamily::Cliques, PFamily::Chordal];
    let uds: Vec<Vec<_>> = (0..=4).map(|d| fams.iter().map(|&f| enumerate_ud(d, f).unwrap()).collect()).collect();
    let (mut done, mut attempts) = (0, 0);
    while done < 500 {
        attempts += 1;
        let d = rng.gen_range(2..=4);
        let fi = rng.gen_range(0..fams.len());
        let fam = fams[fi];
        let s = rng.gen_range(1..=4);
        let (n1, n2, nh) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=3));
        let n = s + n1 + n2 + nh;
        let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=d as u8)).collect();
        let base = random_base(&mut rng, s, 0.6);
        let g1 = random_side(&mut rng, n, s, s..s + n1, &base, 0.5);
        let g2 = random_side(&mut rng, n, s, s + n1..s + n1 + n2, &base, 0.5);
        let h = random_side(&mut rng, n, s, s + n1 + n2..n, &base, 0.5);
        if ![&g1, &g2, &h].iter().all(|x| is_labeled_pblock(x, &labels, d, fam)) {
            continue;
        }
        let ud = &uds[d][fi];
        let (Ok(c1), Ok(c2)) = (compute_characteristic(&g1, &labels, ud), compute_characteristic(&g2, &labels, ud))
        else {
            continue;
        };
        if !inc_is_forest(g2.boundary_components().len(), &[&aux_partition(&g2), &aux_partition(&h)]) {
            continue;
        }
        let s1 = sum_boundaried(&g1, &h).unwrap();
        if !is_labeled_pblock(&s1, &labels, d, fam) {
            continue;
        }
        let s2 = sum_boundaried(&g2, &h).unwrap();
        for c in c1.iter().filter(|c| c2.contains(c) && respects_check(&s1, &labels, c)) {
            done += 1;
            if !(is_labeled_pblock(&s2, &labels, d, fam) && respects_check(&s2, &labels, c)) {
                return Err(format!("counterexample after {done} triples: {c:?}"));
            }
        }
    }
    Ok(format!("{done} triples, 0 counterexamples ({attempts} draws)"))
}

fn is_cycle_of(g: &Graph, d: usize) -> bool {
    g.n() == d && g.m() == d && (0..d).all(|v| g.degree(v) == 2) && connected_components(g).len() == 1
}

fn fixed_d_generator() -> Outcome {
    let (k, d) = (2, 4);
    let grid = GridISInstance::new(k, &[]).map_err(|e| e.to_string())?;
    let m = grid.edges.len();
    let s = (3 * d - 2) * k * (k - 1) * m;
    let bag_bound = (3 * d + 4) * k + 6 * d - 4;
    let mut notes = Vec::new();
    for block in [false, true] {
        let gen = gen_fixed_d(&grid, d, block, Some(&[1, 0])).map_err(|e| e.to_string())?;
        let inst = &gen.instance;
        let planted = gen.planted.as_ref().unwrap();
        if inst.graph.n() != ((3 * d - 2) * k * k + 2 * k) * m || planted.len() != s || inst.k != s {
            return Err(format!("sizes n={} |S|={}", inst.graph.n(), planted.len()));
        }
        if !verify_solution(&inst.graph, planted, d, PFamily::Cycles, inst.mode) {
            return Err("planted set rejected".into());
        }
        let alive: Vec<usize> = (0..inst.graph.n()).filter(|v| planted.binary_search(v).is_err()).collect();
        let rest = inst.graph.induced(&alive);
        let shapes_ok = if block {
            biconnected_blocks(&rest).blocks.iter().all(|b| b.len() == 2 || is_cycle_of(&rest.induced(b), d))
        } else {
            connected_components(&rest).iter().all(|c| is_cycle_of(&rest.induced(c), d))
        };
        if !shapes_ok {
            return Err(format!("unexpected shapes (block variant: {block})"));
        }
        validate_td(&inst.graph, &gen.td).map_err(|e| e.to_string())?;
        if gen.td.max_bag() > bag_bound {
            return Err(format!("bag of {} exceeds {bag_bound}", gen.td.max_bag()));
        }
        notes.push(format!("{} max bag {}", inst.mode, gen.td.max_bag()));
    }
    Ok(format!("n=176 s={s} bag bound {bag_bound}; {}", notes.join(", ")))
}

fn unbounded_d_generator() -> Outcome {
    let (k, t) = (3, 2);
    let gamma = [2, 1, 2];
    let mut g = Graph::new(k * t);
    for i in 0..k {
        for j in i + 1..k {
            g.add_edge(i * t + gamma[i] - 1, j * t + gamma[j] - 1);
            g.add_edge(i * t + (gamma[i] % t), j * t + (gamma[j] % t));
        }
    }
    let cg = ColoredGraph::new(g, k, t).map_err(|e| e.to_string())?;
    let gen = gen_unbounded_d(&cg, &UnboundedVariant::Clique, Some(&gamma)).map_err(|e| e.to_string())?;
    let inst = &gen.instance;
    let d = 3 * t * t + 3 * t + 3;
    let pairs = (k + 1) * k / 2;
    let n_want = (2 * d + 3) * (pairs - 2);
    let kp = 3 * pairs - 6;
    let planted = gen.planted.as_ref().unwrap();
    if inst.graph.n() != n_want || inst.d != d || planted.len() != kp || inst.k != kp {
        return Err(format!("n={} d={} |S|={}", inst.graph.n(), inst.d, planted.len()));
    }
    let alive: Vec<usize> = (0..inst.graph.n()).filter(|v| planted.binary_search(v).is_err()).collect();
    let rest = inst.graph.induced(&alive);
    let comps = connected_components(&rest);
    if !comps.iter().all(|c| c.len() == d && is_chordal(&rest.induced(c))) {
        return Err("a component is not a chordal graph on d vertices".into());
    }
    if !verify_solution(&inst.graph, planted, d, PFamily::Chordal, Mode::Component) {
        return Err("planted set rejected".into());
    }
    validate_td(&inst.graph, &gen.td).map_err(|e| e.to_string())?;
    let bound = 54 * k - 69;
    if gen.td.width() > bound {
        return Err(format!("width {} exceeds {bound}", gen.td.width()));
    }
    Ok(format!("n={n_want} d={d} |S|={kp}, {} components, width {} <= {bound}", comps.len(), gen.td.width()))
}

fn run_cli(args: &[&str], dir: &Path) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_pblock")).args(args).current_dir(dir).output().expect("binary runs");
    let mut bytes = out.status.code().unwrap_or(-1).to_string().into_bytes();
    bytes.extend(out.stdout);
    bytes.extend(out.stderr);
    bytes
}

fn cli_determinism() -> Outcome {
    let root = std::env::temp_dir().join(format!("pblock-accept-{}", std::process::id()));
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|r| {
            let dir = root.join(r.to_string());
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(dir.join("c5.gr"), "p tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
            let cmds: [&[&str]; 9] = [
                &["solve", "--mode", "block", "--family", "k1k2", "-d", "3", "-k", "1", "--graph", "c5.gr", "--json", "--witness"],
                &["solve", "--engine", "oracle", "--mode", "component", "--family", "chordal", "-d", "2", "-k", "2", "--graph", "c5.gr", "--json", "--witness"],
                &["enum-ud", "-d", "4", "--family", "chordal"],
                &["td", "nice", "--graph", "c5.gr"],
                &["gen", "clique", "-k", "3", "-t", "2", "--planted", "--seed", "9", "--out", "cl"],
                &["gen", "perm-is", "-k", "2", "-d", "4", "--variant", "block", "--planted", "--out", "pi"],
                &["gen", "subgraph-iso", "-k", "3", "--planted", "--seed", "2", "--out", "si"],
                &["td", "heuristic", "--graph", "cl.gr"],
                &["selftest", "--cases", "10"],
            ];
            let mut all = Vec::new();
            for c in cmds {
                all.extend(run_cli(c, &dir));
            }
            for f in ["cl.gr", "cl.td", "cl.json", "pi.gr", "pi.td", "pi.json", "si.gr", "si.td", "si.json"] {
                all.extend(std::fs::read(dir.join(f)).unwrap());
            }
            all
        })
        .collect();
    let _ = std::fs::remove_dir_all(&root);
    if runs[0] != runs[1] {
        return Err("outputs differ between runs".into());
    }
    Ok(format!("9 invocations and 9 files byte-identical ({} bytes)", runs[0].len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence, block", || oracle_equivalence(Mode::Block, 1)),
        ("oracle equivalence, component", || oracle_equivalence(Mode::Component, 2)),
        ("feedback vertex set cross-check", fvs_cross_check),
        ("representative sets", representative_sets),
        ("chordal-sum equivalence", chordal_sums),
        ("characteristic equivalence", characteristic_equivalence),
        ("fixed-d generator", fixed_d_generator),
        ("unbounded-d generator", unbounded_d_generator),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
