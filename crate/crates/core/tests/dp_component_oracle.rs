mod common;

use pblock::dp_component::solve_component;
use pblock::oracle::{brute_force_solve, verify_solution};
use pblock::{Instance, Mode, PFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn component_dp_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(std::env::var("SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7));
    let fams = [PFamily::K1K2, PFamily::Cliques, PFamily::Chordal];
    let mut bad = Vec::new();
    let cases: usize = std::env::var("CASES").ok().and_then(|s| s.parse().ok()).unwrap_or(150);
    let mut yes = 0;
    for case in 0..cases {
        let n = rng.gen_range(3..=12);
        let w = rng.gen_range(1..=4);
        let g = common::partial_ktree(&mut rng, n, w, std::env::var("P").ok().and_then(|s| s.parse().ok()).unwrap_or(0.7));
        let d = rng.gen_range(2..=std::env::var("DMAX").ok().and_then(|s| s.parse().ok()).unwrap_or(4));
        let k = rng.gen_range(0..=4);
        let fam = fams[rng.gen_range(0..3)];
        let inst = Instance::new(g.clone(), d, k, fam, Mode::Component);
        let want = brute_force_solve(&inst).unwrap().is_some();
        let got = solve_component(&inst, &common::nice(&g), true).unwrap();
        yes += want as usize;
        if got.yes != want {
            bad.push(format!("case {case}: n={n} d={d} k={k} {fam} edges={:?} dp={} oracle={want}", g.edges(), got.yes));
        } else if let Some(s) = &got.witness {
            assert!(s.len() <= k && verify_solution(&g, s, d, fam, Mode::Component), "case {case}: bad witness {s:?}");
        }
    }
    eprintln!("{yes}/{cases} yes");
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
