//! Quick seeded self-check of the solvers against the oracle and of the
//! partition identities.

use crate::random::partial_ktree;
use clap::Args;
use pblock::decomposition::{exact_td_small, to_nice};
use pblock::oracle::{brute_force_fvs, brute_force_solve};
use pblock::partitions::{all_partitions, inc_is_connected, inc_is_forest, Partition};
use pblock::repset::{rep_partitions, verify_representative};
use pblock::{Instance, Mode, PFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;

#[derive(Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random cases per suite.
    #[arg(long, default_value_t = 40)]
    cases: usize,
}

type Suite = fn(&mut ChaCha8Rng, usize) -> anyhow::Result<usize>;

pub fn run(a: SelftestArgs) -> anyhow::Result<ExitCode> {
    let suites: [(&str, Suite); 5] = [
        ("block-dp-vs-oracle", |r, c| oracle_suite(r, c, Mode::Block)),
        ("component-dp-vs-oracle", |r, c| oracle_suite(r, c, Mode::Component)),
        ("fvs-cross-check", fvs_suite),
        ("representative-sets", repset_suite),
        ("part-count-identity", |_, _| identity_suite()),
    ];
    let mut ok = true;
    for (name, suite) in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        match suite(&mut rng, a.cases) {
            Ok(n) => println!("ok   {name} ({n} checks)"),
            Err(e) => {
                ok = false;
                println!("FAIL {name}: {e:#}");
            }
        }
    }
    Ok(crate::exit(ok))
}

fn dp_decides(inst: &Instance) -> anyhow::Result<bool> {
    let td = exact_td_small(&inst.graph, 14)?;
    Ok(pblock::solve(inst, &to_nice(&inst.graph, &td)?, false)?.yes)
}

fn oracle_suite(rng: &mut ChaCha8Rng, cases: usize, mode: Mode) -> anyhow::Result<usize> {
    let fams = [PFamily::K1K2, PFamily::Cliques, PFamily::Chordal];
    for case in 0..cases {
        let (n, w) = (rng.gen_range(3..=10), rng.gen_range(1..=3));
        let g = partial_ktree(rng, n, w, 0.7);
        let fam = fams[rng.gen_range(0..fams.len())];
        let inst = Instance::new(g, rng.gen_range(2..=4), rng.gen_range(0..=3), fam, mode);
        let want = brute_force_solve(&inst)?.is_some();
        if dp_decides(&inst)? != want {
            anyhow::bail!("case {case} ({fam}, d={}, k={}): oracle says {want}", inst.d, inst.k);
        }
    }
    Ok(cases)
}

fn fvs_suite(rng: &mut ChaCha8Rng, cases: usize) -> anyhow::Result<usize> {
    for case in 0..cases {
        let (n, w) = (rng.gen_range(3..=10), rng.gen_range(1..=3));
        let g = partial_ktree(rng, n, w, 0.8);
        let k = rng.gen_range(0..=3);
        let want = brute_force_fvs(&g, k)?.is_some();
        let inst = Instance::new(g, 3, k, PFamily::K1K2, Mode::Block);
        if dp_decides(&inst)? != want {
            anyhow::bail!("case {case}: fvs oracle says {want}");
        }
    }
    Ok(cases)
}

fn random_partition(rng: &mut ChaCha8Rng, m: usize) -> Partition {
    let assign: Vec<usize> = (0..m).map(|_| rng.gen_range(0..m)).collect();
    Partition::from_assignment(&assign)
}

fn repset_suite(rng: &mut ChaCha8Rng, cases: usize) -> anyhow::Result<usize> {
    for case in 0..cases {
        let m = rng.gen_range(1..=5);
        let fam: Vec<Partition> = (0..rng.gen_range(1..=20)).map(|_| random_partition(rng, m)).collect();
        let sub = rep_partitions(m, &fam);
        if sub.len() > m << (m - 1) {
            anyhow::bail!("case {case}: {} partitions kept for m={m}", sub.len());
        }
        if !verify_representative(m, &fam, &sub)? {
            anyhow::bail!("case {case}: output is not representative");
        }
    }
    Ok(cases)
}

fn identity_suite() -> anyhow::Result<usize> {
    let mut checks = 0;
    for m in 1..=4 {
        let all = all_partitions(m);
        for x in &all {
            for y in &all {
                if inc_is_connected(m, &[x, y]) {
                    checks += 1;
                    let count = x.num_parts() + y.num_parts() == m + 1;
                    if inc_is_forest(m, &[x, y]) != count {
                        anyhow::bail!("m={m}: {x:?} and {y:?}");
                    }
                }
            }
        }
    }
    Ok(checks)
}
