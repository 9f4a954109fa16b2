use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pblock-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("c5.gr"), "c five-cycle\np tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
    dir
}

fn pblock(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pblock")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_cycle_fvs() {
    let dir = workdir("solve");
    let yes = pblock(&dir, &["solve", "--mode", "block", "--family", "k1k2", "-d", "3", "-k", "1", "--graph", "c5.gr", "--json"]);
    assert_eq!(yes.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&yes)).unwrap();
    assert_eq!(v["decision"], "YES");
    assert_eq!(v["version"], 1);
    assert!(v.get("time_ms").is_none());
    let no = pblock(&dir, &["solve", "--family", "k1k2", "-d", "3", "-k", "0", "--graph", "c5.gr"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no).trim(), "NO");
    let oracle = pblock(&dir, &["solve", "--engine", "oracle", "--family", "k1k2", "-d", "3", "-k", "1", "--graph", "c5.gr", "--witness"]);
    assert_eq!(oracle.status.code(), Some(0));
    assert!(stdout(&oracle).contains("witness: 1"));
    let timed = pblock(&dir, &["solve", "--family", "chordal", "-d", "3", "-k", "1", "--graph", "c5.gr", "--json", "--timing"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(v.get("time_ms").is_some());
}

#[test]
fn usage_errors_exit_2() {
    let dir = workdir("usage");
    assert_eq!(pblock(&dir, &["solve", "--family", "nope", "-d", "3", "-k", "1", "--graph", "c5.gr"]).status.code(), Some(2));
    assert_eq!(pblock(&dir, &["solve", "--family", "k1k2", "-d", "3", "-k", "1", "--graph", "missing.gr"]).status.code(), Some(2));
    assert_eq!(pblock(&dir, &["frobnicate"]).status.code(), Some(2));
    std::fs::write(dir.join("bad.gr"), "p tw 2 1\n1 3\n").unwrap();
    assert_eq!(pblock(&dir, &["td", "heuristic", "--graph", "bad.gr"]).status.code(), Some(2));
}

#[test]
fn enum_ud_counts() {
    let dir = workdir("enum");
    let o = pblock(&dir, &["enum-ud", "-d", "3", "--family", "cliques"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("4 patterns"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn td_commands() {
    let dir = workdir("td");
    let h = pblock(&dir, &["td", "heuristic", "--graph", "c5.gr"]);
    std::fs::write(dir.join("c5.td"), &h.stdout).unwrap();
    let v = pblock(&dir, &["td", "validate", "--graph", "c5.gr", "--td", "c5.td"]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v).trim(), "valid, width 2");
    std::fs::write(dir.join("one.td"), "s td 1 5 5\nb 1 1 2 3 4 5\n").unwrap();
    let v = pblock(&dir, &["td", "validate", "--graph", "c5.gr", "--td", "one.td"]);
    assert_eq!(v.status.code(), Some(0));
    std::fs::write(dir.join("bad.td"), "s td 2 2 5\nb 1 1 2 3\nb 2 3 4 5\n1 2\n").unwrap();
    let v = pblock(&dir, &["td", "validate", "--graph", "c5.gr", "--td", "bad.td"]);
    assert_eq!(v.status.code(), Some(1));
    let e = pblock(&dir, &["td", "exact", "--graph", "c5.gr"]);
    assert!(stdout(&e).starts_with("s td"));
    let n = pblock(&dir, &["td", "nice", "--graph", "c5.gr", "--td", "c5.td"]);
    assert!(stdout(&n).lines().skip(1).all(|l| l.contains("| bag [")));
}

#[test]
fn generated_instances_verify() {
    let dir = workdir("gen");
    let g = pblock(&dir, &["gen", "clique", "-k", "3", "-t", "2", "--planted", "--out", "cl"]);
    assert_eq!(g.status.code(), Some(0), "{}", String::from_utf8_lossy(&g.stderr));
    for ext in ["gr", "td", "json"] {
        assert!(dir.join(format!("cl.{ext}")).exists());
    }
    let side: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("cl.json")).unwrap()).unwrap();
    assert_eq!(side["n"], 180);
    assert_eq!(side["d"], 21);
    assert_eq!(side["k"], 12);
    assert_eq!(side["planted"].as_array().unwrap().len(), 12);
    assert_eq!(pblock(&dir, &["verify", "--graph", "cl.gr", "--sidecar", "cl.json"]).status.code(), Some(0));
    assert_eq!(pblock(&dir, &["td", "validate", "--graph", "cl.gr", "--td", "cl.td"]).status.code(), Some(0));
    // Dropping a planted vertex breaks the solution.
    let planted: Vec<String> = side["planted"].as_array().unwrap()[1..].iter().map(|v| v.to_string()).collect();
    let bad = pblock(&dir, &["verify", "--graph", "cl.gr", "--sidecar", "cl.json", "--set", &planted.join(",")]);
    assert_eq!(bad.status.code(), Some(1));

    let p = pblock(&dir, &["gen", "perm-is", "-k", "3", "-d", "5", "--density", "0.3", "--planted", "--seed", "4", "--out", "pi"]);
    assert_eq!(p.status.code(), Some(0), "{}", String::from_utf8_lossy(&p.stderr));
    assert_eq!(pblock(&dir, &["verify", "--graph", "pi.gr", "--sidecar", "pi.json"]).status.code(), Some(0));
    std::fs::write(dir.join("tri.gr"), "p tw 3 3\n1 2\n2 3\n1 3\n").unwrap();
    let s = pblock(&dir, &["gen", "subgraph-iso", "--pattern", "tri.gr", "--host-size", "5", "--planted", "--out", "si"]);
    assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
    assert_eq!(pblock(&dir, &["verify", "--graph", "si.gr", "--sidecar", "si.json"]).status.code(), Some(0));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn selftest_passes() {
    let dir = workdir("self");
    let o = pblock(&dir, &["selftest", "--cases", "20", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok")).count(), 5);
}
