use std::path::Path;
use std::process::{Command, Output};

use spm::io::ResultDocument;

fn spm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spm")).args(args).env_remove("SPM_TRACE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, seed: u64) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let seed = seed.to_string();
    let o = spm(&[
        "gen", "--vertices", "8", "--max-priority", "4", "--min-degree", "1", "--max-degree", "3", "--seed", &seed,
        "--out", &path,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "a.gm", 42);
    let b = gen(dir.path(), "b.gm", 42);
    let c = gen(dir.path(), "c.gm", 43);
    let read = |p: &str| std::fs::read(p).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
}

#[test]
fn solve_with_oracle_check() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..10 {
        let g = gen(dir.path(), "g.gm", seed);
        let o = spm(&["solve", &g, "--oracle-check", "--stats"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.contains("oracle-check: agree"));
        assert!(text.contains("stats: lifts total="));
    }
}

#[test]
fn solve_text_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.gm", "parity 3;\n0 2 0 1;\n1 1 0 0,2;\n2 1 0 2;\n3 2 1 3;\n");
    let o = spm(&["solve", &g]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text, "even: 0 1 3\nodd: 2\nstrategy: 0->1\nstrategy: 1->0\n");
}

#[test]
fn solve_json_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "g.gm", 5);
    let o = spm(&["solve", &g, "--json", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = ResultDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.even_wins.len() + doc.odd_wins.len(), 8);
    assert!(doc.stats.wall_time_ms.is_none());
    assert_eq!(doc.stats.lifts_per_vertex.values().sum::<u64>(), doc.stats.lifts_total);
    let trace = String::from_utf8(o.stderr).unwrap();
    assert_eq!(trace.lines().filter(|l| l.starts_with("lift ")).count() as u64, doc.stats.lifts_total);
    let again = spm(&["solve", &g, "--json"]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn separator_cross_check_and_lassos() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "g.gm", 11);
    let o = spm(&["separator", &g, "--cross-check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("cross-check: agree"));
    assert!(text.contains("product states: "));

    let loop1 = write(dir.path(), "l.gm", "0 1 0 0;\n1 2 0 1;\n");
    let reject = stdout(&spm(&["separator", &loop1, "--lasso", "-", "0"]));
    assert!(reject.contains("lasso: reject at step"), "{reject}");
    let accept = stdout(&spm(&["separator", &loop1, "--lasso", "0", "1"]));
    assert!(accept.contains("lasso: accept"), "{accept}");
}

#[test]
fn codetree_eight_leaves() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.txt", "0.0\n1.0\n1.1\n2.0\n2.1\n2.2\n2.3\n2.4\n");
    let o = spm(&["codetree", &t]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2.4 -> e.11\n"));
    assert!(text.contains("leaves: 8, height: 2, max bits: 2, budget: 3"));
}

#[test]
fn bench_runs() {
    let o = spm(&["bench", "--seeds", "6", "--vertices", "7", "--max-priority", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with(" ok")).count(), 6);
    assert!(text.contains("mismatches: 0"));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.gm");
    assert_eq!(spm(&["solve", missing.to_str().unwrap()]).status.code(), Some(1));
    let bad = write(dir.path(), "bad.gm", "0 2 0 ;\n");
    let o = spm(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("1:7"));
    let unknown = write(dir.path(), "u.gm", "0 2 0 3;\n");
    assert_eq!(spm(&["solve", &unknown]).status.code(), Some(1));
    assert_eq!(spm(&["solve"]).status.code(), Some(1));
    assert_eq!(spm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(spm(&["gen", "--vertices", "0", "--max-priority", "2", "--seed", "1", "--out", "x"]).status.code(), Some(1));
    assert_eq!(spm(&["--help"]).status.code(), Some(0));
}

#[test]
fn library_entry_point() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = spm_cli::run(["spm", "bench", "--seeds", "2", "--vertices", "4", "--max-priority", "2"], &mut out, &mut err);
    assert_eq!(code, spm_cli::EXIT_OK);
    assert!(String::from_utf8(out).unwrap().contains("games: 2"));
}
