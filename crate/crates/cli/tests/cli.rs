use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freegroup")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn check(args: &[&str], code: i32, line: &str) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim_end(), line, "{args:?}");
}

#[test]
fn member_examples() {
    check(&["member", "ababab", "--gens", "aba", "bab"], 0, "member x1 x2 (fast)");
    check(&["member", "", "--gens", "a"], 0, "member 1 (fallback)");
    check(&["member", "", "--gens", "aba", "bab"], 0, "member 1 (fast)");
    check(&["member", "ab", "--gens", "aba", "bab"], 1, "non-member (fast)");
    check(&["member", "ababab", "--algorithm", "mp", "--gens", "aba", "bab"], 0, "member x1 x2 (stallings)");
    check(&["member", "aab", "--gens", "aa", "b"], 0, "member x1 x2 (fallback)");
    check(&["member", "1 2 1", "--gens", "1 2 1", "2 1 2"], 0, "member x1 (fast)");
}

#[test]
fn primitive_examples() {
    check(&["primitive", "bA"], 0, "primitive (whitehead-fallback)");
    check(&["primitive", "abAB"], 1, "not primitive (obstruction(step 3))");
    check(&["primitive", "a"], 0, "primitive (short-core)");
    check(&["primitive", "--algorithm", "whitehead", "abAB"], 1, "not primitive (whitehead)");
}

#[test]
fn rprim_examples() {
    check(&["rprim", "aba", "--gens", "aba", "bab"], 0, "member x1 primitive in rank 2 (fast)");
    check(&["rprim", "abaaba", "--gens", "aba", "bab"], 0, "member x1 x1 not primitive in rank 2 (fast)");
    check(&["rprim", "ab", "--gens", "aba", "bab"], 1, "non-member (fast)");
}

#[test]
fn stallings_summary_and_dot() {
    check(&["stallings", "a", "b"], 0, "V=1 E=2 rank=2 index=1");
    check(&["stallings", "aa", "b", "abA"], 0, "V=2 E=4 rank=3 index=2");
    check(&["stallings", "aa", "b"], 0, "V=2 E=3 rank=2 index=∞");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let o = run(&["stallings", "aa", "b", "--dot", path.to_str().unwrap()]);
    assert!(o.status.success());
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph stallings {"));
    assert!(dot.contains("1 [shape=doublecircle];"));
    assert!(dot.contains("2 [shape=circle];"));
    assert_eq!(dot.matches("->").count(), 3);
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["member", "aA", "--gens", "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not freely reduced"));
    assert_eq!(run(&["primitive", "a1"]).status.code(), Some(2));
    assert_eq!(run(&["member", "c", "--rank", "2", "--gens", "a"]).status.code(), Some(2));
    assert_eq!(run(&["bench", "no-such-experiment"]).status.code(), Some(2));
    assert_eq!(run(&["bench", "ppp-cost", "--samples", "0"]).status.code(), Some(2));
    check(&["member", "aAb", "--reduce", "--gens", "b"], 0, "member x1 (fallback)");
}

#[test]
fn words_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gens.txt");
    fs::write(&path, "# generators\naba\n\n2 1 2\n").unwrap();
    let file = path.to_str().unwrap();
    check(&["member", "ababab", "--words-file", file], 0, "member x1 x2 (fast)");
    check(&["stallings", "--words-file", file], 0, "V=5 E=6 rank=2 index=∞");
}

#[test]
fn eigen_table() {
    let o = run(&["eigen"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "r,gaa_closed,gaa_power,gab_closed,gab_power,bound");
    assert_eq!(rows.len(), 8);
    for row in &rows[1..] {
        let v: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() < 1e-6, "{row}");
        assert!((v[3] - v[4]).abs() < 1e-4, "{row}");
        assert!(v[1] <= v[5] && v[3] <= v[5], "{row}");
    }
}

#[test]
fn bench_is_reproducible_and_writes_out() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str| {
        vec!["bench", "core-tail", "--samples", "500", "--seed", "7", "--lengths", "40,60", "--out", out]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let argv = args(p.to_str().unwrap());
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert!(run(&argv).status.success());
    }
    let a = fs::read(a).unwrap();
    assert_eq!(a, fs::read(b).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# experiment=core-tail\n# seed=7\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 2 * 5);
}
