use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const W_ANTI: &str = "bipartite 2\n1 1 1\n1 2 2\n2 1 2\n2 2 1\n";
const C4: &str = "bipartite 2\n1 1\n1 2\n2 1\n2 2\n";
const ANTI_DIAGONAL: &str = "bipartite 2\n1 2\n2 1\n";
const PRISM: &str = "complete 6\n1 2\n2 3\n3 4\n1 4\n1 5\n4 5\n2 6\n3 6\n5 6\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

#[test]
fn poly_unit_and_weighted() {
    let out = run(&["poly", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "+1 x[1,1] x[2,2]\n+1 x[1,2] x[2,1]\n-1 x[1,1] x[1,2] x[2,1] x[2,2]\n"
    );
    assert!(stderr(&out).contains("terms: 3 (odd)"));

    let files = Files::new();
    let w = files.put("w.txt", W_ANTI);
    let out = run(&["poly", "--n", "2", "--weights", &w]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "+1 x[1,1] x[2,2]\n");
}

#[test]
fn poly_json_and_output_file() {
    let files = Files::new();
    let target = files.0.path().join("p.json");
    let out = run(&["poly", "--n", "2", "--format", "json", "-o", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let json = std::fs::read_to_string(&target).unwrap();
    let p = matchpoly::MultilinearPolynomial::parse_json(&json).unwrap();
    assert_eq!(p, matchpoly::polynomial::pm_polynomial(2).unwrap());
}

#[test]
fn invalid_inputs_exit_two() {
    assert_eq!(run(&["poly", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["poly"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--n", "2", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "2", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["lattice", "--mode", "complete", "--n", "8"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["lattice", "--mode", "complete", "--n", "5"]).status.code(),
        Some(2)
    );

    let files = Files::new();
    let bad = files.put("bad.txt", "bipartite 2\n1 1\n1 1\n");
    let out = run(&["coeff", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let w = files.put("w.txt", W_ANTI);
    assert_eq!(run(&["poly", "--n", "3", "--weights", &w]).status.code(), Some(2));
    let missing = files.0.path().join("missing.txt");
    assert_eq!(run(&["coeff", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn coefficient_queries() {
    let files = Files::new();
    let c4 = files.put("c4.txt", C4);
    let anti = files.put("anti.txt", ANTI_DIAGONAL);
    let w = files.put("w.txt", W_ANTI);
    assert_eq!(stdout(&run(&["coeff", &c4])), "-1\n");
    assert_eq!(stdout(&run(&["coeff", "--n", "2", "--monomial", &anti])), "+1\n");
    assert_eq!(stdout(&run(&["coeff", "--weights", &w, &anti])), "0\n");
    assert_eq!(stdout(&run(&["coeff", "--weights", &w, &c4])), "0\n");
    let diag = files.put("diag.txt", "bipartite 2\n1 1\n2 2\n");
    assert_eq!(stdout(&run(&["coeff", "--weights", &w, &diag])), "+1\n");
}

#[test]
fn verify_paths() {
    let out = run(&["verify", "--n", "3", "--exhaustive"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "ok: 512 points agree (exhaustive)\n");

    let files = Files::new();
    let w = files.put("w.txt", W_ANTI);
    assert!(run(&["verify", "--n", "2", "--weights", &w, "--exhaustive"])
        .status
        .success());
    let out = run(&["verify", "--n", "4", "--samples", "500", "--seed", "7"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ok: 500 points agree (sampled)\n");
}

#[test]
fn tampered_polynomial_is_caught() {
    let files = Files::new();
    let good = files.put(
        "good.txt",
        "+1 x[1,1] x[2,2]\n+1 x[1,2] x[2,1]\n-1 x[1,1] x[1,2] x[2,1] x[2,2]\n",
    );
    assert!(run(&["verify", "--n", "2", "--check-file", &good, "--exhaustive"])
        .status
        .success());

    let tampered = files.put("bad.txt", "+1 x[1,1] x[2,2]\n+1 x[1,2] x[2,1]\n");
    let out = run(&["verify", "--n", "2", "--check-file", &tampered, "--exhaustive"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out),
        "mismatch at 1,1 1,2 2,1 2,2: polynomial = 2, oracle = 1\n"
    );

    let json = run(&["poly", "--n", "2", "--format", "json"]);
    let tampered = files.put("bad.json", &stdout(&json).replacen("-1", "1", 1));
    let out = run(&["verify", "--n", "2", "--check-file", &tampered, "--samples", "200"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lattice_reports() {
    let out = run(&["lattice", "--mode", "bipartite", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in [
        "elements: 50",
        "lattice: true",
        "graded: true",
        "eulerian: true",
        "levels: 1 6 15 18 9 1",
    ] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn k6_queries() {
    let files = Files::new();
    let prism = files.put("fig1.txt", PRISM);
    let out = run(&[
        "lattice", "--mode", "complete", "--n", "6", "--graph", &prism, "--mobius",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "0\n");
    let summary = stderr(&out);
    assert!(summary.contains("graded: false"));
    assert!(summary.contains("not-graded witness:"));
    assert!(summary.contains("eulerian: false"));

    let out = run(&[
        "lattice",
        "--mode",
        "complete",
        "--n",
        "6",
        "--interval",
        &prism,
        "--find-pentagon",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("1 4 6 3 1\ncover pentagon:\n"), "{text}");
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn lattice_exports() {
    let out = run(&["lattice", "--n", "2", "--format", "dot"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph lattice {"));
    assert_eq!(dot.matches(" -> ").count(), 4);
    assert!(stderr(&out).contains("elements: 4"));

    let out = run(&["lattice", "--n", "2", "--format", "json"]);
    let doc: matchpoly::lattice::LatticeDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.elements.len(), 4);
    assert_eq!(doc.covers.len(), 4);
}

#[test]
fn count_covered() {
    assert_eq!(stdout(&run(&["count-covered", "--n", "2"])), "3 odd\n");
    let out = run(&["count-covered", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "49 odd\n");
    let files = Files::new();
    let w = files.put(
        "w3.txt",
        "bipartite 3\n1 1 1\n1 2 1\n1 3 2\n2 1 1\n2 2 1\n2 3 2\n3 1 2\n3 2 2\n3 3 1\n",
    );
    let out = run(&["count-covered", "--n", "3", "--weights", &w]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with(" odd\n"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let one = run(&["--threads", "1", "poly", "--n", "3"]);
    let four = run(&["poly", "--n", "3", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_matchpoly"))
        .args(["poly", "--n", "3"])
        .env("MATCHPOLY_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
    assert_eq!(run(&["--threads", "0", "poly", "--n", "2"]).status.code(), Some(2));
}
