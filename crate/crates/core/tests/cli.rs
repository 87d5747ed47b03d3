use std::path::Path;

use hamfix::classify::classify;
use hamfix::cli::run;
use hamfix::fixeddata::FixedPointData;
use hamfix::models::{fixture_cpn, negative_fixtures};

fn hamfix(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hamfix").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_fixture(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file).display().to_string();
    let mut full = vec!["fixture"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let (code, _, err) = hamfix(&full);
    assert_eq!(code, 0, "{err}");
    path
}

#[test]
fn validate_and_classify_projective_space() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_fixture(dir.path(), "cpn_4_1.json", &["cpn", "--n", "4", "--j", "1"]);
    let (code, out, _) = hamfix(&["validate", &f]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = hamfix(&["classify", &f, "--emit-ring"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Case A"));
    assert!(out.contains("ring: Z[x]/x^5\n"), "{out}");
}

#[test]
fn classify_quadric_emits_chern() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_fixture(dir.path(), "q3.json", &["quadric", "--n", "3"]);
    let (code, out, _) = hamfix(&["classify", &f, "--emit-chern"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Case B"));
    assert!(out.contains("c(M) = 1 + 3x + 4x^2 + 2x^3"), "{out}");
    let (code, out, _) = hamfix(&["--json", "classify", &f, "--emit-chern", "--emit-ring"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "B");
    assert_eq!(v["chern"], "1 + 3x + 4x^2 + 2x^3");
    assert_eq!(v["ring"], "Z[x,y]/(x^2 - 2y, y^2)");
}

#[test]
fn three_components_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_fixture(dir.path(), "three.json", &["three-component"]);
    let (code, out, _) = hamfix(&["classify", &f]);
    assert_eq!(code, 1);
    assert!(out.contains("out of classification scope"));
}

#[test]
fn integrate_expressions() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_fixture(dir.path(), "q3.json", &["quadric", "--n", "3"]);
    assert_eq!(hamfix(&["integrate", &q, "--class", "ut^3"]).1, "2\n");
    assert_eq!(hamfix(&["integrate", &q, "--class", "1"]).1, "0\n");
    let c = write_fixture(dir.path(), "c20.json", &["cpn", "--n", "2", "--j", "0"]);
    assert_eq!(hamfix(&["integrate", &c, "--class", "ut^2 * t"]).1, "0\n");
    let (code, _, err) = hamfix(&["integrate", &q, "--class", "ut^3 +"]);
    assert_eq!(code, 2);
    assert!(err.contains('^'), "{err}");
    let (code, _, _) = hamfix(&["--max-degree", "2", "integrate", &q, "--class", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = fixture_cpn(2, 0)
        .unwrap()
        .to_json()
        .replacen("\"0\"", "\"0.5.1\"", 1);
    std::fs::write(&path, text).unwrap();
    let (code, _, err) = hamfix(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("components[0].moment"), "{err}");
    let (code, _, _) = hamfix(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
}

#[test]
fn rank_sum_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_fixture(dir.path(), "r.json", &["neg", "--name", "rank-sum"]);
    let (code, out, _) = hamfix(&["validate", &f]);
    assert_eq!(code, 1);
    assert!(out.contains("rank-sum"));
}

#[test]
fn fixture_round_trip_preserves_classification() {
    let dir = tempfile::tempdir().unwrap();
    for f in negative_fixtures() {
        let path = write_fixture(
            dir.path(),
            &format!("{}.json", f.name),
            &["neg", "--name", f.name],
        );
        let loaded = FixedPointData::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(classify(&loaded), classify(&f.data));
        let (code, _, _) = hamfix(&["classify", &path]);
        assert_eq!(code, 1, "{}", f.name);
    }
    for n in 1..=4 {
        for j in 0..n {
            let (n, j) = (n.to_string(), j.to_string());
            let path = write_fixture(dir.path(), "c.json", &["cpn", "--n", &n, "--j", &j]);
            let loaded =
                FixedPointData::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(
                loaded,
                fixture_cpn(n.parse().unwrap(), j.parse().unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn weights_commands() {
    let (code, out, _) = hamfix(&["weights", "--check", "lemma1", "--max-key", "12"]);
    assert_eq!(code, 0);
    assert!(out.contains("[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]"));
    let (code, out, _) = hamfix(&[
        "weights",
        "--check",
        "bound",
        "--max-key",
        "12",
        "--max-mult",
        "4",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("no key > 6 among survivors"));
    let (code, out, _) = hamfix(&[
        "weights",
        "--check",
        "lemma2",
        "--max-key",
        "12",
        "--max-mult",
        "6",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("satisfy the multiplicity relations"));
    assert_eq!(
        hamfix(&["weights", "--check", "bound", "--max-mult", "13"]).0,
        2
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hamfix(&["fixture", "neg", "--name", "nope"]).0, 2);
    assert_eq!(hamfix(&["fixture", "quadric", "--n", "4"]).0, 2);
    assert_eq!(hamfix(&["frobnicate"]).0, 2);
    assert_eq!(hamfix(&[]).0, 2);
    let (code, out, _) = hamfix(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}
