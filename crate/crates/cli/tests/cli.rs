use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn sponge(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sponge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(bytes) = stdin {
        child.stdin.take().unwrap().write_all(bytes).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn hvector_of_octahedron_example() {
    let out = sponge(&["hvector", "--builtin", "g42_octahedron"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["h"], serde_json::json!([1, 1, 2, 1, 1]));
    assert_eq!(r["result"]["symmetric"], true);
    assert!(r["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn betti_of_quaternionic_plane() {
    let out = sponge(
        &["hilbert", "--which", "betti", "--builtin", "hp2_fvector"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(
        r["result"]["polynomial"]["coefficients"],
        serde_json::json!([1, 0, 0, 0, 1, 0, 0, 0, 1])
    );
}

#[test]
fn generated_model_is_cohen_macaulay() {
    let gen = sponge(&["gen", "model", "--n", "5"], None);
    assert_eq!(gen.status.code(), Some(0));
    let out = sponge(&["check-cm", "-"], Some(&gen.stdout));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["is_cm"], true);
}

#[test]
fn failed_check_exits_one() {
    // Two disjoint edges: the link of the empty chain is disconnected.
    let doc = r#"{"format_version":1,"n":3,
        "faces":[{"id":"a","dim":0},{"id":"b","dim":0},{"id":"c","dim":0},{"id":"d","dim":0},
                 {"id":"ab","dim":1},{"id":"cd","dim":1}],
        "covers":[{"upper":"ab","lower":"a","incidence":-1},{"upper":"ab","lower":"b","incidence":1},
                  {"upper":"cd","lower":"c","incidence":-1},{"upper":"cd","lower":"d","incidence":1}]}"#;
    let out = sponge(&["check-cm", "-"], Some(doc.as_bytes()));
    assert_eq!(out.status.code(), Some(1));
    assert!(!report(&out)["result"]["witnesses"]
        .as_array()
        .unwrap()
        .is_empty());
    let out = sponge(&["check-acyclic", "-"], Some(doc.as_bytes()));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let out = sponge(
        &["validate", "-"],
        Some(b"{\n  \"n\": 3,\n  \"faces\": [,]\n}"),
    );
    assert_eq!(out.status.code(), Some(2));
    let message = report(&out)["error"].as_str().unwrap().to_string();
    assert!(message.contains("line 3"), "{message}");

    let out = sponge(
        &[
            "local-cohomology",
            "--face",
            "nope",
            "--builtin",
            "model_n4",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    let out = sponge(&["fvector", "--builtin", "nope"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = sponge(&["homology"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = sponge(&["dihomology-check", "--builtin", "f3_k33"], None);
    let b = sponge(&["dihomology-check", "--builtin", "f3_k33"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn homology_of_documents() {
    let out = sponge(&["homology", "--reduced", "--builtin", "f3_k33"], None);
    let r = report(&out);
    assert_eq!(
        r["result"]["homology"],
        serde_json::json!([{"degree": 1, "free_rank": 4, "torsion": []}])
    );

    // Triangulated projective plane: H_1 = Z/2.
    let rp2 = r#"{"vertices":["1","2","3","4","5","6"],"facets":[
        ["1","2","3"],["1","3","4"],["1","4","5"],["1","5","6"],["1","2","6"],
        ["2","3","5"],["3","4","6"],["2","4","5"],["2","4","6"],["3","5","6"]]}"#;
    let out = sponge(&["homology", "-"], Some(rp2.as_bytes()));
    let r = report(&out);
    assert_eq!(
        r["result"]["homology"],
        serde_json::json!([{"degree": 0, "free_rank": 1, "torsion": []}, {"degree": 1, "free_rank": 0, "torsion": ["2"]}])
    );
    let out = sponge(&["homology", "--coeff", "q", "-"], Some(rp2.as_bytes()));
    assert_eq!(
        report(&out)["result"]["homology"].as_array().unwrap().len(),
        1
    );
}

#[test]
fn scans() {
    let dir = tempfile::tempdir().unwrap();
    let checkpoint = dir.path().join("scan.jsonl");
    let path = checkpoint.to_str().unwrap();
    let first = sponge(
        &[
            "scan",
            "--family",
            "trivalent",
            "--max",
            "8",
            "--checkpoint",
            path,
        ],
        None,
    );
    assert_eq!(first.status.code(), Some(0));
    let r = report(&first);
    assert_eq!(r["result"]["total"], 8);
    assert_eq!(r["result"]["ds_failures"], serde_json::json!([]));
    let again = sponge(
        &[
            "scan",
            "--family",
            "trivalent",
            "--max",
            "8",
            "--checkpoint",
            path,
        ],
        None,
    );
    assert_eq!(first.stdout, again.stdout);
    assert_eq!(
        std::fs::read_to_string(&checkpoint)
            .unwrap()
            .lines()
            .count(),
        8
    );

    let out = sponge(&["scan", "--fspace", "--n", "4", "--bound", "2"], None);
    let r = report(&out);
    assert_eq!(r["result"]["label"], "no known sponge realization");
    assert!(r["result"]["skipped_negative_b"].as_u64().unwrap() > 0);
}

#[test]
fn polytope_skeleton_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cube.json");
    let square = r#"{"format_version":1,"n":2,
        "faces":[{"id":"a","dim":0},{"id":"b","dim":0},{"id":"c","dim":0},{"id":"d","dim":0},
                 {"id":"ab","dim":1},{"id":"bc","dim":1},{"id":"cd","dim":1},{"id":"da","dim":1},{"id":"P","dim":2}],
        "covers":[{"upper":"ab","lower":"a"},{"upper":"ab","lower":"b"},{"upper":"bc","lower":"b"},{"upper":"bc","lower":"c"},
                  {"upper":"cd","lower":"c"},{"upper":"cd","lower":"d"},{"upper":"da","lower":"d"},{"upper":"da","lower":"a"},
                  {"upper":"P","lower":"ab"},{"upper":"P","lower":"bc"},{"upper":"P","lower":"cd"},{"upper":"P","lower":"da"}],
        "top":"P"}"#;
    std::fs::write(&file, square).unwrap();
    let gen = sponge(&["gen", "polytope-skeleton", file.to_str().unwrap()], None);
    assert_eq!(
        gen.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&gen.stderr)
    );
    let out = sponge(&["hvector", "-"], Some(&gen.stdout));
    assert_eq!(report(&out)["result"]["h"], serde_json::json!([1, 2, 1]));
}
