//! End-to-end runs of the `pcm` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pcm_core::decompose::{decompose, DEFAULT_CAP};
use pcm_core::fixtures;
use pcm_core::io::{matrix_to_text, parse_decomposition_json, parse_matrix, CertificateJson};
use pcm_core::ReciprocalMatrix;
use tempfile::TempDir;

const SINGLE_CONE: &str = "4\n1 2 1 1/2\n1/2 1 2 1\n1 1/2 1 2\n2 1 1/2 1\n";

fn pcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcm")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Workspace(TempDir);

impl Workspace {
    fn new() -> Self {
        Workspace(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn matrix(&self, name: &str, a: &ReciprocalMatrix) -> String {
        self.file(name, &matrix_to_text(a))
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_string_lossy().into_owned()
    }
}

#[test]
fn column_certifies_with_expected_cycle() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", SINGLE_CONE);
    let w = ws.file("w.txt", "2 1 1/2 1\n");
    let out = pcm(&["check", &m, &w]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("1->4->3->2->1"), "{}", stdout(&out));

    let out = pcm(&["--json", "check", &m, &w]);
    let cert: CertificateJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert.status, "efficient");
    assert_eq!(cert.cycle, Some(vec![1, 4, 3, 2]));
}

#[test]
fn inefficient_vector_exits_one() {
    let ws = Workspace::new();
    let m = ws.matrix("m.txt", &fixtures::double_perturbed_4x4());
    let w = ws.file("w.txt", "[\"2\", \"4\", \"5\", \"4\"]");
    let out = pcm(&["--json", "check", &m, &w]);
    assert_eq!(code(&out), 1);
    let cert: CertificateJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert.status, "inefficient");
    assert!(cert.cut.is_some());
}

#[test]
fn decimal_and_json_matrices_are_accepted() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", "4\n1 2 1 0.5\n0.5 1 2 1\n1 0.5 1 2\n2 1 0.5 1\n");
    let w = ws.file("w.txt", "1, 0.5, 1, 2");
    assert_eq!(code(&pcm(&["check", &m, &w])), 0);
    let j = ws.file(
        "m.json",
        r#"{"n": 2, "rows": [["1", "3"], ["1/3", 1]]}"#,
    );
    let w2 = ws.file("w2.txt", "3 1");
    assert_eq!(code(&pcm(&["check", &j, &w2])), 0);
}

#[test]
fn decompose_json_matches_library() {
    let ws = Workspace::new();
    let a = fixtures::column_perturbed_5x5();
    let m = ws.matrix("m.txt", &a);
    let out = pcm(&["--json", "decompose", &m]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let got = parse_decomposition_json(&stdout(&out)).unwrap();
    assert_eq!(got, decompose(&a, DEFAULT_CAP).unwrap());
    assert_eq!(got.cones.len(), 12);
}

#[test]
fn decompose_summary_counts() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", SINGLE_CONE);
    let out = pcm(&["decompose", "--summary", &m]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("cycles with product < 1: 1"), "{text}");
    assert!(text.contains("cycles with product <= 1: 5"), "{text}");
}

#[test]
fn cap_refusal_exits_three() {
    let ws = Workspace::new();
    let m = ws.matrix("m.txt", &fixtures::column_perturbed_5x5());
    let out = pcm(&["--cap", "4", "decompose", &m]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
}

#[test]
fn malformed_input_exits_two() {
    let ws = Workspace::new();
    let w = ws.file("w.txt", "1 1 1 1");
    let cases = [
        ("truncated.txt", "4\n1 2 1 1/2\n1/2 1 2 1\n"),
        ("short_row.txt", "4\n1 2\n"),
        ("not_reciprocal.txt", "2\n1 2\n2 1\n"),
        ("negative.txt", "2\n1 -2\n-1/2 1\n"),
        ("zero_den.txt", "2\n1 1/0\n1 1\n"),
        ("garbage.txt", "two\n"),
    ];
    for (name, body) in cases {
        let m = ws.file(name, body);
        let out = pcm(&["check", &m, &w]);
        assert_eq!(code(&out), 2, "{name}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
    let out = pcm(&["check", &ws.path("missing.txt"), &w]);
    assert_eq!(code(&out), 2);
}

#[test]
fn dimension_mismatch_exits_two() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", SINGLE_CONE);
    let w = ws.file("w.txt", "1 2 3");
    assert_eq!(code(&pcm(&["check", &m, &w])), 2);
}

#[test]
fn bad_flags_exit_two() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", SINGLE_CONE);
    for args in [
        vec!["--cap", "2", "decompose", m.as_str()],
        vec!["--tolerance", "0", "rank", m.as_str()],
        vec!["--tolerance", "-1/3", "rank", m.as_str()],
        vec!["frobnicate"],
        vec!["generate", "banana", "4"],
        vec!["generate", "double", "3"],
        vec!["reversals", m.as_str(), "--cycle", "1,2,2,4"],
    ] {
        let out = pcm(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn reversals_construct_along_cycle() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", SINGLE_CONE);
    let out = pcm(&["reversals", &m, "--cycle", "1,4,3,2", "--construct"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[1, 1/2, 1/4, 1/8]"), "{text}");
    assert!(text.contains("along cycle: 1"), "{text}");

    let w = ws.file("w.txt", "2 1 1/2 1");
    let out = pcm(&["--json", "reversals", &m, &w]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, v["pairs"].as_array().unwrap().len());
}

#[test]
fn generate_is_deterministic_and_parseable() {
    let ws = Workspace::new();
    let p1 = ws.path("a.txt");
    let p2 = ws.path("b.txt");
    assert_eq!(code(&pcm(&["--seed", "11", "generate", "column", "6", "-o", &p1])), 0);
    assert_eq!(code(&pcm(&["--seed", "11", "generate", "column", "6", "-o", &p2])), 0);
    let (a, b) = (fs::read_to_string(&p1).unwrap(), fs::read_to_string(&p2).unwrap());
    assert_eq!(a, b);
    assert_eq!(parse_matrix(&a).unwrap().dim(), 6);
    let out = pcm(&["--seed", "11", "generate", "random", "4"]);
    assert_eq!(parse_matrix(&stdout(&out)).unwrap().dim(), 4);
}

#[test]
fn perturbed_subcommands() {
    let ws = Workspace::new();
    let double = ws.matrix("d.txt", &fixtures::double_perturbed_4x4());
    let out = pcm(&["perturbed", "classify", &double]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "double-in-column");

    let five = ws.matrix("f.txt", &fixtures::column_perturbed_5x5());
    let out = pcm(&["--json", "perturbed", "eff-set", &five]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pairs: Vec<(u64, u64)> = v["sets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["i"].as_u64().unwrap(), s["j"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]);

    let out = pcm(&["--json", "perturbed", "canonicalize", &five]);
    assert_eq!(code(&out), 0);

    let plain = ws.file("m.txt", SINGLE_CONE);
    assert_eq!(code(&pcm(&["perturbed", "canonicalize", &plain])), 1);
    assert_eq!(code(&pcm(&["perturbed", "eff-set", &plain])), 1);
    let out = pcm(&["perturbed", "classify", &plain]);
    assert_eq!(stdout(&out).trim(), "not-column-perturbed");
}

#[test]
fn rank_table_lists_every_method() {
    let ws = Workspace::new();
    let m = ws.file("m.txt", SINGLE_CONE);
    let out = pcm(&["rank", &m]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for method in ["column(1)", "column(4)", "geometric-mean", "perron", "singular"] {
        assert!(text.contains(method), "{text}");
    }
    let out = pcm(&["--json", "--tolerance", "1/1000000", "rank", &m]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn self_check_passes() {
    let out = pcm(&["--samples", "30", "self-check"]);
    assert_eq!(code(&out), 0, "{}{}", stdout(&out), stderr(&out));
}

#[test]
fn output_file_in_missing_directory_fails_cleanly() {
    let ws = Workspace::new();
    let target = Path::new(&ws.path("nope")).join("x.txt");
    let out = pcm(&["generate", "random", "3", "-o", target.to_str().unwrap()]);
    assert_ne!(code(&out), 0);
    assert!(!stderr(&out).is_empty());
}
