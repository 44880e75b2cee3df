//! End-to-end checks of the `je` binary: exit codes, formats, round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn je(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_je"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("je-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn construct_verify_roundtrip() {
    let file = tmp("pi2.txt");
    let out = je(&[
        "construct",
        "--family",
        "pi2",
        "--pairs",
        "1:5,2:6,3:7,4:8",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = je(&["verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("equitable=true"), "{text}");
    assert!(text.contains("quotient=[[9, 6], [8, 7]]"), "{text}");
    assert!(text.contains("theta=1"), "{text}");
    std::fs::remove_file(&file).ok();
}

#[test]
fn roundtrip_all_families_and_formats() {
    for family in ["pi1", "pi2", "pi3"] {
        for m in ["3", "5", "8"] {
            for format in ["text", "json"] {
                let file = tmp(&format!("{family}-{m}-{format}"));
                let out = je(&[
                    "construct",
                    "--family",
                    family,
                    "--m",
                    m,
                    "--format",
                    format,
                    "--out",
                    file.to_str().unwrap(),
                ]);
                assert!(out.status.success(), "{family} m={m} {format}");
                let before = std::fs::read_to_string(&file).unwrap();
                let out = je(&["verify", file.to_str().unwrap(), "--format", "json"]);
                assert_eq!(out.status.code(), Some(0), "{family} m={m}");
                let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
                assert_eq!(doc["schema"], 1);
                assert_eq!(doc["equitable"], true);
                // write the parsed partition again: text form is bit-stable
                if format == "text" {
                    let reparsed =
                        johnson_equitable::partition::TwoPartition::parse(&before).unwrap();
                    assert_eq!(reparsed.to_text(), before);
                }
                std::fs::remove_file(&file).ok();
            }
        }
    }
}

#[test]
fn verify_rejects_empty_cell_with_usage_exit() {
    let file = tmp("allcell2.txt");
    std::fs::write(&file, format!("n=8 w=3\n{}\n", "2".repeat(56))).unwrap();
    let out = je(&["verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&file).ok();
}

#[test]
fn verify_non_equitable_exits_one() {
    // flip one vertex of a family instance
    let file = tmp("corrupt.txt");
    let pb = johnson_equitable::construct::PairedBipartition::identity(4).unwrap();
    let p = johnson_equitable::construct::pi1(&pb).unwrap().partition;
    let mut text = p.to_text();
    let flip_at = text.find('\n').unwrap() + 3;
    let old = text.as_bytes()[flip_at];
    let new = if old == b'1' { '2' } else { '1' };
    text.replace_range(flip_at..flip_at + 1, &new.to_string());
    std::fs::write(&file, text).unwrap();
    let out = je(&["verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness"));
    std::fs::remove_file(&file).ok();
}

#[test]
fn analyze_supports_identity() {
    let file = tmp("pi2-analyze.txt");
    je(&[
        "construct",
        "--family",
        "pi2",
        "--m",
        "4",
        "--out",
        file.to_str().unwrap(),
    ]);
    let out = je(&["analyze", "--partition", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["holds"], true);
    assert_eq!(doc["lhs"], 2304);
    assert_eq!(doc["t1"], 24);
    assert_eq!(doc["t2"], 0);
    assert_eq!(doc["t0"], 4);
    std::fs::remove_file(&file).ok();
}

#[test]
fn classify_roundtrip_and_nbarray() {
    let file = tmp("pi3.txt");
    je(&[
        "construct",
        "--family",
        "pi3",
        "--m",
        "6",
        "--out",
        file.to_str().unwrap(),
    ]);
    let out = je(&["classify", "--partition", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["family"], "pi3");
    assert_eq!(doc["certified"], true);
    assert!(doc["structure"]["matching"].is_array());

    let out = je(&[
        "nbarray",
        "--partition",
        file.to_str().unwrap(),
        "--all",
        "--summary",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.trim() == "V.ii: 120", "histogram: {text}");

    // single-vertex rendering for some cell-1 vertex
    let p =
        johnson_equitable::partition::TwoPartition::parse(&std::fs::read_to_string(&file).unwrap())
            .unwrap();
    let v = p
        .ctx()
        .vertices()
        .into_iter()
        .find(|t| p.indicator(t).unwrap() == 1)
        .unwrap();
    let out = je(&[
        "nbarray",
        "--partition",
        file.to_str().unwrap(),
        "--vertex",
        &v.to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("case V.ii"));
    std::fs::remove_file(&file).ok();
}

#[test]
fn search_small_and_report() {
    let sols = tmp("solutions.txt");
    let out = je(&[
        "search",
        "--n",
        "6",
        "--matrix",
        "8,1;9,0",
        "--symmetry",
        "none",
        "--out",
        sols.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["complete"], true);
    assert_eq!(doc["raw_solutions"], 10);
    let body = std::fs::read_to_string(&sols).unwrap();
    assert_eq!(body.lines().count(), 11); // header + 10 solutions
                                          // header plus any solution line is a valid partition file
    let header = body.lines().next().unwrap();
    let one = body.lines().nth(1).unwrap();
    let p =
        johnson_equitable::partition::TwoPartition::parse(&format!("{header}\n{one}\n")).unwrap();
    assert!(p.is_equitable());
    std::fs::remove_file(&sols).ok();

    let out = je(&["report", "--n", "8", "--budget-nodes", "1e7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["theta"], 1);
    assert!(doc["matrices"].as_array().unwrap().len() == 8);
}

#[test]
fn usage_errors_exit_two() {
    let out = je(&["search", "--n", "8", "--matrix", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = je(&["construct", "--family", "pi9", "--m", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = je(&["verify", "/nonexistent/path.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let out = je(&["construct", "--family", "pi1", "--m", "11"]);
    assert_eq!(out.status.code(), Some(2));
}
