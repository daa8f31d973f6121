use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn arknit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arknit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn knit_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["knit"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert!(arknit(&full).status.success());
    path
}

#[test]
fn knit_a3_has_six_nodes() {
    let dir = TempDir::new().unwrap();
    let ar = knit_to(dir.path(), "a3.json", &["--quiver", "family:linear_A:3", "--full"]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(ar).unwrap()).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
}

#[test]
fn tau_of_projective_is_refused() {
    let out = arknit(&["tau", "--rep", "proj:1", "--quiver", "family:linear_A:3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tau_inverse_of_simple_projective() {
    let v = json(&arknit(&[
        "tau",
        "--rep",
        "proj:3",
        "--quiver",
        "family:linear_A:3",
        "--inverse",
    ]));
    assert_eq!(v["dims"], serde_json::json!({"1": 0, "2": 1, "3": 0}));
}

#[test]
fn direct_check_on_e6() {
    let dir = TempDir::new().unwrap();
    let ar = knit_to(dir.path(), "e6.json", &["--quiver", "family:E:6", "--full"]);
    let v = json(&arknit(&["check", "--ar", &ar, "--criterion", "direct"]));
    assert_eq!(v["result"], "standard");
}

#[test]
fn kronecker_window_stays_inconclusive() {
    let dir = TempDir::new().unwrap();
    let ar = knit_to(
        dir.path(),
        "kr.json",
        &["--quiver", "family:kronecker", "--budget", "4"],
    );
    for criterion in ["direct", "sections", "genstd"] {
        let v = json(&arknit(&["check", "--ar", &ar, "--criterion", criterion]));
        assert_eq!(v["result"], "window_inconclusive", "{criterion}");
    }
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(
        arknit(&["knit", "--quiver", "does-not-exist.json"]).status.code(),
        Some(2)
    );
    assert_eq!(arknit(&["knit", "--quiver", "family:Z:3"]).status.code(), Some(2));
    assert_eq!(
        arknit(&["check", "--ar", "x", "--criterion", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(arknit(&["frobnicate"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(
        arknit(&["validate", "--quiver", junk.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn cyclic_quiver_is_refused() {
    let dir = TempDir::new().unwrap();
    let q = dir.path().join("cyc.json");
    std::fs::write(
        &q,
        r#"{"vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"2","tgt":"1"}]}"#,
    )
    .unwrap();
    let q = q.to_str().unwrap();
    assert_eq!(arknit(&["validate", "--quiver", q]).status.code(), Some(1));
    assert_eq!(arknit(&["knit", "--quiver", q]).status.code(), Some(1));
}

#[test]
fn knit_output_reloads_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = knit_to(dir.path(), "a.json", &["--quiver", "family:D:5", "--full"]);
    let b = knit_to(dir.path(), "b.json", &["--quiver", "family:D:5", "--full"]);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let dot_a = arknit(&["dot", "--ar", &a]);
    assert!(dot_a.status.success());
    assert_eq!(dot_a.stdout, arknit(&["dot", "--ar", &b]).stdout);
    let report = json(&arknit(&["report", "--ar", &a, "--checks", "direct,module"]));
    assert_eq!(report["nodes"].as_array().unwrap().len(), 20);
    assert!(report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v["result"] == "standard"));
}

#[test]
fn hom_ext_and_mesh_hom_agree_on_a3() {
    let dir = TempDir::new().unwrap();
    let ar = knit_to(dir.path(), "a3.json", &["--quiver", "family:linear_A:3", "--full"]);
    let q = ["--quiver", "family:linear_A:3"];
    let hom = json(&arknit(
        &[&["hom", "--from", "proj:3", "--to", "proj:1"][..], &q[..]].concat(),
    ));
    assert_eq!(hom["dim"], 1);
    assert_eq!(hom["basis"].as_array().unwrap().len(), 1);
    let mesh = json(&arknit(&["mesh-hom", "--tq", &ar, "--from", "P3", "--to", "P1"]));
    assert_eq!(mesh["dim"], 1);
    let ext = json(&arknit(
        &[&["ext1", "--from", "simple:1", "--to", "simple:2"][..], &q[..]].concat(),
    ));
    assert_eq!(ext["dim"], 1);
    let ext = json(&arknit(
        &[&["ext1", "--from", "simple:2", "--to", "simple:1"][..], &q[..]].concat(),
    ));
    assert_eq!(ext["dim"], 0);
}

#[test]
fn seeded_random_strings_are_reproducible() {
    let run = |seed: &str| {
        json(&arknit(&[
            "string",
            "--quiver",
            "family:trunc_A_biinf:10",
            "--random",
            "6",
            "--seed",
            seed,
        ]))
    };
    let first = run("7");
    assert_eq!(first, run("7"));
    assert_eq!(first["end_dim"], 1);
}

#[test]
fn sections_listing() {
    let dir = TempDir::new().unwrap();
    let ar = knit_to(dir.path(), "a2.json", &["--quiver", "family:linear_A:2", "--full"]);
    let v = json(&arknit(&["sections", "--tq", &ar]));
    assert_eq!(v["truncated"], false);
    assert_eq!(v["count"], 2);
}

#[test]
fn written_rep_is_read_back() {
    let dir = TempDir::new().unwrap();
    let (t, back) = (dir.path().join("t.json"), dir.path().join("back.json"));
    let (t, back) = (t.to_str().unwrap(), back.to_str().unwrap());
    let q = "family:D:4";
    assert!(arknit(&["tau", "--rep", "inj:3", "--quiver", q, "--out", t]).status.success());
    assert_eq!(json(&arknit(&["hom", "--from", t, "--to", t]))["dim"], 1);
    assert!(arknit(&["tau", "--rep", t, "--inverse", "--out", back]).status.success());
    let back_json: Value = serde_json::from_str(&std::fs::read_to_string(back).unwrap()).unwrap();
    // τ⁻τ I₃ ≅ I₃, whose dimension at x is dim Hom(P_x, I₃)
    for x in ["1", "2", "3", "4"] {
        let proj = format!("proj:{x}");
        let h = json(&arknit(&["hom", "--from", &proj, "--to", "inj:3", "--quiver", q]));
        assert_eq!(back_json["dims"][x], h["dim"], "vertex {x}");
    }
}
