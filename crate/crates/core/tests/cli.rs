use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn nilvc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilvc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn example(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn temp_file(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("nilvc-{}-{name}", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(body.as_bytes())
        .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_exit_codes() {
    let out = nilvc(&["check", "--poly", "(z1+1i*z2)^4", "--matrix-a", "I2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["report"]["is_nilpotent"], true);

    let out = nilvc(&["check", "--poly", "z1^2+z2^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(records(&out)[0]["report"]["witness"]["m"], 1);

    let out = nilvc(&["check", "--poly", "z1^^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn every_criterion_runs() {
    for c in ["direct", "hessian", "directional"] {
        let out = nilvc(&["check", "--poly", "(z1+i*z2)^3", "--criterion", c]);
        assert_eq!(out.status.code(), Some(0), "{c}");
    }
    let out = nilvc(&["check", "--poly", "z1^2+i*z2^2", "--criterion", "quadratic"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bondt_batch_never_vanishes() {
    let out = nilvc(&["vc", "--batch", &example("bondt.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = &records(&out)[0];
    assert_eq!(r["report"]["label"], "bondt");
    assert_eq!(r["report"]["stable_zero"], false);
    assert!(r["manifest"]["inputs"]["batch"].is_string());
}

#[test]
fn rodrigues_hermite_table() {
    let out = nilvc(&[
        "rodrigues",
        "--family",
        "hermite",
        "--upto",
        "8",
        "--orthogonality",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 9 + 45);
    assert!(recs.iter().all(|r| r["report"]["pass"] != false));
    let out = nilvc(&["rodrigues", "--family", "laguerre:-2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_frame_round_trips() {
    let out = nilvc(&[
        "gen", "--hn", "--nvars", "3", "--degree", "4", "--frame", "2", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = records(&out).remove(0);
    assert_eq!(r["report"]["verified"], true);
    let frame = temp_file("frame.json", &r["report"]["frame"].to_string());
    let out = nilvc(&["check", "--criterion", "omega", "--frame", &frame, "--nvars", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["report"]["details"]["poly"], r["report"]["p"]);

    let p = r["report"]["p"].as_str().unwrap();
    let out = nilvc(&["check", "--poly", p]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn descriptor_errors_carry_paths() {
    let batch = temp_file(
        "bad.json",
        r#"[{"p":"z1","matrix_a":"I1"},{"p":"z1","matrix_a":"I1","extra":1},{"p":"z1^","matrix_a":"I1"}]"#,
    );
    let out = nilvc(&["vc", "--batch", &batch]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["path"], "/1");

    let batch = temp_file("bad2.json", r#"[{"p":"z1^","matrix_a":"I1"}]"#);
    let err: Value = serde_json::from_slice(&nilvc(&["vc", "--batch", &batch]).stderr).unwrap();
    assert!(err["path"].as_str().unwrap().starts_with("/0"));
}

#[test]
fn output_is_deterministic() {
    let args = ["isotropy", "--poly", "(z1+i*z2)^3", "--seed", "3"];
    let a = nilvc(&args);
    let b = nilvc(&[&["--threads", "1"][..], &args[..]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    assert!(records(&a)[0]["manifest"].get("timing_ms").is_none());
    let t = nilvc(&[&["--timing"][..], &args[..]].concat());
    assert!(records(&t)[0]["manifest"]["timing_ms"].is_number());
}

#[test]
fn laurent_modes() {
    let out = nilvc(&[
        "laurent",
        "--mode",
        "constant-term",
        "--f",
        "x1+x1^-1",
        "--g",
        "x1^2",
        "--m-max",
        "6",
    ]);
    assert_ne!(out.status.code(), Some(2));
    let out = nilvc(&["laurent", "--mode", "restated", "--a", "2", "--poly", "z1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pretty_tables() {
    let out = nilvc(&["--pretty", "deform", "--poly", "(z1+i*z2)^3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ok=true"));
}
