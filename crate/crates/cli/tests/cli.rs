use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn templex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_templex")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn nerve_fixture_is_quasi() {
    let out = templex(&["check-quasi", "--instance", "finset", "--in", &fixture("nerve_poset2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "verdict");
    assert_eq!(v["payload"]["quasi"], true);
}

#[test]
fn free_horn_is_not_quasi() {
    let out = templex(&["check-quasi", "--instance", "finset", "--in", &fixture("horn21.json")]);
    assert_eq!(out.status.code(), Some(2));
    let w = &stdout_json(&out)["payload"]["witness"];
    assert_eq!((w["n"].as_u64(), w["j"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn boundary_homotopy_hom() {
    let out = templex(&["homotopy", "--instance", "fvect2", "--in", &fixture("free_boundary2.json"), "--hom", "0", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["payload"], serde_json::json!({"dim": 2}));
}

#[test]
fn worked_examples_pass() {
    for name in ["dugger-spivak-cube", "w-extension", "fgab-2", "boundary-homotopy", "outer-horn"] {
        let out = templex(&["examples", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(stdout_json(&out)["payload"]["name"], name);
    }
}

#[test]
fn errors_are_typed_json_on_stderr() {
    let out = templex(&["necklace", "wedge", "2:0,2", "x"]);
    assert_eq!(out.status.code(), Some(1));
    let out = templex(&["homotopy-quasi", "--instance", "finset", "--in", &fixture("horn21.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["schema"], "error");
    assert_eq!(err["payload"]["module"], "cli");
    assert_eq!(err["payload"]["kind"], "invalid");
}

#[test]
fn instance_mismatch_is_rejected() {
    let out = templex(&["validate", "--instance", "fvect3", "--in", &fixture("free_boundary2.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["payload"]["kind"], "mismatch");
}

#[test]
fn fixtures_are_byte_stable() {
    let dir = std::env::temp_dir().join(format!("templex-fixtures-{}", std::process::id()));
    let out = templex(&["examples", "fixtures", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = stdout_json(&out)["payload"]["written"].as_array().unwrap().clone();
    assert!(!written.is_empty());
    for name in written {
        let name = name.as_str().unwrap();
        let fresh = std::fs::read(dir.join(name)).unwrap();
        let committed = std::fs::read(fixtures().join(name)).unwrap();
        assert!(fresh == committed, "{name} differs from the committed fixture");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn free_then_validate_round_trips() {
    let dir = std::env::temp_dir().join(format!("templex-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("free.json");
    let p = path.to_str().unwrap();
    let out = templex(&["free", "--instance", "fvect2", "--in", &fixture("boundary2.json"), "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(fixtures().join("free_boundary2.json")).unwrap());
    let out = templex(&["validate", "--in", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["payload"]["ok"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn nerve_of_corpus_matches_fixture() {
    let out = templex(&["nerve", "--instance", "finset", "--in", &fixture("poset2.json"), "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let committed: Value = serde_json::from_str(&std::fs::read_to_string(fixtures().join("nerve_poset2.json")).unwrap()).unwrap();
    assert_eq!(stdout_json(&out), committed);
}

#[test]
fn table_output_is_key_value() {
    let out = templex(&["check-nerve-like", "--instance", "finset", "--in", &fixture("simplex3.json"), "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "nerve_like: true"));
}
