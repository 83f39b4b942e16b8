use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn csymlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csymlie"))
        .args(args)
        .env_remove("CSYMLIE_CATALOG_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn export_structure(id: &str, dir: &Path) -> std::path::PathBuf {
    let path = dir.join(format!("{id}.json"));
    let o = csymlie(&["catalog", "export", id, "--structure", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    path
}

#[test]
fn catalog_verifies_and_strict_flags_conventions() {
    let o = csymlie(&["catalog", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("ALL PASS\n"));
    let strict = csymlie(&["catalog", "verify", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
    assert_eq!(csymlie(&["catalog", "verify", "tower8", "--strict"]).status.code(), Some(0));
}

#[test]
fn catalog_list_json() {
    let v = json(&csymlie(&["catalog", "list", "--format", "json"]));
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["abelian4", "kt4", "aff-case2", "aff-case3", "tower8"]);
}

#[test]
fn verify_structure_files() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["kt4", "abelian4"] {
        let path = export_structure(id, dir.path());
        let o = csymlie(&["verify", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", stdout(&o));
    }
}

#[test]
fn verify_reports_a_witness_for_a_bad_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = export_structure("kt4", dir.path());
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    // Ω1 = f1∧f2 is degenerate and not J-compatible
    v["omega1"] = serde_json::json!({"degree": 2, "terms": [[1, 2, "1"]]});
    fs::write(&path, v.to_string()).unwrap();
    let o = csymlie(&["verify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let out = json(&o);
    assert_eq!(out["passed"], false);
    let failures: Vec<&Value> = out["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(failures.iter().any(|c| !c["witness"].as_array().unwrap().is_empty()));
}

#[test]
fn mirror_examples_pass_and_write_files() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["kt4", "abelian4", "aff-case2"] {
        let o = csymlie(&["mirror", id, "--out", dir.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{id}");
        assert!(dir.path().join(format!("{id}-mirror.json")).exists());
    }
}

#[test]
fn tower_levels() {
    let o = csymlie(&["tower", "abelian4", "--levels", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let info = json(&o)["info"].clone();
    assert!(info[1].as_str().unwrap().starts_with("level 2: dim 16, center 16,"));
    let o = csymlie(&["tower", "kt4", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("level 2: dim 16"));
}

#[test]
fn tower_rejects_degenerate_combination() {
    let o = csymlie(&["tower", "kt4", "--form", "3,4,5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL nondegenerate - det(3 Ω1 + 4 Ω2 + 5 Ω3) = 0"));
    assert_eq!(csymlie(&["tower", "kt4", "--form", "1,1/2,0"]).status.code(), Some(0));
}

#[test]
fn family_examples() {
    let o = csymlie(&["family", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("algebra: [e1, v1] = v2\n"));
    let o = csymlie(&["family", "--a", "1 0; 0 0", "--a", "0 0; 0 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("algebra: [e1, v1] = v3, [e2, v2] = v4\n"));
    let o = csymlie(&["family", "--a", "0 1; 1 0", "--a", "0 0; 0 0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL family-column-condition (1,2)"));
}

#[test]
fn dga_build_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dga.json");
    for kind in ["complex", "symplectic"] {
        let o = csymlie(&["dga", "build", "aff-case3", "--kind", kind, "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        let o = csymlie(&["dga", "check", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
    }
    assert_eq!(csymlie(&["dga", "check", "kt4"]).status.code(), Some(0));
}

#[test]
fn catalog_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let o = csymlie(&["catalog", "export", "aff-case2", "--format", "json"]);
    let mut entry = json(&o);
    entry["id"] = "custom".into();
    fs::write(dir.path().join("custom.json"), entry.to_string()).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_csymlie"))
        .args(["catalog", "verify", "custom"])
        .env("CSYMLIE_CATALOG_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn output_is_deterministic() {
    let a = csymlie(&["dga", "check", "aff-case2", "--format", "json", "--seed", "11"]);
    let b = csymlie(&["dga", "check", "aff-case2", "--format", "json", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unreadable_input_exits_2() {
    let o = csymlie(&["verify", "/nonexistent/structure.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(csymlie(&["mirror", "no-such-entry"]).status.code(), Some(2));
}
