use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_str().unwrap().to_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coverforge"))
        .args(args)
        .env_remove("COVERFORGE_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn missing_cover_exits_with_two() {
    let o = run(&["exists", "--fan", &fixture("p2.json"), "--orders", "2,3,5"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("Z_5 → G_max not injective at divisor 2"), "{out}");
}

#[test]
fn existing_cover_on_the_plane() {
    let o = run(&["exists", "--fan", &fixture("p2.json"), "--orders", "2,3,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cover exists; G_max ≅ Z_6"));
}

#[test]
fn maximal_double_cover_of_the_plane() {
    let o = run(&[
        "maxcover", "--fan", &fixture("p2.json"), "--orders", "2,2,2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["galois_group"]["invariant_factors"], serde_json::json!([2, 2]));
    assert_eq!(v["index"], 4);
    assert_eq!(v["building_data"]["status"], "verified");
}

#[test]
fn maxcover_output_feeds_verify() {
    let o = run(&[
        "maxcover", "--fan", &fixture("p2.json"), "--orders", "2,3,6", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let f = temp(&stdout(&o));
    let o = run(&[
        "verify",
        "--fan",
        &fixture("p2.json"),
        "--orders",
        "2,3,6",
        "--sublattice",
        f.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["totally_ramified"], true);
    assert_eq!(v["building_data"]["status"], "verified");
}

#[test]
fn verify_rejects_wrong_orders() {
    let f = temp(r#"{"rank": 2, "basis": [[2, 0], [0, 2]]}"#);
    let o = run(&[
        "verify",
        "--fan",
        &fixture("p2.json"),
        "--orders",
        "2,2,3",
        "--sublattice",
        f.path().to_str().unwrap(),
    ]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn square_fan_class_group() {
    let o = run(&["clgroup", "--fan", &fixture("square_torsion.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Cl ≅ Z^2 ⊕ Z_2"), "{out}");
    assert!(out.contains("torsion cover group Z_2"), "{out}");
}

#[test]
fn malformed_fan_names_the_field() {
    let f = temp(r#"{"rank": 2, "rays": [[1, 0], [0, true]], "cones": [], "complete": true}"#);
    let o = run(&["clgroup", "--fan", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("rays[1][1]"), "{err}");
}

#[test]
fn incomplete_fan_is_an_error() {
    let f = temp(r#"{"rank": 2, "rays": [[1, 0], [0, 1]], "cones": [[0, 1]], "complete": false}"#);
    let o = run(&["clgroup", "--fan", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bound_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_coverforge"))
        .args(["covers", "--fan", &fixture("p2.json"), "--orders", "2,2,2"])
        .env("COVERFORGE_BOUND", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("capacity"), "{}", stderr(&o));
    let o = run(&["covers", "--fan", &fixture("p2.json"), "--orders", "2,2,2", "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn abstract_class_group() {
    let o = run(&["maxcover", "--abstract", &fixture("p2_abstract.json"), "--orders", "2,3,6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("Galois group Z_6"));
    let o = run(&["covers", "--abstract", &fixture("p2_abstract.json"), "--orders", "2,2,2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn covers_of_the_line() {
    let o = run(&[
        "covers", "--fan", &fixture("p1.json"), "--orders", "2,2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"], 2);
    let indices: Vec<_> = v["covers"].as_array().unwrap().iter().map(|c| c["index"].clone()).collect();
    assert_eq!(indices, [1, 2]);
}

#[test]
fn crosscheck_on_the_product() {
    let o = run(&[
        "crosscheck", "--fan", &fixture("p1xp1.json"), "--orders", "2,2,2,2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["g_max"], serde_json::json!([2, 2]));
    assert_eq!(v["subgroup_count"], 5);
    assert_eq!(v["cover_count"], 5);
    assert_eq!(v["brute_force_count"], 5);
}

#[test]
fn conflicting_inputs_are_a_usage_error() {
    let o = run(&[
        "clgroup", "--fan", &fixture("p2.json"), "--abstract", &fixture("p2_abstract.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["clgroup"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "covers", "--fan", &fixture("hirzebruch_a.json"), "--orders", "2,2,2,2", "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
