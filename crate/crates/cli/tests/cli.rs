use std::process::{Command, Output};

use serde_json::Value;

fn fkt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fkt")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn build_z_has_13_vertices() {
    let out = fkt(&["build", "--target", "Z"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 13);
    assert_eq!(v["triangles"].as_array().unwrap().len(), 68);
}

#[test]
fn build_k_needs_a_word() {
    let out = fkt(&["build", "--target", "K"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fkt(&["build", "--target", "K", "--phi", "[a,b]"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["cells"][0]["boundary"].as_array().unwrap().len(), 12);
}

#[test]
fn sss_merges_one_vertex() {
    let k = json(&fkt(&["build", "--target", "K", "--phi", "[a,b]"]));
    let s = json(&fkt(&["build", "--target", "sss", "--phi", "[a,b]"]));
    let n = |v: &Value, key: &str| v[key].as_array().unwrap().len();
    assert_eq!(n(&s, "vertices"), n(&k, "vertices") - 1);
    assert_eq!(n(&s, "triangles"), n(&k, "triangles"));
}

#[test]
fn invariants_of_commutator() {
    let out = fkt(&["invariants", "[a,b]"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["exp"], serde_json::json!([0, 0]));
    assert_eq!(v["mu12"], 1);
    assert_eq!(v["lcs_depth"], 2);
    let flag = json(&fkt(&["invariants", "--phi", "ab"]));
    assert_eq!(flag["mu12"], Value::Null);
}

#[test]
fn parse_errors_exit_2() {
    let out = fkt(&["invariants", "[a,b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    assert_eq!(fkt(&["certify", "c"]).status.code(), Some(2));
    assert_eq!(fkt(&["certify", "a", "--level", "f9"]).status.code(), Some(2));
    assert_eq!(fkt(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn obstruction_of_delta6_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d6.json");
    let p = path.to_str().unwrap();
    assert!(fkt(&["build", "--target", "delta6", "--out", p]).status.success());
    let out = fkt(&["obstruction", p, "--seed", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["vanishes_mod2"], false);
    assert_eq!(v["vanishes_Z"], false);
    assert_eq!(v["pairs_22"], 70);
    assert_eq!(v["seed"], 3);
    assert!(v["refutation_row"].is_u64());
}

#[test]
fn obstruction_rejects_broken_complex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"vertices":["a","b","c"],"edges":[],"triangles":[[0,1,2]]}"#).unwrap();
    let out = fkt(&["obstruction", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn realize_writes_off_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.off");
    let out = fkt(&["realize", "--phi", "[a,b]", "--format", "off", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let off = std::fs::read_to_string(&path).unwrap();
    assert!(off.starts_with("4OFF\n"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("embedding verified: true"));
    let report = json(&fkt(&["realize", "--phi", "[a,b]"]));
    assert_eq!(report["embedding"], true);
    assert_eq!(report["report"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn certify_exit_codes() {
    let pass = fkt(&["certify", "[a,[a,b]]", "--level", "f3"]);
    assert_eq!(pass.status.code(), Some(0));
    let cert = json(&pass);
    assert_eq!(cert["unlink_criterion"], true);
    assert_eq!(cert["vk_verdict"]["vanishes_Z"], true);
    assert_eq!(cert["h_realized"], true);

    let fail = fkt(&["certify", "--phi", "[a,b]", "--level", "f3"]);
    assert_eq!(fail.status.code(), Some(3));
    assert_eq!(json(&fail)["mu123"], 1);

    let ab = fkt(&["certify", "ab"]);
    assert_eq!(ab.status.code(), Some(3));
    let cert = json(&ab);
    assert_eq!(cert["in_commutator"], false);
    assert_eq!(cert["mu123"], "undefined");
    assert!(cert["vk_verdict"]["pairs_22"].as_u64().unwrap() > 0);

    assert_eq!(fkt(&["certify", "aA"]).status.code(), Some(3));
}

#[test]
fn certificates_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        fkt(&["certify", "[a,b]^2", "--level", "commutator", "--seed", "5", "--out", p.to_str().unwrap()]);
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}
