use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn specrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specrad"))
        .args(args)
        .env_remove("SPECRAD_SHARDS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("specrad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn extremal_matches_its_cubic() {
    let out = specrad(&["extremal", "--n", "7", "--k", "2", "--delta", "3"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let f = &v["findings"][0];
    assert!((f["rho"].as_f64().unwrap() - 4.5188).abs() < 1e-4);
    assert!(f["difference"].as_f64().unwrap() <= 1e-9);
    assert_eq!(f["kappa"], 2);
    assert_eq!(f["min_degree"], 3);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn extremal_paw_as_graph6() {
    let out = specrad(&["extremal", "--n", "4", "--k", "1", "--delta", "1", "--format", "g6"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "Ct");
    let out = specrad(&["extremal", "--n", "4", "--k", "1", "--delta", "1"]);
    let rho = json_of(&out)["findings"][0]["rho"].as_f64().unwrap();
    assert!((rho - 2.17009).abs() < 1e-5);
}

#[test]
fn extremal_rejects_empty_clique() {
    let out = specrad(&["extremal", "--n", "5", "--k", "4", "--delta", "4"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("delta <= n - 2"));
}

#[test]
fn radius_of_graph6_and_edge_lists() {
    let k5 = scratch("k5.g6", "D~{\n");
    let v = json_of(&specrad(&["radius", k5.to_str().unwrap()]));
    assert!((v["findings"][0]["rho"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert_eq!(v["findings"][0]["kappa"], 4);

    let p4 = scratch("p4.txt", "# path\n0 1\n1 2\n2 3\n");
    let v = json_of(&specrad(&["radius", p4.to_str().unwrap()]));
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((v["findings"][0]["rho"].as_f64().unwrap() - golden).abs() < 1e-9);
    let x: Vec<f64> = serde_json::from_value(v["findings"][0]["perron_vector"].clone()).unwrap();
    assert!(x.len() == 4 && x.iter().all(|&e| e > 0.0));
}

#[test]
fn radius_splits_disconnected_input() {
    let f = scratch("split.txt", "n 5\n0 1\n2 3\n3 4\n");
    let v = json_of(&specrad(&["radius", f.to_str().unwrap()]));
    let comps = v["findings"][0]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(v["findings"][0]["kappa"], 0);
    assert!((v["findings"][0]["rho"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn radius_reports_parse_errors_with_lines() {
    let f = scratch("bad.txt", "0 1\n1 x\n");
    let out = specrad(&["radius", f.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_rewire_is_reproducible_across_shards() {
    let a = specrad(&["verify", "--theorem", "rewire", "--trials", "2000", "--seed", "42"]);
    let b = specrad(&[
        "verify",
        "--theorem",
        "rewire",
        "--trials",
        "2000",
        "--seed",
        "42",
        "--shards",
        "4",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert!(v["timing"].is_null());
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_small_census_and_cubic() {
    let out = specrad(&["verify", "--theorem", "main", "--n-max", "6"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert!(v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["unique"] == true && r["matches_extremal"] == true));

    let out = specrad(&["verify", "--theorem", "cubic", "--n-max", "40", "--format", "csv"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("suite,checked"));
}

#[test]
fn verify_exit_status_tracks_failures() {
    // an impossible tolerance forces failure records
    let out = specrad(&["verify", "--theorem", "cubic", "--n-max", "12", "--cubic-tol=-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json_of(&out)["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_guards_large_orders() {
    let out = specrad(&["verify", "--theorem", "lemma", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-n8"));
}
