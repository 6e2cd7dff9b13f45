use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
  format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn hyperpd(args: &[&str]) -> Output {
  Command::new(env!("CARGO_BIN_EXE_hyperpd"))
    .args(args)
    .env_remove("HYPERPD_CHAR")
    .output()
    .expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
  let o = hyperpd(args);
  assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
  serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn lattice_of_example_has_21_elements() {
  let v = json_out(&["lattice", "--in", "ab,bcg,cdg,de,efg"]);
  assert_eq!(v["atoms"], 5);
  assert_eq!(v["elements"].as_array().unwrap().len(), 21);
  let o = hyperpd(&["lattice", "--in", "ab,bcg,cdg,de,efg", "--output", "dot"]);
  assert!(String::from_utf8(o.stdout).unwrap().starts_with("digraph"));
}

#[test]
fn pd_verify_reports_methods() {
  let v = json_out(&["pd", "--in", "ab,bcg,cdg,de,efg", "--verify", "--trace"]);
  assert_eq!(v["pd"], 4);
  assert_eq!(v["input_oracle"], 4);
  let comps = v["per_component"].as_array().unwrap();
  assert!(comps.iter().all(|c| c["oracle"] == c["pd"]));
  assert_eq!(v["trace"][0]["rule"], "union_edge_removed");
}

#[test]
fn domain_errors_exit_1_with_json() {
  let o = hyperpd(&["pd", "--in", "a^2b"]);
  assert_eq!(o.status.code(), Some(1));
  let e: Value = serde_json::from_slice(&o.stderr).unwrap();
  assert_eq!(e["error"], "not_square_free");
  let o = hyperpd(&["betti", "--in", "ab,bc", "--char", "4"]);
  assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
  assert_eq!(hyperpd(&["pd"]).status.code(), Some(2));
  assert_eq!(hyperpd(&["frobnicate", "--in", "ab"]).status.code(), Some(2));
  assert_eq!(hyperpd(&["betti", "--in", "ab", "--output", "dot"]).status.code(), Some(2));
  assert_eq!(hyperpd(&["pd", "--in", &fixture("figure1_lattice.json")]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
  for args in [
    &["pd", "--in", "abo,bcp,cd,deq,ef,fgr,gh,hi,jk,kl,mn", "--trace"][..],
    &["betti", "--in", "ab,bcg,cdg,de,efg"][..],
    &["check", "--in", &fixture("figure4.json")][..],
    &["hypergraph", "--in", &fixture("example44.txt"), "--output", "dot"][..],
  ] {
    assert_eq!(hyperpd(args).stdout, hyperpd(args).stdout);
  }
}

#[test]
fn char_comes_from_environment() {
  let o = Command::new(env!("CARGO_BIN_EXE_hyperpd"))
    .args(["betti", "--in", "ab,bc,cd"])
    .env("HYPERPD_CHAR", "3")
    .output()
    .unwrap();
  let v: Value = serde_json::from_slice(&o.stdout).unwrap();
  assert_eq!(v["char"], 3);
}

#[test]
fn fixtures_round_trip() {
  for name in ["example44.txt", "figure2.txt"] {
    let h = json_out(&["hypergraph", "--in", &fixture(name)]);
    let again = json_out(&["hypergraph", "--in", &h.to_string()]);
    assert_eq!(h, again);
  }
  let h = json_out(&["hypergraph", "--in", &fixture("figure4.json")]);
  assert_eq!(h, json_out(&["hypergraph", "--in", &h.to_string()]));
  let l = json_out(&["lattice", "--in", &fixture("figure1_lattice.json")]);
  assert_eq!(l, json_out(&["lattice", "--in", &l.to_string()]));
}

#[test]
fn coordinatize_labelled_lattice() {
  let o = hyperpd(&[
    "coordinatize",
    "--in",
    &fixture("figure1_lattice.json"),
    "--labels",
    &fixture("figure1_labels.json"),
    "--output",
    "text",
  ]);
  assert_eq!(String::from_utf8(o.stdout).unwrap(), "bcd, abc, a^2c, a^2b\n");
}

#[test]
fn reduce_and_check_reports() {
  let v = json_out(&["reduce", "--in", &fixture("figure4.json")]);
  assert!(!v["trace"].as_array().unwrap().is_empty());
  let c = json_out(&["check", "--in", &fixture("figure4.json")]);
  assert_eq!(c["preconditions_hold"], true);
  assert_eq!(c["separated"], true);
  let c = json_out(&["check", "--in", "ab,bcg,cdg,de,efg"]);
  assert_eq!(c["union_edges"], serde_json::json!([[2, 3, 5]]));
  assert_eq!(c["meets_of_irreducibles"], true);
}

#[test]
fn out_flag_writes_file() {
  let path = std::env::temp_dir().join(format!("hyperpd-out-{}.dot", std::process::id()));
  let o = hyperpd(&["hypergraph", "--in", "ab,bc", "--output", "dot", "--out", path.to_str().unwrap()]);
  assert!(o.status.success() && o.stdout.is_empty());
  assert!(std::fs::read_to_string(&path).unwrap().starts_with("graph"));
  let _ = std::fs::remove_file(path);
}
