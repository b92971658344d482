//! The command line: exit codes, artifacts, determinism and negative controls.

mod common;

use std::path::Path;
use std::process::{Command, Output};

use ahilb::cohomology::DualityMatrix;
use ahilb::group::DEFAULT_MAX_ORDER;
use ahilb::pipeline::{CheckSet, Perturbation, Pipeline};
use ahilb::relations::verify_relation_chartwise;
use serde_json::Value;

fn ahilb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahilb")).args(args).env_remove("AHILB_MAX_ORDER").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn compute_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let (json, fan, quiver) = (dir.path().join("out.json"), dir.path().join("fan.svg"), dir.path().join("q.svg"));
    let out = ahilb(&[
        "compute",
        "1/11(1,2,8)",
        "--check",
        "all",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        fan.to_str().unwrap(),
        "--quiver-svg",
        quiver.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = read_json(&json);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["triangles"].as_array().unwrap().len(), 11);
    assert!(doc["report"]["first_failure"].is_null());
    let svg = std::fs::read_to_string(&fan).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("χ10"));
    assert_eq!(std::fs::read_to_string(&quiver).unwrap().matches(r#"class="hex""#).count(), 11);
}

#[test]
fn dp6_marks_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let out = ahilb(&["compute", "1/30(25,2,3)", "--check", "all", "--quiet", "--json", json.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc = read_json(&json);
    let found = doc["vertex_marks"].as_array().unwrap().iter().any(|v| {
        let mut marks: Vec<&str> = v["marks"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
        marks.sort();
        v["case"] == "dP6" && marks == ["χ14", "χ7"]
    });
    assert!(found);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&ahilb(&["compute", "1/11(1,2,9)"])), 1, "SL violation");
    assert_eq!(code(&ahilb(&["compute", "1/11(1,2"])), 1);
    assert_eq!(code(&ahilb(&["compute"])), 1);
    assert_eq!(code(&ahilb(&["compute", "1/3(1,1,1)", "--check", "nope"])), 1);
    assert_eq!(code(&ahilb(&["frobnicate"])), 1);
    assert_eq!(code(&ahilb(&["render", "1/3(1,1,1)"])), 1);
    assert_eq!(code(&ahilb(&["compute", "1/11(1,2,8)", "--max-order", "10"])), 1);
    assert_eq!(code(&ahilb(&["--help"])), 0);
}

#[test]
fn max_order_from_the_environment() {
    let run = |env: &str, extra: &[&str]| {
        let mut args = vec!["compute", "1/11(1,2,8)", "--quiet"];
        args.extend(extra);
        Command::new(env!("CARGO_BIN_EXE_ahilb")).args(&args).env("AHILB_MAX_ORDER", env).output().unwrap()
    };
    assert_eq!(code(&run("10", &[])), 1);
    assert_eq!(code(&run("11", &[])), 0);
    assert_eq!(code(&run("10", &["--max-order", "20"])), 0, "the flag wins over the environment");
    assert_eq!(code(&run("ten", &[])), 1);
}

#[test]
fn check_prints_a_report() {
    let out = ahilb(&["check", "1/11(1,2,8)", "--check", "fan"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let status = |name: &str| {
        report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()["status"].clone()
    };
    assert_eq!(status("euler"), "pass");
    assert_eq!(status("duality"), "skipped");
    let seeded = ahilb(&["check", "--seed", "5", "--quiet"]);
    assert_eq!(code(&seeded), 0);
}

#[test]
fn failed_checks_exit_2_with_a_record() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let out = ahilb(&["compute", "1/11(1,2,8)", "--perturb", "relation", "--json", json.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["first_failure"]["check"], "relations");
    assert!(report["first_failure"]["message"].as_str().unwrap().contains("chart"));
    assert_eq!(read_json(&json)["report"], report);

    let out = ahilb(&["check", "1/11(1,2,8)", "--perturb", "duality", "--quiet"]);
    assert_eq!(code(&out), 2);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["first_failure"]["check"], "duality");
    assert!(report["first_failure"]["message"].as_str().unwrap().contains("(m, n) = (χ10, χ10)"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["1/11(1,2,8)", "1/30(25,2,3)", "1/4(1,3,0);1/4(0,1,3)"] {
        let bytes: Vec<Vec<u8>> = (0..2)
            .map(|i| {
                let path = dir.path().join(format!("{i}.json"));
                assert_eq!(code(&ahilb(&["compute", spec, "--quiet", "--json", path.to_str().unwrap()])), 0);
                std::fs::read(&path).unwrap()
            })
            .collect();
        assert_eq!(bytes[0], bytes[1], "{spec}");
    }
}

#[test]
fn perturbed_relation_has_a_witness() {
    let p = common::full(&common::spec("1/11(1,2,8)"));
    let (g, atlas) = (&p.group, p.atlas.as_ref().unwrap());
    for rel in p.relations.as_ref().unwrap() {
        let mut bad = rel.clone();
        bad.rhs[0] = g.add(bad.rhs[0], g.character_by_label(1).unwrap());
        let w = verify_relation_chartwise(g, atlas, &bad).unwrap_err();
        assert!(w.triangle < atlas.agraphs.len());
        assert_ne!(w.lhs, w.rhs);
    }
    let p = Pipeline::run_perturbed(&common::spec("1/30(25,2,3)"), DEFAULT_MAX_ORDER, CheckSet::All, Perturbation::Relation).unwrap();
    assert_eq!(p.report.first_failure.unwrap().check, "relations");
}

#[test]
fn perturbed_duality_entry_is_located() {
    let p = common::full(&common::spec("1/30(25,2,3)"));
    let g = &p.group;
    let d = &p.cohomology.as_ref().unwrap().duality;
    for (m, n) in [(0, 0), (2, 5), (10, 3)] {
        let mut bad: DualityMatrix = d.clone();
        bad.entries[m][n] += 1;
        let msg = bad.check(g).unwrap_err().to_string();
        let want = format!("(m, n) = ({}, {})", g.label(d.bundles[m]), g.label(d.surfaces[n]));
        assert!(msg.contains(&want), "{msg}");
    }
}
