//! Replays every case in `fixtures/cases.json` and compares the report with
//! `fixtures/golden/<name>.json`. Set `VVMF_BLESS=1` to rewrite the goldens.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use serde::Deserialize;
use serde_json::Value;
use vvmf::run::{run, Command, Job};

#[derive(Deserialize)]
struct Case {
    name: String,
    command: String,
    input: String,
    #[serde(default)]
    flags: Flags,
    status: i32,
}

#[derive(Default, Deserialize)]
struct Flags {
    order: Option<usize>,
    max_pole: Option<usize>,
    bi_order: Option<(i64, i64)>,
    block: Option<Vec<usize>>,
    component: Option<usize>,
    pair: Option<(usize, usize)>,
}

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(dir().join("cases.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn command(name: &str) -> Command {
    <Command as clap::ValueEnum>::from_str(name, false).unwrap()
}

fn job(case: &Case) -> Job {
    let input: Value = serde_json::from_str(&std::fs::read_to_string(dir().join(&case.input)).unwrap()).unwrap();
    let f = &case.flags;
    Job {
        order: f.order,
        max_pole: f.max_pole,
        bi_order: f.bi_order,
        block: f.block.clone(),
        component: f.component,
        pair: f.pair,
        ..Job::new(command(&case.command), input)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

#[test]
fn every_case_matches_its_golden_report() {
    let bless = std::env::var_os("VVMF_BLESS").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let (status, report) = run(&job(&case));
        if status != case.status {
            failures.push(format!("{}: status {status}, expected {}", case.name, case.status));
        }
        let text = pretty(&report);
        let path = dir().join("golden").join(format!("{}.json", case.name));
        if bless {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == text => {}
            Ok(_) => failures.push(format!("{}: report differs from {}", case.name, path.display())),
            Err(_) => failures.push(format!("{}: missing golden {}", case.name, path.display())),
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn every_input_file_is_replayed() {
    let used: BTreeSet<String> = cases().into_iter().map(|c| c.input).collect();
    for entry in std::fs::read_dir(dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".json") && name != "cases.json" && name != "malformed.json" {
            assert!(used.contains(&name), "{name} is not used by any case");
        }
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for case in cases().iter().take(6) {
        let a = pretty(&run(&job(case)).1);
        let b = pretty(&run(&job(case)).1);
        assert_eq!(a, b, "{}", case.name);
    }
}

fn coeff(report: &Value, i: usize, j: usize, n: usize) -> String {
    let s = &report["results"]["fundamental"]["psi"][i][j];
    let offset: i64 = s["offset"].as_str().unwrap().parse().unwrap();
    s["coeffs"][n - offset as usize].as_str().unwrap().to_string()
}

#[test]
fn expand_reproduces_the_printed_coefficients() {
    let by_name = |n: &str| cases().into_iter().find(|c| c.name == n).unwrap();
    let e7 = run(&job(&by_name("e7-expand"))).1;
    let got: Vec<String> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .flat_map(|&(i, j)| (1..=2).map(move |n| (i, j, n)))
        .map(|(i, j, n)| coeff(&e7, i, j, n))
        .collect();
    assert_eq!(got, ["133", "1673", "1248", "49504", "56", "968", "-377", "-22126"]);
    let a1 = run(&job(&by_name("a1-expand"))).1;
    assert_eq!(coeff(&a1, 0, 1, 2), "1734016");
    assert_eq!(coeff(&a1, 1, 1, 2), "-86241");
}

#[test]
fn empty_principal_part_gives_the_zero_vector() {
    let case = cases().into_iter().find(|c| c.name == "e7-invert-empty").unwrap();
    let (status, report) = run(&job(&case));
    assert_eq!(status, 0);
    for s in report["results"]["vector"].as_array().unwrap() {
        assert_eq!(s["coeffs"], Value::Array(vec![]));
    }
}

fn binary(args: &[&str], env: Option<(&str, &str)>) -> (i32, String) {
    let mut p = Process::new(env!("CARGO_BIN_EXE_vvmf"));
    p.args(args).env_remove("VVMF_MAX_ORDER");
    if let Some((k, v)) = env {
        p.env(k, v);
    }
    let out = p.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_exit_statuses() {
    let f = |n: &str| dir().join(n).to_string_lossy().into_owned();
    let (s, out) = binary(&["validate", "--input", &f("e7.json")], None);
    assert_eq!(s, 0);
    let golden = std::fs::read_to_string(dir().join("golden/e7-validate.json")).unwrap();
    assert_eq!(out, golden);
    assert_eq!(binary(&["validate", "--input", &f("malformed.json")], None).0, 2);
    assert_eq!(binary(&["validate", "--input", &f("not_spectral.json")], None).0, 1);
    assert_eq!(binary(&["expand", "--input", &f("e7.json"), "--order", "x"], None).0, 2);
    let (s, out) = binary(&["expand", "--input", &f("e7.json"), "--order", "40"], Some(("VVMF_MAX_ORDER", "10")));
    assert_eq!(s, 3);
    assert!(out.contains("VVMF_MAX_ORDER"));
    assert_eq!(binary(&["shift", "--input", &f("e7.json"), "--pair", "0,0"], None).0, 3);
}
