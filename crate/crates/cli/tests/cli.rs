use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_constadesign")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_all_q3_passes() {
    let out = run(&["verify-all", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert!(v["total"].as_u64().unwrap() >= 20);
    assert_eq!(v["tower"]["p"], 3);
    assert!(v["first_failure"].is_null());
}

#[test]
fn verify_all_accepts_p_and_m() {
    let a = run(&["verify-all", "--q", "4"]);
    let b = run(&["verify-all", "--p", "2", "--m", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_r_is_a_precondition_error() {
    let out = run(&["build", "--q", "3", "--family", "A", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "InvalidR");
    assert_eq!(v["schema"], 1);
}

#[test]
fn non_prime_power_is_rejected() {
    let out = run(&["tower", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "NotPrimePower");
}

#[test]
fn analytic_q13_enumerator() {
    let out = run(&["wdist", "--q", "13", "--family", "B", "--r", "4", "--analytic"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let nz: Vec<(u64, u64)> = v["distribution"]["nonzero"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t[0].as_u64().unwrap(), t[1].as_u64().unwrap()))
        .collect();
    assert_eq!(nz, vec![(156, 371280), (168, 376477920), (169, 62403600), (170, 376477920)]);
    assert_eq!(v["d"], 156);
    assert_eq!(v["dual_d"], 4);
    assert_eq!(v["tower"]["q"], 13);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let args = |t: &'static str| ["wdist", "--q", "4", "--family", "A", "--r", "5", "--threads", t];
    let one = run(&args("1"));
    let many = run(&args("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(json(&one)["matches_analytic"], true);
}

#[test]
fn wdist_csv() {
    let out = run(&["wdist", "--q", "3", "--family", "B", "--r", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "weight,count\n0,1\n6,240\n8,2160\n9,2000\n10,2160\n");
}

#[test]
fn designs_report_and_blocks() {
    let out = run(&["designs", "--q", "3", "--family", "A", "--r", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["primal"]["design"]["b"], 30);
    assert_eq!(v["primal"]["design"]["eta"], 5);
    assert_eq!(v["complement"]["steiner"], true);
    assert_eq!(v["dual"]["design"]["eta"], 1);

    let csv = run(&["designs", "--q", "3", "--family", "A", "--r", "4", "--side", "dual", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert!(text.starts_with("block,points\n"));
}

#[test]
fn subfield_family_b_is_ovoid() {
    let out = run(&["subfield", "--q", "4", "--family", "B", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["subcode"]["k_sub"], 4);
    assert_eq!(v["ovoid"]["matches_enumerator"], true);
    assert_eq!(v["delsarte"]["equal"], true);
}

#[test]
fn equations_kinds() {
    let out = run(&["equations", "--q", "3", "--kind", "unit-circle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["pairs"], 80);

    let out = run(&["equations", "--q", "9", "--kind", "conjecture"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "NotOdd");

    let out = run(&["equations", "--q", "5", "--kind", "preimage", "--family", "A", "--r", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["holds"], true);
}

#[test]
fn eaqecc_pair() {
    let out = run(&["eaqecc", "--q", "3", "--family", "A", "--r", "4", "--family2", "B", "--r2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["primal"]["c"], 6);
    assert_eq!(v["primal"]["net_rate"], "-1/5");
    assert_eq!(v["dual"]["k"], 6);
    assert_eq!(v["dual"]["net_rate"], "1/5");
}

#[test]
fn lrc_and_out_file() {
    let path = std::env::temp_dir().join(format!("constadesign-lrc-{}.json", std::process::id()));
    let out = run(&["lrc", "--q", "5", "--family", "B", "--r", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["lrc"]["locality"], 19);
    assert_eq!(v["lrc"]["cm_bound"], 22);
    assert_eq!(v["lrc"]["dimension_optimal"], true);
}

#[test]
fn missing_r_without_analytic() {
    let out = run(&["wdist", "--q", "3", "--family", "A"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "Usage");
}
