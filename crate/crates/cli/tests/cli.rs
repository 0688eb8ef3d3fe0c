use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_fibcode");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("FIBCODE_MAX_CODEWORDS")
        .output()
        .unwrap()
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(BIN).args(args).env(key, val).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(path).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

/// Validates the envelope and the payload against the published schemas.
fn validate(v: &Value, payload_schema: &str) {
    for (doc, name) in [(v, "envelope"), (&v["payload"], payload_schema)] {
        let s = schema(name);
        let msgs: Vec<String> = match s.validate(doc) {
            Ok(()) => Vec::new(),
            Err(errors) => errors
                .map(|e| format!("{e} at {}", e.instance_path))
                .collect(),
        };
        assert!(msgs.is_empty(), "{name} schema violated: {msgs:?}\n{doc:#}");
    }
}

fn ok(args: &[&str], payload_schema: &str) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    validate(&v, payload_schema);
    v
}

#[test]
fn table1_matches_golden_file() {
    let out = run(&["table1", "--primes", "7,11,13,17,19,23", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/table1.json"),
    )
    .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
    validate(&serde_json::from_str(&golden).unwrap(), "table1");
}

#[test]
fn analyze_reports_profile() {
    let v = ok(&["analyze", "--p", "7", "--json"], "analyze");
    let p = &v["payload"];
    assert_eq!(
        (
            p["l"].as_u64(),
            p["alpha"].as_u64(),
            p["s"].as_u64(),
            p["beta"].as_u64()
        ),
        (Some(16), Some(8), Some(6), Some(2))
    );
    assert_eq!(p["wall"]["all_pass"], true);
    // no residue class mod 10 for 5
    let v = ok(&["analyze", "--p", "5", "--json"], "analyze");
    assert!(v["payload"]["wall"].is_null());
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 1);
}

#[test]
fn weights_keys_in_numeric_order() {
    let out = run(&["weights", "--p", "11", "--json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let compact: String = text.split_whitespace().collect();
    assert!(
        compact.contains(r#""distribution":{"0":1,"9":100,"10":20}"#),
        "{text}"
    );
    validate(&serde_json::from_str(&text).unwrap(), "weights");
}

#[test]
fn predicted_weights_need_a_proven_regime() {
    let v = ok(
        &["weights", "--p", "13", "--predicted", "--json"],
        "weights",
    );
    assert_eq!(v["payload"]["agrees"], true);
    let out = run(&["weights", "--p", "29", "--predicted", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "error");
    assert_eq!(v["payload"]["error"], "not_applicable");
    validate(&v, "error");
}

#[test]
fn code_and_dual_payloads() {
    let v = ok(&["code", "--p", "11", "--json"], "code");
    let p = &v["payload"];
    assert_eq!(
        (p["n"].as_u64(), p["k"].as_u64(), p["d"].as_u64()),
        (Some(10), Some(2), Some(9))
    );
    assert_eq!(p["classification"]["regime"], "FIB_MDS");
    assert_eq!(
        p["generator"],
        serde_json::json!([1, 1, 2, 3, 5, 8, 2, 10, 1])
    );

    let v = ok(&["dual", "--p", "19", "--json"], "dual");
    let p = &v["payload"];
    assert_eq!(
        (p["n"].as_u64(), p["k"].as_u64(), p["d"].as_u64()),
        (Some(18), Some(16), Some(3))
    );
    assert_eq!(p["route"], "macwilliams");
    // 19^16 codewords: total count goes beyond u64-safe JSON consumers but stays exact
    let total: u128 = p["distribution"]
        .as_object()
        .unwrap()
        .values()
        .map(|c| c.to_string().parse::<u128>().unwrap())
        .sum();
    assert_eq!(total, 19u128.pow(16));
}

#[test]
fn extended_variant_is_flagged_when_unproven() {
    let v = ok(
        &[
            "code",
            "--p",
            "7",
            "--variant",
            "extended",
            "--r",
            "3",
            "--json",
        ],
        "code",
    );
    assert_eq!(v["payload"]["d"], 36);
    assert_eq!(v["payload"]["experimental"], false);
    let v = ok(
        &[
            "code",
            "--p",
            "11",
            "--variant",
            "extended",
            "--r",
            "3",
            "--json",
        ],
        "code",
    );
    assert_eq!(v["payload"]["experimental"], true);
    assert!(v["payload"]["predicted"].is_null());
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn access_matches_closed_form() {
    for p in ["7", "11", "13"] {
        let v = ok(&["access", "--p", p, "--json"], "access");
        assert_eq!(v["payload"]["agrees"], true, "p={p}");
    }
    let v = ok(&["access", "--p", "7", "--json"], "access");
    assert_eq!(v["payload"]["dictatorial"], serde_json::json!([8]));
}

#[test]
fn identical_arguments_give_identical_bytes() {
    for args in [
        &["analyze", "--p", "23", "--json"][..],
        &["weights", "--p", "17", "--json"],
        &["access", "--p", "13", "--json"],
        &["dual", "--p", "11", "--json"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for f in [&a, &b] {
        let out = run(&[
            "sss",
            "deal",
            "--p",
            "13",
            "--secret",
            "4",
            "--seed",
            "77",
            "--out",
            f.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

fn minimal_sets(p: &str) -> Vec<Vec<u64>> {
    let v = ok(&["access", "--p", p, "--json"], "access");
    v["payload"]["minimal_sets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            s.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn deal_then_recover_on_every_minimal_set() {
    let dir = tempfile::tempdir().unwrap();
    for (p, secret) in [("7", "5"), ("11", "0"), ("13", "12")] {
        let file = dir.path().join(format!("shares-{p}.json"));
        let file = file.to_str().unwrap();
        ok(
            &[
                "sss", "deal", "--p", p, "--secret", secret, "--seed", "2024", "--out", file,
                "--json",
            ],
            "sss-deal",
        );
        let written: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
        let s = schema("share-file");
        assert!(s.is_valid(&written), "{written:#}");
        assert!(written.get("seed").is_none());

        for set in minimal_sets(p) {
            let list = set.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            let v = ok(
                &[
                    "sss",
                    "recover",
                    "--in",
                    file,
                    "--participants",
                    &list,
                    "--json",
                ],
                "sss-recover",
            );
            assert_eq!(
                v["payload"]["secret"].to_string(),
                secret,
                "p={p} set={list}"
            );
        }
    }
}

#[test]
fn small_coalition_is_unauthorized() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("shares.json");
    let file = file.to_str().unwrap();
    ok(
        &[
            "sss",
            "deal",
            "--p",
            "7",
            "--secret",
            "3",
            "--seed",
            "1",
            "--out",
            file,
            "--record-seed",
            "--json",
        ],
        "sss-deal",
    );
    // every minimal set has 13 members, so no 3-set can contain one
    assert!(minimal_sets("7").iter().all(|s| !s
        .iter()
        .collect::<BTreeSet<_>>()
        .is_subset(&[1, 2, 3].iter().collect())));
    let out = run(&["sss", "recover", "--in", file, "--participants", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unauthorized set"));
    let out = run(&[
        "sss",
        "recover",
        "--in",
        file,
        "--participants",
        "1,2,3",
        "--json",
    ]);
    assert_eq!(json(&out)["payload"]["error"], "unauthorized");
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--p", "seven"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // domain errors
    let out = run(&["analyze", "--p", "9", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["payload"]["error"], "not_prime");
    let out = run(&[
        "sss",
        "deal",
        "--p",
        "7",
        "--secret",
        "9",
        "--seed",
        "1",
        "--out",
        "/nonexistent/x",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_can_be_lowered_from_the_environment() {
    let out = run_env(
        &["weights", "--p", "11", "--json"],
        "FIBCODE_MAX_CODEWORDS",
        "100",
    );
    // 121 primal words, 11^8 dual words: both over the cap
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["payload"]["error"], "cap_exceeded");
    let out = run_env(&["weights", "--p", "11"], "FIBCODE_MAX_CODEWORDS", "lots");
    assert_eq!(out.status.code(), Some(1));
}
