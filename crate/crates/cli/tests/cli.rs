//! The binary end to end: exit statuses, report contents, cache behaviour.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zerodiv(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zerodiv"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("ZERODIV_CACHE_DIR", dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn predicate<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["analysis"]["predicates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == name)
        .unwrap_or_else(|| panic!("no predicate {name}"))
}

#[test]
fn product_quotient_report() {
    let out = zerodiv(None, &["--format", "json", "analyze", "--ring", "Prod(Z2,Z2)", "--module", "Cyclic((0,1))"]);
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    let mut z: Vec<&str> = r["analysis"]["ring"]["zero_divisors"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    z.sort();
    assert_eq!(z, ["(0,0)", "(0,1)", "(1,0)"]);
    assert_eq!(r["analysis"]["module"]["zero_divisors"], serde_json::json!(["(0,0)", "(0,1)"]));
    assert_eq!(predicate(&r, "torsion_free")["holds"], true);
    let a = predicate(&r, "auslander");
    assert_eq!(a["holds"], false);
    assert_eq!(a["witness"]["value"]["element"], "(1,0)");
    assert!(r.get("timing").is_none());

    let text = zerodiv(None, &["analyze", "--ring", "Prod(Z2,Z2)", "--module", "Cyclic((0,1))"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("Z(M) = {(0,0), (0,1)}"), "{text}");
    assert!(text.contains("element=(1,0)"), "{text}");
}

#[test]
fn timing_is_opt_in() {
    let r = json(&zerodiv(None, &["--format", "json", "--timing", "analyze", "--ring", "Z6"]));
    assert!(r["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn dsl_errors_exit_two_with_a_caret() {
    let out = zerodiv(None, &["analyze", "--ring", "Prod(Z2,Z3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('^'), "{err}");

    let out = zerodiv(None, &["analyze", "--ring", "PolyQuot(Z4, 2*x^2+1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("monic"));

    assert_eq!(zerodiv(None, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(zerodiv(None, &["theorems", "--suite", "nothing.*"]).status.code(), Some(2));
    assert_eq!(zerodiv(None, &["search", "--hyp", "auslander &", "--concl", "flat"]).status.code(), Some(2));
}

/// `(2X + 2) * 2 = 0` over `Z4`; `c(f) c(g) = (2)(2) = 0`, so the procedure
/// stops at `k = 1` and returns the least nonzero element of `c(g) = (2)`.
#[test]
fn witness_extraction() {
    let r = json(&zerodiv(None, &["--format", "json", "witness", "--f", "2*X+2", "--g", "2", "--ring", "Z4"]));
    assert_eq!(r["extraction"]["m"], "2");
    assert_eq!(r["revalidation"]["confirmed"], 1);

    let out = zerodiv(None, &["witness", "--f", "X+1", "--g", "2", "--ring", "Z4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn integers_go_through_the_adapter() {
    let r = json(&zerodiv(None, &["--format", "json", "analyze", "--ring", "ZZ", "--module", "Cyclic(12)"]));
    let preds = r["integers"]["predicates"].as_array().unwrap();
    let get = |n: &str| preds.iter().find(|p| p["name"] == n).unwrap();
    assert_eq!(get("auslander")["holds"], true);
    assert_eq!(get("torsion_free")["holds"], false);
    assert_eq!(get("torsion_free")["witness"]["value"]["value"], 2);
}

#[test]
fn cache_hits_corruption_and_bypass_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "analyze", "--ring", "Z12", "--module", "Cyclic(4)"];
    let first = zerodiv(Some(dir.path()), &args);
    assert!(first.status.success());
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!entries.is_empty());

    let second = zerodiv(Some(dir.path()), &args);
    assert_eq!(first.stdout, second.stdout);
    assert!(second.stderr.is_empty(), "{}", String::from_utf8_lossy(&second.stderr));

    for e in &entries {
        std::fs::write(e, b"{\"format\": 1}").unwrap();
    }
    let third = zerodiv(Some(dir.path()), &args);
    assert_eq!(first.stdout, third.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("discarding cache entry"));

    let bypass = zerodiv(None, &args);
    assert_eq!(first.stdout, bypass.stdout);
}

#[test]
fn reported_witnesses_revalidate_and_forgeries_do_not() {
    let dir = tempfile::tempdir().unwrap();
    let out = zerodiv(
        None,
        &[
            "--format",
            "json",
            "analyze",
            "--ring",
            "Prod(Z2,Z2)",
            "--module",
            "Cyclic((0,1))",
            "--algebra",
            "Algebra(Prod(Z2,Z2),Z2)",
        ],
    );
    let path = dir.path().join("report.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let r = json(&zerodiv(None, &["--format", "json", "analyze", "--witnesses", path.to_str().unwrap()]));
    assert!(r["revalidation"]["checked"].as_u64().unwrap() >= 5);
    assert_eq!(r["revalidation"]["failures"], serde_json::json!([]));

    let forged = String::from_utf8(out.stdout).unwrap().replace("\"(1,0)\"", "\"(0,1)\"");
    std::fs::write(&path, forged).unwrap();
    let out = zerodiv(None, &["analyze", "--witnesses", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn small_suite_passes() {
    let out = zerodiv(None, &["theorems", "--suite", "examples.*", "--max-ring", "8", "--max-module", "64"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS examples.product-quotient"), "{text}");
}

#[test]
fn search_finds_the_product_quotient() {
    let r = json(&zerodiv(
        None,
        &["--format", "json", "search", "--hyp", "torsion_free", "--concl", "auslander", "--max-ring", "8"],
    ));
    let hits = r["search"]["hits"].as_array().unwrap();
    assert!(hits.iter().any(|h| h["ring"] == "Prod(Z2,Z2)" && h["module"] == "Cyclic((0,1))"));
}
