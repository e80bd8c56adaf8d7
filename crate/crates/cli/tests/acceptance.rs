//! The acceptance gate: ten criteria, one PASS/FAIL line each, in order.
//! Every criterion runs even when an earlier one fails; the test fails at
//! the end if any did. Time budgets are part of each criterion.
//!
//! Run with `cargo test -p zerodiv-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use clap::Parser;
use serde_json::Value;
use zerodiv_cli::commands::{revalidate_all, run, Cli};
use zerodiv_cli::report::{collect_witnesses, Report};
use zerodiv_harness::{generate_universe, run_suite, Ctx, StatementReport, Universe, UniverseLimits};

struct Gate {
    failed: Vec<usize>,
}

impl Gate {
    fn check(&mut self, n: usize, budget: Duration, f: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget:?} budget")),
            Err(e) => (false, e),
        };
        if !ok {
            self.failed.push(n);
        }
        println!(
            "criterion {n}: {} {detail} ({:.2?}, budget {budget:?})",
            if ok { "PASS" } else { "FAIL" },
            elapsed
        );
    }
}

fn analyze(args: &[&str]) -> Result<Report, String> {
    let argv = ["zerodiv", "--no-cache", "analyze"].iter().chain(args);
    let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    let outcome = run(&cli).map_err(|e| e.to_string())?;
    if outcome.status != 0 {
        return Err(format!("analyze {args:?} exited {}", outcome.status));
    }
    Ok(outcome.report)
}

fn predicate(report: &Report, name: &str) -> Result<(bool, Option<Value>), String> {
    let a = report.analysis.as_ref().ok_or("no analysis")?;
    let p = a.predicate(name).ok_or(format!("no predicate {name}"))?;
    Ok((p.holds, p.witness.as_ref().map(|w| serde_json::to_value(&w.value).unwrap())))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn statement(u: &Universe, id: &str) -> Result<StatementReport, String> {
    let report = run_suite(id, &Ctx::new(u)).map_err(|e| e.to_string())?;
    let s = report.statements.into_iter().next().ok_or("no statement")?;
    if !s.passed {
        let first = s.failures.first().map(|f| format!("{}: {}", f.subject, f.detail)).unwrap_or_default();
        return Err(format!("{id}: {} failures, first {first}", s.failures.len()));
    }
    Ok(s)
}

fn criterion_1() -> Result<String, String> {
    let r = analyze(&["--ring", "Prod(Z2,Z2)", "--module", "Cyclic((0,1))"])?;
    let a = r.analysis.as_ref().ok_or("no analysis")?;
    let mut zr = a.ring.zero_divisors.clone();
    zr.sort();
    ensure(zr == ["(0,0)", "(0,1)", "(1,0)"], format!("Z(R) = {zr:?}"))?;
    let mut zm = a.module.zero_divisors.clone();
    zm.sort();
    ensure(zm == ["(0,0)", "(0,1)"], format!("Z(M) = {zm:?}"))?;
    ensure(predicate(&r, "torsion_free")?.0, "not torsion-free")?;
    let (holds, w) = predicate(&r, "auslander")?;
    ensure(!holds, "reported Auslander")?;
    let w = w.ok_or("no Auslander witness")?;
    ensure(w["element"] == "(1,0)", format!("witness {w}"))?;
    Ok("Z(R) = {(0,0),(1,0),(0,1)}, Z(M) = {(0,0),(0,1)}, torsion-free, not Auslander at (1,0)".into())
}

fn criterion_2() -> Result<String, String> {
    for n in 2..=30 {
        let module = format!("Cyclic({n})");
        let r = analyze(&["--ring", "ZZ", "--module", &module])?;
        let z = r.integers.as_ref().ok_or("no integer analysis")?;
        let get = |name: &str| z.predicates.iter().find(|p| p.name == name).map(|p| p.holds);
        ensure(get("auslander") == Some(true), format!("Z/{n} not Auslander"))?;
        ensure(get("torsion_free") == Some(false), format!("Z/{n} torsion-free"))?;
    }
    Ok("Z/n is Auslander and not torsion-free for 2 <= n <= 30".into())
}

fn criterion_3(u: &Universe) -> Result<String, String> {
    let pairs = u.members.iter().filter(|m| !m.module.is_zero()).count();
    ensure(pairs >= 60, format!("only {pairs} universe pairs"))?;
    let s = statement(u, "observations.property-a")?;
    Ok(format!("property (A) on all {} of {pairs} nonzero pairs", s.applicable))
}

fn criterion_4(u: &Universe) -> Result<String, String> {
    let mut compared = 0usize;
    let mut applicable = 0;
    for id in ["monoid.auslander", "monoid.torsion-free"] {
        let s = statement(u, id)?;
        applicable += s.applicable;
        for line in s.log.iter().filter(|l| l.contains("compared with search on")) {
            let n: usize = line
                .rsplit("compared with search on ")
                .next()
                .and_then(|t| t.split_whitespace().next())
                .and_then(|t| t.parse().ok())
                .ok_or(format!("unreadable log line {line}"))?;
            compared += n;
        }
    }
    ensure(compared > 0, "the criterion was never compared with search")?;
    Ok(format!(
        "{applicable} extension verdicts agree with the base; criterion = search on {compared} (f, M) pairs"
    ))
}

fn criterion_5(u: &Universe) -> Result<String, String> {
    let s = statement(u, "series.witness")?;
    let mut products = 0usize;
    for line in &s.log {
        if let Some(n) = line.split(": ").nth(1).and_then(|t| t.split(' ').next()).and_then(|t| t.parse::<usize>().ok()) {
            if line.contains("zero products") {
                products += n;
            }
        }
    }
    ensure(products > 0, "no zero products enumerated")?;
    Ok(format!("{products} zero products f g = 0, each yields m != 0 with f m = 0"))
}

fn criterion_6(u: &Universe) -> Result<String, String> {
    let s = statement(u, "localization.auslander")?;
    let probe = s
        .log
        .iter()
        .find(|l| l.starts_with("probe") && l.contains("Prod(Z2,Z2)") && l.contains("Cyclic((0,1))"))
        .ok_or("no probe line for Prod(Z2,Z2) / Cyclic((0,1))")?;
    Ok(format!("{} localizations Auslander; log: {probe}", s.applicable))
}

fn criterion_7(u: &Universe) -> Result<String, String> {
    let s = statement(u, "torsion.characterization")?;
    Ok(format!("kernel zero iff Z(M) in Z(R) on {} modules, integer cases included", s.applicable))
}

fn criterion_8(u: &Universe) -> Result<String, String> {
    let r = analyze(&["--ring", "Z2", "--algebra", "Prod(Z2,Z2)"])?;
    let b = r.analysis.as_ref().and_then(|a| a.algebra.as_ref()).ok_or("no algebra analysis")?;
    let m = b.predicates.iter().find(|p| p.name == "mccoy").ok_or("no mccoy predicate")?;
    ensure(!m.holds, "Prod(Z2,Z2) over Z2 accepted")?;
    let w = serde_json::to_value(&m.witness.as_ref().ok_or("no witness")?.value).unwrap();
    ensure(w["f"] == "(1,0)" && w["g"] == "(0,1)", format!("witness {w}"))?;
    for ring in &u.rings {
        let key = ring.key();
        let r = analyze(&["--ring", key, "--algebra", key])?;
        let b = r.analysis.as_ref().and_then(|a| a.algebra.as_ref()).ok_or("no algebra analysis")?;
        ensure(
            b.predicates.iter().any(|p| p.name == "mccoy" && p.holds),
            format!("{key} over itself rejected"),
        )?;
    }
    Ok(format!(
        "rejects Prod(Z2,Z2)/Z2 at ((1,0),(0,1)); accepts all {} universe rings over themselves",
        u.rings.len()
    ))
}

fn criterion_9(u: &Universe) -> Result<String, String> {
    let plain = statement(u, "algebra.mccoy-tensor")?;
    let tf = statement(u, "algebra.mccoy-tensor-tf")?;
    ensure(
        plain.instances.len() >= 3,
        format!("only {} non-trivial instances", plain.instances.len()),
    )?;
    Ok(format!(
        "{} + {} base changes hold; {} non-trivial algebras listed",
        plain.applicable,
        tf.applicable,
        plain.instances.len()
    ))
}

fn criterion_10() -> Result<String, String> {
    let suite = || {
        Command::new(env!("CARGO_BIN_EXE_zerodiv"))
            .args(["--no-cache", "--format", "json", "theorems", "--suite", "all"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (suite()?, suite()?);
    ensure(a.status.success() && b.status.success(), "a suite run failed")?;
    ensure(a.stdout == b.stdout, "the two reports differ")?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("suite.json");
    std::fs::write(&path, &a.stdout).map_err(|e| e.to_string())?;
    let value: Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    let mut records = Vec::new();
    collect_witnesses(&value, &mut records);
    ensure(!records.is_empty(), "the suite emitted no witnesses")?;
    let out = Command::new(env!("CARGO_BIN_EXE_zerodiv"))
        .args(["--no-cache", "--format", "json", "analyze", "--witnesses"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    let report: Report = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let v = report.revalidation.ok_or("no revalidation section")?;
    ensure(
        out.status.success() && v.failures.is_empty() && v.checked == records.len(),
        format!("{} of {} witnesses rejected", v.failures.len(), v.checked),
    )?;
    // The same records through the library entry point.
    ensure(revalidate_all(&records).failures.is_empty(), "library re-validation disagrees")?;
    Ok(format!(
        "two full runs byte-identical ({} bytes); {} of {} witnesses re-validate",
        a.stdout.len(),
        v.confirmed,
        v.checked
    ))
}

#[test]
fn acceptance() {
    let mut gate = Gate { failed: Vec::new() };
    gate.check(1, Duration::from_secs(1), criterion_1);
    gate.check(2, Duration::from_secs(1), criterion_2);

    let start = Instant::now();
    let u = generate_universe(UniverseLimits::default());
    let generation = start.elapsed();
    println!("universe: {:?} ({generation:.2?})", u.counts);

    // Criterion 3 pays for the universe it checks.
    gate.check(3, Duration::from_secs(120).saturating_sub(generation), || criterion_3(&u));
    gate.check(4, Duration::from_secs(600), || criterion_4(&u));
    gate.check(5, Duration::from_secs(300), || criterion_5(&u));
    gate.check(6, Duration::from_secs(300), || criterion_6(&u));
    gate.check(7, Duration::from_secs(60), || criterion_7(&u));
    gate.check(8, Duration::from_secs(60), || criterion_8(&u));
    gate.check(9, Duration::from_secs(600), || criterion_9(&u));
    gate.check(10, Duration::from_secs(900), criterion_10);
    assert!(gate.failed.is_empty(), "failing criteria: {:?}", gate.failed);
}
