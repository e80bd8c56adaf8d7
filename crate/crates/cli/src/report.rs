//! The report document and its text rendering.
//!
//! One JSON object per invocation. Field order is declaration order and every
//! collection is a vector or a sorted map, so equal inputs give equal bytes.
//! The text form is rendered from this structure and nothing else.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use zerodiv_harness::{SearchReport, SuiteReport, WitnessRecord};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub analysis: Option<Analysis>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub integers: Option<IntegerAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub suite: Option<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<SearchReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extraction: Option<Extraction>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub revalidation: Option<Revalidation>,
    /// Only with `--timing`; reports without it are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str, input: BTreeMap<String, String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            analysis: None,
            integers: None,
            suite: None,
            search: None,
            extraction: None,
            revalidation: None,
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Every witness record in the report, in document order.
    pub fn witnesses(&self) -> Vec<WitnessRecord> {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = Vec::new();
        collect_witnesses(&value, &mut out);
        out
    }
}

/// Finds witness records anywhere in a JSON document.
pub fn collect_witnesses(value: &serde_json::Value, out: &mut Vec<WitnessRecord>) {
    match value {
        serde_json::Value::Object(map) => {
            if map.contains_key("claim") && map.contains_key("value") {
                if let Ok(rec) = serde_json::from_value::<WitnessRecord>(value.clone()) {
                    out.push(rec);
                    return;
                }
            }
            for v in map.values() {
                collect_witnesses(v, out);
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                collect_witnesses(v, out);
            }
        }
        _ => {}
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSummary {
    pub descriptor: String,
    pub size: usize,
    pub zero_divisors: Vec<String>,
    pub units: usize,
    pub ideals: usize,
    pub domain: bool,
    pub field: bool,
    pub local: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSummary {
    pub descriptor: String,
    /// The ring the module lives over; differs from the input ring for tensor products.
    pub ring: String,
    pub size: usize,
    pub zero_divisors: Vec<String>,
    pub natural_map_kernel: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateResult {
    pub name: String,
    pub holds: bool,
    /// Vacuous verdict on a zero module.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub descriptor: String,
    pub size: usize,
    pub predicates: Vec<PredicateResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub convention: String,
    pub ring: RingSummary,
    pub module: ModuleSummary,
    pub predicates: Vec<PredicateResult>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algebra: Option<AlgebraSummary>,
}

impl Analysis {
    pub fn predicate(&self, name: &str) -> Option<&PredicateResult> {
        self.predicates.iter().find(|p| p.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerAnalysis {
    pub module: String,
    pub degenerate: bool,
    /// `k` is a zero-divisor on `Z/n` iff `gcd(k, n) > 1`; on `Z` iff `k = 0`.
    pub zero_divisor_rule: String,
    pub contains_defining_ideal: bool,
    pub predicates: Vec<PredicateResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub f: String,
    pub g: String,
    pub m: String,
    pub witness: WitnessRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevalidationFailure {
    pub record: WitnessRecord,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Revalidation {
    pub checked: usize,
    pub confirmed: usize,
    pub failures: Vec<RevalidationFailure>,
}

fn witness_line(w: &WitnessRecord) -> String {
    let value = serde_json::to_value(&w.value).expect("witness values serialize");
    let kind = value["kind"].as_str().unwrap_or_default().to_string();
    let mut fields: Vec<String> = Vec::new();
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map.into_iter().filter(|(k, _)| k != "kind") {
            fields.push(match v {
                serde_json::Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            });
        }
    }
    format!("{} ({kind})", fields.join(" "))
}

fn predicates(out: &mut String, preds: &[PredicateResult], indent: &str) {
    for p in preds {
        let _ = write!(out, "{indent}{:<24} {}", p.name, p.holds);
        if p.degenerate {
            out.push_str(" (degenerate)");
        }
        if let Some(w) = &p.witness {
            let _ = write!(out, "  witness: {}", witness_line(w));
        }
        out.push('\n');
    }
}

fn set(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

/// The human-readable form of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (schema {})", r.command, r.schema_version);
    for (k, v) in &r.input {
        let _ = writeln!(out, "  {k}: {v}");
    }
    if let Some(a) = &r.analysis {
        let _ = writeln!(
            out,
            "ring {}: {} elements, {} ideals, {} units{}{}",
            a.ring.descriptor,
            a.ring.size,
            a.ring.ideals,
            a.ring.units,
            if a.ring.field { ", field" } else if a.ring.domain { ", domain" } else { "" },
            if a.ring.local { ", local" } else { "" },
        );
        let _ = writeln!(out, "  Z(R) = {}", set(&a.ring.zero_divisors));
        let _ = writeln!(out, "module {} over {}: {} elements", a.module.descriptor, a.module.ring, a.module.size);
        let _ = writeln!(out, "  Z(M) = {}", set(&a.module.zero_divisors));
        let _ = writeln!(out, "  ker(M -> M ⊗ Q) = {}", set(&a.module.natural_map_kernel));
        let _ = writeln!(out, "predicates ({} convention):", a.convention);
        predicates(&mut out, &a.predicates, "  ");
        if let Some(b) = &a.algebra {
            let _ = writeln!(out, "algebra {}: {} elements", b.descriptor, b.size);
            predicates(&mut out, &b.predicates, "  ");
        }
    }
    if let Some(z) = &r.integers {
        let _ = writeln!(out, "Z-module {}{}", z.module, if z.degenerate { " (zero module)" } else { "" });
        let _ = writeln!(out, "  zero-divisors: {}", z.zero_divisor_rule);
        let _ = writeln!(out, "  Z(M) contains the defining ideal: {}", z.contains_defining_ideal);
        predicates(&mut out, &z.predicates, "  ");
    }
    if let Some(s) = &r.suite {
        let _ = writeln!(out, "universe: {}", s.universe.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "));
        let b = &s.bounds;
        let _ = writeln!(
            out,
            "bounds: degree={} precision={} oracle_ring={} oracle_module={} extraction_ring={}; convention {}",
            b.degree, b.precision, b.oracle_ring, b.oracle_module, b.extraction_ring, s.convention
        );
        for st in &s.statements {
            let _ = writeln!(
                out,
                "{} {:<36} applicable={} checked={} skipped={} failures={} instances={}",
                if st.passed { "PASS" } else { "FAIL" },
                st.id,
                st.applicable,
                st.checked,
                st.skipped,
                st.failures.len(),
                st.instances.len()
            );
            for w in &st.warnings {
                let _ = writeln!(out, "     warning: {w}");
            }
            for f in &st.failures {
                let _ = writeln!(out, "     counterexample {}: {}", f.subject, f.detail);
                for w in &f.witnesses {
                    let _ = writeln!(out, "       {}: {}", w.claim.name(), witness_line(w));
                }
            }
        }
        let _ = writeln!(out, "{}", if s.passed { "all statements passed" } else { "some statements failed" });
    }
    if let Some(s) = &r.search {
        let _ = writeln!(out, "search: {} and not {}", s.hypothesis, s.conclusion);
        let _ = writeln!(
            out,
            "  examined={} applicable={} undecided={} hits={}",
            s.examined,
            s.applicable,
            s.undecided,
            s.hits.len()
        );
        for h in &s.hits {
            let _ = writeln!(out, "  {} / {}", h.ring, h.module);
            for w in &h.witnesses {
                let _ = writeln!(out, "    {} = {}: {}", w.claim.name(), w.holds, witness_line(w));
            }
        }
    }
    if let Some(e) = &r.extraction {
        let _ = writeln!(out, "f = {}\ng = {}\nm = {}", e.f, e.g, e.m);
    }
    if let Some(v) = &r.revalidation {
        let _ = writeln!(out, "witnesses: {} checked, {} confirmed", v.checked, v.confirmed);
        for f in &v.failures {
            let _ = writeln!(out, "  rejected {} on {}: {}", f.record.claim.name(), f.record.ring, f.reason);
        }
    }
    if let Some(t) = &r.timing {
        let _ = writeln!(out, "elapsed: {} ms", t.elapsed_ms);
    }
    out
}
