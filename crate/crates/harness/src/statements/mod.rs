//! The statement registry: every in-scope result as an executable check.
//!
//! A statement filters universe members by its hypotheses, evaluates its
//! conclusion on the survivors and reports counts, failures with witnesses,
//! notable instances and an applicability log. Evaluation runs in parallel;
//! results are merged in universe order, so reports are deterministic.

mod algebras;
mod extensions;
mod families;
mod misc;

use std::collections::BTreeMap;

use globset::Glob;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use zerodiv_core::{FiniteModule, Verdict, ZeroDivisorConvention};

use crate::universe::{Member, Universe};
use crate::witness::{record, Claim, Subject, WitnessRecord};
use crate::HarnessError;

/// Degree and size bounds for extension statements. Reports echo them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest exponent in enumerated polynomials.
    pub degree: u32,
    /// Series precision.
    pub precision: u32,
    /// Ring and module size caps for the criterion/search comparison.
    pub oracle_ring: usize,
    pub oracle_module: usize,
    /// Ring size cap for the exhaustive witness-extraction sweep.
    pub extraction_ring: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            degree: 2,
            precision: 8,
            oracle_ring: 6,
            oracle_module: 8,
            extraction_ring: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Implication,
    Iff,
    Example,
    Observation,
}

/// A member, an instance or a counterexample, with re-checkable witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub subject: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<WitnessRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementReport {
    pub id: String,
    pub title: String,
    pub kind: Kind,
    pub instantiation: String,
    /// Members (or member combinations) satisfying the hypotheses.
    pub applicable: usize,
    /// Conclusion evaluations, including cross-checks.
    pub checked: usize,
    /// Members excluded by size bounds or degeneracy.
    pub skipped: usize,
    pub passed: bool,
    pub failures: Vec<Finding>,
    pub instances: Vec<Finding>,
    pub log: Vec<String>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

/// The outcome of one statement over a slice of the universe.
#[derive(Default)]
pub(crate) struct Tally {
    pub applicable: usize,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<Finding>,
    pub instances: Vec<Finding>,
    pub log: Vec<String>,
}

impl Tally {
    pub fn merge(&mut self, other: Tally) {
        self.applicable += other.applicable;
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
        self.instances.extend(other.instances);
        self.log.extend(other.log);
    }

    pub fn fail(&mut self, subject: impl Into<String>, detail: impl Into<String>, witnesses: Vec<WitnessRecord>) {
        self.failures.push(Finding {
            subject: subject.into(),
            detail: detail.into(),
            witnesses,
        });
    }

    pub fn instance(&mut self, subject: impl Into<String>, detail: impl Into<String>, witnesses: Vec<WitnessRecord>) {
        self.instances.push(Finding {
            subject: subject.into(),
            detail: detail.into(),
            witnesses,
        });
    }

    /// Counts one evaluation of `holds`; on failure records `witnesses`.
    pub fn expect(&mut self, holds: bool, subject: &str, detail: &str, witnesses: impl FnOnce() -> Vec<WitnessRecord>) {
        self.checked += 1;
        if !holds {
            self.fail(subject, detail, witnesses());
        }
    }
}

/// Descriptors for records: the input ring and the module and algebra built over it.
#[derive(Clone, Debug, Default)]
pub(crate) struct Described {
    pub ring: String,
    pub module: Option<String>,
    pub algebra: Option<String>,
}

impl Described {
    pub fn member(m: &Member) -> Described {
        Described {
            ring: m.ring.key().to_string(),
            module: Some(m.spec.to_string()),
            algebra: None,
        }
    }

    pub fn module(ring: &str, module: impl ToString) -> Described {
        Described {
            ring: ring.to_string(),
            module: Some(module.to_string()),
            algebra: None,
        }
    }

    pub fn subject(&self) -> String {
        match (&self.module, &self.algebra) {
            (Some(m), Some(a)) => format!("{} / {} / {}", self.ring, m, a),
            (Some(m), None) => format!("{} / {}", self.ring, m),
            (None, Some(a)) => format!("{} / {}", self.ring, a),
            (None, None) => self.ring.clone(),
        }
    }

    /// A record for a module verdict; `module` is the structure it was computed on.
    pub fn witness(&self, claim: Claim, v: &Verdict, module: &FiniteModule) -> Vec<WitnessRecord> {
        let mut rec = record(
            claim,
            v,
            Subject {
                ring: module.ring(),
                module: Some(module),
                algebra: None,
            },
        );
        for r in rec.iter_mut() {
            r.ring = self.ring.clone();
            r.module = self.module.clone();
            r.algebra = self.algebra.clone();
        }
        rec.into_iter().collect()
    }
}

pub struct Ctx<'a> {
    pub universe: &'a Universe,
    pub bounds: Bounds,
    pub convention: ZeroDivisorConvention,
}

impl<'a> Ctx<'a> {
    pub fn new(universe: &'a Universe) -> Ctx<'a> {
        Ctx {
            universe,
            bounds: Bounds::default(),
            convention: ZeroDivisorConvention::default(),
        }
    }

    pub(crate) fn auslander(&self, m: &Member) -> Verdict {
        match self.convention {
            ZeroDivisorConvention::IncludeZero => m.facts.auslander.clone(),
            conv => m.module.is_auslander_with(conv),
        }
    }

    pub(crate) fn torsion_free(&self, m: &Member) -> Verdict {
        match self.convention {
            ZeroDivisorConvention::IncludeZero => m.facts.torsion_free.clone(),
            conv => m.module.is_torsion_free_with(conv),
        }
    }

    pub(crate) fn module_auslander(&self, m: &FiniteModule) -> Verdict {
        m.is_auslander_with(self.convention)
    }

    pub(crate) fn module_torsion_free(&self, m: &FiniteModule) -> Verdict {
        m.is_torsion_free_with(self.convention)
    }

    /// Runs `f` on every member in parallel and merges in universe order.
    pub(crate) fn each_member<F>(&self, f: F) -> Tally
    where
        F: Fn(&Member) -> Tally + Sync,
    {
        self.universe
            .members
            .par_iter()
            .map(&f)
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), |mut acc, t| {
                acc.merge(t);
                acc
            })
    }
}

pub struct Statement {
    pub id: &'static str,
    pub title: &'static str,
    pub kind: Kind,
    pub instantiation: &'static str,
    pub notes: &'static [&'static str],
    run: fn(&Ctx) -> Tally,
}

/// Every registered statement, in report order.
pub fn registry() -> Vec<Statement> {
    let mut all = Vec::new();
    all.extend(families::statements());
    all.extend(misc::statements());
    all.extend(extensions::statements());
    all.extend(algebras::statements());
    all
}

/// The ids the registry must cover, one statement each.
pub const EXPECTED_IDS: &[&str] = &[
    "families.domain",
    "families.flat-content",
    "families.faithful",
    "families.faithful-hom",
    "families.submodule",
    "families.direct-sum",
    "localization.auslander",
    "monoid.auslander",
    "series.witness",
    "series.auslander",
    "series.auslander-fg",
    "algebra.ohm-rush",
    "algebra.mccoy-tensor",
    "algebra.content-tensor",
    "question.ff-mccoy",
    "torsion.characterization",
    "monoid.torsion-free",
    "series.torsion-free",
    "examples.localized-ring",
    "examples.domain-quotient",
    "examples.product-quotient",
    "tf-families.domain-flat",
    "tf-families.flat-content",
    "tf-families.hom",
    "tf-families.direct-sum",
    "tf-families.product",
    "monoid.torsion-free-auslander",
    "monoid.torsion-free-auslander-fg",
    "algebra.mccoy-tensor-tf",
    "algebra.content-tensor-tf",
    "series.torsion-free-auslander",
    "observations.property-a",
    "observations.content-module",
    "observations.flat-oracle",
];

impl Statement {
    pub fn run(&self, ctx: &Ctx) -> StatementReport {
        let tally = (self.run)(ctx);
        let mut warnings = Vec::new();
        if tally.applicable == 0 {
            warnings.push("no applicable members: the check is vacuous at this scale".to_string());
        }
        StatementReport {
            id: self.id.to_string(),
            title: self.title.to_string(),
            kind: self.kind,
            instantiation: self.instantiation.to_string(),
            applicable: tally.applicable,
            checked: tally.checked,
            skipped: tally.skipped,
            passed: tally.failures.is_empty(),
            failures: tally.failures,
            instances: tally.instances,
            log: tally.log,
            notes: self.notes.iter().map(|s| s.to_string()).collect(),
            warnings,
        }
    }
}

pub fn run_statement(id: &str, ctx: &Ctx) -> Result<StatementReport, HarnessError> {
    registry()
        .into_iter()
        .find(|s| s.id == id)
        .map(|s| s.run(ctx))
        .ok_or_else(|| HarnessError::UnknownStatement(id.to_string()))
}

/// Statements whose id matches the glob; `all` selects everything.
pub fn select(pattern: &str) -> Result<Vec<Statement>, HarnessError> {
    let pattern = if pattern == "all" { "*" } else { pattern };
    let matcher = Glob::new(pattern)
        .map_err(|e| HarnessError::Pattern(e.to_string()))?
        .compile_matcher();
    let chosen: Vec<Statement> = registry().into_iter().filter(|s| matcher.is_match(s.id)).collect();
    if chosen.is_empty() {
        return Err(HarnessError::UnknownStatement(pattern.to_string()));
    }
    Ok(chosen)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub bounds: Bounds,
    pub convention: String,
    pub universe: BTreeMap<String, usize>,
    pub statements: Vec<StatementReport>,
    pub passed: bool,
}

pub fn run_suite(pattern: &str, ctx: &Ctx) -> Result<SuiteReport, HarnessError> {
    let statements: Vec<StatementReport> = select(pattern)?.iter().map(|s| s.run(ctx)).collect();
    Ok(SuiteReport {
        bounds: ctx.bounds,
        convention: match ctx.convention {
            ZeroDivisorConvention::IncludeZero => "include_zero".into(),
            ZeroDivisorConvention::ExcludeZero => "exclude_zero".into(),
        },
        universe: ctx.universe.counts.clone(),
        passed: statements.iter().all(|s| s.passed),
        statements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_covers_each_id_once() {
        let ids: Vec<&str> = registry().iter().map(|s| s.id).collect();
        for id in EXPECTED_IDS {
            assert_eq!(ids.iter().filter(|x| *x == id).count(), 1, "{id}");
        }
        assert_eq!(ids.len(), EXPECTED_IDS.len());
    }

    #[test]
    fn glob_selection() {
        assert_eq!(select("series.*").unwrap().len(), 5);
        assert!(select("nothing.*").is_err());
        assert_eq!(select("all").unwrap().len(), EXPECTED_IDS.len());
    }
}
