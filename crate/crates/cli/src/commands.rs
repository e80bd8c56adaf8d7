//! Command-line surface and dispatch.
//!
//! Exit statuses: 0 when a command completes (and a suite passes), 1 when a
//! suite fails or a witness does not re-validate, 2 on usage and DSL errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zerodiv_core::ext::{is_auslander_extension, is_torsion_free_extension, mccoy_witness};
use zerodiv_core::{
    build_module, make_ring, AlgebraSpec, ExtElement, FiniteAlgebra, FiniteModule, FiniteRing, Limits, Variant,
    Verdict, ZeroDivisorConvention,
};
use zerodiv_harness::witness::{record, torsion_record};
use zerodiv_harness::{
    generate_universe, revalidate, revalidate_integers, run_suite, search_counterexample, Bounds, Claim, Ctx,
    HarnessError, Subject, UniverseLimits, WitnessRecord, WitnessValue, ZModule, INTEGERS,
};

use crate::cache::Cache;
use crate::dsl::{parse_algebra, parse_module, parse_ring, DslError, ModuleAst, RingAst};
use crate::report::{
    collect_witnesses, render_text, Analysis, AlgebraSummary, Extraction, IntegerAnalysis, ModuleSummary,
    PredicateResult, Report, Revalidation, RevalidationFailure, RingSummary, Timing,
};

/// Series precision used by `analyze` for the power-series verdicts.
pub const ANALYZE_PRECISION: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "zerodiv", version, about = "Zero-divisors of finite rings and modules")]
pub struct Cli {
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Add wall-clock timing to the report (reports stop being reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Skip the on-disk cache of ideal lattices and zero-divisor sets.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Whether 0 counts as a zero-divisor.
    #[arg(long, value_enum, default_value_t = Convention::IncludeZero, global = true)]
    pub convention: Convention,
    /// More log output on stderr; repeat for debug.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    IncludeZero,
    ExcludeZero,
}

impl Convention {
    fn core(self) -> ZeroDivisorConvention {
        match self {
            Convention::IncludeZero => ZeroDivisorConvention::IncludeZero,
            Convention::ExcludeZero => ZeroDivisorConvention::ExcludeZero,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Convention::IncludeZero => "include_zero",
            Convention::ExcludeZero => "exclude_zero",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Every predicate of one ring, module and optional algebra; or re-validate
    /// the witnesses in a report.
    Analyze {
        #[arg(long, required_unless_present = "witnesses")]
        ring: Option<String>,
        /// Defaults to the regular module.
        #[arg(long)]
        module: Option<String>,
        /// `Algebra(B, R)`, or a bare ring `B` taken over `--ring`.
        #[arg(long)]
        algebra: Option<String>,
        /// A JSON report or array of witness records to re-validate.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Run the statements whose id matches a glob over the universe.
    Theorems {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Universe members satisfying the hypothesis but not the conclusion.
    Search {
        #[arg(long)]
        hyp: String,
        #[arg(long)]
        concl: String,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Extract a constant `m` with `f m = 0` from `f g = 0`, `g != 0`.
    Witness {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "Reg")]
        module: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BoundsArgs {
    /// Largest exponent of enumerated polynomials.
    #[arg(long, default_value_t = Bounds::default().degree)]
    pub degree: u32,
    /// Power-series precision.
    #[arg(long, default_value_t = Bounds::default().precision)]
    pub precision: u32,
    /// Ring size cap for the criterion/search comparison.
    #[arg(long, default_value_t = Bounds::default().oracle_ring)]
    pub oracle_ring: usize,
    /// Module size cap for the criterion/search comparison.
    #[arg(long, default_value_t = Bounds::default().oracle_module)]
    pub oracle_module: usize,
    /// Ring size cap for the exhaustive witness-extraction sweep.
    #[arg(long, default_value_t = Bounds::default().extraction_ring)]
    pub extraction_ring: usize,
}

impl BoundsArgs {
    fn bounds(self) -> Bounds {
        Bounds {
            degree: self.degree,
            precision: self.precision,
            oracle_ring: self.oracle_ring,
            oracle_module: self.oracle_module,
            extraction_ring: self.extraction_ring,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct UniverseArgs {
    #[arg(long, default_value_t = UniverseLimits::default().max_ring)]
    pub max_ring: usize,
    #[arg(long, default_value_t = UniverseLimits::default().max_module)]
    pub max_module: usize,
    #[arg(long, default_value_t = UniverseLimits::default().max_algebra)]
    pub max_algebra: usize,
}

impl UniverseArgs {
    fn limits(self) -> UniverseLimits {
        UniverseLimits {
            max_ring: self.max_ring,
            max_module: self.max_module,
            max_algebra: self.max_algebra,
            ..UniverseLimits::default()
        }
    }

    fn echo(self, input: &mut BTreeMap<String, String>) {
        input.insert("max_ring".into(), self.max_ring.to_string());
        input.insert("max_module".into(), self.max_module.to_string());
        input.insert("max_algebra".into(), self.max_algebra.to_string());
    }
}

/// A usage error: exit status 2, message on stderr.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn dsl(source: &str) -> impl Fn(DslError) -> UsageError + '_ {
    move |e| UsageError(e.render(source))
}

fn spanned(source: &str, span: crate::dsl::Span, e: impl std::fmt::Display) -> UsageError {
    UsageError(DslError::new(e.to_string(), span).render(source))
}

fn harness(e: HarnessError) -> UsageError {
    UsageError(format!("error: {e}"))
}

/// A finished command: the report and its exit status.
pub struct Outcome {
    pub report: Report,
    pub status: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.report.to_json(),
            Format::Text => render_text(&self.report),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    let start = Instant::now();
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::from_env() };
    let conv = cli.convention;
    let mut outcome = match &cli.command {
        Command::Analyze {
            ring,
            module,
            algebra,
            witnesses,
        } => analyze(ring.as_deref(), module.as_deref(), algebra.as_deref(), witnesses.as_ref(), conv, &cache)?,
        Command::Theorems { suite, bounds, universe } => theorems(suite, *bounds, *universe, conv)?,
        Command::Search { hyp, concl, universe } => search(hyp, concl, *universe)?,
        Command::Witness { f, g, ring, module } => witness(f, g, ring, module, &cache)?,
    };
    if cli.timing {
        outcome.report.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok(outcome)
}

struct Built {
    ring_spec: zerodiv_core::RingSpec,
    ring: Arc<FiniteRing>,
}

fn build_ring(source: &str, ast: &RingAst, cache: &Cache) -> Result<Built, UsageError> {
    let (ring_spec, ring) = ast.build().map_err(dsl(source))?;
    cache.prepare(&ring);
    Ok(Built { ring_spec, ring })
}

fn labels(ring: &FiniteRing, elems: &[zerodiv_core::Elem]) -> Vec<String> {
    ring.labels(elems)
}

fn predicate(name: &str, claim: Option<Claim>, v: &Verdict, subject: Subject<'_>, names: &Names) -> PredicateResult {
    let witness = claim.and_then(|c| record(c, v, subject)).map(|mut r| {
        r.ring = names.ring.clone();
        r.module = names.module.clone();
        r.algebra = names.algebra.clone();
        r
    });
    PredicateResult {
        name: name.to_string(),
        holds: v.holds,
        degenerate: v.degenerate,
        witness,
    }
}

/// Canonical descriptors written into witness records.
struct Names {
    ring: String,
    module: Option<String>,
    algebra: Option<String>,
}

fn module_predicates(m: &FiniteModule, conv: ZeroDivisorConvention, names: &Names) -> Result<Vec<PredicateResult>, String> {
    let subject = Subject {
        ring: m.ring(),
        module: Some(m),
        algebra: None,
    };
    let err = |e: zerodiv_core::Error| e.to_string();
    let mut out = vec![
        predicate("auslander", Some(Claim::Auslander), &m.is_auslander_with(conv), subject, names),
        predicate("torsion_free", Some(Claim::TorsionFree), &m.is_torsion_free_with(conv), subject, names),
        predicate("property_a", Some(Claim::PropertyA), &m.has_property_a(), subject, names),
        predicate("content_module", Some(Claim::ContentModule), &m.is_content_module(), subject, names),
        predicate("content_surjective", Some(Claim::ContentSurjective), &m.content_surjective(), subject, names),
        predicate("faithful", Some(Claim::Faithful), &m.is_faithful(), subject, names),
        predicate("flat", Some(Claim::Flat), &m.is_flat().map_err(err)?, subject, names),
        predicate("faithfully_flat", Some(Claim::FaithfullyFlat), &m.is_faithfully_flat().map_err(err)?, subject, names),
    ];
    out.push(PredicateResult {
        name: "locally_free".into(),
        holds: m.locally_free(),
        degenerate: false,
        witness: None,
    });
    for (prefix, variant) in [
        ("polynomial", Variant::Poly { vars: 1 }),
        (
            "series",
            Variant::Series {
                precision: ANALYZE_PRECISION,
            },
        ),
    ] {
        out.push(predicate(
            &format!("{prefix}_auslander"),
            Some(Claim::ExtensionAuslander),
            &is_auslander_extension(m, variant),
            subject,
            names,
        ));
        out.push(predicate(
            &format!("{prefix}_torsion_free"),
            Some(Claim::ExtensionTorsionFree),
            &is_torsion_free_extension(m, variant),
            subject,
            names,
        ));
    }
    Ok(out)
}

fn algebra_summary(spec: &AlgebraSpec, cache: &Cache) -> Result<AlgebraSummary, String> {
    let a = FiniteAlgebra::from_spec(spec, Limits::default()).map_err(|e| e.to_string())?;
    cache.prepare(a.ring());
    cache.prepare(a.base());
    let m = a.as_module().map_err(|e| e.to_string())?;
    let subject = Subject {
        ring: a.base(),
        module: Some(m),
        algebra: Some(&a),
    };
    let names = Names {
        ring: spec.base.to_string(),
        module: None,
        algebra: Some(spec.to_string()),
    };
    let err = |e: zerodiv_core::Error| e.to_string();
    Ok(AlgebraSummary {
        descriptor: spec.to_string(),
        size: a.ring().size(),
        predicates: vec![
            predicate("ohm_rush", Some(Claim::OhmRush), &a.is_ohm_rush().map_err(err)?, subject, &names),
            predicate("mccoy", Some(Claim::Mccoy), &a.is_mccoy().map_err(err)?, subject, &names),
            predicate("flat", Some(Claim::Flat), &m.is_flat().map_err(err)?, subject, &names),
            predicate("faithfully_flat", Some(Claim::FaithfullyFlat), &a.is_faithfully_flat().map_err(err)?, subject, &names),
        ],
    })
}

fn analyze(
    ring: Option<&str>,
    module: Option<&str>,
    algebra: Option<&str>,
    witnesses: Option<&PathBuf>,
    conv: Convention,
    cache: &Cache,
) -> Result<Outcome, UsageError> {
    let mut input = BTreeMap::new();
    input.insert("convention".to_string(), conv.name().to_string());
    if let Some(r) = ring {
        input.insert("ring".into(), r.to_string());
        input.insert("module".into(), module.unwrap_or("Reg").to_string());
    }
    if let Some(a) = algebra {
        input.insert("algebra".into(), a.to_string());
    }
    if let Some(p) = witnesses {
        input.insert("witnesses".into(), p.display().to_string());
    }
    let mut report = Report::new("analyze", input);
    let mut status = 0;

    if let Some(ring_src) = ring {
        let ring_ast = parse_ring(ring_src).map_err(dsl(ring_src))?;
        let module_src = module.unwrap_or("Reg");
        let module_ast = parse_module(module_src).map_err(dsl(module_src))?;
        if ring_ast.is_integers() {
            if algebra.is_some() {
                return Err(UsageError("error: algebras over ZZ are not available".into()));
            }
            let n = module_ast.integer_modulus().map_err(dsl(module_src))?;
            report.integers = Some(integer_analysis(n));
        } else {
            report.analysis = Some(finite_analysis(ring_src, &ring_ast, module_src, &module_ast, algebra, conv, cache)?);
        }
    }

    if let Some(path) = witnesses {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("error: cannot read {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| UsageError(format!("error: {} is not JSON: {e}", path.display())))?;
        let mut records = Vec::new();
        collect_witnesses(&value, &mut records);
        let v = revalidate_all(&records);
        if !v.failures.is_empty() {
            status = 1;
        }
        report.revalidation = Some(v);
    }
    Ok(Outcome { report, status })
}

fn finite_analysis(
    ring_src: &str,
    ring_ast: &RingAst,
    module_src: &str,
    module_ast: &ModuleAst,
    algebra: Option<&str>,
    conv: Convention,
    cache: &Cache,
) -> Result<Analysis, UsageError> {
    let Built { ring_spec, ring } = build_ring(ring_src, ring_ast, cache)?;
    let module_spec = module_ast.to_spec(&ring_spec).map_err(dsl(module_src))?;
    let m = build_module(&ring, &module_spec, Limits::default()).map_err(|e| spanned(module_src, module_ast.span, e))?;
    if m.ring().key() != ring.key() {
        cache.prepare(m.ring());
    }
    let core_conv = conv.core();
    let names = Names {
        ring: ring_spec.to_string(),
        module: Some(module_spec.to_string()),
        algebra: None,
    };
    let rp = ring.ring_predicates();
    let over = m.ring();
    let predicates = module_predicates(&m, core_conv, &names).map_err(|e| spanned(module_src, module_ast.span, e))?;
    let algebra = match algebra {
        None => None,
        Some(src) => {
            let ast = parse_algebra(src).map_err(dsl(src))?;
            let spec = ast.to_spec(&ring_spec).map_err(dsl(src))?;
            Some(algebra_summary(&spec, cache).map_err(|e| spanned(src, ast.span, e))?)
        }
    };
    Ok(Analysis {
        convention: conv.name().to_string(),
        ring: RingSummary {
            descriptor: ring_spec.to_string(),
            size: ring.size(),
            zero_divisors: labels(&ring, &ring.zero_divisors_with(core_conv)),
            units: ring.units().len(),
            ideals: ring.all_ideals().len(),
            domain: rp.is_domain,
            field: rp.is_field,
            local: rp.is_local,
        },
        module: ModuleSummary {
            descriptor: module_spec.to_string(),
            ring: over.key().to_string(),
            size: m.size(),
            zero_divisors: labels(over, &m.zero_divisors_with(core_conv)),
            natural_map_kernel: m.labels(m.natural_map_kernel().elements()),
        },
        predicates,
        algebra,
    })
}

fn integer_analysis(n: u64) -> IntegerAnalysis {
    let z = ZModule::new(n);
    let plain = |name: &str, holds: Option<bool>| PredicateResult {
        name: name.to_string(),
        holds: holds.unwrap_or(false),
        degenerate: holds.is_none(),
        witness: None,
    };
    let mut torsion_free = plain("torsion_free", z.is_torsion_free());
    torsion_free.witness = torsion_record(z);
    IntegerAnalysis {
        module: z.descriptor(),
        degenerate: z.is_zero(),
        zero_divisor_rule: if n == 0 {
            "k = 0".into()
        } else {
            format!("gcd(k, {n}) > 1")
        },
        contains_defining_ideal: z.contains_defining_ideal(),
        predicates: vec![
            plain("auslander", z.is_auslander()),
            torsion_free,
            plain("property_a", Some(z.has_property_a())),
            plain("faithful", Some(z.is_faithful())),
            plain("flat", Some(z.is_flat())),
            plain("natural_map_kernel_zero", Some(z.natural_map_kernel_is_zero())),
        ],
    }
}

/// Rebuilds the structures a record names from its descriptors and
/// recomputes the defining condition.
pub fn revalidate_record(rec: &WitnessRecord) -> Result<bool, String> {
    if rec.ring == INTEGERS {
        return revalidate_integers(rec);
    }
    let ring_spec = parse_ring(&rec.ring)
        .and_then(|a| a.to_spec())
        .map_err(|e| format!("ring {}: {e}", rec.ring))?;
    let ring = make_ring(&ring_spec).map_err(|e| e.to_string())?;
    let module = match &rec.module {
        None => None,
        Some(text) => {
            let spec = parse_module(text)
                .and_then(|a| a.to_spec(&ring_spec))
                .map_err(|e| format!("module {text}: {e}"))?;
            Some(build_module(&ring, &spec, Limits::default()).map_err(|e| e.to_string())?)
        }
    };
    let algebra = match &rec.algebra {
        None => None,
        Some(text) => {
            let spec = parse_algebra(text)
                .and_then(|a| a.to_spec(&ring_spec))
                .map_err(|e| format!("algebra {text}: {e}"))?;
            Some(FiniteAlgebra::from_spec(&spec, Limits::default()).map_err(|e| e.to_string())?)
        }
    };
    let module = match (&module, &algebra) {
        (Some(m), _) => Some(m),
        (None, Some(a)) => Some(a.as_module().map_err(|e| e.to_string())?),
        (None, None) => None,
    };
    let subject_ring = match (module, &algebra) {
        (Some(m), _) => m.ring().clone(),
        (None, Some(a)) => a.base().clone(),
        (None, None) => ring,
    };
    revalidate(
        rec,
        Subject {
            ring: &subject_ring,
            module,
            algebra: algebra.as_ref(),
        },
    )
}

pub fn revalidate_all(records: &[WitnessRecord]) -> Revalidation {
    let mut failures = Vec::new();
    for rec in records {
        let reason = match revalidate_record(rec) {
            Ok(true) => continue,
            Ok(false) => "the defining condition does not hold at the witness".to_string(),
            Err(e) => e,
        };
        failures.push(RevalidationFailure {
            record: rec.clone(),
            reason,
        });
    }
    Revalidation {
        checked: records.len(),
        confirmed: records.len() - failures.len(),
        failures,
    }
}

fn theorems(suite: &str, bounds: BoundsArgs, universe: UniverseArgs, conv: Convention) -> Result<Outcome, UsageError> {
    // Reject a bad pattern before paying for the universe.
    zerodiv_harness::select(suite).map_err(harness)?;
    let mut input = BTreeMap::new();
    input.insert("suite".to_string(), suite.to_string());
    input.insert("convention".to_string(), conv.name().to_string());
    universe.echo(&mut input);
    let u = generate_universe(universe.limits());
    let mut ctx = Ctx::new(&u);
    ctx.bounds = bounds.bounds();
    ctx.convention = conv.core();
    let result = run_suite(suite, &ctx).map_err(harness)?;
    let status = if result.passed { 0 } else { 1 };
    let mut report = Report::new("theorems", input);
    report.suite = Some(result);
    Ok(Outcome { report, status })
}

fn search(hyp: &str, concl: &str, universe: UniverseArgs) -> Result<Outcome, UsageError> {
    for text in [hyp, concl] {
        if let Err(HarnessError::Expression { at, message, .. }) = zerodiv_harness::parse_expr(text) {
            let span = crate::dsl::Span { start: at, end: at + 1 };
            return Err(spanned(text, span, message));
        }
    }
    let mut input = BTreeMap::new();
    input.insert("hyp".to_string(), hyp.to_string());
    input.insert("concl".to_string(), concl.to_string());
    universe.echo(&mut input);
    let u = generate_universe(universe.limits());
    let result = search_counterexample(hyp, concl, &u).map_err(harness)?;
    let mut report = Report::new("search", input);
    report.search = Some(result);
    Ok(Outcome { report, status: 0 })
}

fn witness(f_src: &str, g_src: &str, ring_src: &str, module_src: &str, cache: &Cache) -> Result<Outcome, UsageError> {
    let ring_ast = parse_ring(ring_src).map_err(dsl(ring_src))?;
    let module_ast = parse_module(module_src).map_err(dsl(module_src))?;
    let Built { ring_spec, ring } = build_ring(ring_src, &ring_ast, cache)?;
    let module_spec = module_ast.to_spec(&ring_spec).map_err(dsl(module_src))?;
    let m = build_module(&ring, &module_spec, Limits::default()).map_err(|e| spanned(module_src, module_ast.span, e))?;
    let whole = |src: &str| crate::dsl::Span { start: 0, end: src.len() };
    let f = ExtElement::parse(f_src, m.ring(), Some(1)).map_err(|e| spanned(f_src, whole(f_src), e))?;
    let g = ExtElement::parse_module(g_src, &m, Some(1)).map_err(|e| spanned(g_src, whole(g_src), e))?;
    let x = mccoy_witness(&f, &g, &m).map_err(|e| UsageError(format!("error: {e}")))?;
    let rec = WitnessRecord {
        claim: Claim::Extraction,
        holds: true,
        ring: ring_spec.to_string(),
        module: Some(module_spec.to_string()),
        algebra: None,
        value: WitnessValue::Extraction {
            f: f.format(m.ring()),
            g: g.format(&m),
            m: m.label(x).to_string(),
        },
    };
    let mut input = BTreeMap::new();
    input.insert("f".to_string(), f_src.to_string());
    input.insert("g".to_string(), g_src.to_string());
    input.insert("ring".to_string(), ring_src.to_string());
    input.insert("module".to_string(), module_src.to_string());
    let mut report = Report::new("witness", input);
    let v = revalidate_all(std::slice::from_ref(&rec));
    let status = if v.failures.is_empty() { 0 } else { 1 };
    report.extraction = Some(Extraction {
        f: f.format(m.ring()),
        g: g.format(&m),
        m: m.label(x).to_string(),
        witness: rec,
    });
    report.revalidation = Some(v);
    Ok(Outcome { report, status })
}
