use std::sync::OnceLock;
use std::time::Instant;

use zerodiv_core::ZeroDivisorConvention;
use zerodiv_harness::{generate_universe, run_suite, search_counterexample, Ctx, Universe, UniverseLimits, EXPECTED_IDS};

fn universe() -> &'static Universe {
    static U: OnceLock<Universe> = OnceLock::new();
    U.get_or_init(|| generate_universe(UniverseLimits::default()))
}

#[test]
fn every_statement_passes() {
    let ctx = Ctx::new(universe());
    for id in EXPECTED_IDS {
        let start = Instant::now();
        let report = run_suite(id, &ctx).unwrap();
        let s = &report.statements[0];
        println!(
            "{id}: passed={} applicable={} checked={} skipped={} instances={} ({:.2?})",
            s.passed,
            s.applicable,
            s.checked,
            s.skipped,
            s.instances.len(),
            start.elapsed()
        );
        for f in s.failures.iter().take(3) {
            println!("  failure {}: {}", f.subject, f.detail);
        }
    }
    let failing: Vec<_> = run_suite("all", &ctx).unwrap().statements.into_iter().filter(|s| !s.passed).map(|s| s.id).collect();
    assert!(failing.is_empty(), "{failing:?}");
}

#[test]
fn exclude_zero_convention_changes_no_verdict() {
    let mut ctx = Ctx::new(universe());
    ctx.convention = ZeroDivisorConvention::ExcludeZero;
    for pattern in ["examples.*", "localization.*", "families.direct-sum", "tf-families.product"] {
        let report = run_suite(pattern, &ctx).unwrap();
        assert_eq!(report.convention, "exclude_zero");
        assert!(report.passed, "{pattern}");
    }
}

#[test]
fn search_examples() {
    let u = universe();
    let hits = search_counterexample("torsion_free", "auslander", u).unwrap().hits;
    assert!(hits.iter().any(|h| h.ring == "Prod(Z2,Z2)" && h.module == "Cyclic((0,1))"), "{hits:?}");
    let tf_hit = hits.iter().find(|h| h.ring == "Prod(Z2,Z2)").unwrap();
    assert!(tf_hit.witnesses.iter().any(|w| w.claim == zerodiv_harness::Claim::Auslander && !w.holds));

    let hits = search_counterexample("auslander", "torsion_free", u).unwrap().hits;
    let six = hits.iter().find(|h| h.ring == "ZZ" && h.module == "Cyclic(6)").expect("Z/6 over Z");
    assert_eq!(six.witnesses[0].value, zerodiv_harness::WitnessValue::Integer { value: 2 });

    let report = search_counterexample("reg_module", "auslander", u).unwrap();
    assert!(report.hits.is_empty() && report.applicable > 0);

    // Content predicates are undecided on the integer adapter.
    let report = search_counterexample("content_module", "auslander", u).unwrap();
    assert_eq!(report.undecided, 30);
    assert!(search_counterexample("auslander &", "flat", u).is_err());
}

/// Over R = Z4[x]/(x^2), pairs (a, b) stand for a + b x. In M = R/(2) the
/// class of x lies in (x)M and in (x+2)M, so c(x) ⊆ (x) ∩ (x+2) = (2x), and
/// (2x) ⊆ (2) kills M: M is not a content module.
#[test]
fn a_finite_module_that_is_not_content() {
    let mul = |(a, b): (u8, u8), (c, d): (u8, u8)| ((a * c) % 4, (a * d + b * c) % 4);
    let all: Vec<(u8, u8)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
    let principal = |g| all.iter().map(|&r| mul(r, g)).collect::<std::collections::BTreeSet<_>>();
    let meet: Vec<_> = principal((0, 1)).intersection(&principal((2, 1))).copied().collect();
    assert_eq!(meet, vec![(0, 0), (0, 2)]);
    // (0,2) = 2x = 2 * x lies in (2); x + (2) is nonzero because its x-coefficient is odd.
    assert!(meet.iter().all(|&(a, b)| a % 2 == 0 && b % 2 == 0));

    let r = zerodiv_core::make_ring(&zerodiv_core::RingSpec::poly_quot(zerodiv_core::RingSpec::zmod(4), "x^2").unwrap())
        .unwrap();
    let m = zerodiv_core::build_module(&r, &zerodiv_core::ModuleSpec::cyclic(["2"]), zerodiv_core::Limits::default()).unwrap();
    assert!(!m.is_content_module().holds);
}
