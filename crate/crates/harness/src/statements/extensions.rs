//! Monoid-ring and power-series statements, the criterion/search oracle and
//! the exhaustive witness-extraction sweep.

use zerodiv_core::ext::{brute_force_zd, is_auslander_extension, is_torsion_free_extension, is_zd_on_extension, mccoy_witness};
use zerodiv_core::{Elem, ExtElement, FiniteModule, FiniteRing, ModElem, Variant, Verdict};

use super::{Ctx, Described, Kind, Statement, Tally};
use crate::universe::Member;
use crate::witness::{Claim, WitnessRecord, WitnessValue};

pub(super) fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "monoid.auslander",
            title: "With property (A), M[G] is Auslander over R[G] iff M is Auslander",
            kind: Kind::Iff,
            instantiation: "G = N and G = N^2 over every nonzero universe member; criterion checked against \
                            exhaustive search for f of degree <= 2, |R| <= 6, |M| <= 8",
            notes: &[
                "Property (A) holds for every finite module, so the hypothesis filter excludes nobody; this is \
                 not a test of the hypothesis's necessity.",
                "Extension verdicts run over the ideal lattice: membership of f in Z(R[G]) and Z(M[G]) depends \
                 only on c(f), and every ideal is the content of some f.",
            ],
            run: monoid_auslander,
        },
        Statement {
            id: "monoid.torsion-free",
            title: "With R having property (A), M[G] is torsion-free iff M is",
            kind: Kind::Iff,
            instantiation: "G = N and G = N^2 over every nonzero universe member",
            notes: &[],
            run: monoid_torsion_free,
        },
        Statement {
            id: "monoid.torsion-free-auslander",
            title: "With R and M having property (A), M[G] is torsion-free Auslander iff M is",
            kind: Kind::Iff,
            instantiation: "G = N and G = N^2 over every nonzero universe member",
            notes: &[],
            run: monoid_tfa,
        },
        Statement {
            id: "monoid.torsion-free-auslander-fg",
            title: "Over a Noetherian ring, finitely generated M: M[G] torsion-free Auslander iff M is",
            kind: Kind::Iff,
            instantiation: "G = N and G = N^2 over every nonzero universe member (finite rings are Noetherian)",
            notes: &[],
            run: monoid_tfa_fg,
        },
        Statement {
            id: "series.witness",
            title: "f g = 0 with g nonzero yields a nonzero constant m with f m = 0",
            kind: Kind::Implication,
            instantiation: "all f, g of degree <= 2 as series, over rings with |R| <= 8 and members with |M| <= 8",
            notes: &["The least k with c(f)^k c(g) = 0 is used, and the least nonzero element of c(f)^(k-1) c(g)."],
            run: series_witness,
        },
        Statement {
            id: "series.auslander",
            title: "Over a Noetherian ring, with property (A): M[[X]] is Auslander iff M is",
            kind: Kind::Iff,
            instantiation: "series truncated at the configured precision over every nonzero universe member",
            notes: &["Property (A) holds for every finite module, so the hypothesis filter excludes nobody."],
            run: series_auslander,
        },
        Statement {
            id: "series.auslander-fg",
            title: "Over a Noetherian ring, finitely generated M: M[[X]] is Auslander iff M is",
            kind: Kind::Iff,
            instantiation: "series truncated at the configured precision over every nonzero universe member",
            notes: &[],
            run: series_auslander_fg,
        },
        Statement {
            id: "series.torsion-free",
            title: "Over a Noetherian ring, finitely generated M: M[[X]] is torsion-free iff M is",
            kind: Kind::Iff,
            instantiation: "series truncated at the configured precision over every nonzero universe member",
            notes: &[],
            run: series_torsion_free,
        },
        Statement {
            id: "series.torsion-free-auslander",
            title: "Over a Noetherian ring, finitely generated M: M[[X]] torsion-free Auslander iff M is",
            kind: Kind::Iff,
            instantiation: "series truncated at the configured precision over every nonzero universe member",
            notes: &[],
            run: series_tfa,
        },
    ]
}

const MONOIDS: [Variant; 2] = [Variant::Poly { vars: 1 }, Variant::Poly { vars: 2 }];

fn series(ctx: &Ctx) -> Variant {
    Variant::Series {
        precision: ctx.bounds.precision,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Conclusion {
    Auslander,
    TorsionFree,
    Both,
}

fn ring_property_a(ring: &std::sync::Arc<FiniteRing>) -> bool {
    FiniteModule::regular(ring).has_property_a().holds
}

/// Compares the extension verdict with the base verdict, both ways.
fn compare(ctx: &Ctx, t: &mut Tally, m: &Member, variant: Variant, what: Conclusion) {
    let d = Described::member(m);
    let subject = format!("{} over {}", m.subject(), variant_name(variant));
    let checks: &[(Claim, Claim)] = match what {
        Conclusion::Auslander => &[(Claim::Auslander, Claim::ExtensionAuslander)],
        Conclusion::TorsionFree => &[(Claim::TorsionFree, Claim::ExtensionTorsionFree)],
        Conclusion::Both => &[
            (Claim::Auslander, Claim::ExtensionAuslander),
            (Claim::TorsionFree, Claim::ExtensionTorsionFree),
        ],
    };
    let mut base_all = true;
    let mut ext_all = true;
    let mut witnesses = Vec::new();
    for &(base_claim, ext_claim) in checks {
        let (base, ext): (Verdict, Verdict) = match base_claim {
            Claim::Auslander => (ctx.auslander(m), is_auslander_extension(&m.module, variant)),
            _ => (ctx.torsion_free(m), is_torsion_free_extension(&m.module, variant)),
        };
        base_all &= base.holds;
        ext_all &= ext.holds;
        witnesses.extend(d.witness(base_claim, &base, &m.module));
        witnesses.extend(d.witness(ext_claim, &ext, &m.module));
    }
    t.checked += 1;
    if base_all != ext_all {
        t.fail(
            subject,
            format!("extension verdict {ext_all} differs from base verdict {base_all}"),
            witnesses,
        );
    }
}

fn variant_name(v: Variant) -> String {
    match v {
        Variant::Poly { vars: 1 } => "R[X]".into(),
        Variant::Poly { vars } => format!("R[N^{vars}]"),
        Variant::Series { precision } => format!("R[[X]] mod X^{precision}"),
    }
}

fn iff_over(
    ctx: &Ctx,
    variants: &[Variant],
    what: Conclusion,
    hypothesis: &(dyn Fn(&Member) -> bool + Sync),
) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if m.module.is_zero() {
            t.skipped += 1;
            return t;
        }
        if !hypothesis(m) {
            return t;
        }
        t.applicable += 1;
        for &v in variants {
            compare(ctx, &mut t, m, v, what);
        }
        t
    })
}

/// Every polynomial in one variable with exponents at most `degree`, in code order.
fn polynomials(ring: &FiniteRing, degree: u32) -> impl Iterator<Item = ExtElement<Elem>> + '_ {
    let n = ring.size();
    let terms = degree as usize + 1;
    let count = n.pow(terms as u32);
    (0..count).map(move |code| {
        let mut rest = code;
        let coeffs = (0..terms).map(|k| {
            let c = Elem((rest % n) as u32);
            rest /= n;
            (vec![k as u32], c)
        });
        let coeffs: Vec<_> = coeffs.collect();
        ExtElement::from_terms(Variant::Poly { vars: 1 }, coeffs, |a, b| ring.add(a, b)).expect("arity matches")
    })
}

/// Criterion against exhaustive search, the embedding `N -> N^2`, and the
/// series decider on polynomial inputs.
fn oracle(ctx: &Ctx, t: &mut Tally, m: &Member) {
    let b = ctx.bounds;
    if m.ring.size() > b.oracle_ring || m.module.size() > b.oracle_module {
        return;
    }
    let subject = m.subject();
    let module = &m.module;
    let mut compared = 0usize;
    for f in polynomials(&m.ring, b.degree) {
        let text = f.format(&m.ring);
        let criterion = is_zd_on_extension(&f, module).expect("f is over the module's ring").holds;
        let search = brute_force_zd(&f, module, b.degree).expect("within the search budget").holds;
        let embedded = is_zd_on_extension(&f.embed(2).expect("N embeds in N^2"), module)
            .expect("same ring")
            .holds;
        let as_series = is_zd_on_extension(&f.as_series(b.precision).expect("degree below precision"), module)
            .expect("same ring")
            .holds;
        compared += 1;
        t.checked += 3;
        if criterion != search {
            t.fail(&subject, format!("criterion {criterion} and search {search} disagree on f = {text}"), Vec::new());
        }
        if criterion != embedded {
            t.fail(&subject, format!("verdict on f = {text} changes under N -> N^2"), Vec::new());
        }
        if criterion != as_series {
            t.fail(&subject, format!("series and polynomial verdicts disagree on f = {text}"), Vec::new());
        }
    }
    t.log.push(format!("{subject}: criterion compared with search on {compared} polynomials"));
}

fn monoid_auslander(ctx: &Ctx) -> Tally {
    let mut t = iff_over(ctx, &MONOIDS, Conclusion::Auslander, &|m| m.facts.property_a.holds);
    t.merge(ctx.each_member(|m| {
        let mut t = Tally::default();
        if !m.module.is_zero() {
            oracle(ctx, &mut t, m);
        }
        t
    }));
    t
}

fn monoid_torsion_free(ctx: &Ctx) -> Tally {
    iff_over(ctx, &MONOIDS, Conclusion::TorsionFree, &|m| ring_property_a(&m.ring))
}

fn monoid_tfa(ctx: &Ctx) -> Tally {
    iff_over(ctx, &MONOIDS, Conclusion::Both, &|m| {
        ring_property_a(&m.ring) && m.facts.property_a.holds
    })
}

fn monoid_tfa_fg(ctx: &Ctx) -> Tally {
    iff_over(ctx, &MONOIDS, Conclusion::Both, &|_| true)
}

fn series_auslander(ctx: &Ctx) -> Tally {
    iff_over(ctx, &[series(ctx)], Conclusion::Auslander, &|m| m.facts.property_a.holds)
}

fn series_auslander_fg(ctx: &Ctx) -> Tally {
    iff_over(ctx, &[series(ctx)], Conclusion::Auslander, &|_| true)
}

fn series_torsion_free(ctx: &Ctx) -> Tally {
    iff_over(ctx, &[series(ctx)], Conclusion::TorsionFree, &|_| true)
}

fn series_tfa(ctx: &Ctx) -> Tally {
    iff_over(ctx, &[series(ctx)], Conclusion::Both, &|_| true)
}

/// Coefficient vectors of length `terms` over `n` symbols, in code order.
fn digits(code: usize, n: usize, terms: usize) -> Vec<u32> {
    let mut rest = code;
    (0..terms)
        .map(|_| {
            let d = (rest % n) as u32;
            rest /= n;
            d
        })
        .collect()
}

/// Exhaustive sweep: zero products are found on coefficient arrays, and the
/// extraction runs on every one of them.
fn series_witness(ctx: &Ctx) -> Tally {
    let b = ctx.bounds;
    let variant = series(ctx);
    ctx.each_member(|m| {
        let mut t = Tally::default();
        let (ring, module) = (&m.ring, &m.module);
        if ring.size() > b.extraction_ring || module.size() > b.oracle_module {
            return t;
        }
        if module.is_zero() {
            t.skipped += 1;
            return t;
        }
        let terms = b.degree as usize + 1;
        let fs = ring.size().pow(terms as u32);
        let gs = module.size().pow(terms as u32);
        let subject = m.subject();
        let (mut listed, mut deep_listed, mut deep_pairs) = (false, false, 0usize);
        for gc in 1..gs {
            let g = digits(gc, module.size(), terms);
            for fc in 0..fs {
                let f = digits(fc, ring.size(), terms);
                let zero = (0..2 * terms - 1).all(|k| {
                    let mut acc = ModElem::ZERO;
                    for i in 0..terms {
                        if k >= i && k - i < terms {
                            acc = module.add(acc, module.act(Elem(f[i]), ModElem(g[k - i])));
                        }
                    }
                    acc == ModElem::ZERO
                });
                if !zero {
                    continue;
                }
                t.applicable += 1;
                t.checked += 1;
                let fe = ExtElement::from_terms(
                    variant,
                    f.iter().enumerate().map(|(k, &c)| (vec![k as u32], Elem(c))),
                    |a, c| ring.add(a, c),
                )
                .expect("arity matches");
                let ge = ExtElement::from_terms(
                    variant,
                    g.iter().enumerate().map(|(k, &c)| (vec![k as u32], ModElem(c))),
                    |a, c| module.add(a, c),
                )
                .expect("arity matches");
                match mccoy_witness(&fe, &ge, module) {
                    Ok(x) => {
                        let ok = x != ModElem::ZERO && f.iter().all(|&a| module.act(Elem(a), x) == ModElem::ZERO);
                        if !ok {
                            t.fail(
                                &subject,
                                format!("extracted {} is not a witness for f = {}", module.label(x), fe.format(ring)),
                                Vec::new(),
                            );
                            continue;
                        }
                        let deep = needs_powers(&fe, &ge, module);
                        deep_pairs += deep as usize;
                        let shown = f[1..].iter().any(|&a| a != 0) && g[1..].iter().any(|&c| c != 0);
                        if (deep && !deep_listed) || (shown && !listed) {
                            deep_listed |= deep;
                            listed = true;
                            let detail = if deep {
                                "c(f) c(g) is nonzero; the witness comes from a higher content power"
                            } else {
                                "first zero product with both factors non-constant"
                            };
                            t.instance(&subject, detail, extraction_record(m, &fe, &ge, x));
                        }
                    }
                    Err(e) => t.fail(
                        &subject,
                        format!("no witness for f = {}, g = {}: {e}", fe.format(ring), ge.format(module)),
                        Vec::new(),
                    ),
                }
            }
        }
        t.log.push(format!("{subject}: {} zero products, {deep_pairs} with c(f) c(g) nonzero", t.checked));
        t
    })
}

/// `c(f) c(g) ≠ 0`.
fn needs_powers(f: &ExtElement<Elem>, g: &ExtElement<ModElem>, module: &FiniteModule) -> bool {
    let cg = g.content(module).expect("g is over the module");
    f.coefficients()
        .iter()
        .any(|&a| cg.elements().iter().any(|&x| module.act(a, x) != ModElem::ZERO))
}

fn extraction_record(m: &Member, f: &ExtElement<Elem>, g: &ExtElement<ModElem>, x: ModElem) -> Vec<WitnessRecord> {
    let rec = WitnessRecord {
        claim: Claim::Extraction,
        holds: true,
        ring: m.ring.key().to_string(),
        module: Some(m.spec.to_string()),
        algebra: None,
        value: WitnessValue::Extraction {
            f: f.format(&m.ring),
            g: g.format(&m.module),
            m: m.module.label(x).to_string(),
        },
    };
    let subject = crate::witness::Subject {
        ring: &m.ring,
        module: Some(&m.module),
        algebra: None,
    };
    assert_eq!(crate::witness::revalidate(&rec, subject), Ok(true), "extraction record must re-validate");
    vec![rec]
}
