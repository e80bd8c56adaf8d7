//! Localization, the torsion-free characterization, the worked examples and
//! the scale observations.

use zerodiv_core::localization::{localize, multiplicative_sets_within};
use zerodiv_core::{FiniteAlgebra, FiniteModule, FiniteRing, ModuleSpec, MultiplicativeSet, RingSpec};

use super::{Ctx, Described, Kind, Statement, Tally};
use crate::witness::{torsion_record, Claim, WitnessRecord, INTEGERS};
use crate::zadapter::{ZModule, CASES};

pub(super) fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "localization.auslander",
            title: "M_S is Auslander over R_S when M is Auslander and S avoids Z(M)",
            kind: Kind::Implication,
            instantiation: "every Auslander universe member and every multiplicatively closed S inside R \\ Z(M)",
            notes: &[
                "For Auslander M, R \\ Z(M) lies inside R \\ Z(R), and regular elements of a finite ring are units, \
                 so every applicable S consists of units.",
                "Sets avoiding Z(M) that contain zero-divisors of R occur only for non-Auslander M; they are logged \
                 as probes outside the hypothesis.",
            ],
            run: localization_auslander,
        },
        Statement {
            id: "torsion.characterization",
            title: "M -> M ⊗ Q is injective iff Z(M) is inside Z(R)",
            kind: Kind::Iff,
            instantiation: "every universe member; Z-modules Z and Z/n for 2 <= n <= 30",
            notes: &["Q = R for finite rings, so the kernel is zero for every finite module; the integer adapter \
                      supplies the modules with nonzero kernel."],
            run: torsion_characterization,
        },
        Statement {
            id: "examples.localized-ring",
            title: "R_S is a torsion-free Auslander R-module when S avoids Z(R)",
            kind: Kind::Example,
            instantiation: "every universe ring and every multiplicatively closed S inside R \\ Z(R)",
            notes: &[],
            run: localized_ring,
        },
        Statement {
            id: "examples.domain-quotient",
            title: "Over a domain, D/I is Auslander but not torsion-free",
            kind: Kind::Example,
            instantiation: "Z-modules Z/n for 2 <= n <= 30",
            notes: &["Finite domains are fields and have no ideal other than (0) and (1)."],
            run: domain_quotient,
        },
        Statement {
            id: "examples.product-quotient",
            title: "Over k ⊕ k, R/((0) ⊕ k) is torsion-free but not Auslander",
            kind: Kind::Example,
            instantiation: "k ⊕ k for every prime field k among the universe rings",
            notes: &[],
            run: product_quotient,
        },
        Statement {
            id: "observations.property-a",
            title: "Every finite module has property (A)",
            kind: Kind::Observation,
            instantiation: "every nonzero universe member",
            notes: &["Finitely generated modules over Noetherian rings have property (A); a failure is an engine bug."],
            run: property_a,
        },
        Statement {
            id: "observations.content-module",
            title: "Which universe modules are content modules",
            kind: Kind::Observation,
            instantiation: "every universe member; the verdict is recomputed from the definition",
            notes: &["Not every finite module is a content module: over Z4[x]/(x^2), the module R/(2) has \
                      c(x) = (2x), which kills R/(2). Non-content members are listed as instances."],
            run: content_module,
        },
        Statement {
            id: "observations.flat-oracle",
            title: "The ideal criterion for flatness agrees with local freeness",
            kind: Kind::Observation,
            instantiation: "every universe member and every universe algebra as a module",
            notes: &[],
            run: flat_oracle,
        },
    ]
}

fn set_labels(ring: &FiniteRing, s: &MultiplicativeSet) -> Vec<String> {
    ring.labels(s.elements())
}

fn localization_auslander(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if m.module.is_zero() {
            t.skipped += 1;
            return t;
        }
        let ring = &m.ring;
        let avoid: Vec<bool> = m.module.zero_divisor_mask().iter().map(|&z| !z).collect();
        let auslander = ctx.auslander(m).holds;
        for s in multiplicative_sets_within(ring, &avoid) {
            let labels = set_labels(ring, &s);
            let spec = ModuleSpec::localize(m.spec.clone(), labels.clone());
            let d = Described::module(ring.key(), &spec);
            let ms = match m.module.localize(&s) {
                Ok(x) => x,
                Err(e) => {
                    t.skipped += 1;
                    t.log.push(format!("{}: skipped: {e}", d.subject()));
                    continue;
                }
            };
            let ring_zd = s.elements().iter().any(|&r| ring.is_zero_divisor(r));
            if auslander {
                t.applicable += 1;
                let v = ctx.module_auslander(&ms);
                t.expect(v.holds, &d.subject(), "M_S is not Auslander over R_S", || {
                    d.witness(Claim::Auslander, &v, &ms)
                });
                if ring_zd {
                    t.log.push(format!("{}: applicable with zero-divisors of R in S", d.subject()));
                }
            } else if ring_zd {
                let v = ctx.module_auslander(&ms);
                t.log.push(format!(
                    "probe {}: S = {{{}}} avoids Z(M) and contains zero-divisors of R acting regularly on M; \
                     outside the hypothesis (M is not Auslander); M_S has size {} and is {}Auslander over R_S",
                    m.subject(),
                    labels.join(","),
                    ms.size(),
                    if v.holds { "" } else { "not " }
                ));
            }
        }
        t
    })
}

fn torsion_characterization(ctx: &Ctx) -> Tally {
    let mut t = ctx.each_member(|m| {
        let mut t = Tally::default();
        if m.module.is_zero() {
            t.skipped += 1;
            return t;
        }
        t.applicable += 1;
        let kernel_zero = m.module.natural_map_kernel().is_zero();
        let v = ctx.torsion_free(m);
        let d = Described::member(m);
        t.expect(kernel_zero == v.holds, &m.subject(), "kernel definition and Z(M) inclusion disagree", || {
            d.witness(Claim::TorsionFree, &v, &m.module)
        });
        t
    });
    for n in std::iter::once(0).chain(CASES) {
        let z = ZModule::new(n);
        t.applicable += 1;
        let subject = format!("{INTEGERS} / {}", z.descriptor());
        t.expect(
            Some(z.natural_map_kernel_is_zero()) == z.is_torsion_free(),
            &subject,
            "kernel definition and Z(M) inclusion disagree",
            Vec::new,
        );
        if n == 6 {
            t.instance(subject, "kernel is the whole module; torsion-free fails", integer_witness(z));
        }
    }
    t
}

fn integer_witness(z: ZModule) -> Vec<WitnessRecord> {
    torsion_record(z).into_iter().collect()
}

fn localized_ring(ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    let limits = ctx.universe.limits.core_limits();
    for ring in &ctx.universe.rings {
        let regular: Vec<bool> = ring.zero_divisor_mask().iter().map(|&z| !z).collect();
        for s in multiplicative_sets_within(ring, &regular) {
            let subject = format!("{} / Localize(Reg,{{{}}})", ring.key(), set_labels(ring, &s).join(","));
            let rs = match localize(ring, &s) {
                Ok(x) => x,
                Err(e) => {
                    t.skipped += 1;
                    t.log.push(format!("{subject}: skipped: {e}"));
                    continue;
                }
            };
            let algebra = match FiniteAlgebra::canonical(&rs, ring, limits) {
                Ok(a) => a,
                Err(e) => {
                    t.skipped += 1;
                    t.log.push(format!("{subject}: skipped: {e}"));
                    continue;
                }
            };
            let module: &FiniteModule = algebra.as_module().expect("R_S is no larger than R");
            t.applicable += 1;
            t.expect(
                module.zero_divisor_mask() == ring.zero_divisor_mask(),
                &subject,
                "Z_R(R_S) differs from Z_R(R)",
                Vec::new,
            );
            let a = ctx.module_auslander(module);
            t.expect(a.holds, &subject, "R_S is not Auslander over R", Vec::new);
            let tf = ctx.module_torsion_free(module);
            t.expect(tf.holds, &subject, "R_S is not torsion-free over R", Vec::new);
        }
    }
    t
}

fn domain_quotient(ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    for ring in &ctx.universe.rings {
        if ring.ring_predicates().is_domain {
            let proper = ring.all_ideals().iter().filter(|i| !i.is_zero() && !i.is_whole()).count();
            t.checked += 1;
            if proper != 0 {
                t.fail(ring.key(), "a finite domain with a proper nonzero ideal", Vec::new());
            }
        }
    }
    for n in CASES {
        let z = ZModule::new(n);
        let subject = format!("{INTEGERS} / {}", z.descriptor());
        t.applicable += 1;
        t.expect(z.contains_defining_ideal(), &subject, "Z(Z/n) does not contain (n)", Vec::new);
        t.expect(z.is_auslander() == Some(true), &subject, "not Auslander", Vec::new);
        t.expect(z.is_torsion_free() == Some(false), &subject, "torsion-free", Vec::new);
        t.instance(subject, "Auslander, not torsion-free", integer_witness(z));
    }
    t
}

fn product_quotient(ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    let limits = ctx.universe.limits.core_limits();
    for ring in &ctx.universe.rings {
        let RingSpec::Prod(a, b) = ring.spec() else { continue };
        if a != b || !is_field_factor(ring) {
            continue;
        }
        let (zero, _) = ring.components(ring.zero()).expect("product ring");
        let (_, one) = ring.components(ring.one()).expect("product ring");
        let e2 = ring.pair(zero, one).expect("product ring");
        let spec = ModuleSpec::cyclic([ring.label(e2).to_string()]);
        let ideal = ring.ideal_generated(&[e2]).expect("e2 is in the ring");
        let module = FiniteModule::cyclic(ring, &ideal, limits).expect("R/I is smaller than R");
        t.applicable += 1;
        check_product_quotient(ctx, &mut t, ring, &Described::module(ring.key(), spec), &module);
    }
    t
}

/// `k ⊕ k` with `k` a field: the units are exactly the elements with no zero coordinate.
fn is_field_factor(ring: &FiniteRing) -> bool {
    let zero = ring.components(ring.zero()).expect("product ring").0;
    ring.elements().all(|x| {
        let (a, b) = ring.components(x).expect("product ring");
        ring.is_unit(x) == (a != zero && b != zero)
    })
}

fn check_product_quotient(ctx: &Ctx, t: &mut Tally, ring: &FiniteRing, d: &Described, module: &FiniteModule) {
    let subject = d.subject();
    let zero = ring.components(ring.zero()).expect("product ring").0;
    let expected_ring: Vec<bool> = ring
        .elements()
        .map(|x| {
            let (a, b) = ring.components(x).expect("product ring");
            a == zero || b == zero
        })
        .collect();
    let expected_module: Vec<bool> = ring
        .elements()
        .map(|x| ring.components(x).expect("product ring").0 == zero)
        .collect();
    t.expect(
        ring.zero_divisor_mask() == expected_ring.as_slice(),
        &subject,
        "Z(R) differs from (0 ⊕ k) ∪ (k ⊕ 0)",
        Vec::new,
    );
    t.expect(
        module.zero_divisor_mask() == expected_module.as_slice(),
        &subject,
        "Z(R/I) differs from 0 ⊕ k",
        Vec::new,
    );
    let tf = ctx.module_torsion_free(module);
    t.expect(tf.holds, &subject, "not torsion-free", Vec::new);
    let a = ctx.module_auslander(module);
    t.expect(!a.holds, &subject, "Auslander", Vec::new);
    let z = |mask: &[bool]| {
        ring.elements()
            .filter(|x| mask[x.idx()])
            .map(|x| ring.label(x).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    t.instance(
        subject,
        format!(
            "Z(R) = {{{}}}, Z(M) = {{{}}}; torsion-free, not Auslander",
            z(ring.zero_divisor_mask()),
            z(module.zero_divisor_mask())
        ),
        d.witness(Claim::Auslander, &a, module),
    );
}

fn property_a(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if m.module.is_zero() {
            t.skipped += 1;
            return t;
        }
        t.applicable += 1;
        let v = &m.facts.property_a;
        let d = Described::member(m);
        t.expect(v.holds, &m.subject(), "property (A) fails", || d.witness(Claim::PropertyA, v, &m.module));
        t
    })
}

fn content_module(ctx: &Ctx) -> Tally {
    let mut t = ctx.each_member(|m| {
        let mut t = Tally::default();
        t.applicable += 1;
        let v = &m.facts.content_module;
        let by_definition = content_by_definition(&m.module);
        t.expect(v.holds == by_definition, &m.subject(), "verdict disagrees with the definition", Vec::new);
        if !v.holds {
            t.instance(
                m.subject(),
                "not a content module",
                Described::member(m).witness(Claim::ContentModule, v, &m.module),
            );
        }
        t
    });
    t.log.push(format!(
        "{} of {} members are not content modules",
        t.instances.len(),
        t.applicable
    ));
    t
}

/// `x ∈ c(x)M` for every `x`, with `c(x)` the intersection of every ideal `I`
/// with `x ∈ IM`.
fn content_by_definition(m: &FiniteModule) -> bool {
    let ring = m.ring();
    let images: Vec<_> = ring
        .all_ideals()
        .iter()
        .map(|i| (i, m.ideal_action(i).expect("ideal of the module's ring")))
        .collect();
    m.elements().all(|x| {
        let mut content = vec![true; ring.size()];
        for (i, im) in &images {
            if im.contains(x) {
                for (c, &inside) in content.iter_mut().zip(i.members()) {
                    *c &= inside;
                }
            }
        }
        let c = ring
            .ideal_generated(&ring.elements().filter(|r| content[r.idx()]).collect::<Vec<_>>())
            .expect("intersection of ideals");
        m.ideal_action(&c).expect("ideal of the module's ring").contains(x)
    })
}

fn flat_oracle(ctx: &Ctx) -> Tally {
    let mut t = ctx.each_member(|m| {
        let mut t = Tally::default();
        t.applicable += 1;
        let d = Described::member(m);
        let v = &m.facts.flat;
        t.expect(v.holds == m.facts.locally_free, &m.subject(), "ideal criterion and local freeness disagree", || {
            d.witness(Claim::Flat, v, &m.module)
        });
        t
    });
    for a in &ctx.universe.algebras {
        let module = a.algebra.as_module().expect("universe algebras fit the module bound");
        t.applicable += 1;
        let subject = format!("{} / {}", a.algebra.base().key(), a.spec);
        t.expect(a.facts.flat.holds == module.locally_free(), &subject, "ideal criterion and local freeness disagree", Vec::new);
    }
    t
}
