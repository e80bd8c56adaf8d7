//! Families of Auslander modules and of torsion-free Auslander modules.

use rayon::prelude::*;
use zerodiv_core::{FiniteModule, ModElem, ModuleSpec};

use super::{Ctx, Described, Kind, Statement, Tally};
use crate::universe::Member;
use crate::witness::Claim;
use crate::zadapter::{ZModule, CASES};

pub(super) fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "families.domain",
            title: "Every nonzero module over a domain is Auslander",
            kind: Kind::Implication,
            instantiation: "universe members over fields; Z-modules Z/n for 2 <= n <= 30",
            notes: &["Finite domains are fields; the integer adapter supplies the non-field cases."],
            run: domain,
        },
        Statement {
            id: "families.flat-content",
            title: "Flat content modules with every principal ideal a content are Auslander",
            kind: Kind::Implication,
            instantiation: "universe members that are flat, content and content-surjective",
            notes: &["Also checks c(r x) = r c(x) and c(x) = 0 iff x = 0 on every applicable member."],
            run: flat_content,
        },
        Statement {
            id: "families.faithful",
            title: "Faithful modules are Auslander",
            kind: Kind::Implication,
            instantiation: "universe members with Ann(M) = 0",
            notes: &[],
            run: faithful,
        },
        Statement {
            id: "families.faithful-hom",
            title: "Hom(M, M) is Auslander when M is faithful",
            kind: Kind::Implication,
            instantiation: "faithful universe members within the hom-source bound",
            notes: &[],
            run: faithful_hom,
        },
        Statement {
            id: "families.submodule",
            title: "Z(N) is inside Z(M) for submodules, so an Auslander submodule makes M Auslander",
            kind: Kind::Implication,
            instantiation: "every nonzero submodule of every universe member",
            notes: &[],
            run: submodule,
        },
        Statement {
            id: "families.direct-sum",
            title: "A direct sum with an Auslander summand is Auslander",
            kind: Kind::Implication,
            instantiation: "finite-index instantiation: two and three summands over the same ring",
            notes: &["Infinite families are out of reach; two and three summands are checked."],
            run: direct_sum,
        },
        Statement {
            id: "tf-families.domain-flat",
            title: "Flat modules over a domain are torsion-free Auslander",
            kind: Kind::Implication,
            instantiation: "flat universe members over fields; the Z-module Z",
            notes: &["Over the integers only Z itself is flat among the adapter modules."],
            run: tf_domain_flat,
        },
        Statement {
            id: "tf-families.flat-content",
            title: "Flat content-surjective content modules are torsion-free Auslander",
            kind: Kind::Implication,
            instantiation: "universe members that are flat, content and content-surjective",
            notes: &[],
            run: tf_flat_content,
        },
        Statement {
            id: "tf-families.hom",
            title: "Hom(M, M) is torsion-free Auslander for faithful finitely generated flat M",
            kind: Kind::Implication,
            instantiation: "faithful flat universe members within the hom-source bound",
            notes: &[],
            run: tf_hom,
        },
        Statement {
            id: "tf-families.direct-sum",
            title: "A direct sum of flat modules with an Auslander summand is torsion-free Auslander",
            kind: Kind::Implication,
            instantiation: "finite-index instantiation: two and three flat summands",
            notes: &[],
            run: tf_direct_sum,
        },
        Statement {
            id: "tf-families.product",
            title: "A product of flat modules with an Auslander factor is torsion-free Auslander",
            kind: Kind::Implication,
            instantiation: "finite-index instantiation: products of three flat factors (finite rings are coherent)",
            notes: &["At finite index a product is a direct sum; the three-factor case is checked."],
            run: tf_product,
        },
    ]
}

fn nonzero(t: &mut Tally, m: &Member) -> bool {
    if m.module.is_zero() {
        t.skipped += 1;
        false
    } else {
        true
    }
}

/// Records the conclusion `auslander` (and `torsion_free` when `tf`) on `module`.
fn conclude(ctx: &Ctx, t: &mut Tally, d: &Described, module: &FiniteModule, tf: bool) {
    let subject = d.subject();
    let a = ctx.module_auslander(module);
    t.expect(a.holds, &subject, "not Auslander", || d.witness(Claim::Auslander, &a, module));
    if tf {
        let v = ctx.module_torsion_free(module);
        t.expect(v.holds, &subject, "not torsion-free", || d.witness(Claim::TorsionFree, &v, module));
    }
}

fn domain(ctx: &Ctx) -> Tally {
    let mut t = ctx.each_member(|m| {
        let mut t = Tally::default();
        if !m.ring.ring_predicates().is_domain || !nonzero(&mut t, m) {
            return t;
        }
        t.applicable += 1;
        conclude(ctx, &mut t, &Described::member(m), &m.module, false);
        t
    });
    for n in CASES {
        let z = ZModule::new(n);
        t.applicable += 1;
        t.expect(z.is_auslander() == Some(true), &format!("ZZ / {}", z.descriptor()), "not Auslander", Vec::new);
    }
    t
}

fn flat_content_hypothesis(m: &Member) -> bool {
    m.facts.flat.holds && m.facts.content_module.holds && m.facts.content_surjective.holds
}

/// `c(r x) = (r) c(x)` and `c(x) = 0 ⟺ x = 0` on every element.
fn content_identities(t: &mut Tally, m: &Member) {
    let ring = &m.ring;
    let module = &m.module;
    let subject = m.subject();
    for x in module.elements() {
        let cx = module.content(x).expect("x is in the module");
        t.expect(cx.is_zero() == (x == ModElem::ZERO), &subject, "c(x) = 0 does not match x = 0", Vec::new);
        for r in ring.elements() {
            let lhs = module.content(module.act(r, x)).expect("r x is in the module");
            let principal = ring.ideal_generated(&[r]).expect("r is in the ring");
            let rhs = ring.ideal_product(&principal, &cx).expect("same ring");
            if lhs != rhs {
                t.fail(
                    &subject,
                    format!("c(r x) != r c(x) at r = {}, x = {}", ring.label(r), module.label(x)),
                    Vec::new(),
                );
            }
            t.checked += 1;
        }
    }
}

fn flat_content(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !flat_content_hypothesis(m) {
            return t;
        }
        t.applicable += 1;
        content_identities(&mut t, m);
        conclude(ctx, &mut t, &Described::member(m), &m.module, false);
        t
    })
}

fn faithful(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !m.facts.faithful.holds {
            return t;
        }
        t.applicable += 1;
        conclude(ctx, &mut t, &Described::member(m), &m.module, false);
        t
    })
}

fn hom_of(ctx: &Ctx, t: &mut Tally, m: &Member, tf: bool) {
    if m.module.size() > ctx.universe.limits.hom_source {
        t.skipped += 1;
        return;
    }
    let hom = match m.hom() {
        Ok(h) => h,
        Err(e) => {
            t.skipped += 1;
            t.log.push(format!("{}: Hom skipped: {e}", m.subject()));
            return;
        }
    };
    t.applicable += 1;
    let d = Described::module(m.ring.key(), ModuleSpec::hom(m.spec.clone()));
    conclude(ctx, t, &d, &hom, tf);
}

fn faithful_hom(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !m.facts.faithful.holds {
            return t;
        }
        hom_of(ctx, &mut t, m, false);
        t
    })
}

fn submodule(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) {
            return t;
        }
        let ring = &m.ring;
        let module = &m.module;
        let zm = module.zero_divisor_mask();
        let zr = ring.zero_divisor_mask();
        let subject = m.subject();
        for n in module.all_submodules() {
            if n.is_zero() {
                continue;
            }
            let zn: Vec<bool> = ring
                .elements()
                .map(|r| n.elements().iter().any(|&x| x != ModElem::ZERO && module.act(r, x) == ModElem::ZERO))
                .collect();
            let inside = zn.iter().zip(zm).all(|(&a, &b)| !a || b);
            let gens = module.labels(n.generators()).join(",");
            t.expect(inside, &subject, &format!("Z(N) not inside Z(M) for N = <{gens}>"), Vec::new);
            let n_auslander = zr.iter().zip(&zn).all(|(&a, &b)| !a || b);
            if n_auslander {
                t.applicable += 1;
                let a = ctx.auslander(m);
                let d = Described::member(m);
                t.expect(a.holds, &subject, &format!("Auslander submodule <{gens}> in a non-Auslander module"), || {
                    d.witness(Claim::Auslander, &a, module)
                });
            }
        }
        t
    })
}

/// Members over the same ring as `m`, in universe order.
fn partners<'a>(ctx: &'a Ctx, m: &'a Member) -> impl Iterator<Item = &'a Member> + 'a {
    ctx.universe.members_over(&m.ring).filter(|p| !p.module.is_zero())
}

fn sum_spec(parts: &[&Member]) -> ModuleSpec {
    let mut spec = parts[0].spec.clone();
    for p in &parts[1..] {
        spec = ModuleSpec::sum(spec, p.spec.clone());
    }
    spec
}

fn build_sum(parts: &[&Member]) -> zerodiv_core::Result<FiniteModule> {
    let mut acc = FiniteModule::direct_sum(&parts[0].module, &parts[1].module)?;
    for p in &parts[2..] {
        acc = FiniteModule::direct_sum(&acc, &p.module)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Terms {
    TwoAndThree,
    Three,
}

/// Three-term sums are capped tighter than the universe: their count grows cubically.
const TRIPLE_CAP: usize = 64;

/// Sums whose first term is `m` and whose other terms pass `keep`.
fn sums(ctx: &Ctx, m: &Member, terms: Terms, tf: bool, keep: &(dyn Fn(&Member) -> bool + Sync)) -> Tally {
    let cap = ctx.universe.limits.max_module;
    let mut combos: Vec<Vec<&Member>> = Vec::new();
    let ps: Vec<&Member> = partners(ctx, m).filter(|p| keep(p)).collect();
    for (i, p) in ps.iter().enumerate() {
        if terms == Terms::TwoAndThree && m.module.size() * p.module.size() <= cap {
            combos.push(vec![m, p]);
        }
        for q in &ps[i..] {
            if m.module.size() * p.module.size() * q.module.size() <= TRIPLE_CAP {
                combos.push(vec![m, p, q]);
            }
        }
    }
    combos
        .par_iter()
        .map(|parts| {
            let mut t = Tally::default();
            match build_sum(parts) {
                Ok(s) => {
                    t.applicable += 1;
                    let d = Described::module(m.ring.key(), sum_spec(parts));
                    conclude(ctx, &mut t, &d, &s, tf);
                }
                Err(_) => t.skipped += 1,
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), |mut acc, t| {
            acc.merge(t);
            acc
        })
}

fn direct_sum(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !ctx.auslander(m).holds {
            return t;
        }
        t.merge(sums(ctx, m, Terms::TwoAndThree, false, &|_| true));
        t
    })
}

fn tf_domain_flat(ctx: &Ctx) -> Tally {
    let mut t = ctx.each_member(|m| {
        let mut t = Tally::default();
        if !m.ring.ring_predicates().is_domain || !nonzero(&mut t, m) || !m.facts.flat.holds {
            return t;
        }
        t.applicable += 1;
        conclude(ctx, &mut t, &Described::member(m), &m.module, true);
        t
    });
    let z = ZModule::new(0);
    if z.is_flat() {
        t.applicable += 1;
        let ok = z.is_auslander() == Some(true) && z.is_torsion_free() == Some(true);
        t.expect(ok, "ZZ / Reg", "not torsion-free Auslander", Vec::new);
    }
    t
}

fn tf_flat_content(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !flat_content_hypothesis(m) {
            return t;
        }
        t.applicable += 1;
        conclude(ctx, &mut t, &Described::member(m), &m.module, true);
        t
    })
}

fn tf_hom(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !m.facts.faithful.holds || !m.facts.flat.holds {
            return t;
        }
        hom_of(ctx, &mut t, m, true);
        t
    })
}

fn tf_direct_sum(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !m.facts.flat.holds || !ctx.auslander(m).holds {
            return t;
        }
        t.merge(sums(ctx, m, Terms::TwoAndThree, true, &|p| p.facts.flat.holds));
        t
    })
}

fn tf_product(ctx: &Ctx) -> Tally {
    ctx.each_member(|m| {
        let mut t = Tally::default();
        if !nonzero(&mut t, m) || !m.facts.flat.holds || !ctx.auslander(m).holds {
            return t;
        }
        t.merge(sums(ctx, m, Terms::Three, true, &|p| p.facts.flat.holds));
        t
    })
}
