//! Finite-algebra statements: Ohm-Rush for projective algebras, base change
//! along faithfully flat McCoy algebras, and the polynomial content algebra.

use rayon::prelude::*;
use zerodiv_core::ext::{is_auslander_extension, is_torsion_free_extension};
use zerodiv_core::{ModuleSpec, Variant};

use super::{Ctx, Described, Kind, Statement, Tally};
use crate::universe::{AlgebraMember, Member};
use crate::witness::{record, Claim, Subject};

pub(super) fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "algebra.ohm-rush",
            title: "Projective algebras are Ohm-Rush",
            kind: Kind::Implication,
            instantiation: "every universe algebra that is flat as a module (flat and finite is projective)",
            notes: &["Content is computed by intersecting the ideal lattice, never by reading coefficients."],
            run: ohm_rush,
        },
        Statement {
            id: "algebra.mccoy-tensor",
            title: "M ⊗ B is Auslander over a faithfully flat McCoy algebra B when M is Auslander with property (A)",
            kind: Kind::Implication,
            instantiation: "every universe algebra passing faithful flatness and McCoy, with every Auslander member over its base",
            notes: &[],
            run: mccoy_tensor,
        },
        Statement {
            id: "algebra.content-tensor",
            title: "M ⊗ R[X] = M[X] is Auslander over the content algebra R[X] when M is Auslander with property (A)",
            kind: Kind::Implication,
            instantiation: "every Auslander universe member; R[X] decided by the content criterion",
            notes: &["The content-algebra labeling is used only for R[X]; finite algebras are never labelled content algebras."],
            run: content_tensor,
        },
        Statement {
            id: "algebra.mccoy-tensor-tf",
            title: "M ⊗ B is torsion-free Auslander over a faithfully flat McCoy B when M is flat Auslander with property (A)",
            kind: Kind::Implication,
            instantiation: "every universe algebra passing faithful flatness and McCoy, with every flat Auslander member over its base",
            notes: &[],
            run: mccoy_tensor_tf,
        },
        Statement {
            id: "algebra.content-tensor-tf",
            title: "M[X] is torsion-free Auslander over R[X] when M is flat Auslander with property (A)",
            kind: Kind::Implication,
            instantiation: "every flat Auslander universe member; R[X] decided by the content criterion",
            notes: &[],
            run: content_tensor_tf,
        },
        Statement {
            id: "question.ff-mccoy",
            title: "Faithfully flat McCoy algebras in the universe",
            kind: Kind::Observation,
            instantiation: "every universe algebra",
            notes: &["Raw material only: whether these are content algebras is not decided here."],
            run: ff_mccoy,
        },
    ]
}

fn nontrivial(a: &AlgebraMember) -> bool {
    a.spec.algebra != a.spec.base
}

fn algebra_described(a: &AlgebraMember) -> Described {
    Described {
        ring: a.algebra.base().key().to_string(),
        module: None,
        algebra: Some(a.spec.to_string()),
    }
}

fn ohm_rush(ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    for a in &ctx.universe.algebras {
        let subject = algebra_described(a).subject();
        if !a.facts.flat.holds {
            t.log.push(format!(
                "{subject}: not flat, {}Ohm-Rush",
                if a.facts.ohm_rush.holds { "" } else { "not " }
            ));
            continue;
        }
        t.applicable += 1;
        let v = &a.facts.ohm_rush;
        t.expect(v.holds, &subject, "flat but not Ohm-Rush", || {
            let s = Subject {
                ring: a.algebra.base(),
                module: None,
                algebra: Some(&a.algebra),
            };
            record(Claim::OhmRush, v, s).into_iter().collect()
        });
    }
    t
}

fn ff_mccoy_algebras<'a>(ctx: &Ctx<'a>) -> impl Iterator<Item = &'a AlgebraMember> {
    ctx.universe
        .algebras
        .iter()
        .filter(|a| a.facts.faithfully_flat.holds && a.facts.mccoy.holds)
}

fn base_change(ctx: &Ctx, tf: bool) -> Tally {
    let algebras: Vec<&AlgebraMember> = ff_mccoy_algebras(ctx).collect();
    let tallies: Vec<Tally> = algebras
        .par_iter()
        .map(|a| {
            let mut t = Tally::default();
            let mut listed = false;
            for m in ctx.universe.members_over(a.algebra.base()) {
                if m.module.is_zero() {
                    t.skipped += 1;
                    continue;
                }
                if !(ctx.auslander(m).holds && m.facts.property_a.holds) || (tf && !m.facts.flat.holds) {
                    continue;
                }
                let spec = ModuleSpec::tensor(m.spec.clone(), a.spec.clone());
                let d = Described::module(m.ring.key(), &spec);
                let tensor = match m.module.tensor_with(&a.algebra) {
                    Ok(x) => x,
                    Err(e) => {
                        t.skipped += 1;
                        t.log.push(format!("{}: skipped: {e}", d.subject()));
                        continue;
                    }
                };
                t.applicable += 1;
                let v = ctx.module_auslander(&tensor);
                t.expect(v.holds, &d.subject(), "M ⊗ B is not Auslander over B", || {
                    d.witness(Claim::Auslander, &v, &tensor)
                });
                if tf {
                    let w = ctx.module_torsion_free(&tensor);
                    t.expect(w.holds, &d.subject(), "M ⊗ B is not torsion-free over B", || {
                        d.witness(Claim::TorsionFree, &w, &tensor)
                    });
                }
                if nontrivial(a) && !listed {
                    listed = true;
                    t.instance(
                        d.subject(),
                        format!("non-trivial algebra; M ⊗ B has {} elements over B", tensor.size()),
                        Vec::new(),
                    );
                }
            }
            t
        })
        .collect();
    let mut t = Tally::default();
    for x in tallies {
        t.merge(x);
    }
    t
}

fn mccoy_tensor(ctx: &Ctx) -> Tally {
    base_change(ctx, false)
}

fn mccoy_tensor_tf(ctx: &Ctx) -> Tally {
    base_change(ctx, true)
}

fn polynomial(ctx: &Ctx, tf: bool) -> Tally {
    let variant = Variant::Poly { vars: 1 };
    ctx.each_member(|m: &Member| {
        let mut t = Tally::default();
        if m.module.is_zero() {
            t.skipped += 1;
            return t;
        }
        if !(ctx.auslander(m).holds && m.facts.property_a.holds) || (tf && !m.facts.flat.holds) {
            return t;
        }
        t.applicable += 1;
        let d = Described::member(m);
        let subject = format!("{} over R[X]", d.subject());
        let v = is_auslander_extension(&m.module, variant);
        t.expect(v.holds, &subject, "M[X] is not Auslander over R[X]", || {
            d.witness(Claim::ExtensionAuslander, &v, &m.module)
        });
        if tf {
            let w = is_torsion_free_extension(&m.module, variant);
            t.expect(w.holds, &subject, "M[X] is not torsion-free over R[X]", || {
                d.witness(Claim::ExtensionTorsionFree, &w, &m.module)
            });
        }
        t
    })
}

fn content_tensor(ctx: &Ctx) -> Tally {
    polynomial(ctx, false)
}

fn content_tensor_tf(ctx: &Ctx) -> Tally {
    polynomial(ctx, true)
}

fn ff_mccoy(ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    for a in &ctx.universe.algebras {
        let subject = algebra_described(a).subject();
        if a.facts.faithfully_flat.holds && a.facts.mccoy.holds {
            t.applicable += 1;
            t.log.push(format!(
                "{subject}: faithfully flat and McCoy{}",
                if nontrivial(a) { "" } else { " (B = R)" }
            ));
        } else if a.facts.faithfully_flat.holds {
            t.log.push(format!("{subject}: faithfully flat, not McCoy"));
        }
    }
    t
}
