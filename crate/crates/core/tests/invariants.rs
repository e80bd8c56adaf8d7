//! Structural invariants over a fixed pool of small rings, checked against
//! direct recomputation from the multiplication and action tables.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use zerodiv_core::ext::{brute_force_zd, is_zd_on_extension};
use zerodiv_core::{
    build_module, make_ring, Elem, ExtElement, FiniteModule, FiniteRing, Limits, ModElem, ModuleSpec, RingSpec,
    Variant,
};

fn pool() -> &'static [Arc<FiniteRing>] {
    static POOL: OnceLock<Vec<Arc<FiniteRing>>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut specs: Vec<RingSpec> = (2..=12).map(RingSpec::zmod).collect();
        specs.push(RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2)));
        specs.push(RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(4)));
        specs.push(RingSpec::prod(RingSpec::zmod(3), RingSpec::zmod(3)));
        for (n, rel) in [(2, "x^2"), (2, "x^3"), (3, "x^2"), (4, "x^2"), (2, "x^2+x+1"), (4, "x^2+x+1")] {
            specs.push(RingSpec::poly_quot(RingSpec::zmod(n), rel).unwrap());
        }
        specs.iter().map(|s| make_ring(s).unwrap()).collect()
    })
}

fn ring_index() -> impl Strategy<Value = usize> {
    0..pool().len()
}

/// Every cyclic module of the ring and the regular module.
fn modules(r: &Arc<FiniteRing>) -> Vec<FiniteModule> {
    let mut out = vec![FiniteModule::regular(r)];
    for i in r.all_ideals() {
        out.push(FiniteModule::cyclic(r, i, Limits::default()).unwrap());
    }
    out
}

/// `Z(M)` straight from the action table.
fn zero_divisors_by_table(m: &FiniteModule) -> Vec<bool> {
    let r = m.ring();
    r.elements()
        .map(|a| m.nonzero_elements().any(|x| m.act(a, x) == ModElem::ZERO))
        .collect()
}

#[test]
fn ring_axioms_hold() {
    for r in pool() {
        r.check_axioms().unwrap_or_else(|e| panic!("{}: {e}", r.key()));
    }
}

#[test]
fn zero_divisors_are_the_nonunits() {
    for r in pool() {
        for a in r.elements() {
            let unit = r.elements().any(|b| r.mul(a, b) == r.one());
            let zd = r.elements().any(|b| b != Elem::ZERO && r.mul(a, b) == Elem::ZERO);
            assert_eq!(zd, !unit, "{} {}", r.key(), r.label(a));
            assert_eq!(r.is_zero_divisor(a), zd);
        }
    }
}

#[test]
fn module_zero_divisors_and_verdicts_match_the_tables() {
    for r in pool() {
        for m in modules(r) {
            if m.is_zero() {
                continue;
            }
            let z = zero_divisors_by_table(&m);
            assert_eq!(m.zero_divisor_mask(), &z[..], "{} {}", r.key(), m.descriptor());
            let ring_z = r.zero_divisor_mask();
            let auslander = ring_z.iter().zip(&z).all(|(&a, &b)| !a || b);
            let torsion_free = z.iter().zip(ring_z).all(|(&a, &b)| !a || b);
            assert_eq!(m.is_auslander().holds, auslander, "{} {}", r.key(), m.descriptor());
            assert_eq!(m.is_torsion_free().holds, torsion_free, "{} {}", r.key(), m.descriptor());
            // Regular elements of a finite ring are units, so no kernel survives.
            assert!(m.natural_map_kernel().is_zero());
        }
    }
}

#[test]
fn submodules_have_fewer_zero_divisors() {
    for r in pool().iter().filter(|r| r.size() <= 8) {
        for m in modules(r) {
            for s in m.all_submodules().iter().filter(|s| !s.is_zero()) {
                let n = m.submodule_module(s).unwrap();
                let (zn, zm) = (n.zero_divisor_mask(), m.zero_divisor_mask());
                assert!(zn.iter().zip(zm).all(|(&a, &b)| !a || b));
            }
        }
    }
}

#[test]
fn flatness_is_local_freeness() {
    for r in pool() {
        for m in modules(r) {
            assert_eq!(m.is_flat().unwrap().holds, m.locally_free(), "{} {}", r.key(), m.descriptor());
        }
        if r.size() <= 6 {
            let m = build_module(r, &ModuleSpec::Free(2), Limits::default()).unwrap();
            assert!(m.is_flat().unwrap().holds && m.locally_free());
        }
    }
}

fn subset(r: &FiniteRing, mask: u64) -> Vec<Elem> {
    r.elements().filter(|a| mask >> (a.0 % 64) & 1 == 1).collect()
}

fn poly(r: &FiniteRing, coeffs: &[u32], variant: Variant) -> ExtElement<Elem> {
    let n = r.size() as u32;
    ExtElement::from_terms(
        variant,
        coeffs.iter().enumerate().map(|(k, &c)| {
            let mut exp = vec![0; variant.arity()];
            exp[0] = k as u32;
            (exp, Elem(c % n))
        }),
        |a, b| r.add(a, b),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ideal_identities(k in ring_index(), a in any::<u64>(), b in any::<u64>()) {
        let r = &pool()[k];
        let i = r.ideal_generated(&subset(r, a)).unwrap();
        let j = r.ideal_generated(&subset(r, b)).unwrap();
        let ij = r.ideal_product(&i, &j).unwrap();
        let meet = r.ideal_intersection(&i, &j).unwrap();
        let sum = r.ideal_sum(&i, &j).unwrap();
        prop_assert!(ij.is_subset(&meet));
        prop_assert!(i.is_subset(&sum) && j.is_subset(&sum));
        prop_assert_eq!(r.ideal_generated(i.elements()).unwrap(), i.clone());
        prop_assert!(r.all_ideals().contains(&i));
        let ann = r.annihilator(&i).unwrap();
        prop_assert!(r.ideal_product(&ann, &i).unwrap().is_zero());
        for x in r.elements() {
            let kills = i.elements().iter().all(|&y| r.mul(x, y) == Elem::ZERO);
            prop_assert_eq!(ann.contains(x), kills);
        }
    }

    #[test]
    fn content_of_a_product_lies_in_the_product_of_contents(
        k in ring_index(),
        f in proptest::collection::vec(0u32..64, 1..4),
        g in proptest::collection::vec(0u32..64, 1..4),
    ) {
        let r = &pool()[k];
        let v = Variant::Poly { vars: 1 };
        let (f, g) = (poly(r, &f, v), poly(r, &g, v));
        let fg = f.mul(&g, r).unwrap();
        let product = r.ideal_product(&f.content(r).unwrap(), &g.content(r).unwrap()).unwrap();
        prop_assert!(fg.content(r).unwrap().is_subset(&product));
    }

    #[test]
    fn zero_divisor_verdicts_are_stable(
        k in ring_index(),
        which in any::<usize>(),
        f in proptest::collection::vec(0u32..64, 1..3),
    ) {
        let r = &pool()[k];
        let ms = modules(r);
        let m = &ms[which % ms.len()];
        prop_assume!(!m.is_zero());
        let f = poly(r, &f, Variant::Poly { vars: 1 });
        let v = is_zd_on_extension(&f, m).unwrap().holds;
        prop_assert_eq!(is_zd_on_extension(&f.embed(2).unwrap(), m).unwrap().holds, v);
        prop_assert_eq!(is_zd_on_extension(&f.as_series(8).unwrap(), m).unwrap().holds, v);
        if m.size() <= 8 {
            prop_assert_eq!(brute_force_zd(&f, m, f.degree()).unwrap().holds, v);
        }
    }

    #[test]
    fn regular_action_is_multiplication(k in ring_index(), a in any::<u32>(), b in any::<u32>()) {
        let r = &pool()[k];
        let n = r.size() as u32;
        let (a, b) = (Elem(a % n), Elem(b % n));
        let m = FiniteModule::regular(r);
        prop_assert_eq!(m.act(a, ModElem(b.0)), ModElem(r.mul(a, b).0));
    }
}
