//! Localization of finite rings and modules, and the total quotient ring.
//!
//! In a finite structure every fraction `x/s` equals some `y/1`, so `M_S` is
//! `M` modulo its `S`-torsion, with `R_S` acting through representatives.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::MultiplicativeSet;
use crate::module::{FiniteModule, ModElem, ModuleTag, Submodule, Tables};
use crate::ring::{localized, Elem, FiniteRing, RingSpec, Structure};

/// `R_S`.
pub fn localize(ring: &Arc<FiniteRing>, set: &MultiplicativeSet) -> Result<Arc<FiniteRing>> {
    if set.ring_key() != ring.key() {
        return Err(Error::RingMismatch(ring.key().into(), set.ring_key().into()));
    }
    localized(ring, set.elements().to_vec(), None)
}

/// The non-zero-divisors of `R`.
pub fn regular_elements(ring: &FiniteRing) -> MultiplicativeSet {
    let regular: Vec<Elem> = ring.elements().filter(|&r| !ring.is_zero_divisor(r)).collect();
    ring.multiplicative_closure(&regular).expect("elements of the ring")
}

/// `Q(R)`, the localization at all non-zero-divisors.
pub fn total_quotient(ring: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
    let s = regular_elements(ring);
    localized(ring, s.elements().to_vec(), Some(RingSpec::total_quotient(ring.spec().clone())))
}

/// Every multiplicatively closed set (containing 1) inside `mask`, in order of
/// size then elements. `mask` must itself be multiplicatively closed.
pub fn multiplicative_sets_within(ring: &FiniteRing, mask: &[bool]) -> Vec<MultiplicativeSet> {
    let candidates: Vec<Elem> = ring.elements().filter(|r| mask[r.idx()]).collect();
    let start = ring.multiplicative_closure(&[]).expect("empty generator list");
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    seen.insert(start.elements().to_vec());
    let mut queue = vec![start];
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        for &c in &candidates {
            if s.contains(c) {
                continue;
            }
            let mut gens = s.elements().to_vec();
            gens.push(c);
            let next = ring.multiplicative_closure(&gens).expect("elements of the ring");
            if seen.insert(next.elements().to_vec()) {
                queue.push(next);
            }
        }
        out.push(s);
    }
    out.sort_by(|a, b| (a.len(), a.elements()).cmp(&(b.len(), b.elements())));
    out
}

impl FiniteModule {
    /// `{m : s m = 0 for some s in S}`.
    pub fn torsion_submodule(&self, set: &MultiplicativeSet) -> Result<Submodule> {
        if set.ring_key() != self.ring().key() {
            return Err(Error::RingMismatch(self.ring().key().into(), set.ring_key().into()));
        }
        let members: Vec<bool> = self
            .elements()
            .map(|x| set.elements().iter().any(|&s| self.act(s, x) == ModElem::ZERO))
            .collect();
        let gens = self.min_generators(&members);
        Ok(self.submodule_from_mask(members, gens))
    }

    /// `M_S` as a module over `R_S`, elements labelled by least representatives.
    pub fn localize(&self, set: &MultiplicativeSet) -> Result<FiniteModule> {
        let rs = localize(self.ring(), set)?;
        let torsion = self.torsion_submodule(set)?;
        let descriptor = format!(
            "Localize({},{{{}}})",
            self.descriptor(),
            self.ring().labels(set.elements()).join(",")
        );
        self.localized_over(rs, &torsion, descriptor)
    }

    fn localized_over(&self, rs: Arc<FiniteRing>, torsion: &Submodule, descriptor: String) -> Result<FiniteModule> {
        let class_of = match rs.structure() {
            Structure::Localized { class_of, .. } => class_of.clone(),
            _ => unreachable!("localized rings carry their class map"),
        };
        let mut rep = vec![None; rs.size()];
        for b in self.ring().elements() {
            rep[class_of[b.idx()].idx()].get_or_insert(b);
        }
        let (coset, reps) = self.coset_reps(torsion);
        let index: std::collections::HashMap<ModElem, u32> =
            reps.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
        let class = |x: ModElem| index[&coset[x.idx()]];
        let size = reps.len();
        let mut add = Vec::with_capacity(size * size);
        for &a in &reps {
            for &b in &reps {
                add.push(class(self.add(a, b)));
            }
        }
        let mut act = Vec::with_capacity(rs.size() * size);
        for c in rs.elements() {
            let r = rep[c.idx()].expect("every class has a representative");
            for &a in &reps {
                act.push(class(self.act(r, a)));
            }
        }
        let tables = Tables {
            labels: reps.iter().map(|&a| self.label(a).to_string()).collect(),
            add,
            neg: reps.iter().map(|&a| class(self.neg(a))).collect(),
            act,
        };
        Ok(FiniteModule::from_tables(
            rs,
            descriptor,
            ModuleTag::Localized,
            tables,
            None,
            self.limits(),
        ))
    }

    /// The canonical map `M -> M_S`, as the class index of each element.
    pub fn localization_map(&self, set: &MultiplicativeSet) -> Result<Vec<ModElem>> {
        let torsion = self.torsion_submodule(set)?;
        let (coset, reps) = self.coset_reps(&torsion);
        Ok(coset
            .iter()
            .map(|r| ModElem(reps.binary_search(r).expect("representative listed") as u32))
            .collect())
    }

    /// Kernel of `M -> M ⊗ Q(R)`, `m ↦ m/1`.
    pub fn natural_map_kernel(&self) -> Submodule {
        let s = regular_elements(self.ring());
        let map = self.localization_map(&s).expect("same ring");
        let members: Vec<bool> = map.iter().map(|&c| c == ModElem::ZERO).collect();
        let gens = self.min_generators(&members);
        self.submodule_from_mask(members, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Limits;
    use crate::ring::make_ring;

    fn prod22() -> Arc<FiniteRing> {
        make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap()
    }

    /// Classes of pairs `(x, s)` under `u (t x - s y) = 0`, counted directly.
    fn pair_classes(m: &FiniteModule, s: &MultiplicativeSet) -> usize {
        let pairs: Vec<(ModElem, Elem)> = m
            .elements()
            .flat_map(|x| s.elements().iter().map(move |&t| (x, t)))
            .collect();
        let equiv = |(x, s1): (ModElem, Elem), (y, t): (ModElem, Elem)| {
            let d = m.sub(m.act(t, x), m.act(s1, y));
            s.elements().iter().any(|&u| m.act(u, d) == ModElem::ZERO)
        };
        let mut reps: Vec<(ModElem, Elem)> = Vec::new();
        for &p in &pairs {
            if !reps.iter().any(|&q| equiv(p, q)) {
                reps.push(p);
            }
        }
        // transitivity: each pair matches exactly one representative
        for &p in &pairs {
            assert_eq!(reps.iter().filter(|&&q| equiv(p, q)).count(), 1);
        }
        reps.len()
    }

    #[test]
    fn localizing_the_product() {
        let r = prod22();
        let s = r.multiplicative_closure(&[r.parse_elem("(1,0)").unwrap()]).unwrap();
        let rs = localize(&r, &s).unwrap();
        assert_eq!(rs.size(), 2);
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        let ms = m.localize(&s).unwrap();
        assert_eq!(ms.size(), 2);
        assert!(ms.check_axioms(8).is_ok());
        assert_eq!(pair_classes(&m, &s), 2);
        assert_eq!(pair_classes(&FiniteModule::regular(&r), &s), 2);
    }

    #[test]
    fn pair_oracle_agrees_on_small_cases() {
        for spec in [RingSpec::zmod(12), RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(3))] {
            let r = make_ring(&spec).unwrap();
            let reg = FiniteModule::regular(&r);
            let all: Vec<bool> = vec![true; r.size()];
            for s in multiplicative_sets_within(&r, &all) {
                assert_eq!(reg.localize(&s).unwrap().size(), pair_classes(&reg, &s));
            }
        }
    }

    #[test]
    fn total_quotients_are_trivial() {
        for spec in [RingSpec::zmod(6), RingSpec::zmod(5), RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))] {
            let r = make_ring(&spec).unwrap();
            let q = total_quotient(&r).unwrap();
            assert_eq!(q.size(), r.size());
            assert_eq!(q.key(), format!("TotalQuotient({})", r.key()));
        }
        let units = regular_elements(&make_ring(&RingSpec::zmod(6)).unwrap());
        let r = make_ring(&RingSpec::zmod(6)).unwrap();
        assert_eq!(localize(&r, &units).unwrap().size(), 6);
    }

    #[test]
    fn zero_in_the_set_kills_everything() {
        let r = make_ring(&RingSpec::zmod(4)).unwrap();
        let s = r.multiplicative_closure(&[Elem(2)]).unwrap();
        assert_eq!(localize(&r, &s).unwrap().size(), 1);
        assert!(FiniteModule::regular(&r).localize(&s).unwrap().is_zero());
    }

    #[test]
    fn kernel_matches_torsion_freeness() {
        let r = prod22();
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        assert!(m.natural_map_kernel().is_zero());
        assert!(m.is_torsion_free().holds);
    }
}
