//! Module-level predicates: zero-divisors, annihilators, content, property (A),
//! Auslander and torsion-free modules, faithfulness and flatness.
//!
//! Every predicate returns a [`Verdict`]. A failing verdict carries a witness
//! unless it is degenerate (the zero module, where the definitions do not apply).

use crate::error::Result;
use crate::ext::ExtElement;
use crate::ideal::{Ideal, ZeroDivisorConvention};
use crate::module::{FiniteModule, ModElem, Submodule, Tuples};
use crate::ring::Elem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    RingElement(Elem),
    ModuleElement(ModElem),
    Ideal(Ideal),
    /// `I ⊗ M -> IM` is not injective: the two sides have different sizes.
    Flatness {
        ideal: Ideal,
        tensor_size: usize,
        image_size: usize,
    },
    /// A maximal ideal `p` with `pM = M`.
    Residue(Ideal),
    AlgebraElement(Elem),
    AlgebraPair {
        f: Elem,
        g: Elem,
    },
    RingExtension(ExtElement<Elem>),
    ModuleExtension(ExtElement<ModElem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Set when the structure is the zero module and the predicate is vacuous or undefined.
    pub degenerate: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict {
            holds: true,
            degenerate: false,
            witness: None,
        }
    }

    pub fn pass_with(w: Witness) -> Verdict {
        Verdict {
            holds: true,
            degenerate: false,
            witness: Some(w),
        }
    }

    pub fn fail(w: Witness) -> Verdict {
        Verdict {
            holds: false,
            degenerate: false,
            witness: Some(w),
        }
    }

    pub fn degenerate(holds: bool) -> Verdict {
        Verdict {
            holds,
            degenerate: true,
            witness: None,
        }
    }
}

impl FiniteModule {
    /// `Z(M)` as a mask over the ring; empty for the zero module.
    pub fn zero_divisor_mask(&self) -> &[bool] {
        self.zero_divisors.get_or_init(|| {
            self.ring()
                .elements()
                .map(|r| self.nonzero_elements().any(|x| self.act(r, x) == ModElem::ZERO))
                .collect()
        })
    }

    pub fn is_zero_divisor(&self, r: Elem) -> bool {
        self.zero_divisor_mask()[r.idx()]
    }

    pub fn zero_divisors(&self) -> Vec<Elem> {
        self.zero_divisors_with(ZeroDivisorConvention::default())
    }

    pub fn zero_divisors_with(&self, conv: ZeroDivisorConvention) -> Vec<Elem> {
        let mask = self.zero_divisor_mask();
        self.ring()
            .elements()
            .filter(|r| mask[r.idx()])
            .filter(|&r| conv == ZeroDivisorConvention::IncludeZero || r != Elem::ZERO)
            .collect()
    }

    fn ideal_from_mask(&self, mask: Vec<bool>) -> Ideal {
        let gens = self.ring().min_generators(&mask);
        self.ring().ideal_from_members(mask, gens)
    }

    /// `Ann(M)`.
    pub fn annihilator(&self) -> Ideal {
        let mask = self
            .ring()
            .elements()
            .map(|r| self.elements().all(|x| self.act(r, x) == ModElem::ZERO))
            .collect();
        self.ideal_from_mask(mask)
    }

    /// `Ann(x)`.
    pub fn annihilator_of(&self, x: ModElem) -> Result<Ideal> {
        if !self.contains(x) {
            return Err(crate::Error::NotInCarrier(format!("#{}", x.0)));
        }
        let mask = self.ring().elements().map(|r| self.act(r, x) == ModElem::ZERO).collect();
        Ok(self.ideal_from_mask(mask))
    }

    /// Elements of `M` killed by every generator of `i`.
    pub fn killed_by(&self, i: &Ideal) -> Vec<ModElem> {
        self.elements()
            .filter(|&x| i.generators().iter().all(|&a| self.act(a, x) == ModElem::ZERO))
            .collect()
    }

    /// `IM`.
    pub fn ideal_action(&self, i: &Ideal) -> Result<Submodule> {
        self.same_ring_key(i.ring_key())?;
        Ok(self.ideal_action_on(i, &self.module_generators()))
    }

    fn same_ring_key(&self, key: &str) -> Result<()> {
        if self.ring().key() != key {
            return Err(crate::Error::RingMismatch(self.ring().key().into(), key.into()));
        }
        Ok(())
    }

    pub(crate) fn module_generators(&self) -> Vec<ModElem> {
        self.min_generators(&vec![true; self.size()])
    }

    fn ideal_action_on(&self, i: &Ideal, gens: &[ModElem]) -> Submodule {
        let mut products = Vec::new();
        for &a in i.generators() {
            for &g in gens {
                products.push(self.act(a, g));
            }
        }
        self.span(&products).expect("products lie in the carrier")
    }

    /// `IM` for every ideal of the ring, aligned with `ring().all_ideals()`.
    pub fn ideal_images(&self) -> &[Submodule] {
        self.ideal_images.get_or_init(|| {
            let gens = self.module_generators();
            self.ring()
                .all_ideals()
                .iter()
                .map(|i| self.ideal_action_on(i, &gens))
                .collect()
        })
    }

    /// Index into the ideal lattice of `c(x) = ∩ {I : x ∈ IM}`.
    fn content_index(&self, x: ModElem) -> usize {
        let lattice = self.ring().all_ideals();
        let mut mask = vec![true; self.ring().size()];
        for (i, image) in lattice.iter().zip(self.ideal_images()) {
            if image.contains(x) {
                for (m, &b) in mask.iter_mut().zip(i.members()) {
                    *m &= b;
                }
            }
        }
        lattice
            .iter()
            .position(|i| i.members() == mask.as_slice())
            .expect("an intersection of ideals is in the lattice")
    }

    /// `c(x)`.
    pub fn content(&self, x: ModElem) -> Result<Ideal> {
        if !self.contains(x) {
            return Err(crate::Error::NotInCarrier(format!("#{}", x.0)));
        }
        Ok(self.ring().all_ideals()[self.content_index(x)].clone())
    }

    /// Holds iff `x ∈ c(x)M` for every `x`; the witness is the least offender.
    pub fn is_content_module(&self) -> Verdict {
        let images = self.ideal_images();
        for x in self.elements() {
            if !images[self.content_index(x)].contains(x) {
                return Verdict::fail(Witness::ModuleElement(x));
            }
        }
        Verdict::pass()
    }

    /// Holds iff every principal ideal `(s)` is `c(x)` for some `x`; the
    /// witness is the least `s` that is not attained.
    pub fn content_surjective(&self) -> Verdict {
        let ring = self.ring();
        let lattice = ring.all_ideals();
        let mut attained = vec![false; lattice.len()];
        for x in self.elements() {
            attained[self.content_index(x)] = true;
        }
        for s in ring.elements() {
            let p = ring.ideal_generated(&[s]).expect("s is in the ring");
            let idx = lattice.iter().position(|i| *i == p).expect("principal ideals are in the lattice");
            if !attained[idx] {
                return Verdict::fail(Witness::RingElement(s));
            }
        }
        Verdict::pass()
    }

    /// Every ideal inside `Z(M)` kills a nonzero element. The witness is the
    /// least ideal (in lattice order) that does not.
    pub fn has_property_a(&self) -> Verdict {
        if self.is_zero() {
            return Verdict::degenerate(true);
        }
        let zd = self.zero_divisor_mask();
        for i in self.ring().all_ideals() {
            if i.is_within(zd) && self.killed_by(i).len() < 2 {
                return Verdict::fail(Witness::Ideal(i.clone()));
            }
        }
        Verdict::pass()
    }

    /// `Z(R) ⊆ Z(M)`; the witness is the least element of `Z(R) \ Z(M)`.
    pub fn is_auslander(&self) -> Verdict {
        self.is_auslander_with(ZeroDivisorConvention::default())
    }

    pub fn is_auslander_with(&self, conv: ZeroDivisorConvention) -> Verdict {
        if self.is_zero() {
            return Verdict::degenerate(false);
        }
        let zm = self.zero_divisor_mask();
        match self.ring().zero_divisors_with(conv).into_iter().find(|r| !zm[r.idx()]) {
            Some(r) => Verdict::fail(Witness::RingElement(r)),
            None => Verdict::pass(),
        }
    }

    /// `Z(M) ⊆ Z(R)`; the witness is the least element of `Z(M) \ Z(R)`.
    pub fn is_torsion_free(&self) -> Verdict {
        self.is_torsion_free_with(ZeroDivisorConvention::default())
    }

    pub fn is_torsion_free_with(&self, conv: ZeroDivisorConvention) -> Verdict {
        if self.is_zero() {
            return Verdict::degenerate(false);
        }
        let zr = self.ring().zero_divisor_mask();
        match self.zero_divisors_with(conv).into_iter().find(|r| !zr[r.idx()]) {
            Some(r) => Verdict::fail(Witness::RingElement(r)),
            None => Verdict::pass(),
        }
    }

    /// `Ann(M) = (0)`; the witness is the least nonzero annihilating scalar.
    pub fn is_faithful(&self) -> Verdict {
        match self.annihilator().elements().iter().find(|&&r| r != Elem::ZERO) {
            Some(&r) => Verdict::fail(Witness::RingElement(r)),
            None => Verdict::pass(),
        }
    }

    /// `|I ⊗ M|`, from the presentation `R^a -> I` given by the generators of `I`:
    /// `I ⊗ M = M^a / <(k_1 x, ..., k_a x) : k in ker, x in M>`.
    pub fn ideal_tensor_size(&self, i: &Ideal) -> Result<usize> {
        self.same_ring_key(i.ring_key())?;
        self.ideal_tensor_size_with(i, &self.module_generators())
    }

    fn ideal_tensor_size_with(&self, i: &Ideal, gens: &[ModElem]) -> Result<usize> {
        let ring = self.ring();
        let a = i.generators().len();
        let rt = Tuples::over_ring(ring, a);
        let count = (ring.size() as u128).checked_pow(a as u32).unwrap_or(u128::MAX);
        let mt = Tuples::over_module(self, a);
        let limits = self.limits();
        limits.check_search(count)?;
        limits.check_search(mt.count())?;
        let mut kspan = vec![false; count as usize];
        kspan[0] = true;
        let mut kernel = Vec::new();
        for code in 0..count as usize {
            let c = rt.decode_elems(code);
            let value = c
                .iter()
                .zip(i.generators())
                .fold(Elem::ZERO, |acc, (&r, &g)| ring.add(acc, ring.mul(r, g)));
            if value == Elem::ZERO && !kspan[code] {
                rt.absorb(&mut kspan, code);
                kernel.push(c);
            }
        }
        let mut rel = vec![false; mt.count() as usize];
        rel[0] = true;
        for k in &kernel {
            for &x in gens {
                let v: Vec<ModElem> = k.iter().map(|&r| self.act(r, x)).collect();
                mt.absorb(&mut rel, mt.encode_mod(&v));
            }
        }
        let rel_size = rel.iter().filter(|&&b| b).count();
        Ok(mt.count() as usize / rel_size)
    }

    /// `I ⊗ M -> M` injective for every ideal, compared by cardinality with `IM`.
    /// The witness is the least ideal where it fails.
    pub fn is_flat(&self) -> Result<Verdict> {
        let gens = self.module_generators();
        let images = self.ideal_images();
        for (i, image) in self.ring().all_ideals().iter().zip(images) {
            if i.is_zero() || i.is_whole() {
                continue;
            }
            let t = self.ideal_tensor_size_with(i, &gens)?;
            if t != image.len() {
                return Ok(Verdict::fail(Witness::Flatness {
                    ideal: i.clone(),
                    tensor_size: t,
                    image_size: image.len(),
                }));
            }
        }
        Ok(Verdict::pass())
    }

    /// Flat, and `pM ≠ M` at every maximal ideal `p`.
    pub fn is_faithfully_flat(&self) -> Result<Verdict> {
        let flat = self.is_flat()?;
        if !flat.holds {
            return Ok(flat);
        }
        for p in self.ring().maximal_ideals() {
            if self.ideal_action(&p)?.is_whole() {
                return Ok(Verdict::fail(Witness::Residue(p)));
            }
        }
        Ok(Verdict::pass())
    }

    /// Independent flatness oracle: a finite ring is a product of local rings
    /// `eR`, and a finite module is flat iff each `eM` is free over `eR`.
    /// The rank is read off `|eM / p eM| = |R/p|^rank`.
    pub fn locally_free(&self) -> bool {
        let ring = self.ring();
        let maximal = ring.maximal_ideals();
        for e in ring.primitive_idempotents() {
            let p = maximal
                .iter()
                .find(|p| !p.contains(e))
                .expect("each primitive idempotent lies outside exactly one maximal ideal");
            let em: Vec<ModElem> = {
                let mut v: Vec<ModElem> = self.elements().map(|x| self.act(e, x)).collect();
                v.sort();
                v.dedup();
                v
            };
            let mut products = Vec::new();
            for &a in p.generators() {
                for &x in &em {
                    products.push(self.act(a, x));
                }
            }
            let pem = self.span(&products).expect("products lie in the carrier").len();
            let q = ring.size() / p.len();
            let er = {
                let mut v: Vec<Elem> = ring.elements().map(|r| ring.mul(e, r)).collect();
                v.sort();
                v.dedup();
                v.len()
            };
            let mut ratio = em.len() / pem;
            let mut rank = 0u32;
            while ratio > 1 {
                if ratio % q != 0 {
                    return false;
                }
                ratio /= q;
                rank += 1;
            }
            if er.checked_pow(rank) != Some(em.len()) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Limits;
    use crate::ring::{make_ring, RingSpec};
    use std::sync::Arc;

    fn prod22() -> Arc<crate::FiniteRing> {
        make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap()
    }

    #[test]
    fn torsion_free_but_not_auslander() {
        let r = prod22();
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        assert_eq!(r.labels(&m.zero_divisors()), ["(0,0)", "(0,1)"]);
        assert!(m.is_torsion_free().holds);
        let a = m.is_auslander();
        assert!(!a.holds);
        assert_eq!(a.witness, Some(Witness::RingElement(r.parse_elem("(1,0)").unwrap())));
    }

    #[test]
    fn annihilators_and_content() {
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let three = z6.ideal_generated(&[Elem(3)]).unwrap();
        let m = FiniteModule::cyclic(&z6, &three, Limits::default()).unwrap();
        assert_eq!(m.annihilator(), three);
        let reg = FiniteModule::regular(&z6);
        assert!(reg.annihilator().is_zero());
        assert!(reg.annihilator_of(ModElem(0)).unwrap().is_whole());
        assert_eq!(reg.content(ModElem(3)).unwrap(), three);
        assert!(reg.content(ModElem(0)).unwrap().is_zero());
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let reg4 = FiniteModule::regular(&z4);
        let two = z4.ideal_generated(&[Elem(2)]).unwrap();
        assert_eq!(reg4.content(ModElem(2)).unwrap(), two);
        assert_eq!(reg4.ideal_action(&two).unwrap().elements(), [ModElem(0), ModElem(2)]);
        assert!(reg4.is_content_module().holds);
        assert!(reg4.has_property_a().holds);
        assert!(reg4.content_surjective().holds);
    }

    #[test]
    fn flatness_of_small_modules() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let two = z4.ideal_generated(&[Elem(2)]).unwrap();
        let m = FiniteModule::cyclic(&z4, &two, Limits::default()).unwrap();
        let v = m.is_flat().unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Some(Witness::Flatness {
                ideal: two,
                tensor_size: 2,
                image_size: 1
            })
        );
        assert!(!m.locally_free());
        let f = FiniteModule::free(&z4, 2, Limits::default()).unwrap();
        assert!(f.is_faithfully_flat().unwrap().holds);
        assert!(f.locally_free());
        let r = prod22();
        let reg = FiniteModule::regular(&r);
        assert!(reg.is_faithfully_flat().unwrap().holds);
        // a projective, non-free module: flat but not faithfully flat
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        assert!(m.is_flat().unwrap().holds);
        assert!(m.locally_free());
        assert!(!m.is_faithfully_flat().unwrap().holds);
    }

    #[test]
    fn zero_module_is_degenerate() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let zero = FiniteModule::free(&z4, 0, Limits::default()).unwrap();
        assert!(zero.zero_divisors().is_empty());
        assert!(zero.is_auslander().degenerate);
        assert!(zero.is_torsion_free().degenerate);
        assert!(zero.is_content_module().holds);
    }
}
