//! Ideals, the ideal lattice, and ring-level zero-divisor data.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

/// An ideal, carried with a generator list and its full element set.
///
/// Equality compares element sets only.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<str>,
    generators: Vec<Elem>,
    members: Vec<bool>,
    elements: Vec<Elem>,
}

impl Ideal {
    pub fn ring_key(&self) -> &str {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.get(a.idx()).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.members.len()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    /// Containment in an arbitrary element set given as a mask.
    pub fn is_within(&self, mask: &[bool]) -> bool {
        self.elements.iter().all(|a| mask[a.idx()])
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.members.hash(state);
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.elements.iter().map(|e| e.0).collect::<Vec<_>>())
    }
}

/// Whether `0` counts as a zero-divisor of a nonzero structure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZeroDivisorConvention {
    #[default]
    IncludeZero,
    ExcludeZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPredicates {
    pub is_field: bool,
    pub is_domain: bool,
    pub is_local: bool,
    pub maximal_ideals: Vec<Ideal>,
}

/// A multiplicatively closed subset containing `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicativeSet {
    ring: Arc<str>,
    elements: Vec<Elem>,
    members: Vec<bool>,
}

impl MultiplicativeSet {
    pub fn ring_key(&self) -> &str {
        &self.ring
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.get(a.idx()).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
}

impl FiniteRing {
    fn check_ideal(&self, i: &Ideal) -> Result<()> {
        if *i.ring != *self.key() {
            return Err(Error::RingMismatch(self.key().to_string(), i.ring.to_string()));
        }
        Ok(())
    }

    /// Members of the principal ideal `(a)`.
    fn principal_members(&self, a: Elem) -> Vec<bool> {
        let mut m = vec![false; self.size()];
        for r in self.elements() {
            m[self.mul(r, a).idx()] = true;
        }
        m
    }

    /// `current + (a)`, in place.
    fn absorb(&self, current: &mut Vec<bool>, a: Elem) {
        if current[a.idx()] {
            return;
        }
        let cyclic: Vec<Elem> = self
            .principal_members(a)
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Elem(i as u32))
            .collect();
        let old: Vec<Elem> = self.elements().filter(|e| current[e.idx()]).collect();
        for &x in &old {
            for &y in &cyclic {
                current[self.add(x, y).idx()] = true;
            }
        }
    }

    pub(crate) fn ideal_from_members(&self, members: Vec<bool>, generators: Vec<Elem>) -> Ideal {
        let elements = self.elements().filter(|e| members[e.idx()]).collect();
        Ideal {
            ring: self.key_arc(),
            generators,
            members,
            elements,
        }
    }

    /// The smallest ideal containing `gens`; closure under addition and ring multiplication.
    pub fn ideal_generated(&self, gens: &[Elem]) -> Result<Ideal> {
        let mut members = vec![false; self.size()];
        members[0] = true;
        for &g in gens {
            self.check_elem(g)?;
            self.absorb(&mut members, g);
        }
        Ok(self.ideal_from_members(members, gens.to_vec()))
    }

    pub fn zero_ideal(&self) -> Ideal {
        self.ideal_generated(&[]).unwrap()
    }

    pub fn unit_ideal(&self) -> Ideal {
        self.ideal_generated(&[self.one()]).unwrap()
    }

    /// A small generating set, chosen greedily by largest growth then least index.
    pub fn min_generators(&self, members: &[bool]) -> Vec<Elem> {
        let target = members.iter().filter(|&&b| b).count();
        let mut current = vec![false; self.size()];
        current[0] = true;
        let mut count = 1;
        let mut gens = Vec::new();
        let candidates: Vec<Elem> = self.elements().filter(|e| members[e.idx()]).collect();
        while count < target {
            let mut best: Option<(usize, Elem, Vec<bool>)> = None;
            for &c in &candidates {
                if current[c.idx()] {
                    continue;
                }
                let mut next = current.clone();
                self.absorb(&mut next, c);
                let n = next.iter().filter(|&&b| b).count();
                if best.as_ref().map_or(true, |(bn, _, _)| n > *bn) {
                    best = Some((n, c, next));
                }
            }
            let (n, c, next) = best.expect("generator search stalled");
            gens.push(c);
            current = next;
            count = n;
        }
        gens
    }

    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        let mut members = i.members.clone();
        for &g in &j.generators {
            self.absorb(&mut members, g);
        }
        let mut gens = i.generators.clone();
        gens.extend_from_slice(&j.generators);
        Ok(self.ideal_from_members(members, gens))
    }

    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        let mut gens = Vec::new();
        for &a in i.elements() {
            for &b in j.elements() {
                let p = self.mul(a, b);
                if p != Elem::ZERO {
                    gens.push(p);
                }
            }
        }
        gens.sort();
        gens.dedup();
        let members = self.ideal_generated(&gens)?.members;
        let gens = self.min_generators(&members);
        Ok(self.ideal_from_members(members, gens))
    }

    pub fn ideal_intersection(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.check_ideal(i)?;
        self.check_ideal(j)?;
        let members: Vec<bool> = i.members.iter().zip(&j.members).map(|(&a, &b)| a && b).collect();
        let gens = self.min_generators(&members);
        Ok(self.ideal_from_members(members, gens))
    }

    /// `I^k`, with `I^0 = (1)`.
    pub fn ideal_power(&self, i: &Ideal, k: u32) -> Result<Ideal> {
        self.check_ideal(i)?;
        let mut acc = self.unit_ideal();
        for _ in 0..k {
            acc = self.ideal_product(&acc, i)?;
        }
        Ok(acc)
    }

    /// `{r : r a = 0 for all a in I}`.
    pub fn annihilator(&self, i: &Ideal) -> Result<Ideal> {
        self.check_ideal(i)?;
        let members: Vec<bool> = self
            .elements()
            .map(|r| i.generators.iter().all(|&a| self.mul(r, a) == Elem::ZERO))
            .collect();
        let gens = self.min_generators(&members);
        Ok(self.ideal_from_members(members, gens))
    }

    /// Whether a subset (as a mask) is an ideal.
    pub fn is_ideal(&self, members: &[bool]) -> bool {
        if members.len() != self.size() || !members[0] {
            return false;
        }
        let els: Vec<Elem> = self.elements().filter(|e| members[e.idx()]).collect();
        els.iter().all(|&a| {
            els.iter().all(|&b| members[self.add(a, b).idx()])
                && self.elements().all(|r| members[self.mul(r, a).idx()])
        })
    }

    /// Every ideal exactly once, ordered by size then element list.
    ///
    /// Starts from the cyclic ideals and saturates under pairwise sums; every
    /// ideal of a finite ring is a finite sum of cyclic ideals.
    pub fn all_ideals(&self) -> &[Ideal] {
        self.lattice.get_or_init(|| self.compute_lattice())
    }

    fn compute_lattice(&self) -> Vec<Ideal> {
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut found: Vec<Vec<bool>> = Vec::new();
        for a in self.elements() {
            let mut m = vec![false; self.size()];
            m[0] = true;
            self.absorb(&mut m, a);
            if seen.insert(m.clone()) {
                found.push(m);
            }
        }
        let mut start = 0;
        loop {
            let end = found.len();
            let mut fresh = Vec::new();
            for i in 0..end {
                for j in start.max(i + 1)..end {
                    let mut sum = found[i].clone();
                    for (k, &b) in found[j].iter().enumerate() {
                        if b {
                            self.absorb(&mut sum, Elem(k as u32));
                        }
                    }
                    if seen.insert(sum.clone()) {
                        fresh.push(sum);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            start = end;
            found.extend(fresh);
        }
        let mut ideals: Vec<Ideal> = found
            .into_iter()
            .map(|m| {
                let gens = self.min_generators(&m);
                self.ideal_from_members(m, gens)
            })
            .collect();
        ideals.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
        ideals
    }

    /// Installs a precomputed lattice (for example from a cache).
    ///
    /// The candidate is validated first: every set must be an ideal, sets must
    /// be distinct, and every principal ideal must occur. Returns whether the
    /// lattice was installed.
    pub fn seed_lattice(&self, sets: Vec<Vec<bool>>) -> bool {
        if self.lattice.get().is_some() {
            return false;
        }
        let distinct: HashSet<&Vec<bool>> = sets.iter().collect();
        if distinct.len() != sets.len() || !sets.iter().all(|m| self.is_ideal(m)) {
            return false;
        }
        let all_principal = self.elements().all(|a| {
            let mut m = vec![false; self.size()];
            m[0] = true;
            self.absorb(&mut m, a);
            distinct.contains(&m)
        });
        let closed = sets.iter().all(|a| {
            sets.iter().all(|b| {
                let mut s = a.clone();
                for (k, &x) in b.iter().enumerate() {
                    if x {
                        self.absorb(&mut s, Elem(k as u32));
                    }
                }
                distinct.contains(&s)
            })
        });
        if !all_principal || !closed {
            return false;
        }
        let mut ideals: Vec<Ideal> = sets
            .into_iter()
            .map(|m| {
                let gens = self.min_generators(&m);
                self.ideal_from_members(m, gens)
            })
            .collect();
        ideals.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
        self.lattice.set(ideals).is_ok()
    }

    /// Whether the lattice has been computed or seeded.
    pub fn lattice_ready(&self) -> bool {
        self.lattice.get().is_some()
    }

    fn zd_mask(&self) -> &[bool] {
        self.zero_divisors.get_or_init(|| {
            self.elements()
                .map(|r| self.nonzero_elements().any(|s| self.mul(r, s) == Elem::ZERO))
                .collect()
        })
    }

    /// Installs a precomputed zero-divisor mask after re-deriving it; returns whether it matched.
    pub fn seed_zero_divisors(&self, mask: Vec<bool>) -> bool {
        let fresh: Vec<bool> = self
            .elements()
            .map(|r| self.nonzero_elements().any(|s| self.mul(r, s) == Elem::ZERO))
            .collect();
        if fresh != mask {
            return false;
        }
        let _ = self.zero_divisors.set(mask);
        true
    }

    /// `r` kills some nonzero element. Zero counts in every nonzero ring.
    pub fn is_zero_divisor(&self, r: Elem) -> bool {
        self.zd_mask()[r.idx()]
    }

    pub fn zero_divisor_mask(&self) -> &[bool] {
        self.zd_mask()
    }

    /// `Z_R(R)` under the default convention (zero included).
    pub fn zero_divisors(&self) -> Vec<Elem> {
        self.zero_divisors_with(ZeroDivisorConvention::IncludeZero)
    }

    pub fn zero_divisors_with(&self, conv: ZeroDivisorConvention) -> Vec<Elem> {
        self.elements()
            .filter(|&r| self.is_zero_divisor(r))
            .filter(|&r| conv == ZeroDivisorConvention::IncludeZero || r != Elem::ZERO)
            .collect()
    }

    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        let proper: Vec<&Ideal> = self.all_ideals().iter().filter(|i| !i.is_whole()).collect();
        proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
            .map(|i| (*i).clone())
            .collect()
    }

    pub fn ring_predicates(&self) -> RingPredicates {
        let is_domain = !self.is_zero_ring() && self.zero_divisors().len() == 1;
        let maximal_ideals = self.maximal_ideals();
        RingPredicates {
            is_field: !self.is_zero_ring() && self.all_ideals().len() == 2,
            is_domain,
            is_local: maximal_ideals.len() == 1,
            maximal_ideals,
        }
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Nonzero idempotents that do not split further; one per local factor.
    pub fn primitive_idempotents(&self) -> Vec<Elem> {
        let idem = self.idempotents();
        idem.iter()
            .copied()
            .filter(|&e| e != Elem::ZERO)
            .filter(|&e| {
                !idem
                    .iter()
                    .any(|&f| f != Elem::ZERO && f != e && self.mul(f, e) == f)
            })
            .collect()
    }

    /// Closes `gens ∪ {1}` under multiplication.
    pub fn multiplicative_closure(&self, gens: &[Elem]) -> Result<MultiplicativeSet> {
        let mut members = vec![false; self.size()];
        members[self.one().idx()] = true;
        let mut frontier = vec![self.one()];
        for &g in gens {
            self.check_elem(g)?;
            if !members[g.idx()] {
                members[g.idx()] = true;
                frontier.push(g);
            }
        }
        while let Some(a) = frontier.pop() {
            let current: Vec<Elem> = self.elements().filter(|e| members[e.idx()]).collect();
            for b in current {
                let p = self.mul(a, b);
                if !members[p.idx()] {
                    members[p.idx()] = true;
                    frontier.push(p);
                }
            }
        }
        let elements = self.elements().filter(|e| members[e.idx()]).collect();
        Ok(MultiplicativeSet {
            ring: self.key_arc(),
            elements,
            members,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    fn elems(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn generated_ideals() {
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        assert_eq!(z6.ideal_generated(&[Elem(2)]).unwrap().elements(), elems(&[0, 2, 4]));
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        assert_eq!(z4.ideal_generated(&[]).unwrap().elements(), elems(&[0]));
        let k2 = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let i = k2.ideal_generated(&[k2.parse_elem("(0,1)").unwrap()]).unwrap();
        assert_eq!(k2.labels(i.elements()), ["(0,0)", "(0,1)"]);
        assert!(z6.ideal_generated(&[Elem(9)]).is_err());
    }

    #[test]
    fn ideal_arithmetic() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let two = z4.ideal_generated(&[Elem(2)]).unwrap();
        assert!(z4.ideal_product(&two, &two).unwrap().is_zero());
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let (a, b) = (
            z6.ideal_generated(&[Elem(2)]).unwrap(),
            z6.ideal_generated(&[Elem(3)]).unwrap(),
        );
        assert!(z6.ideal_intersection(&a, &b).unwrap().is_zero());
        assert!(z6.ideal_sum(&a, &b).unwrap().is_whole());
        assert!(z6.ideal_power(&a, 0).unwrap().is_whole());
        assert!(z6.ideal_sum(&a, &z4.zero_ideal()).is_err());
    }

    #[test]
    fn annihilators() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let two = z4.ideal_generated(&[Elem(2)]).unwrap();
        assert_eq!(z4.annihilator(&two).unwrap().elements(), elems(&[0, 2]));
        assert!(z4.annihilator(&z4.zero_ideal()).unwrap().is_whole());
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let three = z6.ideal_generated(&[Elem(3)]).unwrap();
        assert_eq!(z6.annihilator(&three).unwrap().elements(), elems(&[0, 2, 4]));
    }

    #[test]
    fn lattices() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        assert_eq!(z4.all_ideals().len(), 3);
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let sizes: Vec<usize> = z6.all_ideals().iter().map(|i| i.len()).collect();
        assert_eq!(sizes, [1, 2, 3, 6]);
        let f7 = make_ring(&RingSpec::zmod(7)).unwrap();
        assert_eq!(f7.all_ideals().len(), 2);
        // (2, x) in Z4[x]/(x^2) is not principal; it must still be found.
        let r = make_ring(&RingSpec::poly_quot(RingSpec::zmod(4), "x^2").unwrap()).unwrap();
        let m = r.ideal_generated(&[Elem(2), r.variable()]).unwrap();
        assert!(r.all_ideals().contains(&m));
        assert_eq!(r.min_generators(m.members()).len(), 2);
    }

    #[test]
    fn zero_divisors_and_predicates() {
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        assert_eq!(z6.zero_divisors(), elems(&[0, 2, 3, 4]));
        assert_eq!(
            z6.zero_divisors_with(ZeroDivisorConvention::ExcludeZero),
            elems(&[2, 3, 4])
        );
        let k2 = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        assert_eq!(k2.labels(&k2.zero_divisors()), ["(0,0)", "(0,1)", "(1,0)"]);
        let p = k2.ring_predicates();
        assert!(!p.is_local && !p.is_domain && p.maximal_ideals.len() == 2);
        let z5 = make_ring(&RingSpec::zmod(5)).unwrap();
        let p = z5.ring_predicates();
        assert!(p.is_field && p.is_domain && p.is_local);
        assert_eq!(z5.zero_divisors(), elems(&[0]));
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let p = z4.ring_predicates();
        assert!(!p.is_domain && p.is_local);
        assert_eq!(p.maximal_ideals[0].elements(), elems(&[0, 2]));
    }

    #[test]
    fn primitive_idempotents_split_products() {
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(3))).unwrap();
        assert_eq!(r.primitive_idempotents().len(), 2);
        let z12 = make_ring(&RingSpec::zmod(12)).unwrap();
        assert_eq!(z12.primitive_idempotents(), elems(&[4, 9]));
    }

    #[test]
    fn multiplicative_closure_contains_one() {
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let s = z6.multiplicative_closure(&[Elem(2)]).unwrap();
        assert_eq!(s.elements(), elems(&[1, 2, 4]));
    }
}
