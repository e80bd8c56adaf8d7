//! Finite modules over finite rings.
//!
//! Like rings, modules are materialized: elements are indices with `0` the
//! zero element, and addition, negation and the scalar action are tables.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{normalize_label, Elem, FiniteRing};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModElem(pub u32);

impl ModElem {
    pub const ZERO: ModElem = ModElem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Size limits for constructions whose cost grows quickly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest module carrier that will be materialized.
    pub module: usize,
    /// Largest module whose endomorphisms are enumerated.
    pub hom_source: usize,
    /// Largest number of candidate tuples any exhaustive enumeration may visit.
    pub search: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            module: 4096,
            hom_source: 64,
            search: 1 << 22,
        }
    }
}

impl Limits {
    pub(crate) fn check_module(&self, size: u128) -> Result<usize> {
        if size > self.module as u128 {
            return Err(Error::SizeBound {
                what: "module",
                size: usize::try_from(size).unwrap_or(usize::MAX),
                bound: self.module,
            });
        }
        Ok(size as usize)
    }

    pub(crate) fn check_search(&self, needed: u128) -> Result<()> {
        if needed > self.search {
            return Err(Error::Budget {
                needed,
                budget: self.search,
            });
        }
        Ok(())
    }
}

/// How a module was built. Drives structural presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleTag {
    Regular,
    Free(usize),
    Cyclic,
    Quotient,
    DirectSum,
    Submodule,
    Hom,
    Tensor,
    Localized,
    Restricted,
}

/// Generators of a module and relations among them: `M = R^k / <relations>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<ModElem>,
    pub relations: Vec<Vec<Elem>>,
}

pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    descriptor: String,
    key: Arc<str>,
    tag: ModuleTag,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    act: Vec<u32>,
    labels: Vec<String>,
    label_index: HashMap<String, ModElem>,
    structural: Option<Presentation>,
    presentation: OnceLock<Result<Presentation>>,
    pub(crate) zero_divisors: OnceLock<Vec<bool>>,
    pub(crate) ideal_images: OnceLock<Vec<Submodule>>,
    limits: Limits,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("ring", &self.ring.key())
            .field("descriptor", &self.descriptor)
            .field("size", &self.size)
            .finish()
    }
}

/// A submodule, carried with generators and its element set.
#[derive(Clone)]
pub struct Submodule {
    module: Arc<str>,
    generators: Vec<ModElem>,
    members: Vec<bool>,
    elements: Vec<ModElem>,
}

impl Submodule {
    pub fn generators(&self) -> &[ModElem] {
        &self.generators
    }

    pub fn elements(&self) -> &[ModElem] {
        &self.elements
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, x: ModElem) -> bool {
        self.members.get(x.idx()).copied().unwrap_or(false)
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

    /// Least nonzero element, by encoding.
    pub fn least_nonzero(&self) -> Option<ModElem> {
        self.elements.iter().copied().find(|&x| x != ModElem::ZERO)
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.members == other.members
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{:?}", self.elements.iter().map(|e| e.0).collect::<Vec<_>>())
    }
}

pub(crate) struct Tables {
    pub labels: Vec<String>,
    pub add: Vec<u32>,
    pub neg: Vec<u32>,
    pub act: Vec<u32>,
}

impl FiniteModule {
    pub(crate) fn from_tables(
        ring: Arc<FiniteRing>,
        descriptor: String,
        tag: ModuleTag,
        tables: Tables,
        structural: Option<Presentation>,
        limits: Limits,
    ) -> FiniteModule {
        let Tables { labels, add, neg, act } = tables;
        let size = labels.len();
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (normalize_label(l), ModElem(i as u32)))
            .collect();
        FiniteModule {
            key: Arc::from(format!("{} over {}", descriptor, ring.key())),
            ring,
            descriptor,
            tag,
            size,
            add,
            neg,
            act,
            labels,
            label_index,
            structural,
            presentation: OnceLock::new(),
            zero_divisors: OnceLock::new(),
            ideal_images: OnceLock::new(),
            limits,
        }
    }

    /// `R` as a module over itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> FiniteModule {
        Self::regular_with(ring, Limits::default())
    }

    pub fn regular_with(ring: &Arc<FiniteRing>, limits: Limits) -> FiniteModule {
        let (add, mul) = ring.tables();
        let tables = Tables {
            labels: ring.elements().map(|e| ring.label(e).to_string()).collect(),
            add: add.to_vec(),
            neg: ring.elements().map(|e| ring.neg(e).0).collect(),
            act: mul.to_vec(),
        };
        let pres = Presentation {
            generators: vec![ModElem(ring.one().0)],
            relations: vec![],
        };
        FiniteModule::from_tables(ring.clone(), "Reg".into(), ModuleTag::Regular, tables, Some(pres), limits)
    }

    /// `R^k`; `k = 0` gives the zero module.
    pub fn free(ring: &Arc<FiniteRing>, k: usize, limits: Limits) -> Result<FiniteModule> {
        let n = ring.size();
        let size = limits.check_module((n as u128).checked_pow(k as u32).unwrap_or(u128::MAX))?;
        let decode = |mut x: usize| -> Vec<Elem> {
            let mut v = vec![Elem::ZERO; k];
            for slot in v.iter_mut().rev() {
                *slot = Elem((x % n) as u32);
                x /= n;
            }
            v
        };
        let encode = |v: &[Elem]| v.iter().fold(0usize, |acc, c| acc * n + c.idx()) as u32;
        let vectors: Vec<Vec<Elem>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        for a in &vectors {
            for b in &vectors {
                let s: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect();
                add.push(encode(&s));
            }
        }
        let mut act = Vec::with_capacity(n * size);
        for r in ring.elements() {
            for v in &vectors {
                let s: Vec<Elem> = v.iter().map(|&x| ring.mul(r, x)).collect();
                act.push(encode(&s));
            }
        }
        let neg = vectors
            .iter()
            .map(|v| encode(&v.iter().map(|&x| ring.neg(x)).collect::<Vec<_>>()))
            .collect();
        let labels = vectors
            .iter()
            .map(|v| format!("({})", ring.labels(v).join(",")))
            .collect();
        let generators = (0..k)
            .map(|i| {
                let mut v = vec![Elem::ZERO; k];
                v[i] = ring.one();
                ModElem(encode(&v))
            })
            .collect();
        let pres = Presentation {
            generators,
            relations: vec![],
        };
        Ok(FiniteModule::from_tables(
            ring.clone(),
            format!("Free({k})"),
            ModuleTag::Free(k),
            Tables { labels, add, neg, act },
            Some(pres),
            limits,
        ))
    }

    /// `R/I`.
    pub fn cyclic(ring: &Arc<FiniteRing>, ideal: &Ideal, limits: Limits) -> Result<FiniteModule> {
        if ideal.ring_key() != ring.key() {
            return Err(Error::RingMismatch(ring.key().into(), ideal.ring_key().into()));
        }
        let reg = FiniteModule::regular_with(ring, limits);
        let sub = reg.span(&ideal.generators().iter().map(|g| ModElem(g.0)).collect::<Vec<_>>())?;
        let descriptor = format!("Cyclic({})", ring.labels(ideal.generators()).join(","));
        let mut m = reg.quotient(&sub, descriptor, ModuleTag::Cyclic)?;
        let one = m.class_of_in_quotient(&reg, &sub, ModElem(ring.one().0));
        m.structural = Some(Presentation {
            generators: vec![one],
            relations: ideal.generators().iter().map(|&g| vec![g]).collect(),
        });
        Ok(m)
    }

    pub fn direct_sum(a: &FiniteModule, b: &FiniteModule) -> Result<FiniteModule> {
        a.same_ring(&b.ring)?;
        let limits = a.limits;
        let (na, nb) = (a.size, b.size);
        let size = limits.check_module(na as u128 * nb as u128)?;
        let enc = |x: ModElem, y: ModElem| (x.idx() * nb + y.idx()) as u32;
        let split = |z: usize| (ModElem((z / nb) as u32), ModElem((z % nb) as u32));
        let mut add = Vec::with_capacity(size * size);
        for z in 0..size {
            let (x1, y1) = split(z);
            for w in 0..size {
                let (x2, y2) = split(w);
                add.push(enc(a.add(x1, x2), b.add(y1, y2)));
            }
        }
        let mut act = Vec::with_capacity(a.ring.size() * size);
        for r in a.ring.elements() {
            for z in 0..size {
                let (x, y) = split(z);
                act.push(enc(a.act(r, x), b.act(r, y)));
            }
        }
        let neg = (0..size)
            .map(|z| {
                let (x, y) = split(z);
                enc(a.neg(x), b.neg(y))
            })
            .collect();
        let labels = (0..size)
            .map(|z| {
                let (x, y) = split(z);
                format!("({},{})", a.label(x), b.label(y))
            })
            .collect();
        let structural = match (&a.structural, &b.structural) {
            (Some(pa), Some(pb)) => {
                let ka = pa.generators.len();
                let kb = pb.generators.len();
                let mut generators: Vec<ModElem> =
                    pa.generators.iter().map(|&g| ModElem(enc(g, ModElem::ZERO))).collect();
                generators.extend(pb.generators.iter().map(|&g| ModElem(enc(ModElem::ZERO, g))));
                let mut relations: Vec<Vec<Elem>> = pa
                    .relations
                    .iter()
                    .map(|r| {
                        let mut v = r.clone();
                        v.extend(std::iter::repeat(Elem::ZERO).take(kb));
                        v
                    })
                    .collect();
                relations.extend(pb.relations.iter().map(|r| {
                    let mut v = vec![Elem::ZERO; ka];
                    v.extend_from_slice(r);
                    v
                }));
                Some(Presentation {
                    generators,
                    relations,
                })
            }
            _ => None,
        };
        Ok(FiniteModule::from_tables(
            a.ring.clone(),
            format!("Sum({},{})", a.descriptor, b.descriptor),
            ModuleTag::DirectSum,
            Tables { labels, add, neg, act },
            structural,
            limits,
        ))
    }

    /// `M/N`, classes labelled `[least representative]`.
    pub fn quotient(&self, sub: &Submodule, descriptor: String, tag: ModuleTag) -> Result<FiniteModule> {
        self.check_submodule(sub)?;
        let (rep, reps) = self.coset_reps(sub);
        let index: HashMap<ModElem, u32> = reps.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
        let class = |x: ModElem| index[&rep[x.idx()]];
        let size = reps.len();
        let mut add = Vec::with_capacity(size * size);
        for &a in &reps {
            for &b in &reps {
                add.push(class(self.add(a, b)));
            }
        }
        let mut act = Vec::with_capacity(self.ring.size() * size);
        for r in self.ring.elements() {
            for &a in &reps {
                act.push(class(self.act(r, a)));
            }
        }
        let neg = reps.iter().map(|&a| class(self.neg(a))).collect();
        let labels = reps.iter().map(|&a| format!("[{}]", self.label(a))).collect();
        Ok(FiniteModule::from_tables(
            self.ring.clone(),
            descriptor,
            tag,
            Tables { labels, add, neg, act },
            None,
            self.limits,
        ))
    }

    /// Least element of each coset, and the sorted list of those representatives.
    pub(crate) fn coset_reps(&self, sub: &Submodule) -> (Vec<ModElem>, Vec<ModElem>) {
        let rep: Vec<ModElem> = self
            .elements()
            .map(|x| sub.elements.iter().map(|&n| self.add(x, n)).min().unwrap())
            .collect();
        let mut reps = rep.clone();
        reps.sort();
        reps.dedup();
        (rep, reps)
    }

    /// The class of `x` in a quotient built by [`FiniteModule::quotient`] from `parent`.
    pub(crate) fn class_of_in_quotient(&self, parent: &FiniteModule, sub: &Submodule, x: ModElem) -> ModElem {
        let rep = sub.elements.iter().map(|&n| parent.add(x, n)).min().unwrap();
        self.label_index[&normalize_label(&format!("[{}]", parent.label(rep)))]
    }

    /// A submodule as a module in its own right, keeping element labels.
    pub fn submodule_module(&self, sub: &Submodule) -> Result<FiniteModule> {
        self.check_submodule(sub)?;
        let els = &sub.elements;
        let index: HashMap<ModElem, u32> = els.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let size = els.len();
        let mut add = Vec::with_capacity(size * size);
        for &a in els {
            for &b in els {
                add.push(index[&self.add(a, b)]);
            }
        }
        let mut act = Vec::with_capacity(self.ring.size() * size);
        for r in self.ring.elements() {
            for &a in els {
                act.push(index[&self.act(r, a)]);
            }
        }
        let neg = els.iter().map(|&a| index[&self.neg(a)]).collect();
        let labels = els.iter().map(|&a| self.label(a).to_string()).collect();
        let gens = sub.generators.iter().map(|&g| self.label(g).to_string()).collect::<Vec<_>>();
        Ok(FiniteModule::from_tables(
            self.ring.clone(),
            format!("Sub({};{})", self.descriptor, gens.join(",")),
            ModuleTag::Submodule,
            Tables { labels, add, neg, act },
            None,
            self.limits,
        ))
    }

    pub(crate) fn set_structural(&mut self, p: Presentation) {
        self.structural = Some(p);
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn tag(&self) -> &ModuleTag {
        &self.tag
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> ModElem {
        ModElem::ZERO
    }

    pub fn elements(&self) -> impl Iterator<Item = ModElem> + Clone {
        (0..self.size as u32).map(ModElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = ModElem> + Clone {
        (1..self.size as u32).map(ModElem)
    }

    #[inline]
    pub fn add(&self, x: ModElem, y: ModElem) -> ModElem {
        ModElem(self.add[x.idx() * self.size + y.idx()])
    }

    #[inline]
    pub fn neg(&self, x: ModElem) -> ModElem {
        ModElem(self.neg[x.idx()])
    }

    #[inline]
    pub fn sub(&self, x: ModElem, y: ModElem) -> ModElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn act(&self, r: Elem, x: ModElem) -> ModElem {
        ModElem(self.act[r.idx() * self.size + x.idx()])
    }

    pub fn label(&self, x: ModElem) -> &str {
        &self.labels[x.idx()]
    }

    pub fn labels(&self, xs: &[ModElem]) -> Vec<String> {
        xs.iter().map(|&x| self.label(x).to_string()).collect()
    }

    pub fn contains(&self, x: ModElem) -> bool {
        x.idx() < self.size
    }

    /// Reads an element by its label; regular modules also accept ring expressions.
    pub fn parse_elem(&self, text: &str) -> Result<ModElem> {
        if let Some(&x) = self.label_index.get(&normalize_label(text)) {
            return Ok(x);
        }
        match self.tag {
            ModuleTag::Regular => Ok(ModElem(self.ring.parse_elem(text)?.0)),
            _ => Err(Error::NotInCarrier(format!("{text} in {}", self.descriptor))),
        }
    }

    pub(crate) fn same_ring(&self, ring: &FiniteRing) -> Result<()> {
        if self.ring.key() != ring.key() {
            return Err(Error::RingMismatch(self.ring.key().into(), ring.key().into()));
        }
        Ok(())
    }

    fn check_submodule(&self, sub: &Submodule) -> Result<()> {
        if *sub.module != *self.key {
            return Err(Error::RingMismatch(self.key.to_string(), sub.module.to_string()));
        }
        Ok(())
    }

    /// `{r x : r in R}`.
    pub fn cyclic_span(&self, x: ModElem) -> Vec<bool> {
        let mut m = vec![false; self.size];
        for r in self.ring.elements() {
            m[self.act(r, x).idx()] = true;
        }
        m
    }

    /// `current + R x`, in place.
    pub(crate) fn absorb(&self, current: &mut [bool], x: ModElem) {
        if current[x.idx()] {
            return;
        }
        let cyc: Vec<ModElem> = self
            .cyclic_span(x)
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| ModElem(i as u32))
            .collect();
        let old: Vec<ModElem> = self.elements().filter(|e| current[e.idx()]).collect();
        for &a in &old {
            for &c in &cyc {
                current[self.add(a, c).idx()] = true;
            }
        }
    }

    pub(crate) fn submodule_from_mask(&self, members: Vec<bool>, generators: Vec<ModElem>) -> Submodule {
        let elements = self.elements().filter(|x| members[x.idx()]).collect();
        Submodule {
            module: self.key.clone(),
            generators,
            members,
            elements,
        }
    }

    /// The submodule generated by `gens`.
    pub fn span(&self, gens: &[ModElem]) -> Result<Submodule> {
        let mut members = vec![false; self.size];
        members[0] = true;
        for &g in gens {
            if !self.contains(g) {
                return Err(Error::NotInCarrier(format!("#{} in {}", g.0, self.descriptor)));
            }
            self.absorb(&mut members, g);
        }
        Ok(self.submodule_from_mask(members, gens.to_vec()))
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.span(&[]).unwrap()
    }

    pub fn whole(&self) -> Submodule {
        let members = vec![true; self.size];
        let gens = self.min_generators(&members);
        self.submodule_from_mask(members, gens)
    }

    /// A small generating set of the submodule given as a mask, chosen greedily.
    pub fn min_generators(&self, members: &[bool]) -> Vec<ModElem> {
        let target = members.iter().filter(|&&b| b).count();
        let mut current = vec![false; self.size];
        current[0] = true;
        let mut count = 1;
        let mut gens = Vec::new();
        let candidates: Vec<ModElem> = self.elements().filter(|x| members[x.idx()]).collect();
        while count < target {
            let mut best: Option<(usize, ModElem, Vec<bool>)> = None;
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

    /// Every submodule exactly once, by saturating cyclic submodules under sums.
    pub fn all_submodules(&self) -> Vec<Submodule> {
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut found: Vec<Vec<bool>> = Vec::new();
        for x in self.elements() {
            let mut m = vec![false; self.size];
            m[0] = true;
            self.absorb(&mut m, x);
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
                            self.absorb(&mut sum, ModElem(k as u32));
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
        let mut subs: Vec<Submodule> = found
            .into_iter()
            .map(|m| {
                let gens = self.min_generators(&m);
                self.submodule_from_mask(m, gens)
            })
            .collect();
        subs.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
        subs
    }

    /// A presentation: structural when the construction provides one, else derived
    /// from the carrier (greedy generators, relations spanning the kernel of `R^k -> M`).
    pub fn presentation(&self) -> Result<&Presentation> {
        if let Some(p) = &self.structural {
            return Ok(p);
        }
        self.presentation
            .get_or_init(|| self.derive_presentation())
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn derive_presentation(&self) -> Result<Presentation> {
        let generators = self.min_generators(&vec![true; self.size]);
        let k = generators.len();
        let n = self.ring.size();
        let count = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if count > self.limits.search {
            return Err(Error::NoPresentation(self.descriptor.clone()));
        }
        let space = Tuples::over_ring(&self.ring, k);
        let mut span = vec![false; count as usize];
        span[0] = true;
        let mut relations = Vec::new();
        for code in 0..count as usize {
            let c = space.decode_elems(code);
            let value = c
                .iter()
                .zip(&generators)
                .fold(ModElem::ZERO, |acc, (&r, &g)| self.add(acc, self.act(r, g)));
            if value == ModElem::ZERO && !span[code] {
                space.absorb(&mut span, code);
                relations.push(c);
            }
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }

    /// Full-table check of the module axioms; associativity of addition only
    /// when the carrier is at most `assoc_bound`.
    pub fn check_axioms(&self, assoc_bound: usize) -> std::result::Result<(), String> {
        let r = &self.ring;
        for x in self.elements() {
            if self.add(x, ModElem::ZERO) != x || self.add(x, self.neg(x)) != ModElem::ZERO {
                return Err(format!("group identity fails at {}", self.label(x)));
            }
            if self.act(r.one(), x) != x {
                return Err(format!("not unital at {}", self.label(x)));
            }
            for y in self.elements() {
                if self.add(x, y) != self.add(y, x) {
                    return Err(format!("addition not commutative at {}, {}", self.label(x), self.label(y)));
                }
                for a in r.elements() {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return Err(format!("action does not distribute over {} + {}", self.label(x), self.label(y)));
                    }
                }
                if self.size <= assoc_bound {
                    for z in self.elements() {
                        if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                            return Err("addition not associative".into());
                        }
                    }
                }
            }
            for a in r.elements() {
                for b in r.elements() {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x))
                        || self.act(r.mul(a, b), x) != self.act(a, self.act(b, x))
                    {
                        return Err(format!("action axioms fail at {}", self.label(x)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `A^k` for a finite ring or module `A`, without materialized tables.
/// Tuples are encoded big-endian in base `|A|`.
pub(crate) struct Tuples<'a> {
    n: usize,
    arity: usize,
    ring_size: usize,
    add: &'a [u32],
    act: &'a [u32],
}

impl<'a> Tuples<'a> {
    pub fn over_ring(ring: &'a FiniteRing, arity: usize) -> Self {
        let (add, mul) = ring.tables();
        Tuples {
            n: ring.size(),
            arity,
            ring_size: ring.size(),
            add,
            act: mul,
        }
    }

    pub fn over_module(module: &'a FiniteModule, arity: usize) -> Self {
        Tuples {
            n: module.size,
            arity,
            ring_size: module.ring.size(),
            add: &module.add,
            act: &module.act,
        }
    }

    pub fn count(&self) -> u128 {
        (self.n as u128).checked_pow(self.arity as u32).unwrap_or(u128::MAX)
    }

    fn decode_raw(&self, mut code: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.arity];
        for slot in v.iter_mut().rev() {
            *slot = (code % self.n) as u32;
            code /= self.n;
        }
        v
    }

    pub fn decode_elems(&self, code: usize) -> Vec<Elem> {
        self.decode_raw(code).into_iter().map(Elem).collect()
    }

    pub fn decode_mod(&self, code: usize) -> Vec<ModElem> {
        self.decode_raw(code).into_iter().map(ModElem).collect()
    }

    pub fn encode_mod(&self, v: &[ModElem]) -> usize {
        v.iter().fold(0usize, |acc, c| acc * self.n + c.idx())
    }

    fn add_codes(&self, mut a: usize, mut b: usize) -> usize {
        let n = self.n;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.arity {
            out += self.add[(a % n) * n + b % n] as usize * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    }

    fn act_code(&self, r: usize, mut a: usize) -> usize {
        let n = self.n;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.arity {
            out += self.act[r * n + a % n] as usize * place;
            place *= n;
            a /= n;
        }
        out
    }

    /// `span + R v`, in place, where `v` is given by its code.
    pub fn absorb(&self, span: &mut [bool], code: usize) {
        if span[code] {
            return;
        }
        let mut multiples: Vec<usize> = (0..self.ring_size).map(|r| self.act_code(r, code)).collect();
        multiples.sort_unstable();
        multiples.dedup();
        let old: Vec<usize> = (0..span.len()).filter(|&i| span[i]).collect();
        for a in old {
            for &m in &multiples {
                span[self.add_codes(a, m)] = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    #[test]
    fn free_and_sum_sizes() {
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let f2 = FiniteModule::free(&z6, 2, Limits::default()).unwrap();
        assert_eq!(f2.size(), 36);
        assert!(f2.check_axioms(64).is_ok());
        let three = z6.ideal_generated(&[Elem(3)]).unwrap();
        let c = FiniteModule::cyclic(&z6, &three, Limits::default()).unwrap();
        assert_eq!(c.size(), 3);
        let s = FiniteModule::direct_sum(&c, &FiniteModule::regular(&z6)).unwrap();
        assert_eq!(s.size(), 18);
        assert!(s.check_axioms(18).is_ok());
        assert_eq!(s.descriptor(), "Sum(Cyclic(3),Reg)");
        assert_eq!(FiniteModule::free(&z6, 0, Limits::default()).unwrap().size(), 1);
    }

    #[test]
    fn cyclic_quotient_of_product() {
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        assert_eq!(m.size(), 2);
        // (a,b) acts through a
        let one = m.nonzero_elements().next().unwrap();
        assert_eq!(m.act(r.parse_elem("(0,1)").unwrap(), one), ModElem::ZERO);
        assert_eq!(m.act(r.parse_elem("(1,0)").unwrap(), one), one);
        let p = m.presentation().unwrap();
        assert_eq!(p.generators, vec![one]);
    }

    #[test]
    fn spans_and_lattices() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let reg = FiniteModule::regular(&z4);
        let s = reg.span(&[ModElem(2)]).unwrap();
        assert_eq!(s.elements(), [ModElem(0), ModElem(2)]);
        assert_eq!(reg.all_submodules().len(), 3);
        let f = FiniteModule::free(&make_ring(&RingSpec::zmod(2)).unwrap(), 2, Limits::default()).unwrap();
        // subspaces of F2^2: 0, three lines, whole
        assert_eq!(f.all_submodules().len(), 5);
    }

    #[test]
    fn derived_presentation_generates_the_kernel() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let reg = FiniteModule::regular(&z4);
        let sub = reg.span(&[ModElem(2)]).unwrap();
        let q = reg.quotient(&sub, "Q".into(), ModuleTag::Quotient).unwrap();
        let p = q.presentation().unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.relations, vec![vec![Elem(2)]]);
    }
}
