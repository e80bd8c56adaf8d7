//! Finite commutative rings with explicit arithmetic tables.
//!
//! Every ring is materialized: its elements are the indices `0..size` with
//! index `0` the zero element, and addition, multiplication and negation are
//! stored as tables. The construction kinds fix a canonical encoding, so two
//! indices are equal exactly when the ring elements are equal:
//!
//! * `Z<n>`: residues `0..n`.
//! * `Prod(A,B)`: pairs, encoded `a * |B| + b`.
//! * `PolyQuot(A, p)`: coefficient vectors of reduced representatives,
//!   little-endian in base `|A|`.
//! * localizations: classes labelled by their least denominator-free
//!   representative.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{syntax, Error, Result};
use crate::ideal::Ideal;
use crate::syntax::{format_int_poly, parse_element, parse_int_poly, ElemExpr};

/// Upper bound on ring sizes unless a caller passes its own.
pub const DEFAULT_RING_BOUND: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Ring-construction descriptor. `Display` prints the canonical DSL text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(i64),
    Prod(Box<RingSpec>, Box<RingSpec>),
    /// Base ring and ascending integer coefficients of a monic relation.
    PolyQuot(Box<RingSpec>, Vec<i64>),
    /// Base ring and generators of the multiplicative set, as element text.
    Localize(Box<RingSpec>, Vec<String>),
    TotalQuotient(Box<RingSpec>),
}

impl RingSpec {
    pub fn zmod(n: i64) -> Self {
        RingSpec::Zmod(n)
    }

    pub fn prod(a: RingSpec, b: RingSpec) -> Self {
        RingSpec::Prod(Box::new(a), Box::new(b))
    }

    pub fn poly_quot(base: RingSpec, relation: &str) -> Result<Self> {
        Ok(RingSpec::PolyQuot(Box::new(base), parse_int_poly(relation)?))
    }

    pub fn localize(base: RingSpec, set: Vec<String>) -> Self {
        RingSpec::Localize(Box::new(base), set)
    }

    pub fn total_quotient(base: RingSpec) -> Self {
        RingSpec::TotalQuotient(Box::new(base))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Z{n}"),
            RingSpec::Prod(a, b) => write!(f, "Prod({a},{b})"),
            RingSpec::PolyQuot(a, rel) => write!(f, "PolyQuot({a},{})", format_int_poly(rel)),
            RingSpec::Localize(a, set) => write!(f, "Localize({a},{{{}}})", set.join(",")),
            RingSpec::TotalQuotient(a) => write!(f, "TotalQuotient({a})"),
        }
    }
}

#[derive(Debug)]
pub enum Structure {
    Modular {
        modulus: u32,
    },
    Product {
        left: Arc<FiniteRing>,
        right: Arc<FiniteRing>,
    },
    PolyQuotient {
        base: Arc<FiniteRing>,
        degree: usize,
        /// Relation coefficients below the leading term, in the base ring.
        relation: Vec<Elem>,
    },
    Localized {
        base: Arc<FiniteRing>,
        /// The multiplicatively closed set, sorted.
        set: Vec<Elem>,
        /// Base element -> class in this ring.
        class_of: Vec<Elem>,
    },
}

pub struct FiniteRing {
    spec: RingSpec,
    key: Arc<str>,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: Elem,
    characteristic: u64,
    labels: Vec<String>,
    label_index: HashMap<String, Elem>,
    structure: Structure,
    pub(crate) lattice: OnceLock<Vec<Ideal>>,
    pub(crate) zero_divisors: OnceLock<Vec<bool>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("key", &self.key)
            .field("size", &self.size)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for FiniteRing {}

pub(crate) fn normalize_label(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Builds a ring from its descriptor with the default size bound.
pub fn make_ring(spec: &RingSpec) -> Result<Arc<FiniteRing>> {
    make_ring_bounded(spec, DEFAULT_RING_BOUND)
}

pub fn make_ring_bounded(spec: &RingSpec, bound: usize) -> Result<Arc<FiniteRing>> {
    match spec {
        RingSpec::Zmod(n) => modular(*n, bound),
        RingSpec::Prod(a, b) => {
            let (a, b) = (make_ring_bounded(a, bound)?, make_ring_bounded(b, bound)?);
            product(a, b, bound)
        }
        RingSpec::PolyQuot(base, rel) => poly_quotient(make_ring_bounded(base, bound)?, rel, bound),
        RingSpec::Localize(base, texts) => {
            let base = make_ring_bounded(base, bound)?;
            let gens = texts
                .iter()
                .map(|t| base.parse_elem(t))
                .collect::<Result<Vec<_>>>()?;
            let set = base.multiplicative_closure(&gens)?;
            localized(&base, set.elements().to_vec(), None)
        }
        RingSpec::TotalQuotient(base) => {
            let base = make_ring_bounded(base, bound)?;
            let regular: Vec<Elem> = base.elements().filter(|&r| !base.is_zero_divisor(r)).collect();
            let spec = RingSpec::total_quotient(base.spec.clone());
            localized(&base, regular, Some(spec))
        }
    }
}

fn check_bound(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::SizeBound {
            what: "ring",
            size,
            bound,
        });
    }
    Ok(())
}

fn modular(n: i64, bound: usize) -> Result<Arc<FiniteRing>> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    if n as u128 > bound as u128 {
        return Err(Error::SizeBound {
            what: "ring",
            size: usize::try_from(n).unwrap_or(usize::MAX),
            bound,
        });
    }
    let m = n as u32;
    let size = m as usize;
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for a in 0..m as u64 {
        for b in 0..m as u64 {
            add.push(((a + b) % m as u64) as u32);
            mul.push(((a * b) % m as u64) as u32);
        }
    }
    let neg = (0..m).map(|a| (m - a) % m).collect();
    let labels = (0..m).map(|a| a.to_string()).collect();
    Ok(FiniteRing::from_tables(
        RingSpec::Zmod(n),
        labels,
        add,
        mul,
        neg,
        Elem(1),
        Structure::Modular { modulus: m },
    ))
}

fn product(left: Arc<FiniteRing>, right: Arc<FiniteRing>, bound: usize) -> Result<Arc<FiniteRing>> {
    let (nl, nr) = (left.size, right.size);
    let size = nl.checked_mul(nr).unwrap_or(usize::MAX);
    check_bound(size, bound)?;
    let enc = |a: Elem, b: Elem| (a.idx() * nr + b.idx()) as u32;
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut neg = Vec::with_capacity(size);
    let mut labels = Vec::with_capacity(size);
    for x in 0..size {
        let (xa, xb) = (Elem((x / nr) as u32), Elem((x % nr) as u32));
        neg.push(enc(left.neg(xa), right.neg(xb)));
        labels.push(format!("({},{})", left.label(xa), right.label(xb)));
        for y in 0..size {
            let (ya, yb) = (Elem((y / nr) as u32), Elem((y % nr) as u32));
            add.push(enc(left.add(xa, ya), right.add(xb, yb)));
            mul.push(enc(left.mul(xa, ya), right.mul(xb, yb)));
        }
    }
    let one = Elem(enc(left.one, right.one));
    let spec = RingSpec::prod(left.spec.clone(), right.spec.clone());
    Ok(FiniteRing::from_tables(
        spec,
        labels,
        add,
        mul,
        neg,
        one,
        Structure::Product { left, right },
    ))
}

fn poly_quotient(base: Arc<FiniteRing>, rel: &[i64], bound: usize) -> Result<Arc<FiniteRing>> {
    if matches!(base.structure, Structure::PolyQuotient { .. }) {
        return Err(Error::Unsupported(
            "polynomial quotient over a polynomial quotient (the variable x would be ambiguous)".into(),
        ));
    }
    let coeffs: Vec<Elem> = rel.iter().map(|&c| base.from_int(c)).collect();
    let degree = match coeffs.iter().rposition(|&c| c != Elem::ZERO) {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::RelationDegree),
    };
    if coeffs[degree] != base.one {
        return Err(Error::NonMonic);
    }
    let n = base.size;
    let size = (n as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    if size > bound as u128 {
        return Err(Error::SizeBound {
            what: "ring",
            size: usize::try_from(size).unwrap_or(usize::MAX),
            bound,
        });
    }
    let size = size as usize;
    let relation: Vec<Elem> = coeffs[..degree].to_vec();
    let decode = |mut x: usize| -> Vec<Elem> {
        let mut v = Vec::with_capacity(degree);
        for _ in 0..degree {
            v.push(Elem((x % n) as u32));
            x /= n;
        }
        v
    };
    let encode = |v: &[Elem]| -> u32 {
        v.iter().rev().fold(0usize, |acc, c| acc * n + c.idx()) as u32
    };
    let vectors: Vec<Vec<Elem>> = (0..size).map(decode).collect();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut conv = vec![Elem::ZERO; 2 * degree];
    for a in &vectors {
        for b in &vectors {
            let s: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| base.add(x, y)).collect();
            add.push(encode(&s));
            conv.iter_mut().for_each(|c| *c = Elem::ZERO);
            for (i, &x) in a.iter().enumerate() {
                if x == Elem::ZERO {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    conv[i + j] = base.add(conv[i + j], base.mul(x, y));
                }
            }
            // x^d = -(r_0 + r_1 x + ... + r_{d-1} x^{d-1})
            for k in (degree..2 * degree - 1).rev() {
                let c = conv[k];
                if c == Elem::ZERO {
                    continue;
                }
                for (i, &r) in relation.iter().enumerate() {
                    let t = k - degree + i;
                    conv[t] = base.sub(conv[t], base.mul(c, r));
                }
                conv[k] = Elem::ZERO;
            }
            mul.push(encode(&conv[..degree]));
        }
    }
    let neg = vectors
        .iter()
        .map(|v| encode(&v.iter().map(|&c| base.neg(c)).collect::<Vec<_>>()))
        .collect();
    let labels = vectors.iter().map(|v| poly_label(&base, v)).collect();
    let ch = base.characteristic as i64;
    let mut canonical: Vec<i64> = rel[..=degree].iter().map(|c| c.rem_euclid(ch)).collect();
    canonical[degree] = 1;
    let spec = RingSpec::PolyQuot(Box::new(base.spec.clone()), canonical);
    let one = base.one;
    Ok(FiniteRing::from_tables(
        spec,
        labels,
        add,
        mul,
        neg,
        one,
        Structure::PolyQuotient {
            base,
            degree,
            relation,
        },
    ))
}

fn poly_label(base: &FiniteRing, coeffs: &[Elem]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == Elem::ZERO {
            continue;
        }
        let label = base.label(c);
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        };
        if i == 0 {
            terms.push(label.to_string());
        } else if c == base.one {
            terms.push(mono);
        } else if label.starts_with('(') || label.chars().all(|ch| ch.is_ascii_digit()) {
            terms.push(format!("{label}*{mono}"));
        } else {
            terms.push(format!("({label})*{mono}"));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Localization of a finite ring at a multiplicatively closed set.
///
/// In a finite ring every fraction `a/s` equals some `b/1`: a power `s^j` is
/// idempotent, and `a/s = a s^(j-1) / s^j = a s^(j-1) / 1`. Hence the
/// localization is the quotient of the base by the `S`-torsion ideal
/// `{z : u z = 0 for some u in S}`, and each class is labelled by its least
/// member.
pub(crate) fn localized(base: &Arc<FiniteRing>, mut set: Vec<Elem>, spec: Option<RingSpec>) -> Result<Arc<FiniteRing>> {
    if matches!(base.structure, Structure::Localized { .. }) {
        return Err(Error::Unsupported("localization of a localized ring".into()));
    }
    set.sort();
    set.dedup();
    let torsion: Vec<Elem> = base
        .elements()
        .filter(|&z| set.iter().any(|&u| base.mul(u, z) == Elem::ZERO))
        .collect();
    let rep: Vec<Elem> = base
        .elements()
        .map(|x| torsion.iter().map(|&k| base.add(x, k)).min().unwrap())
        .collect();
    let mut reps: Vec<Elem> = rep.clone();
    reps.sort();
    reps.dedup();
    let index_of: HashMap<Elem, u32> = reps.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let class_of: Vec<Elem> = rep.iter().map(|r| Elem(index_of[r])).collect();
    let size = reps.len();
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for &a in &reps {
        for &b in &reps {
            add.push(class_of[base.add(a, b).idx()].0);
            mul.push(class_of[base.mul(a, b).idx()].0);
        }
    }
    let neg = reps.iter().map(|&a| class_of[base.neg(a).idx()].0).collect();
    let labels = reps.iter().map(|&a| base.label(a).to_string()).collect();
    let one = class_of[base.one.idx()];
    let spec = spec.unwrap_or_else(|| {
        RingSpec::localize(
            base.spec.clone(),
            set.iter().map(|&s| base.label(s).to_string()).collect(),
        )
    });
    Ok(FiniteRing::from_tables(
        spec,
        labels,
        add,
        mul,
        neg,
        one,
        Structure::Localized {
            base: base.clone(),
            set,
            class_of,
        },
    ))
}

impl FiniteRing {
    fn from_tables(
        spec: RingSpec,
        labels: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        neg: Vec<u32>,
        one: Elem,
        structure: Structure,
    ) -> Arc<FiniteRing> {
        let size = labels.len();
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (normalize_label(l), Elem(i as u32)))
            .collect();
        let mut characteristic = 1u64;
        let mut acc = one;
        while acc != Elem::ZERO {
            acc = Elem(add[acc.idx() * size + one.idx()]);
            characteristic += 1;
        }
        Arc::new(FiniteRing {
            key: Arc::from(spec.to_string()),
            spec,
            size,
            add,
            mul,
            neg,
            one,
            characteristic,
            labels,
            label_index,
            structure,
            lattice: OnceLock::new(),
            zero_divisors: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Canonical descriptor text; identifies the ring.
    pub fn key(&self) -> &str {
        &self.key
    }

    pub(crate) fn key_arc(&self) -> Arc<str> {
        self.key.clone()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// The zero ring only arises from localizing at a set containing zero.
    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size as u32).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.size as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.idx() * self.size + b.idx()])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.idx() * self.size + b.idx()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.idx()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        let mut out = self.one;
        for _ in 0..k {
            out = self.mul(out, a);
        }
        out
    }

    /// The image of an integer under `Z -> R`.
    pub fn from_int(&self, v: i64) -> Elem {
        let mut k = v.rem_euclid(self.characteristic as i64) as u64;
        let mut base = self.one;
        let mut acc = Elem::ZERO;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a.idx()]
    }

    pub fn labels(&self, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&e| self.label(e).to_string()).collect()
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.idx() < self.size
    }

    pub fn check_elem(&self, a: Elem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInCarrier(format!("#{} in {}", a.0, self.key)))
        }
    }

    /// Reads an element from its printed form or any element expression.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        if let Some(&e) = self.label_index.get(&normalize_label(text)) {
            return Ok(e);
        }
        let expr = parse_element(text)?;
        self.eval(&expr, text)
    }

    pub fn eval(&self, expr: &ElemExpr, text: &str) -> Result<Elem> {
        Ok(match expr {
            ElemExpr::Int(v) => self.from_int(*v),
            ElemExpr::Var => match &self.structure {
                Structure::PolyQuotient { .. } => self.variable(),
                Structure::Localized { base, .. } => self.from_base(base.eval(expr, text)?),
                _ => return Err(syntax(text, format!("`x` is not an element of {}", self.key))),
            },
            ElemExpr::Tuple(items) => match &self.structure {
                Structure::Product { left, right } if items.len() == 2 => {
                    let a = left.eval(&items[0], text)?;
                    let b = right.eval(&items[1], text)?;
                    Elem((a.idx() * right.size + b.idx()) as u32)
                }
                Structure::PolyQuotient { base, .. } | Structure::Localized { base, .. } => {
                    self.from_base(base.eval(expr, text)?)
                }
                _ => {
                    return Err(syntax(
                        text,
                        format!("a {}-tuple is not an element of {}", items.len(), self.key),
                    ))
                }
            },
            ElemExpr::Neg(a) => self.neg(self.eval(a, text)?),
            ElemExpr::Add(a, b) => self.add(self.eval(a, text)?, self.eval(b, text)?),
            ElemExpr::Sub(a, b) => self.sub(self.eval(a, text)?, self.eval(b, text)?),
            ElemExpr::Mul(a, b) => self.mul(self.eval(a, text)?, self.eval(b, text)?),
            ElemExpr::Pow(a, k) => self.pow(self.eval(a, text)?, *k),
            ElemExpr::Frac(a, b) => {
                let (a, b) = (self.eval(a, text)?, self.eval(b, text)?);
                let inv = self
                    .inverse(b)
                    .ok_or_else(|| syntax(text, "denominator is not invertible"))?;
                self.mul(a, inv)
            }
        })
    }

    /// The generator `x` of a polynomial quotient.
    pub fn variable(&self) -> Elem {
        match &self.structure {
            Structure::PolyQuotient { base, degree, relation } => {
                if *degree == 1 {
                    // x = -r_0
                    Elem(base.neg(relation[0]).0)
                } else {
                    Elem(base.size as u32)
                }
            }
            _ => panic!("{} has no polynomial variable", self.key),
        }
    }

    /// Image of a base-ring element under the structural map into this ring.
    pub fn from_base(&self, b: Elem) -> Elem {
        match &self.structure {
            Structure::PolyQuotient { .. } => b,
            Structure::Localized { class_of, .. } => class_of[b.idx()],
            Structure::Product { .. } | Structure::Modular { .. } => {
                panic!("{} has no base ring", self.key)
            }
        }
    }

    pub fn base(&self) -> Option<&Arc<FiniteRing>> {
        match &self.structure {
            Structure::PolyQuotient { base, .. } | Structure::Localized { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn components(&self, a: Elem) -> Option<(Elem, Elem)> {
        match &self.structure {
            Structure::Product { right, .. } => {
                Some((Elem((a.idx() / right.size) as u32), Elem((a.idx() % right.size) as u32)))
            }
            _ => None,
        }
    }

    pub fn pair(&self, a: Elem, b: Elem) -> Option<Elem> {
        match &self.structure {
            Structure::Product { right, .. } => Some(Elem((a.idx() * right.size + b.idx()) as u32)),
            _ => None,
        }
    }

    /// Raw tables, for checksums and caches: `(add, mul)`.
    pub fn tables(&self) -> (&[u32], &[u32]) {
        (&self.add, &self.mul)
    }

    /// Full-table verification of the commutative ring axioms.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let els: Vec<Elem> = self.elements().collect();
        if self.size > 1 && self.one == Elem::ZERO {
            return Err("one equals zero".into());
        }
        for &a in &els {
            if self.add(a, Elem::ZERO) != a || self.mul(a, self.one) != a {
                return Err(format!("identity fails at {}", self.label(a)));
            }
            if self.add(a, self.neg(a)) != Elem::ZERO {
                return Err(format!("negation fails at {}", self.label(a)));
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at {}, {}", self.label(a), self.label(b)));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return Err(format!("associativity fails at {}, {}, {}", self.label(a), self.label(b), self.label(c)));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at {}, {}, {}", self.label(a), self.label(b), self.label(c)));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(text_spec: RingSpec) -> Arc<FiniteRing> {
        make_ring(&text_spec).unwrap()
    }

    #[test]
    fn modular_rings() {
        let r = ring(RingSpec::zmod(6));
        assert_eq!(r.size(), 6);
        assert_eq!(r.mul(Elem(2), Elem(3)), Elem(0));
        assert_eq!(r.key(), "Z6");
        assert!(r.check_axioms().is_ok());
        assert_eq!(make_ring(&RingSpec::zmod(1)).unwrap_err(), Error::InvalidModulus(1));
    }

    #[test]
    fn product_is_componentwise() {
        let r = ring(RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2)));
        assert_eq!(r.size(), 4);
        let a = r.parse_elem("(1,0)").unwrap();
        let b = r.parse_elem("(0,1)").unwrap();
        assert_eq!(r.mul(a, b), Elem::ZERO);
        assert_eq!(r.add(a, b), r.one());
        assert_eq!(r.label(r.one()), "(1,1)");
        assert!(r.check_axioms().is_ok());
    }

    #[test]
    fn dual_numbers_over_f2() {
        // Z2[x]/(x^2): {0, 1, x, 1+x}, x*x = 0, (1+x)^2 = 1.
        let r = ring(RingSpec::poly_quot(RingSpec::zmod(2), "x^2").unwrap());
        assert_eq!(r.size(), 4);
        let labels: Vec<&str> = r.elements().map(|e| r.label(e)).collect();
        assert_eq!(labels, ["0", "1", "x", "1+x"]);
        let x = r.variable();
        assert_eq!(r.mul(x, x), Elem::ZERO);
        let u = r.parse_elem("1+x").unwrap();
        assert_eq!(r.mul(u, u), r.one());
        assert!(r.check_axioms().is_ok());
    }

    #[test]
    fn poly_quotient_errors() {
        let non_monic = RingSpec::poly_quot(RingSpec::zmod(4), "2*x^2+1").unwrap();
        assert_eq!(make_ring(&non_monic).unwrap_err(), Error::NonMonic);
        let constant = RingSpec::poly_quot(RingSpec::zmod(4), "1").unwrap();
        assert_eq!(make_ring(&constant).unwrap_err(), Error::RelationDegree);
        // 3x^2 is monic over Z2 after reduction.
        let reduced = RingSpec::poly_quot(RingSpec::zmod(2), "3*x^2+x").unwrap();
        assert_eq!(make_ring(&reduced).unwrap().key(), "PolyQuot(Z2,x^2+x)");
    }

    #[test]
    fn galois_field_of_four() {
        let r = ring(RingSpec::poly_quot(RingSpec::zmod(2), "x^2+x+1").unwrap());
        for a in r.nonzero_elements() {
            assert!(r.is_unit(a), "{} should be a unit", r.label(a));
        }
    }

    #[test]
    fn parse_round_trips_labels() {
        for spec in [
            RingSpec::zmod(12),
            RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(4)),
            RingSpec::poly_quot(RingSpec::zmod(3), "x^3").unwrap(),
            RingSpec::poly_quot(RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2)), "x^2").unwrap(),
        ] {
            let r = ring(spec);
            for e in r.elements() {
                assert_eq!(r.parse_elem(r.label(e)).unwrap(), e);
            }
        }
    }

    #[test]
    fn element_expressions_evaluate() {
        let r = ring(RingSpec::poly_quot(RingSpec::zmod(3), "x^2+1").unwrap());
        let x = r.variable();
        assert_eq!(r.parse_elem("x^2").unwrap(), r.from_int(-1));
        assert_eq!(r.parse_elem("2x+1").unwrap(), r.add(r.mul(r.from_int(2), x), r.one()));
        let z = ring(RingSpec::zmod(7));
        assert_eq!(z.parse_elem("3/5").unwrap(), z.mul(Elem(3), z.inverse(Elem(5)).unwrap()));
        assert!(z.parse_elem("(1,2)").is_err());
    }

    #[test]
    fn localization_kills_the_complementary_factor() {
        let spec = RingSpec::localize(
            RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2)),
            vec!["(1,0)".into()],
        );
        let r = ring(spec);
        assert_eq!(r.size(), 2);
        assert_eq!(r.key(), "Localize(Prod(Z2,Z2),{(1,0),(1,1)})");
        assert!(r.check_axioms().is_ok());
    }
}
