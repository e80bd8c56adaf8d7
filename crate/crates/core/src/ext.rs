//! Extensions `R[G]`, `M[G]` with `G = ℕ^d`, and truncated series `R[[X]]`, `M[[X]]`.
//!
//! Elements are finitely supported maps from exponent vectors to nonzero
//! coefficients. Series keep only exponents below their precision; any
//! discarded nonzero term sets the truncation flag, which propagates.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{syntax, Error, Result};
use crate::ideal::Ideal;
use crate::module::{FiniteModule, ModElem, Submodule};
use crate::predicates::{Verdict, Witness};
use crate::ring::{Elem, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Polynomials in `vars` commuting variables: the monoid ring over `ℕ^vars`.
    Poly { vars: usize },
    /// One-variable series truncated at `X^precision`.
    Series { precision: u32 },
}

impl Variant {
    pub const DEFAULT_PRECISION: u32 = 8;

    pub fn arity(self) -> usize {
        match self {
            Variant::Poly { vars } => vars,
            Variant::Series { .. } => 1,
        }
    }

    fn keeps(self, exp: &[u32]) -> bool {
        match self {
            Variant::Poly { .. } => true,
            Variant::Series { precision } => exp[0] < precision,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement<C> {
    variant: Variant,
    terms: BTreeMap<Vec<u32>, C>,
    truncated: bool,
}

impl<C: Copy + Default + Eq> ExtElement<C> {
    pub fn zero(variant: Variant) -> Self {
        ExtElement {
            variant,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    /// Builds an element from terms; repeated exponents are combined with `add`.
    pub fn from_terms(
        variant: Variant,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
        add: impl Fn(C, C) -> C,
    ) -> Result<Self> {
        let mut out = Self::zero(variant);
        for (exp, c) in terms {
            if exp.len() != variant.arity() {
                return Err(Error::VariantMismatch);
            }
            out.accumulate(exp, c, &add);
        }
        Ok(out)
    }

    pub fn constant(variant: Variant, c: C) -> Self {
        let mut out = Self::zero(variant);
        out.accumulate(vec![0; variant.arity()], c, |_, b| b);
        out
    }

    fn accumulate(&mut self, exp: Vec<u32>, c: C, add: impl Fn(C, C) -> C) {
        if !self.variant.keeps(&exp) {
            if c != C::default() {
                self.truncated = true;
            }
            return;
        }
        let zero = C::default();
        let next = add(self.terms.get(&exp).copied().unwrap_or(zero), c);
        if next == zero {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, next);
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn coefficients(&self) -> Vec<C> {
        self.terms.values().copied().collect()
    }

    pub fn coefficient(&self, exp: &[u32]) -> C {
        self.terms.get(exp).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Largest total degree of the support; 0 for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Same element in `vars ≥ 1` variables, the old ones first.
    pub fn embed(&self, vars: usize) -> Result<Self> {
        match self.variant {
            Variant::Poly { vars: v } if v <= vars => {
                let terms = self
                    .terms
                    .iter()
                    .map(|(e, &c)| {
                        let mut e = e.clone();
                        e.resize(vars, 0);
                        (e, c)
                    })
                    .collect();
                Ok(ExtElement {
                    variant: Variant::Poly { vars },
                    terms,
                    truncated: false,
                })
            }
            _ => Err(Error::VariantMismatch),
        }
    }

    /// A one-variable polynomial read as a truncated series.
    pub fn as_series(&self, precision: u32) -> Result<Self> {
        if self.variant != (Variant::Poly { vars: 1 }) {
            return Err(Error::VariantMismatch);
        }
        Self::from_terms(Variant::Series { precision }, self.terms.clone(), |_, b| b)
    }

    pub fn map<D: Copy + Default + Eq>(&self, f: impl Fn(C) -> D) -> ExtElement<D> {
        let mut out = ExtElement::zero(self.variant);
        out.truncated = self.truncated;
        for (e, &c) in &self.terms {
            out.accumulate(e.clone(), f(c), |_, b| b);
        }
        out
    }

    fn zip_with(&self, other: &Self, add: impl Fn(C, C) -> C) -> Result<Self> {
        if self.variant != other.variant {
            return Err(Error::VariantMismatch);
        }
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (e, &c) in &other.terms {
            out.accumulate(e.clone(), c, &add);
        }
        Ok(out)
    }
}

/// Convolution `f * g` with coefficient products in `E`.
fn convolve<C, D, E>(
    f: &ExtElement<C>,
    g: &ExtElement<D>,
    mul: impl Fn(C, D) -> E,
    add: impl Fn(E, E) -> E,
) -> Result<ExtElement<E>>
where
    C: Copy + Default + Eq,
    D: Copy + Default + Eq,
    E: Copy + Default + Eq,
{
    if f.variant != g.variant {
        return Err(Error::VariantMismatch);
    }
    let mut out = ExtElement::zero(f.variant);
    out.truncated = f.truncated || g.truncated;
    let mut full: BTreeMap<Vec<u32>, E> = BTreeMap::new();
    for (a, &c) in &f.terms {
        for (b, &d) in &g.terms {
            let exp: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let p = mul(c, d);
            let slot = full.entry(exp).or_default();
            *slot = add(*slot, p);
        }
    }
    for (e, c) in full {
        out.accumulate(e, c, &add);
    }
    Ok(out)
}

impl ExtElement<Elem> {
    pub fn add(&self, other: &Self, ring: &FiniteRing) -> Result<Self> {
        self.zip_with(other, |a, b| ring.add(a, b))
    }

    pub fn neg(&self, ring: &FiniteRing) -> Self {
        self.map(|c| ring.neg(c))
    }

    pub fn mul(&self, other: &Self, ring: &FiniteRing) -> Result<Self> {
        convolve(self, other, |a, b| ring.mul(a, b), |a, b| ring.add(a, b))
    }

    /// `f · g` for `g` with module coefficients.
    pub fn act(&self, g: &ExtElement<ModElem>, module: &FiniteModule) -> Result<ExtElement<ModElem>> {
        convolve(self, g, |a, x| module.act(a, x), |x, y| module.add(x, y))
    }

    /// `c(f)`, the ideal generated by the coefficients.
    pub fn content(&self, ring: &FiniteRing) -> Result<Ideal> {
        ring.ideal_generated(&self.coefficients())
    }

    pub fn format(&self, ring: &FiniteRing) -> String {
        format_ext(self, |c| ring.label(c).to_string(), Some(ring.one()))
    }

    pub fn parse(text: &str, ring: &FiniteRing, vars: Option<usize>) -> Result<Self> {
        parse_ext(
            text,
            vars,
            |t| ring.parse_elem(t),
            |c| ring.neg(c),
            |a, b| ring.add(a, b),
            Some(ring.one()),
        )
    }

    fn check_in(&self, ring: &FiniteRing) -> Result<()> {
        for &c in self.terms.values() {
            ring.check_elem(c)?;
        }
        Ok(())
    }
}

impl ExtElement<ModElem> {
    pub fn add(&self, other: &Self, module: &FiniteModule) -> Result<Self> {
        self.zip_with(other, |a, b| module.add(a, b))
    }

    /// `c(g)`, the submodule generated by the coefficients.
    pub fn content(&self, module: &FiniteModule) -> Result<Submodule> {
        module.span(&self.coefficients())
    }

    pub fn format(&self, module: &FiniteModule) -> String {
        format_ext(self, |c| module.label(c).to_string(), None)
    }

    pub fn parse_module(text: &str, module: &FiniteModule, vars: Option<usize>) -> Result<Self> {
        parse_ext(
            text,
            vars,
            |t| module.parse_elem(t),
            |c| module.neg(c),
            |a, b| module.add(a, b),
            None,
        )
    }
}

fn monomial(exp: &[u32]) -> String {
    let mut out = String::new();
    let single = exp.len() == 1;
    for (i, &k) in exp.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push('X');
        if !single {
            let _ = write!(out, "{}", i + 1);
        }
        if k > 1 {
            let _ = write!(out, "^{k}");
        }
    }
    out
}

fn format_ext<C: Copy + Default + Eq>(f: &ExtElement<C>, label: impl Fn(C) -> String, one: Option<C>) -> String {
    let mut body = String::new();
    for (exp, &c) in f.terms.iter().rev() {
        if !body.is_empty() {
            body.push('+');
        }
        let mono = monomial(exp);
        let mut l = label(c);
        if l.contains(['+', '-', '*']) {
            l = format!("({l})");
        }
        if mono.is_empty() {
            body.push_str(&l);
        } else if Some(c) == one {
            body.push_str(&mono);
        } else {
            let _ = write!(body, "{l}*{mono}");
        }
    }
    if body.is_empty() {
        body.push('0');
    }
    match f.variant {
        Variant::Poly { .. } => body,
        Variant::Series { precision } => format!("series({precision}; {body})"),
    }
}

/// Splits at top-level occurrences of any of `seps`, keeping the separator
/// with the piece that follows it.
fn split_top(text: &str, seps: &[char]) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && seps.contains(&c) && !cur.trim().is_empty() {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// Reads `X`, `X^2`, `X1^2X2`, `X1*X2` into an exponent vector of length `vars`.
fn parse_monomial(text: &str, full: &str, exps: &mut Vec<u32>) -> Result<()> {
    let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != 'X' {
            return Err(syntax(full, format!("malformed monomial `{text}`")));
        }
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let var: usize = if start == i {
            1
        } else {
            bytes[start..i].iter().collect::<String>().parse().map_err(|_| syntax(full, "bad variable index"))?
        };
        if var == 0 {
            return Err(syntax(full, "variables are numbered from 1"));
        }
        let mut power = 1u32;
        if i < bytes.len() && bytes[i] == '^' {
            i += 1;
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            power = bytes[s..i].iter().collect::<String>().parse().map_err(|_| syntax(full, "bad exponent"))?;
        }
        if exps.len() < var {
            exps.resize(var, 0);
        }
        exps[var - 1] += power;
    }
    Ok(())
}

fn parse_ext<C: Copy + Default + Eq>(
    text: &str,
    vars: Option<usize>,
    coeff: impl Fn(&str) -> Result<C>,
    neg: impl Fn(C) -> C,
    add: impl Fn(C, C) -> C,
    one: Option<C>,
) -> Result<ExtElement<C>> {
    let trimmed = text.trim();
    let (body, precision) = match trimmed.strip_prefix("series(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => {
            let (n, body) = inner.split_once(';').ok_or_else(|| syntax(text, "expected `series(N; ...)`"))?;
            let n: u32 = n.trim().parse().map_err(|_| syntax(text, "bad precision"))?;
            if n == 0 {
                return Err(syntax(text, "precision must be positive"));
            }
            (body.trim(), Some(n))
        }
        None => (trimmed, None),
    };
    if body.is_empty() {
        return Err(syntax(text, "empty polynomial"));
    }
    let mut raw: Vec<(Vec<u32>, C)> = Vec::new();
    for term in split_top(body, &['+', '-']) {
        let term = term.trim();
        let (negative, term) = match term.strip_prefix('-') {
            Some(t) => (true, t.trim()),
            None => (false, term.strip_prefix('+').unwrap_or(term).trim()),
        };
        if term.is_empty() {
            return Err(syntax(text, "dangling sign"));
        }
        let mut exps = Vec::new();
        let mut coeff_parts = Vec::new();
        for factor in split_top(term, &['*']) {
            let factor = factor.trim().trim_start_matches('*').trim();
            // a top-level `X` starts the monomial part of the factor
            let mut depth = 0;
            let mut split = None;
            for (i, c) in factor.char_indices() {
                match c {
                    '(' | '[' => depth += 1,
                    ')' | ']' => depth -= 1,
                    'X' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            match split {
                Some(i) => {
                    if !factor[..i].trim().is_empty() {
                        coeff_parts.push(factor[..i].trim().to_string());
                    }
                    parse_monomial(&factor[i..], text, &mut exps)?;
                }
                None => coeff_parts.push(factor.to_string()),
            }
        }
        let mut c = if coeff_parts.is_empty() {
            one.ok_or_else(|| syntax(text, "module-valued terms need an explicit coefficient"))?
        } else if coeff_parts.len() == 1 && coeff_parts[0] == "0" {
            C::default()
        } else {
            coeff(&coeff_parts.join("*"))?
        };
        if negative {
            c = neg(c);
        }
        raw.push((exps, c));
    }
    let used = raw.iter().map(|(e, _)| e.len()).max().unwrap_or(0);
    let variant = match precision {
        Some(precision) => {
            if used > 1 {
                return Err(syntax(text, "series take a single variable"));
            }
            Variant::Series { precision }
        }
        None => {
            let vars = vars.unwrap_or(1).max(used).max(1);
            Variant::Poly { vars }
        }
    };
    let arity = variant.arity();
    ExtElement::from_terms(
        variant,
        raw.into_iter().map(|(mut e, c)| {
            e.resize(arity, 0);
            (e, c)
        }),
        add,
    )
}

/// Decides `f ∈ Z(M[G])` (or `Z(M[[X]])`) by the content criterion: some
/// nonzero `m` has `c(f) m = 0`. The witness is the least such `m`.
pub fn is_zd_on_extension(f: &ExtElement<Elem>, module: &FiniteModule) -> Result<Verdict> {
    f.check_in(module.ring())?;
    if module.is_zero() {
        return Ok(Verdict::degenerate(false));
    }
    let coeffs = f.coefficients();
    Ok(
        match module
            .nonzero_elements()
            .find(|&x| coeffs.iter().all(|&a| module.act(a, x) == ModElem::ZERO))
        {
            Some(m) => Verdict::pass_with(Witness::ModuleElement(m)),
            None => Verdict {
                holds: false,
                degenerate: false,
                witness: None,
            },
        },
    )
}

/// Exhaustive search for a nonzero `g ∈ M[G]` with every exponent at most
/// `bound` and `f g = 0`. The witness is the first such `g` in code order.
pub fn brute_force_zd(f: &ExtElement<Elem>, module: &FiniteModule, bound: u32) -> Result<Verdict> {
    let vars = match f.variant {
        Variant::Poly { vars } => vars,
        Variant::Series { .. } => return Err(Error::Unsupported("exhaustive search over series".into())),
    };
    f.check_in(module.ring())?;
    if module.is_zero() {
        return Ok(Verdict::degenerate(false));
    }
    let monomials: Vec<Vec<u32>> = {
        let mut out = vec![vec![]];
        for _ in 0..vars {
            out = out
                .into_iter()
                .flat_map(|e: Vec<u32>| {
                    (0..=bound).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        out
    };
    let n = module.size() as u128;
    let count = n.checked_pow(monomials.len() as u32).unwrap_or(u128::MAX);
    module.limits().check_search(count)?;
    for code in 1..count {
        let mut rest = code;
        let mut terms = Vec::with_capacity(monomials.len());
        for e in monomials.iter().rev() {
            terms.push((e.clone(), ModElem((rest % n) as u32)));
            rest /= n;
        }
        let g = ExtElement::from_terms(f.variant, terms, |_, b| b)?;
        if f.act(&g, module)?.is_zero() {
            return Ok(Verdict::pass_with(Witness::ModuleExtension(g)));
        }
    }
    Ok(Verdict {
        holds: false,
        degenerate: false,
        witness: None,
    })
}

/// From `f g = 0` with `g ≠ 0`, a nonzero constant `m` with `f m = 0`.
///
/// Takes the least `k ≥ 1` with `c(f)^k c(g) = 0` and returns the least
/// nonzero element of `c(f)^(k-1) c(g)`.
pub fn mccoy_witness(f: &ExtElement<Elem>, g: &ExtElement<ModElem>, module: &FiniteModule) -> Result<ModElem> {
    f.check_in(module.ring())?;
    if g.is_zero() {
        return Err(Error::Precondition("g must be nonzero".into()));
    }
    if f.truncated || g.truncated {
        return Err(Error::Precondition("truncated series input".into()));
    }
    let product = f.act(g, module)?;
    if product.truncated {
        return Err(Error::Precondition("the series product loses terms to truncation".into()));
    }
    if !product.is_zero() {
        return Err(Error::Precondition("f g is not zero".into()));
    }
    let cf = f.coefficients();
    let mut current = g.content(module)?;
    loop {
        let mut products = Vec::new();
        for &a in &cf {
            for &x in current.elements() {
                products.push(module.act(a, x));
            }
        }
        let next = module.span(&products)?;
        if next.is_zero() {
            break;
        }
        if next == current {
            return Err(Error::Precondition("content powers never vanish".into()));
        }
        current = next;
    }
    let m = current.least_nonzero().expect("the previous power is nonzero");
    if cf.iter().any(|&a| module.act(a, m) != ModElem::ZERO) {
        return Err(Error::Precondition("extracted element is not killed by f".into()));
    }
    Ok(m)
}

/// A polynomial with content `I`: the generators of `I` on distinct monomials.
pub fn content_probe(i: &Ideal, variant: Variant) -> ExtElement<Elem> {
    let terms = i.generators().iter().enumerate().map(|(k, &g)| {
        let exp = vec![k as u32; variant.arity()];
        (exp, g)
    });
    ExtElement::from_terms(variant, terms, |_, b| b).expect("arity matches")
}

/// `Z(R[G]) ⊆ Z(M[G])`, over the variant's extension.
///
/// Both memberships depend only on `c(f)`, and every ideal is the content of
/// some `f`, so it suffices to run over the ideal lattice. The witness is the
/// probe polynomial of the least offending ideal.
pub fn is_auslander_extension(module: &FiniteModule, variant: Variant) -> Verdict {
    extension_inclusion(module, variant, true)
}

/// `Z(M[G]) ⊆ Z(R[G])`, decided like [`is_auslander_extension`].
pub fn is_torsion_free_extension(module: &FiniteModule, variant: Variant) -> Verdict {
    extension_inclusion(module, variant, false)
}

fn extension_inclusion(module: &FiniteModule, variant: Variant, auslander: bool) -> Verdict {
    if module.is_zero() {
        return Verdict::degenerate(false);
    }
    let ring = module.ring();
    for i in ring.all_ideals() {
        if let Variant::Series { precision } = variant {
            assert!((i.generators().len() as u32) <= precision, "precision below generator count");
        }
        let in_ring = ring.nonzero_elements().any(|r| i.generators().iter().all(|&a| ring.mul(a, r) == Elem::ZERO));
        let in_module = module.killed_by(i).len() > 1;
        let offends = if auslander { in_ring && !in_module } else { in_module && !in_ring };
        if offends {
            return Verdict::fail(Witness::RingExtension(content_probe(i, variant)));
        }
    }
    Verdict::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Limits;
    use crate::ring::{make_ring, RingSpec};

    #[test]
    fn arithmetic_examples() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let f = ExtElement::parse("2*X+2", &z4, None).unwrap();
        let two = ExtElement::constant(f.variant(), Elem(2));
        assert!(f.mul(&two, &z4).unwrap().is_zero());
        assert_eq!(f.format(&z4), "2*X+2");
        let z2 = make_ring(&RingSpec::zmod(2)).unwrap();
        let s = ExtElement::parse("X1+X2", &z2, None).unwrap();
        let sq = s.mul(&s, &z2).unwrap();
        assert_eq!(sq, ExtElement::parse("X1^2+X2^2", &z2, None).unwrap());
        assert_eq!(sq.format(&z2), "X1^2+X2^2");
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let g = ExtElement::parse("3X^2 + 2", &z6, None).unwrap();
        assert!(g.content(&z6).unwrap().is_whole());
        assert_eq!(f.content(&z4).unwrap().elements(), [Elem(0), Elem(2)]);
    }

    #[test]
    fn series_truncation() {
        let z2 = make_ring(&RingSpec::zmod(2)).unwrap();
        let f = ExtElement::parse("series(3; 1+X^2)", &z2, None).unwrap();
        let sq = f.mul(&f, &z2).unwrap();
        assert_eq!(sq.format(&z2), "series(3; 1)");
        assert!(sq.truncated());
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let p = ExtElement::parse("(1,0)+(1,0)X", &r, None).unwrap();
        assert_eq!(p.format(&r), "(1,0)*X+(1,0)");
    }

    #[test]
    fn criterion_examples() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let reg = FiniteModule::regular(&z4);
        let f = ExtElement::parse("2*X+2", &z4, None).unwrap();
        let v = is_zd_on_extension(&f, &reg).unwrap();
        assert_eq!(v.witness, Some(Witness::ModuleElement(ModElem(2))));
        assert!(brute_force_zd(&f, &reg, 0).unwrap().holds);
        let x = ExtElement::parse("X", &z4, None).unwrap();
        assert!(!is_zd_on_extension(&x, &reg).unwrap().holds);
        assert!(!brute_force_zd(&x, &reg, 1).unwrap().holds);
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let p = ExtElement::parse("(1,0)+(1,0)X", &r, None).unwrap();
        let v = is_zd_on_extension(&p, &FiniteModule::regular(&r)).unwrap();
        assert_eq!(v.witness, Some(Witness::ModuleElement(ModElem(r.parse_elem("(0,1)").unwrap().0))));
    }

    #[test]
    fn witness_extraction() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let reg = FiniteModule::regular(&z4);
        let f = ExtElement::parse("2*X+2", &z4, None).unwrap();
        let g = ExtElement::parse_module("2", &reg, None).unwrap();
        assert_eq!(mccoy_witness(&f, &g, &reg).unwrap(), ModElem(2));
        let zero = ExtElement::zero(f.variant());
        let g = ExtElement::parse_module("3X+1", &reg, None).unwrap();
        assert_eq!(mccoy_witness(&zero, &g, &reg).unwrap(), ModElem(1));
        assert!(mccoy_witness(&f, &g, &reg).is_err());
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let reg = FiniteModule::regular(&r);
        let f = ExtElement::parse("(1,0)", &r, None).unwrap();
        let g = ExtElement::parse_module("(0,1)+(0,1)X", &reg, None).unwrap();
        assert_eq!(reg.label(mccoy_witness(&f, &g, &reg).unwrap()), "(0,1)");
    }

    #[test]
    fn extension_verdicts_follow_the_base() {
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        for variant in [Variant::Poly { vars: 1 }, Variant::Poly { vars: 2 }, Variant::Series { precision: 8 }] {
            assert!(!is_auslander_extension(&m, variant).holds);
            assert!(is_torsion_free_extension(&m, variant).holds);
        }
    }
}
