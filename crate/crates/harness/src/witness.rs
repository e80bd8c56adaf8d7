//! Serializable witness records and their re-validation by definition.
//!
//! A record names a structure in the construction language, the claim it
//! speaks to, and the witness value as labels. [`revalidate`] recomputes the
//! defining condition from scratch, never by calling the predicate that
//! produced the witness.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use zerodiv_core::ext::{brute_force_zd, is_zd_on_extension};
use zerodiv_core::{
    ExtElement, FiniteAlgebra, FiniteModule, FiniteRing, Ideal, ModElem, Variant, Verdict, Witness,
};

use crate::zadapter::ZModule;

/// Ring descriptor of the integer adapter.
pub const INTEGERS: &str = "ZZ";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessValue {
    RingElement { element: String },
    ModuleElement { element: String },
    Ideal { generators: Vec<String> },
    Flatness { ideal: Vec<String>, tensor_size: usize, image_size: usize },
    Residue { ideal: Vec<String> },
    AlgebraElement { element: String },
    AlgebraPair { f: String, g: String },
    RingExtension { poly: String, vars: usize },
    ModuleExtension { poly: String, vars: usize },
    /// An integer, for the adapter.
    Integer { value: i64 },
    /// `f g = 0` with `g ≠ 0`, and the extracted constant `m`.
    Extraction { f: String, g: String, m: String },
}

/// What a witness speaks to. Extension claims carry the variant in the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Auslander,
    TorsionFree,
    PropertyA,
    ContentModule,
    ContentSurjective,
    Faithful,
    Flat,
    FaithfullyFlat,
    OhmRush,
    Mccoy,
    ExtensionAuslander,
    ExtensionTorsionFree,
    /// The content criterion places `f` in `Z(M[G])`.
    ExtensionZeroDivisor,
    Extraction,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Auslander => "auslander",
            Claim::TorsionFree => "torsion_free",
            Claim::PropertyA => "property_a",
            Claim::ContentModule => "content_module",
            Claim::ContentSurjective => "content_surjective",
            Claim::Faithful => "faithful",
            Claim::Flat => "flat",
            Claim::FaithfullyFlat => "faithfully_flat",
            Claim::OhmRush => "ohm_rush",
            Claim::Mccoy => "mccoy",
            Claim::ExtensionAuslander => "extension_auslander",
            Claim::ExtensionTorsionFree => "extension_torsion_free",
            Claim::ExtensionZeroDivisor => "extension_zero_divisor",
            Claim::Extraction => "extraction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub claim: Claim,
    /// The verdict the witness supports.
    pub holds: bool,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algebra: Option<String>,
    pub value: WitnessValue,
}

/// The structures a witness is interpreted against.
#[derive(Clone, Copy)]
pub struct Subject<'a> {
    pub ring: &'a Arc<FiniteRing>,
    pub module: Option<&'a FiniteModule>,
    pub algebra: Option<&'a FiniteAlgebra>,
}

fn ext_vars(f: &ExtElement<impl Copy + Default + Eq>) -> usize {
    match f.variant() {
        Variant::Poly { vars } => vars,
        Variant::Series { .. } => 1,
    }
}

impl WitnessValue {
    /// Labels a core witness. Module elements are labelled in `subject.module`,
    /// algebra elements in the algebra ring.
    pub fn from_witness(w: &Witness, subject: Subject<'_>) -> WitnessValue {
        let ring = subject.ring;
        let ideal = |i: &Ideal| ring.labels(i.generators());
        match w {
            Witness::RingElement(r) => WitnessValue::RingElement {
                element: ring.label(*r).to_string(),
            },
            Witness::ModuleElement(x) => WitnessValue::ModuleElement {
                element: subject.module.expect("module witness needs a module").label(*x).to_string(),
            },
            Witness::Ideal(i) => WitnessValue::Ideal { generators: ideal(i) },
            Witness::Flatness {
                ideal: i,
                tensor_size,
                image_size,
            } => WitnessValue::Flatness {
                ideal: ideal(i),
                tensor_size: *tensor_size,
                image_size: *image_size,
            },
            Witness::Residue(p) => WitnessValue::Residue { ideal: ideal(p) },
            Witness::AlgebraElement(f) => WitnessValue::AlgebraElement {
                element: algebra_ring(subject).label(*f).to_string(),
            },
            Witness::AlgebraPair { f, g } => {
                let b = algebra_ring(subject);
                WitnessValue::AlgebraPair {
                    f: b.label(*f).to_string(),
                    g: b.label(*g).to_string(),
                }
            }
            Witness::RingExtension(f) => WitnessValue::RingExtension {
                poly: f.format(ring),
                vars: ext_vars(f),
            },
            Witness::ModuleExtension(g) => WitnessValue::ModuleExtension {
                poly: g.format(subject.module.expect("module witness needs a module")),
                vars: ext_vars(g),
            },
        }
    }
}

fn algebra_ring<'a>(subject: Subject<'a>) -> &'a Arc<FiniteRing> {
    subject.algebra.expect("algebra witness needs an algebra").ring()
}

fn parse_ideal(ring: &FiniteRing, gens: &[String]) -> Result<Ideal, String> {
    let elems = gens
        .iter()
        .map(|g| ring.parse_elem(g))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    ring.ideal_generated(&elems).map_err(|e| e.to_string())
}

fn parse_ext(text: &str, vars: usize, ring: &FiniteRing) -> Result<ExtElement<zerodiv_core::Elem>, String> {
    let vars = (!text.trim_start().starts_with("series")).then_some(vars);
    ExtElement::parse(text, ring, vars).map_err(|e| e.to_string())
}

fn module_of<'a>(subject: Subject<'a>) -> Result<&'a FiniteModule, String> {
    subject.module.ok_or_else(|| "claim needs a module".to_string())
}

fn killed_nonzero(m: &FiniteModule, gens: &[zerodiv_core::Elem]) -> Option<ModElem> {
    m.nonzero_elements()
        .find(|&x| gens.iter().all(|&a| m.act(a, x) == ModElem::ZERO))
}

fn ring_zero_divisor(ring: &FiniteRing, r: zerodiv_core::Elem) -> bool {
    ring.nonzero_elements().any(|s| ring.mul(r, s) == zerodiv_core::Elem::ZERO)
}

fn module_zero_divisor(m: &FiniteModule, r: zerodiv_core::Elem) -> bool {
    killed_nonzero(m, &[r]).is_some()
}

/// `c(x)` recomputed by intersecting every ideal `I` with `x ∈ IM`.
fn content_by_definition(m: &FiniteModule, x: ModElem) -> Result<Vec<bool>, String> {
    let ring = m.ring();
    let mut mask = vec![true; ring.size()];
    for i in ring.all_ideals() {
        if m.ideal_action(i).map_err(|e| e.to_string())?.contains(x) {
            for (a, &b) in mask.iter_mut().zip(i.members()) {
                *a &= b;
            }
        }
    }
    Ok(mask)
}

/// Recomputes the defining condition for `claim` at the witness.
///
/// Returns `Ok(true)` when the witness demonstrates the recorded verdict.
pub fn revalidate(record: &WitnessRecord, subject: Subject<'_>) -> Result<bool, String> {
    let ring = subject.ring;
    let elem = |t: &str| ring.parse_elem(t).map_err(|e| e.to_string());
    use Claim::*;
    use WitnessValue as V;
    match (record.claim, record.holds, &record.value) {
        (Auslander, false, V::RingElement { element }) => {
            let m = module_of(subject)?;
            let r = elem(element)?;
            Ok(!m.is_zero() && ring_zero_divisor(ring, r) && !module_zero_divisor(m, r))
        }
        (TorsionFree, false, V::RingElement { element }) => {
            let m = module_of(subject)?;
            let r = elem(element)?;
            Ok(!ring_zero_divisor(ring, r) && module_zero_divisor(m, r))
        }
        (PropertyA, false, V::Ideal { generators }) => {
            let m = module_of(subject)?;
            let i = parse_ideal(ring, generators)?;
            let inside = i.elements().iter().all(|&r| module_zero_divisor(m, r));
            Ok(inside && killed_nonzero(m, i.generators()).is_none())
        }
        (ContentModule, false, V::ModuleElement { element }) => {
            let m = module_of(subject)?;
            let x = m.parse_elem(element).map_err(|e| e.to_string())?;
            let mask = content_by_definition(m, x)?;
            let gens = ring.min_generators(&mask);
            let c = ring.ideal_generated(&gens).map_err(|e| e.to_string())?;
            Ok(!m.ideal_action(&c).map_err(|e| e.to_string())?.contains(x))
        }
        (ContentSurjective, false, V::RingElement { element }) => {
            let m = module_of(subject)?;
            let s = elem(element)?;
            let target = ring.ideal_generated(&[s]).map_err(|e| e.to_string())?;
            for x in m.elements() {
                if content_by_definition(m, x)?.as_slice() == target.members() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Faithful, false, V::RingElement { element }) => {
            let m = module_of(subject)?;
            let r = elem(element)?;
            Ok(r != zerodiv_core::Elem::ZERO && m.elements().all(|x| m.act(r, x) == ModElem::ZERO))
        }
        (Flat | FaithfullyFlat, false, V::Flatness { ideal, tensor_size, image_size }) => {
            let m = module_of(subject)?;
            let i = parse_ideal(ring, ideal)?;
            let t = m.ideal_tensor_size(&i).map_err(|e| e.to_string())?;
            let im = m.ideal_action(&i).map_err(|e| e.to_string())?.len();
            Ok(t == *tensor_size && im == *image_size && t != im)
        }
        (FaithfullyFlat, false, V::Residue { ideal }) => {
            let m = module_of(subject)?;
            let p = parse_ideal(ring, ideal)?;
            let maximal = !p.is_whole()
                && ring.all_ideals().iter().all(|j| !p.is_subset(j) || *j == p || j.is_whole());
            Ok(maximal && m.ideal_action(&p).map_err(|e| e.to_string())?.is_whole())
        }
        (OhmRush | Mccoy, false, V::AlgebraElement { element }) => {
            let a = subject.algebra.ok_or("claim needs an algebra")?;
            let b = a.ring();
            let f = b.parse_elem(element).map_err(|e| e.to_string())?;
            let m = a.as_module().map_err(|e| e.to_string())?;
            let x = ModElem(f.0);
            let mask = content_by_definition(m, x)?;
            let c = a
                .base()
                .ideal_generated(&a.base().min_generators(&mask))
                .map_err(|e| e.to_string())?;
            Ok(!m.ideal_action(&c).map_err(|e| e.to_string())?.contains(x))
        }
        (Mccoy, false, V::AlgebraPair { f, g }) => {
            let a = subject.algebra.ok_or("claim needs an algebra")?;
            let b = a.ring();
            let f = b.parse_elem(f).map_err(|e| e.to_string())?;
            let g = b.parse_elem(g).map_err(|e| e.to_string())?;
            let m = a.as_module().map_err(|e| e.to_string())?;
            let mask = content_by_definition(m, ModElem(f.0))?;
            let base = a.base();
            let annihilated = base.nonzero_elements().any(|r| {
                base.elements()
                    .filter(|c| mask[c.idx()])
                    .all(|c| base.mul(c, r) == zerodiv_core::Elem::ZERO)
            });
            Ok(g != zerodiv_core::Elem::ZERO && b.mul(f, g) == zerodiv_core::Elem::ZERO && !annihilated)
        }
        (ExtensionAuslander, false, V::RingExtension { poly, vars }) => {
            let m = module_of(subject)?;
            let f = parse_ext(poly, *vars, ring)?;
            let reg = FiniteModule::regular(ring);
            let in_ring = zd_checked(&f, &reg)?;
            let in_module = zd_checked(&f, m)?;
            Ok(in_ring && !in_module)
        }
        (ExtensionTorsionFree, false, V::RingExtension { poly, vars }) => {
            let m = module_of(subject)?;
            let f = parse_ext(poly, *vars, ring)?;
            let reg = FiniteModule::regular(ring);
            Ok(zd_checked(&f, m)? && !zd_checked(&f, &reg)?)
        }
        (ExtensionZeroDivisor, true, V::Extraction { f, g: _, m: x }) => {
            let m = module_of(subject)?;
            let f = parse_ext(f, 1, ring)?;
            let x = m.parse_elem(x).map_err(|e| e.to_string())?;
            Ok(x != ModElem::ZERO && f.coefficients().iter().all(|&a| m.act(a, x) == ModElem::ZERO))
        }
        (Extraction, true, V::Extraction { f, g, m: x }) => {
            let m = module_of(subject)?;
            let f = parse_ext(f, 1, ring)?;
            let vars = (!g.trim_start().starts_with("series")).then_some(1);
            let g = ExtElement::parse_module(g, m, vars).map_err(|e| e.to_string())?;
            let x = m.parse_elem(x).map_err(|e| e.to_string())?;
            let fg = f.act(&g, m).map_err(|e| e.to_string())?;
            let constant = ExtElement::constant(f.variant(), x);
            let fm = f.act(&constant, m).map_err(|e| e.to_string())?;
            Ok(!g.is_zero() && fg.is_zero() && !fg.truncated() && x != ModElem::ZERO && fm.is_zero())
        }
        (claim, holds, value) => Err(format!(
            "no re-validation rule for {} = {holds} with {value:?}",
            claim.name()
        )),
    }
}

/// Membership of `f` in `Z(M[G])`, by the content criterion, confirmed by a
/// degree-0 exhaustive search on polynomial inputs.
fn zd_checked(f: &ExtElement<zerodiv_core::Elem>, m: &FiniteModule) -> Result<bool, String> {
    let by_criterion = is_zd_on_extension(f, m).map_err(|e| e.to_string())?.holds;
    if let Variant::Poly { .. } = f.variant() {
        let by_search = brute_force_zd(f, m, 0).map_err(|e| e.to_string())?.holds;
        if by_search != by_criterion {
            return Err(format!("criterion and search disagree on {}", f.format(m.ring())));
        }
    }
    Ok(by_criterion)
}

/// Re-validates an adapter record: ring `ZZ`, module `Cyclic(n)` or `Reg`.
pub fn revalidate_integers(record: &WitnessRecord) -> Result<bool, String> {
    let module = record.module.as_deref().ok_or("claim needs a module")?;
    let n = parse_integer_module(module)?;
    let z = ZModule::new(n);
    match (record.claim, record.holds, &record.value) {
        (Claim::TorsionFree, false, WitnessValue::Integer { value }) => {
            Ok(*value != 0 && z.is_zero_divisor(*value) && z.killed_element(*value).is_some())
        }
        (claim, holds, value) => Err(format!(
            "no re-validation rule for {} = {holds} with {value:?} over the integers",
            claim.name()
        )),
    }
}

/// The torsion-free failure of `Z/n` for `n >= 2`: its least prime factor.
pub fn torsion_record(z: ZModule) -> Option<WitnessRecord> {
    z.torsion_witness().map(|k| WitnessRecord {
        claim: Claim::TorsionFree,
        holds: false,
        ring: INTEGERS.to_string(),
        module: Some(z.descriptor()),
        algebra: None,
        value: WitnessValue::Integer { value: k },
    })
}

/// `Reg` is `Z`; `Cyclic(n)` is `Z/n`.
pub fn parse_integer_module(text: &str) -> Result<u64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Reg" {
        return Ok(0);
    }
    t.strip_prefix("Cyclic(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|n| n.parse::<i64>().ok())
        .map(|n| n.unsigned_abs())
        .ok_or_else(|| format!("expected Reg or Cyclic(<n>) over {INTEGERS}, found {text}"))
}

/// Builds a record from a verdict witness, checking it on the spot. The
/// descriptors default to the structures' own keys; callers replace them with
/// construction-language descriptors.
///
/// Panics when the witness does not re-validate: that is an engine bug, and
/// reporting it as a theorem counterexample would be wrong.
pub fn record(
    claim: Claim,
    verdict: &Verdict,
    subject: Subject<'_>,
) -> Option<WitnessRecord> {
    let w = verdict.witness.as_ref()?;
    let rec = WitnessRecord {
        claim,
        holds: verdict.holds,
        ring: subject.ring.key().to_string(),
        module: subject.module.map(|m| m.descriptor().to_string()),
        algebra: subject.algebra.map(|a| a.spec().to_string()),
        value: WitnessValue::from_witness(w, subject),
    };
    match revalidate(&rec, subject) {
        Ok(true) => Some(rec),
        Ok(false) => panic!("witness does not re-validate: {rec:?}"),
        Err(e) => panic!("witness cannot be re-validated: {e}: {rec:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zerodiv_core::{make_ring, Limits, RingSpec};

    #[test]
    fn product_quotient_witness_round_trip() {
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        let subject = Subject {
            ring: &r,
            module: Some(&m),
            algebra: None,
        };
        let rec = record(Claim::Auslander, &m.is_auslander(), subject).unwrap();
        assert_eq!(
            rec.value,
            WitnessValue::RingElement {
                element: "(1,0)".into()
            }
        );
        let mut forged = rec.clone();
        forged.value = WitnessValue::RingElement {
            element: "(0,1)".into(),
        };
        assert_eq!(revalidate(&forged, subject), Ok(false));
    }

    #[test]
    fn integer_records() {
        let rec = WitnessRecord {
            claim: Claim::TorsionFree,
            holds: false,
            ring: INTEGERS.into(),
            module: Some("Cyclic(6)".into()),
            algebra: None,
            value: WitnessValue::Integer { value: 2 },
        };
        assert_eq!(revalidate_integers(&rec), Ok(true));
        let bad = WitnessRecord {
            value: WitnessValue::Integer { value: 5 },
            ..rec
        };
        assert_eq!(revalidate_integers(&bad), Ok(false));
    }
}
