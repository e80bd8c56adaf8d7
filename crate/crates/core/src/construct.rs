//! Module construction descriptors.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraSpec, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::module::{FiniteModule, Limits};
use crate::ring::{Elem, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    Reg,
    Free(usize),
    /// `R/I` for the ideal generated by the listed elements.
    Cyclic(Vec<String>),
    Sum(Box<ModuleSpec>, Box<ModuleSpec>),
    Hom(Box<ModuleSpec>),
    Tensor(Box<ModuleSpec>, AlgebraSpec),
    Localize(Box<ModuleSpec>, Vec<String>),
}

impl ModuleSpec {
    pub fn cyclic<S: Into<String>>(gens: impl IntoIterator<Item = S>) -> Self {
        ModuleSpec::Cyclic(gens.into_iter().map(Into::into).collect())
    }

    pub fn sum(a: ModuleSpec, b: ModuleSpec) -> Self {
        ModuleSpec::Sum(Box::new(a), Box::new(b))
    }

    pub fn hom(a: ModuleSpec) -> Self {
        ModuleSpec::Hom(Box::new(a))
    }

    pub fn tensor(a: ModuleSpec, algebra: AlgebraSpec) -> Self {
        ModuleSpec::Tensor(Box::new(a), algebra)
    }

    pub fn localize<S: Into<String>>(a: ModuleSpec, set: impl IntoIterator<Item = S>) -> Self {
        ModuleSpec::Localize(Box::new(a), set.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Reg => write!(f, "Reg"),
            ModuleSpec::Free(k) => write!(f, "Free({k})"),
            ModuleSpec::Cyclic(g) => write!(f, "Cyclic({})", g.join(",")),
            ModuleSpec::Sum(a, b) => write!(f, "Sum({a},{b})"),
            ModuleSpec::Hom(a) => write!(f, "Hom({a})"),
            ModuleSpec::Tensor(a, alg) => write!(f, "Tensor({a},{alg})"),
            ModuleSpec::Localize(a, s) => write!(f, "Localize({a},{{{}}})", s.join(",")),
        }
    }
}

/// Builds a module over `ring`. Tensor and localization change the ring:
/// the result lives over the algebra, respectively the localized ring.
pub fn build_module(ring: &Arc<FiniteRing>, spec: &ModuleSpec, limits: Limits) -> Result<FiniteModule> {
    match spec {
        ModuleSpec::Reg => {
            limits.check_module(ring.size() as u128)?;
            Ok(FiniteModule::regular_with(ring, limits))
        }
        ModuleSpec::Free(k) => FiniteModule::free(ring, *k, limits),
        ModuleSpec::Cyclic(gens) => {
            let gens = parse_all(ring, gens)?;
            let ideal = ring.ideal_generated(&gens)?;
            FiniteModule::cyclic(ring, &ideal, limits)
        }
        ModuleSpec::Sum(a, b) => {
            let a = build_module(ring, a, limits)?;
            let b = build_module(ring, b, limits)?;
            FiniteModule::direct_sum(&a, &b)
        }
        ModuleSpec::Hom(a) => build_module(ring, a, limits)?.hom_module(),
        ModuleSpec::Tensor(a, alg) => {
            let m = build_module(ring, a, limits)?;
            let algebra = FiniteAlgebra::from_spec(alg, limits)?;
            if algebra.base().key() != m.ring().key() {
                return Err(Error::RingMismatch(m.ring().key().into(), algebra.base().key().into()));
            }
            m.tensor_with(&algebra)
        }
        ModuleSpec::Localize(a, set) => {
            let m = build_module(ring, a, limits)?;
            let gens = parse_all(m.ring(), set)?;
            let s = m.ring().multiplicative_closure(&gens)?;
            m.localize(&s)
        }
    }
}

fn parse_all(ring: &FiniteRing, texts: &[String]) -> Result<Vec<Elem>> {
    texts.iter().map(|t| ring.parse_elem(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingSpec};

    #[test]
    fn builds_from_descriptors() {
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let spec = ModuleSpec::sum(ModuleSpec::cyclic(["3"]), ModuleSpec::Reg);
        assert_eq!(spec.to_string(), "Sum(Cyclic(3),Reg)");
        assert_eq!(build_module(&z6, &spec, Limits::default()).unwrap().size(), 18);
        let h = ModuleSpec::hom(ModuleSpec::cyclic(["3"]));
        assert_eq!(build_module(&z6, &h, Limits::default()).unwrap().size(), 3);
        let bad = ModuleSpec::cyclic(["7x"]);
        assert!(build_module(&z6, &bad, Limits::default()).is_err());
        let small = Limits {
            module: 20,
            ..Limits::default()
        };
        assert!(matches!(
            build_module(&z6, &ModuleSpec::Free(2), small),
            Err(Error::SizeBound { .. })
        ));
    }
}
