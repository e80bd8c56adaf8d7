//! Finite `R`-algebras, and the Ohm-Rush and McCoy predicates.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{FiniteModule, Limits, ModElem, ModuleTag, Presentation, Tables};
use crate::predicates::{Verdict, Witness};
use crate::ring::{make_ring, Elem, FiniteRing, RingSpec, Structure};

/// `Algebra(B, R)`: the ring `B` with its canonical structure map from `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub algebra: RingSpec,
    pub base: RingSpec,
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({},{})", self.algebra, self.base)
    }
}

pub struct FiniteAlgebra {
    ring: Arc<FiniteRing>,
    base: Arc<FiniteRing>,
    map: Vec<Elem>,
    restricted: OnceLock<Result<FiniteModule>>,
    limits: Limits,
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({},{})", self.ring.key(), self.base.key())
    }
}

impl FiniteAlgebra {
    /// An algebra from an explicit structure map, verified to be a unital ring homomorphism.
    pub fn new(ring: Arc<FiniteRing>, base: Arc<FiniteRing>, map: Vec<Elem>, limits: Limits) -> Result<FiniteAlgebra> {
        if map.len() != base.size() || map.iter().any(|&b| !ring.contains(b)) {
            return Err(Error::Precondition("structure map must send every base element into the algebra".into()));
        }
        if map[base.one().idx()] != ring.one() {
            return Err(Error::Precondition("structure map must send 1 to 1".into()));
        }
        for a in base.elements() {
            for b in base.elements() {
                if map[base.add(a, b).idx()] != ring.add(map[a.idx()], map[b.idx()])
                    || map[base.mul(a, b).idx()] != ring.mul(map[a.idx()], map[b.idx()])
                {
                    return Err(Error::Precondition("structure map is not a ring homomorphism".into()));
                }
            }
        }
        Ok(FiniteAlgebra {
            ring,
            base,
            map,
            restricted: OnceLock::new(),
            limits,
        })
    }

    /// The canonical map `R -> B`: identity, diagonal into `Prod(R,R)`,
    /// constants into `PolyQuot(R, p)`, the localization map, or `Z/n -> B`
    /// when the characteristic of `B` divides `n`.
    pub fn canonical(ring: &Arc<FiniteRing>, base: &Arc<FiniteRing>, limits: Limits) -> Result<FiniteAlgebra> {
        let map: Option<Vec<Elem>> = if ring.key() == base.key() {
            Some(base.elements().collect())
        } else {
            match ring.structure() {
                Structure::Product { left, right } if left.key() == base.key() && right.key() == base.key() => {
                    Some(base.elements().map(|r| ring.pair(r, r).unwrap()).collect())
                }
                Structure::PolyQuotient { base: b, .. } | Structure::Localized { base: b, .. }
                    if b.key() == base.key() =>
                {
                    Some(base.elements().map(|r| ring.from_base(r)).collect())
                }
                _ => match base.structure() {
                    Structure::Modular { modulus } if *modulus as u64 % ring.characteristic() == 0 => {
                        Some(base.elements().map(|r| ring.from_int(r.0 as i64)).collect())
                    }
                    _ => None,
                },
            }
        };
        let map = map.ok_or_else(|| {
            Error::Unsupported(format!("no canonical map from {} to {}", base.key(), ring.key()))
        })?;
        FiniteAlgebra::new(ring.clone(), base.clone(), map, limits)
    }

    pub fn from_spec(spec: &AlgebraSpec, limits: Limits) -> Result<FiniteAlgebra> {
        let ring = make_ring(&spec.algebra)?;
        let base = make_ring(&spec.base)?;
        FiniteAlgebra::canonical(&ring, &base, limits)
    }

    pub fn spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            algebra: self.ring.spec().clone(),
            base: self.base.spec().clone(),
        }
    }

    /// `B`.
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// `R`.
    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn map(&self, r: Elem) -> Elem {
        self.map[r.idx()]
    }

    pub fn is_trivial(&self) -> bool {
        self.ring.key() == self.base.key()
    }

    /// `B` as an `R`-module by restriction of scalars. Element `i` of the
    /// module is element `i` of `B`.
    pub fn as_module(&self) -> Result<&FiniteModule> {
        self.restricted
            .get_or_init(|| {
                let b = &self.ring;
                let n = b.size();
                self.limits.check_module(n as u128)?;
                let (add, mul) = b.tables();
                let mut act = Vec::with_capacity(self.base.size() * n);
                for r in self.base.elements() {
                    let row = self.map(r).idx() * n;
                    act.extend_from_slice(&mul[row..row + n]);
                }
                let tables = Tables {
                    labels: b.elements().map(|e| b.label(e).to_string()).collect(),
                    add: add.to_vec(),
                    neg: b.elements().map(|e| b.neg(e).0).collect(),
                    act,
                };
                let structural = if self.is_trivial() {
                    Some(Presentation {
                        generators: vec![ModElem(b.one().0)],
                        relations: vec![],
                    })
                } else {
                    None
                };
                Ok(FiniteModule::from_tables(
                    self.base.clone(),
                    format!("Restrict({})", b.key()),
                    ModuleTag::Restricted,
                    tables,
                    structural,
                    self.limits,
                ))
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// `c(f) = ∩ {I : f ∈ IB}`.
    pub fn content(&self, f: Elem) -> Result<Ideal> {
        self.as_module()?.content(ModElem(f.0))
    }

    /// `f ∈ c(f)B` for every `f`; the witness is the least offender.
    pub fn is_ohm_rush(&self) -> Result<Verdict> {
        let v = self.as_module()?.is_content_module();
        Ok(match v.witness {
            Some(Witness::ModuleElement(x)) => Verdict::fail(Witness::AlgebraElement(Elem(x.0))),
            _ => v,
        })
    }

    /// Ohm-Rush, and whenever `f g = 0` with `g ≠ 0` some nonzero `r ∈ R` has
    /// `c(f) r = 0`. Pairs are searched by `g`, then `f`, in canonical order.
    pub fn is_mccoy(&self) -> Result<Verdict> {
        let ohm_rush = self.is_ohm_rush()?;
        if !ohm_rush.holds {
            return Ok(ohm_rush);
        }
        let b = &self.ring;
        let r = &self.base;
        let mut annihilated: Vec<Option<bool>> = vec![None; b.size()];
        for g in b.nonzero_elements() {
            for f in b.elements() {
                if b.mul(f, g) != Elem::ZERO {
                    continue;
                }
                let ok = match annihilated[f.idx()] {
                    Some(ok) => ok,
                    None => {
                        let c = self.content(f)?;
                        let ok = r
                            .nonzero_elements()
                            .any(|s| c.generators().iter().all(|&a| r.mul(a, s) == Elem::ZERO));
                        annihilated[f.idx()] = Some(ok);
                        ok
                    }
                };
                if !ok {
                    return Ok(Verdict::fail(Witness::AlgebraPair { f, g }));
                }
            }
        }
        Ok(Verdict::pass())
    }

    /// `B` faithfully flat as an `R`-module.
    pub fn is_faithfully_flat(&self) -> Result<Verdict> {
        self.as_module()?.is_faithfully_flat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(b: RingSpec, r: RingSpec) -> FiniteAlgebra {
        FiniteAlgebra::from_spec(&AlgebraSpec { algebra: b, base: r }, Limits::default()).unwrap()
    }

    #[test]
    fn product_over_prime_field_is_not_mccoy() {
        let a = alg(RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2)), RingSpec::zmod(2));
        assert!(a.is_ohm_rush().unwrap().holds);
        let b = a.ring();
        let v = a.is_mccoy().unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::AlgebraPair {
                f: b.parse_elem("(1,0)").unwrap(),
                g: b.parse_elem("(0,1)").unwrap()
            })
        );
    }

    #[test]
    fn dual_numbers_over_prime_field() {
        let a = alg(RingSpec::poly_quot(RingSpec::zmod(2), "x^2").unwrap(), RingSpec::zmod(2));
        assert!(a.is_ohm_rush().unwrap().holds);
        let b = a.ring();
        let x = b.parse_elem("x").unwrap();
        // x * x = 0 while c(x) = (1) has no nonzero annihilator
        assert_eq!(a.is_mccoy().unwrap().witness, Some(Witness::AlgebraPair { f: x, g: x }));
        assert!(a.is_faithfully_flat().unwrap().holds);
    }

    #[test]
    fn self_and_field_extensions() {
        let a = alg(RingSpec::zmod(6), RingSpec::zmod(6));
        assert!(a.is_mccoy().unwrap().holds);
        assert!(a.is_faithfully_flat().unwrap().holds);
        let f4 = alg(RingSpec::poly_quot(RingSpec::zmod(2), "x^2+x+1").unwrap(), RingSpec::zmod(2));
        assert!(f4.is_mccoy().unwrap().holds);
        assert!(f4.is_faithfully_flat().unwrap().holds);
    }

    #[test]
    fn structure_maps_are_checked() {
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let z2 = make_ring(&RingSpec::zmod(2)).unwrap();
        // Z4 -> Z2 reduction is canonical, Z2 -> Z4 is not a ring map
        assert!(FiniteAlgebra::canonical(&z2, &z4, Limits::default()).is_ok());
        assert!(FiniteAlgebra::canonical(&z4, &z2, Limits::default()).is_err());
        assert!(FiniteAlgebra::new(z4.clone(), z2.clone(), vec![Elem(0), Elem(1)], Limits::default()).is_err());
    }
}
