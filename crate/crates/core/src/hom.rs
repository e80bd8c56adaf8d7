//! The endomorphism module `Hom_R(M, M)`.

use crate::error::{Error, Result};
use crate::module::{FiniteModule, ModElem, ModuleTag, Tables, Tuples};
use crate::ring::Elem;

impl FiniteModule {
    /// Coefficients expressing each element in the presentation generators:
    /// the first tuple in code order.
    pub(crate) fn expressions(&self) -> Result<Vec<Vec<Elem>>> {
        let p = self.presentation()?;
        let k = p.generators.len();
        let ring = self.ring();
        let count = (ring.size() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        self.limits().check_search(count)?;
        let rt = Tuples::over_ring(ring, k);
        let mut out: Vec<Option<Vec<Elem>>> = vec![None; self.size()];
        let mut missing = self.size();
        for code in 0..count as usize {
            let c = rt.decode_elems(code);
            let x = c
                .iter()
                .zip(&p.generators)
                .fold(ModElem::ZERO, |acc, (&r, &g)| self.add(acc, self.act(r, g)));
            if out[x.idx()].is_none() {
                out[x.idx()] = Some(c);
                missing -= 1;
                if missing == 0 {
                    break;
                }
            }
        }
        out.into_iter()
            .map(|c| c.ok_or_else(|| Error::NoPresentation(self.descriptor().to_string())))
            .collect()
    }

    /// `Hom_R(M, M)` with pointwise operations. Maps are enumerated by the
    /// images of the presentation generators, kept when they respect the
    /// relations, then validated on the whole carrier.
    pub fn hom_module(&self) -> Result<FiniteModule> {
        let limits = self.limits();
        if self.size() > limits.hom_source {
            return Err(Error::SizeBound {
                what: "hom source",
                size: self.size(),
                bound: limits.hom_source,
            });
        }
        let p = self.presentation()?.clone();
        let exprs = self.expressions()?;
        let k = p.generators.len();
        let mt = Tuples::over_module(self, k);
        limits.check_search(mt.count())?;
        let mut maps: Vec<Vec<ModElem>> = Vec::new();
        for code in 0..mt.count() as usize {
            let images = mt.decode_mod(code);
            let respects = p.relations.iter().all(|rel| {
                rel.iter()
                    .zip(&images)
                    .fold(ModElem::ZERO, |acc, (&r, &y)| self.add(acc, self.act(r, y)))
                    == ModElem::ZERO
            });
            if !respects {
                continue;
            }
            let map: Vec<ModElem> = exprs
                .iter()
                .map(|c| {
                    c.iter()
                        .zip(&images)
                        .fold(ModElem::ZERO, |acc, (&r, &y)| self.add(acc, self.act(r, y)))
                })
                .collect();
            if !self.is_linear(&map) {
                return Err(Error::NoPresentation(format!(
                    "{}: relations do not determine a linear map",
                    self.descriptor()
                )));
            }
            maps.push(map);
        }
        maps.sort();
        maps.dedup();
        let size = limits.check_module(maps.len() as u128)?;
        let index: std::collections::HashMap<&[ModElem], u32> =
            maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i as u32)).collect();
        let lookup = |m: Vec<ModElem>| index[m.as_slice()];
        let mut add = Vec::with_capacity(size * size);
        for a in &maps {
            for b in &maps {
                add.push(lookup(a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()));
            }
        }
        let mut act = Vec::with_capacity(self.ring().size() * size);
        for r in self.ring().elements() {
            for a in &maps {
                act.push(lookup(a.iter().map(|&x| self.act(r, x)).collect()));
            }
        }
        let neg = maps.iter().map(|a| lookup(a.iter().map(|&x| self.neg(x)).collect())).collect();
        let labels = maps
            .iter()
            .map(|m| {
                let imgs: Vec<&str> = p.generators.iter().map(|g| self.label(m[g.idx()])).collect();
                format!("hom[{}]", imgs.join(";"))
            })
            .collect();
        Ok(FiniteModule::from_tables(
            self.ring().clone(),
            format!("Hom({})", self.descriptor()),
            ModuleTag::Hom,
            Tables { labels, add, neg, act },
            None,
            limits,
        ))
    }

    fn is_linear(&self, map: &[ModElem]) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| map[self.add(x, y).idx()] == self.add(map[x.idx()], map[y.idx()]))
                && self.ring().elements().all(|r| map[self.act(r, x).idx()] == self.act(r, map[x.idx()]))
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::module::{FiniteModule, Limits};
    use crate::ring::{make_ring, Elem, RingSpec};

    #[test]
    fn endomorphism_sizes() {
        let z6 = make_ring(&RingSpec::zmod(6)).unwrap();
        let three = z6.ideal_generated(&[Elem(3)]).unwrap();
        let c = FiniteModule::cyclic(&z6, &three, Limits::default()).unwrap();
        let h = c.hom_module().unwrap();
        assert_eq!(h.size(), 3);
        assert!(h.check_axioms(27).is_ok());
        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let f1 = FiniteModule::free(&z4, 1, Limits::default()).unwrap();
        assert_eq!(f1.hom_module().unwrap().size(), 4);
        let zero = FiniteModule::free(&z4, 0, Limits::default()).unwrap();
        assert_eq!(zero.hom_module().unwrap().size(), 1);
        let z2 = make_ring(&RingSpec::zmod(2)).unwrap();
        let f2 = FiniteModule::free(&z2, 2, Limits::default()).unwrap();
        // 2x2 matrices over F2
        assert_eq!(f2.hom_module().unwrap().size(), 16);
    }
}
