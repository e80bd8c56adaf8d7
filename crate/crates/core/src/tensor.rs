//! Base change `M ⊗_R B` along a finite algebra.

use crate::algebra::FiniteAlgebra;
use crate::error::Result;
use crate::module::{FiniteModule, ModElem, ModuleTag, Presentation};
use crate::ring::Elem;

impl FiniteModule {
    /// `M ⊗_R B` as a `B`-module: from `M = R^k / <relations>` it is
    /// `B^k / <images of the relations>`.
    pub fn tensor_with(&self, algebra: &FiniteAlgebra) -> Result<FiniteModule> {
        self.same_ring(algebra.base())?;
        let p = self.presentation()?.clone();
        let b = algebra.ring();
        let k = p.generators.len();
        let free = FiniteModule::free(b, k, self.limits())?;
        let n = b.size();
        let encode = |v: &[Elem]| ModElem(v.iter().fold(0usize, |acc, c| acc * n + c.idx()) as u32);
        let images: Vec<Vec<Elem>> = p
            .relations
            .iter()
            .map(|rel| rel.iter().map(|&r| algebra.map(r)).collect())
            .collect();
        let sub = free.span(&images.iter().map(|v| encode(v)).collect::<Vec<_>>())?;
        let descriptor = format!("Tensor({},{})", self.descriptor(), algebra.spec());
        let mut out = free.quotient(&sub, descriptor, ModuleTag::Tensor)?;
        let generators = (0..k)
            .map(|i| {
                let mut v = vec![Elem::ZERO; k];
                v[i] = b.one();
                out.class_of_in_quotient(&free, &sub, encode(&v))
            })
            .collect();
        out.set_structural(Presentation {
            generators,
            relations: images,
        });
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::module::Limits;
    use crate::ring::{make_ring, RingSpec};

    #[test]
    fn base_change_sizes() {
        let r = make_ring(&RingSpec::prod(RingSpec::zmod(2), RingSpec::zmod(2))).unwrap();
        let i = r.ideal_generated(&[r.parse_elem("(0,1)").unwrap()]).unwrap();
        let m = FiniteModule::cyclic(&r, &i, Limits::default()).unwrap();
        let same = FiniteAlgebra::canonical(&r, &r, Limits::default()).unwrap();
        assert_eq!(m.tensor_with(&same).unwrap().size(), 2);

        let z4 = make_ring(&RingSpec::zmod(4)).unwrap();
        let two = z4.ideal_generated(&[Elem(2)]).unwrap();
        let m = FiniteModule::cyclic(&z4, &two, Limits::default()).unwrap();
        let spec = AlgebraSpec {
            algebra: RingSpec::poly_quot(RingSpec::zmod(4), "x^2").unwrap(),
            base: RingSpec::zmod(4),
        };
        let b = FiniteAlgebra::from_spec(&spec, Limits::default()).unwrap();
        let t = m.tensor_with(&b).unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(t.ring().key(), b.ring().key());
        assert!(t.check_axioms(16).is_ok());
        let f2 = FiniteModule::free(&z4, 2, Limits::default()).unwrap();
        assert_eq!(f2.tensor_with(&b).unwrap().size(), 256);
    }
}
