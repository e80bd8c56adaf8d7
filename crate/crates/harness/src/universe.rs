//! The enumerated universe of small rings, modules and algebras.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use zerodiv_core::{
    build_module, make_ring, AlgebraSpec, FiniteAlgebra, FiniteModule, FiniteRing, Ideal, Limits, ModuleSpec,
    RingSpec, Verdict,
};

/// Size caps for universe generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseLimits {
    pub max_ring: usize,
    pub max_module: usize,
    pub max_algebra: usize,
    pub hom_source: usize,
    pub products: bool,
}

impl Default for UniverseLimits {
    fn default() -> Self {
        UniverseLimits {
            max_ring: 32,
            max_module: 256,
            max_algebra: 64,
            hom_source: 64,
            products: true,
        }
    }
}

impl UniverseLimits {
    pub fn core_limits(&self) -> Limits {
        Limits {
            hom_source: self.hom_source,
            ..Limits::default()
        }
    }
}

/// Predicate values computed once per member.
#[derive(Clone, Debug)]
pub struct ModuleFacts {
    pub auslander: Verdict,
    pub torsion_free: Verdict,
    pub property_a: Verdict,
    pub content_module: Verdict,
    pub content_surjective: Verdict,
    pub faithful: Verdict,
    pub flat: Verdict,
    pub faithfully_flat: Verdict,
    pub locally_free: bool,
}

impl ModuleFacts {
    pub fn compute(m: &FiniteModule) -> ModuleFacts {
        let flat = m.is_flat().expect("universe members stay within the search budget");
        let faithfully_flat = m.is_faithfully_flat().expect("universe members stay within the search budget");
        ModuleFacts {
            auslander: m.is_auslander(),
            torsion_free: m.is_torsion_free(),
            property_a: m.has_property_a(),
            content_module: m.is_content_module(),
            content_surjective: m.content_surjective(),
            faithful: m.is_faithful(),
            flat,
            faithfully_flat,
            locally_free: m.locally_free(),
        }
    }
}

pub struct Member {
    pub ring: Arc<FiniteRing>,
    pub spec: ModuleSpec,
    pub module: Arc<FiniteModule>,
    pub facts: ModuleFacts,
    hom: OnceLock<Result<Arc<FiniteModule>, String>>,
}

impl Member {
    /// `Hom_R(M, M)`, built once and shared between statements.
    pub fn hom(&self) -> Result<Arc<FiniteModule>, String> {
        self.hom
            .get_or_init(|| self.module.hom_module().map(Arc::new).map_err(|e| e.to_string()))
            .clone()
    }

    /// `"<ring> / <module>"`.
    pub fn subject(&self) -> String {
        format!("{} / {}", self.ring.key(), self.spec)
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraFacts {
    pub ohm_rush: Verdict,
    pub mccoy: Verdict,
    pub flat: Verdict,
    pub faithfully_flat: Verdict,
}

pub struct AlgebraMember {
    pub spec: AlgebraSpec,
    pub algebra: Arc<FiniteAlgebra>,
    pub facts: AlgebraFacts,
}

pub struct Universe {
    pub limits: UniverseLimits,
    pub rings: Vec<Arc<FiniteRing>>,
    pub members: Vec<Member>,
    pub algebras: Vec<AlgebraMember>,
    /// Members per construction kind, for the log and report headers.
    pub counts: BTreeMap<String, usize>,
}

impl Universe {
    pub fn members_over<'a>(&'a self, ring: &'a FiniteRing) -> impl Iterator<Item = &'a Member> + 'a {
        self.members.iter().filter(move |m| m.ring.key() == ring.key())
    }
}

fn ring_specs(limits: &UniverseLimits) -> Vec<RingSpec> {
    let mut specs: Vec<RingSpec> = (2..=12).map(RingSpec::zmod).collect();
    if limits.products {
        for a in 2..=4 {
            for b in a..=4 {
                specs.push(RingSpec::prod(RingSpec::zmod(a), RingSpec::zmod(b)));
            }
        }
    }
    let quotients: [(i64, &str); 7] = [
        (2, "x^2"),
        (2, "x^3"),
        (3, "x^2"),
        (3, "x^3"),
        (4, "x^2"),
        (4, "x^2+x+1"),
        (2, "x^2+x+1"),
    ];
    for (n, rel) in quotients {
        specs.push(RingSpec::poly_quot(RingSpec::zmod(n), rel).expect("fixed relations parse"));
    }
    specs
}

fn proper_ideals(ring: &FiniteRing) -> Vec<Ideal> {
    ring.all_ideals()
        .iter()
        .filter(|i| !i.is_zero() && !i.is_whole())
        .cloned()
        .collect()
}

fn cyclic_spec(ring: &FiniteRing, i: &Ideal) -> ModuleSpec {
    ModuleSpec::Cyclic(ring.labels(i.generators()))
}

fn module_specs(ring: &FiniteRing, limits: &UniverseLimits) -> Vec<ModuleSpec> {
    let n = ring.size();
    let mut specs = Vec::new();
    if n <= limits.max_module {
        specs.push(ModuleSpec::Reg);
    }
    if n * n <= limits.max_module {
        specs.push(ModuleSpec::Free(2));
    }
    // R/(0) and the zero module R/R are kept: the latter exercises degenerate verdicts.
    for i in ring.all_ideals() {
        specs.push(cyclic_spec(ring, i));
    }
    let ideals = proper_ideals(ring);
    for (a, i) in ideals.iter().enumerate() {
        for j in &ideals[a..] {
            if (n / i.len()) * (n / j.len()) <= limits.max_module {
                specs.push(ModuleSpec::sum(cyclic_spec(ring, i), cyclic_spec(ring, j)));
            }
        }
    }
    for i in ring.all_ideals() {
        if !i.is_whole() && n / i.len() <= limits.hom_source {
            specs.push(ModuleSpec::hom(cyclic_spec(ring, i)));
        }
    }
    specs
}

fn algebra_specs(ring: &FiniteRing, limits: &UniverseLimits) -> Vec<AlgebraSpec> {
    let r = ring.spec().clone();
    let n = ring.size();
    let mut specs = vec![AlgebraSpec {
        algebra: r.clone(),
        base: r.clone(),
    }];
    if n * n <= limits.max_algebra {
        specs.push(AlgebraSpec {
            algebra: RingSpec::prod(r.clone(), r.clone()),
            base: r.clone(),
        });
        if !matches!(r, RingSpec::PolyQuot(..)) {
            for rel in ["x^2", "x^2+x+1", "x^2+1"] {
                specs.push(AlgebraSpec {
                    algebra: RingSpec::poly_quot(r.clone(), rel).expect("fixed relations parse"),
                    base: r.clone(),
                });
            }
        }
    }
    specs
}

fn kind(spec: &ModuleSpec) -> &'static str {
    match spec {
        ModuleSpec::Reg => "regular",
        ModuleSpec::Free(_) => "free",
        ModuleSpec::Cyclic(_) => "cyclic",
        ModuleSpec::Sum(..) => "sum",
        ModuleSpec::Hom(_) => "hom",
        ModuleSpec::Tensor(..) => "tensor",
        ModuleSpec::Localize(..) => "localized",
    }
}

/// Deterministic universe generation. Predicate facts are computed in
/// parallel; member order follows the ring list and the per-ring module list.
pub fn generate_universe(limits: UniverseLimits) -> Universe {
    let core = limits.core_limits();
    let rings: Vec<Arc<FiniteRing>> = ring_specs(&limits)
        .iter()
        .map(|s| make_ring(s).expect("universe rings are well formed"))
        .filter(|r| r.size() <= limits.max_ring)
        .collect();
    rings.par_iter().for_each(|r| {
        r.all_ideals();
    });
    let jobs: Vec<(Arc<FiniteRing>, ModuleSpec)> = rings
        .iter()
        .flat_map(|r| module_specs(r, &limits).into_iter().map(move |s| (r.clone(), s)))
        .collect();
    let members: Vec<Member> = jobs
        .into_par_iter()
        .filter_map(|(ring, spec)| {
            let module = match build_module(&ring, &spec, core) {
                Ok(m) if m.size() <= limits.max_module => m,
                Ok(_) => return None,
                Err(e) => {
                    log::warn!("skipping {} / {}: {}", ring.key(), spec, e);
                    return None;
                }
            };
            debug_assert!(module.check_axioms(64).is_ok());
            let facts = ModuleFacts::compute(&module);
            Some(Member {
                ring,
                spec,
                module: Arc::new(module),
                facts,
                hom: OnceLock::new(),
            })
        })
        .collect();
    let alg_jobs: Vec<(Arc<FiniteRing>, AlgebraSpec)> = rings
        .iter()
        .flat_map(|r| algebra_specs(r, &limits).into_iter().map(move |s| (r.clone(), s)))
        .collect();
    let algebras: Vec<AlgebraMember> = alg_jobs
        .into_par_iter()
        .filter_map(|(_, spec)| {
            let algebra = match FiniteAlgebra::from_spec(&spec, core) {
                Ok(a) if a.ring().size() <= limits.max_algebra => a,
                Ok(_) => return None,
                Err(e) => {
                    log::warn!("skipping {}: {}", spec, e);
                    return None;
                }
            };
            let module = algebra.as_module().expect("algebra within module limits");
            let facts = AlgebraFacts {
                ohm_rush: algebra.is_ohm_rush().expect("algebra within limits"),
                mccoy: algebra.is_mccoy().expect("algebra within limits"),
                flat: module.is_flat().expect("algebra within limits"),
                faithfully_flat: algebra.is_faithfully_flat().expect("algebra within limits"),
            };
            Some(AlgebraMember {
                spec,
                algebra: Arc::new(algebra),
                facts,
            })
        })
        .collect();
    let mut counts = BTreeMap::new();
    counts.insert("rings".to_string(), rings.len());
    counts.insert("algebras".to_string(), algebras.len());
    counts.insert("members".to_string(), members.len());
    for m in &members {
        *counts.entry(format!("modules.{}", kind(&m.spec))).or_insert(0) += 1;
    }
    for r in &rings {
        let k = match r.spec() {
            RingSpec::Zmod(_) => "rings.modular",
            RingSpec::Prod(..) => "rings.product",
            _ => "rings.quotient",
        };
        *counts.entry(k.to_string()).or_insert(0) += 1;
    }
    for (k, v) in &counts {
        log::info!("universe {k}: {v}");
    }
    Universe {
        limits,
        rings,
        members,
        algebras,
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_caps_shape_the_universe() {
        let limits = UniverseLimits {
            max_module: 4,
            products: false,
            max_ring: 8,
            ..UniverseLimits::default()
        };
        let u = generate_universe(limits);
        assert!(u.rings.iter().all(|r| !matches!(r.spec(), RingSpec::Prod(..))));
        for m in &u.members {
            if m.spec == ModuleSpec::Free(2) {
                assert!(m.ring.size() <= 2);
            }
            assert!(m.module.size() <= 4);
        }
    }
}
