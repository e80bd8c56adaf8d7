//! Finite commutative rings, finite modules over them, and the
//! zero-divisor predicates that relate the two: Auslander and torsion-free
//! modules, property (A), content, flatness, Ohm-Rush and McCoy algebras, and
//! the polynomial, monoid-ring and truncated-series extensions.

pub mod algebra;
pub mod construct;
pub mod error;
pub mod ext;
mod hom;
pub mod ideal;
pub mod localization;
pub mod module;
pub mod predicates;
pub mod ring;
pub mod syntax;
mod tensor;

pub use algebra::{AlgebraSpec, FiniteAlgebra};
pub use construct::{build_module, ModuleSpec};
pub use error::{Error, Result};
pub use ext::{ExtElement, Variant};
pub use ideal::{Ideal, MultiplicativeSet, RingPredicates, ZeroDivisorConvention};
pub use module::{FiniteModule, Limits, ModElem, ModuleTag, Presentation, Submodule};
pub use predicates::{Verdict, Witness};
pub use ring::{make_ring, make_ring_bounded, Elem, FiniteRing, RingSpec, Structure};
