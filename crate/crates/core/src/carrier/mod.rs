//! Finite carriers: hom-monoids (optionally with zero) and hom-algebras over Z/p.

mod algebra;
mod file;
mod magma;
mod shorthand;

pub use algebra::{linearize, FieldHomAlgebra, ProductKind};
pub use file::{AlgebraFile, StructureFile};
pub use magma::{Elem, FiniteHomMagma};
pub use shorthand::from_relations;

use crate::field::Vector;

/// Element `c` with `alpha(x) = c * x` for all `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakUnitWitness {
    Element(Elem),
    Vector(Vector),
}

/// Left weak unit of a magma or an algebra, if one exists.
pub trait WeakLeftUnit {
    fn weak_left_unit_witness(&self) -> Option<WeakUnitWitness>;
}

impl WeakLeftUnit for FiniteHomMagma {
    fn weak_left_unit_witness(&self) -> Option<WeakUnitWitness> {
        self.weak_left_unit().map(WeakUnitWitness::Element)
    }
}

impl WeakLeftUnit for FieldHomAlgebra {
    fn weak_left_unit_witness(&self) -> Option<WeakUnitWitness> {
        self.weak_left_unit().map(WeakUnitWitness::Vector)
    }
}

pub fn weak_left_unit<S: WeakLeftUnit + ?Sized>(s: &S) -> Option<WeakUnitWitness> {
    s.weak_left_unit_witness()
}
