//! Finite-model laboratory for twisted (Hom-type) associative and Lie identities.
//!
//! The crate evaluates the twenty built-in twisted identities on finite
//! hom-monoids and on hom-algebras over Z/p, searches for small countermodels
//! to implications between types, and carries fixture suites for the known
//! hierarchy of unital hom-associative types and the Lie-side examples.

// Index loops over square tables read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

pub mod carrier;
pub mod dsl;
pub mod error;
pub mod eval;
pub mod field;
pub mod hierarchy;
pub mod lie_suite;
pub mod search;

pub use carrier::{
    from_relations, linearize, weak_left_unit, FieldHomAlgebra, FiniteHomMagma, ProductKind, WeakUnitWitness,
};
pub use dsl::{builtin, parse_identity, s_transform, Family, Identity, Term, TypeName, TypeTag};
pub use error::{Error, Result};
pub use eval::{holds, holds_multilinear, type_profile, Profiled, TypeProfile};
pub use field::{Matrix, Prime};
pub use search::{
    canonical_form, enumerate_models, enumerate_models_with, find_model, find_model_with, verify_implication,
    SearchSpec, Verdict,
};
