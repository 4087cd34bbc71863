//! Exact evaluation of identities on magmas and on algebras over Z/p.

mod lie;

pub use lie::{central_series, is_lie, jacobiator, morphism_defect, plain_jacobiator, twisted_bracket, type_defect};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::carrier::{Elem, FieldHomAlgebra, FiniteHomMagma};
use crate::dsl::{builtin, Family, Form, Identity, Term, TypeTag};
use crate::error::{Error, Result};
use crate::field::{self, Vector};

/// Something a [`Term`] can be evaluated in.
pub(crate) trait Interpretation {
    type Value: Clone;
    fn product(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn twist(&self, a: &Self::Value) -> Self::Value;
    fn unit(&self) -> Option<Self::Value>;
}

impl Interpretation for FiniteHomMagma {
    type Value = Elem;
    fn product(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(*a, *b)
    }
    fn twist(&self, a: &Elem) -> Elem {
        self.alpha(*a)
    }
    fn unit(&self) -> Option<Elem> {
        FiniteHomMagma::unit(self)
    }
}

impl Interpretation for FieldHomAlgebra {
    type Value = Vector;
    fn product(&self, a: &Vector, b: &Vector) -> Vector {
        FieldHomAlgebra::product(self, a, b)
    }
    fn twist(&self, a: &Vector) -> Vector {
        FieldHomAlgebra::twist(self, a)
    }
    fn unit(&self) -> Option<Vector> {
        FieldHomAlgebra::unit(self).map(<[u32]>::to_vec)
    }
}

/// Caller has checked that the unit exists if the term uses it.
pub(crate) fn eval_term<I: Interpretation>(c: &I, t: &Term, args: &[I::Value; 3]) -> I::Value {
    match t {
        Term::Var(v) => args[v.index()].clone(),
        Term::Unit => c.unit().expect("unit checked before evaluation"),
        Term::Twist(inner) => c.twist(&eval_term(c, inner, args)),
        Term::Prod(l, r) => c.product(&eval_term(c, l, args), &eval_term(c, r, args)),
    }
}

fn check_unit<I: Interpretation>(c: &I, id: &Identity) -> Result<()> {
    if id.uses_unit() && c.unit().is_none() {
        return Err(Error::UnitUndefined);
    }
    Ok(())
}

/// First assignment `(x, y, z)` on which an equation fails, in lexicographic order.
pub fn magma_violation(m: &FiniteHomMagma, id: &Identity) -> Result<Option<[Elem; 3]>> {
    let Form::Equation { lhs, rhs } = &id.form else {
        return Err(Error::CyclicNotSupportedOnMagma);
    };
    check_unit(m, id)?;
    for x in m.elements() {
        for y in m.elements() {
            for z in m.elements() {
                let args = [x, y, z];
                if eval_term(m, lhs, &args) != eval_term(m, rhs, &args) {
                    return Ok(Some(args));
                }
            }
        }
    }
    Ok(None)
}

/// Whether an equation holds for every assignment of carrier elements.
pub fn holds(m: &FiniteHomMagma, id: &Identity) -> Result<bool> {
    Ok(magma_violation(m, id)?.is_none())
}

/// `lhs - rhs` for an equation, or the cyclic sum for a cyclic identity.
pub fn identity_value(a: &FieldHomAlgebra, id: &Identity, x: &[u32], y: &[u32], z: &[u32]) -> Result<Vector> {
    check_unit(a, id)?;
    let p = a.prime();
    let args = [x.to_vec(), y.to_vec(), z.to_vec()];
    Ok(match &id.form {
        Form::Equation { lhs, rhs } => p.vsub(&eval_term(a, lhs, &args), &eval_term(a, rhs, &args)),
        Form::CyclicZero(body) => cyclic_sum(a, body, &args),
    })
}

/// Body evaluated at (x,y,z), (y,z,x), (z,x,y), summed in that order.
pub(crate) fn cyclic_sum(a: &FieldHomAlgebra, body: &Term, args: &[Vector; 3]) -> Vector {
    let p = a.prime();
    let mut acc = vec![0; a.dim()];
    for shift in 0..3 {
        let rotated = [args[shift].clone(), args[(shift + 1) % 3].clone(), args[(shift + 2) % 3].clone()];
        p.axpy(&mut acc, 1, &eval_term(a, body, &rotated));
    }
    acc
}

/// First basis triple `(i, j, k)` on which the identity fails.
pub fn multilinear_violation(a: &FieldHomAlgebra, id: &Identity) -> Result<Option<[usize; 3]>> {
    check_unit(a, id)?;
    if let Some(v) = id.max_occurrences().iter().position(|&n| n > 1) {
        return Err(Error::NotMultilinear(['x', 'y', 'z'][v]));
    }
    let basis = a.basis();
    let used = id.max_occurrences();
    // unused variables need only one representative
    let range = |v: usize| if used[v] == 0 { 0..1 } else { 0..a.dim() };
    for i in range(0) {
        for j in range(1) {
            for k in range(2) {
                if !field::is_zero(&identity_value(a, id, &basis[i], &basis[j], &basis[k])?) {
                    return Ok(Some([i, j, k]));
                }
            }
        }
    }
    Ok(None)
}

/// Whether the identity holds on all of V, decided on basis triples.
pub fn holds_multilinear(a: &FieldHomAlgebra, id: &Identity) -> Result<bool> {
    Ok(multilinear_violation(a, id)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CarrierFamily {
    AssocOnly,
    Both,
}

/// The set of built-in types a structure satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeProfile {
    pub satisfied: BTreeSet<TypeTag>,
    pub family: CarrierFamily,
}

impl TypeProfile {
    pub fn contains(&self, tag: TypeTag) -> bool {
        self.satisfied.contains(&tag)
    }

    /// Tags that were evaluated and failed.
    pub fn violated(&self) -> BTreeSet<TypeTag> {
        self.evaluated().filter(|t| !self.satisfied.contains(t)).collect()
    }

    pub fn evaluated(&self) -> impl Iterator<Item = TypeTag> + '_ {
        TypeTag::all().filter(move |t| self.family == CarrierFamily::Both || t.family == Family::Assoc)
    }

    pub fn assoc(&self) -> BTreeSet<TypeTag> {
        self.satisfied.iter().copied().filter(|t| t.family == Family::Assoc).collect()
    }

    pub fn names(set: &BTreeSet<TypeTag>) -> Vec<String> {
        set.iter().map(|t| t.name.to_string()).collect()
    }
}

pub trait Profiled {
    fn type_profile(&self) -> TypeProfile;
}

impl Profiled for FiniteHomMagma {
    fn type_profile(&self) -> TypeProfile {
        let satisfied =
            TypeTag::all_assoc().filter(|&t| holds(self, &builtin(t)).expect("assoc builtins are equations")).collect();
        TypeProfile { satisfied, family: CarrierFamily::AssocOnly }
    }
}

impl Profiled for FieldHomAlgebra {
    fn type_profile(&self) -> TypeProfile {
        let satisfied = TypeTag::all()
            .filter(|&t| holds_multilinear(self, &builtin(t)).expect("builtins are multilinear and unit-free"))
            .collect();
        TypeProfile { satisfied, family: CarrierFamily::Both }
    }
}

pub fn type_profile<S: Profiled + ?Sized>(s: &S) -> TypeProfile {
    s.type_profile()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{from_relations, linearize};
    use crate::dsl::{parse_identity, TypeName};
    use crate::field::{Matrix, Prime};

    #[test]
    fn associative_with_identity_twist_satisfies_everything() {
        // Z/3 as a monoid, alpha = id
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let m = FiniteHomMagma::new(3, table, vec![0, 1, 2], Some(0), None).unwrap();
        assert_eq!(m.type_profile().satisfied.len(), 10);
    }

    #[test]
    fn zero_twist_satisfies_everything() {
        let m = from_relations("e2*e3=e2; e3*e2=e1; e3*e3=e3").unwrap();
        assert!(m.alpha_map().iter().all(|&a| m.is_zero(a)));
        assert_eq!(m.type_profile().satisfied.len(), 10);
    }

    #[test]
    fn trivial_magma_profile() {
        assert_eq!(FiniteHomMagma::trivial().type_profile().satisfied.len(), 10);
    }

    #[test]
    fn cyclic_on_magma_is_an_error() {
        let m = FiniteHomMagma::trivial();
        assert_eq!(holds(&m, &builtin(TypeName::I1.lie())), Err(Error::CyclicNotSupportedOnMagma));
    }

    #[test]
    fn unit_constant_needs_unit_vector() {
        let m = from_relations("e2*e2=e1").unwrap();
        let mut a = linearize(&m, Prime::DEFAULT);
        let id = parse_identity("x*a(1) = a(x)").unwrap();
        assert!(holds_multilinear(&a, &id).is_ok());
        a = crate::carrier::AlgebraFile { unit: None, ..crate::carrier::AlgebraFile::from_algebra(&a) }
            .to_algebra()
            .unwrap();
        assert_eq!(holds_multilinear(&a, &id), Err(Error::UnitUndefined));
    }

    #[test]
    fn zero_product_satisfies_every_tag() {
        let p = Prime::DEFAULT;
        let a = FieldHomAlgebra::skew_from_brackets(
            p,
            3,
            &[],
            Matrix::from_rows(vec![vec![1, 2, 3], vec![0, 4, 5], vec![6, 0, 1]]).unwrap(),
        )
        .unwrap();
        assert_eq!(a.type_profile().satisfied.len(), 20);
    }

    #[test]
    fn repeated_variable_rejected_for_basis_check() {
        let a = linearize(&FiniteHomMagma::trivial(), Prime::DEFAULT);
        let id = parse_identity("x*x = x").unwrap();
        assert_eq!(holds_multilinear(&a, &id), Err(Error::NotMultilinear('x')));
    }
}
