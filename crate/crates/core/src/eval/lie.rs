use super::{cyclic_sum, identity_value};
use crate::carrier::{FieldHomAlgebra, ProductKind};
use crate::dsl::{builtin, Family, Term, TypeTag, Var};
use crate::error::{Error, Result};
use crate::field::{self, Vector};

fn require_skew(a: &FieldHomAlgebra) -> Result<()> {
    if a.is_skew() {
        Ok(())
    } else {
        Err(Error::NotSkew)
    }
}

/// `J^tag_alpha(x, y, z)`: the cyclic sum defining the Lie-family type `tag`.
pub fn jacobiator(a: &FieldHomAlgebra, tag: TypeTag, x: &[u32], y: &[u32], z: &[u32]) -> Result<Vector> {
    require_skew(a)?;
    if tag.family != Family::Lie {
        return Err(Error::UnknownTag(format!("{tag} is not a Lie-family type")));
    }
    identity_value(a, &builtin(tag), x, y, z)
}

/// The untwisted Jacobiator `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn plain_jacobiator(a: &FieldHomAlgebra, x: &[u32], y: &[u32], z: &[u32]) -> Vector {
    let body = Term::prod(Term::var(Var::X), Term::prod(Term::var(Var::Y), Term::var(Var::Z)));
    cyclic_sum(a, &body, &[x.to_vec(), y.to_vec(), z.to_vec()])
}

/// Jacobi identity on all basis triples.
pub fn is_lie(a: &FieldHomAlgebra) -> Result<bool> {
    require_skew(a)?;
    let b = a.basis();
    for x in &b {
        for y in &b {
            for z in &b {
                if !field::is_zero(&plain_jacobiator(a, x, y, z)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `[a,b]_alpha = [a,b] + [alpha(a),b] + [a,alpha(b)]`, same twisting map.
pub fn twisted_bracket(a: &FieldHomAlgebra) -> Result<FieldHomAlgebra> {
    require_skew(a)?;
    let p = a.prime();
    let d = a.dim();
    let basis = a.basis();
    let mut c = Vec::with_capacity(d * d * d);
    for ei in &basis {
        for ej in &basis {
            let mut v = a.product(ei, ej);
            p.axpy(&mut v, 1, &a.product(&a.twist(ei), ej));
            p.axpy(&mut v, 1, &a.product(ei, &a.twist(ej)));
            c.extend(v);
        }
    }
    FieldHomAlgebra::from_parts(p, d, c, a.alpha().clone(), ProductKind::Skew, None)
}

/// `C_alpha(u, v) = [alpha(u), alpha(v)] - alpha([u, v])`.
pub fn morphism_defect(a: &FieldHomAlgebra, u: &[u32], v: &[u32]) -> Vector {
    let p = a.prime();
    p.vsub(&a.product(&a.twist(u), &a.twist(v)), &a.twist(&a.product(u, v)))
}

/// Cyclic sum of `[x, alpha([y,z])] - [x, [alpha(y), alpha(z)]]`.
pub fn type_defect(a: &FieldHomAlgebra, x: &[u32], y: &[u32], z: &[u32]) -> Vector {
    let p = a.prime();
    let args = [x.to_vec(), y.to_vec(), z.to_vec()];
    let mut acc = vec![0; a.dim()];
    for s in 0..3 {
        let (x, y, z) = (&args[s], &args[(s + 1) % 3], &args[(s + 2) % 3]);
        let first = a.product(x, &a.twist(&a.product(y, z)));
        let second = a.product(x, &a.product(&a.twist(y), &a.twist(z)));
        acc = p.vadd(&acc, &p.vsub(&first, &second));
    }
    acc
}

/// Row-reduced bases of `V^0 ⊇ V^1 ⊇ ... ⊇ V^depth`, with `V^k = [V, V^(k-1)]`.
pub fn central_series(a: &FieldHomAlgebra, depth: usize) -> Result<Vec<Vec<Vector>>> {
    require_skew(a)?;
    let d = a.dim();
    let basis = a.basis();
    let mut levels = vec![basis.clone()];
    for _ in 0..depth {
        let prev = levels.last().expect("nonempty");
        let spanning: Vec<Vector> = basis.iter().flat_map(|e| prev.iter().map(|v| a.product(e, v))).collect();
        levels.push(field::span_basis(a.prime(), &spanning, d));
    }
    Ok(levels)
}
