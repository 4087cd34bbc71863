use serde::{Deserialize, Serialize};

use super::magma::FiniteHomMagma;
use crate::error::{Error, Result};
use crate::field::{self, Matrix, Prime, Scalar, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    General,
    /// Alternating bracket: `[v,v] = 0`.
    Skew,
}

/// A `dim`-dimensional module over Z/p with a bilinear product given by
/// structure constants and a linear twisting map.
///
/// `constants[(i*dim + j)*dim + k]` is the coefficient of `e_k` in `e_i * e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldHomAlgebra {
    p: Prime,
    dim: usize,
    constants: Vec<Scalar>,
    alpha: Matrix,
    kind: ProductKind,
    unit: Option<Vector>,
}

impl FieldHomAlgebra {
    /// Validates skew symmetry (for `Skew`) and the unit law (if a unit is
    /// given). All entries are reduced mod p.
    pub fn new(
        p: Prime,
        constants: &[Vec<Vec<i64>>],
        alpha: &[Vec<i64>],
        kind: ProductKind,
        unit: Option<&[i64]>,
    ) -> Result<Self> {
        let dim = constants.len();
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in constants {
            if row.len() != dim {
                return Err(Error::Dimension { what: "structure constants".into(), expected: dim, found: row.len() });
            }
            for cell in row {
                if cell.len() != dim {
                    return Err(Error::Dimension {
                        what: "structure constants".into(),
                        expected: dim,
                        found: cell.len(),
                    });
                }
                flat.extend(cell.iter().map(|&v| p.reduce(v)));
            }
        }
        if alpha.len() != dim {
            return Err(Error::Dimension { what: "alpha matrix".into(), expected: dim, found: alpha.len() });
        }
        let alpha = Matrix::from_rows(alpha.iter().map(|r| r.iter().map(|&v| p.reduce(v)).collect()).collect())?;
        let unit = match unit {
            Some(u) if u.len() != dim => {
                return Err(Error::Dimension { what: "unit vector".into(), expected: dim, found: u.len() })
            }
            Some(u) => Some(u.iter().map(|&v| p.reduce(v)).collect()),
            None => None,
        };
        Self::from_parts(p, dim, flat, alpha, kind, unit)
    }

    pub(crate) fn from_parts(
        p: Prime,
        dim: usize,
        constants: Vec<Scalar>,
        alpha: Matrix,
        kind: ProductKind,
        unit: Option<Vector>,
    ) -> Result<Self> {
        let alg = FieldHomAlgebra { p, dim, constants, alpha, kind, unit };
        alg.validate()?;
        Ok(alg)
    }

    /// Skew algebra from the brackets `[e_i, e_j] = v` for `i < j` (others zero).
    pub fn skew_from_brackets(
        p: Prime,
        dim: usize,
        brackets: &[(usize, usize, Vec<i64>)],
        alpha: Matrix,
    ) -> Result<Self> {
        let mut c = vec![0; dim * dim * dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::Dimension { what: "bracket entry".into(), expected: dim, found: v.len() });
            }
            for k in 0..dim {
                let val = p.reduce(v[k]);
                c[(i * dim + j) * dim + k] = val;
                c[(j * dim + i) * dim + k] = p.neg(val);
            }
        }
        Self::from_parts(p, dim, c, alpha, ProductKind::Skew, None)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        if self.alpha.dim() != d {
            return Err(Error::Dimension { what: "alpha matrix".into(), expected: d, found: self.alpha.dim() });
        }
        if self.kind == ProductKind::Skew {
            for i in 0..d {
                for j in i..d {
                    for k in 0..d {
                        let (a, b) = (self.c(i, j, k), self.c(j, i, k));
                        let ok = if i == j { a == 0 } else { self.p.add(a, b) == 0 };
                        if !ok {
                            return Err(Error::SkewViolation { i, j, k });
                        }
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..d {
                let e = field::unit_vector(d, i);
                if self.product(&e, u) != e || self.product(u, &e) != e {
                    return Err(Error::UnitVectorViolation(i + 1));
                }
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn is_skew(&self) -> bool {
        self.kind == ProductKind::Skew
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// `e_i * e_j` as a coordinate slice.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    pub fn constants_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect()).collect()
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim).map(|i| field::unit_vector(self.dim, i)).collect()
    }

    /// Bilinear extension of the structure constants.
    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let p = self.p;
        let mut out = vec![0; self.dim];
        for (i, &ui) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &vj) in v.iter().enumerate().filter(|(_, &x)| x != 0) {
                p.axpy(&mut out, p.mul(ui, vj), self.basis_product(i, j));
            }
        }
        out
    }

    pub fn twist(&self, v: &[Scalar]) -> Vector {
        self.alpha.apply(self.p, v)
    }

    /// Same product, different twisting map.
    pub fn with_alpha(&self, alpha: Matrix) -> Result<Self> {
        let alpha = alpha.reduced(self.p);
        if alpha.dim() != self.dim {
            return Err(Error::Dimension { what: "alpha matrix".into(), expected: self.dim, found: alpha.dim() });
        }
        Ok(FieldHomAlgebra { alpha, ..self.clone() })
    }

    /// Same data, product reinterpreted under `kind` (re-validated).
    pub fn with_kind(&self, kind: ProductKind) -> Result<Self> {
        Self::from_parts(self.p, self.dim, self.constants.clone(), self.alpha.clone(), kind, self.unit.clone())
    }

    /// Some `c` with `alpha(x) = c * x` for all `x`, solved on the basis.
    pub fn weak_left_unit(&self) -> Option<Vector> {
        let d = self.dim;
        // unknown c; equation (j, k): sum_i c_i * c[i][j][k] = alpha(e_j)_k
        let mut rows = Vec::with_capacity(d * d);
        let mut rhs = Vec::with_capacity(d * d);
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| self.c(i, j, k)).collect());
                rhs.push(self.alpha.get(k, j));
            }
        }
        field::solve(self.p, &rows, &rhs, d)
    }
}

/// The algebra k[S]/(k·0) over Z/p: one basis vector per non-zero element,
/// products and twist extended linearly, the zero element killed.
pub fn linearize(magma: &FiniteHomMagma, p: Prime) -> FieldHomAlgebra {
    let d = magma.nonzero_count();
    let coord = |e: usize| (!magma.is_zero(e)).then_some(e);
    let mut c = vec![0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            if let Some(k) = coord(magma.mul(i, j)) {
                c[(i * d + j) * d + k] = 1;
            }
        }
    }
    let cols: Vec<Vector> =
        (0..d).map(|j| coord(magma.alpha(j)).map_or(vec![0; d], |k| field::unit_vector(d, k))).collect();
    let alpha = Matrix::from_columns(&cols).expect("square");
    let unit = magma.unit().map(|u| field::unit_vector(d, u));
    FieldHomAlgebra::from_parts(p, d, c, alpha, ProductKind::General, unit).expect("linearization of a valid magma")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::from_relations;

    fn p7() -> Prime {
        Prime::new(7).unwrap()
    }

    #[test]
    fn trivial_linearization() {
        let a = linearize(&FiniteHomMagma::trivial(), p7());
        assert_eq!(a.dim(), 1);
        assert_eq!(a.unit(), Some(&[1][..]));
        assert_eq!(a.alpha().rows(), &[vec![1]]);
    }

    #[test]
    fn item_four_is_three_dimensional() {
        let m = from_relations("e2*e2=e1; alpha: e2->e3, e3->e3").unwrap();
        let a = linearize(&m, Prime::new(5).unwrap());
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basis_product(1, 1), &[1, 0, 0]);
        assert_eq!(a.basis_product(2, 2), &[0, 0, 0]);
        assert_eq!(a.twist(&[0, 1, 0]), vec![0, 0, 1]);
    }

    #[test]
    fn skew_validation() {
        let p = p7();
        let c = vec![vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]];
        let err = FieldHomAlgebra::new(p, &c, &[vec![1, 0], vec![0, 1]], ProductKind::Skew, None).unwrap_err();
        assert!(matches!(err, Error::SkewViolation { i: 0, j: 1, .. }));
        let c = vec![vec![vec![0, 0], vec![0, 1]], vec![vec![0, -1], vec![0, 0]]];
        assert!(FieldHomAlgebra::new(p, &c, &[vec![1, 0], vec![0, 1]], ProductKind::Skew, None).is_ok());
    }

    #[test]
    fn unit_vector_checked() {
        let p = p7();
        let c = vec![vec![vec![1]]];
        assert!(FieldHomAlgebra::new(p, &c, &[vec![0]], ProductKind::General, Some(&[1])).is_ok());
        assert_eq!(
            FieldHomAlgebra::new(p, &c, &[vec![0]], ProductKind::General, Some(&[2])),
            Err(Error::UnitVectorViolation(1))
        );
    }

    #[test]
    fn weak_unit_identity_and_zero_twist() {
        let m = from_relations("e2*e2=e2").unwrap();
        let a = linearize(&m, p7());
        let id = a.with_alpha(Matrix::identity(2)).unwrap();
        assert_eq!(id.weak_left_unit(), Some(vec![1, 0]));
        let zero = a.with_alpha(Matrix::zero(2)).unwrap();
        assert_eq!(zero.weak_left_unit(), Some(vec![0, 0]));
    }
}
