//! JSON file formats for magmas ("structure files") and algebras.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::algebra::{FieldHomAlgebra, ProductKind};
use super::magma::FiniteHomMagma;
use crate::error::{Error, Result};
use crate::field::Prime;

/// `{"elements":["e1",...],"unit":"e1","zero":true,"products":{"e2 e3":"e1"},"alpha":{"e2":"e1"}}`
///
/// The zero element is implicit and named `"0"`. Unlisted products default to
/// the zero (outside the unit row/column) and unlisted twist values to the
/// zero; without a zero every entry must be listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub unit: Option<String>,
    #[serde(default = "yes")]
    pub zero: bool,
    #[serde(default)]
    pub products: IndexMap<String, String>,
    #[serde(default)]
    pub alpha: IndexMap<String, String>,
}

fn yes() -> bool {
    true
}

impl StructureFile {
    pub fn to_magma(&self) -> Result<FiniteHomMagma> {
        let n = self.elements.len();
        let zero = self.zero.then_some(n);
        let size = n + usize::from(self.zero);
        let lookup = |name: &str| -> Result<usize> {
            let name = name.trim();
            if self.zero && name == "0" {
                return Ok(n);
            }
            self.elements.iter().position(|e| e == name).ok_or_else(|| Error::Json(format!("unknown element `{name}`")))
        };
        let unit = self.unit.as_deref().map(lookup).transpose()?;

        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; size]; size];
        for (key, val) in &self.products {
            let mut parts = key.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Json(format!("product key `{key}` must be two element names")));
            };
            let (a, b, c) = (lookup(a)?, lookup(b)?, lookup(val)?);
            if table[a][b].replace(c).is_some_and(|prev| prev != c) {
                return Err(Error::ConflictingRelation(format!("product `{key}` given twice")));
            }
        }
        let mut full = vec![vec![0; size]; size];
        for a in 0..size {
            for b in 0..size {
                let default = match (unit, zero) {
                    (_, Some(z)) if a == z || b == z => Some(z),
                    (Some(u), _) if a == u => Some(b),
                    (Some(u), _) if b == u => Some(a),
                    (_, z) => z,
                };
                full[a][b] = table[a][b]
                    .or(default)
                    .ok_or_else(|| Error::MissingProduct(format!("{} {}", self.elements[a], self.elements[b])))?;
            }
        }
        let mut alpha = vec![zero; size];
        if let Some(z) = zero {
            alpha[z] = Some(z);
        }
        for (k, v) in &self.alpha {
            let (a, b) = (lookup(k)?, lookup(v)?);
            if Some(a) == zero && Some(b) != zero {
                return Err(Error::ZeroLawViolation { cell: "alpha(0)".into() });
            }
            alpha[a] = Some(b);
        }
        let alpha = alpha
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingProduct(format!("alpha({})", self.elements[i]))))
            .collect::<Result<Vec<_>>>()?;
        FiniteHomMagma::new(size, full, alpha, unit, zero)
    }

    pub fn from_magma(m: &FiniteHomMagma) -> Self {
        let nonzero: Vec<usize> = m.elements().filter(|&e| !m.is_zero(e)).collect();
        let mut products = IndexMap::new();
        for &a in &nonzero {
            for &b in &nonzero {
                let c = m.mul(a, b);
                if Some(a) == m.unit() || Some(b) == m.unit() || m.is_zero(c) {
                    continue;
                }
                products.insert(format!("{} {}", m.name(a), m.name(b)), m.name(c));
            }
        }
        let alpha =
            nonzero.iter().filter(|&&a| !m.is_zero(m.alpha(a))).map(|&a| (m.name(a), m.name(m.alpha(a)))).collect();
        StructureFile {
            elements: nonzero.iter().map(|&e| m.name(e)).collect(),
            unit: m.unit().map(|u| m.name(u)),
            zero: m.zero().is_some(),
            products,
            alpha,
        }
    }
}

/// `{"p":7,"dim":3,"c":[[[...]]],"alpha":[[...]],"kind":"skew","unit":null}`
///
/// `c[i][j][k]` is the coefficient of `e_k` in `e_i * e_j`; `alpha` acts on
/// column vectors, so `alpha[i][j]` is the `e_i` coordinate of `alpha(e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub p: u64,
    pub dim: usize,
    pub c: Vec<Vec<Vec<i64>>>,
    pub alpha: Vec<Vec<i64>>,
    pub kind: ProductKind,
    #[serde(default)]
    pub unit: Option<Vec<i64>>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<FieldHomAlgebra> {
        if self.c.len() != self.dim {
            return Err(Error::Dimension { what: "dim".into(), expected: self.dim, found: self.c.len() });
        }
        FieldHomAlgebra::new(Prime::new(self.p)?, &self.c, &self.alpha, self.kind, self.unit.as_deref())
    }

    pub fn from_algebra(a: &FieldHomAlgebra) -> Self {
        let to_i = |v: &[u32]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
        AlgebraFile {
            p: a.prime().get() as u64,
            dim: a.dim(),
            c: a.constants_nested().iter().map(|r| r.iter().map(|v| to_i(v)).collect()).collect(),
            alpha: a.alpha().rows().iter().map(|r| to_i(r)).collect(),
            kind: a.kind(),
            unit: a.unit().map(to_i),
        }
    }
}
