//! Exact arithmetic and small dense linear algebra over the prime field Z/p.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, always reduced into `0..p`.
pub type Scalar = u32;

/// Coordinate vector over Z/p.
pub type Vector = Vec<Scalar>;

/// A prime modulus. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0 as u64
    }
}

impl Prime {
    pub const DEFAULT: Prime = Prime(7);

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> Scalar {
        v.rem_euclid(self.0 as i64) as Scalar
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + b as u64) % self.0 as u64) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as Scalar
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.0 as u64) as Scalar
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: Scalar, mut exp: u64) -> Scalar {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        (a != 0).then(|| self.pow(a, self.0 as u64 - 2))
    }

    // vector helpers

    pub fn vadd(self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn vsub(self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn vscale(self, s: Scalar, a: &[Scalar]) -> Vector {
        a.iter().map(|&x| self.mul(s, x)).collect()
    }

    /// `acc += s * v`
    pub fn axpy(self, acc: &mut [Scalar], s: Scalar, v: &[Scalar]) {
        if s == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.add(*a, self.mul(s, x));
        }
    }
}

/// Basis vector `e_i` of length `d`.
pub fn unit_vector(d: usize, i: usize) -> Vector {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Dense square matrix acting on column vectors: `(M v)_i = sum_j m[i][j] v_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension { what: "matrix row".into(), expected: dim, found: bad.len() });
        }
        Ok(Matrix { dim, rows })
    }

    pub fn identity(dim: usize) -> Self {
        Matrix { dim, rows: (0..dim).map(|i| unit_vector(dim, i)).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        Matrix { dim, rows: vec![vec![0; dim]; dim] }
    }

    pub fn scalar(dim: usize, s: Scalar) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = s;
        }
        m
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let dim = cols.len();
        let mut m = Self::zero(dim);
        for (j, c) in cols.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::Dimension { what: "matrix column".into(), expected: dim, found: c.len() });
            }
            for (row, &v) in m.rows.iter_mut().zip(c) {
                row[j] = v;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vector {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, p: Prime, v: &[Scalar]) -> Vector {
        self.rows.iter().map(|r| r.iter().zip(v).fold(0, |acc, (&a, &x)| p.add(acc, p.mul(a, x)))).collect()
    }

    pub fn mul(&self, p: Prime, other: &Matrix) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.apply(p, &other.column(j))).collect();
        Matrix::from_columns(&cols).expect("square")
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_columns(&self.rows).expect("square")
    }

    pub fn reduced(mut self, p: Prime) -> Matrix {
        for r in &mut self.rows {
            for x in r.iter_mut() {
                *x %= p.get();
            }
        }
        self
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self, p: Prime) -> Option<Matrix> {
        let d = self.dim;
        let mut aug: Vec<Vector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit_vector(d, i));
                row
            })
            .collect();
        let rank = row_reduce(p, &mut aug, d);
        if rank < d {
            return None;
        }
        Matrix::from_rows(aug.into_iter().map(|r| r[d..].to_vec()).collect()).ok()
    }

    pub fn rank(&self, p: Prime) -> usize {
        let mut rows = self.rows.clone();
        row_reduce(p, &mut rows, self.dim)
    }
}

/// In-place reduced row echelon form over the first `pivot_cols` columns.
/// Returns the rank; pivot rows come first.
pub fn row_reduce(p: Prime, rows: &mut [Vector], pivot_cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..pivot_cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = p.inv(rows[rank][col]).expect("nonzero pivot");
        rows[rank] = p.vscale(inv, &rows[rank]);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = p.neg(rows[r][col]);
                let pivot_row = rows[rank].clone();
                p.axpy(&mut rows[r], f, &pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(p: Prime, vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut rows = vectors.to_vec();
    let rank = row_reduce(p, &mut rows, dim);
    rows.truncate(rank);
    rows
}

/// Solves `A c = b` where `A` is given as `rows` (each of length `unknowns`).
/// Returns one solution if the system is consistent.
pub fn solve(p: Prime, a: &[Vector], b: &[Scalar], unknowns: usize) -> Option<Vector> {
    let mut aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut row = r.clone();
            row.push(bi);
            row
        })
        .collect();
    let rank = row_reduce(p, &mut aug, unknowns);
    if aug[rank..].iter().any(|r| r[unknowns] != 0) {
        return None;
    }
    let mut x = vec![0; unknowns];
    for row in &aug[..rank] {
        let lead = row.iter().position(|&v| v != 0).expect("pivot row");
        x[lead] = row[unknowns];
    }
    Some(x)
}
