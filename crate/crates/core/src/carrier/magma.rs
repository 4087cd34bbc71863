use std::fmt;

use crate::error::{Error, Result};

/// Index of an element in a [`FiniteHomMagma`].
pub type Elem = usize;

/// Finite carrier with a multiplication table, a twisting self-map, an
/// optional unit and an optional absorbing zero.
///
/// Storage is canonical: the unit (if any) has index 0 and the zero (if any)
/// has the last index. Elements print as `e1..en` in index order and the
/// zero prints as `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteHomMagma {
    size: usize,
    table: Vec<Elem>,
    alpha: Vec<Elem>,
    unit: Option<Elem>,
    zero: Option<Elem>,
}

impl FiniteHomMagma {
    /// Validates and stores a magma, relabelling so that the unit comes first
    /// and the zero last. Relative order of the remaining elements is kept.
    pub fn new(
        size: usize,
        table: Vec<Vec<Elem>>,
        alpha: Vec<Elem>,
        unit: Option<Elem>,
        zero: Option<Elem>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        let bad_shape = table.len() != size || table.iter().any(|r| r.len() != size);
        if bad_shape {
            let cols = table.iter().map(Vec::len).find(|&l| l != size).unwrap_or(size);
            return Err(Error::TableShape { rows: table.len(), cols, size });
        }
        if alpha.len() != size {
            return Err(Error::Dimension { what: "alpha map".into(), expected: size, found: alpha.len() });
        }
        for (what, idx) in [("unit", unit), ("zero", zero)] {
            if let Some(i) = idx.filter(|&i| i >= size) {
                return Err(Error::IndexOutOfRange { cell: what.into(), index: i, size });
            }
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(Error::IndexOutOfRange { cell: format!("table[{i}][{j}]"), index: v, size });
                }
            }
        }
        for (i, &v) in alpha.iter().enumerate() {
            if v >= size {
                return Err(Error::IndexOutOfRange { cell: format!("alpha[{i}]"), index: v, size });
            }
        }
        if unit.is_some() && unit == zero {
            return Err(Error::ZeroIsUnit);
        }
        if let Some(u) = unit {
            for x in 0..size {
                for (cell, found) in
                    [(format!("table[{u}][{x}]"), table[u][x]), (format!("table[{x}][{u}]"), table[x][u])]
                {
                    if found != x {
                        return Err(Error::UnitLawViolation { cell, expected: x, found });
                    }
                }
            }
        }
        if let Some(z) = zero {
            if alpha[z] != z {
                return Err(Error::ZeroLawViolation { cell: format!("alpha[{z}]") });
            }
            for x in 0..size {
                if table[z][x] != z {
                    return Err(Error::ZeroLawViolation { cell: format!("table[{z}][{x}]") });
                }
                if table[x][z] != z {
                    return Err(Error::ZeroLawViolation { cell: format!("table[{x}][{z}]") });
                }
            }
        }

        // old index of the element stored at each new position
        let mut order: Vec<Elem> = Vec::with_capacity(size);
        order.extend(unit);
        order.extend((0..size).filter(|&i| Some(i) != unit && Some(i) != zero));
        order.extend(zero);
        let mut new_of = vec![0; size];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let mut flat = vec![0; size * size];
        for (ni, &oi) in order.iter().enumerate() {
            for (nj, &oj) in order.iter().enumerate() {
                flat[ni * size + nj] = new_of[table[oi][oj]];
            }
        }
        let alpha = order.iter().map(|&o| new_of[alpha[o]]).collect();
        Ok(FiniteHomMagma { size, table: flat, alpha, unit: unit.map(|_| 0), zero: zero.map(|_| size - 1) })
    }

    /// Builds from already-canonical flat storage without validation.
    pub(crate) fn from_canonical_parts(
        size: usize,
        table: Vec<Elem>,
        alpha: Vec<Elem>,
        unital: bool,
        with_zero: bool,
    ) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteHomMagma { size, table, alpha, unit: unital.then_some(0), zero: with_zero.then_some(size - 1) }
    }

    /// The one-element unital magma with an adjoined zero.
    pub fn trivial() -> Self {
        Self::from_canonical_parts(2, vec![0, 1, 1, 1], vec![0, 1], true, true)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of elements other than the zero.
    pub fn nonzero_count(&self) -> usize {
        self.size - usize::from(self.zero.is_some())
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.size + b]
    }

    #[inline]
    pub fn alpha(&self, a: Elem) -> Elem {
        self.alpha[a]
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    pub fn is_zero(&self, e: Elem) -> bool {
        self.zero == Some(e)
    }

    pub fn flat_table(&self) -> &[Elem] {
        &self.table
    }

    pub fn alpha_map(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.size).map(<[Elem]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn name(&self, e: Elem) -> String {
        if self.is_zero(e) {
            "0".to_string()
        } else {
            format!("e{}", e + 1)
        }
    }

    /// Ordering code used for lexicographic comparisons: the zero sorts first.
    #[inline]
    pub(crate) fn code(&self, e: Elem) -> usize {
        match self.zero {
            Some(z) if z == e => 0,
            _ => e + 1,
        }
    }

    /// Relabels by `perm` (old index -> new index). Caller keeps unit/zero fixed.
    pub(crate) fn relabel(&self, perm: &[Elem]) -> FiniteHomMagma {
        let n = self.size;
        let mut table = vec![0; n * n];
        let mut alpha = vec![0; n];
        for a in 0..n {
            alpha[perm[a]] = perm[self.alpha[a]];
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteHomMagma { size: n, table, alpha, unit: self.unit, zero: self.zero }
    }

    /// Lexicographic key: (size, alpha codes, table codes row-major).
    pub(crate) fn lex_key(&self) -> (usize, Vec<usize>, Vec<usize>) {
        (
            self.size,
            self.alpha.iter().map(|&e| self.code(e)).collect(),
            self.table.iter().map(|&e| self.code(e)).collect(),
        )
    }

    /// Some `c` with `alpha(x) = c * x` for every `x`, scanning in index order.
    pub fn weak_left_unit(&self) -> Option<Elem> {
        self.elements().find(|&c| self.elements().all(|x| self.alpha(x) == self.mul(c, x)))
    }

    /// Shorthand listing: non-unit products that are not zero, then non-zero
    /// twist values. Carriers without a zero list every non-unit product.
    pub fn relations(&self) -> String {
        let mut parts = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                let skip = Some(a) == self.unit
                    || Some(b) == self.unit
                    || self.is_zero(a)
                    || self.is_zero(b)
                    || self.is_zero(self.mul(a, b));
                if !skip {
                    parts.push(format!("{}*{}={}", self.name(a), self.name(b), self.name(self.mul(a, b))));
                }
            }
        }
        let mut twists: Vec<String> = self
            .elements()
            .filter(|&a| !self.is_zero(a) && !self.is_zero(self.alpha(a)))
            .map(|a| format!("{}->{}", self.name(a), self.name(self.alpha(a))))
            .collect();
        // the carrier size is implied by the highest index mentioned
        let last = self.nonzero_count() - 1;
        let last_name = self.name(last);
        let mentioned =
            parts.iter().chain(&twists).any(|s| s.split(['*', '=', '-', '>', ' ', ',']).any(|tok| tok == last_name));
        if last > 0 && !mentioned {
            twists.push(format!("{last_name}->0"));
        }
        if !twists.is_empty() {
            parts.push(format!("alpha: {}", twists.join(", ")));
        }
        parts.join("; ")
    }
}

impl fmt::Display for FiniteHomMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.elements().map(|e| self.name(e)).collect();
        let w = names.iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:>w$} |", "*")?;
        for n in &names {
            write!(f, " {n:>w$}")?;
        }
        writeln!(f)?;
        for a in self.elements() {
            write!(f, "{:>w$} |", names[a])?;
            for b in self.elements() {
                write!(f, " {:>w$}", names[self.mul(a, b)])?;
            }
            writeln!(f)?;
        }
        write!(f, "{:>w$} |", "a")?;
        for a in self.elements() {
            write!(f, " {:>w$}", names[self.alpha(a)])?;
        }
        writeln!(f)
    }
}
