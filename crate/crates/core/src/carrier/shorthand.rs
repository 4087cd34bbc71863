//! Counterexample shorthand: `e2*e2=e1; e3*e3=e2; alpha: e1->e3`.
//!
//! Elements are `e1..en` with `e1` the unit, plus an adjoined zero written
//! `0`. The carrier is `e1..en` where `n` is the largest index mentioned.
//! Unlisted products are zero except in the unit row and column; unlisted
//! twist values are zero.

use std::collections::BTreeMap;

use super::magma::{Elem, FiniteHomMagma};
use crate::error::{Error, Result};

/// Reference to `e<k>` (`Some(k - 1)`) or the zero (`None`).
type Ref = Option<usize>;

pub fn from_relations(text: &str) -> Result<FiniteHomMagma> {
    let mut products: BTreeMap<(usize, usize), Ref> = BTreeMap::new();
    let mut twists: BTreeMap<usize, Ref> = BTreeMap::new();
    let mut max_index = 0usize;
    let mut bump = |r: Ref| {
        if let Some(i) = r {
            max_index = max_index.max(i);
        }
    };

    let mut offset = 0;
    for item in text.split([';', '\n']) {
        let start = offset;
        offset += item.len() + 1;
        let trimmed = item.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = start + (item.len() - item.trim_start().len());
        if let Some(rest) = trimmed.strip_prefix("alpha:").or_else(|| trimmed.strip_prefix("a:")) {
            let rest_at = lead + (trimmed.len() - rest.len());
            for pair in rest.split(',') {
                let (from, to) = pair
                    .split_once("->")
                    .ok_or_else(|| rel_err(rest_at, format!("expected `eI->eJ` in `{}`", pair.trim())))?;
                let from = parse_ref(from, rest_at)?;
                let to = parse_ref(to, rest_at)?;
                bump(from);
                bump(to);
                let Some(from) = from else {
                    if to.is_some() {
                        return Err(Error::ConflictingRelation("alpha(0) must be 0".into()));
                    }
                    continue;
                };
                if let Some(prev) = twists.insert(from, to) {
                    if prev != to {
                        return Err(Error::ConflictingRelation(format!("alpha(e{}) given twice", from + 1)));
                    }
                }
            }
        } else {
            let (lhs, rhs) =
                trimmed.split_once('=').ok_or_else(|| rel_err(lead, format!("expected `eI*eJ=eK` in `{trimmed}`")))?;
            let lhs = lhs.trim().trim_start_matches('(').trim_end_matches(')');
            let (a, b) = lhs
                .split_once(['*', '·'])
                .ok_or_else(|| rel_err(lead, format!("expected a product in `{trimmed}`")))?;
            let (a, b, c) = (parse_ref(a, lead)?, parse_ref(b, lead)?, parse_ref(rhs, lead)?);
            bump(a);
            bump(b);
            bump(c);
            let (Some(a), Some(b)) = (a, b) else {
                if c.is_some() {
                    return Err(Error::ConflictingRelation(format!("`{trimmed}` contradicts the zero law")));
                }
                continue;
            };
            let unit_value = match (a, b) {
                (0, _) => Some(Some(b)),
                (_, 0) => Some(Some(a)),
                _ => None,
            };
            if unit_value.is_some_and(|u| u != c) {
                return Err(Error::ConflictingRelation(format!("`{trimmed}` contradicts the unit law")));
            }
            if let Some(prev) = products.insert((a, b), c) {
                if prev != c {
                    return Err(Error::ConflictingRelation(format!("product e{}*e{} given twice", a + 1, b + 1)));
                }
            }
        }
    }

    let n = max_index + 1;
    let zero = n;
    let size = n + 1;
    let elem = |r: Ref| -> Elem { r.unwrap_or(zero) };
    let mut table = vec![vec![zero; size]; size];
    for x in 0..n {
        table[0][x] = x;
        table[x][0] = x;
    }
    for (&(a, b), &c) in &products {
        table[a][b] = elem(c);
    }
    let mut alpha = vec![zero; size];
    for (&a, &b) in &twists {
        alpha[a] = elem(b);
    }
    FiniteHomMagma::new(size, table, alpha, Some(0), Some(zero))
}

fn rel_err(offset: usize, message: String) -> Error {
    Error::Relation { offset, message }
}

fn parse_ref(s: &str, offset: usize) -> Result<Ref> {
    let t = s.trim();
    if t == "0" {
        return Ok(None);
    }
    t.strip_prefix('e')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .map(|k| Some(k - 1))
        .ok_or_else(|| rel_err(offset, format!("bad element `{t}`")))
}
