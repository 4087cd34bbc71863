//! Canonical labelling by exhaustive relabelling of the movable elements.

use crate::carrier::FiniteHomMagma;

/// Elements other than the unit and the zero; these may be permuted.
fn movable(m: &FiniteHomMagma) -> Vec<usize> {
    m.elements().filter(|&e| Some(e) != m.unit() && !m.is_zero(e)).collect()
}

/// Calls `f` with every old->new permutation fixing unit and zero.
fn for_each_relabel(m: &FiniteHomMagma, mut f: impl FnMut(&[usize]) -> bool) {
    let slots = movable(m);
    let mut perm: Vec<usize> = m.elements().collect();
    let mut images = slots.clone();
    // Heap's algorithm over `images`
    let k = images.len();
    let mut c = vec![0usize; k];
    let apply = |perm: &mut Vec<usize>, images: &[usize]| {
        for (s, &img) in slots.iter().zip(images) {
            perm[*s] = img;
        }
    };
    apply(&mut perm, &images);
    if !f(&perm) {
        return;
    }
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                images.swap(0, i);
            } else {
                images.swap(c[i], i);
            }
            apply(&mut perm, &images);
            if !f(&perm) {
                return;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Least relabelling under the (size, table codes, alpha codes) order, with
/// the unit kept at index 0 and the zero at the last index.
pub fn canonical_form(m: &FiniteHomMagma) -> FiniteHomMagma {
    let mut best = m.clone();
    let mut best_key = best.lex_key();
    for_each_relabel(m, |perm| {
        let cand = m.relabel(perm);
        let key = cand.lex_key();
        if key < best_key {
            best = cand;
            best_key = key;
        }
        true
    });
    best
}

/// Whether `m` already is its own canonical form.
pub fn is_canonical(m: &FiniteHomMagma) -> bool {
    let key = m.lex_key();
    let mut canonical = true;
    for_each_relabel(m, |perm| {
        if m.relabel(perm).lex_key() < key {
            canonical = false;
        }
        canonical
    });
    canonical
}

pub fn isomorphic(a: &FiniteHomMagma, b: &FiniteHomMagma) -> bool {
    a.size() == b.size()
        && a.unit().is_some() == b.unit().is_some()
        && a.zero().is_some() == b.zero().is_some()
        && canonical_form(a) == canonical_form(b)
}
