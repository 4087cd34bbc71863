//! Backtracking model search over unital magmas with zero.
//!
//! Decision variables are the twist values of the non-zero elements followed
//! by the free table cells (row-major, skipping the unit and zero
//! rows/columns). Values are tried zero first, then `e1, e2, ...`, so the first
//! model met in depth-first order is the lexicographically least one, and it
//! is automatically canonical.
//!
//! For parallel runs the tree is cut after a fixed number of decisions that
//! depends only on the carrier shape. Each prefix is searched on its own and
//! results are combined in prefix order, which keeps the outcome and the work
//! counters independent of the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::canon::is_canonical;
use crate::carrier::FiniteHomMagma;
use crate::dsl::{Form, Identity, Term};
use crate::error::{Error, Result};

const UNSET: u8 = u8::MAX;
const STACK: usize = 64;
/// Prefix count the tree is cut into for parallel search, at least.
const MIN_PREFIXES: usize = 256;

#[derive(Debug, Clone, Copy)]
enum Op {
    Var(u8),
    Unit,
    Twist,
    Mul,
}

#[derive(Debug, Clone)]
pub(crate) struct Program {
    lhs: Vec<Op>,
    rhs: Vec<Op>,
}

impl Program {
    pub(crate) fn compile(id: &Identity) -> Result<Program> {
        let Form::Equation { lhs, rhs } = &id.form else {
            return Err(Error::CyclicNotSupportedOnMagma);
        };
        let (mut l, mut r) = (Vec::new(), Vec::new());
        let dl = emit(lhs, &mut l);
        let dr = emit(rhs, &mut r);
        if dl.max(dr) > STACK {
            return Err(Error::InvalidSpec("identity nests too deeply".into()));
        }
        Ok(Program { lhs: l, rhs: r })
    }
}

/// Postfix code; returns the stack depth needed.
fn emit(t: &Term, out: &mut Vec<Op>) -> usize {
    match t {
        Term::Var(v) => {
            out.push(Op::Var(v.index() as u8));
            1
        }
        Term::Unit => {
            out.push(Op::Unit);
            1
        }
        Term::Twist(inner) => {
            let d = emit(inner, out);
            out.push(Op::Twist);
            d
        }
        Term::Prod(l, r) => {
            let a = emit(l, out);
            let b = emit(r, out);
            out.push(Op::Mul);
            a.max(b + 1)
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Cell(usize),
    Alpha(usize),
}

/// Carrier shape and decision order for one size.
pub(crate) struct Layout {
    size: usize,
    unital: bool,
    with_zero: bool,
    slots: Vec<Slot>,
    /// Index of the zero, `UNSET` if there is none.
    zero: u8,
    /// Values in search order (zero first).
    domain: Vec<u8>,
    prefix_len: usize,
}

impl Layout {
    pub(crate) fn new(nonzero: usize, unital: bool, with_zero: bool) -> Self {
        let size = nonzero + usize::from(with_zero);
        let first_free = usize::from(unital);
        // every built-in identity reads the twist, so fixing it first lets
        // the ground checks prune from the first table cell on
        let mut slots: Vec<Slot> = (0..nonzero).map(Slot::Alpha).collect();
        for a in first_free..nonzero {
            for b in first_free..nonzero {
                slots.push(Slot::Cell(a * size + b));
            }
        }
        let mut domain: Vec<u8> = Vec::with_capacity(size);
        if with_zero {
            domain.push((size - 1) as u8);
        }
        domain.extend(0..nonzero as u8);
        let mut prefix_len = 0;
        let mut count = 1usize;
        while prefix_len < slots.len() && count < MIN_PREFIXES {
            prefix_len += 1;
            count = count.saturating_mul(domain.len());
        }
        let zero = if with_zero { (size - 1) as u8 } else { UNSET };
        Layout { size, unital, with_zero, slots, zero, domain, prefix_len }
    }

    fn initial_state(&self) -> State {
        let n = self.size;
        let nonzero = n - usize::from(self.with_zero);
        let mut table = vec![UNSET; n * n];
        let mut alpha = vec![UNSET; n];
        if self.unital {
            for x in 0..n {
                table[x] = x as u8;
                table[x * n] = x as u8;
            }
        }
        if self.with_zero {
            let z = (n - 1) as u8;
            for x in 0..n {
                table[(n - 1) * n + x] = z;
                table[x * n + n - 1] = z;
            }
            alpha[n - 1] = z;
        }
        debug_assert!(nonzero >= 1);
        State::new(table, alpha)
    }

    fn prefixes(&self) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.prefix_len {
            out = out
                .into_iter()
                .flat_map(|p| {
                    self.domain.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone)]
struct State {
    table: Vec<u8>,
    alpha: Vec<u8>,
    /// The common value of a fully assigned constant twist, else `UNSET`.
    /// Lets `a(u)` be known before `u` is.
    alpha_const: u8,
}

impl State {
    fn new(table: Vec<u8>, alpha: Vec<u8>) -> Self {
        let mut st = State { table, alpha, alpha_const: UNSET };
        st.update_alpha_const();
        st
    }

    fn set(&mut self, slot: Slot, v: u8) {
        match slot {
            Slot::Cell(i) => self.table[i] = v,
            Slot::Alpha(i) => {
                self.alpha[i] = v;
                self.update_alpha_const();
            }
        }
    }

    fn update_alpha_const(&mut self) {
        let first = self.alpha[0];
        self.alpha_const = if self.alpha.iter().all(|&v| v == first) { first } else { UNSET };
    }
}

pub(crate) struct Problem<'a> {
    pub layout: &'a Layout,
    pub require: &'a [Program],
    pub violate: &'a [Program],
}

/// Ground instances, as `x*n*n + y*n + z`, not yet determined. A violated
/// identity already refuted by some instance is `None`.
struct Pending {
    require: Vec<Vec<u32>>,
    violate: Vec<Option<Vec<u32>>>,
}

#[derive(Default, Clone, Copy)]
pub(crate) struct Counters {
    pub nodes: u64,
    pub leaves: u64,
}

enum Flow {
    Continue,
    Stop,
}

impl Problem<'_> {
    /// Value of `code` at `args`, or `UNSET` if it depends on an unassigned
    /// slot. A product with the zero is the zero whatever the other factor.
    #[inline]
    fn eval(&self, code: &[Op], args: [u8; 3], st: &State) -> u8 {
        let n = self.layout.size;
        let zero = self.layout.zero;
        let mut stack = [0u8; STACK];
        let mut sp = 0;
        for op in code {
            match *op {
                Op::Var(i) => {
                    stack[sp] = args[i as usize];
                    sp += 1;
                }
                Op::Unit => {
                    stack[sp] = 0;
                    sp += 1;
                }
                Op::Twist => {
                    let v = stack[sp - 1];
                    stack[sp - 1] = if v == UNSET { st.alpha_const } else { st.alpha[v as usize] };
                }
                Op::Mul => {
                    let (a, b) = (stack[sp - 2], stack[sp - 1]);
                    sp -= 1;
                    stack[sp - 1] = if a == zero || b == zero {
                        zero
                    } else if a == UNSET || b == UNSET {
                        UNSET
                    } else {
                        st.table[a as usize * n + b as usize]
                    };
                }
            }
        }
        stack[0]
    }

    fn all_triples(&self) -> Pending {
        let n = self.layout.size;
        let all: Vec<u32> = (0..(n * n * n) as u32).collect();
        Pending { require: vec![all.clone(); self.require.len()], violate: vec![Some(all); self.violate.len()] }
    }

    fn args(&self, t: u32) -> [u8; 3] {
        let n = self.layout.size as u32;
        [(t / (n * n)) as u8, (t / n % n) as u8, (t % n) as u8]
    }

    /// Re-examines the ground instances left open by the parent. Determined
    /// values never change further down the tree, so closed instances are
    /// dropped for good. `None` if the node is dead: a required identity is
    /// refuted, or every instance of some violated identity is determined and
    /// holds.
    fn refine(&self, st: &State, parent: &Pending) -> Option<Pending> {
        let mut require = Vec::with_capacity(parent.require.len());
        for (prog, open) in self.require.iter().zip(&parent.require) {
            let mut still = Vec::new();
            for &t in open {
                let args = self.args(t);
                let l = self.eval(&prog.lhs, args, st);
                if l == UNSET {
                    still.push(t);
                    continue;
                }
                let r = self.eval(&prog.rhs, args, st);
                if r == UNSET {
                    still.push(t);
                } else if r != l {
                    return None;
                }
            }
            require.push(still);
        }
        let mut violate = Vec::with_capacity(parent.violate.len());
        for (prog, open) in self.violate.iter().zip(&parent.violate) {
            let Some(open) = open else {
                violate.push(None);
                continue;
            };
            let mut still = Vec::new();
            let mut witnessed = false;
            for &t in open {
                let args = self.args(t);
                let (l, r) = (self.eval(&prog.lhs, args, st), self.eval(&prog.rhs, args, st));
                if l == UNSET || r == UNSET {
                    still.push(t);
                } else if l != r {
                    witnessed = true;
                    break;
                }
            }
            if witnessed {
                violate.push(None);
            } else if still.is_empty() {
                return None;
            } else {
                violate.push(Some(still));
            }
        }
        Some(Pending { require, violate })
    }

    fn magma(&self, st: &State) -> FiniteHomMagma {
        let l = self.layout;
        FiniteHomMagma::from_canonical_parts(
            l.size,
            st.table.iter().map(|&v| v as usize).collect(),
            st.alpha.iter().map(|&v| v as usize).collect(),
            l.unital,
            l.with_zero,
        )
    }

    fn dfs(
        &self,
        st: &mut State,
        depth: usize,
        pending: &Pending,
        counters: &mut Counters,
        abort: &dyn Fn() -> bool,
        sink: &mut dyn FnMut(FiniteHomMagma) -> Flow,
    ) -> Flow {
        counters.nodes += 1;
        if abort() {
            return Flow::Stop;
        }
        let slots = &self.layout.slots;
        if depth == slots.len() {
            counters.leaves += 1;
            return sink(self.magma(st));
        }
        let slot = slots[depth];
        for &v in &self.layout.domain {
            st.set(slot, v);
            if let Some(child) = self.refine(st, pending) {
                if let Flow::Stop = self.dfs(st, depth + 1, &child, counters, abort, sink) {
                    st.set(slot, UNSET);
                    return Flow::Stop;
                }
            }
        }
        st.set(slot, UNSET);
        Flow::Continue
    }

    /// Searches the subtree under one prefix.
    fn run_prefix(
        &self,
        prefix: &[u8],
        abort: &dyn Fn() -> bool,
        sink: &mut dyn FnMut(FiniteHomMagma) -> Flow,
    ) -> Counters {
        let mut counters = Counters::default();
        let mut st = self.layout.initial_state();
        for (slot, &v) in self.layout.slots.iter().zip(prefix) {
            st.set(*slot, v);
        }
        if let Some(pending) = self.refine(&st, &self.all_triples()) {
            self.dfs(&mut st, prefix.len(), &pending, &mut counters, abort, sink);
        }
        counters
    }

    /// First model in search order, with counters summed over the prefixes
    /// up to and including the one that produced it.
    pub(crate) fn first(&self, workers: usize) -> (Option<FiniteHomMagma>, Counters) {
        let prefixes = self.layout.prefixes();
        let best = AtomicUsize::new(usize::MAX);
        let task = |idx: usize| {
            let abort = || best.load(Ordering::Relaxed) < idx;
            let mut found = None;
            let counters = self.run_prefix(&prefixes[idx], &abort, &mut |m| {
                found = Some(m);
                Flow::Stop
            });
            if found.is_some() {
                best.fetch_min(idx, Ordering::Relaxed);
            }
            (found, counters)
        };
        let results: Vec<(Option<FiniteHomMagma>, Counters)> = if workers <= 1 {
            let mut out = Vec::new();
            for idx in 0..prefixes.len() {
                let r = task(idx);
                let done = r.0.is_some();
                out.push(r);
                if done {
                    break;
                }
            }
            out
        } else {
            run_in_pool(workers, || (0..prefixes.len()).into_par_iter().map(task).collect())
        };
        let mut total = Counters::default();
        for (found, c) in results {
            total.nodes += c.nodes;
            total.leaves += c.leaves;
            if found.is_some() {
                return (found, total);
            }
        }
        (None, total)
    }

    /// Up to `limit` models in search order; with `canonical_only` only the
    /// canonical representative of each isomorphism class is kept.
    pub(crate) fn collect(&self, limit: usize, canonical_only: bool, workers: usize) -> Vec<FiniteHomMagma> {
        let prefixes = self.layout.prefixes();
        let task = |idx: usize| {
            let mut found = Vec::new();
            self.run_prefix(&prefixes[idx], &|| false, &mut |m| {
                if !canonical_only || is_canonical(&m) {
                    found.push(m);
                }
                if found.len() >= limit {
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            });
            found
        };
        let per_prefix: Vec<Vec<FiniteHomMagma>> = if workers <= 1 {
            let mut out = Vec::new();
            let mut total = 0;
            for idx in 0..prefixes.len() {
                let v = task(idx);
                total += v.len();
                out.push(v);
                if total >= limit {
                    break;
                }
            }
            out
        } else {
            run_in_pool(workers, || (0..prefixes.len()).into_par_iter().map(task).collect())
        };
        per_prefix.into_iter().flatten().take(limit).collect()
    }
}

fn run_in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
