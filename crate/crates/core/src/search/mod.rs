//! Countermodel search for implications between twisted associative types.

mod canon;
mod engine;
mod spec;

use std::time::Instant;

pub use canon::{canonical_form, is_canonical, isomorphic};
pub use spec::{Outcome, SearchSpec, SearchStats, Verdict, VerdictJson};

use crate::carrier::FiniteHomMagma;
use crate::dsl::TypeName;
use crate::error::{Error, Result};
use engine::{Layout, Problem, Program};

/// Worker count used when none is given: the available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn compile(spec: &SearchSpec) -> Result<(Vec<Program>, Vec<Program>)> {
    spec.validate()?;
    let req = spec.required_identities()?.iter().map(Program::compile).collect::<Result<_>>()?;
    let vio = spec.violated_identities().iter().map(Program::compile).collect::<Result<_>>()?;
    Ok((req, vio))
}

/// Smallest model satisfying the spec, using all available cores.
pub fn find_model(spec: &SearchSpec) -> Result<Verdict> {
    find_model_with(spec, default_workers())
}

/// Like [`find_model`] with an explicit worker count. The verdict, including
/// the model and the work counters, does not depend on `workers`.
pub fn find_model_with(spec: &SearchSpec, workers: usize) -> Result<Verdict> {
    let start = Instant::now();
    let (req, vio) = compile(spec)?;
    let mut stats = SearchStats::default();
    for n in 1..=spec.max_n {
        let layout = Layout::new(n, spec.unital, spec.with_zero);
        let problem = Problem { layout: &layout, require: &req, violate: &vio };
        let (found, counters) = problem.first(workers.max(1));
        stats.nodes += counters.nodes;
        stats.models_tested += counters.leaves;
        if let Some(m) = found {
            if !spec.accepts(&m)? {
                return Err(Error::Internal(format!("search returned a model the evaluator rejects:\n{m}")));
            }
            stats.wall_time = start.elapsed();
            return Ok(Verdict { outcome: Outcome::Countermodel(m), stats });
        }
    }
    stats.wall_time = start.elapsed();
    Ok(Verdict { outcome: Outcome::ExhaustedUpTo(spec.max_n), stats })
}

/// Up to `limit` models in search order, smallest carriers first. With
/// `prune_isomorphs` only canonical representatives are returned.
pub fn enumerate_models(spec: &SearchSpec, limit: usize) -> Result<Vec<FiniteHomMagma>> {
    enumerate_models_with(spec, limit, default_workers())
}

pub fn enumerate_models_with(spec: &SearchSpec, limit: usize, workers: usize) -> Result<Vec<FiniteHomMagma>> {
    let (req, vio) = compile(spec)?;
    let mut out = Vec::new();
    for n in 1..=spec.max_n {
        if out.len() >= limit {
            break;
        }
        let layout = Layout::new(n, spec.unital, spec.with_zero);
        let problem = Problem { layout: &layout, require: &req, violate: &vio };
        out.extend(problem.collect(limit - out.len(), spec.prune_isomorphs, workers.max(1)));
    }
    Ok(out)
}

/// Searches for a model of every type in `premises` that fails `conclusion`.
pub fn verify_implication(premises: &[TypeName], conclusion: TypeName, max_n: usize) -> Result<Verdict> {
    verify_implication_with(premises, conclusion, max_n, default_workers())
}

pub fn verify_implication_with(
    premises: &[TypeName],
    conclusion: TypeName,
    max_n: usize,
    workers: usize,
) -> Result<Verdict> {
    find_model_with(&SearchSpec::new(max_n, premises, &[conclusion]), workers)
}
