use std::collections::BTreeSet;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::carrier::{FiniteHomMagma, StructureFile};
use crate::dsl::{builtin, parse_identity, Identity, TypeName};
use crate::error::{Error, Result};
use crate::eval::holds;

/// What a countermodel must satisfy and refute.
///
/// JSON: `{"max_n":3,"require":["I2"],"violate":["I3"],"custom":["x*a(1) = a(x)"]}`.
/// `custom` identities are additional requirements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    /// Bound on the number of non-zero elements (unit included).
    pub max_n: usize,
    #[serde(default)]
    pub require: Vec<TypeName>,
    #[serde(default)]
    pub violate: Vec<TypeName>,
    #[serde(default)]
    pub custom: Vec<String>,
    #[serde(default = "yes")]
    pub with_zero: bool,
    #[serde(default = "yes")]
    pub unital: bool,
    #[serde(default = "yes")]
    pub prune_isomorphs: bool,
}

fn yes() -> bool {
    true
}

impl SearchSpec {
    pub fn new(max_n: usize, require: &[TypeName], violate: &[TypeName]) -> Self {
        SearchSpec {
            max_n,
            require: require.to_vec(),
            violate: violate.to_vec(),
            custom: Vec::new(),
            with_zero: true,
            unital: true,
            prune_isomorphs: true,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.max_n == 0 {
            return Err(Error::InvalidSpec("max_n must be at least 1".into()));
        }
        let req: BTreeSet<_> = self.require.iter().collect();
        if let Some(t) = self.violate.iter().find(|t| req.contains(t)) {
            return Err(Error::InvalidSpec(format!("{t} is both required and violated")));
        }
        if self.max_n > u8::MAX as usize / 2 {
            return Err(Error::InvalidSpec("max_n too large".into()));
        }
        Ok(())
    }

    pub(crate) fn required_identities(&self) -> Result<Vec<Identity>> {
        let mut ids: Vec<Identity> = self.require.iter().map(|t| builtin(t.assoc())).collect();
        for src in &self.custom {
            let id = parse_identity(src)?;
            if id.is_cyclic() {
                return Err(Error::CyclicNotSupportedOnMagma);
            }
            if id.uses_unit() && !self.unital {
                return Err(Error::UnitUndefined);
            }
            ids.push(id);
        }
        Ok(ids)
    }

    pub(crate) fn violated_identities(&self) -> Vec<Identity> {
        self.violate.iter().map(|t| builtin(t.assoc())).collect()
    }

    /// Independent re-check of a model against the spec with the evaluator.
    pub fn accepts(&self, m: &FiniteHomMagma) -> Result<bool> {
        for id in self.required_identities()? {
            if !holds(m, &id)? {
                return Ok(false);
            }
        }
        for id in self.violated_identities() {
            if holds(m, &id)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Work counters. Deterministic for a given spec regardless of worker count;
/// the wall time is not serialized.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub models_tested: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Countermodel(FiniteHomMagma),
    ExhaustedUpTo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn countermodel(&self) -> Option<&FiniteHomMagma> {
        match &self.outcome {
            Outcome::Countermodel(m) => Some(m),
            Outcome::ExhaustedUpTo(_) => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, Outcome::ExhaustedUpTo(_))
    }

    pub fn to_json(&self) -> VerdictJson {
        match &self.outcome {
            Outcome::Countermodel(m) => VerdictJson {
                outcome: "countermodel",
                nonzero_elements: Some(m.nonzero_count()),
                model: Some(StructureFile::from_magma(m)),
                relations: Some(m.relations()),
                up_to: None,
                stats: self.stats.clone(),
            },
            Outcome::ExhaustedUpTo(n) => VerdictJson {
                outcome: "exhausted",
                nonzero_elements: None,
                model: None,
                relations: None,
                up_to: Some(*n),
                stats: self.stats.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonzero_elements: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<StructureFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub up_to: Option<usize>,
    pub stats: SearchStats,
}
