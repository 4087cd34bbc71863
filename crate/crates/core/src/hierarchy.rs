//! The unital hierarchy of twisted associative types: known countermodels,
//! lemma-level equalities, and bounded confirmation of the implications.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::Serialize;

use crate::carrier::{from_relations, FieldHomAlgebra, FiniteHomMagma};
use crate::dsl::{builtin, parse_identity, TypeName, TypeTag};
use crate::error::{Error, Result};
use crate::eval::{holds, holds_multilinear, type_profile};
use crate::field::Prime;
use crate::search::{default_workers, verify_implication_with, Outcome};
use TypeName::*;

/// A small magma separating two sets of types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub id: String,
    /// Relations as listed.
    pub printed: String,
    /// Relations actually loaded. Differs from `printed` only when the
    /// listed text does not exhibit the claim.
    pub relations: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
    pub claimed_satisfied: BTreeSet<TypeTag>,
    pub claimed_violated: BTreeSet<TypeTag>,
}

fn tags(names: &[TypeName]) -> BTreeSet<TypeTag> {
    names.iter().map(|n| n.assoc()).collect()
}

impl Fixture {
    fn new(id: &str, relations: &str, sat: &[TypeName], vio: &[TypeName]) -> Self {
        Fixture {
            id: id.to_string(),
            printed: relations.to_string(),
            relations: relations.to_string(),
            erratum: None,
            claimed_satisfied: tags(sat),
            claimed_violated: tags(vio),
        }
    }

    fn corrected(mut self, relations: &str, note: &str) -> Self {
        self.relations = relations.to_string();
        self.erratum = Some(note.to_string());
        self
    }

    pub fn load(&self) -> Result<FiniteHomMagma> {
        from_relations(&self.relations)
    }

    pub fn load_printed(&self) -> Result<FiniteHomMagma> {
        from_relations(&self.printed)
    }

    /// `sat ⇏ vio` in the usual notation.
    pub fn claim(&self) -> String {
        let names = |s: &BTreeSet<TypeTag>| s.iter().map(|t| t.name.as_str()).collect::<Vec<_>>().join(",");
        format!("{} =/=> {}", names(&self.claimed_satisfied), names(&self.claimed_violated))
    }
}

/// The sixteen separating examples of the unital hierarchy.
///
/// Items 2, 4 and 5 do not exhibit their claims as listed; each carries
/// the nearest repaired carrier in `relations` and the listed text in
/// `printed`.
pub fn paper_fixtures() -> Vec<Fixture> {
    vec![
        Fixture::new("1", "alpha: e2->e1", &[I2], &[I3]),
        Fixture::new("2", "alpha: e1->e1", &[I2, II2], &[II3]).corrected(
            "alpha: e1->e1, e2->0",
            "as printed the carrier has no e2 and is associative with identity twist; adding e2 with zero products and alpha(e2)=0 gives the claim",
        ),
        Fixture::new("3", "alpha: e2->e2", &[I2, II1, II2, II3], &[I3]),
        Fixture::new("4", "e2*e2=e1; alpha: e2->e3, e3->e3", &[I3], &[I1]).corrected(
            "e2*e2=e1; alpha: e1->e3",
            "as printed the twist fails I3; twisting only the unit, to e3, gives the claim",
        ),
        Fixture::new("5", "e2*e2=e2; e2*e3=e2; alpha: e1->e3, e2->e3", &[I2], &[II2]).corrected(
            "e2*e2=e2; e2*e3=e2; alpha: e1->e2, e2->e2",
            "as printed the twist fails I2; sending e1 and e2 to e2 instead of e3 gives the claim",
        ),
        Fixture::new("6", "e2*e3=e3; alpha: e1->e2", &[II2], &[I2]),
        Fixture::new("7", "e2*e3=e1; e3*e2=e1; alpha: e1->e3", &[II1, II2], &[II3]),
        Fixture::new("8", "e2*e3=e1; alpha: e1->e2", &[II1], &[II2]),
        Fixture::new("9", "e2*e3=e1; e3*e2=e1; alpha: e2->e3", &[II1, II2, II3], &[I2]),
        Fixture::new("10", "e2*e2=e1; e3*e3=e2; alpha: e1->e3", &[II2, II3], &[II1]),
        Fixture::new("11", "e3*e2=e4; e4*e3=e2; alpha: e1->e3", &[I2, II1, II3], &[II2]),
        Fixture::new("12", "alpha: e2->e1", &[III, IIIpp], &[IIIp]),
        Fixture::new("13", "e2*e2=e3; e3*e2=e2; alpha: e1->e2", &[III, IIIp], &[IIIpp]),
        Fixture::new("14", "e2*e2=e3; e3*e2=e3; alpha: e3->e3", &[IIIp, IIIpp], &[III]),
        Fixture::new(
            "15",
            "e2*e2=e1; e2*e3=e1; e3*e2=e2; e3*e3=e1; alpha: e1->e3, e2->e3, e3->e3",
            &[III, IIIp, IIIpp],
            &[I2, II1, II2, II3],
        ),
        Fixture::new("inline-I3", "e2*e2=e1; e3*e3=e3; alpha: e1->e3, e3->e3", &[I3], &[III, IIIp]),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Discrepancy {
    /// Claimed satisfied, computed violated.
    NotSatisfied(TypeTag),
    /// Claimed violated, computed satisfied.
    NotViolated(TypeTag),
    Unloadable(String),
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::NotSatisfied(t) => write!(f, "claimed {} but it fails", t.name),
            Discrepancy::NotViolated(t) => write!(f, "claimed not {} but it holds", t.name),
            Discrepancy::Unloadable(e) => write!(f, "relations do not load: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub profile: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MismatchReport {
    pub id: String,
    pub discrepancies: Vec<Discrepancy>,
}

impl fmt::Display for MismatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fixture {}:", self.id)?;
        for d in &self.discrepancies {
            write!(f, " {d};")?;
        }
        Ok(())
    }
}

impl std::error::Error for MismatchReport {}

fn check_claims(f: &Fixture, loaded: Result<FiniteHomMagma>) -> std::result::Result<FixtureReport, MismatchReport> {
    let m = loaded.map_err(|e| MismatchReport {
        id: f.id.clone(),
        discrepancies: vec![Discrepancy::Unloadable(e.to_string())],
    })?;
    let profile = type_profile(&m);
    let mut discrepancies: Vec<Discrepancy> =
        f.claimed_satisfied.iter().filter(|t| !profile.contains(**t)).map(|t| Discrepancy::NotSatisfied(*t)).collect();
    discrepancies
        .extend(f.claimed_violated.iter().filter(|t| profile.contains(**t)).map(|t| Discrepancy::NotViolated(*t)));
    if discrepancies.is_empty() {
        Ok(FixtureReport { id: f.id.clone(), profile: crate::eval::TypeProfile::names(&profile.satisfied) })
    } else {
        Err(MismatchReport { id: f.id.clone(), discrepancies })
    }
}

/// Loads the fixture and compares its computed profile with the claims.
pub fn verify_fixture(f: &Fixture) -> std::result::Result<FixtureReport, MismatchReport> {
    check_claims(f, f.load())
}

/// Same check against the relations as listed.
pub fn verify_printed(f: &Fixture) -> std::result::Result<FixtureReport, MismatchReport> {
    check_claims(f, f.load_printed())
}

/// Equalities that follow from a type hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// Consequences of I1 (equivalently II).
    I1OrII,
    /// Mixed associativity under I1.
    Imassoc,
    /// Consequences of I3.
    Bis,
    /// Consequences of II1 together with II3.
    Lemma3,
}

impl Lemma {
    pub const ALL: [Lemma; 4] = [Lemma::I1OrII, Lemma::Imassoc, Lemma::Bis, Lemma::Lemma3];

    pub fn id(self) -> &'static str {
        match self {
            Lemma::I1OrII => "I1-or-II",
            Lemma::Imassoc => "imassoc",
            Lemma::Bis => "bis",
            Lemma::Lemma3 => "lemma3",
        }
    }

    pub fn equalities(self) -> &'static [&'static str] {
        match self {
            Lemma::I1OrII => &["a(x)*y = x*a(y)", "x*a(1) = a(x)", "a(x*y) = x*a(y)"],
            Lemma::Imassoc => &["a(x)*(y*z) = (a(x)*y)*z", "x*(y*a(z)) = (x*y)*a(z)"],
            Lemma::Bis => &["a(x) = x*a(1)", "x*a(y) = a(x)*y"],
            Lemma::Lemma3 => &[
                "a(1)*a(x) = a(x)*a(1)",
                "a(a(x))*a(1) = a(x)*a(a(1))",
                "a(x)*(a(1)*a(y)) = (a(x)*a(1))*a(y)",
                "a(a(x))*a(y) = a(x)*a(a(y))",
            ],
        }
    }

    pub fn hypothesis_met(self, m: &FiniteHomMagma) -> Result<bool> {
        let has = |t: TypeName| holds(m, &builtin(t.assoc()));
        Ok(match self {
            Lemma::I1OrII => has(I1)? || has(II)?,
            Lemma::Imassoc => has(I1)?,
            Lemma::Bis => has(I3)?,
            Lemma::Lemma3 => has(II1)? && has(II3)?,
        })
    }

    fn hypothesis_text(self) -> &'static str {
        match self {
            Lemma::I1OrII => "I1 or II",
            Lemma::Imassoc => "I1",
            Lemma::Bis => "I3",
            Lemma::Lemma3 => "II1 and II3",
        }
    }
}

impl FromStr for Lemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL.into_iter().find(|l| l.id() == s).ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// True iff every equality of the lemma holds on `m`.
pub fn lemma_equalities(m: &FiniteHomMagma, lemma: Lemma) -> Result<bool> {
    if !lemma.hypothesis_met(m)? {
        return Err(Error::HypothesisNotMet(lemma.hypothesis_text().to_string()));
    }
    for src in lemma.equalities() {
        if !holds(m, &parse_identity(src)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub premises: Vec<TypeName>,
    pub conclusion: TypeName,
    /// Short label of the statement the edge comes from.
    pub anchor: &'static str,
}

impl Edge {
    fn new(premises: &[TypeName], conclusion: TypeName, anchor: &'static str) -> Self {
        Edge { premises: premises.to_vec(), conclusion, anchor }
    }

    pub fn id(&self) -> String {
        let p: Vec<&str> = self.premises.iter().map(|t| t.as_str()).collect();
        format!("{}=>{}", p.join(","), self.conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationGraph {
    pub nodes: Vec<TypeTag>,
    pub edges: Vec<Edge>,
}

impl ImplicationGraph {
    /// The proved implications between unital types.
    pub fn standard() -> Self {
        let edges = vec![
            Edge::new(&[I1], II, "I1 iff II"),
            Edge::new(&[II], I1, "I1 iff II"),
            Edge::new(&[I1], I3, "I1 implies I3"),
            Edge::new(&[I3], I2, "I3 implies I2, II2, II3"),
            Edge::new(&[I3], II2, "I3 implies I2, II2, II3"),
            Edge::new(&[I3], II3, "I3 implies I2, II2, II3"),
            Edge::new(&[I1], III, "I1 implies the order-three types"),
            Edge::new(&[I1], IIIp, "I1 implies the order-three types"),
            Edge::new(&[I1], IIIpp, "I1 implies the order-three types"),
            Edge::new(&[I3], IIIpp, "I3 implies III''"),
            Edge::new(&[I2], IIIpp, "I2 implies III''"),
            Edge::new(&[II2], IIIpp, "II2 implies III''"),
            Edge::new(&[II1, II3], IIIpp, "II1 and II3 imply III''"),
            Edge::new(&[I2, II3], II1, "under I2, II3 iff II1"),
            Edge::new(&[I2, II1], II3, "under I2, II3 iff II1"),
            Edge::new(&[I1], II1, "I1 implies II1"),
        ];
        ImplicationGraph { nodes: TypeTag::all_assoc().collect(), edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "relations", rename_all = "snake_case")]
pub enum EdgeStatus {
    Exhausted,
    Countermodel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeResult {
    pub edge: Edge,
    pub status: EdgeStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub id: String,
    pub claim: String,
    pub pass: bool,
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub max_n: usize,
    pub edges: Vec<EdgeResult>,
    pub fixtures: Vec<FixtureResult>,
    /// The direction `III, III', III'' => I1`, as it appears in print. Only a
    /// suspected typo; searched rather than assumed.
    pub printed_direction: EdgeResult,
    pub warnings: Vec<String>,
}

impl HierarchyReport {
    /// Every edge exhausted and every fixture passing.
    pub fn all_pass(&self) -> bool {
        self.edges.iter().all(|e| e.status == EdgeStatus::Exhausted) && self.fixtures.iter().all(|f| f.pass)
    }

    /// `{id -> pass|fail|countermodel}` in report order.
    pub fn matrix(&self) -> IndexMap<String, &'static str> {
        let mut out = IndexMap::new();
        let status = |s: &EdgeStatus| match s {
            EdgeStatus::Exhausted => "pass",
            EdgeStatus::Countermodel(_) => "countermodel",
        };
        for e in &self.edges {
            out.insert(format!("edge:{}", e.edge.id()), status(&e.status));
        }
        for f in &self.fixtures {
            out.insert(format!("fixture:{}", f.id), if f.pass { "pass" } else { "fail" });
        }
        out.insert(format!("printed:{}", self.printed_direction.edge.id()), status(&self.printed_direction.status));
        out
    }
}

impl fmt::Display for HierarchyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "implications (up to {} non-zero elements)", self.max_n)?;
        for e in &self.edges {
            let s = match &e.status {
                EdgeStatus::Exhausted => "pass".to_string(),
                EdgeStatus::Countermodel(r) => format!("COUNTERMODEL {r}"),
            };
            writeln!(f, "  {:<22} {:<34} {s}", e.edge.id(), e.edge.anchor)?;
        }
        writeln!(f, "fixtures")?;
        for x in &self.fixtures {
            let s = if x.pass { "pass".to_string() } else { format!("FAIL {:?}", x.discrepancies) };
            let note = if x.erratum.is_some() { " (corrected)" } else { "" };
            writeln!(f, "  {:<10} {:<34} {s}{note}", x.id, x.claim)?;
        }
        let p = &self.printed_direction;
        match &p.status {
            EdgeStatus::Exhausted => writeln!(f, "printed direction {}: no countermodel", p.edge.id())?,
            EdgeStatus::Countermodel(r) => {
                writeln!(f, "printed direction {}: refuted by {r} (suspected typo)", p.edge.id())?
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

fn edge_status(edge: &Edge, max_n: usize, workers: usize) -> Result<EdgeStatus> {
    let v = verify_implication_with(&edge.premises, edge.conclusion, max_n, workers)?;
    Ok(match v.outcome {
        Outcome::ExhaustedUpTo(_) => EdgeStatus::Exhausted,
        Outcome::Countermodel(m) => EdgeStatus::Countermodel(m.relations()),
    })
}

/// Searches for a countermodel to a single edge.
pub fn check_edge(edge: &Edge, max_n: usize) -> Result<EdgeResult> {
    check_edge_with(edge, max_n, default_workers())
}

pub fn check_edge_with(edge: &Edge, max_n: usize, workers: usize) -> Result<EdgeResult> {
    Ok(EdgeResult { edge: edge.clone(), status: edge_status(edge, max_n, workers)? })
}

/// Searches every edge of the standard graph, checks all fixtures, and
/// probes the printed direction of the order-three statement.
pub fn verify_hierarchy(max_n: usize) -> Result<HierarchyReport> {
    verify_hierarchy_with(max_n, default_workers())
}

/// Like [`verify_hierarchy`]; `workers` bounds the threads of each search.
/// The report does not depend on it.
pub fn verify_hierarchy_with(max_n: usize, workers: usize) -> Result<HierarchyReport> {
    let graph = ImplicationGraph::standard();
    let mut warnings = Vec::new();
    if max_n > 4 {
        warnings.push(format!("bound {max_n} above 4: search time grows very quickly"));
    }
    let edges = graph.edges.iter().map(|e| check_edge_with(e, max_n, workers)).collect::<Result<Vec<_>>>()?;
    let fixtures = paper_fixtures()
        .par_iter()
        .map(|f| {
            let discrepancies = match verify_fixture(f) {
                Ok(_) => Vec::new(),
                Err(m) => m.discrepancies,
            };
            FixtureResult {
                id: f.id.clone(),
                claim: f.claim(),
                pass: discrepancies.is_empty(),
                discrepancies,
                erratum: f.erratum.clone(),
            }
        })
        .collect();
    let printed = Edge::new(&[III, IIIp, IIIpp], I1, "printed direction of I1 vs order-three types");
    let printed_direction = check_edge_with(&printed, max_n, workers)?;
    Ok(HierarchyReport { max_n, edges, fixtures, printed_direction, warnings })
}

/// Twisting an algebra by the inverse of its twist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseTwistReport {
    pub beta: Vec<Vec<u32>>,
    pub satisfies_i3: bool,
    pub satisfies_ii: bool,
}

impl InverseTwistReport {
    pub fn holds(&self) -> bool {
        self.satisfies_i3 && self.satisfies_ii
    }
}

/// For a weakly left unital type-I1 algebra with invertible twist, checks
/// that twisting by the inverse gives an algebra of types I3 and II.
pub fn inverse_twist_check(a: &FieldHomAlgebra) -> Result<InverseTwistReport> {
    if !holds_multilinear(a, &builtin(I1.assoc()))? {
        return Err(Error::HypothesisNotMet("I1".into()));
    }
    if a.weak_left_unit().is_none() {
        return Err(Error::NotWeaklyUnital);
    }
    let beta = a.alpha().inverse(a.prime()).ok_or(Error::AlphaNotInvertible)?;
    let b = a.with_alpha(beta.clone())?;
    Ok(InverseTwistReport {
        beta: beta.rows().to_vec(),
        satisfies_i3: holds_multilinear(&b, &builtin(I3.assoc()))?,
        satisfies_ii: holds_multilinear(&b, &builtin(II.assoc()))?,
    })
}

/// The group algebra of Z/3 = <g> over Z/p, basis (1, g, g^2), twisted by
/// left multiplication with `g`.
pub fn cyclic_group_algebra(p: Prime) -> Result<FieldHomAlgebra> {
    let d = 3;
    let constants: Vec<Vec<Vec<i64>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut v = vec![0; d];
                    v[(i + j) % d] = 1;
                    v
                })
                .collect()
        })
        .collect();
    // column i holds g * g^i
    let alpha: Vec<Vec<i64>> = (0..d).map(|r| (0..d).map(|c| i64::from((c + 1) % d == r)).collect()).collect();
    FieldHomAlgebra::new(p, &constants, &alpha, crate::carrier::ProductKind::General, Some(&[1, 0, 0]))
}
