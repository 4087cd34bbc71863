//! Lie-side examples and checks: the K^3 and K^2 examples, the identity
//! J^I1 + J^I2 + J^I3 = 0 for Lie brackets, the induced bracket
//! `[a,b]_alpha = [a,b] + [alpha(a),b] + [a,alpha(b)]` and its Jacobiator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::carrier::FieldHomAlgebra;
use crate::dsl::{builtin, TypeName, TypeTag};
use crate::error::{Error, Result};
use crate::eval::{
    central_series, holds_multilinear, is_lie, jacobiator, morphism_defect, plain_jacobiator, twisted_bracket,
};
use crate::field::{self, Matrix, Prime, Vector};
use TypeName::*;

/// Seed used by every randomized check unless told otherwise.
pub const DEFAULT_SEED: u64 = 0x6a09_e667;

fn matrix(p: Prime, rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| p.reduce(v)).collect()).collect()).expect("square literal")
}

/// K^3 with `[l,m] = (l1 m3 - l3 m1, 0, l2 m3 - l3 m2)` and
/// `alpha(l) = (l2, l3, 0)`. Not Lie, but Hom-Lie of type III.
pub fn example_k3(p: Prime) -> Result<FieldHomAlgebra> {
    if p.get() <= 3 {
        return Err(Error::InvalidSpec("the K^3 example needs p > 3".into()));
    }
    let alpha = matrix(p, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    FieldHomAlgebra::skew_from_brackets(p, 3, &[(0, 2, vec![1, 0, 0]), (1, 2, vec![0, 0, 1])], alpha)
}

/// K^2 with `[l,m] = (0, l1 m2 - l2 m1)` and `alpha(l) = (l1 + l2, l2)`.
/// Lie, of type I1 but not I2.
pub fn example_k2(p: Prime) -> Result<FieldHomAlgebra> {
    if p.get() == 2 {
        return Err(Error::InvalidSpec("the K^2 example needs odd p".into()));
    }
    FieldHomAlgebra::skew_from_brackets(p, 2, &[(0, 1, vec![0, 1])], matrix(p, &[&[1, 1], &[0, 1]]))
}

/// sl2 in the basis (e, f, h): `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2(p: Prime, alpha: Matrix) -> Result<FieldHomAlgebra> {
    FieldHomAlgebra::skew_from_brackets(
        p,
        3,
        &[(0, 1, vec![0, 0, 1]), (0, 2, vec![-2, 0, 0]), (1, 2, vec![0, 2, 0])],
        alpha,
    )
}

/// `[e1,e2] = e3`.
pub fn heisenberg(p: Prime, alpha: Matrix) -> Result<FieldHomAlgebra> {
    FieldHomAlgebra::skew_from_brackets(p, 3, &[(0, 1, vec![0, 0, 1])], alpha)
}

/// `[e1,e2] = e2`.
pub fn solvable(p: Prime, alpha: Matrix) -> Result<FieldHomAlgebra> {
    FieldHomAlgebra::skew_from_brackets(p, 2, &[(0, 1, vec![0, 1])], alpha)
}

pub fn random_alpha<R: Rng>(rng: &mut R, p: Prime, dim: usize) -> Matrix {
    let rows = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(0..p.get())).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

/// Random skew bracket on `dim` basis vectors.
pub fn random_skew<R: Rng>(rng: &mut R, p: Prime, dim: usize, alpha: Matrix) -> Result<FieldHomAlgebra> {
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            brackets.push((i, j, (0..dim).map(|_| i64::from(rng.gen_range(0..p.get()))).collect()));
        }
    }
    FieldHomAlgebra::skew_from_brackets(p, dim, &brackets, alpha)
}

/// Independent generator for sample `index` of a sweep seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn triples(d: usize) -> impl Iterator<Item = (Vector, Vector, Vector)> {
    (0..d * d * d).map(move |n| {
        (field::unit_vector(d, n / (d * d)), field::unit_vector(d, n / d % d), field::unit_vector(d, n % d))
    })
}

fn lie_holds(a: &FieldHomAlgebra, name: TypeName) -> Result<bool> {
    holds_multilinear(a, &builtin(name.lie()))
}

fn require_lie(a: &FieldHomAlgebra) -> Result<()> {
    if is_lie(a)? {
        Ok(())
    } else {
        Err(Error::HypothesisNotMet("the bracket satisfies the Jacobi identity".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub text: String,
    pub expected: bool,
    pub observed: bool,
}

impl Claim {
    fn new(text: &str, expected: bool, observed: bool) -> Self {
        Claim { text: text.to_string(), expected, observed }
    }

    pub fn ok(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieFixture {
    pub name: &'static str,
    pub algebra: FieldHomAlgebra,
    pub claims: Vec<Claim>,
}

impl LieFixture {
    pub fn all_ok(&self) -> bool {
        self.claims.iter().all(Claim::ok)
    }
}

/// The named Lie-side fixtures with their claims evaluated.
pub fn lie_fixtures(p: Prime) -> Result<Vec<LieFixture>> {
    let k3 = example_k3(p)?;
    let e = k3.basis();
    let v2 = &central_series(&k3, 1)?[1];
    let k3_claims = vec![
        Claim::new("Jacobi identity", false, is_lie(&k3)?),
        Claim::new("J(e1,e2,e3) = e1", true, plain_jacobiator(&k3, &e[0], &e[1], &e[2]) == e[0]),
        Claim::new("type III", true, lie_holds(&k3, III)?),
        Claim::new("alpha vanishes on V^2", false, v2.iter().all(|v| field::is_zero(&k3.twist(v)))),
    ];

    let k2 = example_k2(p)?;
    let e = k2.basis();
    let inner = k2.product(&k2.twist(&e[1]), &e[1]);
    let k2_claims = vec![
        Claim::new("Jacobi identity", true, is_lie(&k2)?),
        Claim::new("type I1", true, lie_holds(&k2, I1)?),
        Claim::new("type I2", false, lie_holds(&k2, I2)?),
        Claim::new("[e1,[alpha(e2),e2]] = 0", false, field::is_zero(&k2.product(&e[0], &inner))),
    ];

    // K^3 bracket, twist killing V^2 = <e1, e3>
    let kernel = k3.with_alpha(matrix(p, &[&[0, 1, 0], &[0, 1, 0], &[0, 0, 0]]))?;
    let v2 = &central_series(&kernel, 1)?[1];
    let kernel_claims = vec![
        Claim::new("alpha vanishes on V^2", true, v2.iter().all(|v| field::is_zero(&kernel.twist(v)))),
        Claim::new("type III", true, lie_holds(&kernel, III)?),
    ];

    let morph = solvable(p, matrix(p, &[&[1, 0], &[0, 3]]))?;
    let b = morph.basis();
    let is_morphism = b.iter().all(|u| b.iter().all(|v| field::is_zero(&morphism_defect(&morph, u, v))));
    let morph_claims = vec![
        Claim::new("alpha is a morphism", true, is_morphism),
        Claim::new("induced bracket is Lie", true, is_lie(&twisted_bracket(&morph)?)?),
    ];

    Ok(vec![
        LieFixture { name: "K3-example", algebra: k3, claims: k3_claims },
        LieFixture { name: "K2-example", algebra: k2, claims: k2_claims },
        LieFixture { name: "central-series-kernel", algebra: kernel, claims: kernel_claims },
        LieFixture { name: "solvable-morphism", algebra: morph, claims: morph_claims },
    ])
}

fn vanishes_on_basis(a: &FieldHomAlgebra, f: impl Fn(&[u32], &[u32], &[u32]) -> Result<Vector>) -> Result<bool> {
    for (x, y, z) in triples(a.dim()) {
        if !field::is_zero(&f(&x, &y, &z)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn j_sum(a: &FieldHomAlgebra, names: &[TypeName], x: &[u32], y: &[u32], z: &[u32]) -> Result<Vector> {
    let p = a.prime();
    let mut acc = vec![0; a.dim()];
    for n in names {
        acc = p.vadd(&acc, &jacobiator(a, n.lie(), x, y, z)?);
    }
    Ok(acc)
}

/// For a Lie bracket: `J^I1 + J^I2 + J^I3 = 0` and its S-image
/// `J^II1 + J^II2 + J^II3 = 0` on all basis triples.
pub fn verify_property9(a: &FieldHomAlgebra) -> Result<bool> {
    require_lie(a)?;
    Ok(vanishes_on_basis(a, |x, y, z| j_sum(a, &[I1, I2, I3], x, y, z))?
        && vanishes_on_basis(a, |x, y, z| j_sum(a, &[II1, II2, II3], x, y, z))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub i1: bool,
    pub i2: bool,
    pub ii1: bool,
    pub ii2: bool,
}

impl InclusionReport {
    /// I2 implies I1, and II2 implies II1.
    pub fn holds(&self) -> bool {
        (!self.i2 || self.i1) && (!self.ii2 || self.ii1)
    }
}

pub fn verify_prop11(a: &FieldHomAlgebra) -> Result<InclusionReport> {
    require_lie(a)?;
    Ok(InclusionReport {
        i1: lie_holds(a, I1)?,
        i2: lie_holds(a, I2)?,
        ii1: lie_holds(a, II1)?,
        ii2: lie_holds(a, II2)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub samples: u64,
    pub failures: u64,
    /// Twist of the lowest-index failing sample.
    pub first_failure: Option<Vec<Vec<u32>>>,
}

/// Runs `check` on the bracket of `a` under `samples` random twists.
pub fn sweep_alpha<F>(a: &FieldHomAlgebra, samples: u64, seed: u64, check: F) -> Result<SweepReport>
where
    F: Fn(&FieldHomAlgebra) -> Result<bool> + Sync,
{
    let results = (0..samples)
        .into_par_iter()
        .map(|i| {
            let alpha = random_alpha(&mut sample_rng(seed, i), a.prime(), a.dim());
            let b = a.with_alpha(alpha)?;
            Ok((check(&b)?, b))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = results.iter().filter(|(ok, _)| !ok).count() as u64;
    let first_failure = results.iter().find(|(ok, _)| !ok).map(|(_, b)| b.alpha().rows().to_vec());
    Ok(SweepReport { seed, samples, failures, first_failure })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub triples: usize,
    /// Jacobiator of the induced bracket equals the nine-term expansion.
    pub direct_equals_nine_term: bool,
    /// Jacobiator of the induced bracket equals J + the six J's of types
    /// I1, I2, I3, II, II2, II3.
    pub six_term_residual_zero: bool,
    /// The residual against the six-term form is exactly the cyclic sums of
    /// `[x,alpha([alpha(y),z])]` and `[x,alpha([y,alpha(z)])]`.
    pub residual_equals_omitted: bool,
    /// All six J's vanish on basis triples.
    pub six_types_hold: bool,
    pub bracket_is_lie: bool,
    pub induced_is_lie: bool,
}

impl ExpansionReport {
    /// When all six types hold: the bracket is Lie iff the induced one is.
    pub fn equivalence_consistent(&self) -> bool {
        !self.six_types_hold || self.bracket_is_lie == self.induced_is_lie
    }
}

const SIX: [TypeName; 6] = [I1, I2, I3, II, II2, II3];

type Trilinear<'a> = &'a dyn Fn(&[u32], &[u32], &[u32]) -> Vector;

/// Compares three computations of the Jacobiator of the induced bracket.
pub fn expansion_residuals(a: &FieldHomAlgebra) -> Result<ExpansionReport> {
    if !a.is_skew() {
        return Err(Error::NotSkew);
    }
    let p = a.prime();
    let induced = twisted_bracket(a)?;
    let br = |u: &[u32], v: &[u32]| a.product(u, v);
    let al = |u: &[u32]| a.twist(u);
    let sum = |vs: &[Vector]| vs.iter().fold(vec![0; a.dim()], |acc, v| p.vadd(&acc, v));
    let cyc = |x: &Vector, y: &Vector, z: &Vector, f: Trilinear| sum(&[f(x, y, z), f(y, z, x), f(z, x, y)]);
    let nine = |x: &[u32], y: &[u32], z: &[u32]| {
        sum(&[
            br(x, &br(y, z)),
            br(x, &br(&al(y), z)),
            br(x, &br(y, &al(z))),
            br(&al(x), &br(y, z)),
            br(&al(x), &br(&al(y), z)),
            br(&al(x), &br(y, &al(z))),
            br(x, &al(&br(y, z))),
            br(x, &al(&br(&al(y), z))),
            br(x, &al(&br(y, &al(z)))),
        ])
    };
    let omitted = |x: &[u32], y: &[u32], z: &[u32]| p.vadd(&br(x, &al(&br(&al(y), z))), &br(x, &al(&br(y, &al(z)))));

    let mut direct_equals_nine_term = true;
    let mut six_term_residual_zero = true;
    let mut residual_equals_omitted = true;
    let mut six_types_hold = true;
    let mut triples_seen = 0;
    for (x, y, z) in triples(a.dim()) {
        triples_seen += 1;
        let direct = plain_jacobiator(&induced, &x, &y, &z);
        let expanded = cyc(&x, &y, &z, &nine);
        let js = j_sum(a, &SIX, &x, &y, &z)?;
        let six = p.vadd(&plain_jacobiator(a, &x, &y, &z), &js);
        let residual = p.vsub(&direct, &six);
        direct_equals_nine_term &= direct == expanded;
        six_term_residual_zero &= field::is_zero(&residual);
        residual_equals_omitted &= residual == cyc(&x, &y, &z, &omitted);
        for n in SIX {
            six_types_hold &= field::is_zero(&jacobiator(a, n.lie(), &x, &y, &z)?);
        }
    }
    Ok(ExpansionReport {
        triples: triples_seen,
        direct_equals_nine_term,
        six_term_residual_zero,
        residual_equals_omitted,
        six_types_hold,
        bracket_is_lie: is_lie(a)?,
        induced_is_lie: is_lie(&induced)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropStatus {
    HypothesisNotMet,
    Confirmed,
    Refuted,
}

impl PropStatus {
    fn judge(hypothesis: bool, conclusion: bool) -> Self {
        match (hypothesis, conclusion) {
            (false, _) => PropStatus::HypothesisNotMet,
            (true, true) => PropStatus::Confirmed,
            (true, false) => PropStatus::Refuted,
        }
    }
}

/// Whether the induced bracket of a Lie algebra is Lie, under either
/// "alpha is a morphism" or "types II and II1".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedLieReport {
    pub morphism: bool,
    pub type_ii: bool,
    pub type_ii1: bool,
    pub induced_is_lie: bool,
    /// Morphism hypothesis.
    pub via_morphism: PropStatus,
    /// Types II and II1 hypothesis.
    pub via_types: PropStatus,
}

/// Reports rather than asserts: the conclusion is checked whenever one of the
/// hypotheses holds, and a failure is recorded as `Refuted`.
pub fn verify_prop13_14(a: &FieldHomAlgebra) -> Result<InducedLieReport> {
    require_lie(a)?;
    let b = a.basis();
    let morphism = b.iter().all(|u| b.iter().all(|v| field::is_zero(&morphism_defect(a, u, v))));
    let type_ii = lie_holds(a, II)?;
    let type_ii1 = lie_holds(a, II1)?;
    let induced_is_lie = is_lie(&twisted_bracket(a)?)?;
    Ok(InducedLieReport {
        morphism,
        type_ii,
        type_ii1,
        induced_is_lie,
        via_morphism: PropStatus::judge(morphism, induced_is_lie),
        via_types: PropStatus::judge(type_ii && type_ii1, induced_is_lie),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedLieSearch {
    pub seed: u64,
    pub samples: u64,
    /// Samples meeting the hypothesis.
    pub hits: u64,
    pub refutations: u64,
    pub first_refutation: Option<Vec<Vec<u32>>>,
}

/// Random twists of a Lie bracket: counts those of types II and II1 (or
/// morphisms, with `morphisms`) and how many of them give a non-Lie induced
/// bracket. Sample 0 is the zero twist, which always meets both hypotheses.
pub fn search_induced_lie(a: &FieldHomAlgebra, samples: u64, seed: u64, morphisms: bool) -> Result<InducedLieSearch> {
    require_lie(a)?;
    let reports = (0..samples)
        .into_par_iter()
        .map(|i| {
            let alpha =
                if i == 0 { Matrix::zero(a.dim()) } else { random_alpha(&mut sample_rng(seed, i), a.prime(), a.dim()) };
            let b = a.with_alpha(alpha)?;
            let r = verify_prop13_14(&b)?;
            let status = if morphisms { r.via_morphism } else { r.via_types };
            Ok((status, b))
        })
        .collect::<Result<Vec<_>>>()?;
    let hits = reports.iter().filter(|(s, _)| *s != PropStatus::HypothesisNotMet).count() as u64;
    let refuted: Vec<_> = reports.iter().filter(|(s, _)| *s == PropStatus::Refuted).collect();
    Ok(InducedLieSearch {
        seed,
        samples,
        hits,
        refutations: refuted.len() as u64,
        first_refutation: refuted.first().map(|(_, b)| b.alpha().rows().to_vec()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfAdjointReport {
    pub self_adjoint: bool,
    /// `J^I2 + J^I3` vanishes on basis triples.
    pub sum_vanishes: bool,
    pub i2_vanishes: bool,
    pub i3_vanishes: bool,
    /// For self-adjoint twists: the sum vanishing forces both to vanish.
    pub implication_holds: Option<bool>,
    /// For self-adjoint twists: `[alpha(x), x] = 0` on random samples.
    pub diagonal_vanishes: Option<bool>,
    pub seed: u64,
}

/// Probes the self-adjointness condition `[alpha(x),y] = [x,alpha(y)]`.
pub fn self_adjointness_probe(a: &FieldHomAlgebra, seed: u64) -> Result<SelfAdjointReport> {
    if a.prime().get() == 2 {
        return Err(Error::HypothesisNotMet("odd characteristic".into()));
    }
    if !a.is_skew() {
        return Err(Error::NotSkew);
    }
    let b = a.basis();
    let self_adjoint = b.iter().all(|u| b.iter().all(|v| a.product(&a.twist(u), v) == a.product(u, &a.twist(v))));
    let sum_vanishes = vanishes_on_basis(a, |x, y, z| j_sum(a, &[I2, I3], x, y, z))?;
    let i2_vanishes = lie_holds(a, I2)?;
    let i3_vanishes = lie_holds(a, I3)?;
    let (implication_holds, diagonal_vanishes) = if self_adjoint {
        let mut rng = sample_rng(seed, 0);
        let diag = (0..100).all(|_| {
            let x: Vector = (0..a.dim()).map(|_| rng.gen_range(0..a.prime().get())).collect();
            field::is_zero(&a.product(&a.twist(&x), &x))
        });
        (Some(!sum_vanishes || (i2_vanishes && i3_vanishes)), Some(diag))
    } else {
        (None, None)
    };
    Ok(SelfAdjointReport {
        self_adjoint,
        sum_vanishes,
        i2_vanishes,
        i3_vanishes,
        implication_holds,
        diagonal_vanishes,
        seed,
    })
}

/// The lie-family tags in catalog order, for reporting.
pub fn lie_tags() -> Vec<TypeTag> {
    TypeTag::all_lie().collect()
}
