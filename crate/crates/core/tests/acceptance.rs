//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use homlab_core::carrier::FieldHomAlgebra;
use homlab_core::dsl::TypeName::{self, *};
use homlab_core::eval::{central_series, is_lie, jacobiator, plain_jacobiator, type_profile};
use homlab_core::hierarchy::{
    cyclic_group_algebra, inverse_twist_check, lemma_equalities, paper_fixtures, verify_fixture, verify_hierarchy_with,
    ImplicationGraph, Lemma,
};
use homlab_core::lie_suite::{
    example_k2, example_k3, expansion_residuals, random_alpha, random_skew, sample_rng, sl2, solvable, sweep_alpha,
    verify_property9, DEFAULT_SEED,
};
use homlab_core::search::{
    canonical_form, enumerate_models_with, find_model_with, verify_implication_with, Outcome, SearchSpec,
};
use homlab_core::{field, weak_left_unit, Matrix, Prime};
use rand::seq::SliceRandom;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn timed(limit: Duration, start: Instant) -> Check {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.2?}", t))
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn fixtures() -> Check {
    let start = Instant::now();
    let fs = paper_fixtures();
    if fs.len() != 16 {
        return Err(format!("{} fixtures", fs.len()));
    }
    for f in &fs {
        verify_fixture(f).map_err(|e| e.to_string())?;
    }
    let corrected: Vec<&str> = fs.iter().filter(|f| f.erratum.is_some()).map(|f| f.id.as_str()).collect();
    timed(Duration::from_secs(1), start)
        .map(|t| format!("16/16 in {t}; corrected transcriptions: {}", corrected.join(", ")))
}

fn exhaust_edges(workers: usize) -> Result<Duration, String> {
    let start = Instant::now();
    for e in ImplicationGraph::standard().edges {
        let v = verify_implication_with(&e.premises, e.conclusion, 3, workers).map_err(|e| e.to_string())?;
        if v.outcome != Outcome::ExhaustedUpTo(3) {
            return Err(format!("{}: {}", e.id(), v.countermodel().map(|m| m.relations()).unwrap_or_default()));
        }
    }
    Ok(start.elapsed())
}

fn hierarchy() -> Check {
    let single = exhaust_edges(1)?;
    let four = exhaust_edges(4)?;
    if single > Duration::from_secs(600) || four > Duration::from_secs(180) {
        return Err(format!("too slow: {single:.2?} single, {four:.2?} with 4 workers"));
    }
    Ok(format!("16 edges exhausted at n=3; {single:.2?} single-threaded, {four:.2?} with 4 workers"))
}

fn i1_iff_ii() -> Check {
    for (p, c) in [(I1, II), (II, I1)] {
        let v = verify_implication_with(&[p], c, 3, 1).map_err(|e| e.to_string())?;
        if !v.is_exhausted() {
            return Err(format!("{p} => {c} has a countermodel"));
        }
    }
    Ok("both directions exhausted at n=3".into())
}

fn lemmas() -> Check {
    let spec = SearchSpec { prune_isomorphs: false, ..SearchSpec::new(2, &[], &[]) };
    let all = enumerate_models_with(&spec, usize::MAX, 1).map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for lemma in Lemma::ALL {
        let mut tested = 0;
        for m in &all {
            if lemma.hypothesis_met(m).map_err(|e| e.to_string())? {
                tested += 1;
                if !lemma_equalities(m, lemma).map_err(|e| e.to_string())? {
                    return Err(format!("{} fails on {}", lemma.id(), m.relations()));
                }
            }
        }
        summary.push(format!("{} {tested}", lemma.id()));
    }
    Ok(format!("{} models; zero violations ({})", all.len(), summary.join(", ")))
}

fn property9() -> Check {
    let p = Prime::new(7).unwrap();
    let brackets: Vec<(&str, FieldHomAlgebra)> = vec![
        ("abelian", FieldHomAlgebra::skew_from_brackets(p, 3, &[], Matrix::zero(3)).unwrap()),
        ("solvable", solvable(p, Matrix::zero(2)).unwrap()),
        ("sl2", sl2(p, Matrix::zero(3)).unwrap()),
    ];
    for (name, a) in &brackets {
        let r = sweep_alpha(a, 1000, DEFAULT_SEED, verify_property9).map_err(|e| e.to_string())?;
        if r.failures > 0 {
            return Err(format!("{name}: {} failures, first alpha {:?}", r.failures, r.first_failure));
        }
    }
    Ok(format!("3 brackets x 1000 twists over Z/7, seed {DEFAULT_SEED:#x}"))
}

fn expansion() -> Check {
    let p = Prime::new(7).unwrap();
    let mut nonzero = 0;
    let mut non_lie = 0;
    for i in 0..200 {
        let mut rng = sample_rng(DEFAULT_SEED, i);
        let alpha = random_alpha(&mut rng, p, 3);
        let a = random_skew(&mut rng, p, 3, alpha).unwrap();
        non_lie += usize::from(!is_lie(&a).unwrap());
        let r = expansion_residuals(&a).map_err(|e| e.to_string())?;
        if !r.direct_equals_nine_term {
            return Err(format!("sample {i}: direct Jacobiator differs from the nine-term expansion"));
        }
        if !r.residual_equals_omitted {
            return Err(format!("sample {i}: residual is not the two omitted sums"));
        }
        nonzero += usize::from(!r.six_term_residual_zero);
    }
    Ok(format!(
        "200 brackets ({non_lie} non-Lie): nine-term exact; six-term residual nonzero on {nonzero}, always equal to the two omitted cyclic sums"
    ))
}

fn examples() -> Check {
    let p = Prime::new(7).unwrap();
    let k3 = example_k3(p).unwrap();
    let e = k3.basis();
    let v2 = &central_series(&k3, 1).unwrap()[1];
    let want_v2 = vec![e[0].clone(), e[2].clone()];
    let checks = [
        ("K3 not Lie", !is_lie(&k3).unwrap()),
        ("K3 J(e1,e2,e3) = e1", plain_jacobiator(&k3, &e[0], &e[1], &e[2]) == e[0]),
        ("K3 type III", jacobiator_vanishes(&k3, III)),
        ("K3 alpha(V^2) != 0", v2.iter().any(|v| !field::is_zero(&k3.twist(v)))),
        ("K3 V^2 = <e1,e3>", *v2 == want_v2),
    ];
    let k2 = example_k2(p).unwrap();
    let more = [
        ("K2 type I1", jacobiator_vanishes(&k2, I1)),
        ("K2 not type I2", !jacobiator_vanishes(&k2, I2)),
        ("K2 Lie", is_lie(&k2).unwrap()),
    ];
    for (name, ok) in checks.iter().chain(more.iter()) {
        if !ok {
            return Err(format!("{name} does not hold"));
        }
    }
    Ok("K3 and K2 examples reproduced exactly".into())
}

fn jacobiator_vanishes(a: &FieldHomAlgebra, name: TypeName) -> bool {
    let b = a.basis();
    b.iter().all(|x| b.iter().all(|y| b.iter().all(|z| field::is_zero(&jacobiator(a, name.lie(), x, y, z).unwrap()))))
}

fn inverse_twist() -> Check {
    let a = cyclic_group_algebra(Prime::new(7).unwrap()).unwrap();
    if !type_profile(&a).contains(I1.assoc()) {
        return Err("group algebra is not of type I1".into());
    }
    if weak_left_unit(&a).is_none() {
        return Err("group algebra is not weakly left unital".into());
    }
    let r = inverse_twist_check(&a).map_err(|e| e.to_string())?;
    if r.holds() {
        Ok("beta-twist satisfies I3 and II".into())
    } else {
        Err(format!("I3: {}, II: {}", r.satisfies_i3, r.satisfies_ii))
    }
}

fn determinism() -> Check {
    let specs = [
        SearchSpec::new(3, &[I2], &[I3]),
        SearchSpec::new(3, &[II2, II3], &[II1]),
        SearchSpec::new(3, &[I1], &[I3]),
        SearchSpec::new(4, &[I2, II1, II3], &[II2]),
    ];
    for spec in &specs {
        let outputs: Vec<String> = [1, 2, 8]
            .iter()
            .map(|&w| serde_json::to_string(&find_model_with(spec, w).unwrap().to_json()).unwrap())
            .collect();
        if outputs.iter().any(|o| *o != outputs[0]) {
            return Err(format!("search output differs across workers for {spec:?}"));
        }
    }
    let reports: Vec<String> =
        [1, 2, 8].iter().map(|&w| serde_json::to_string(&verify_hierarchy_with(3, w).unwrap()).unwrap()).collect();
    if reports.iter().any(|r| *r != reports[0]) {
        return Err("hierarchy report differs across workers".into());
    }
    Ok("search and hierarchy JSON identical for 1, 2, 8 workers".into())
}

fn soundness() -> Check {
    let mut found = 0;
    for i in 0..500 {
        let mut rng = sample_rng(DEFAULT_SEED, i);
        let mut names = TypeName::ALL.to_vec();
        names.shuffle(&mut rng);
        let nr = rng.gen_range(0..=3);
        let nv = rng.gen_range(0..=2);
        let spec = SearchSpec::new(2, &names[..nr], &names[nr..nr + nv]);
        let v = find_model_with(&spec, 2).map_err(|e| e.to_string())?;
        if let Some(m) = v.countermodel() {
            found += 1;
            if !spec.accepts(m).map_err(|e| e.to_string())? {
                return Err(format!("spec {i}: returned model fails re-verification"));
            }
        }
        let pruned: HashSet<_> =
            enumerate_models_with(&spec, usize::MAX, 2).map_err(|e| e.to_string())?.into_iter().collect();
        let unpruned_spec = SearchSpec { prune_isomorphs: false, ..spec.clone() };
        let unpruned: HashSet<_> = enumerate_models_with(&unpruned_spec, usize::MAX, 2)
            .map_err(|e| e.to_string())?
            .iter()
            .map(canonical_form)
            .collect();
        if pruned != unpruned {
            return Err(format!("spec {i}: pruned and unpruned enumerations disagree"));
        }
    }
    Ok(format!("500 specs, {found} countermodels re-verified, enumerations agree"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fixture regression", fixtures),
        ("positive hierarchy exhaustion", hierarchy),
        ("I1 <=> II", i1_iff_ii),
        ("lemma suites", lemmas),
        ("Lie property J^I1+J^I2+J^I3 = 0", property9),
        ("bilinear expansion oracle", expansion),
        ("K3 / K2 examples", examples),
        ("inverse-twist lemma", inverse_twist),
        ("determinism across workers", determinism),
        ("search soundness", soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
