use homlab_core::carrier::{from_relations, FiniteHomMagma};
use homlab_core::dsl::TypeName::{self, *};
use homlab_core::hierarchy::{check_edge, lemma_equalities, paper_fixtures, Edge, EdgeStatus, ImplicationGraph, Lemma};
use homlab_core::search::{enumerate_models_with, find_model_with, isomorphic, SearchSpec};
use homlab_core::type_profile;

fn all_models(max_n: usize) -> Vec<FiniteHomMagma> {
    let spec = SearchSpec { prune_isomorphs: false, ..SearchSpec::new(max_n, &[], &[]) };
    enumerate_models_with(&spec, usize::MAX, 4).unwrap()
}

#[test]
fn model_counts_up_to_three() {
    let ms = all_models(3);
    assert_eq!(ms.len(), 2 + 27 + 16384);
}

#[test]
fn every_edge_holds_on_every_small_model() {
    let graph = ImplicationGraph::standard();
    for m in all_models(3) {
        let p = type_profile(&m);
        for e in &graph.edges {
            if e.premises.iter().all(|t| p.contains(t.assoc())) {
                assert!(p.contains(e.conclusion.assoc()), "{} fails on {}", e.id(), m.relations());
            }
        }
        assert_eq!(p.contains(I1.assoc()), p.contains(II.assoc()), "{}", m.relations());
    }
}

#[test]
fn lemma_suites_hold_up_to_three() {
    let ms = all_models(3);
    for lemma in Lemma::ALL {
        let mut tested = 0;
        for m in ms.iter().filter(|m| lemma.hypothesis_met(m).unwrap()) {
            tested += 1;
            assert!(lemma_equalities(m, lemma).unwrap(), "{} on {}", lemma.id(), m.relations());
        }
        assert!(tested > 0);
    }
}

fn fixture(id: &str) -> FiniteHomMagma {
    paper_fixtures().into_iter().find(|f| f.id == id).unwrap().load().unwrap()
}

fn appears_in(spec: &SearchSpec, m: &FiniteHomMagma) -> bool {
    enumerate_models_with(spec, usize::MAX, 2).unwrap().iter().any(|c| isomorphic(c, m))
}

#[test]
fn listed_countermodels_are_found_by_enumeration() {
    // the first model found differs, but the listed one is among the models
    let spec = SearchSpec::new(3, &[II2, II3], &[II1]);
    assert!(appears_in(&spec, &fixture("10")));
    let spec = SearchSpec::new(3, &[II2], &[I2]);
    assert!(appears_in(&spec, &fixture("6")));
}

#[test]
fn added_false_edge_gets_a_countermodel() {
    let edge = Edge { premises: vec![II2], conclusion: I2, anchor: "deliberately false" };
    let r = check_edge(&edge, 3).unwrap();
    let EdgeStatus::Countermodel(rel) = r.status else { panic!("expected a countermodel") };
    let m = from_relations(&rel).unwrap();
    let p = type_profile(&m);
    assert!(p.contains(II2.assoc()) && !p.contains(I2.assoc()));
}

#[test]
fn exotic_separation_needs_four_elements() {
    let names: &[TypeName] = &[I2, II1, II3];
    let v = find_model_with(&SearchSpec::new(3, names, &[II2]), 2).unwrap();
    assert!(v.is_exhausted());
    let v = find_model_with(&SearchSpec::new(4, names, &[II2]), 2).unwrap();
    assert_eq!(v.countermodel().unwrap().nonzero_count(), 4);
    assert!(SearchSpec::new(4, names, &[II2]).accepts(&fixture("11")).unwrap());
}

#[test]
fn order_three_printed_direction_is_refuted() {
    let v = find_model_with(&SearchSpec::new(3, &[III, IIIp, IIIpp], &[I1]), 1).unwrap();
    let m = v.countermodel().expect("countermodel");
    assert_eq!(m.nonzero_count(), 2);
}

#[test]
fn order_three_separation_needs_three_elements() {
    let v = find_model_with(&SearchSpec::new(2, &[IIIpp], &[III]), 1).unwrap();
    assert!(v.is_exhausted());
    let spec = SearchSpec::new(3, &[IIIpp], &[III]);
    let v = find_model_with(&spec, 1).unwrap();
    let found = v.countermodel().unwrap();
    assert_eq!(found, &from_relations("e3*e2=e1; alpha: e3->e1").unwrap());
    assert!(spec.accepts(found).unwrap());
    assert!(spec.accepts(&from_relations("e3*e3=e1; alpha: e2->e1").unwrap()).unwrap());
}

#[test]
fn strong_premises_also_exhaust_at_four() {
    for (p, c) in [(I1, II), (II, I1), (I1, I3)] {
        let v = find_model_with(&SearchSpec::new(4, &[p], &[c]), 1).unwrap();
        assert!(v.is_exhausted(), "{p} => {c}");
    }
}
