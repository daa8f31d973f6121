use std::sync::Arc;

use super::*;
use crate::exactlin::Field;
use crate::knit::{knit_full_dynkin, knit_preprojective};
use crate::mesh::find_sections;
use crate::quiver::Family;

fn full(f: Family) -> ARQuiver {
    knit_full_dynkin(&Arc::new(f.build().unwrap()), Field::Rational).unwrap()
}

fn d4() -> Family {
    Family::D {
        n: 4,
        orientation: None,
    }
}

#[test]
fn direct_on_small_dynkin() {
    for f in [Family::LinearA(3), Family::AlternatingA(4), d4()] {
        let ar = full(f);
        let v = check_standard_direct(&ar).unwrap();
        assert!(v.is_standard(), "{v:?}");
        assert_eq!(v.tables["mesh_hom"], v.tables["rep_hom"]);
    }
}

#[test]
fn kronecker_window_is_inconclusive() {
    let q = Arc::new(Family::Kronecker.build().unwrap());
    let ar = knit_preprojective(&q, Field::Rational, 4).unwrap();
    let v = check_standard_direct(&ar).unwrap();
    assert_eq!(v.result, Outcome::WindowInconclusive);
    assert!(v.conditions.values().all(|&c| c));
    assert_eq!(v.tables["mesh_hom"], v.tables["rep_hom"]);
    let g = check_generalized_standard(&ar).unwrap();
    assert_eq!(g.result, Outcome::WindowInconclusive);
}

#[test]
fn sections_agree_on_a3() {
    let ar = full(Family::LinearA(3));
    let tq = TranslationQuiver::from_ar(&ar).unwrap();
    let sections = find_sections(&tq);
    assert!(!sections.is_empty());
    for s in &sections {
        assert!(check_theorem_sections(&ar, s).unwrap().is_standard());
        assert!(check_theorem_proper(&ar, s).unwrap().is_standard());
        let m = check_module_criterion(&ar, s).unwrap();
        assert!(m.is_standard());
        assert_eq!(m.conditions.len(), 2);
    }
}

#[test]
fn invalid_section_refused() {
    let ar = full(Family::LinearA(2));
    let tq = TranslationQuiver::from_ar(&ar).unwrap();
    let mut s = find_sections(&tq).remove(0);
    s.members = vec![0, 1, 2];
    assert_eq!(
        check_theorem_proper(&ar, &s).unwrap_err(),
        StandardError::InvalidSection
    );
}

#[test]
fn wing_and_schurian() {
    let ar = full(Family::LinearA(4));
    let v = check_wing_criterion(&ar, None).unwrap();
    assert!(v.is_standard(), "{v:?}");
    let tq = TranslationQuiver::from_ar(&ar).unwrap();
    let chart = detect_wing(&tq).unwrap();
    let report = check_schurian(&ar, &chart).unwrap();
    assert!(report.schurian && report.matches_mesh);
    assert_eq!(report.max_dim, 1);
    let d = full(d4());
    assert_eq!(
        check_wing_criterion(&d, None).unwrap_err(),
        StandardError::ShapeNotDetected
    );
}

#[test]
fn generalized_standard_on_a4() {
    let ar = full(Family::LinearA(4));
    let v = check_generalized_standard(&ar).unwrap();
    assert!(v.is_standard());
    assert!(v.stabilized_at.unwrap() <= v.diameter.unwrap() + 1);
}

#[test]
fn extra_arrow_is_caught() {
    let ar = full(Family::LinearA(3));
    let a = &ar.arrows[0];
    let bad = fixtures::extra_arrow(&ar, a.source, a.target).unwrap();
    assert!(TranslationQuiver::from_ar(&bad).is_ok());
    let v = check_standard_direct(&bad).unwrap();
    assert!(v.is_not_standard());
    assert!(matches!(v.witness, Witness::HomMismatch { .. }));
    assert!(witness_holds(&bad, &v.witness).unwrap());
    assert!(!witness_holds(&ar, &v.witness).unwrap());
}

#[test]
fn non_brick_is_caught() {
    let ar = full(d4());
    let bad = fixtures::non_brick(&ar, 5).unwrap();
    let v = check_standard_direct(&bad).unwrap();
    assert!(v.is_not_standard());
    assert_eq!(
        v.witness,
        Witness::NonBrick {
            node: ar.nodes[5].id.clone(),
            end_dim: 4,
            auto_field_dim: Some(4),
        }
    );
    assert!(witness_holds(&bad, &v.witness).unwrap());
}

#[test]
fn fabricated_hom_is_caught_both_ways() {
    let ar = full(Family::LinearA(3));
    let tq = TranslationQuiver::from_ar(&ar).unwrap();
    let x = (0..ar.node_count())
        .find(|&v| ar.tau(v).is_some() && ar.tau_inverse(v).is_some())
        .unwrap();
    let bad = fixtures::fabricated_hom(&ar, x).unwrap();
    let s = find_sections(&tq).into_iter().find(|s| s.members.contains(&x)).unwrap();
    let m = check_module_criterion(&bad, &s).unwrap();
    assert!(m.is_not_standard());
    assert!(m.conditions.values().all(|&c| !c));
    assert!(witness_holds(&bad, &m.witness).unwrap());
    assert!(check_theorem_sections(&bad, &s).unwrap().is_not_standard());
    assert!(check_theorem_proper(&bad, &s).unwrap().is_not_standard());
    assert!(check_standard_direct(&bad).unwrap().is_not_standard());
}

#[test]
fn verdict_json_roundtrip() {
    let ar = full(Family::LinearA(2));
    let v = check_standard_direct(&ar).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    assert!(text.contains("\"result\":\"standard\""));
    assert!(text.contains("\"criterion\":\"direct\""));
    let back: Verdict = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v);
}
