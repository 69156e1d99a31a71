use std::collections::HashMap;

use pcarr::arrangement::{Arrangement, TripleType};
use pcarr::canon::{automorphism_order, canonical_code, CanonicalCode};
use pcarr::classifier::{
    classify, contains_subarrangement, filter_krupp_triangles, filter_nonkrupp_triangles, ClassifyError, Reason, Status,
};
use pcarr::enumerate::{enumerate_class, extensions, ArrClass, ExtensionMode};
use pcarr::fixtures::{fixture, fixtures, Fixture};
use pcarr::geom::{Circle, CircleArrangement};
use pcarr::realizer::Certificate;

fn arr(name: &str) -> Arrangement {
    fixture(name).unwrap_or_else(|| panic!("fixture {name}")).code.to_arrangement().unwrap()
}

fn krupp() -> Certificate {
    Certificate::from_scene(CircleArrangement::new(vec![
        Circle::new(0, 0, 2),
        Circle::new(2, 0, 2),
        Circle::new(1, 2, 2),
    ]))
    .unwrap()
}

#[test]
fn fixture_annotations_match_their_codes() {
    let mut names: Vec<&str> = fixtures().iter().map(|f| f.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), fixtures().len());
    for f in fixtures() {
        let a = f.code.to_arrangement().unwrap();
        assert_eq!(automorphism_order(&a), f.symmetry, "{}", f.name);
        assert_eq!(canonical_code(&a), f.code, "{} is not stored canonically", f.name);
        assert!(a.flags().connected);
    }
}

#[test]
fn five_circle_fixture_flags() {
    let one = arr("N5^1");
    assert!(one.flags().intersecting && one.flags().cylindrical);
    assert_eq!(one.flags().cell_vector, [0, 0, 6, 4, 8, 0, 4]);
    for name in ["N5^2", "N5^3", "N5^4"] {
        assert!(!arr(name).flags().intersecting, "{name}");
    }
    assert!(!arr("N5^2").flags().cylindrical && !arr("N5^3").flags().cylindrical);
    assert!(arr("N5^4").flags().cylindrical);
    assert_eq!(arr("N5^2").num_crossings(), 16);
    assert_eq!(arr("N5^3").num_crossings(), 18);
}

#[test]
fn nonkrupp_filter() {
    assert_eq!(filter_nonkrupp_triangles(&arr("N6^1")), Ok(true));
    assert_eq!(filter_nonkrupp_triangles(&krupp().code.to_arrangement().unwrap()), Ok(false));
    assert!(matches!(filter_nonkrupp_triangles(&arr("N5^1")), Err(ClassifyError::PrecondViolated(_))));
}

#[test]
fn krupp_filter() {
    assert_eq!(filter_krupp_triangles(&arr("N6^2")), Ok(true));
    assert_eq!(filter_krupp_triangles(&arr("N6^1")), Ok(false));
    let k = krupp().code.to_arrangement().unwrap();
    assert!(matches!(filter_krupp_triangles(&k), Err(ClassifyError::PrecondViolated(_))));
    assert!(matches!(filter_krupp_triangles(&arr("N5^2")), Err(ClassifyError::PrecondViolated(_))));
}

#[test]
fn containment() {
    let n51 = &fixture("N5^1").unwrap().code;
    assert_eq!(contains_subarrangement(&arr("N6^1"), n51), Ok(false));
    let ext = extensions(&arr("N5^1"), ExtensionMode::Connected);
    assert!(!ext.is_empty());
    for e in ext.iter().step_by(7) {
        assert_eq!(contains_subarrangement(e, n51), Ok(true));
    }
    assert!(matches!(contains_subarrangement(&arr("N5^1"), n51), Err(ClassifyError::PrecondViolated(_))));
}

#[test]
fn triple_type_agrees_with_restriction() {
    let k = krupp().code;
    let mut seen = HashMap::new();
    for code in enumerate_class(5, ArrClass::Intersecting).unwrap().iter().step_by(5) {
        let a = code.to_arrangement().unwrap();
        for i in 0..5 {
            for j in i + 1..5 {
                for l in j + 1..5 {
                    let sub = canonical_code(&a.restrict(&[i, j, l]).unwrap());
                    let t = a.triple_type(i, j, l);
                    assert_eq!(t == TripleType::Krupp, sub == k, "{code} ({i},{j},{l})");
                    *seen.entry(t).or_insert(0) += 1;
                }
            }
        }
    }
    assert_eq!(seen.len(), 2);
}

#[test]
fn empty_input_gives_no_records() {
    assert_eq!(classify(&[], &HashMap::new(), fixtures()), Ok(vec![]));
}

#[test]
fn sub_arrangement_inheritance() {
    let ext: Vec<CanonicalCode> =
        extensions(&arr("N5^2"), ExtensionMode::Connected).iter().map(canonical_code).collect();
    let records = classify(&ext, &HashMap::new(), fixtures()).unwrap();
    assert_eq!(records.len(), {
        let mut d = ext.clone();
        d.sort_unstable();
        d.dedup();
        d.len()
    });
    for r in &records {
        assert_eq!(r.status, Status::NonCirc, "{}", r.code);
        assert!(matches!(
            &r.reason,
            Reason::ContainsNoncirc(_) | Reason::ThmNonKruppTriangles | Reason::ThmKruppTriangles
        ));
    }
    assert!(records.iter().any(|r| r.reason == Reason::ContainsNoncirc("N5^2".into())));
    assert!(records.windows(2).all(|w| w[0].code < w[1].code));
}

#[test]
fn certified_fixture_is_a_contradiction() {
    let cert = krupp();
    let bogus = Fixture { name: "bogus".into(), code: cert.code.clone(), symmetry: 48, paper_proof: true };
    let certs = HashMap::from([(cert.code.clone(), cert.clone())]);
    assert_eq!(classify(&[cert.code.clone()], &certs, &[bogus]), Err(ClassifyError::Contradiction(cert.code.clone())));
    let records = classify(&[cert.code.clone()], &certs, fixtures()).unwrap();
    assert_eq!((records[0].status, &records[0].reason), (Status::Realized, &Reason::Certificate));
}

#[test]
fn unverified_certificate_does_not_count() {
    let mut cert = krupp();
    cert.scene = CircleArrangement::new(vec![Circle::new(0, 0, 1), Circle::new(9, 0, 1), Circle::new(20, 0, 1)]);
    let certs = HashMap::from([(cert.code.clone(), cert.clone())]);
    let records = classify(&[cert.code.clone()], &certs, fixtures()).unwrap();
    assert_eq!(records[0].status, Status::Open);
}
