use std::sync::Arc;

use dualfib::anodyne::certify_iota;
use dualfib::cat::examples::{grid, two_fiber};
use dualfib::cat::{full_nerve, FinCategory};
use dualfib::format::{Body, Document, Provenance, SCHEMA};
use dualfib::sset::{standard_simplex, FinPoset, PosetNerve};
use dualfib::twist::twisted_arrow;
use dualfib::Error;
use proptest::prelude::*;
use serde_json::Value;

fn roundtrip(doc: &Document) {
    let text = doc.to_text();
    let back = Document::parse(&text).unwrap();
    assert_eq!(&back, doc);
    assert_eq!(back.to_text(), text);
}

fn fixtures() -> Vec<Document> {
    let tw = twisted_arrow(standard_simplex(2), 3).unwrap();
    let g = Arc::new(grid());
    vec![
        Document::sset(&standard_simplex(3), Provenance::input()),
        Document::sset(full_nerve(g.clone()).unwrap().sset(), Provenance::new(["nerve".to_string()], None)),
        Document::category(&g, Provenance::input()),
        Document::category(&FinCategory::walking_isomorphism(), Provenance::input()),
        Document::functor(&two_fiber().functor, Provenance::input()),
        Document::map(&tw.proj, Provenance::new(["twisted-arrow".to_string()], Some(3))),
        Document::new(Provenance::input(), Body::Certificate(certify_iota(2).unwrap())),
    ]
}

#[test]
fn serialize_parse_roundtrip() {
    for doc in fixtures() {
        roundtrip(&doc);
    }
}

#[test]
fn reconstructed_values_match() {
    let x = standard_simplex(2);
    let doc = Document::sset(&x, Provenance::input());
    let y = Document::parse(&doc.to_text()).unwrap().to_sset().unwrap();
    assert_eq!(y.counts(), x.counts());
    let c = grid();
    let d = Document::parse(&Document::category(&c, Provenance::input()).to_text())
        .unwrap()
        .to_category()
        .unwrap();
    assert_eq!(d.composites(), c.composites());
}

fn mutate(doc: &Document, f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(&doc.to_text()).unwrap();
    f(&mut v);
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn rejects_other_schema_versions() {
    let doc = Document::sset(&standard_simplex(1), Provenance::input());
    let text = mutate(&doc, |v| v["schema"] = Value::from("dualfib/0"));
    let err = Document::parse(&text).unwrap_err();
    assert!(err.to_string().contains(SCHEMA), "{err}");
    let text = mutate(&doc, |v| {
        v.as_object_mut().unwrap().remove("schema");
    });
    assert!(Document::parse(&text).is_err());
}

#[test]
fn rejects_face_tables_violating_the_identities() {
    let doc = Document::sset(&standard_simplex(2), Provenance::input());
    let text = mutate(&doc, |v| {
        let faces = v["body"]["levels"][2][0]["faces"].as_array_mut().unwrap();
        faces.swap(0, 2);
    });
    assert!(matches!(Document::parse(&text), Err(Error::IdentityViolation { dim: 2, index: 0, .. })));
}

#[test]
fn rejects_wrong_face_counts_and_dangling_references() {
    let doc = Document::sset(&standard_simplex(2), Provenance::input());
    let text = mutate(&doc, |v| {
        v["body"]["levels"][1][0]["faces"].as_array_mut().unwrap().pop();
    });
    assert!(Document::parse(&text).is_err());
    let text = mutate(&doc, |v| v["body"]["levels"][1][0]["faces"][0] = serde_json::json!([0, 9, []]));
    assert!(Document::parse(&text).is_err());
}

#[test]
fn missing_composite_names_the_pair() {
    let doc = Document::category(&FinCategory::ordinal(2), Provenance::input());
    let text = mutate(&doc, |v| {
        v["body"]["composition"].as_array_mut().unwrap().clear();
    });
    match Document::parse(&text) {
        Err(Error::MissingComposite(g, f)) => assert_eq!((g.as_str(), f.as_str()), ("1->2", "0->1")),
        other => panic!("expected a missing composite, got {other:?}"),
    }
}

#[test]
fn rejects_non_simplicial_maps() {
    let tw = twisted_arrow(standard_simplex(1), 2).unwrap();
    let doc = Document::map(&tw.proj, Provenance::input());
    let text = mutate(&doc, |v| {
        v["body"]["images"][0][0] = serde_json::json!([0, 1, []]);
    });
    assert!(Document::parse(&text).is_err());
}

#[test]
fn syntax_errors_carry_a_location() {
    let text = Document::sset(&standard_simplex(1), Provenance::input()).to_text();
    let err = Document::parse(&text[..text.len() / 2]).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("line") && msg.contains("column"), "{msg}");
}

#[test]
fn unknown_kinds_are_rejected() {
    let doc = Document::sset(&standard_simplex(1), Provenance::input());
    let text = mutate(&doc, |v| v["body"]["kind"] = Value::from("sheaf"));
    assert!(Document::parse(&text).is_err());
}

proptest! {
    #[test]
    fn random_poset_nerves_roundtrip(n in 1usize..=5, bits in proptest::collection::vec(any::<bool>(), 10)) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let rel: Vec<(usize, usize)> = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&p, _)| p).collect();
        let p = FinPoset::from_relation((0..n).map(|i| format!("p{i}")).collect(), &rel).unwrap();
        let x = PosetNerve::new(p.clone()).sset().clone();
        roundtrip(&Document::sset(&x, Provenance::input()));
        roundtrip(&Document::category(&FinCategory::from_poset(&p), Provenance::input()));
    }
}
