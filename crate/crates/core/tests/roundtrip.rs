mod common;

use cpa_core::catalog::{builtin_texts, parse_algebra, serialize, CatalogError};

#[test]
fn builtin_files_round_trip() {
    for (stem, text, _) in builtin_texts() {
        let p = parse_algebra(text).unwrap_or_else(|e| panic!("{stem}: {e}"));
        let s = serialize(&p);
        assert_eq!(parse_algebra(&s).unwrap(), p, "{stem}");
        assert_eq!(serialize(&parse_algebra(&s).unwrap()), s, "{stem}");
    }
}

#[test]
fn random_files_round_trip() {
    let docs = common::random_docs(100);
    for text in &docs {
        let p = parse_algebra(text).unwrap_or_else(|e| panic!("seed {}: {e}\n{text}", common::seed()));
        let s = serialize(&p);
        assert_eq!(parse_algebra(&s).unwrap(), p, "seed {}: {text}", common::seed());
    }
}

#[test]
fn serialized_entries_are_sorted() {
    let p = parse_algebra(r#"{"name":"s","dim":2,"star":[{"i":2,"j":1,"k":2,"c":"1"},{"i":1,"j":1,"k":1,"c":"1"}],"bullet":[]}"#).unwrap();
    let s = serialize(&p);
    assert!(s.starts_with(r#"{"bullet":[],"dim":2,"exclusions":[],"name":"s","params":[],"star":[{"c":"1","i":1,"j":1,"k":1},{"c":"1","i":2,"j":1,"k":2}]}"#));
    assert!(s.ends_with('\n'));
}

#[test]
fn malformed_documents_are_rejected() {
    let cases = [
        (r#"{"name":"x","dim":2,"bogus":1}"#, "unknown field"),
        (r#"{"name":"x","dim":0}"#, "dimension"),
        (r#"{"name":"x","dim":2,"star":[{"i":1,"j":1,"k":3,"c":"1"}]}"#, "index"),
        (r#"{"name":"x","dim":2,"star":[{"i":1,"j":1,"k":1,"c":"1"},{"i":1,"j":1,"k":1,"c":"2"}]}"#, "duplicate"),
        (r#"{"name":"x","dim":2,"star":[{"i":1,"j":1,"k":1,"c":"sqrt(2)"}]}"#, "scalar"),
        (r#"{"name":"x","dim":2,"star":[{"i":1,"j":1,"k":1,"c":"beta"}]}"#, "scalar"),
    ];
    for (text, what) in cases {
        assert!(parse_algebra(text).is_err(), "{what}: {text}");
    }
    match parse_algebra("{\n  \"name\": \"x\",\n  \"dim\": 2,,\n}") {
        Err(CatalogError::Syntax { line, col, .. }) => assert_eq!((line, col), (3, 12)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn empty_products_are_valid() {
    let p = parse_algebra(r#"{"name":"z","dim":3}"#).unwrap();
    assert!(p.bullet.is_zero() && p.star.is_zero());
}
