use galcom_cli::{load_str, CliError};

fn doc(field: &str, algebras: &str, bimodules: &str) -> String {
    format!(
        r#"{{
  "format_version": 1,
  "name": "t",
  "description": "",
  "field": {field},
  "algebras": [{algebras}],
  "bimodules": [{bimodules}],
  "corings": [],
  "comodules": [],
  "morphisms": [],
  "contexts": [],
  "params": {{}},
  "expect": {{"suites": {{}}}}
}}"#
    )
}

const K: &str = r#"{"name": "k", "dim": 1, "products": [[[1]]], "unit": [1]}"#;
const Q: &str = r#"{"kind": "rational"}"#;

#[test]
fn a_minimal_document_loads() {
    let inst = load_str(&doc(Q, K, "")).unwrap();
    assert_eq!(inst.name(), "t");
}

#[test]
fn undefined_algebra_is_reported_by_name() {
    let m = r#"{"name": "M", "dim": 1, "left": "k", "right": "B", "left_action": [[[1]]], "right_action": [[[1]]]}"#;
    match load_str(&doc(Q, K, m)) {
        Err(CliError::UnknownReference(name)) => assert_eq!(name, "B"),
        other => panic!("expected UnknownReference, got {other:?}"),
    }
}

#[test]
fn one_half_is_not_an_element_of_f2() {
    let half = r#"{"name": "k", "dim": 1, "products": [[["1/2"]]], "unit": [1]}"#;
    let err = load_str(&doc(r#"{"kind": "prime", "p": 2}"#, half, "")).unwrap_err();
    assert!(matches!(err, CliError::BadFieldElement { .. }), "{err:?}");
    assert!(err.to_string().contains("algebras"), "location missing from `{err}`");
}

#[test]
fn one_half_is_fine_over_f3_and_q() {
    let half = r#"{"name": "k", "dim": 1, "products": [[["1/2"]]], "unit": null}"#;
    assert!(load_str(&doc(Q, half, "")).is_ok());
    assert!(load_str(&doc(r#"{"kind": "prime", "p": 3}"#, half, "")).is_ok());
}

#[test]
fn wrong_action_shape_is_a_dimension_mismatch() {
    let m = r#"{"name": "M", "dim": 2, "left": "k", "right": "k", "left_action": [[[1]]], "right_action": [[[1, 0], [0, 1]]]}"#;
    let err = load_str(&doc(Q, K, m)).unwrap_err();
    assert!(matches!(err, CliError::DimensionMismatch { .. }), "{err:?}");
}

#[test]
fn malformed_json_and_unknown_fields_are_parse_errors() {
    assert!(matches!(load_str("{"), Err(CliError::ParseError(_))));
    let extra = doc(Q, K, "").replacen("\"name\": \"t\"", "\"name\": \"t\", \"colour\": 1", 1);
    assert!(matches!(load_str(&extra), Err(CliError::ParseError(_))));
    let v2 = doc(Q, K, "").replacen("\"format_version\": 1", "\"format_version\": 2", 1);
    assert!(matches!(load_str(&v2), Err(CliError::ParseError(_))));
}

#[test]
fn composite_modulus_is_rejected() {
    let err = load_str(&doc(r#"{"kind": "prime", "p": 6}"#, K, "")).unwrap_err();
    assert!(matches!(err, CliError::ParseError(_) | CliError::Invalid { .. }), "{err:?}");
}

#[test]
fn duplicate_names_are_rejected() {
    assert!(load_str(&doc(Q, &format!("{K}, {K}"), "")).is_err());
}

#[test]
fn non_associative_structure_constants_load_but_fail_validation() {
    // e·e = e + e is fine; a 2-dim algebra with e0 e0 = e1, e1 e0 = e0 and the rest zero is not associative.
    let bad = r#"{"name": "k", "dim": 2, "products": [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]}"#;
    let inst = load_str(&doc(Q, bad, "")).unwrap();
    let report = galcom_cli::run_any(&inst, galcom_cli::Suite::Axioms, Default::default());
    assert!(!report.passed());
}
