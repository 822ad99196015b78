use std::path::PathBuf;

use galcom_cli::corpus::{corpus, corrupted_siblings};
use galcom_cli::instance::AnyInstance;
use galcom_cli::{load, load_path, run_any, run_suite, Config, Suite};
use serde_json::Value;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn corpus_files_match_the_builders() {
    for doc in corpus() {
        let path = corpus_dir().join(format!("{}.json", doc.name));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, doc.to_json(), "{} is stale; regenerate with `galcom corpus`", doc.name);
    }
    let files = std::fs::read_dir(corpus_dir()).unwrap().count();
    assert_eq!(files, corpus().len(), "corpus directory holds files without a builder");
}

#[test]
fn corpus_round_trips() {
    for doc in corpus() {
        let inst = load(&doc).unwrap_or_else(|e| panic!("{}: {e}", doc.name));
        let again = inst.emit();
        assert_eq!(again, doc, "{}", doc.name);
        assert_eq!(load(&again).unwrap().emit().to_json(), doc.to_json(), "{}", doc.name);
    }
}

#[test]
fn matrix_coring_file_loads_with_one_coring_and_one_comodule() {
    match load_path(&corpus_dir().join("matrix_coring_n2.json")).unwrap() {
        AnyInstance::Rational(i) => {
            assert_eq!(i.corings.len(), 1);
            assert_eq!(i.comodules.len(), 1);
            assert!(i.galois.is_some());
        }
        AnyInstance::Prime(_) => panic!("declared over the rationals"),
    }
}

#[test]
fn every_instance_matches_its_expected_verdicts() {
    for doc in corpus() {
        let inst = load(&doc).unwrap();
        let report = run_any(&inst, Suite::All, Config::default());
        let expect = &doc.expect;
        assert!(!expect.suites.is_empty(), "{} has no expectations", doc.name);
        for (suite, verdict) in &expect.suites {
            assert_eq!(report.suite_verdict(suite), Some(verdict.as_str()), "{} suite {suite}", doc.name);
        }
        if let Some(g) = expect.is_galois {
            assert_eq!(report.verdicts.is_galois, Some(g), "{} is_galois", doc.name);
        }
        if let Some(c) = expect.comonadic {
            assert_eq!(report.verdicts.comonadic, Some(c), "{} comonadic", doc.name);
        }
    }
}

fn corrupted_siblings_fail<F: galcom_core::Field>(inst: &galcom_cli::Instance<F>) -> usize {
    let siblings = corrupted_siblings(inst);
    for (name, bad) in &siblings {
        let report = run_suite(bad, Suite::Axioms, Config::default());
        assert!(!report.passed(), "{name} passes its axioms");
        assert!(report.failures().any(|e| e.witness.is_some()), "{name} fails without a witness");
    }
    siblings.len()
}

#[test]
fn corrupted_siblings_fail_with_witnesses() {
    let mut total = 0;
    for doc in corpus() {
        total += match load(&doc).unwrap() {
            AnyInstance::Rational(i) => corrupted_siblings_fail(&i),
            AnyInstance::Prime(i) => corrupted_siblings_fail(&i),
        };
    }
    assert!(total >= 20, "only {total} corrupted siblings");
}

fn report_json(name: &str, suite: Suite) -> Value {
    let inst = load_path(&corpus_dir().join(format!("{name}.json"))).unwrap();
    serde_json::from_str(&run_any(&inst, suite, Config::default()).to_json()).unwrap()
}

#[test]
fn sweedler_passes_everything() {
    let r = report_json("sweedler", Suite::All);
    assert_eq!(r["verdicts"]["is_galois"], true);
    assert_eq!(r["verdicts"]["comonadic"], true);
    assert_eq!(r["summary"]["failed"], 0);
}

#[test]
fn zero_multiplication_ring_is_not_firm_with_rank_zero_of_one() {
    let r = report_json("zero_multiplication", Suite::Firm);
    let entry = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "firm_ring").unwrap();
    assert_eq!(entry["status"], "fail");
    assert_eq!(entry["witness"]["kind"], "rank");
    assert_eq!(entry["witness"]["rank"], 0);
    assert_eq!(entry["witness"]["target_dim"], 1);
}

#[test]
fn diagonal_instance_fails_comonadicity_on_a_named_module() {
    let r = report_json("diagonal_in_upper", Suite::Comonadic);
    assert_eq!(r["verdicts"]["comonadic"], false);
    let cx = &r["verdicts"]["counterexample"];
    assert_eq!(cx["module"], "A");
    assert!(cx["rank"].as_u64().unwrap() < cx["source_dim"].as_u64().unwrap());
    let failed: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(failed.iter().any(|c| c["witness"]["kind"] == "module"));
}
