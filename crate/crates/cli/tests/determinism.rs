use galcom_cli::corpus::corpus;
use galcom_cli::{load, run_any, Config, Suite};

#[test]
fn reports_are_byte_identical_across_runs() {
    for doc in corpus() {
        let a = run_any(&load(&doc).unwrap(), Suite::All, Config::default()).to_json();
        let b = run_any(&load(&doc).unwrap(), Suite::All, Config::default()).to_json();
        assert_eq!(a, b, "{}", doc.name);
    }
}

#[test]
fn seed_override_is_echoed_and_changes_random_members_only() {
    let doc = corpus().into_iter().find(|d| d.name == "sweedler").unwrap();
    let inst = load(&doc).unwrap();
    let a = run_any(&inst, Suite::Comonadic, Config { seed: Some(1), family_size: None });
    let b = run_any(&inst, Suite::Comonadic, Config { seed: Some(2), family_size: None });
    assert_eq!(a.config.seed, 1);
    assert_eq!(b.config.seed, 2);
    assert_eq!(a.suites, b.suites);
    assert_eq!(a.verdicts.comonadic, b.verdicts.comonadic);
}

#[test]
fn family_size_is_honoured() {
    let doc = corpus().into_iter().find(|d| d.name == "sweedler").unwrap();
    let inst = load(&doc).unwrap();
    let r = run_any(&inst, Suite::Comonadic, Config { seed: None, family_size: Some(12) });
    assert_eq!(r.config.family.len(), 12);
    assert!(r.passed());
}
