use std::fs;

use syzlab::harness::report::Outcome;
use syzlab::harness::{
    run_job, run_report, standard_corpus, verify_expectations, verify_theorem_veronese, Job, Origin, Status,
    VerifyOptions,
};
use syzlab::Budget;

#[test]
fn every_corpus_expectation_holds() {
    let opts = VerifyOptions::default();
    for entry in standard_corpus() {
        let report = verify_expectations(&entry, 32003, &opts).unwrap();
        for c in &report.claims {
            assert_eq!(c.status, Status::Pass, "{} {}: predicted {}, computed {}", entry.name, c.claim, c.predicted, c.computed);
        }
    }
}

#[test]
fn literature_values_are_tagged() {
    let tagged = standard_corpus().iter().flat_map(|e| e.expectations.clone()).filter(|x| x.origin == Origin::Literature).count();
    assert!(tagged >= 10);
}

#[test]
fn veronese_statements_on_small_examples() {
    let opts = VerifyOptions::default();
    let b = Budget::unlimited();
    for (name, ell, n2p) in [("complete_intersection([2,3],4)", 2, None), ("nodal_cubic", 2, Some(1)), ("twisted_cubic", 2, Some(2))] {
        let ideal = syzlab::harness::corpus_emit(name, 32003, &b).unwrap();
        let r = verify_theorem_veronese(&ideal, ell, &opts);
        assert!(r.claims.iter().all(|c| c.status == Status::Pass), "{}", r.to_text());
        let generation = r.claims.iter().find(|c| c.claim.starts_with("generated")).unwrap();
        assert_eq!(generation.computed, "generated in degree 2");
        match n2p {
            Some(p) => assert!(r.claims.iter().any(|c| c.predicted == format!("N_2,{p} holds"))),
            None => assert!(!r.claims.iter().any(|c| c.claim.starts_with("N_2,p"))),
        }
    }
}

fn job(extra: &str) -> Job {
    Job::parse(&format!(
        r#"{{"entries": ["twisted_cubic", "complete_intersection([2,3],4)"],
            "checks": [{{"kind": "properties"}}, {{"kind": "main1", "lmax": 2}}, {{"kind": "ci", "ells": [1, 2]}}]{extra}}}"#
    ))
    .unwrap()
}

#[test]
fn reports_are_deterministic_and_cached() {
    let cache = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let first = run_report(&job(""), out.path(), Some(cache.path())).unwrap();
    assert_eq!(first.cache_hits, 0);
    assert_eq!(first.items, 6);
    let written = fs::read_to_string(&first.json_path).unwrap();
    assert!(written.contains("\"timestamp\""));
    assert!(fs::read_to_string(&first.text_path).unwrap().contains("not machine-checked"));

    let second = run_report(&job(""), out.path(), Some(cache.path())).unwrap();
    // the ci check on the twisted cubic is an error and never cached
    assert_eq!(second.cache_hits, 5);
    assert_eq!(first.report.stable_json().unwrap(), second.report.stable_json().unwrap());
    assert_eq!(second.literature_failures, 0);
    match &second.report.results[2].outcome {
        Outcome::Error { message } => assert!(message.contains("not a complete intersection")),
        other => panic!("expected an error, got {other:?}"),
    }
}

#[test]
fn audits_and_corrupt_entries_recompute() {
    let results = |r: &syzlab::harness::JobReport| serde_json::to_string(&r.results).unwrap();
    let cache = tempfile::tempdir().unwrap();
    let plain = run_job(&job(""), Some(cache.path())).unwrap();
    for entry in fs::read_dir(cache.path()).unwrap() {
        fs::write(entry.unwrap().path(), "{ not json").unwrap();
    }
    let repaired = run_job(&job(""), Some(cache.path())).unwrap();
    assert_eq!(plain.stable_json().unwrap(), repaired.stable_json().unwrap());
    let audited = run_job(&job(r#", "verify_fraction": 1.0"#), Some(cache.path())).unwrap();
    assert_eq!(results(&plain), results(&audited));
    let provenance = serde_json::to_value(&audited.run.provenance).unwrap();
    let audits = provenance.as_array().unwrap().iter().filter(|p| *p == "cache_audited").count();
    assert_eq!(audits, 5);
}

#[test]
fn ideal_files_are_accepted_as_entries() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cone.ideal");
    fs::write(&path, "ring: p=32003 vars=[x,y,z]\ngens:\nx^2 + y^2 + z^2\n").unwrap();
    let job = Job::parse(&format!(
        r#"{{"entries": [{:?}], "checks": [{{"kind": "imply", "ell": 2, "p": 3}}]}}"#,
        path.to_str().unwrap()
    ))
    .unwrap();
    let report = run_job(&job, None).unwrap();
    match &report.results[0].outcome {
        Outcome::Verification(v) => assert_eq!(v.claims[0].status, Status::Pass, "{}", v.to_text()),
        other => panic!("{other:?}"),
    }
}
