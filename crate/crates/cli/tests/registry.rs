use std::collections::BTreeSet;

use semiwb_verify::{exit_code, find_check, registry, run_all, verify, CheckReport, Options, Profile, Status, VerifyError};
use serde_json::{json, Value};

// runtimes are evidence but vary between runs
fn without_timings(v: &Value) -> Value {
    match v {
        Value::Object(m) => m.iter().filter(|(k, _)| *k != "elapsed_ms").map(|(k, v)| (k.clone(), without_timings(v))).collect(),
        Value::Array(a) => a.iter().map(without_timings).collect(),
        other => other.clone(),
    }
}

fn report(status: Status) -> CheckReport {
    CheckReport { id: "x".into(), status, claim: String::new(), witnesses: json!({}), elapsed_ms: 0 }
}

#[test]
fn registry_is_complete_and_unique() {
    let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    assert!(ids.len() >= 10);
    assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), ids.len());
    for expected in [
        "thm-B-generates",
        "thm-C-generates",
        "rem-maximal-xyy",
        "rem-maximal-yxy",
        "thm-132-lifts",
        "thm-132-notverysmall",
        "thm-132-sapir",
        "prop-133-com",
        "prop-133-xyy",
        "lem-extralength",
        "ex-adjunction-counterexample",
        "lem-A0-oracle",
    ] {
        assert!(find_check(expected).is_ok(), "{expected}");
    }
    assert!(registry().iter().all(|c| !c.claim.is_empty()));
    assert!(matches!(verify("no-such-check", &Options::quick()), Err(VerifyError::UnknownCheck(_))));
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&[report(Status::Pass)]), 0);
    assert_eq!(exit_code(&[report(Status::Pass), report(Status::BudgetExhausted)]), 2);
    assert_eq!(exit_code(&[report(Status::BudgetExhausted), report(Status::Fail)]), 1);
    assert_eq!(exit_code(&[]), 0);
}

#[test]
fn quick_run_is_deterministic_and_skips_heavy_checks() {
    let first = run_all(&Options::quick());
    let second = run_all(&Options::quick());
    assert!(first.iter().all(|r| find_check(&r.id).is_ok_and(|c| !c.heavy)));
    assert_eq!(first.len(), registry().iter().filter(|c| !c.heavy).count());
    for (a, b) in first.iter().zip(&second) {
        assert_eq!(a.id, b.id);
        assert_eq!(a.status, b.status);
        assert_eq!(without_timings(&a.witnesses), without_timings(&b.witnesses));
    }
    for r in &first {
        if r.status == Status::Fail {
            let failures = r.witnesses["failures"].as_array().expect("failing reports carry witnesses");
            assert!(!failures.is_empty());
        }
    }
    let serialised = serde_json::to_value(&first[0]).unwrap();
    for key in ["id", "status", "witnesses", "elapsed_ms"] {
        assert!(serialised.get(key).is_some(), "{key}");
    }
}

#[test]
fn padded_converse_is_reported_with_witnesses() {
    let r = verify("lem-extralength", &Options::quick()).unwrap();
    assert_eq!(r.status, Status::Fail);
    let placements = &r.witnesses["placements"];
    assert_eq!(placements["shorter_from_longer"]["consequences"], 0);
    assert!(placements["longer_from_shorter"]["consequences"].as_u64().unwrap() > 0);
    let first = &r.witnesses["failures"][0];
    assert_eq!(first["premise"], "xyxa=xy^2a");
    assert_eq!(first["consequence"], "xyxab=xy^2ab");
}

#[test]
fn profiles_parse() {
    assert_eq!("quick".parse::<Profile>(), Ok(Profile::Quick));
    assert_eq!("full".parse::<Profile>(), Ok(Profile::Full));
    assert!("slow".parse::<Profile>().is_err());
}
