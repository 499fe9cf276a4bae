mod common;

use common::*;
use dgcoh::cli::{run, EXIT_FAIL, EXIT_INVALID, EXIT_PASS};
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = vec!["dgcoh", "--format", "json"];
    v.extend_from_slice(args);
    let out = run(v);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout)))
}

#[test]
fn hc_of_the_trivial_coalgebra() {
    let f = fixture("trivial");
    let (code, v) = json(&["cohomology", "--theory", "hc", "--max-degree", "4", &f]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["field"], "Q");
    let dims: Vec<u64> = v["result"]["dims"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1]);
}

#[test]
fn text_output_ends_with_status() {
    let out = run(["dgcoh", "cohomology", "--theory", "hoch", "--max-degree", "2", &fixture("group_likes")]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.ends_with("status: pass\n"), "{}", out.stdout);
}

#[test]
fn operators_all_hold() {
    let (code, v) = json(&["operators", "--arity", "3", "--check", &fixture("exterior")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["status"], "pass");
}

#[test]
fn broken_counit_is_a_mathematical_failure() {
    let (code, v) = json(&["validate", &fixture("broken_counit")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(v.to_string().contains("counit"), "{v}");
}

#[test]
fn qiso_pipeline_exit_codes() {
    let (ok, _) = json(&["check-qiso", "--map", "inclusion", "--max-degree", "3", &fixture("acyclic_extension")]);
    assert_eq!(ok, EXIT_PASS);
    let (bad, v) = json(&["check-qiso", "--map", "inclusion", "--max-degree", "3", &fixture("sabotaged_extension")]);
    assert_eq!(bad, EXIT_FAIL);
    assert_eq!(v["result"]["report"]["failed_stage"], "quasi-isomorphism");
}

#[test]
fn morita_contexts_pass() {
    for stem in ["identity_context", "acyclic_extension"] {
        assert_eq!(json(&["check-morita", &fixture(stem)]).0, EXIT_PASS, "{stem}");
    }
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(run(["dgcoh", "frobnicate"]).code, EXIT_INVALID);
    assert_eq!(run(["dgcoh", "validate", "/nonexistent/fixture.json"]).code, EXIT_INVALID);
    let (code, v) = json(&["cohomology", "--theory", "hoch", "--max-degree", "2", "--coalgebra", "nope", &fixture("trivial")]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["status"], "invalid input");
    let dir = std::env::temp_dir().join(format!("dgcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.json");
    std::fs::write(&p, "{\"field\": \"Q\", \"coalgebras\": {").unwrap();
    assert_eq!(run(["dgcoh", "validate", p.to_str().unwrap()]).code, EXIT_INVALID);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn field_override_is_reported() {
    let (code, v) = json(&["--field", "F5", "cohomology", "--theory", "hoch", "--max-degree", "1", &fixture("divided_powers")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["field"], "F5");
}

#[test]
fn bundled_files_match_the_builders() {
    for (stem, doc) in dgcoh::fixture::bundled_documents(dgcoh::Field::Rational).unwrap() {
        let on_disk = std::fs::read_to_string(fixture(stem)).unwrap();
        assert_eq!(on_disk, doc.to_json(), "{stem}");
    }
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_dgcoh");
    let st = std::process::Command::new(bin).args(["validate", &fixture("broken_counit")]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_FAIL));
    let st = std::process::Command::new(bin).args(["validate", &fixture("trivial")]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_PASS));
}

#[test]
fn json_reports_are_repeatable() {
    for path in fixture_files().iter().filter(|p| p.file_stem().unwrap() == "trivial") {
        for args in invocations(path) {
            assert_eq!(run(args.clone()), run(args.clone()), "{args:?}");
        }
    }
}
