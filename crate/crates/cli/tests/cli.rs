use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use dualfib::cat::{CatFunctor, FinCategory};
use dualfib::format::{Body, Document, Provenance};
use dualfib::sset::{is_isomorphic, FinPoset, PosetNerve};
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualfib")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn passing_check_exits_zero() {
    let out = run(&["check", path_str(&fixture("delta2.json")), "--class", "inner"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("status: pass\n"));
}

#[test]
fn failing_check_exits_one_with_counterexample() {
    let out = run(&["check", path_str(&fixture("delta2.json")), "--class", "left"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("counterexample:"));
    assert!(text.ends_with("status: fail\n"));
}

#[test]
fn zero_max_dim_is_a_precondition_failure() {
    let out = run(&["twist", path_str(&fixture("ordinal2.json")), "--max-dim", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn dual_of_a_non_fibration_exits_two() {
    // [1] -> [2] hitting 0 and 2: nothing lies over 1.
    let src = Arc::new(FinCategory::ordinal(1));
    let tgt = Arc::new(FinCategory::ordinal(2));
    let objs = vec![0, 2];
    let morphs = (0..src.morphism_count())
        .map(|m| tgt.hom(objs[src.source(m)], objs[src.target(m)])[0])
        .collect();
    let f = CatFunctor::new(src, tgt, objs, morphs).unwrap();
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("gap.json");
    fs::write(&path, Document::functor(&f, Provenance::new(Vec::<String>::new(), None)).to_text()).unwrap();
    let out = run(&["dual", path_str(&path), "--variance", "cartesian"]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
}

#[test]
fn wrong_kind_of_input_exits_two() {
    let out = run(&["dual", path_str(&fixture("grid.json"))]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("found a category"));
}

#[test]
fn malformed_input_reports_a_location() {
    let out = run(&["nerve", path_str(&fixture("malformed.json"))]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn identity_violation_is_a_parse_error() {
    let out = run(&["twist", path_str(&fixture("bad_identity.json"))]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("cell (2, 0)"), "{}", stderr(&out));
}

#[test]
fn missing_composite_is_named() {
    let out = run(&["nerve", path_str(&fixture("missing_composite.json"))]);
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains("1->2") && err.contains("0->1"), "{err}");
}

#[test]
fn missing_file_is_a_parse_error() {
    let out = run(&["nerve", "/nonexistent/input.json"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn twist_of_a_simplex_is_the_staircase_nerve() {
    let out = run(&["twist", path_str(&fixture("delta2.json")), "--max-dim", "6"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = Document::parse(&String::from_utf8_lossy(&out.stdout)).unwrap();
    let tw = Arc::new(doc.to_sset().unwrap());

    let elems: Vec<(usize, usize)> = (0..=2).flat_map(|i| (i..=2).map(move |j| (i, j))).collect();
    let labels = elems.iter().map(|(i, j)| format!("{i}{j}")).collect();
    let poset = FinPoset::from_fn(labels, |a, b| elems[b].0 <= elems[a].0 && elems[a].1 <= elems[b].1).unwrap();
    let golden = PosetNerve::new(poset).sset().clone();
    assert!(is_isomorphic(&tw, &golden).is_some());
    assert!(doc.provenance.construction.iter().any(|s| s == "twisted-arrow"));
}

#[test]
fn dual_of_dual_is_fiberwise_equivalent() {
    let dir = TempDir::new().unwrap();
    let once = dir.path().join("dual.json");
    let twice = dir.path().join("dual2.json");
    let input = fixture("two_fiber.json");
    for (from, to) in [(input.as_path(), &once), (once.as_path(), &twice)] {
        let out = run(&["dual", path_str(from), "--out", path_str(to)]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let out = run(&["compare", path_str(&input), path_str(&twice)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("fiberwise-equivalence: pass"));

    let doc = Document::parse(&fs::read_to_string(&twice).unwrap()).unwrap();
    let trace = doc.provenance.construction;
    assert_eq!(trace.iter().filter(|s| s.starts_with("dual-")).count(), 2, "{trace:?}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let mut texts = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("dual{i}.json"));
        let report = dir.path().join(format!("report{i}.txt"));
        let r = run(&[
            "dual",
            path_str(&fixture("ev0.json")),
            "--out",
            path_str(&out),
            "--report",
            path_str(&report),
        ]);
        assert_eq!(code(&r), 0, "{}", stderr(&r));
        texts.push((fs::read(&out).unwrap(), fs::read_to_string(&report).unwrap()));
    }
    assert_eq!(texts[0].0, texts[1].0);
    let strip = |s: &str| s.replace("dual0", "").replace("dual1", "").replace("report0", "").replace("report1", "");
    assert_eq!(strip(&texts[0].1), strip(&texts[1].1));
}

#[test]
fn no_partial_files_are_left_behind() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("nerve.json");
    assert_eq!(code(&run(&["nerve", path_str(&fixture("grid.json")), "--out", path_str(&out)])), 0);
    let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, vec![std::ffi::OsString::from("nerve.json")]);
}

#[test]
fn fixture_corpus_round_trips() {
    for entry in fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let Ok(doc) = Document::parse(&text) else {
            continue;
        };
        let again = Document::parse(&doc.to_text()).unwrap();
        assert_eq!(doc.to_text(), again.to_text(), "{}", path.display());
        if !path.ends_with("missing_composite.json") && !path.ends_with("bad_identity.json") {
            assert_eq!(text, doc.to_text(), "{}", path.display());
        }
    }
}

#[test]
fn certificate_replays_from_file() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("cert.json");
    let out = run(&["certify", "--kind", "contiguity", "--n", "4", "--s", "2", "--face", "1,2,3", "--out", path_str(&cert)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let replay = run(&["certify", "--replay", path_str(&cert)]);
    assert_eq!(code(&replay), 0, "{}", stderr(&replay));
    assert!(String::from_utf8_lossy(&replay.stdout).contains("verdict: pass"));
}

#[test]
fn tampered_certificate_fails_replay() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("cert.json");
    assert_eq!(code(&run(&["certify", "--kind", "iota", "--n", "2", "--out", path_str(&cert)])), 0);
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    let steps = doc["body"]["proof"]["first"]["proof"]["steps"].as_array_mut().unwrap();
    steps.pop();
    fs::write(&cert, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let replay = run(&["certify", "--replay", path_str(&cert)]);
    assert_eq!(code(&replay), 1, "{}", stderr(&replay));
    assert!(String::from_utf8_lossy(&replay.stdout).contains("verdict: fail"));
}

#[test]
fn staircase_census_counts_catalan_paths() {
    let out = run(&["staircase", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let doc = Document::parse(&String::from_utf8_lossy(&out.stdout)).unwrap();
    let Body::Report { content } = doc.body else {
        panic!("expected a report");
    };
    assert_eq!(content["paths"].as_array().map(Vec::len), Some(14));
    assert_eq!(content["area_histogram"], serde_json::json!([1, 3, 3, 3, 2, 1, 1]));
}

#[test]
fn pairing_passes_on_a_cocartesian_fixture() {
    let out = run(&["pairing", path_str(&fixture("two_fiber_op.json"))]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn double_dual_checks_pass() {
    let out = run(&["doubledual", path_str(&fixture("ev0.json")), "--out", "/dev/null"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}
