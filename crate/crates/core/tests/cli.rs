//! End-to-end runs of the `confrel` binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use confrel::io::{parse_kb, parse_relation};
use confrel::preferential::close_p;
use confrel::relations::instance_violated;
use confrel::{Axiom, ConfidenceRelation};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn confrel(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_confrel"))
        .args(args)
        .output()
        .expect("run confrel");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PENGUIN: &str = r#"{"atoms": ["b", "f", "p"],
  "rules": [{"if": "b", "then": "f"}, {"if": "p", "then": "b"}, {"if": "p", "then": "!f"}]}"#;

const POSSIBILITY: &str = r#"{"states": ["s1", "s2", "s3"], "type": "possibility",
  "values": {"s1": "1", "s2": "1/2", "s3": "1/5"}}"#;

/// Every witness in a JSON report violates its axiom on `rel`.
fn witnesses_replay(report: &Value, rel: &ConfidenceRelation) -> usize {
    let ws = report["witnesses"].as_array().unwrap();
    for w in ws {
        let axiom: Axiom = w["axiom"].as_str().unwrap().parse().unwrap();
        let events: Vec<u32> = w["events"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                let names: Vec<String> = serde_json::from_value(e.clone()).unwrap();
                rel.space().mask_of(&names).unwrap()
            })
            .collect();
        assert!(instance_violated(rel, axiom, &events), "witness {w} does not replay");
    }
    ws.len()
}

#[test]
fn necessity_order_passes_the_acceptance_axioms() {
    let dir = tempfile::tempdir().unwrap();
    let measure = write(dir.path(), "pi.json", POSSIBILITY);
    let rel = dir.path().join("nec.json");
    let r = confrel(&["induce", s(&measure), "--kind", "N", "--emit", s(&rel)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = confrel(&["check-axioms", s(&rel), "--axioms", "T,MI,Ac"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("check-axioms: holds"));
    let r = confrel(&["roundtrip", "--relation", s(&rel)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn penguin_entailments() {
    let dir = tempfile::tempdir().unwrap();
    let kb = write(dir.path(), "penguin.json", PENGUIN);
    assert_eq!(confrel(&["entail", "--kb", s(&kb), "p & b |~ !f"]).code, 0);
    assert_eq!(confrel(&["entail", "--kb", s(&kb), "b |~ f"]).code, 0);
    let r = confrel(&["entail", "--kb", s(&kb), "p |~ f", "--format", "json"]);
    assert_eq!(r.code, 1);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["holds"], Value::Bool(false));
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(confrel(&["entail", "--kb", s(&kb), "p |~"]).code, 2);
    assert_eq!(confrel(&["entail", "--kb", s(&kb), "false |~ f"]).code, 2);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"states\": [\"s1\"], \"type\": ");
    let r = confrel(&["classify-measure", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error:"));
    assert_eq!(confrel(&["classify-measure"]).code, 2);
    assert_eq!(confrel(&["no-such-command"]).code, 2);
    assert_eq!(confrel(&["--help"]).code, 0);
}

#[test]
fn reports_are_byte_identical_and_witnesses_replay() {
    let dir = tempfile::tempdir().unwrap();
    let lottery = dir.path().join("lottery.json");
    let r = confrel(&["gen", "--type", "lottery", "--n", "4"]);
    std::fs::write(&lottery, &r.stdout).unwrap();
    let rel_path = dir.path().join("rel.json");
    assert_eq!(confrel(&["induce", s(&lottery), "--emit", s(&rel_path)]).code, 1);

    let out1 = dir.path().join("r1.json");
    let out2 = dir.path().join("r2.json");
    let a = confrel(&["check-axioms", s(&rel_path), "--axioms", "all", "--out", s(&out1)]);
    let b = confrel(&["check-axioms", s(&rel_path), "--axioms", "all", "--out", s(&out2)]);
    assert_eq!((a.code, b.code), (1, 1));
    let (r1, r2) = (std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
    assert_eq!(r1, r2);

    let rel = parse_relation(&std::fs::read_to_string(&rel_path).unwrap(), 12).unwrap();
    let report: Value = serde_json::from_slice(&r1).unwrap();
    assert!(witnesses_replay(&report, &rel) > 0);

    // Structural and exhaustive witnesses from the measure replay on its order.
    let c = confrel(&["classify-measure", s(&lottery), "--format", "json"]);
    assert_eq!(c.code, 1);
    let report: Value = serde_json::from_str(&c.stdout).unwrap();
    assert_eq!(witnesses_replay(&report, &rel), 3);

    let acc = confrel(&["accepted", "--relation", s(&rel_path), "--format", "json"]);
    assert_eq!(acc.code, 1);
    let report: Value = serde_json::from_str(&acc.stdout).unwrap();
    assert_eq!(witnesses_replay(&report, &rel), 1);
}

#[test]
fn timing_is_opt_in() {
    let r = confrel(&["gen", "--type", "bigstep", "--n", "3", "--format", "json", "--timing"]);
    assert_eq!(r.code, 0);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    confrel(&["gen", "--type", "bigstep", "--n", "3", "--out", s(&out)]);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report.get("wall_time_ms").is_none());
    confrel(&["gen", "--type", "bigstep", "--n", "3", "--out", s(&out), "--timing"]);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report["wall_time_ms"].is_number());
}

#[test]
fn bigstep_fixture_is_context_tolerant() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.json");
    std::fs::write(&p, confrel(&["gen", "--type", "bigstep", "--n", "4"]).stdout).unwrap();
    let r = confrel(&["classify-measure", s(&p)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn inconsistent_base_reports_a_replayable_chain() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"atoms": ["a", "b"], "rules": [{"if": "a", "then": "b"}, {"if": "a", "then": "!b"}]}"#;
    let kb_path = write(dir.path(), "kb.json", text);
    let r = confrel(&["close-kb", s(&kb_path), "--format", "json"]);
    assert_eq!(r.code, 1);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(!report["results"]["inconsistency"].as_array().unwrap().is_empty());

    let kb = parse_kb(text, 12, false).unwrap();
    let closed = close_p(&kb);
    let bad = closed.inconsistency().unwrap();
    assert!(bad.replays_on(&kb));
    let witness: Vec<String> = serde_json::from_value(report["witnesses"][0]["events"][0].clone()).unwrap();
    assert_eq!(kb.space().mask_of(&witness).unwrap(), bad.pair.1);

    let penguin = write(dir.path(), "penguin.json", PENGUIN);
    assert_eq!(confrel(&["close-kb", s(&penguin)]).code, 0);
    assert_eq!(confrel(&["roundtrip", "--kb", s(&penguin)]).code, 1);
    assert_eq!(confrel(&["roundtrip", "--kb", s(&penguin), "--plausible"]).code, 0);
}

#[test]
fn decomposition_files_roundtrip_for_any_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    for seed in ["1", "2", "3"] {
        let rel = dir.path().join(format!("rel{seed}.json"));
        let r = confrel(&["gen", "--type", "random-relation", "--n", "3", "--seed", seed]);
        std::fs::write(&rel, &r.stdout).unwrap();
        let f1 = dir.path().join("f1.json");
        let f4 = dir.path().join("f4.json");
        assert_eq!(confrel(&["decompose", s(&rel), "--threads", "1", "--emit", s(&f1)]).code, 0);
        assert_eq!(confrel(&["decompose", s(&rel), "--threads", "4", "--emit", s(&f4)]).code, 0);
        assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f4).unwrap());
        let back = dir.path().join("back.json");
        assert_eq!(confrel(&["recompose", s(&f1), "--emit", s(&back)]).code, 0);
        assert_eq!(std::fs::read_to_string(&back).unwrap(), r.stdout);
    }
}

#[test]
fn recomposing_disagreeing_members_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let fam = r#"{"states": ["s1", "s2"], "members": [
        [[[], []], [["s1"], []], [["s1"], ["s2"]], [["s1"], ["s1"]], [["s2"], []], [["s2"], ["s1"]], [["s2"], ["s2"]],
         [["s1","s2"], []], [["s1","s2"], ["s1"]], [["s1","s2"], ["s2"]], [["s1","s2"], ["s1","s2"]]],
        [[[], []], [["s1"], []], [["s1"], ["s2"]], [["s1"], ["s1"]], [["s2"], []], [["s2"], ["s2"]],
         [["s1","s2"], []], [["s1","s2"], ["s1"]], [["s1","s2"], ["s2"]], [["s1","s2"], ["s1","s2"]]]]}"#;
    let path = write(dir.path(), "fam.json", fam);
    let r = confrel(&["recompose", s(&path), "--format", "json"]);
    assert_eq!(r.code, 1, "{}{}", r.stdout, r.stderr);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["witnesses"][0]["events"], serde_json::json!([["s1"], ["s2"]]));
}

#[test]
fn accepted_in_a_formula_context() {
    let dir = tempfile::tempdir().unwrap();
    let measure = write(dir.path(), "pi.json", POSSIBILITY);
    let rel = dir.path().join("pi-rel.json");
    assert_eq!(confrel(&["induce", s(&measure), "--kind", "Pi", "--emit", s(&rel)]).code, 0);
    let r = confrel(&["accepted", "--relation", s(&rel), "--given", "s2 | s3", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["results"]["kernel"], serde_json::json!(["s2"]));
    assert_eq!(report["results"]["context"], serde_json::json!(["s2", "s3"]));

    // With atoms, states must be the valuations of those atoms.
    assert_eq!(confrel(&["accepted", "--relation", s(&rel), "--given", "a", "--atoms", "a,b"]).code, 2);
    let r = confrel(&["induce", s(&measure), "--sup", "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(confrel(&["induce", s(&measure), "--kind", "Bel"]).code, 2);
}

#[test]
fn random_mass_fixture_is_reproducible() {
    let a = confrel(&["gen", "--type", "random-mass", "--n", "4", "--seed", "9"]);
    let b = confrel(&["gen", "--type", "random-mass", "--n", "4", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("\"mass\""));
}
