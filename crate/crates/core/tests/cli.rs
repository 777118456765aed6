// ------------------------------------------------------------------------------------------------
// Copyright © 2026, ccs-workbench authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License.  You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the
// License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
// express or implied.  See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------------------------------

//! End-to-end tests of the `ccswb` binary and of the in-process entry point.

use std::io::Cursor;
use std::process::{Command, Output};

use ccs_workbench::cli::{run, Cli, Style};
use clap::Parser;

fn ccswb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccswb"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

/// Runs in process with `input` as standard input; returns (exit code, stdout, stderr).
fn run_with(args: &[&str], input: &str) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("ccswb").chain(args.iter().copied())).expect("valid arguments");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        &cli,
        &mut Cursor::new(input.as_bytes()),
        &mut out,
        &mut err,
        Style { color: false },
    )
    .expect("command succeeds");
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// States shown by the stepper; the prompt shares a line with the next output.
fn states(out: &str) -> Vec<&str> {
    out.lines()
        .filter_map(|l| l.trim_start_matches("> ").strip_prefix("state: "))
        .collect()
}

fn json_lines(text: &str) -> Vec<serde_json::Value> {
    text.lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

#[test]
fn parse_prints_the_tree() {
    let o = ccswb(&["parse", "a.0 | 'a.0"]);
    assert!(o.status.success());
    let v = &json_lines(&stdout(&o))[0];
    assert_eq!(v["tree"], "Par(Prefix(name a, Nil), Prefix(coname a, Nil))");
    assert_eq!(v["free_names"], serde_json::json!(["a"]));
    let v = &json_lines(&stdout(&ccswb(&["parse", "(a.0 + b.0)\\a"])))[0];
    assert_eq!(v["tree"], "Restrict(Sum[Prefix(name a, Nil), Prefix(name b, Nil)], a)");
}

#[test]
fn parse_accepts_keyed_terms_and_rejects_bad_keys() {
    let v = &json_lines(&stdout(&ccswb(&["parse", "a[1].b.0 | 'a[1].0"])))[0];
    assert_eq!(v["std"], false);
    assert_eq!(v["keys"], serde_json::json!([1]));
    assert_eq!(v["erased"], "a.b.0 | 'a.0");
    let bad = ccswb(&["parse", "a[1].0 | b[1].0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}

#[test]
fn syntax_errors_exit_with_two() {
    let o = ccswb(&["step", "a.(b.0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
}

#[test]
fn step_lists_the_three_transitions() {
    let o = ccswb(&["step", "a.0 | 'a.0", "--calculus", "ccs-sys", "--json"]);
    let lines = json_lines(&stdout(&o));
    let labels: Vec<_> = lines.iter().map(|l| l["label"].as_str().unwrap().to_string()).collect();
    assert_eq!(labels, ["a", "'a", "tau"]);
    assert_eq!(lines[2]["rule"], "syn");
}

#[test]
fn step_on_nil_reports_no_transitions() {
    assert!(stdout(&ccswb(&["step", "0"])).contains("no transitions"));
}

#[test]
fn reversible_steps_show_ids_and_backward_moves() {
    let (_, out, _) = run_with(&["step", "a[1].b.0", "--calculus", "ccsk", "--json"], "");
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(
        (lines[0]["direction"].as_str(), lines[0]["id"].as_u64()),
        (Some("fwd"), Some(2))
    );
    assert_eq!(lines[1]["direction"], "bwd");
    assert_eq!(lines[1]["target"], "a.b.0");
    let (_, out, _) = run_with(&["step", "a.0 | 'a.0", "--calculus", "rccs", "--json"], "");
    assert_eq!(json_lines(&out).len(), 3);
}

#[test]
fn interactive_undo_returns_to_the_start() {
    let (code, out, _) = run_with(&["step", "a.b.0", "--calculus", "ccsk", "--interactive"], "1\nu 1\nq\n");
    assert_eq!(code, 0);
    assert_eq!(states(&out), ["a.b.0", "a[1].b.0", "a.b.0"]);
}

#[test]
fn invalid_menu_choices_reprompt() {
    let (_, out, _) = run_with(&["step", "a.0", "--interactive"], "5\nfoo\nu\n1\nq\n");
    assert!(out.contains("no transition `5`"));
    assert!(out.contains("unknown command `foo`") || out.contains("no transition `foo`"));
    assert!(out.contains("cannot rewind"));
    assert_eq!(states(&out), ["a.0", "0"]);
}

#[test]
fn transcripts_replay_and_detect_divergence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("session.txt");
    let p = path.to_str().unwrap();
    let (code, _, _) = run_with(
        &[
            "step",
            "(a.b.0 | 'a.0)\\a",
            "--calculus",
            "rccs",
            "--interactive",
            "--transcript",
            p,
        ],
        "1\n1\nu 2\nu 1\n1\nq\n",
    );
    assert_eq!(code, 0);
    let o = ccswb(&["step", "--replay", p]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("replayed 6 commands"));

    let text = std::fs::read_to_string(&path).unwrap();
    let last_state = text.lines().rfind(|l| l.starts_with("state: ")).unwrap().to_string();
    std::fs::write(&path, text.replace(&last_state, "state: 0")).unwrap();
    let o = ccswb(&["step", "--replay", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expected state 0"));
}

#[test]
fn colors_follow_no_color() {
    let (_, plain, _) = run_with(&["step", "a.0", "--interactive"], "q\n");
    assert!(!plain.contains('\x1b'));
    let cli = Cli::try_parse_from(["ccswb", "step", "a.0", "--interactive"]).unwrap();
    let mut out = Vec::new();
    run(
        &cli,
        &mut Cursor::new(b"q\n".as_slice()),
        &mut out,
        &mut Vec::new(),
        Style { color: true },
    )
    .unwrap();
    assert!(String::from_utf8(out).unwrap().contains("\x1b["));
}

#[test]
fn lts_exports_json_and_dot() {
    let dot = stdout(&ccswb(&["lts", "a.b.0", "--fmt", "dot"]));
    assert_eq!(dot.matches("label=").count(), 5, "3 nodes and 2 edges: {dot}");
    let v = &json_lines(&stdout(&ccswb(&["lts", "0", "--fmt", "json"])))[0];
    assert_eq!(v["states"].as_array().unwrap().len(), 1);
    assert!(v["edges"].as_array().unwrap().is_empty());
    assert_eq!(v["truncated"], false);
}

#[test]
fn lts_writes_files_and_flags_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let defs = dir.path().join("d.ccs");
    std::fs::write(&defs, "# a counter that never stops growing\nA = a.(A | A)\n").unwrap();
    let out = dir.path().join("a.json");
    let args = [
        "lts",
        "A",
        "--defs",
        defs.to_str().unwrap(),
        "--unfold",
        "2",
        "--out",
        out.to_str().unwrap(),
    ];
    let o = ccswb(&args);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["truncated"], true);
    let strict = ccswb(&[&args[..], &["--expect-complete"]].concat());
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn lts_for_reversible_calculi() {
    let v = &json_lines(&stdout(&ccswb(&["lts", "a.b.0", "--calculus", "ccsk"])))[0];
    assert_eq!(v["states"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
    let count = |variant| {
        let v = &json_lines(&stdout(&ccswb(&[
            "lts",
            "a.0 | b.0",
            "--calculus",
            "rccs",
            "--variant",
            variant,
        ])))[0];
        v["states"].as_array().unwrap().len()
    };
    assert_eq!(count("congruence"), 5, "ids record the firing order");
    assert_eq!(count("rule"), 6, "the unsplit root is a state of its own");
}

#[test]
fn equiv_prints_verdict_and_replayable_witness() {
    let out = stdout(&ccswb(&["equiv", "a.0 | b.0", "b.0 | a.0", "--witness"]));
    let lines = json_lines(&out);
    assert_eq!(lines[0], true);
    assert_eq!(lines.last().unwrap()["replay"], true);
    assert_eq!(stdout(&ccswb(&["equiv", "a.0", "b.0"])).trim(), "false");
}

#[test]
fn equiv_on_keyed_terms_uses_the_fragment() {
    assert_eq!(stdout(&ccswb(&["equiv", "a[1].0 | 0", "a[1].0"])).trim(), "true");
    assert_eq!(
        stdout(&ccswb(&["equiv", "a[1].0 | 0", "a[1].0", "--fragment", "none"])).trim(),
        "false"
    );
    let lines = json_lines(&stdout(&ccswb(&["equiv", "a[1].0 | b.0", "b.0 | a[1].0", "--witness"])));
    assert_eq!(lines.last().unwrap()["replay"], true);
}

#[test]
fn check_lemma1_clean_fragment_exits_zero() {
    let o = ccswb(&[
        "check",
        "lemma1",
        "--max-size",
        "3",
        "--names",
        "a,b",
        "--no-restrict",
        "--no-relabel",
        "--expect-clean",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&stdout(&o));
    assert_eq!(lines[0]["kind"], "config");
    assert_eq!(lines.last().unwrap()["clean"], true);
}

#[test]
fn check_lemma1_with_relabeling_reports_violations() {
    let o = ccswb(&[
        "check",
        "lemma1",
        "--relabel",
        "--max-size",
        "3",
        "--no-restrict",
        "--witness-depth",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let lines = json_lines(&stdout(&o));
    let v = &lines[1];
    assert!(v["p"].is_string() && v["alpha"].is_string() && v["sys_derivation"].is_object());
    let kept = ccswb(&[
        "check",
        "lemma1",
        "--relabel",
        "--keep-rel",
        "--max-size",
        "3",
        "--no-restrict",
        "--witness-depth",
        "1",
    ]);
    assert_eq!(kept.status.code(), Some(0));
}

#[test]
fn check_variants_on_one_term() {
    let o = ccswb(&["check", "variants", "--term", "a.0|b.0"]);
    assert!(o.status.success());
    let lines = json_lines(&stdout(&o));
    assert_eq!(lines.last().unwrap()["bisimilar"], 1);
}

#[test]
fn expect_clean_fails_on_truncation() {
    let args = [
        "check",
        "variants",
        "--term",
        "a.b.c.0 | 'a.'b.'c.0",
        "--max-states",
        "5",
    ];
    let o = ccswb(&args);
    assert_eq!(o.status.code(), Some(1), "a truncated comparison is a finding");
    let lines = json_lines(&stdout(&o));
    assert_eq!(lines[1]["verdict"], "truncated");
    assert_eq!(lines.last().unwrap()["complete"], false);
    let o = ccswb(&[
        "check",
        "ccsk-stability",
        "--term",
        "a.b.c.0 | 'a.0",
        "--max-states",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = ccswb(&[
        "check",
        "ccsk-stability",
        "--term",
        "a.b.c.0 | 'a.0",
        "--max-states",
        "2",
        "--expect-clean",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn loop_suites_are_seeded() {
    let a = stdout(&ccswb(&[
        "check",
        "loop-ccsk",
        "--max-size",
        "3",
        "--trials",
        "50",
        "--seed",
        "3",
    ]));
    let b = stdout(&ccswb(&[
        "check",
        "loop-ccsk",
        "--max-size",
        "3",
        "--trials",
        "50",
        "--seed",
        "3",
    ]));
    assert_eq!(a, b);
    let o = ccswb(&[
        "check",
        "loop-rccs",
        "--max-size",
        "3",
        "--trials",
        "50",
        "--lazy-congruence",
    ]);
    assert!(o.status.success());
    assert_eq!(json_lines(&stdout(&o))[0]["options"]["variant"], "lazy-congruence");
}
