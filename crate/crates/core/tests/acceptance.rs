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

//! Acceptance suite: one PASS/FAIL line per criterion.  Bounds, seeds and time limits are pinned
//! below.  Runs without the test harness so the lines always reach standard output.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ccs_workbench::ccsk::{k_loop_check_roots, k_stability_check, Fragment, KLoopOptions, KStabilityConfig};
use ccs_workbench::cli::{run_suite, Cli, Command as CliCommand};
use ccs_workbench::lab::{
    check_lemma1, check_lemma1_on, check_sys_spec_bisim, enumerate_terms, oracle_agreement, terms_by_size,
    AgreementConfig, Features, Lemma1Config,
};
use ccs_workbench::rccs::{check_variants, loop_check_roots, LoopOptions, Variant};
use ccs_workbench::term::{Defs, Name};
use clap::Parser;

const ORACLE_MAX_SIZE: usize = 6;
const ORACLE_BUDGET: usize = 10_000;
const ORACLE_LIMIT: Duration = Duration::from_secs(300);

const LEMMA1_MAX_SIZE: usize = 4;
const LEMMA1_SPOT_SIZE: usize = 5;
/// Every this-many-th root of the spot size is checked.
const LEMMA1_SPOT_STRIDE: usize = 20;
const LEMMA1_WITNESS_DEPTH: usize = 3;
const LEMMA1_LIMIT: Duration = Duration::from_secs(300);

const RELABEL_MAX_SIZE: usize = 3;

const BISIM_MAX_STATES: usize = 1000;

const LOOP_MAX_SIZE: usize = 4;
const LOOP_TRIALS: usize = 1000;
const LOOP_DEPTH: usize = 8;
const LOOP_SEED: u64 = 0;
const LOOP_LIMIT: Duration = Duration::from_secs(120);

const VARIANTS_MAX_SIZE: usize = 4;
const VARIANTS_MAX_STATES: usize = 1000;

const STABILITY_MAX_SIZE: usize = 4;

const UNFOLD: usize = 2;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn names() -> Vec<Name> {
    vec![Name::from_static("a"), Name::from_static("b")]
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn oracle_agreement_criterion() -> Outcome {
    let start = Instant::now();
    let config = AgreementConfig {
        max_size: ORACLE_MAX_SIZE,
        names: names(),
        features: Features::restrict(),
        step_budget: ORACLE_BUDGET,
    };
    let r = oracle_agreement(&config, &Defs::new()).expect("oracle run");
    let took = start.elapsed();
    Outcome {
        pass: r.agrees() && r.pairs_exhausted == 0 && took < ORACLE_LIMIT,
        detail: format!(
            "{} terms, {} pairs decided, {} undecided, {} disagreements, {}",
            r.terms,
            r.pairs_decided,
            r.pairs_exhausted,
            r.disagreements.len(),
            secs(took)
        ),
    }
}

fn lemma1_config(features: Features, keep_rel: bool) -> Lemma1Config {
    Lemma1Config {
        max_size: LEMMA1_MAX_SIZE,
        names: names(),
        features,
        unfold: UNFOLD,
        keep_rel,
        witness_depth: LEMMA1_WITNESS_DEPTH,
        ..Lemma1Config::default()
    }
}

fn lemma1_criterion() -> Outcome {
    let start = Instant::now();
    let defs = Defs::new();
    let config = lemma1_config(Features::none(), false);
    let full = check_lemma1(&config, &defs).expect("lemma1 run");
    let spot: Vec<_> = terms_by_size(LEMMA1_SPOT_SIZE, &config.names, &config.features)[LEMMA1_SPOT_SIZE]
        .iter()
        .step_by(LEMMA1_SPOT_STRIDE)
        .cloned()
        .collect();
    let sampled = check_lemma1_on(&spot, &config, &defs).expect("lemma1 spot run");
    let took = start.elapsed();
    Outcome {
        pass: full.is_clean() && sampled.is_clean() && took < LEMMA1_LIMIT,
        detail: format!(
            "size <= {LEMMA1_MAX_SIZE}: {} roots, {} checks, {} violations; size {LEMMA1_SPOT_SIZE} spot: {} roots, {} violations; {}",
            full.summary.roots,
            full.summary.checks,
            full.summary.violations,
            sampled.summary.roots,
            sampled.summary.violations,
            secs(took)
        ),
    }
}

fn relabel_criterion() -> Outcome {
    let start = Instant::now();
    let defs = Defs::new();
    let run = |keep_rel| {
        let config = Lemma1Config {
            max_size: RELABEL_MAX_SIZE,
            ..lemma1_config(Features::relabel(), keep_rel)
        };
        check_lemma1(&config, &defs).expect("lemma1 run")
    };
    let dropped = run(false);
    let kept = run(true);
    Outcome {
        pass: !dropped.violations.is_empty() && kept.is_clean(),
        detail: format!(
            "size <= {RELABEL_MAX_SIZE}: {} violations without the relabeling rule, {} with it; {}",
            dropped.violations.len(),
            kept.violations.len(),
            secs(start.elapsed())
        ),
    }
}

fn bisim_criterion() -> Outcome {
    let start = Instant::now();
    let roots = enumerate_terms(LEMMA1_MAX_SIZE, &names(), &Features::none());
    let s = check_sys_spec_bisim(&roots, &Defs::new(), UNFOLD, BISIM_MAX_STATES).expect("bisim run");
    Outcome {
        pass: s.findings.is_empty() && s.compared == s.roots,
        detail: format!(
            "{} roots, {} compared, {} not bisimilar; {}",
            s.roots,
            s.compared,
            s.findings.len(),
            secs(start.elapsed())
        ),
    }
}

fn loop_roots() -> Vec<ccs_workbench::term::Process> {
    enumerate_terms(LOOP_MAX_SIZE, &names(), &Features::restrict())
}

fn rccs_loop_criterion() -> Outcome {
    let start = Instant::now();
    let roots = loop_roots();
    let mut parts = Vec::new();
    let mut pass = true;
    for variant in [Variant::Congruence, Variant::Rule, Variant::LazyCongruence] {
        let opts = LoopOptions {
            depth: LOOP_DEPTH,
            trials: LOOP_TRIALS,
            seed: LOOP_SEED,
            variant,
            unfold: UNFOLD,
        };
        let r = loop_check_roots(&roots, &Defs::new(), &opts).expect("loop run");
        pass &= r.is_clean() && r.trials == LOOP_TRIALS;
        parts.push(format!(
            "{variant}: {} steps, {} failures",
            r.forward_steps,
            r.failures.len()
        ));
    }
    let took = start.elapsed();
    Outcome {
        pass: pass && took < LOOP_LIMIT,
        detail: format!(
            "{} roots, {} trials each; {}; {}",
            roots.len(),
            LOOP_TRIALS,
            parts.join("; "),
            secs(took)
        ),
    }
}

fn variants_criterion() -> Outcome {
    let start = Instant::now();
    let roots = enumerate_terms(VARIANTS_MAX_SIZE, &names(), &Features::restrict());
    let s = check_variants(&roots, &Defs::new(), VARIANTS_MAX_STATES, UNFOLD).expect("variants run");
    Outcome {
        pass: s.is_clean() && s.bisimilar == s.roots,
        detail: format!(
            "{} roots, {} bisimilar, {} truncated, {} findings; {}",
            s.roots,
            s.bisimilar,
            s.truncated,
            s.findings.len(),
            secs(start.elapsed())
        ),
    }
}

fn ccsk_loop_criterion() -> Outcome {
    let start = Instant::now();
    let roots = loop_roots();
    let opts = KLoopOptions {
        depth: LOOP_DEPTH,
        trials: LOOP_TRIALS,
        seed: LOOP_SEED,
        unfold: UNFOLD,
    };
    let r = k_loop_check_roots(&roots, &Defs::new(), &opts).expect("ccsk loop run");
    let took = start.elapsed();
    Outcome {
        pass: r.is_clean() && r.std_reductions == r.forward_steps && took < LOOP_LIMIT,
        detail: format!(
            "{} trials, {} steps, {} reductions to the root (longest {}), {} failures; {}",
            r.trials,
            r.forward_steps,
            r.std_reductions,
            r.longest_reduction,
            r.failures.len(),
            secs(took)
        ),
    }
}

fn stability_criterion() -> Outcome {
    let start = Instant::now();
    let config = KStabilityConfig {
        max_size: STABILITY_MAX_SIZE,
        names: names(),
        fragment: Fragment::AcUnitAlpha,
        ..KStabilityConfig::default()
    };
    let r = k_stability_check(&config, &Defs::new()).expect("stability run");
    let lines = r.to_json_lines();
    let summary: serde_json::Value = serde_json::from_str(lines.lines().last().expect("summary")).expect("json");
    let replayable = r.violations.iter().all(|v| v.replays(config.fragment));
    Outcome {
        pass: summary["kind"] == "summary" && (r.is_clean() || (r.well_formed() && replayable)),
        detail: format!(
            "{} roots, {} keyed states, {} variants, {} checks, {} violations; {}",
            r.roots,
            r.states,
            r.witnesses,
            r.checks,
            r.violations.len(),
            secs(start.elapsed())
        ),
    }
}

fn suite_bytes(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(args).expect("valid arguments");
    let CliCommand::Check(check) = &cli.command else {
        panic!("not a check command")
    };
    run_suite(check, cli.unfold, &Defs::new())
        .expect("suite run")
        .lines
        .join("\n")
}

fn determinism_criterion() -> Outcome {
    let start = Instant::now();
    let runs: [&[&str]; 7] = [
        &[
            "ccswb",
            "check",
            "lemma1",
            "--max-size",
            "3",
            "--no-restrict",
            "--converse",
        ],
        &["ccswb", "check", "lemma1", "--max-size", "2", "--relabel"],
        &["ccswb", "check", "bisim"],
        &[
            "ccswb",
            "check",
            "loop-rccs",
            "--trials",
            "300",
            "--seed",
            "11",
            "--variant",
            "rule",
        ],
        &["ccswb", "check", "loop-ccsk", "--trials", "300", "--seed", "11"],
        &["ccswb", "check", "variants", "--max-size", "3"],
        &["ccswb", "check", "ccsk-stability", "--max-size", "3"],
    ];
    let mut identical = 0;
    for args in runs {
        if suite_bytes(args) == suite_bytes(args) {
            identical += 1;
        }
    }
    let bin = env!("CARGO_BIN_EXE_ccswb");
    let invoke = || {
        Command::new(bin)
            .args(["check", "loop-rccs", "--seed", "5", "--trials", "300"])
            .output()
            .expect("binary runs")
            .stdout
    };
    let binary_identical = invoke() == invoke();
    Outcome {
        pass: identical == runs.len() && binary_identical,
        detail: format!(
            "{identical}/{} suites byte-identical in process, binary output identical: {binary_identical}; {}",
            runs.len(),
            secs(start.elapsed())
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "congruence decision agrees with exhaustive rewriting",
            oracle_agreement_criterion,
        ),
        ("rule-based steps are matched modulo congruence", lemma1_criterion),
        (
            "dropping the relabeling rule breaks the match, keeping it restores it",
            relabel_criterion,
        ),
        ("rule-based and congruence-based systems are bisimilar", bisim_criterion),
        ("RCCS loop property", rccs_loop_criterion),
        ("RCCS congruence and rule variants are bisimilar", variants_criterion),
        ("CCSK loop property and reduction to the root", ccsk_loop_criterion),
        (
            "CCSK transitions are stable under the rewrite fragment",
            stability_criterion,
        ),
        ("reports are deterministic", determinism_criterion),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("{verdict} criterion {}: {title} ({})", i + 1, o.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
