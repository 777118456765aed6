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

//! The `check` suites: each yields deterministic JSON lines ending in a summary.

use serde::Serialize;
use serde_json::json;

use crate::ccsk::{k_loop_check_roots, k_stability_check_on, KLoopOptions, KStabilityConfig};
use crate::cli::CheckArgs;
use crate::error::Result;
use crate::lab::{check_lemma1_on, check_sys_spec_bisim, enumerate_terms, oracle_agreement_on, Features, Lemma1Config};
use crate::rccs::{check_variants, loop_check_roots, LoopOptions};
use crate::term::{parse, Defs, Process};

/// Output of one suite.  `clean` is false when violations were found; `complete` is false when a
/// bound cut the exploration short.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub lines: Vec<String>,
    pub clean: bool,
    pub complete: bool,
}

impl SuiteReport {
    fn new(config: serde_json::Value) -> SuiteReport {
        SuiteReport {
            lines: vec![config.to_string()],
            clean: true,
            complete: true,
        }
    }

    fn push(&mut self, item: &impl Serialize) {
        self.lines.push(serde_json::to_string(item).expect("serializable"));
    }

    fn summary(&mut self, mut value: serde_json::Value) {
        value["kind"] = "summary".into();
        value["clean"] = self.clean.into();
        value["complete"] = self.complete.into();
        self.lines.push(value.to_string());
    }

    fn extend(&mut self, text: &str) {
        self.lines.extend(text.lines().map(str::to_string));
    }
}

fn features(args: &CheckArgs) -> Features {
    Features {
        restrict: !args.no_restrict,
        relabel: args.relabel,
        ..Features::default()
    }
}

fn roots(args: &CheckArgs, defs: &Defs) -> Result<Vec<Process>> {
    if args.term.is_empty() {
        Ok(enumerate_terms(args.max_size, &args.names, &features(args)))
    } else {
        args.term.iter().map(|t| parse(t, defs)).collect()
    }
}

/// Runs the suite named in `args`.
pub fn run_suite(args: &CheckArgs, unfold: usize, defs: &Defs) -> Result<SuiteReport> {
    let roots = roots(args, defs)?;
    let mut config = json!({
        "kind": "config",
        "suite": args.suite.as_str(),
        "roots": roots.len(),
        "unfold": unfold,
    });
    if args.term.is_empty() {
        config["max_size"] = args.max_size.into();
        config["names"] = json!(args.names);
        config["features"] = json!(features(args));
    } else {
        config["terms"] = json!(roots);
    }
    use crate::cli::Suite::*;
    let report = match args.suite {
        Lemma1 => {
            let cfg = Lemma1Config {
                max_size: args.max_size,
                names: args.names.clone(),
                features: features(args),
                unfold,
                keep_rel: args.keep_rel,
                witness_depth: args.witness_depth.unwrap_or(3),
                context: args.congruence_context,
                converse: args.converse,
            };
            config["keep_rel"] = cfg.keep_rel.into();
            config["witness_depth"] = cfg.witness_depth.into();
            config["context"] = cfg.context.to_string().into();
            config["converse"] = cfg.converse.into();
            let mut out = SuiteReport::new(config);
            let r = check_lemma1_on(&roots, &cfg, defs)?;
            out.clean = r.is_clean() && r.converse_violations.is_empty();
            out.extend(&r.to_json_lines());
            let last = out.lines.pop().expect("summary line");
            let mut summary: serde_json::Value = serde_json::from_str(&last).expect("valid json");
            summary["suite"] = "lemma1".into();
            out.summary(summary);
            out
        }
        Bisim => {
            config["max_states"] = args.max_states.into();
            let mut out = SuiteReport::new(config);
            let s = check_sys_spec_bisim(&roots, defs, unfold, args.max_states)?;
            for f in &s.findings {
                out.push(f);
            }
            out.clean = s.findings.is_empty();
            out.complete = s.truncated == 0;
            out.summary(json!({
                "suite": "bisim", "roots": s.roots, "compared": s.compared,
                "truncated": s.truncated, "findings": s.findings.len(),
            }));
            out
        }
        Oracle => {
            config["budget"] = args.budget.into();
            let mut out = SuiteReport::new(config);
            let r = oracle_agreement_on(&roots, args.budget, defs)?;
            for d in &r.disagreements {
                out.push(d);
            }
            out.clean = r.agrees();
            out.complete = r.pairs_exhausted == 0;
            out.summary(json!({
                "suite": "oracle", "terms": r.terms, "closures": r.closures,
                "exhausted_closures": r.exhausted_closures, "pairs_decided": r.pairs_decided,
                "pairs_exhausted": r.pairs_exhausted, "disagreements": r.disagreements.len(),
            }));
            out
        }
        LoopRccs => {
            let opts = LoopOptions {
                depth: args.depth,
                trials: args.trials,
                seed: args.seed,
                variant: args.variant(),
                unfold,
            };
            config["options"] = json!(opts);
            let mut out = SuiteReport::new(config);
            let r = loop_check_roots(&roots, defs, &opts)?;
            for f in &r.failures {
                out.push(f);
            }
            out.clean = r.is_clean();
            out.summary(json!({
                "suite": "loop-rccs", "trials": r.trials, "forward_steps": r.forward_steps,
                "failures": r.failures.len(),
            }));
            out
        }
        LoopCcsk => {
            let opts = KLoopOptions {
                depth: args.depth,
                trials: args.trials,
                seed: args.seed,
                unfold,
            };
            config["options"] = json!(opts);
            let mut out = SuiteReport::new(config);
            let r = k_loop_check_roots(&roots, defs, &opts)?;
            for f in &r.failures {
                out.push(f);
            }
            out.clean = r.is_clean();
            out.summary(json!({
                "suite": "loop-ccsk", "trials": r.trials, "forward_steps": r.forward_steps,
                "std_reductions": r.std_reductions, "longest_reduction": r.longest_reduction,
                "failures": r.failures.len(),
            }));
            out
        }
        Variants => {
            config["max_states"] = args.max_states.into();
            let mut out = SuiteReport::new(config);
            let s = check_variants(&roots, defs, args.max_states, unfold)?;
            for f in &s.findings {
                out.push(f);
            }
            out.clean = s.is_clean();
            out.complete = s.truncated == 0;
            out.summary(json!({
                "suite": "variants", "roots": s.roots, "bisimilar": s.bisimilar,
                "truncated": s.truncated, "findings": s.findings.len(),
            }));
            out
        }
        CcskStability => {
            let cfg = KStabilityConfig {
                max_size: args.max_size,
                names: args.names.clone(),
                features: features(args),
                fragment: args.fragment,
                witness_depth: args.witness_depth.unwrap_or(2),
                unfold,
                max_states: args.max_states,
            };
            config["fragment"] = json!(cfg.fragment);
            config["witness_depth"] = cfg.witness_depth.into();
            config["max_states"] = cfg.max_states.into();
            let mut out = SuiteReport::new(config);
            let r = k_stability_check_on(&roots, &cfg, defs)?;
            out.clean = r.is_clean();
            out.complete = r.truncated_roots == 0;
            out.extend(&r.to_json_lines());
            let last = out.lines.pop().expect("summary line");
            let mut summary: serde_json::Value = serde_json::from_str(&last).expect("valid json");
            summary["suite"] = "ccsk-stability".into();
            out.summary(summary);
            out
        }
    };
    Ok(report)
}
