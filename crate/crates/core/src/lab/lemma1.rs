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

//! Executable conservativity check: every rule-based transition of a term is matched, modulo
//! congruence, by a congruence-based transition of every congruent witness.

use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;

use crate::ccs::{explore, sys_transitions, Semantics, Transition};
use crate::congruence::{
    canonicalize_with, spec_transitions_with, witness_set, BruteOptions, CanonicalForm, CongAxiom, CongruenceOptions,
    ContextMode, SpecOptions, TraceStep,
};
use crate::error::Result;
use crate::lab::bisim::{bisim, BisimResult};
use crate::lab::enumerate::{enumerate_terms, Features};
use crate::term::{Defs, Label, Name, Process};

#[derive(Debug, Clone)]
pub struct Lemma1Config {
    pub max_size: usize,
    pub names: Vec<Name>,
    pub features: Features,
    pub unfold: usize,
    pub keep_rel: bool,
    /// Witnesses are all terms within this many axiom applications of the root.
    pub witness_depth: usize,
    pub context: ContextMode,
    /// Also check that congruence-based transitions are matched by rule-based ones.
    pub converse: bool,
}

impl Default for Lemma1Config {
    fn default() -> Self {
        Lemma1Config {
            max_size: 4,
            names: vec![Name::from_static("a"), Name::from_static("b")],
            features: Features::none(),
            unfold: 2,
            keep_rel: false,
            witness_depth: 3,
            context: ContextMode::All,
            converse: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub alpha: Label,
    pub target: Process,
}

/// A rule-based step `p -alpha-> p_prime` with no congruent match from the witness `q`.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub p: Process,
    pub q: Process,
    pub alpha: Label,
    pub p_prime: Process,
    pub spec_candidates: Vec<Candidate>,
    pub witness_trace: Vec<TraceStep>,
    /// Axiom applications relating `p` and `q`, alpha steps excluded: congruence used outside
    /// the transition system.
    pub outside_steps: usize,
    /// Root rule of the unmatched step.
    pub rule: String,
    pub sys_derivation: Transition,
    /// Derivations of the candidates, each closed by `con`: congruence used inside.
    pub spec_derivations: Vec<Transition>,
}

/// A congruence-based step with no rule-based match from the root.
#[derive(Debug, Clone, Serialize)]
pub struct ConverseViolation {
    pub p: Process,
    pub q: Process,
    pub alpha: Label,
    pub q_prime: Process,
    pub sys_candidates: Vec<Candidate>,
    pub spec_derivation: Transition,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Lemma1Summary {
    pub roots: usize,
    pub witnesses: usize,
    pub sys_transitions: usize,
    pub checks: usize,
    pub violations: usize,
    pub converse_checked: bool,
    pub converse_violations: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Lemma1Report {
    pub violations: Vec<Violation>,
    pub converse_violations: Vec<ConverseViolation>,
    pub summary: Lemma1Summary,
}

impl Lemma1Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// One JSON object per violation, converse findings tagged separately, then the summary.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            out.push_str(&serde_json::to_string(v).expect("serializable"));
            out.push('\n');
        }
        for v in &self.converse_violations {
            let mut value = serde_json::to_value(v).expect("serializable");
            value["kind"] = "converse".into();
            out.push_str(&value.to_string());
            out.push('\n');
        }
        let mut summary = serde_json::to_value(&self.summary).expect("serializable");
        summary["kind"] = "summary".into();
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

struct SpecEntry {
    transition: Transition,
    forms: Vec<CanonicalForm>,
}

struct Checker<'a> {
    defs: &'a Defs,
    config: &'a Lemma1Config,
    spec: HashMap<Process, Rc<Vec<SpecEntry>>>,
}

impl<'a> Checker<'a> {
    fn opts(&self, unfold: usize) -> CongruenceOptions {
        CongruenceOptions {
            unfold,
            context: self.config.context,
        }
    }

    /// Canonical forms at every unfold budget up to the bound (one if no constants occur).
    fn forms(&self, p: &Process) -> Result<Vec<CanonicalForm>> {
        let top = if p.mentions_const() { self.config.unfold } else { 0 };
        (0..=top)
            .map(|u| canonicalize_with(p, self.defs, &self.opts(u)))
            .collect()
    }

    fn spec_of(&mut self, q: &Process) -> Result<Rc<Vec<SpecEntry>>> {
        let key = canonicalize_with(q, self.defs, &self.opts(0))?.process;
        if let Some(hit) = self.spec.get(&key) {
            return Ok(hit.clone());
        }
        let opts = SpecOptions {
            unfold: self.config.unfold,
            keep_rel: self.config.keep_rel,
            context: self.config.context,
        };
        let mut entries = Vec::new();
        for t in spec_transitions_with(&key, self.defs, &opts)?.0 {
            let forms = self.forms(&t.target)?;
            entries.push(SpecEntry { transition: t, forms });
        }
        let entries = Rc::new(entries);
        self.spec.insert(key, entries.clone());
        Ok(entries)
    }

    fn check_root(&mut self, p: &Process, report: &mut Lemma1Report) -> Result<()> {
        let sys: Vec<(Transition, Vec<CanonicalForm>)> = sys_transitions(p, self.defs, self.config.unfold)?
            .into_iter()
            .map(|t| {
                let f = self.forms(&t.target)?;
                Ok((t, f))
            })
            .collect::<Result<_>>()?;
        report.summary.roots += 1;
        report.summary.sys_transitions += sys.len();
        let brute = BruteOptions {
            unfold: self.config.unfold > 0 && !self.defs.is_empty(),
            context: self.config.context,
            ..BruteOptions::new(0)
        };
        let witnesses = witness_set(p, self.defs, self.config.witness_depth, &brute);
        report.summary.witnesses += witnesses.len();
        let mut converse_seen = Vec::new();
        for w in witnesses {
            let spec = self.spec_of(&w.process)?;
            for (t, forms) in &sys {
                report.summary.checks += 1;
                let matched = spec
                    .iter()
                    .any(|e| e.transition.label == t.label && e.forms.iter().any(|f| forms.contains(f)));
                if !matched {
                    report.violations.push(Violation {
                        p: p.clone(),
                        q: w.process.clone(),
                        alpha: t.label.clone(),
                        p_prime: t.target.clone(),
                        spec_candidates: spec
                            .iter()
                            .map(|e| Candidate {
                                alpha: e.transition.label.clone(),
                                target: e.transition.target.clone(),
                            })
                            .collect(),
                        outside_steps: w.trace.iter().filter(|s| s.axiom != CongAxiom::Alpha).count(),
                        witness_trace: w.trace.clone(),
                        rule: t.rule.to_string(),
                        sys_derivation: t.clone(),
                        spec_derivations: spec.iter().map(|e| e.transition.clone()).collect(),
                    });
                }
            }
            if self.config.converse && !converse_seen.iter().any(|s: &Rc<Vec<SpecEntry>>| Rc::ptr_eq(s, &spec)) {
                converse_seen.push(spec.clone());
                for e in spec.iter() {
                    let matched = sys
                        .iter()
                        .any(|(t, forms)| t.label == e.transition.label && e.forms.iter().any(|f| forms.contains(f)));
                    if !matched {
                        report.converse_violations.push(ConverseViolation {
                            p: p.clone(),
                            q: w.process.clone(),
                            alpha: e.transition.label.clone(),
                            q_prime: e.transition.target.clone(),
                            sys_candidates: sys
                                .iter()
                                .map(|(t, _)| Candidate {
                                    alpha: t.label.clone(),
                                    target: t.target.clone(),
                                })
                                .collect(),
                            spec_derivation: e.transition.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Runs the check on every enumerated root.
pub fn check_lemma1(config: &Lemma1Config, defs: &Defs) -> Result<Lemma1Report> {
    let roots = enumerate_terms(config.max_size, &config.names, &config.features);
    check_lemma1_on(&roots, config, defs)
}

/// Runs the check on the given roots.
pub fn check_lemma1_on(roots: &[Process], config: &Lemma1Config, defs: &Defs) -> Result<Lemma1Report> {
    let mut checker = Checker {
        defs,
        config,
        spec: HashMap::new(),
    };
    let mut report = Lemma1Report::default();
    for p in roots {
        checker.check_root(p, &mut report)?;
    }
    let key =
        |p: &Process, q: &Process, a: &Label, t: &Process| (p.to_string(), q.to_string(), a.to_string(), t.to_string());
    report
        .violations
        .sort_by_cached_key(|v| key(&v.p, &v.q, &v.alpha, &v.p_prime));
    report
        .converse_violations
        .sort_by_cached_key(|v| key(&v.p, &v.q, &v.alpha, &v.q_prime));
    report.summary.violations = report.violations.len();
    report.summary.converse_checked = config.converse;
    report.summary.converse_violations = report.converse_violations.len();
    Ok(report)
}

/// Rule-based and congruence-based graphs of one root that are not bisimilar.
#[derive(Debug, Clone, Serialize)]
pub struct BisimFinding {
    pub p: Process,
    pub result: BisimResult,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BisimSummary {
    pub roots: usize,
    pub compared: usize,
    pub truncated: usize,
    pub findings: Vec<BisimFinding>,
}

/// Compares the rule-based graph of each root with its congruence-based graph (relabeling rule
/// kept) by strong bisimilarity.  Roots whose graphs are truncated are counted, not compared.
pub fn check_sys_spec_bisim(roots: &[Process], defs: &Defs, unfold: usize, max_states: usize) -> Result<BisimSummary> {
    let mut out = BisimSummary::default();
    let spec = Semantics::Spec {
        keep_rel: true,
        context: ContextMode::All,
    };
    for p in roots {
        out.roots += 1;
        let l1 = explore(p, defs, Semantics::Sys, unfold, max_states)?;
        let l2 = explore(p, defs, spec, unfold, max_states)?;
        if l1.truncated || l2.truncated {
            out.truncated += 1;
            continue;
        }
        out.compared += 1;
        let result = bisim(&l1, &l2)?;
        if !result.is_bisimilar() {
            out.findings.push(BisimFinding { p: p.clone(), result });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Process {
        s.parse().unwrap()
    }

    #[test]
    fn nil_is_vacuous() {
        let r = check_lemma1_on(&[p("0")], &Lemma1Config::default(), &Defs::new()).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.summary.sys_transitions, 0);
    }

    #[test]
    fn relabeling_without_its_rule_is_a_violation() {
        let cfg = Lemma1Config {
            witness_depth: 1,
            ..Lemma1Config::default()
        };
        let r = check_lemma1_on(&[p("(a.0)[a<-b]")], &cfg, &Defs::new()).unwrap();
        assert!(!r.is_clean());
        let v = &r.violations[0];
        assert_eq!(v.alpha.to_string(), "b");
        assert_eq!(v.rule, "rel");
        assert!(v.spec_candidates.is_empty());
        let kept = Lemma1Config { keep_rel: true, ..cfg };
        assert!(check_lemma1_on(&[p("(a.0)[a<-b]")], &kept, &Defs::new())
            .unwrap()
            .is_clean());
    }

    #[test]
    fn small_fragment_is_clean() {
        let cfg = Lemma1Config {
            max_size: 2,
            witness_depth: 2,
            converse: true,
            ..Lemma1Config::default()
        };
        let r = check_lemma1(&cfg, &Defs::new()).unwrap();
        assert!(r.is_clean(), "{}", r.to_json_lines());
        assert!(r.converse_violations.is_empty());
        assert!(r.to_json_lines().ends_with("}\n"));
    }

    #[test]
    fn graphs_agree() {
        let roots: Vec<Process> = ["a.0 | 'a.0", "(a.0 | 'a.0)\\a + b.0", "(a.b.0)[b<-a]"]
            .iter()
            .map(|s| p(s))
            .collect();
        let s = check_sys_spec_bisim(&roots, &Defs::new(), 0, 1000).unwrap();
        assert_eq!(s.compared, 3);
        assert!(s.findings.is_empty(), "{:?}", s.findings);
    }
}
