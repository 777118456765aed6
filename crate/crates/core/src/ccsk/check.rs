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

//! Loop lemma, reachability of the standard form, and stability under structural equivalence.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ccs::{explore_graph, sys_transitions, Lts};
use crate::ccsk::equiv::{k_canon, k_replay, k_witnesses, Fragment, KRewriteStep};
use crate::ccsk::step::{k_bwd, k_fwd, KStep};
use crate::ccsk::{k_alpha_canon, k_alpha_eq, validate, KProcess, Key};
use crate::error::Result;
use crate::lab::{enumerate_terms, Features};
use crate::term::{alpha_canon, Defs, Label, Name, Process};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KLoopOptions {
    pub depth: usize,
    pub trials: usize,
    pub seed: u64,
    pub unfold: usize,
}

impl Default for KLoopOptions {
    fn default() -> KLoopOptions {
        KLoopOptions {
            depth: 8,
            trials: 200,
            seed: 0,
            unfold: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KLoopFailure {
    pub trial: usize,
    pub root: Process,
    /// Forward steps taken before the failing one, as `label[key]`.
    pub trace: Vec<String>,
    pub state: KProcess,
    pub step: String,
    pub target: KProcess,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KLoopReport {
    pub trials: usize,
    pub forward_steps: usize,
    /// Backward-only reductions run to a standard term.
    pub std_reductions: usize,
    /// Largest number of backward steps one such reduction took.
    pub longest_reduction: usize,
    pub failures: Vec<KLoopFailure>,
}

impl KLoopReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn k_loop_check(p: &Process, defs: &Defs, opts: &KLoopOptions) -> Result<KLoopReport> {
    k_loop_check_roots(std::slice::from_ref(p), defs, opts)
}

/// Random forward walks from standard roots.  Every step must keep the key invariants, be
/// undone by a backward step with the same label and key that restores the previous term up to
/// alpha-conversion and unfolding of constants, agree with the CCS transitions of the executed
/// residual, and leave a term from which backward steps alone lead back to the root in at most
/// one step per key.
pub fn k_loop_check_roots(roots: &[Process], defs: &Defs, opts: &KLoopOptions) -> Result<KLoopReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = KLoopReport::default();
    if roots.is_empty() {
        return Ok(report);
    }
    for trial in 0..opts.trials {
        report.trials += 1;
        let root = &roots[rng.gen_range(0..roots.len())];
        let start = KProcess::from(root);
        let mut state = start.clone();
        let mut trace = Vec::new();
        for _ in 0..opts.depth {
            let fwd = k_fwd(&state, defs, opts.unfold)?;
            if fwd.is_empty() {
                break;
            }
            let t = fwd[rng.gen_range(0..fwd.len())].clone();
            report.forward_steps += 1;
            let step = format!("{}[{}]", t.label, t.key);
            let reason = match check_step(&state, &t, defs, opts.unfold)? {
                Some(r) => Some(r),
                None => {
                    let (n, end) = reduce_to_std(&t.target, &mut rng);
                    report.std_reductions += 1;
                    report.longest_reduction = report.longest_reduction.max(n);
                    if n > t.target.keys().len() {
                        Some(format!("backward reduction took {n} steps"))
                    } else if !end.is_std() || !k_alpha_eq(&k_fold(&end, defs), &k_fold(&start, defs)) {
                        Some(format!("backward reduction ends in {end}"))
                    } else {
                        None
                    }
                }
            };
            if let Some(reason) = reason {
                report.failures.push(KLoopFailure {
                    trial,
                    root: root.clone(),
                    trace: trace.clone(),
                    state: state.clone(),
                    step,
                    target: t.target,
                    reason,
                });
                break;
            }
            trace.push(step);
            state = t.target;
        }
    }
    Ok(report)
}

/// Folds constant bodies back into constants in the standard parts of `p`.
fn k_fold(p: &KProcess, defs: &Defs) -> KProcess {
    if p.is_std() {
        return KProcess::from(&defs.fold(&p.erase()));
    }
    match p {
        KProcess::Prefix(a, k, q) => KProcess::prefix(a.clone(), *k, k_fold(q, defs)),
        KProcess::Sum(ps) => KProcess::Sum(ps.iter().map(|q| k_fold(q, defs)).collect()),
        KProcess::Par(q, r) => KProcess::par(k_fold(q, defs), k_fold(r, defs)),
        KProcess::Restrict(q, a) => KProcess::restrict(k_fold(q, defs), a.clone()),
        KProcess::Relabel(q, s) => KProcess::relabel(k_fold(q, defs), s.clone()),
        KProcess::Nil | KProcess::Const(_) => p.clone(),
    }
}

fn check_step(state: &KProcess, t: &KStep, defs: &Defs, unfold: usize) -> Result<Option<String>> {
    if let Err(e) = validate(&t.target) {
        return Ok(Some(e.to_string()));
    }
    if t.key <= state.max_key() {
        return Ok(Some(format!("key {} is not fresh", t.key)));
    }
    let back = k_bwd(&t.target);
    if !back.iter().any(|b| b.label == t.label && b.key == t.key) {
        return Ok(Some("no backward step with the same label and key".into()));
    }
    if !back
        .iter()
        .any(|b| b.label == t.label && b.key == t.key && k_alpha_eq(&k_fold(&b.target, defs), &k_fold(state, defs)))
    {
        return Ok(Some("undo does not restore the previous term".into()));
    }
    let residual = alpha_canon(&t.target.residual());
    let sys = sys_transitions(&state.residual(), defs, unfold)?;
    if !sys
        .iter()
        .any(|s| s.label == t.label && alpha_canon(&s.target) == residual)
    {
        return Ok(Some(
            "step has no counterpart among the CCS transitions of the residual".into(),
        ));
    }
    Ok(None)
}

/// Takes random backward steps until none is left; returns the number taken and the end term.
fn reduce_to_std(p: &KProcess, rng: &mut ChaCha8Rng) -> (usize, KProcess) {
    let mut cur = p.clone();
    let mut n = 0;
    loop {
        let back = k_bwd(&cur);
        if back.is_empty() || n > p.keys().len() {
            return (n, cur);
        }
        cur = back[rng.gen_range(0..back.len())].target.clone();
        n += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KStabilityConfig {
    pub max_size: usize,
    pub names: Vec<Name>,
    pub features: Features,
    pub fragment: Fragment,
    pub witness_depth: usize,
    pub unfold: usize,
    /// Forward-reachable keyed terms kept per root.
    pub max_states: usize,
}

impl Default for KStabilityConfig {
    fn default() -> KStabilityConfig {
        KStabilityConfig {
            max_size: 4,
            names: vec![Name::from_static("a"), Name::from_static("b")],
            features: Features::restrict(),
            fragment: Fragment::AcUnitAlpha,
            witness_depth: 2,
            unfold: 2,
            max_states: 1000,
        }
    }
}

/// A transition of `p` with no counterpart from the equivalent `q`, or the converse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KViolation {
    pub p: KProcess,
    pub q: KProcess,
    /// Rewrites turning `p` into `q`.
    pub witness_trace: Vec<KRewriteStep>,
    /// `forward` or `backward`.
    pub direction: &'static str,
    /// True when the unmatched transition is one of `q`'s.
    pub converse: bool,
    pub label: Label,
    pub key: Key,
    pub target: KProcess,
    /// Transitions of the other side with the same label and key.
    pub candidates: Vec<KProcess>,
}

impl KViolation {
    /// The witness trace is a valid rewrite sequence from `p` to `q`.
    pub fn replays(&self, fragment: Fragment) -> bool {
        k_replay(&self.p, &self.q, &self.witness_trace, fragment)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KStabilityReport {
    pub fragment: Fragment,
    pub roots: usize,
    pub states: usize,
    pub truncated_roots: usize,
    pub witnesses: usize,
    pub checks: usize,
    pub violations: Vec<KViolation>,
}

impl KStabilityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every violation carries a replayable witness.
    pub fn well_formed(&self) -> bool {
        self.violations.iter().all(|v| v.replays(self.fragment))
    }

    /// One JSON object per violation, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            out.push_str(&serde_json::to_string(v).expect("serializable"));
            out.push('\n');
        }
        let mut summary = serde_json::json!({
            "kind": "summary",
            "fragment": self.fragment,
            "roots": self.roots,
            "states": self.states,
            "truncated_roots": self.truncated_roots,
            "witnesses": self.witnesses,
            "checks": self.checks,
            "violations": self.violations.len(),
            "well_formed": self.well_formed(),
        });
        summary["clean"] = self.is_clean().into();
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Enumerates standard roots and runs [`k_stability_check_on`].
pub fn k_stability_check(config: &KStabilityConfig, defs: &Defs) -> Result<KStabilityReport> {
    let roots = enumerate_terms(config.max_size, &config.names, &config.features);
    k_stability_check_on(&roots, config, defs)
}

/// For every keyed term forward-reachable from `roots`, and every variant produced by at most
/// `witness_depth` rewrites of the fragment, each forward and backward transition on one side must
/// be matched, with the same label and key, by one on the other side into an equivalent term.
pub fn k_stability_check_on(roots: &[Process], config: &KStabilityConfig, defs: &Defs) -> Result<KStabilityReport> {
    let mut report = KStabilityReport {
        fragment: config.fragment,
        ..Default::default()
    };
    let mut states: BTreeSet<KProcess> = BTreeSet::new();
    for root in roots {
        report.roots += 1;
        let start = k_alpha_canon(&KProcess::from(root));
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for t in k_fwd(&s, defs, config.unfold)? {
                let next = k_alpha_canon(&t.target);
                if seen.len() >= config.max_states {
                    report.truncated_roots += 1;
                    queue.clear();
                    break;
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        states.extend(seen);
    }
    report.states = states.len();
    for p in &states {
        let pf = signature(&k_fwd(p, defs, config.unfold)?, config.fragment);
        let pb = signature(&k_bwd(p), config.fragment);
        for w in k_witnesses(p, config.fragment, config.witness_depth)
            .into_iter()
            .skip(1)
        {
            report.witnesses += 1;
            let q = &w.process;
            let qf = signature(&k_fwd(q, defs, config.unfold)?, config.fragment);
            let qb = signature(&k_bwd(q), config.fragment);
            for (direction, mine, theirs) in [("forward", &pf, &qf), ("backward", &pb, &qb)] {
                for (converse, a, b) in [(false, mine, theirs), (true, theirs, mine)] {
                    for (step, canon) in a {
                        report.checks += 1;
                        let matched = b
                            .iter()
                            .any(|(s, c)| s.label == step.label && s.key == step.key && c == canon);
                        if !matched {
                            report.violations.push(KViolation {
                                p: p.clone(),
                                q: q.clone(),
                                witness_trace: w.trace.clone(),
                                direction,
                                converse,
                                label: step.label.clone(),
                                key: step.key,
                                target: step.target.clone(),
                                candidates: b
                                    .iter()
                                    .filter(|(s, _)| s.label == step.label && s.key == step.key)
                                    .map(|(s, _)| s.target.clone())
                                    .collect(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn signature(steps: &[KStep], fragment: Fragment) -> Vec<(KStep, KProcess)> {
    steps
        .iter()
        .map(|s| (s.clone(), k_canon(&s.target, fragment)))
        .collect()
}

/// Forward-and-backward transition system of the keyed term `p`, edges labeled `fwd:<label>` or
/// `bwd:<label>` with the key as rule, states taken up to alpha-conversion.
pub fn k_lts(p: &KProcess, defs: &Defs, unfold: usize, max_states: usize) -> Result<Lts> {
    validate(p)?;
    explore_graph(k_alpha_canon(p), max_states, KProcess::to_string, |s| {
        let mut out = Vec::new();
        for t in k_fwd(s, defs, unfold)? {
            out.push((
                format!("fwd:{}", t.label),
                format!("key {}", t.key),
                k_alpha_canon(&t.target),
            ));
        }
        for t in k_bwd(s) {
            out.push((
                format!("bwd:{}", t.label),
                format!("key {}", t.key),
                k_alpha_canon(&t.target),
            ));
        }
        Ok((out, false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Process {
        text.parse().unwrap()
    }

    fn opts(depth: usize) -> KLoopOptions {
        KLoopOptions {
            depth,
            trials: 40,
            seed: 3,
            unfold: 2,
        }
    }

    #[test]
    fn loop_examples() {
        let r = k_loop_check(&p("a.b.0"), &Defs::new(), &opts(2)).unwrap();
        assert!(r.is_clean(), "{:?}", r.failures);
        assert_eq!(r.longest_reduction, 2);
        let zero = k_loop_check(&p("0"), &Defs::new(), &opts(4)).unwrap();
        assert!(zero.is_clean());
        assert_eq!(zero.forward_steps, 0);
        for t in [
            "a.0 + b.0",
            "(a.0 | 'a.0)\\a",
            "a.(b.0 | 'b.0) + 'a.0 | a.0",
            "(a.0 | b.0)[a<-b]",
        ] {
            let r = k_loop_check(&p(t), &Defs::new(), &opts(6)).unwrap();
            assert!(r.is_clean(), "{t}: {:?}", r.failures);
        }
    }

    #[test]
    fn constants_come_back_folded() {
        let defs = Defs::parse("A = a.A\nC = a.0 | b.C\nD = (x.D | 'x.0)\\x").unwrap();
        for t in ["A", "C", "D | 'a.0", "(A | 'a.D)\\a"] {
            let r = k_loop_check(&p(t), &defs, &opts(6)).unwrap();
            assert!(r.is_clean(), "{t}: {:?}", r.failures);
            assert!(r.forward_steps > 0);
        }
    }

    #[test]
    fn frozen_sum_comes_back_whole() {
        let k = KProcess::from(&p("a.0 + b.0"));
        let t = k_fwd(&k, &Defs::new(), 2).unwrap().remove(0);
        assert_eq!(t.target.to_string(), "a[1].0 + b.0");
        assert_eq!(k_bwd(&t.target)[0].target, k);
    }

    #[test]
    fn stability_without_congruence_is_vacuous() {
        let config = KStabilityConfig {
            max_size: 2,
            fragment: Fragment::None,
            ..Default::default()
        };
        let r = k_stability_check(&config, &Defs::new()).unwrap();
        assert!(r.is_clean());
        assert!(r.states > 0);
    }

    #[test]
    fn stability_on_a_frozen_sum() {
        let config = KStabilityConfig::default();
        let r = k_stability_check_on(&[p("(a.0 + b.0) | 'a.0")], &config, &Defs::new()).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations.first());
        assert!(r.witnesses > 0);
    }
}
