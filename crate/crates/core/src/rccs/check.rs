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

//! Invariant checks, the loop lemma on random walks and the comparison of the two variants.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ccs::{explore_graph, Lts};
use crate::error::Result;
use crate::lab::bisim;
use crate::rccs::step::{bwd_transitions, fwd_transitions, normalize, r_alpha_canon, state_key};
use crate::rccs::{Event, EventId, Memory, RProcess, Variant};
use crate::term::{Defs, Process};

/// Checks that the memories of any two threads on opposite sides of a parallel composition agree
/// up to, and including, the fork that separated them.
pub fn coherence(r: &RProcess) -> std::result::Result<(), String> {
    match r {
        RProcess::Thread(..) => Ok(()),
        RProcess::Res(b, _) => coherence(b),
        RProcess::Par(l, rr) => {
            coherence(l)?;
            coherence(rr)?;
            for (m1, _) in l.threads() {
                for (m2, _) in rr.threads() {
                    let common = m1.events().iter().zip(m2.events()).take_while(|(a, b)| a == b).count();
                    if common == 0 || m1.events()[common - 1] != Event::Fork {
                        return Err(format!("memories {m1} and {m2} do not share a fork"));
                    }
                }
            }
            Ok(())
        }
    }
}

/// Checks the id discipline: ids increase up each stack, an id names one event or two
/// complementary synchronizing events, and no id exceeds `counter` when given.
pub fn id_check(r: &RProcess, counter: Option<EventId>) -> std::result::Result<(), String> {
    let mut events: BTreeMap<EventId, BTreeSet<&Event>> = BTreeMap::new();
    for (m, _) in r.threads() {
        let ids: Vec<EventId> = m.events().iter().filter_map(Event::id).collect();
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("ids do not increase in {m}"));
        }
        for e in m.events() {
            if let Some(id) = e.id() {
                events.entry(id).or_default().insert(e);
            }
        }
    }
    for (id, es) in &events {
        let labels: Vec<_> = es
            .iter()
            .filter_map(|e| match e {
                Event::Act { label, .. } => Some(label),
                Event::Fork => None,
            })
            .collect();
        let ok = match labels.as_slice() {
            [_] => true,
            [a, b] => a.is_complement_of(b),
            _ => false,
        };
        if !ok {
            return Err(format!("id {id} names {} distinct events", labels.len()));
        }
        if counter.is_some_and(|c| *id > c) {
            return Err(format!("id {id} exceeds the step counter"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopOptions {
    pub depth: usize,
    pub trials: usize,
    pub seed: u64,
    pub variant: Variant,
    pub unfold: usize,
}

impl Default for LoopOptions {
    fn default() -> LoopOptions {
        LoopOptions {
            depth: 8,
            trials: 200,
            seed: 0,
            variant: Variant::Congruence,
            unfold: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopFailure {
    pub trial: usize,
    pub root: Process,
    /// Forward steps taken before the failing one, as `id:label`.
    pub trace: Vec<String>,
    pub state: RProcess,
    pub step: String,
    pub target: RProcess,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoopReport {
    pub trials: usize,
    pub forward_steps: usize,
    pub failures: Vec<LoopFailure>,
}

impl LoopReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The starting state of a walk from `p`.
pub(crate) fn initial(p: &Process, defs: &Defs, variant: Variant, unfold: usize) -> Result<RProcess> {
    let r = RProcess::lift(p);
    match variant {
        Variant::Congruence => normalize(&r, defs, unfold),
        _ => Ok(r),
    }
}

/// Folds constant bodies back into constants in every code and every memory.
fn fold(r: &RProcess, defs: &Defs) -> RProcess {
    let fold_memory = |m: &Memory| {
        let events = m.events().iter().map(|e| match e {
            Event::Act {
                id,
                label,
                alternatives,
                slot,
            } => Event::Act {
                id: *id,
                label: label.clone(),
                alternatives: defs.fold(alternatives),
                slot: slot.clone(),
            },
            Event::Fork => Event::Fork,
        });
        Memory::from_events(events.collect())
    };
    match r {
        RProcess::Thread(m, p) => RProcess::Thread(fold_memory(m), defs.fold(p)),
        RProcess::Par(l, rr) => RProcess::par(fold(l, defs), fold(rr, defs)),
        RProcess::Res(b, a) => RProcess::res(fold(b, defs), a.clone()),
    }
}

/// Random forward walks from `p`; see [`loop_check_roots`].
pub fn loop_check(p: &Process, defs: &Defs, opts: &LoopOptions) -> Result<LoopReport> {
    loop_check_roots(std::slice::from_ref(p), defs, opts)
}

/// Runs `opts.trials` random walks of at most `opts.depth` forward steps, each from a root drawn
/// from `roots`.  After every step the target must offer a backward step with the same id and
/// label leading back to the previous state, up to normalization, alpha-conversion and unfolding
/// of constants, and must satisfy [`coherence`] and [`id_check`].
pub fn loop_check_roots(roots: &[Process], defs: &Defs, opts: &LoopOptions) -> Result<LoopReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = LoopReport::default();
    if roots.is_empty() {
        return Ok(report);
    }
    let same = |a: &RProcess, b: &RProcess| -> Result<bool> {
        let key =
            |r: &RProcess| -> Result<RProcess> { Ok(r_alpha_canon(&fold(&normalize(r, defs, opts.unfold)?, defs))) };
        Ok(key(a)? == key(b)?)
    };
    for trial in 0..opts.trials {
        report.trials += 1;
        let root = &roots[rng.gen_range(0..roots.len())];
        let mut state = initial(root, defs, opts.variant, opts.unfold)?;
        let mut trace = Vec::new();
        for _ in 0..opts.depth {
            let fwd = fwd_transitions(&state, defs, opts.variant, opts.unfold)?;
            if fwd.is_empty() {
                break;
            }
            let t = fwd[rng.gen_range(0..fwd.len())].clone();
            report.forward_steps += 1;
            let step = format!("{}:{}", t.id, t.label);
            let mut reason = coherence(&t.target).err();
            if reason.is_none() {
                reason = id_check(&t.target, Some(trace.len() as EventId + 1)).err();
            }
            if reason.is_none() {
                let back = bwd_transitions(&t.target, defs, opts.variant, opts.unfold)?;
                let matching: Vec<_> = back.iter().filter(|b| b.id == t.id && b.label == t.label).collect();
                if matching.is_empty() {
                    reason = Some("no backward step with the same id and label".into());
                } else {
                    let mut restored = false;
                    for b in matching {
                        restored |= same(&b.target, &state)?;
                        if let Err(e) = coherence(&b.target) {
                            reason = Some(format!("after undo: {e}"));
                        }
                    }
                    if !restored {
                        reason = Some("undo does not restore the previous state".into());
                    }
                }
            }
            if let Some(reason) = reason {
                report.failures.push(LoopFailure {
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

/// Forward-and-backward transition system of `p`, edges labeled `fwd:<label>` or `bwd:<label>`,
/// states identified by [`state_key`].
pub fn rccs_lts(p: &Process, defs: &Defs, variant: Variant, unfold: usize, max_states: usize) -> Result<Lts> {
    defs.check_term(p)?;
    let root = state_key(&initial(p, defs, variant, unfold)?);
    explore_graph(root, max_states, RProcess::to_string, |s| {
        let mut out = Vec::new();
        for t in fwd_transitions(s, defs, variant, unfold)? {
            out.push((format!("fwd:{}", t.label), "fwd".to_string(), state_key(&t.target)));
        }
        for t in bwd_transitions(s, defs, variant, unfold)? {
            out.push((format!("bwd:{}", t.label), "bwd".to_string(), state_key(&t.target)));
        }
        Ok((out, false))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum VariantVerdict {
    Bisimilar {
        congruence_states: usize,
        rule_states: usize,
    },
    Distinguished {
        left: String,
        right: String,
        label: String,
    },
    /// One of the transition systems hit `max_states`; nothing was compared.
    Truncated,
}

impl VariantVerdict {
    pub fn is_bisimilar(&self) -> bool {
        matches!(self, VariantVerdict::Bisimilar { .. })
    }
}

/// Decides whether the congruence and rule variants give strongly bisimilar forward-and-backward
/// transition systems from `lift(p)`.
pub fn compare_variants(p: &Process, defs: &Defs, max_states: usize, unfold: usize) -> Result<VariantVerdict> {
    let l1 = rccs_lts(p, defs, Variant::Congruence, unfold, max_states)?;
    let l2 = rccs_lts(p, defs, Variant::Rule, unfold, max_states)?;
    if l1.truncated || l2.truncated {
        return Ok(VariantVerdict::Truncated);
    }
    Ok(match bisim(&l1, &l2)? {
        crate::lab::BisimResult::Bisimilar => VariantVerdict::Bisimilar {
            congruence_states: l1.state_count(),
            rule_states: l2.state_count(),
        },
        crate::lab::BisimResult::Distinguished { left, right, label } => {
            VariantVerdict::Distinguished { left, right, label }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantFinding {
    pub term: Process,
    #[serde(flatten)]
    pub verdict: VariantVerdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VariantsSummary {
    pub roots: usize,
    pub bisimilar: usize,
    pub truncated: usize,
    pub findings: Vec<VariantFinding>,
}

impl VariantsSummary {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }
}

/// [`compare_variants`] on every root; distinctions and truncations become findings.
pub fn check_variants(roots: &[Process], defs: &Defs, max_states: usize, unfold: usize) -> Result<VariantsSummary> {
    let mut s = VariantsSummary::default();
    for p in roots {
        s.roots += 1;
        let verdict = compare_variants(p, defs, max_states, unfold)?;
        match verdict {
            VariantVerdict::Bisimilar { .. } => s.bisimilar += 1,
            VariantVerdict::Truncated => s.truncated += 1,
            VariantVerdict::Distinguished { .. } => {}
        }
        if !verdict.is_bisimilar() {
            s.findings.push(VariantFinding {
                term: p.clone(),
                verdict,
            });
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Process {
        text.parse().unwrap()
    }

    fn run(text: &str, depth: usize, variant: Variant) -> LoopReport {
        let opts = LoopOptions {
            depth,
            trials: 50,
            seed: 7,
            variant,
            unfold: 2,
        };
        loop_check(&p(text), &Defs::new(), &opts).unwrap()
    }

    #[test]
    fn loop_lemma_on_small_terms() {
        for v in [Variant::Congruence, Variant::Rule, Variant::LazyCongruence] {
            assert!(run("a.b.0 + c.0", 4, v).is_clean());
            let zero = run("0", 4, v);
            assert!(zero.is_clean());
            assert_eq!(zero.forward_steps, 0);
            let r = run("(a.0 | 'a.0)\\a", 2, v);
            assert!(r.is_clean(), "{:?}", r.failures);
            assert!(run("a.(b.0 | 'b.0) | 'a.c.0", 6, v).is_clean());
        }
    }

    #[test]
    fn loop_lemma_with_constants() {
        let defs = Defs::parse("A = a.A\nC = a.0 | b.C\nD = (x.D | 'x.0)\\x").unwrap();
        for v in [Variant::Congruence, Variant::Rule, Variant::LazyCongruence] {
            for t in ["A", "C", "D | 'a.0", "(A | 'a.D)\\a"] {
                let opts = LoopOptions {
                    depth: 6,
                    trials: 40,
                    seed: 5,
                    variant: v,
                    unfold: 2,
                };
                let r = loop_check(&p(t), &defs, &opts).unwrap();
                assert!(r.is_clean(), "{t} {v:?}: {:?}", r.failures);
                assert!(r.forward_steps > 0);
            }
        }
    }

    #[test]
    fn variants_agree_on_examples() {
        for t in ["a.0", "a.0 | b.0", "(a.0 | 'a.0)\\a", "a.(b.0 | b.0) + 'a.0"] {
            let v = compare_variants(&p(t), &Defs::new(), 10_000, 2).unwrap();
            assert!(v.is_bisimilar(), "{t}: {v:?}");
        }
    }

    #[test]
    fn coherence_rejects_unforked_siblings() {
        let r = RProcess::par(RProcess::lift(&p("a.0")), RProcess::lift(&p("b.0")));
        assert!(coherence(&r).is_err());
        let ok = crate::rccs::distribute(&RProcess::lift(&p("a.0 | b.0")));
        assert!(coherence(&ok).is_ok());
    }

    #[test]
    fn comparison_reports_truncation() {
        assert_eq!(
            compare_variants(&p("a.0 | b.0"), &Defs::new(), 2, 2).unwrap(),
            VariantVerdict::Truncated
        );
    }
}
