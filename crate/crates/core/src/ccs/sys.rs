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

//! Transitions derived by the eight structural rules.

use std::collections::BTreeSet;

use crate::ccs::{Rule, Transition};
use crate::congruence::{equiv_with, CongruenceOptions};
use crate::error::Result;
use crate::term::{Defs, Label, Process};

/// All transitions of `p`, each with its derivation.  A constant is unfolded at most
/// `unfold_budget` times along any branch of a derivation.
pub fn sys_transitions(p: &Process, defs: &Defs, unfold_budget: usize) -> Result<Vec<Transition>> {
    Ok(sys_transitions_flagged(p, defs, unfold_budget)?.0)
}

/// As [`sys_transitions`], also reporting whether the unfold budget cut off some branch.
pub fn sys_transitions_flagged(p: &Process, defs: &Defs, unfold_budget: usize) -> Result<(Vec<Transition>, bool)> {
    defs.check_term(p)?;
    let mut cut = false;
    let set: BTreeSet<Transition> = derive(p, defs, unfold_budget, &mut cut)?.into_iter().collect();
    Ok((set.into_iter().collect(), cut))
}

fn derive(p: &Process, defs: &Defs, budget: usize, cut: &mut bool) -> Result<Vec<Transition>> {
    let mut out = Vec::new();
    match p {
        Process::Nil => {}
        Process::Prefix(a, body) => out.push(Transition::axiom(p.clone(), Label::Act(a.clone()), (**body).clone())),
        Process::Sum(ps) => {
            for q in ps {
                for t in derive(q, defs, budget, cut)? {
                    out.push(Transition {
                        source: p.clone(),
                        label: t.label.clone(),
                        target: t.target.clone(),
                        rule: Rule::Sum,
                        premises: vec![t],
                    });
                }
            }
        }
        Process::Par(l, r) => {
            let left = derive(l, defs, budget, cut)?;
            let right = derive(r, defs, budget, cut)?;
            for t in &left {
                out.push(Transition {
                    source: p.clone(),
                    label: t.label.clone(),
                    target: Process::par(t.target.clone(), (**r).clone()),
                    rule: Rule::Com1,
                    premises: vec![t.clone()],
                });
            }
            for t in &right {
                out.push(Transition {
                    source: p.clone(),
                    label: t.label.clone(),
                    target: Process::par((**l).clone(), t.target.clone()),
                    rule: Rule::Com2,
                    premises: vec![t.clone()],
                });
            }
            for t in &left {
                for u in &right {
                    if let (Label::Act(x), Label::Act(y)) = (&t.label, &u.label) {
                        if x.is_complement_of(y) {
                            out.push(Transition {
                                source: p.clone(),
                                label: Label::Tau,
                                target: Process::par(t.target.clone(), u.target.clone()),
                                rule: Rule::Syn,
                                premises: vec![t.clone(), u.clone()],
                            });
                        }
                    }
                }
            }
        }
        Process::Restrict(q, a) => {
            for t in derive(q, defs, budget, cut)? {
                if !t.label.mentions(a) {
                    out.push(Transition {
                        source: p.clone(),
                        label: t.label.clone(),
                        target: Process::restrict(t.target.clone(), a.clone()),
                        rule: Rule::Res,
                        premises: vec![t],
                    });
                }
            }
        }
        Process::Relabel(q, s) => {
            for t in derive(q, defs, budget, cut)? {
                out.push(Transition {
                    source: p.clone(),
                    label: s.apply_label(&t.label),
                    target: Process::relabel(t.target.clone(), s.clone()),
                    rule: Rule::Rel,
                    premises: vec![t],
                });
            }
        }
        Process::Const(c) => {
            let body = defs.body(c)?;
            if budget == 0 {
                *cut = true;
            } else {
                for t in derive(body, defs, budget - 1, cut)? {
                    out.push(Transition {
                        source: p.clone(),
                        label: t.label.clone(),
                        target: t.target.clone(),
                        rule: Rule::Rec,
                        premises: vec![t],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Checks that `t` is a well-formed instance of its rule, recursively.  `con` steps are checked
/// with the default congruence options.
pub fn check_derivation(t: &Transition, defs: &Defs) -> bool {
    check_with(t, defs, &CongruenceOptions::default())
}

pub(crate) fn check_with(t: &Transition, defs: &Defs, opts: &CongruenceOptions) -> bool {
    if t.premises.len() != t.rule.arity() || !t.premises.iter().all(|p| check_with(p, defs, opts)) {
        return false;
    }
    let one = t.premises.first();
    let same_label = || one.is_some_and(|p| p.label == t.label);
    match (t.rule, &t.source) {
        (Rule::Act, Process::Prefix(a, body)) => t.label == Label::Act(a.clone()) && t.target == **body,
        (Rule::Sum, Process::Sum(ps)) => {
            let p = &t.premises[0];
            same_label() && ps.contains(&p.source) && t.target == p.target
        }
        (Rule::Com1, Process::Par(l, r)) => {
            let p = &t.premises[0];
            same_label() && p.source == **l && t.target == Process::par(p.target.clone(), (**r).clone())
        }
        (Rule::Com2, Process::Par(l, r)) => {
            let p = &t.premises[0];
            same_label() && p.source == **r && t.target == Process::par((**l).clone(), p.target.clone())
        }
        (Rule::Syn, Process::Par(l, r)) => {
            let (p, q) = (&t.premises[0], &t.premises[1]);
            let complementary = match (&p.label, &q.label) {
                (Label::Act(x), Label::Act(y)) => x.is_complement_of(y),
                _ => false,
            };
            complementary
                && t.label == Label::Tau
                && p.source == **l
                && q.source == **r
                && t.target == Process::par(p.target.clone(), q.target.clone())
        }
        (Rule::Rec, Process::Const(c)) => {
            let p = &t.premises[0];
            same_label() && defs.get(c) == Some(&p.source) && t.target == p.target
        }
        (Rule::Res, Process::Restrict(q, a)) => {
            let p = &t.premises[0];
            same_label()
                && !t.label.mentions(a)
                && p.source == **q
                && t.target == Process::restrict(p.target.clone(), a.clone())
        }
        (Rule::Rel, Process::Relabel(q, s)) => {
            let p = &t.premises[0];
            t.label == s.apply_label(&p.label)
                && p.source == **q
                && t.target == Process::relabel(p.target.clone(), s.clone())
        }
        (Rule::Con, _) => {
            let p = &t.premises[0];
            same_label()
                && equiv_with(&t.source, &p.source, defs, opts).unwrap_or(false)
                && equiv_with(&p.target, &t.target, defs, opts).unwrap_or(false)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Process {
        s.parse().unwrap()
    }

    fn summary(ts: &[Transition]) -> Vec<(String, String, String)> {
        let mut v: Vec<_> = ts
            .iter()
            .map(|t| (t.label.to_string(), t.target.to_string(), t.rule.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn prefix_fires() {
        let ts = sys_transitions(&p("a.0"), &Defs::new(), 0).unwrap();
        assert_eq!(summary(&ts), [("a".into(), "0".into(), "act".into())]);
    }

    #[test]
    fn parallel_synchronises() {
        let ts = sys_transitions(&p("a.0 | 'a.0"), &Defs::new(), 0).unwrap();
        let s = summary(&ts);
        assert!(s.contains(&("tau".into(), "0 | 0".into(), "syn".into())));
        assert!(s.contains(&("a".into(), "0 | 'a.0".into(), "com1".into())));
        assert!(s.contains(&("'a".into(), "a.0 | 0".into(), "com2".into())));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn restriction_blocks_both_polarities() {
        assert!(sys_transitions(&p("(a.0)\\a"), &Defs::new(), 0).unwrap().is_empty());
        let ts = sys_transitions(&p("(a.0 | 'a.0)\\a"), &Defs::new(), 0).unwrap();
        assert_eq!(summary(&ts), [("tau".into(), "(0 | 0)\\a".into(), "res".into())]);
    }

    #[test]
    fn relabeling_maps_labels_and_keeps_tau() {
        let ts = sys_transitions(&p("(a.0 | 'a.0)[a<-b]"), &Defs::new(), 0).unwrap();
        let labels: BTreeSet<_> = ts.iter().map(|t| t.label.to_string()).collect();
        assert_eq!(labels, BTreeSet::from(["'b".to_string(), "b".into(), "tau".into()]));
    }

    #[test]
    fn recursion_respects_budget() {
        let defs = Defs::parse("A = a.A").unwrap();
        let (ts, cut) = sys_transitions_flagged(&p("A"), &defs, 1).unwrap();
        assert_eq!(summary(&ts), [("a".into(), "A".into(), "rec".into())]);
        assert!(!cut);
        let (ts, cut) = sys_transitions_flagged(&p("A"), &defs, 0).unwrap();
        assert!(ts.is_empty() && cut);
        assert!(sys_transitions(&p("B"), &defs, 1).is_err());
    }

    #[test]
    fn derivations_check() {
        let defs = Defs::parse("A = a.0 + b.A").unwrap();
        for t in sys_transitions(&p("(A | 'a.0)\\a + c.0"), &defs, 2).unwrap() {
            assert!(check_derivation(&t, &defs), "{t}");
        }
        let good = sys_transitions(&p("a.0"), &defs, 0).unwrap().remove(0);
        let mut bad = good.clone();
        bad.label = Label::parse("b").unwrap();
        assert!(check_derivation(&good, &defs));
        assert!(!check_derivation(&bad, &defs));

        let mut syn = sys_transitions(&p("a.0 | 'a.0"), &defs, 0)
            .unwrap()
            .into_iter()
            .find(|t| t.rule == Rule::Syn)
            .unwrap();
        assert!(check_derivation(&syn, &defs));
        syn.premises[1] = sys_transitions(&p("a.0"), &defs, 0).unwrap().remove(0);
        assert!(!check_derivation(&syn, &defs));
    }
}
