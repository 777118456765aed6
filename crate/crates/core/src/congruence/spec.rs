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

//! Transitions modulo structural congruence.
//!
//! The rule set is `act`, `sum`, `com2`, `syn`, `res` (and `rel` on request), closed under the
//! congruence by `con`.  Transitions are read off the canonical representative with unguarded
//! constants unfolded.  A move of the left operand of `|` is derived with `com2` from the
//! commuted representative, so each derivation's premise has a source congruent to, but not
//! always identical with, the state.

use std::collections::BTreeMap;

use crate::ccs::{Rule, Transition};
use crate::congruence::canon::expand;
use crate::congruence::{canonicalize_with, CongruenceOptions, ContextMode};
use crate::error::Result;
use crate::term::{Defs, Label, Process};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecOptions {
    pub unfold: usize,
    pub keep_rel: bool,
    pub context: ContextMode,
}

impl Default for SpecOptions {
    fn default() -> Self {
        SpecOptions {
            unfold: 2,
            keep_rel: false,
            context: ContextMode::All,
        }
    }
}

pub fn spec_transitions(p: &Process, defs: &Defs, unfold_budget: usize, keep_rel: bool) -> Result<Vec<Transition>> {
    let opts = SpecOptions {
        unfold: unfold_budget,
        keep_rel,
        context: ContextMode::All,
    };
    Ok(spec_transitions_with(p, defs, &opts)?.0)
}

/// Transitions of `p` with canonical targets (constants kept folded), one per distinct
/// `(label, target)`.  Also reports whether an unguarded constant was left unexplored.
pub fn spec_transitions_with(p: &Process, defs: &Defs, opts: &SpecOptions) -> Result<(Vec<Transition>, bool)> {
    defs.check_term(p)?;
    let folded = CongruenceOptions {
        unfold: 0,
        context: opts.context,
    };
    let mut cut = false;
    let unfolded = expand(p, defs, opts.unfold, false, &mut cut);
    let rep = canonicalize_with(&unfolded, defs, &folded)?.process;
    let cut = cut && rep.mentions_const() && has_unguarded_const(&rep);
    let mut out: BTreeMap<(Label, Process), Transition> = BTreeMap::new();
    for t in derive(&rep, opts.keep_rel) {
        let target = canonicalize_with(&t.target, defs, &folded)?.process;
        out.entry((t.label.clone(), target.clone()))
            .or_insert_with(|| Transition {
                source: p.clone(),
                label: t.label.clone(),
                target,
                rule: Rule::Con,
                premises: vec![t],
            });
    }
    Ok((out.into_values().collect(), cut))
}

fn has_unguarded_const(p: &Process) -> bool {
    match p {
        Process::Const(_) => true,
        Process::Prefix(..) | Process::Nil => false,
        _ => p.children().into_iter().any(has_unguarded_const),
    }
}

fn derive(p: &Process, keep_rel: bool) -> Vec<Transition> {
    let mut out = Vec::new();
    match p {
        Process::Nil | Process::Const(_) => {}
        Process::Prefix(a, body) => out.push(Transition::axiom(p.clone(), Label::Act(a.clone()), (**body).clone())),
        Process::Sum(ps) => {
            for (j, q) in ps.iter().enumerate() {
                for t in derive(q, keep_rel) {
                    let mut source = ps.clone();
                    source[j] = t.source.clone();
                    out.push(Transition {
                        source: Process::Sum(source),
                        label: t.label.clone(),
                        target: t.target.clone(),
                        rule: Rule::Sum,
                        premises: vec![t],
                    });
                }
            }
        }
        Process::Par(l, r) => {
            let left = derive(l, keep_rel);
            let right = derive(r, keep_rel);
            let moved = |other: &Process, t: &Transition| Transition {
                source: Process::par(other.clone(), t.source.clone()),
                label: t.label.clone(),
                target: Process::par(other.clone(), t.target.clone()),
                rule: Rule::Com2,
                premises: vec![t.clone()],
            };
            out.extend(right.iter().map(|t| moved(l, t)));
            out.extend(left.iter().map(|t| moved(r, t)));
            for t in &left {
                for u in &right {
                    if let (Label::Act(x), Label::Act(y)) = (&t.label, &u.label) {
                        if x.is_complement_of(y) {
                            out.push(Transition {
                                source: Process::par(t.source.clone(), u.source.clone()),
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
            for t in derive(q, keep_rel) {
                if !t.label.mentions(a) {
                    out.push(Transition {
                        source: Process::restrict(t.source.clone(), a.clone()),
                        label: t.label.clone(),
                        target: Process::restrict(t.target.clone(), a.clone()),
                        rule: Rule::Res,
                        premises: vec![t],
                    });
                }
            }
        }
        Process::Relabel(q, s) if keep_rel => {
            for t in derive(q, keep_rel) {
                out.push(Transition {
                    source: Process::relabel(t.source.clone(), s.clone()),
                    label: s.apply_label(&t.label),
                    target: Process::relabel(t.target.clone(), s.clone()),
                    rule: Rule::Rel,
                    premises: vec![t],
                });
            }
        }
        Process::Relabel(..) => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccs::sys::check_with;
    use crate::congruence::canonicalize;

    fn p(s: &str) -> Process {
        s.parse().unwrap()
    }

    fn pairs(ts: &[Transition]) -> Vec<(String, String)> {
        ts.iter().map(|t| (t.label.to_string(), t.target.to_string())).collect()
    }

    #[test]
    fn works_modulo_congruence() {
        let ts = spec_transitions(&p("0 | a.0"), &Defs::new(), 0, false).unwrap();
        let zero = canonicalize(&p("0 | 0"), &Defs::new(), 0).unwrap().process;
        assert_eq!(pairs(&ts), [("a".to_string(), zero.to_string())]);
        assert!(ts.iter().all(|t| t.rule == Rule::Con && !t.uses(Rule::Com1)));
    }

    #[test]
    fn constants_unfold_through_congruence() {
        let defs = Defs::parse("A = a.0").unwrap();
        let ts = spec_transitions(&p("A"), &defs, 1, false).unwrap();
        assert_eq!(pairs(&ts), [("a".to_string(), "0".to_string())]);
        assert!(!ts[0].uses(Rule::Rec));
    }

    #[test]
    fn relabeling_needs_its_rule() {
        assert!(spec_transitions(&p("(a.0)[a<-b]"), &Defs::new(), 0, false)
            .unwrap()
            .is_empty());
        let ts = spec_transitions(&p("(a.0)[a<-b]"), &Defs::new(), 0, true).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].label.to_string(), "b");
    }

    #[test]
    fn derivations_are_valid() {
        let opts = CongruenceOptions::default();
        for t in ["a.0 | 'a.0 | b.0", "(a.0 | 'a.0)\\a + b.c.0", "(a.0)\\a | (b.0 + 0)"] {
            for tr in spec_transitions(&p(t), &Defs::new(), 0, true).unwrap() {
                assert!(check_with(&tr, &Defs::new(), &opts), "{tr}");
            }
        }
    }
}
