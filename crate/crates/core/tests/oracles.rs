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

//! Library results checked against small independent implementations written here.

use std::collections::{BTreeMap, BTreeSet};

use ccs_workbench::ccs::{explore, sys_transitions, Lts, Semantics};
use ccs_workbench::ccsk::{k_fwd, KProcess};
use ccs_workbench::lab::{bisim, enumerate_terms, Features};
use ccs_workbench::term::{alpha_canon, Defs, Label, Name, Process};

fn names() -> Vec<Name> {
    vec![Name::from_static("a"), Name::from_static("b")]
}

fn all_features() -> Features {
    Features {
        restrict: true,
        relabel: true,
        ..Features::default()
    }
}

/// Labels as `(channel, is_coname)`, `None` for tau.
type Lab = Option<(String, bool)>;

fn lab(l: &Label) -> Lab {
    l.action().map(|a| (a.name.to_string(), a.co))
}

/// Structural operational semantics written directly from the rules.
fn naive_steps(p: &Process) -> Vec<(Lab, Process)> {
    match p {
        Process::Nil | Process::Const(_) => vec![],
        Process::Prefix(a, body) => vec![(Some((a.name.to_string(), a.co)), (**body).clone())],
        Process::Sum(ps) => ps.iter().flat_map(naive_steps).collect(),
        Process::Par(l, r) => {
            let (ls, rs) = (naive_steps(l), naive_steps(r));
            let mut out = Vec::new();
            for (x, l2) in &ls {
                out.push((x.clone(), Process::Par(Box::new(l2.clone()), r.clone())));
            }
            for (y, r2) in &rs {
                out.push((y.clone(), Process::Par(l.clone(), Box::new(r2.clone()))));
            }
            for (x, l2) in &ls {
                for (y, r2) in &rs {
                    if let (Some((n, c)), Some((m, d))) = (x, y) {
                        if n == m && c != d {
                            out.push((None, Process::Par(Box::new(l2.clone()), Box::new(r2.clone()))));
                        }
                    }
                }
            }
            out
        }
        Process::Restrict(q, a) => naive_steps(q)
            .into_iter()
            .filter(|(x, _)| x.as_ref().is_none_or(|(n, _)| n != a.as_str()))
            .map(|(x, q2)| (x, Process::Restrict(Box::new(q2), a.clone())))
            .collect(),
        Process::Relabel(q, s) => {
            let map: BTreeMap<String, String> = s
                .pairs()
                .iter()
                .map(|(from, to)| (from.to_string(), to.to_string()))
                .collect();
            naive_steps(q)
                .into_iter()
                .map(|(x, q2)| {
                    let x = x.map(|(n, c)| (map.get(&n).cloned().unwrap_or(n), c));
                    (x, Process::Relabel(Box::new(q2), s.clone()))
                })
                .collect()
        }
    }
}

fn step_set(steps: impl IntoIterator<Item = (Lab, Process)>) -> BTreeSet<(Lab, String)> {
    steps
        .into_iter()
        .map(|(l, t)| (l, alpha_canon(&t).to_string()))
        .collect()
}

#[test]
fn rule_based_transitions_match_a_direct_reading_of_the_rules() {
    let defs = Defs::new();
    let terms = enumerate_terms(4, &names(), &all_features());
    assert!(terms.len() > 1000);
    for p in &terms {
        let lib = sys_transitions(p, &defs, 0).unwrap();
        let ours = naive_steps(p);
        let lib = step_set(lib.into_iter().map(|t| (lab(&t.label), t.target)));
        assert_eq!(lib, step_set(ours), "transitions differ on {p}");
    }
}

/// Greatest fixpoint of the bisimulation conditions over all state pairs.
fn naive_bisimilar(l1: &Lts, l2: &Lts) -> bool {
    let succ = |l: &Lts, s: usize| -> Vec<(String, usize)> {
        l.edges
            .iter()
            .filter(|e| e.src == s)
            .map(|e| (e.label.clone(), e.dst))
            .collect()
    };
    let mut rel: BTreeSet<(usize, usize)> = (0..l1.state_count())
        .flat_map(|s| (0..l2.state_count()).map(move |t| (s, t)))
        .collect();
    loop {
        let keep: BTreeSet<(usize, usize)> = rel
            .iter()
            .copied()
            .filter(|&(s, t)| {
                let (ss, ts) = (succ(l1, s), succ(l2, t));
                ss.iter()
                    .all(|(a, s2)| ts.iter().any(|(b, t2)| a == b && rel.contains(&(*s2, *t2))))
                    && ts
                        .iter()
                        .all(|(b, t2)| ss.iter().any(|(a, s2)| a == b && rel.contains(&(*s2, *t2))))
            })
            .collect();
        if keep.len() == rel.len() {
            return rel.contains(&(l1.root, l2.root));
        }
        rel = keep;
    }
}

#[test]
fn bisimulation_matches_the_fixpoint_definition() {
    let defs = Defs::new();
    let terms = enumerate_terms(3, &names(), &Features::restrict());
    let graphs: Vec<Lts> = terms
        .iter()
        .map(|p| explore(p, &defs, Semantics::Sys, 0, 100).unwrap())
        .collect();
    let mut bisimilar = 0;
    for (i, l1) in graphs.iter().enumerate() {
        for l2 in &graphs[i..] {
            let expected = naive_bisimilar(l1, l2);
            assert_eq!(
                bisim(l1, l2).unwrap().is_bisimilar(),
                expected,
                "{} vs {}",
                l1.states[0],
                l2.states[0]
            );
            bisimilar += usize::from(expected);
        }
    }
    assert!(bisimilar > graphs.len(), "some distinct roots are bisimilar");
}

#[test]
fn keyed_forward_steps_of_standard_terms_mirror_rule_based_steps() {
    let defs = Defs::new();
    for p in enumerate_terms(4, &names(), &all_features()) {
        let k = KProcess::from(&p);
        let keyed = step_set(
            k_fwd(&k, &defs, 0)
                .unwrap()
                .into_iter()
                .map(|t| (lab(&t.label), t.target.residual())),
        );
        let plain = step_set(naive_steps(&p));
        assert_eq!(keyed, plain, "on {p}");
    }
}
