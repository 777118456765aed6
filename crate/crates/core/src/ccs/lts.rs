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

//! Finite transition graphs, breadth-first exploration, and JSON / DOT export.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::ccs::sys::sys_transitions_flagged;
use crate::congruence::{canonicalize_with, spec_transitions_with, CongruenceOptions, ContextMode, SpecOptions};
use crate::error::Result;
use crate::term::{alpha_canon, Defs, Process};

/// Which transition function drives [`explore`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// The eight structural rules; states are alpha-canonical terms.
    Sys,
    /// Transitions modulo structural congruence; states are congruence-canonical terms.
    Spec { keep_rel: bool, context: ContextMode },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: usize,
    pub label: String,
    pub rule: String,
    pub dst: usize,
}

/// An explored transition graph.  States are rendered terms; edges carry a label and the rule
/// that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    pub root: usize,
    pub states: Vec<String>,
    pub edges: Vec<Edge>,
    pub truncated: bool,
}

#[derive(Serialize)]
struct JsonEdge<'a> {
    src: &'a str,
    label: &'a str,
    rule: &'a str,
    dst: &'a str,
}

#[derive(Serialize)]
struct JsonLts<'a> {
    root: &'a str,
    states: &'a [String],
    edges: Vec<JsonEdge<'a>>,
    truncated: bool,
}

impl Lts {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn successors(&self, state: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.src == state)
    }

    pub fn index_of(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = JsonLts {
            root: &self.states[self.root],
            states: &self.states,
            edges: self
                .edges
                .iter()
                .map(|e| JsonEdge {
                    src: &self.states[e.src],
                    label: &e.label,
                    rule: &e.rule,
                    dst: &self.states[e.dst],
                })
                .collect(),
            truncated: self.truncated,
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("digraph lts {\n  node [shape=ellipse];\n");
        for (i, s) in self.states.iter().enumerate() {
            let shape = if i == self.root { ", peripheries=2" } else { "" };
            let _ = writeln!(out, "  s{i} [label={}{shape}];", quote(s));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  s{} -> s{} [label={}];",
                e.src,
                e.dst,
                quote(&format!("{}/{}", e.label, e.rule))
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure from `root` under `step`, which returns `(label, rule, successor)`
/// triples and whether it was cut short.  At most `max_states` states are kept; edges into
/// states beyond the bound are dropped and the result is flagged truncated.
pub fn explore_graph<S: Ord + Clone>(
    root: S,
    max_states: usize,
    render: impl Fn(&S) -> String,
    mut step: impl FnMut(&S) -> Result<(Vec<(String, String, S)>, bool)>,
) -> Result<Lts> {
    let mut index: BTreeMap<S, usize> = BTreeMap::new();
    let mut states = vec![root.clone()];
    index.insert(root, 0);
    let mut edges = BTreeSet::new();
    let mut truncated = max_states == 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (succ, cut) = step(&states[i])?;
        truncated |= cut;
        for (label, rule, s) in succ {
            let j = match index.get(&s) {
                Some(&j) => j,
                None if states.len() < max_states => {
                    let j = states.len();
                    index.insert(s.clone(), j);
                    states.push(s);
                    queue.push_back(j);
                    j
                }
                None => {
                    truncated = true;
                    continue;
                }
            };
            edges.insert(Edge {
                src: i,
                label,
                rule,
                dst: j,
            });
        }
    }
    Ok(Lts {
        root: 0,
        states: states.iter().map(render).collect(),
        edges: edges.into_iter().collect(),
        truncated,
    })
}

/// Explores the states reachable from `p`.
pub fn explore(p: &Process, defs: &Defs, semantics: Semantics, unfold_budget: usize, max_states: usize) -> Result<Lts> {
    defs.check_term(p)?;
    match semantics {
        Semantics::Sys => explore_graph(alpha_canon(p), max_states, Process::to_string, |s| {
            let (ts, cut) = sys_transitions_flagged(s, defs, unfold_budget)?;
            let succ = ts
                .into_iter()
                .map(|t| (t.label.to_string(), t.rule.to_string(), alpha_canon(&t.target)))
                .collect();
            Ok((succ, cut))
        }),
        Semantics::Spec { keep_rel, context } => {
            let opts = SpecOptions {
                unfold: unfold_budget,
                keep_rel,
                context,
            };
            let root_opts = CongruenceOptions { unfold: 0, context };
            let root = canonicalize_with(p, defs, &root_opts)?.process;
            explore_graph(root, max_states, Process::to_string, |s| {
                let (ts, cut) = spec_transitions_with(s, defs, &opts)?;
                let succ = ts
                    .into_iter()
                    .map(|t| (t.label.to_string(), t.effective_rule().to_string(), t.target))
                    .collect();
                Ok((succ, cut))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Process {
        s.parse().unwrap()
    }

    #[test]
    fn sequential_prefixes() {
        let lts = explore(&p("a.b.0"), &Defs::new(), Semantics::Sys, 0, 100).unwrap();
        assert_eq!((lts.state_count(), lts.edge_count(), lts.truncated), (3, 2, false));
        let lts = explore(&p("0"), &Defs::new(), Semantics::Sys, 0, 100).unwrap();
        assert_eq!((lts.state_count(), lts.edge_count()), (1, 0));
    }

    #[test]
    fn constants_are_states() {
        let defs = Defs::parse("A = a.A").unwrap();
        let lts = explore(&p("A"), &defs, Semantics::Sys, 3, 100).unwrap();
        assert_eq!((lts.state_count(), lts.edge_count(), lts.truncated), (1, 1, false));
        let lts = explore(&p("A"), &defs, Semantics::Sys, 0, 100).unwrap();
        assert!(lts.truncated);
    }

    #[test]
    fn state_bound_truncates() {
        let lts = explore(&p("a.b.c.0"), &Defs::new(), Semantics::Sys, 0, 2).unwrap();
        assert_eq!(lts.state_count(), 2);
        assert!(lts.truncated);
        assert!(lts.edges.iter().all(|e| e.dst < 2));
    }

    #[test]
    fn exports() {
        let lts = explore(&p("a.b.0"), &Defs::new(), Semantics::Sys, 0, 100).unwrap();
        let json = lts.to_json();
        assert_eq!(json["root"], "a.b.0");
        assert_eq!(json["edges"][0]["rule"], "act");
        assert_eq!(json["truncated"], false);
        let dot = lts.to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("label=\"a/act\""));
    }
}
