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

//! The congruence axioms as one-step rewrites, in both directions, at every position.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::congruence::ContextMode;
use crate::error::{Error, Result};
use crate::term::{all_names, fresh_name, substitute, Defs, Process};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CongAxiom {
    ParComm,
    ParAssoc,
    ParUnit,
    SumComm,
    SumAssoc,
    SumUnit,
    /// `(P\a) | Q = (P | Q)\a` provided `a` does not occur in `Q`.
    ScopeExt,
    ResSwap,
    RecUnfold,
    Alpha,
}

impl CongAxiom {
    pub const ALL: [CongAxiom; 10] = [
        CongAxiom::ParComm,
        CongAxiom::ParAssoc,
        CongAxiom::ParUnit,
        CongAxiom::SumComm,
        CongAxiom::SumAssoc,
        CongAxiom::SumUnit,
        CongAxiom::ScopeExt,
        CongAxiom::ResSwap,
        CongAxiom::RecUnfold,
        CongAxiom::Alpha,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CongAxiom::ParComm => "par-comm",
            CongAxiom::ParAssoc => "par-assoc",
            CongAxiom::ParUnit => "par-unit",
            CongAxiom::SumComm => "sum-comm",
            CongAxiom::SumAssoc => "sum-assoc",
            CongAxiom::SumUnit => "sum-unit",
            CongAxiom::ScopeExt => "scope-ext",
            CongAxiom::ResSwap => "res-swap",
            CongAxiom::RecUnfold => "rec-unfold",
            CongAxiom::Alpha => "alpha",
        }
    }
}

impl fmt::Display for CongAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CongAxiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<CongAxiom> {
        CongAxiom::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown axiom `{s}`")))
    }
}

impl Serialize for CongAxiom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// One axiom application: the subterm at `path` was rewritten, giving `result` (the whole term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub axiom: CongAxiom,
    pub path: Vec<usize>,
    pub result: Process,
}

/// Every single axiom application to `p`, in either direction and at every position allowed by
/// `context`.  Constant unfolding and folding are included iff `unfold`.  Alpha-renaming is left
/// implicit except where scope extrusion needs a fresh binder.
pub fn rewrites(p: &Process, defs: &Defs, unfold: bool, context: ContextMode) -> Vec<Rewrite> {
    let mut out = Vec::new();
    for (axiom, path, result) in everywhere(p, defs, unfold, context) {
        out.push(Rewrite { axiom, path, result });
    }
    out
}

fn everywhere(
    node: &Process,
    defs: &Defs,
    unfold: bool,
    context: ContextMode,
) -> Vec<(CongAxiom, Vec<usize>, Process)> {
    let mut out: Vec<_> = at_root(node, defs, unfold)
        .into_iter()
        .map(|(a, r)| (a, Vec::new(), r))
        .collect();
    if matches!(node, Process::Prefix(..)) && context == ContextMode::Top {
        return out;
    }
    for (i, child) in node.children().into_iter().enumerate() {
        for (a, mut path, r) in everywhere(child, defs, unfold, context) {
            path.insert(0, i);
            out.push((a, path, with_child(node, i, r)));
        }
    }
    out
}

fn with_child(node: &Process, i: usize, new: Process) -> Process {
    match node {
        Process::Prefix(a, _) => Process::prefix(a.clone(), new),
        Process::Sum(ps) => {
            let mut ps = ps.clone();
            ps[i] = new;
            Process::Sum(ps)
        }
        Process::Par(l, r) if i == 0 => Process::par(new, (**r).clone()),
        Process::Par(l, _) => Process::par((**l).clone(), new),
        Process::Restrict(_, a) => Process::restrict(new, a.clone()),
        Process::Relabel(_, s) => Process::relabel(new, s.clone()),
        Process::Nil | Process::Const(_) => unreachable!("leaves have no children"),
    }
}

/// Axiom instances whose redex is `node` itself.
pub(crate) fn at_root(node: &Process, defs: &Defs, unfold: bool) -> Vec<(CongAxiom, Process)> {
    use CongAxiom::*;
    let mut out = Vec::new();
    let c = |p: &Process| p.clone();
    match node {
        Process::Par(l, r) => {
            out.push((ParComm, Process::par(c(r), c(l))));
            if let Process::Par(p, q) = &**l {
                out.push((ParAssoc, Process::par(c(p), Process::par(c(q), c(r)))));
            }
            if let Process::Par(q, v) = &**r {
                out.push((ParAssoc, Process::par(Process::par(c(l), c(q)), c(v))));
            }
            if r.is_nil() {
                out.push((ParUnit, c(l)));
            }
            if let Process::Restrict(p, a) = &**l {
                if !defs.deep_support(r).contains(a) {
                    out.push((ScopeExt, Process::restrict(Process::par(c(p), c(r)), a.clone())));
                } else if !p.mentions_const() {
                    let mut avoid = all_names(node);
                    avoid.extend(defs.deep_support(node));
                    let fresh = fresh_name(&avoid);
                    let renamed = substitute(p, &BTreeMap::from([(a.clone(), fresh.clone())]));
                    out.push((ScopeExt, Process::restrict(Process::par(renamed, c(r)), fresh)));
                }
            }
        }
        Process::Sum(ps) => {
            let n = ps.len();
            for i in 0..n - 1 {
                let mut qs = ps.clone();
                qs.swap(i, i + 1);
                out.push((SumComm, Process::Sum(qs)));
            }
            for (i, q) in ps.iter().enumerate() {
                if let Process::Sum(inner) = q {
                    let mut qs = ps[..i].to_vec();
                    qs.extend(inner.iter().cloned());
                    qs.extend(ps[i + 1..].iter().cloned());
                    out.push((SumAssoc, Process::Sum(qs)));
                }
                if q.is_nil() {
                    let mut qs = ps.clone();
                    qs.remove(i);
                    out.push((SumUnit, Process::sum(qs)));
                }
            }
            for i in 0..n {
                for j in i + 2..=n {
                    if j - i < n {
                        let mut qs = ps[..i].to_vec();
                        qs.push(Process::Sum(ps[i..j].to_vec()));
                        qs.extend(ps[j..].iter().cloned());
                        out.push((SumAssoc, Process::Sum(qs)));
                    }
                }
            }
        }
        Process::Restrict(q, a) => {
            if let Process::Par(p, r) = &**q {
                if !defs.deep_support(r).contains(a) {
                    out.push((ScopeExt, Process::par(Process::restrict(c(p), a.clone()), c(r))));
                }
            }
            if let Process::Restrict(p, b) = &**q {
                if a != b {
                    out.push((
                        ResSwap,
                        Process::restrict(Process::restrict(c(p), a.clone()), b.clone()),
                    ));
                }
            }
        }
        Process::Const(id) if unfold => {
            if let Some(body) = defs.get(id) {
                out.push((RecUnfold, body.clone()));
            }
        }
        _ => {}
    }
    if unfold {
        for (id, body) in defs.iter() {
            if body == node {
                out.push((RecUnfold, Process::Const(id.clone())));
            }
        }
    }
    out.push((ParUnit, Process::par(c(node), Process::Nil)));
    out.push((SumUnit, Process::Sum(vec![c(node), Process::Nil])));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Process {
        s.parse().unwrap()
    }

    fn results(t: &str, axiom: CongAxiom) -> Vec<String> {
        rewrites(&p(t), &Defs::new(), false, ContextMode::All)
            .into_iter()
            .filter(|r| r.axiom == axiom && r.path.is_empty())
            .map(|r| r.result.to_string())
            .collect()
    }

    fn has(t: &str, axiom: CongAxiom, expected: &str) -> bool {
        results(t, axiom).contains(&p(expected).to_string())
    }

    #[test]
    fn root_instances() {
        assert!(has("a.0 | b.0", CongAxiom::ParComm, "b.0 | a.0"));
        assert!(has("a.0 | 0", CongAxiom::ParUnit, "a.0"));
        assert!(has("(a.0)\\a | b.0", CongAxiom::ScopeExt, "(a.0 | b.0)\\a"));
        assert!(has("(a.0)\\a | a.0", CongAxiom::ScopeExt, "(x0.0 | a.0)\\x0"));
        assert!(results("(a.0 | b.0)\\b", CongAxiom::ScopeExt).is_empty());
        assert!(has("((a.b.0)\\a)\\b", CongAxiom::ResSwap, "((a.b.0)\\b)\\a"));
        assert!(has("a.0 + b.0 + c.0", CongAxiom::SumAssoc, "(a.0 + b.0) + c.0"));
    }

    #[test]
    fn top_context_skips_prefix_bodies() {
        let all = rewrites(&p("a.(b.0 | c.0)"), &Defs::new(), false, ContextMode::All);
        let top = rewrites(&p("a.(b.0 | c.0)"), &Defs::new(), false, ContextMode::Top);
        assert!(all.iter().any(|r| r.path == [0]));
        assert!(top.iter().all(|r| r.path.is_empty()));
    }
}
