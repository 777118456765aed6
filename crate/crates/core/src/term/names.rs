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

//! Free names, capture-avoiding substitution and alpha-canonical naming.

use std::collections::{BTreeMap, BTreeSet};

use crate::term::name::{Action, Name};
use crate::term::process::{Process, Relabeling};

/// Observable free names: restriction binds, relabeling maps names through the substitution.
pub fn free_names(p: &Process) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    collect_free(p, &mut out);
    out
}

fn collect_free(p: &Process, out: &mut BTreeSet<Name>) {
    match p {
        Process::Nil | Process::Const(_) => {}
        Process::Prefix(a, q) => {
            out.insert(a.name.clone());
            collect_free(q, out);
        }
        Process::Sum(ps) => ps.iter().for_each(|q| collect_free(q, out)),
        Process::Par(q, r) => {
            collect_free(q, out);
            collect_free(r, out);
        }
        Process::Restrict(q, a) => {
            let mut inner = free_names(q);
            inner.remove(a);
            out.extend(inner);
        }
        Process::Relabel(q, s) => out.extend(free_names(q).iter().map(|n| s.apply_name(n))),
    }
}

/// Names occurring free anywhere in the syntax, including both sides of every relabeling pair.
///
/// This is the set that binders must avoid when they are renamed or moved.
pub fn support(p: &Process) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    collect_support(p, &mut Vec::new(), &mut out);
    out
}

fn collect_support(p: &Process, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    let note = |n: &Name, bound: &Vec<Name>, out: &mut BTreeSet<Name>| {
        if !bound.contains(n) {
            out.insert(n.clone());
        }
    };
    match p {
        Process::Nil | Process::Const(_) => {}
        Process::Prefix(a, q) => {
            note(&a.name, bound, out);
            collect_support(q, bound, out);
        }
        Process::Sum(ps) => ps.iter().for_each(|q| collect_support(q, bound, out)),
        Process::Par(q, r) => {
            collect_support(q, bound, out);
            collect_support(r, bound, out);
        }
        Process::Restrict(q, a) => {
            bound.push(a.clone());
            collect_support(q, bound, out);
            bound.pop();
        }
        Process::Relabel(q, s) => {
            for (from, to) in s.pairs() {
                note(from, bound, out);
                note(to, bound, out);
            }
            collect_support(q, bound, out);
        }
    }
}

/// Every name occurring in the term, free or bound.
pub fn all_names(p: &Process) -> BTreeSet<Name> {
    let mut out = support(p);
    collect_binders(p, &mut out);
    out
}

fn collect_binders(p: &Process, out: &mut BTreeSet<Name>) {
    if let Process::Restrict(_, a) = p {
        out.insert(a.clone());
    }
    for c in p.children() {
        collect_binders(c, out);
    }
}

/// Smallest name of the form `x0, x1, ...` not in `avoid`.
pub fn fresh_name(avoid: &BTreeSet<Name>) -> Name {
    (0..)
        .map(|i| Name::new(&format!("x{i}")).expect("x<i> is a valid name"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded supply")
}

/// Capture-avoiding simultaneous renaming of free names.
///
/// Constants are opaque: a non-trivial substitution reaching a constant wraps it in a relabeling.
pub(crate) fn substitute(p: &Process, map: &BTreeMap<Name, Name>) -> Process {
    if map.is_empty() {
        return p.clone();
    }
    let act = |a: &Action| Action {
        name: map.get(&a.name).cloned().unwrap_or_else(|| a.name.clone()),
        co: a.co,
    };
    match p {
        Process::Nil => Process::Nil,
        Process::Const(_) => {
            let pairs = map.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
            Process::relabel(p.clone(), Relabeling::new(pairs).expect("map keys are distinct"))
        }
        Process::Prefix(a, q) => Process::prefix(act(a), substitute(q, map)),
        Process::Sum(ps) => Process::Sum(ps.iter().map(|q| substitute(q, map)).collect()),
        Process::Par(q, r) => Process::par(substitute(q, map), substitute(r, map)),
        Process::Restrict(q, a) => {
            let mut inner = map.clone();
            inner.remove(a);
            let sup = support(q);
            inner.retain(|k, _| sup.contains(k));
            if inner.is_empty() {
                return p.clone();
            }
            let captured = inner.values().any(|v| v == a);
            if captured {
                let mut avoid = all_names(p);
                avoid.extend(inner.keys().cloned());
                avoid.extend(inner.values().cloned());
                let c = fresh_name(&avoid);
                let renamed = substitute(q, &BTreeMap::from([(a.clone(), c.clone())]));
                Process::restrict(substitute(&renamed, &inner), c)
            } else {
                Process::restrict(substitute(q, &inner), a.clone())
            }
        }
        Process::Relabel(q, s) => {
            let mut pairs: BTreeMap<Name, Name> = BTreeMap::new();
            for (from, to) in s.pairs() {
                pairs.insert(from.clone(), map.get(to).cloned().unwrap_or_else(|| to.clone()));
            }
            let sup = if q.mentions_const() { None } else { Some(support(q)) };
            for (from, to) in map {
                if sup.as_ref().is_none_or(|sup| sup.contains(from)) {
                    pairs.entry(from.clone()).or_insert_with(|| to.clone());
                }
            }
            let s = Relabeling::new(pairs.into_iter().collect()).expect("map keys are distinct");
            Process::relabel((**q).clone(), s)
        }
    }
}

/// Applies a relabeling as a meta-level substitution on free names, renaming binders when a
/// substituted name would otherwise be captured.
pub fn apply_relabeling(p: &Process, relabeling: &Relabeling) -> Process {
    let s = relabeling.without_identities();
    let map: BTreeMap<Name, Name> = s.pairs().iter().cloned().collect();
    substitute(p, &map)
}

/// Hands out bound names `x0, x1, ...` skipping a set of reserved names.
pub(crate) struct AlphaNamer {
    next: usize,
    avoid: BTreeSet<Name>,
    placeholders: bool,
}

impl AlphaNamer {
    pub(crate) fn new(avoid: BTreeSet<Name>) -> AlphaNamer {
        AlphaNamer {
            next: 0,
            avoid,
            placeholders: false,
        }
    }

    /// Hands out `%start, %start+1, ...` instead.
    pub(crate) fn placeholders(start: usize) -> AlphaNamer {
        AlphaNamer {
            next: start,
            avoid: BTreeSet::new(),
            placeholders: true,
        }
    }

    pub(crate) fn fresh(&mut self) -> Name {
        loop {
            let n = if self.placeholders {
                Name::placeholder(self.next)
            } else {
                Name::new(&format!("x{}", self.next)).expect("valid")
            };
            self.next += 1;
            if !self.avoid.contains(&n) {
                return n;
            }
        }
    }
}

/// Names of restrictions that scope over a constant.  Constants unfold in place, so such a
/// binder may be referenced from inside a definition body and is never renamed.
pub(crate) fn rigid_binders(p: &Process, out: &mut BTreeSet<Name>) {
    rigid_binders_by(p, out, &over_const);
}

/// The default rigidity test: the restriction body mentions a constant.
fn over_const(q: &Process, _: &Name) -> bool {
    q.mentions_const()
}

/// Binders `a` of restrictions `q\a` with `rigid(q, a)`.
pub(crate) fn rigid_binders_by(p: &Process, out: &mut BTreeSet<Name>, rigid: &dyn Fn(&Process, &Name) -> bool) {
    if let Process::Restrict(q, a) = p {
        if rigid(q, a) {
            out.insert(a.clone());
        }
    }
    for c in p.children() {
        rigid_binders_by(c, out, rigid);
    }
}

pub(crate) fn lookup(env: &[(Name, Name)], n: &Name) -> Name {
    env.iter()
        .rev()
        .find(|(from, _)| from == n)
        .map(|(_, to)| to.clone())
        .unwrap_or_else(|| n.clone())
}

/// Renames binders in pre-order using `namer`, mapping bound occurrences through `env`.
pub(crate) fn alpha_with(p: &Process, env: &mut Vec<(Name, Name)>, namer: &mut AlphaNamer) -> Process {
    alpha_with_by(p, env, namer, &over_const)
}

/// As [`alpha_with`], keeping the names of the binders selected by `rigid`.
pub(crate) fn alpha_with_by(
    p: &Process,
    env: &mut Vec<(Name, Name)>,
    namer: &mut AlphaNamer,
    rigid: &dyn Fn(&Process, &Name) -> bool,
) -> Process {
    match p {
        Process::Nil | Process::Const(_) => p.clone(),
        Process::Prefix(a, q) => Process::prefix(
            Action {
                name: lookup(env, &a.name),
                co: a.co,
            },
            alpha_with_by(q, env, namer, rigid),
        ),
        Process::Sum(ps) => Process::Sum(ps.iter().map(|q| alpha_with_by(q, env, namer, rigid)).collect()),
        Process::Par(q, r) => {
            let q = alpha_with_by(q, env, namer, rigid);
            Process::par(q, alpha_with_by(r, env, namer, rigid))
        }
        Process::Restrict(q, a) => {
            let new = if rigid(q, a) { a.clone() } else { namer.fresh() };
            env.push((a.clone(), new.clone()));
            let body = alpha_with_by(q, env, namer, rigid);
            env.pop();
            Process::restrict(body, new)
        }
        Process::Relabel(q, s) => {
            let s = s.map_names(|n| lookup(env, n));
            Process::relabel(alpha_with_by(q, env, namer, rigid), s)
        }
    }
}

/// Renames every binder to `x<i>`, `i` counting binders in pre-order and skipping free names.
///
/// Two terms are alpha-equivalent iff their canonical forms are identical.  Restrictions over a
/// constant keep their name.
pub fn alpha_canon(p: &Process) -> Process {
    alpha_canon_by(p, &over_const)
}

/// As [`alpha_canon`], keeping the names of the binders selected by `rigid`.
pub(crate) fn alpha_canon_by(p: &Process, rigid: &dyn Fn(&Process, &Name) -> bool) -> Process {
    let mut avoid = support(p);
    rigid_binders_by(p, &mut avoid, rigid);
    alpha_with_by(p, &mut Vec::new(), &mut AlphaNamer::new(avoid), rigid)
}

pub fn alpha_eq(p: &Process, q: &Process) -> bool {
    alpha_canon(p) == alpha_canon(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse::parse_syn;

    fn p(text: &str) -> Process {
        parse_syn(text).unwrap().into_process().unwrap()
    }

    fn names(list: &[&str]) -> BTreeSet<Name> {
        list.iter().map(|s| Name::new(s).unwrap()).collect()
    }

    fn rel(text: &str) -> Relabeling {
        match p(&format!("0{text}")) {
            Process::Relabel(_, s) => s,
            _ => unreachable!(),
        }
    }

    #[test]
    fn free_name_examples() {
        assert_eq!(free_names(&p("a.0")), names(&["a"]));
        assert_eq!(free_names(&p("(a.0)\\a")), names(&[]));
        assert_eq!(free_names(&p("(a.0)[a<-b]")), names(&["b"]));
        assert_eq!(support(&p("(a.0)[a<-b]")), names(&["a", "b"]));
    }

    #[test]
    fn relabeling_examples() {
        assert_eq!(apply_relabeling(&p("a.0"), &rel("[a<-b]")), p("b.0"));
        assert_eq!(apply_relabeling(&p("(a.0)\\b"), &rel("[a<-b]")), p("(b.0)\\x0"));
        assert_eq!(apply_relabeling(&p("a.0"), &rel("[a<-b, b<-a]")), p("b.0"));
        assert_eq!(apply_relabeling(&p("a.b.0"), &rel("[a<-b, b<-a]")), p("b.a.0"));
        assert_eq!(
            apply_relabeling(&p("(a.0)[a<-c]"), &rel("[c<-d, a<-e]")),
            p("(a.0)[a<-d]")
        );
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_canon(&p("(a.0)\\a")), alpha_canon(&p("(b.0)\\b")));
        assert_ne!(alpha_canon(&p("a.0")), alpha_canon(&p("b.0")));
        let c = alpha_canon(&p("((a.0)\\a)\\a"));
        assert_eq!(c, p("((x1.0)\\x1)\\x0"));
        // free x0 is skipped
        assert_eq!(alpha_canon(&p("(x0.a.0)\\a")), p("(x0.x1.0)\\x1"));
        // binders over constants stay put
        assert_eq!(alpha_canon(&p("(A | a.0)\\a")), p("(A | a.0)\\a"));
    }
}
