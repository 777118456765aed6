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

//! Canonical forms modulo structural congruence.
//!
//! A term is read as a tree of *levels*.  A level is a parallel composition under restrictions:
//! its binders are pulled out to a prenex block (scope extrusion after renaming), its components
//! are *atoms* (prefixes, sums, relabelings, constants) kept as a sorted multiset, and inert
//! components (`0`, sums of inert terms) vanish.  Binders are named by nesting depth and the
//! assignment of names to the binders of one level is the one whose sorted atom list prints
//! smallest.  Restrictions that scope over a constant using the bound name are kept in place.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use crate::congruence::{CongruenceOptions, ContextMode};
use crate::error::Result;
use crate::term::{all_names, alpha_with, fresh_name, lookup, support, AlphaNamer, ConstId, Defs, Name, Process};

/// A canonical representative, and the names bound by its outermost restriction block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub process: Process,
    pub binders: Vec<Name>,
}

pub fn canonicalize(p: &Process, defs: &Defs, unfold_budget: usize) -> Result<CanonicalForm> {
    canonicalize_with(
        p,
        defs,
        &CongruenceOptions {
            unfold: unfold_budget,
            context: ContextMode::All,
        },
    )
}

pub fn canonicalize_with(p: &Process, defs: &Defs, opts: &CongruenceOptions) -> Result<CanonicalForm> {
    defs.check_term(p)?;
    let mut c = Canon::new(defs, opts.context);
    let expanded = expand(p, defs, opts.unfold, opts.context == ContextMode::All, &mut false);
    let (process, binders) = c.level(&expanded, 0);
    Ok(finalize(&process, &binders))
}

/// Congruence under the given per-side unfold budgets: true iff some pair of budgets up to the
/// bound yields identical canonical forms.
pub fn equiv(p: &Process, q: &Process, defs: &Defs, unfold_budget: usize) -> Result<bool> {
    equiv_with(
        p,
        q,
        defs,
        &CongruenceOptions {
            unfold: unfold_budget,
            context: ContextMode::All,
        },
    )
}

pub fn equiv_with(p: &Process, q: &Process, defs: &Defs, opts: &CongruenceOptions) -> Result<bool> {
    let forms = |t: &Process| -> Result<Vec<CanonicalForm>> {
        let top = if t.mentions_const() { opts.unfold } else { 0 };
        (0..=top)
            .map(|u| canonicalize_with(t, defs, &CongruenceOptions { unfold: u, ..*opts }))
            .collect()
    };
    let (fp, fq) = (forms(p)?, forms(q)?);
    Ok(fp.iter().any(|a| fq.contains(a)))
}

/// Unfolds constants in place, at most `budget` times along each branch.  Inlining is textual, so
/// free names of a body are bound by the restrictions around the occurrence.
pub(crate) fn expand(p: &Process, defs: &Defs, budget: usize, into_prefix: bool, cut: &mut bool) -> Process {
    match p {
        Process::Nil => Process::Nil,
        Process::Const(c) => match defs.get(c) {
            Some(body) if budget > 0 => expand(body, defs, budget - 1, into_prefix, cut),
            _ => {
                *cut = true;
                p.clone()
            }
        },
        Process::Prefix(a, q) if into_prefix => Process::prefix(a.clone(), expand(q, defs, budget, into_prefix, cut)),
        Process::Prefix(..) => p.clone(),
        Process::Sum(ps) => Process::Sum(ps.iter().map(|q| expand(q, defs, budget, into_prefix, cut)).collect()),
        Process::Par(l, r) => Process::par(
            expand(l, defs, budget, into_prefix, cut),
            expand(r, defs, budget, into_prefix, cut),
        ),
        Process::Restrict(q, a) => Process::restrict(expand(q, defs, budget, into_prefix, cut), a.clone()),
        Process::Relabel(q, s) => Process::relabel(expand(q, defs, budget, into_prefix, cut), s.clone()),
    }
}

/// Congruent to `0`.
pub(crate) fn is_zero(p: &Process) -> bool {
    match p {
        Process::Nil => true,
        Process::Par(l, r) => is_zero(l) && is_zero(r),
        Process::Sum(ps) => ps.iter().all(is_zero),
        _ => false,
    }
}

fn strip(p: &Process) -> &Process {
    match p {
        Process::Par(l, r) if is_zero(l) => strip(r),
        Process::Par(l, r) if is_zero(r) => strip(l),
        _ => p,
    }
}

fn flatten_summands(ps: &[Process], out: &mut Vec<Process>) {
    for c in ps {
        if is_zero(c) {
            continue;
        }
        match strip(c) {
            Process::Sum(qs) => flatten_summands(qs, out),
            _ => out.push(c.clone()),
        }
    }
}

/// Renames free names through `env`; inner binders shadow.  Targets of `env` never occur in `p`,
/// so no capture can happen.
fn rename(p: &Process, env: &mut Vec<(Name, Name)>) -> Process {
    match p {
        Process::Nil | Process::Const(_) => p.clone(),
        Process::Prefix(a, q) => {
            let mut a = a.clone();
            a.name = lookup(env, &a.name);
            Process::prefix(a, rename(q, env))
        }
        Process::Sum(ps) => Process::Sum(ps.iter().map(|q| rename(q, env)).collect()),
        Process::Par(l, r) => {
            let l = rename(l, env);
            Process::par(l, rename(r, env))
        }
        Process::Restrict(q, a) => {
            env.push((a.clone(), a.clone()));
            let q = rename(q, env);
            env.pop();
            Process::restrict(q, a.clone())
        }
        Process::Relabel(q, s) => Process::relabel(rename(q, env), s.map_names(|n| lookup(env, n))),
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

struct Canon<'a> {
    defs: &'a Defs,
    context: ContextMode,
    temps: usize,
    deep: RefCell<BTreeMap<ConstId, BTreeSet<Name>>>,
}

impl<'a> Canon<'a> {
    fn new(defs: &'a Defs, context: ContextMode) -> Canon<'a> {
        Canon {
            defs,
            context,
            temps: 0,
            deep: RefCell::new(BTreeMap::new()),
        }
    }

    /// A restriction is rigid when a constant in its scope may use the bound name.
    fn rigid(&self, body: &Process, a: &Name) -> bool {
        let mut hit = false;
        body.for_each_const(&mut |c| {
            if !hit {
                let mut deep = self.deep.borrow_mut();
                let names = deep
                    .entry(c.clone())
                    .or_insert_with(|| self.defs.deep_support(&Process::Const(c.clone())));
                hit = names.contains(a);
            }
        });
        hit
    }

    fn collect(&mut self, p: &Process, env: &mut Vec<(Name, Name)>, binders: &mut Vec<Name>, atoms: &mut Vec<Process>) {
        match p {
            Process::Nil => {}
            Process::Par(l, r) => {
                self.collect(l, env, binders, atoms);
                self.collect(r, env, binders, atoms);
            }
            Process::Restrict(q, a) if !self.rigid(q, a) => {
                let t = Name::temp(self.temps);
                self.temps += 1;
                binders.push(t.clone());
                env.push((a.clone(), t));
                self.collect(q, env, binders, atoms);
                env.pop();
            }
            Process::Sum(ps) => {
                let mut flat = Vec::new();
                flatten_summands(ps, &mut flat);
                match flat.len() {
                    0 => {}
                    1 => self.collect(&flat[0], env, binders, atoms),
                    _ => atoms.push(rename(&Process::Sum(flat), env)),
                }
            }
            _ => atoms.push(rename(p, env)),
        }
    }

    /// Canonical level rooted at `p`, its binders named `%depth, %depth+1, ...`.
    fn level(&mut self, p: &Process, depth: usize) -> (Process, Vec<Name>) {
        let (mut binders, mut atoms) = (Vec::new(), Vec::new());
        self.collect(p, &mut Vec::new(), &mut binders, &mut atoms);
        let k = binders.len();
        let supports: Vec<BTreeSet<Name>> = atoms.iter().map(support).collect();
        let (used, unused): (Vec<Name>, Vec<Name>) = binders
            .iter()
            .cloned()
            .partition(|t| supports.iter().any(|s| s.contains(t)));

        let mut best: Option<(Vec<String>, Vec<Process>)> = None;
        for perm in permutations(used.len()) {
            let mut env: Vec<(Name, Name)> = perm
                .iter()
                .enumerate()
                .map(|(i, &j)| (used[j].clone(), Name::placeholder(depth + i)))
                .collect();
            env.extend(
                unused
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), Name::placeholder(depth + used.len() + i))),
            );
            let mut done: Vec<(String, Process)> = atoms
                .iter()
                .map(|a| {
                    let c = self.atom(&rename(a, &mut env), depth + k);
                    (c.to_string(), c)
                })
                .collect();
            done.sort();
            let key: Vec<String> = done.iter().map(|(s, _)| s.clone()).collect();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, done.into_iter().map(|(_, c)| c).collect()));
            }
        }
        let atoms = best.map(|(_, a)| a).unwrap_or_default();
        let mut body = atoms.into_iter().reduce(Process::par).unwrap_or(Process::Nil);
        let names: Vec<Name> = (0..k).map(|i| Name::placeholder(depth + i)).collect();
        for n in names.iter().rev() {
            body = Process::restrict(body, n.clone());
        }
        (body, names)
    }

    fn atom(&mut self, p: &Process, depth: usize) -> Process {
        match p {
            Process::Prefix(a, q) => match self.context {
                ContextMode::All => Process::prefix(a.clone(), self.level(q, depth).0),
                ContextMode::Top => Process::prefix(
                    a.clone(),
                    alpha_with(q, &mut Vec::new(), &mut AlphaNamer::placeholders(depth)),
                ),
            },
            Process::Sum(ps) => {
                let mut done: Vec<(String, Process)> = ps
                    .iter()
                    .map(|q| {
                        let c = self.level(q, depth).0;
                        (c.to_string(), c)
                    })
                    .collect();
                done.sort();
                Process::Sum(done.into_iter().map(|(_, c)| c).collect())
            }
            Process::Relabel(q, s) => Process::relabel(self.level(q, depth).0, s.clone()),
            Process::Restrict(q, a) => Process::restrict(self.level(q, depth).0, a.clone()),
            Process::Const(_) => p.clone(),
            Process::Nil | Process::Par(..) => self.level(p, depth).0,
        }
    }
}

/// Replaces placeholder binders by ordinary names `x<i>` that avoid every other name.
fn finalize(p: &Process, root_binders: &[Name]) -> CanonicalForm {
    let names = all_names(p);
    let mut placeholders: Vec<(usize, Name)> = names
        .iter()
        .filter(|n| n.is_placeholder())
        .map(|n| (n.as_str()[1..].parse::<usize>().expect("placeholder index"), n.clone()))
        .collect();
    placeholders.sort();
    let mut avoid: BTreeSet<Name> = names.into_iter().filter(|n| !n.is_placeholder()).collect();
    let mut map = BTreeMap::new();
    for (_, ph) in placeholders {
        let fresh = fresh_name(&avoid);
        avoid.insert(fresh.clone());
        map.insert(ph, fresh);
    }
    let process = rename_all(p, &map);
    let binders = root_binders
        .iter()
        .map(|n| map.get(n).cloned().unwrap_or_else(|| n.clone()))
        .collect();
    CanonicalForm { process, binders }
}

/// Renames every occurrence, binding or not.  `map` must be injective onto unused names.
pub(crate) fn rename_all(p: &Process, map: &BTreeMap<Name, Name>) -> Process {
    let f = |n: &Name| map.get(n).cloned().unwrap_or_else(|| n.clone());
    match p {
        Process::Nil | Process::Const(_) => p.clone(),
        Process::Prefix(a, q) => {
            let mut a = a.clone();
            a.name = f(&a.name);
            Process::prefix(a, rename_all(q, map))
        }
        Process::Sum(ps) => Process::Sum(ps.iter().map(|q| rename_all(q, map)).collect()),
        Process::Par(l, r) => Process::par(rename_all(l, map), rename_all(r, map)),
        Process::Restrict(q, a) => Process::restrict(rename_all(q, map), f(a)),
        Process::Relabel(q, s) => Process::relabel(rename_all(q, map), s.map_names(f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Process {
        s.parse().unwrap()
    }

    fn eq(a: &str, b: &str) -> bool {
        equiv(&p(a), &p(b), &Defs::new(), 0).unwrap()
    }

    fn canon(a: &str) -> String {
        canonicalize(&p(a), &Defs::new(), 0).unwrap().process.to_string()
    }

    #[test]
    fn monoid_laws() {
        assert!(eq("a.0 | 0", "a.0"));
        assert!(eq("a.0 | b.0", "b.0 | a.0"));
        assert!(eq("(a.0 | b.0) | c.0", "a.0 | (b.0 | c.0)"));
        assert!(eq("a.0 + 0", "a.0"));
        assert!(eq("(a.0 + b.0) + c.0", "c.0 + (b.0 + a.0)"));
        assert!(eq("a.(b.0 | 0)", "a.b.0"));
        assert!(!eq("a.0", "b.0"));
        assert!(!eq("a.0 | a.0", "a.0"));
        assert!(!eq("a.0 + a.0", "a.0"));
    }

    #[test]
    fn restrictions() {
        assert!(eq("(a.0)\\a | b.0", "(a.0 | b.0)\\a"));
        assert!(eq("(a.0)\\a | a.0", "(b.0 | a.0)\\b"));
        assert!(eq("((a.b.0)\\a)\\b", "((a.b.0)\\b)\\a"));
        assert!(eq("(a.0)\\a", "(b.0)\\b"));
        assert!(!eq("(a.0)\\a", "a.0"));
        assert!(!eq("(0)\\a", "0"));
        assert!(eq("(0)\\a | a.0", "(a.0)\\b"));
        assert!(!eq("(a.0)\\a | (a.0)\\a", "(a.0 | a.0)\\a"));
        assert!(!eq("a.(0\\b)", "(a.0)\\b"));
        assert!(eq("(0 + (a.0)\\a) | b.0", "(b.0 | a.0)\\a"));
    }

    #[test]
    fn canonical_shapes() {
        assert_eq!(canon("b.0 | a.0 | 0"), "a.0 | b.0");
        assert_eq!(canon("((a.0)\\a | b.0)"), "(x0.0 | b.0)\\x0");
        assert_eq!(canon("(x0.0)\\a | (a.0)\\a"), "(x1.0 | x0.0)\\x2\\x1");
        let f = canonicalize(&p("(a.0)\\a | b.0"), &Defs::new(), 0).unwrap();
        assert_eq!(f.binders.len(), 1);
    }

    #[test]
    fn relabeling_is_opaque() {
        assert!(eq("(a.0 | 0)[a<-b]", "(a.0)[a<-b]"));
        assert!(!eq("(a.0)[a<-b]", "b.0"));
    }

    #[test]
    fn constants_unfold_within_budget() {
        let defs = Defs::parse("A = a.0\nB = b.B").unwrap();
        assert!(equiv(&p("A"), &p("a.0"), &defs, 1).unwrap());
        assert!(!equiv(&p("A"), &p("a.0"), &defs, 0).unwrap());
        assert!(equiv(&p("B"), &p("b.b.B"), &defs, 2).unwrap());
        // a restriction over a constant that uses the name cannot be renamed
        let defs = Defs::parse("C = c.0").unwrap();
        assert!(!equiv(&p("(C)\\c"), &p("(C)\\d"), &defs, 0).unwrap());
        assert!(equiv(&p("(C)\\d"), &p("(C)\\e"), &defs, 0).unwrap());
    }

    #[test]
    fn top_context_leaves_prefix_bodies() {
        let top = CongruenceOptions {
            unfold: 0,
            context: ContextMode::Top,
        };
        let e = |a: &str, b: &str| equiv_with(&p(a), &p(b), &Defs::new(), &top).unwrap();
        assert!(!e("a.(b.0 | 0)", "a.b.0"));
        assert!(e("a.(b.0)\\b | 0", "a.(c.0)\\c"));
        assert!(e("c.0 | a.0", "a.0 | c.0"));
    }

    #[test]
    fn idempotent() {
        for t in [
            "(a.0)\\a | (b.a.0 + 0)\\b",
            "((a.0 | 'a.0)\\a + b.0) | c.0",
            "(a.0)[a<-b] | 0",
        ] {
            let once = canonicalize(&p(t), &Defs::new(), 0).unwrap().process;
            let twice = canonicalize(&once, &Defs::new(), 0).unwrap().process;
            assert_eq!(once, twice);
        }
    }
}
