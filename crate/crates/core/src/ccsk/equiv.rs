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

//! Structural equivalence of keyed terms, and bounded generation of equivalent variants.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::ccsk::{k_alpha_canon, k_depth_names, KProcess};
use crate::error::Error;
use crate::term::{all_names, fresh_name, Name};

/// Which congruence keyed terms are compared under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fragment {
    /// Alpha-conversion only.
    #[default]
    None,
    /// Alpha-conversion, and commutativity, associativity and unit laws of `|` and `+`.
    AcUnitAlpha,
}

impl Fragment {
    pub fn as_str(self) -> &'static str {
        match self {
            Fragment::None => "none",
            Fragment::AcUnitAlpha => "ac-unit-alpha",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Fragment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fragment, Error> {
        match s {
            "none" => Ok(Fragment::None),
            "ac-unit-alpha" => Ok(Fragment::AcUnitAlpha),
            _ => Err(Error::Invalid(format!("unknown fragment {s:?}"))),
        }
    }
}

/// Canonical representative: equal representatives iff equivalent terms.
pub fn k_canon(p: &KProcess, fragment: Fragment) -> KProcess {
    match fragment {
        Fragment::None => k_alpha_canon(p),
        Fragment::AcUnitAlpha => k_alpha_canon(&ac_norm(&k_depth_names(p))),
    }
}

pub fn k_equiv(p: &KProcess, q: &KProcess, fragment: Fragment) -> bool {
    k_canon(p, fragment) == k_canon(q, fragment)
}

fn ac_norm(p: &KProcess) -> KProcess {
    match p {
        KProcess::Nil | KProcess::Const(_) => p.clone(),
        KProcess::Prefix(a, k, q) => KProcess::prefix(a.clone(), *k, ac_norm(q)),
        KProcess::Restrict(q, a) => KProcess::restrict(ac_norm(q), a.clone()),
        KProcess::Relabel(q, s) => KProcess::relabel(ac_norm(q), s.clone()),
        KProcess::Par(..) => {
            let mut parts = Vec::new();
            par_operands(p, &mut parts);
            let mut parts: Vec<KProcess> = parts
                .into_iter()
                .map(ac_norm)
                .flat_map(|q| {
                    let mut flat = Vec::new();
                    par_operands(&q, &mut flat);
                    flat.into_iter().cloned().collect::<Vec<_>>()
                })
                .filter(|q| *q != KProcess::Nil)
                .collect();
            parts.sort();
            parts.into_iter().reduce(KProcess::par).unwrap_or(KProcess::Nil)
        }
        KProcess::Sum(ps) => {
            let mut parts: Vec<KProcess> = ps
                .iter()
                .map(ac_norm)
                .flat_map(|q| match q {
                    KProcess::Sum(qs) => qs,
                    q => vec![q],
                })
                .filter(|q| *q != KProcess::Nil)
                .collect();
            parts.sort();
            match parts.len() {
                0 => KProcess::Nil,
                1 => parts.pop().unwrap(),
                _ => KProcess::Sum(parts),
            }
        }
    }
}

fn par_operands<'a>(p: &'a KProcess, out: &mut Vec<&'a KProcess>) {
    match p {
        KProcess::Par(q, r) => {
            par_operands(q, out);
            par_operands(r, out);
        }
        _ => out.push(p),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KRewrite {
    ParComm,
    ParAssoc,
    ParAssocInv,
    ParUnit,
    ParUnitInv,
    SumSwap,
    SumFlatten,
    SumGroup,
    SumUnit,
    SumUnitInv,
    Alpha,
}

impl KRewrite {
    pub fn tag(self) -> &'static str {
        match self {
            KRewrite::ParComm => "par-comm",
            KRewrite::ParAssoc => "par-assoc",
            KRewrite::ParAssocInv => "par-assoc-inv",
            KRewrite::ParUnit => "par-unit",
            KRewrite::ParUnitInv => "par-unit-inv",
            KRewrite::SumSwap => "sum-swap",
            KRewrite::SumFlatten => "sum-flatten",
            KRewrite::SumGroup => "sum-group",
            KRewrite::SumUnit => "sum-unit",
            KRewrite::SumUnitInv => "sum-unit-inv",
            KRewrite::Alpha => "alpha",
        }
    }
}

impl fmt::Display for KRewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One rewrite: `axiom` applied at `path` yields `after`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KRewriteStep {
    pub axiom: KRewrite,
    pub path: Vec<usize>,
    pub after: KProcess,
}

/// Single rewrites of `p` at every position.
pub fn k_rewrites(p: &KProcess, fragment: Fragment) -> Vec<KRewriteStep> {
    let fresh = fresh_name(&all_names(&p.erase()));
    let mut out = Vec::new();
    collect(p, p, fragment, &fresh, &mut Vec::new(), &mut out);
    out
}

fn collect(
    root: &KProcess,
    p: &KProcess,
    fragment: Fragment,
    fresh: &Name,
    path: &mut Vec<usize>,
    out: &mut Vec<KRewriteStep>,
) {
    for (axiom, q) in at_root(p, fragment, fresh) {
        let after = root.replace_at(path, q).expect("path exists");
        out.push(KRewriteStep {
            axiom,
            path: path.clone(),
            after,
        });
    }
    for (i, c) in p.children().into_iter().enumerate() {
        path.push(i);
        collect(root, c, fragment, fresh, path, out);
        path.pop();
    }
}

fn at_root(p: &KProcess, fragment: Fragment, fresh: &Name) -> Vec<(KRewrite, KProcess)> {
    let mut out = Vec::new();
    if let KProcess::Restrict(q, a) = p {
        if !q.mentions_const() {
            out.push((KRewrite::Alpha, KProcess::restrict(rename(q, a, fresh), fresh.clone())));
        }
    }
    if fragment == Fragment::None {
        return out;
    }
    match p {
        KProcess::Par(q, r) => {
            out.push((KRewrite::ParComm, KProcess::par((**r).clone(), (**q).clone())));
            if let KProcess::Par(q1, q2) = &**q {
                out.push((
                    KRewrite::ParAssoc,
                    KProcess::par((**q1).clone(), KProcess::par((**q2).clone(), (**r).clone())),
                ));
            }
            if let KProcess::Par(r1, r2) = &**r {
                out.push((
                    KRewrite::ParAssocInv,
                    KProcess::par(KProcess::par((**q).clone(), (**r1).clone()), (**r2).clone()),
                ));
            }
            if **r == KProcess::Nil {
                out.push((KRewrite::ParUnit, (**q).clone()));
            }
        }
        KProcess::Sum(ps) => {
            for i in 0..ps.len() {
                if i + 1 < ps.len() {
                    let mut qs = ps.clone();
                    qs.swap(i, i + 1);
                    out.push((KRewrite::SumSwap, KProcess::Sum(qs)));
                    if ps.len() > 2 {
                        let mut qs = ps.clone();
                        let pair = KProcess::Sum(qs.drain(i..i + 2).collect());
                        qs.insert(i, pair);
                        out.push((KRewrite::SumGroup, KProcess::Sum(qs)));
                    }
                }
                if let KProcess::Sum(inner) = &ps[i] {
                    let mut qs = ps[..i].to_vec();
                    qs.extend(inner.iter().cloned());
                    qs.extend(ps[i + 1..].iter().cloned());
                    out.push((KRewrite::SumFlatten, KProcess::Sum(qs)));
                }
                if ps[i] == KProcess::Nil {
                    let mut qs = ps.clone();
                    qs.remove(i);
                    let q = if qs.len() == 1 {
                        qs.pop().unwrap()
                    } else {
                        KProcess::Sum(qs)
                    };
                    out.push((KRewrite::SumUnit, q));
                }
            }
        }
        _ => {}
    }
    out.push((KRewrite::ParUnitInv, KProcess::par(p.clone(), KProcess::Nil)));
    out.push((KRewrite::SumUnitInv, KProcess::Sum(vec![p.clone(), KProcess::Nil])));
    out
}

/// Renames free occurrences of `from` to `to`; `to` must not occur in `p`.
fn rename(p: &KProcess, from: &Name, to: &Name) -> KProcess {
    match p {
        KProcess::Nil | KProcess::Const(_) => p.clone(),
        KProcess::Prefix(a, k, q) => {
            let mut a = a.clone();
            if &a.name == from {
                a.name = to.clone();
            }
            KProcess::prefix(a, *k, rename(q, from, to))
        }
        KProcess::Sum(ps) => KProcess::Sum(ps.iter().map(|q| rename(q, from, to)).collect()),
        KProcess::Par(q, r) => KProcess::par(rename(q, from, to), rename(r, from, to)),
        KProcess::Restrict(_, a) if a == from => p.clone(),
        KProcess::Restrict(q, a) => KProcess::restrict(rename(q, from, to), a.clone()),
        KProcess::Relabel(q, s) => KProcess::relabel(
            rename(q, from, to),
            s.map_names(|n| if n == from { to.clone() } else { n.clone() }),
        ),
    }
}

/// A term reached from the start term by `trace`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KWitness {
    pub process: KProcess,
    pub trace: Vec<KRewriteStep>,
}

/// Every term reachable from `p` by at most `depth` rewrites, with a shortest trace each.
pub fn k_witnesses(p: &KProcess, fragment: Fragment, depth: usize) -> Vec<KWitness> {
    let mut seen: HashSet<KProcess> = HashSet::from([p.clone()]);
    let mut out = vec![KWitness {
        process: p.clone(),
        trace: Vec::new(),
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if out[i].trace.len() >= depth {
            continue;
        }
        for step in k_rewrites(&out[i].process, fragment) {
            if seen.insert(step.after.clone()) {
                let mut trace = out[i].trace.clone();
                let process = step.after.clone();
                trace.push(step);
                out.push(KWitness { process, trace });
                queue.push_back(out.len() - 1);
            }
        }
    }
    out
}

/// Checks that `trace` rewrites `p` into `q`, each step being a rewrite of the fragment.
pub fn k_replay(p: &KProcess, q: &KProcess, trace: &[KRewriteStep], fragment: Fragment) -> bool {
    let mut cur = p.clone();
    for step in trace {
        let ok = k_rewrites(&cur, fragment)
            .into_iter()
            .any(|r| r.axiom == step.axiom && r.path == step.path && r.after == step.after);
        if !ok {
            return false;
        }
        cur = step.after.clone();
    }
    &cur == q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(text: &str) -> KProcess {
        KProcess::parse(text).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        let ac = Fragment::AcUnitAlpha;
        assert!(k_equiv(&k("a[1].0 | 0"), &k("a[1].0"), ac));
        assert!(!k_equiv(&k("a[1].0 | 0"), &k("a[1].0"), Fragment::None));
        for f in [Fragment::None, ac] {
            assert!(!k_equiv(&k("a[1].0"), &k("a[2].0"), f));
            assert!(k_equiv(&k("(b[1].0 | 'b[1].0)\\b"), &k("(c[1].0 | 'c[1].0)\\c"), f));
        }
        assert!(k_equiv(&k("(a.0 | b[1].0) | c.0"), &k("c.0 | (b[1].0 | a.0)"), ac));
        assert!(k_equiv(&k("(a.0)\\x | (b.0)\\y"), &k("(b.0)\\z | (a.0)\\w"), ac));
        assert!(!k_equiv(&k("(a.0 | 'a.0)\\a"), &k("(a.0)\\a | 'a.0"), ac));
        assert!(k_equiv(&k("a[1].0 + (b.0 + 0)"), &k("b.0 + a[1].0"), ac));
    }

    #[test]
    fn witnesses_replay_and_stay_equivalent() {
        let p = k("(a[1].0 + b.0) | 'a[1].0");
        for f in [Fragment::None, Fragment::AcUnitAlpha] {
            let ws = k_witnesses(&p, f, 2);
            assert!(ws.len() > 1 || f == Fragment::None);
            for w in &ws {
                assert!(k_equiv(&p, &w.process, f), "{}", w.process);
                assert!(k_replay(&p, &w.process, &w.trace, f));
            }
        }
    }

    #[test]
    fn alpha_only_witnesses_are_alpha_variants() {
        let p = k("(a.0 | 'a.0)\\a");
        let ws = k_witnesses(&p, Fragment::None, 1);
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[1].process.to_string(), "(x0.0 | 'x0.0)\\x0");
    }
}
