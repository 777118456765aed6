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

//! CCS with communication keys.
//!
//! Executed prefixes stay in the term, annotated with a key: `a[1].P`.  Synchronizing partners
//! share a key.  Undoing a step removes the key again, so no separate memory is needed.

mod check;
mod equiv;
mod step;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::term::parse::{parse_syn, Syn};
use crate::term::{lookup, Action, AlphaNamer, ConstId, Defs, Name, Process, Relabeling};

pub use check::{
    k_loop_check, k_loop_check_roots, k_lts, k_stability_check, k_stability_check_on, KLoopFailure, KLoopOptions,
    KLoopReport, KStabilityConfig, KStabilityReport, KViolation,
};
pub use equiv::{k_canon, k_equiv, k_replay, k_rewrites, k_witnesses, Fragment, KRewrite, KRewriteStep, KWitness};
pub use step::{k_bwd, k_fwd, KStep};

pub type Key = u32;

/// A CCS term whose prefixes may carry a key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KProcess {
    Nil,
    Prefix(Action, Option<Key>, Box<KProcess>),
    Sum(Vec<KProcess>),
    Par(Box<KProcess>, Box<KProcess>),
    Restrict(Box<KProcess>, Name),
    Relabel(Box<KProcess>, Relabeling),
    Const(ConstId),
}

impl KProcess {
    pub fn prefix(a: Action, key: Option<Key>, body: KProcess) -> KProcess {
        KProcess::Prefix(a, key, Box::new(body))
    }

    pub fn par(p: KProcess, q: KProcess) -> KProcess {
        KProcess::Par(Box::new(p), Box::new(q))
    }

    pub fn restrict(p: KProcess, a: Name) -> KProcess {
        KProcess::Restrict(Box::new(p), a)
    }

    pub fn relabel(p: KProcess, s: Relabeling) -> KProcess {
        KProcess::Relabel(Box::new(p), s)
    }

    /// Parses keyed syntax and checks the key invariants.
    pub fn parse(text: &str) -> Result<KProcess> {
        let p = from_syn(parse_syn(text)?);
        validate(&p)?;
        Ok(p)
    }

    /// Parses, validates, and checks constants against `defs`.
    pub fn parse_with(text: &str, defs: &Defs) -> Result<KProcess> {
        let p = KProcess::parse(text)?;
        defs.check_term(&p.erase())?;
        Ok(p)
    }

    /// A standard process bears no key.
    pub fn is_std(&self) -> bool {
        self.keys().is_empty()
    }

    /// Every key occurrence, with the action it annotates.
    pub fn key_occurrences(&self) -> Vec<(Key, Action)> {
        let mut out = Vec::new();
        self.walk_keys(&mut |k, a| out.push((k, a.clone())));
        out
    }

    fn walk_keys(&self, f: &mut impl FnMut(Key, &Action)) {
        match self {
            KProcess::Nil | KProcess::Const(_) => {}
            KProcess::Prefix(a, k, p) => {
                if let Some(k) = k {
                    f(*k, a);
                }
                p.walk_keys(f);
            }
            KProcess::Sum(ps) => ps.iter().for_each(|p| p.walk_keys(f)),
            KProcess::Par(p, q) => {
                p.walk_keys(f);
                q.walk_keys(f);
            }
            KProcess::Restrict(p, _) | KProcess::Relabel(p, _) => p.walk_keys(f),
        }
    }

    pub fn keys(&self) -> BTreeSet<Key> {
        self.key_occurrences().into_iter().map(|(k, _)| k).collect()
    }

    pub fn max_key(&self) -> Key {
        self.keys().into_iter().max().unwrap_or(0)
    }

    /// The underlying CCS term, keys dropped.
    pub fn erase(&self) -> Process {
        match self {
            KProcess::Nil => Process::Nil,
            KProcess::Prefix(a, _, p) => Process::prefix(a.clone(), p.erase()),
            KProcess::Sum(ps) => Process::Sum(ps.iter().map(KProcess::erase).collect()),
            KProcess::Par(p, q) => Process::par(p.erase(), q.erase()),
            KProcess::Restrict(p, a) => Process::restrict(p.erase(), a.clone()),
            KProcess::Relabel(p, s) => Process::relabel(p.erase(), s.clone()),
            KProcess::Const(c) => Process::Const(c.clone()),
        }
    }

    /// The CCS term reached by forgetting what was executed: keyed prefixes are dropped, along
    /// with the siblings they froze.
    pub fn residual(&self) -> Process {
        match self {
            KProcess::Nil => Process::Nil,
            KProcess::Prefix(a, None, p) => Process::prefix(a.clone(), p.erase()),
            KProcess::Prefix(_, Some(_), p) => p.residual(),
            KProcess::Sum(ps) => match ps.iter().find(|p| !p.is_std()) {
                Some(p) => p.residual(),
                None => Process::Sum(ps.iter().map(KProcess::erase).collect()),
            },
            KProcess::Par(p, q) => Process::par(p.residual(), q.residual()),
            KProcess::Restrict(p, a) => Process::restrict(p.residual(), a.clone()),
            KProcess::Relabel(p, s) => Process::relabel(p.residual(), s.clone()),
            KProcess::Const(c) => Process::Const(c.clone()),
        }
    }

    pub fn mentions_const(&self) -> bool {
        self.erase().mentions_const()
    }

    pub fn children(&self) -> Vec<&KProcess> {
        match self {
            KProcess::Nil | KProcess::Const(_) => vec![],
            KProcess::Prefix(_, _, p) | KProcess::Restrict(p, _) | KProcess::Relabel(p, _) => vec![p],
            KProcess::Sum(ps) => ps.iter().collect(),
            KProcess::Par(p, q) => vec![p, q],
        }
    }

    pub fn at_path(&self, path: &[usize]) -> Option<&KProcess> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.at_path(rest),
        }
    }

    pub fn replace_at(&self, path: &[usize], new: KProcess) -> Option<KProcess> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match self {
            KProcess::Prefix(a, k, p) if i == 0 => KProcess::prefix(a.clone(), *k, p.replace_at(rest, new)?),
            KProcess::Restrict(p, n) if i == 0 => KProcess::restrict(p.replace_at(rest, new)?, n.clone()),
            KProcess::Relabel(p, s) if i == 0 => KProcess::relabel(p.replace_at(rest, new)?, s.clone()),
            KProcess::Par(p, q) if i == 0 => KProcess::par(p.replace_at(rest, new)?, (**q).clone()),
            KProcess::Par(p, q) if i == 1 => KProcess::par((**p).clone(), q.replace_at(rest, new)?),
            KProcess::Sum(ps) if i < ps.len() => {
                let mut ps = ps.clone();
                ps[i] = ps[i].replace_at(rest, new)?;
                KProcess::Sum(ps)
            }
            _ => return None,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            KProcess::Sum(_) => 0,
            KProcess::Par(..) => 1,
            KProcess::Prefix(..) => 2,
            KProcess::Restrict(..) | KProcess::Relabel(..) => 3,
            KProcess::Nil | KProcess::Const(_) => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            KProcess::Nil => f.write_str("0"),
            KProcess::Const(c) => write!(f, "{c}"),
            KProcess::Prefix(a, k, p) => {
                match k {
                    Some(k) => write!(f, "{a}[{k}].")?,
                    None => write!(f, "{a}.")?,
                }
                p.fmt_at(f, 2)
            }
            KProcess::Sum(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    p.fmt_at(f, 1)?;
                }
                Ok(())
            }
            KProcess::Par(p, q) => {
                p.fmt_at(f, 1)?;
                f.write_str(" | ")?;
                q.fmt_at(f, 2)
            }
            KProcess::Restrict(p, n) => {
                p.fmt_at(f, 3)?;
                write!(f, "\\{n}")
            }
            KProcess::Relabel(p, s) => {
                p.fmt_at(f, 3)?;
                write!(f, "{s}")
            }
        }
    }
}

impl From<&Process> for KProcess {
    fn from(p: &Process) -> KProcess {
        match p {
            Process::Nil => KProcess::Nil,
            Process::Prefix(a, q) => KProcess::prefix(a.clone(), None, q.as_ref().into()),
            Process::Sum(ps) => KProcess::Sum(ps.iter().map(KProcess::from).collect()),
            Process::Par(q, r) => KProcess::par(q.as_ref().into(), r.as_ref().into()),
            Process::Restrict(q, a) => KProcess::restrict(q.as_ref().into(), a.clone()),
            Process::Relabel(q, s) => KProcess::relabel(q.as_ref().into(), s.clone()),
            Process::Const(c) => KProcess::Const(c.clone()),
        }
    }
}

fn from_syn(s: Syn) -> KProcess {
    match s {
        Syn::Nil => KProcess::Nil,
        Syn::Prefix(a, k, p) => KProcess::prefix(a, k, from_syn(*p)),
        Syn::Sum(ps) => {
            let mut ps: Vec<KProcess> = ps.into_iter().map(from_syn).collect();
            match ps.len() {
                0 => KProcess::Nil,
                1 => ps.pop().unwrap(),
                _ => KProcess::Sum(ps),
            }
        }
        Syn::Par(p, q) => KProcess::par(from_syn(*p), from_syn(*q)),
        Syn::Restrict(p, a) => KProcess::restrict(from_syn(*p), a),
        Syn::Relabel(p, s) => KProcess::relabel(from_syn(*p), s),
        Syn::Const(c) => KProcess::Const(c),
    }
}

/// Checks the key invariants: a key annotates one prefix, or two complementary ones; an
/// unexecuted prefix guards only unexecuted code; at most one branch of a sum was executed.
pub fn validate(p: &KProcess) -> Result<()> {
    let mut by_key: BTreeMap<Key, Vec<Action>> = BTreeMap::new();
    for (k, a) in p.key_occurrences() {
        by_key.entry(k).or_default().push(a);
    }
    for (k, acts) in &by_key {
        match acts.as_slice() {
            [_] => {}
            [a, b] if a.is_complement_of(b) => {}
            [_, _] => {
                return Err(Error::InvalidKeys(format!(
                    "key {k} annotates two non-complementary prefixes"
                )))
            }
            _ => return Err(Error::InvalidKeys(format!("key {k} annotates {} prefixes", acts.len()))),
        }
    }
    shape(p)
}

fn shape(p: &KProcess) -> Result<()> {
    match p {
        KProcess::Prefix(a, None, q) if !q.is_std() => Err(Error::InvalidKeys(format!(
            "unexecuted prefix {a} guards executed code"
        ))),
        KProcess::Sum(ps) if ps.iter().filter(|q| !q.is_std()).count() > 1 => {
            Err(Error::InvalidKeys("more than one branch of a sum was executed".into()))
        }
        _ => p.children().into_iter().try_for_each(shape),
    }
}

impl fmt::Display for KProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Debug for KProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for KProcess {
    type Err = Error;

    fn from_str(text: &str) -> Result<KProcess> {
        KProcess::parse(text)
    }
}

impl Serialize for KProcess {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Free names, counting both sides of relabeling pairs.
pub fn k_support(p: &KProcess) -> BTreeSet<Name> {
    crate::term::support(&p.erase())
}

/// Binder renaming with a shared namer; bound occurrences are mapped through `env`.
fn k_alpha_with(
    p: &KProcess,
    env: &mut Vec<(Name, Name)>,
    namer: &mut impl FnMut(usize) -> Name,
    depth: usize,
) -> KProcess {
    match p {
        KProcess::Nil | KProcess::Const(_) => p.clone(),
        KProcess::Prefix(a, k, q) => KProcess::prefix(
            Action {
                name: lookup(env, &a.name),
                co: a.co,
            },
            *k,
            k_alpha_with(q, env, namer, depth),
        ),
        KProcess::Sum(ps) => KProcess::Sum(ps.iter().map(|q| k_alpha_with(q, env, namer, depth)).collect()),
        KProcess::Par(q, r) => {
            let q = k_alpha_with(q, env, namer, depth);
            KProcess::par(q, k_alpha_with(r, env, namer, depth))
        }
        KProcess::Restrict(q, a) => {
            let new = if q.mentions_const() { a.clone() } else { namer(depth) };
            env.push((a.clone(), new.clone()));
            let body = k_alpha_with(q, env, namer, depth + 1);
            env.pop();
            KProcess::restrict(body, new)
        }
        KProcess::Relabel(q, s) => {
            let s = s.map_names(|n| lookup(env, n));
            KProcess::relabel(k_alpha_with(q, env, namer, depth), s)
        }
    }
}

/// Renames binders to `x<i>` in pre-order, skipping free names; keys are untouched.
pub fn k_alpha_canon(p: &KProcess) -> KProcess {
    let mut avoid = k_support(p);
    crate::term::rigid_binders(&p.erase(), &mut avoid);
    let mut namer = AlphaNamer::new(avoid);
    k_alpha_with(p, &mut Vec::new(), &mut |_| namer.fresh(), 0)
}

/// Binders renamed after their nesting depth, so the result does not depend on sibling order.
pub(crate) fn k_depth_names(p: &KProcess) -> KProcess {
    k_alpha_with(p, &mut Vec::new(), &mut Name::placeholder, 0)
}

pub fn k_alpha_eq(p: &KProcess, q: &KProcess) -> bool {
    k_alpha_canon(p) == k_alpha_canon(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keyed_syntax_round_trips() {
        for t in ["a[1].b.0", "'a[3].0 | a[3].0", "(a[1].0 + b.0)\\a", "a[1].b[2].0"] {
            let p = KProcess::parse(t).unwrap();
            assert_eq!(p.to_string(), t);
            assert_eq!(KProcess::parse(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn invariants_are_checked_at_parse_time() {
        assert!(KProcess::parse("a[1].0 | b[1].0").is_err());
        assert!(KProcess::parse("a[1].0 | 'a[1].0 | a[1].0").is_err());
        assert!(KProcess::parse("a.b[1].0").is_err());
        assert!(KProcess::parse("a[1].0 + b[2].0").is_err());
        assert!(KProcess::parse("a[1].0 | 'a[1].0").is_ok());
    }

    #[test]
    fn std_and_residual() {
        let p = KProcess::parse("a[1].b.0 + c.0").unwrap();
        assert!(!p.is_std());
        assert_eq!(p.erase().to_string(), "a.b.0 + c.0");
        assert_eq!(p.residual().to_string(), "b.0");
    }

    #[test]
    fn alpha_keeps_keys() {
        let p = KProcess::parse("(a[1].b.0)\\b").unwrap();
        let q = KProcess::parse("(a[1].c.0)\\c").unwrap();
        assert!(k_alpha_eq(&p, &q));
        assert!(!k_alpha_eq(&p, &KProcess::parse("(a[2].c.0)\\c").unwrap()));
    }
}
