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

//! Forward and backward steps of keyed terms.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::ccsk::{KProcess, Key};
use crate::error::Result;
use crate::term::{Defs, Label};

const PENDING: Key = 0;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KStep {
    pub label: Label,
    pub key: Key,
    pub target: KProcess,
}

/// Forward steps.  An unexecuted prefix fires and is stamped with the fresh key
/// `max_key + 1`; executed prefixes let their continuation move; a sum with an executed branch
/// only lets that branch move.  Constants in active positions unfold at most `unfold` times.
pub fn k_fwd(p: &KProcess, defs: &Defs, unfold: usize) -> Result<Vec<KStep>> {
    let key = p.max_key() + 1;
    let mut out = BTreeSet::new();
    for (label, target) in fwd_moves(p, defs, unfold)? {
        out.insert(KStep {
            label,
            key,
            target: stamp(&target, key),
        });
    }
    Ok(out.into_iter().collect())
}

fn fwd_moves(p: &KProcess, defs: &Defs, budget: usize) -> Result<Vec<(Label, KProcess)>> {
    Ok(match p {
        KProcess::Nil => Vec::new(),
        KProcess::Prefix(a, None, q) => vec![(
            Label::Act(a.clone()),
            KProcess::prefix(a.clone(), Some(PENDING), (**q).clone()),
        )],
        KProcess::Prefix(a, Some(k), q) => fwd_moves(q, defs, budget)?
            .into_iter()
            .map(|(l, q)| (l, KProcess::prefix(a.clone(), Some(*k), q)))
            .collect(),
        KProcess::Sum(ps) => {
            let executed: Vec<usize> = (0..ps.len()).filter(|&i| !ps[i].is_std()).collect();
            let live: Vec<usize> = if executed.is_empty() {
                (0..ps.len()).collect()
            } else {
                executed
            };
            let mut out = Vec::new();
            for i in live {
                for (l, q) in fwd_moves(&ps[i], defs, budget)? {
                    let mut qs = ps.clone();
                    qs[i] = q;
                    out.push((l, KProcess::Sum(qs)));
                }
            }
            out
        }
        KProcess::Par(q, r) => {
            let lm = fwd_moves(q, defs, budget)?;
            let rm = fwd_moves(r, defs, budget)?;
            let mut out = Vec::new();
            for (a, q2) in &lm {
                for (b, r2) in &rm {
                    if let (Label::Act(a), Label::Act(b)) = (a, b) {
                        if a.is_complement_of(b) {
                            out.push((Label::Tau, KProcess::par(q2.clone(), r2.clone())));
                        }
                    }
                }
            }
            out.extend(
                lm.into_iter()
                    .map(|(l, q2)| (l, KProcess::Par(Box::new(q2), r.clone()))),
            );
            out.extend(
                rm.into_iter()
                    .map(|(l, r2)| (l, KProcess::Par(q.clone(), Box::new(r2)))),
            );
            out
        }
        KProcess::Restrict(q, a) => fwd_moves(q, defs, budget)?
            .into_iter()
            .filter(|(l, _)| !l.mentions(a))
            .map(|(l, q)| (l, KProcess::restrict(q, a.clone())))
            .collect(),
        KProcess::Relabel(q, s) => fwd_moves(q, defs, budget)?
            .into_iter()
            .map(|(l, q)| (s.apply_label(&l), KProcess::relabel(q, s.clone())))
            .collect(),
        KProcess::Const(c) if budget > 0 => fwd_moves(&KProcess::from(defs.body(c)?), defs, budget - 1)?,
        KProcess::Const(_) => Vec::new(),
    })
}

fn stamp(p: &KProcess, key: Key) -> KProcess {
    match p {
        KProcess::Prefix(a, Some(PENDING), q) => KProcess::prefix(a.clone(), Some(key), stamp(q, key)),
        KProcess::Prefix(a, k, q) => KProcess::prefix(a.clone(), *k, stamp(q, key)),
        KProcess::Sum(ps) => KProcess::Sum(ps.iter().map(|q| stamp(q, key)).collect()),
        KProcess::Par(q, r) => KProcess::par(stamp(q, key), stamp(r, key)),
        KProcess::Restrict(q, a) => KProcess::restrict(stamp(q, key), a.clone()),
        KProcess::Relabel(q, s) => KProcess::relabel(stamp(q, key), s.clone()),
        KProcess::Nil | KProcess::Const(_) => p.clone(),
    }
}

/// Backward steps.  A keyed prefix whose continuation bears no key may lose its key; the two
/// prefixes sharing a synchronization key are reverted together as one `tau` step.
pub fn k_bwd(p: &KProcess) -> Vec<KStep> {
    let mut out: BTreeSet<KStep> = BTreeSet::new();
    for (label, key, target) in bwd_moves(p) {
        out.insert(KStep { label, key, target });
    }
    out.into_iter().collect()
}

fn bwd_moves(p: &KProcess) -> Vec<(Label, Key, KProcess)> {
    match p {
        KProcess::Nil | KProcess::Const(_) | KProcess::Prefix(_, None, _) => Vec::new(),
        KProcess::Prefix(a, Some(k), q) if q.is_std() => {
            vec![(
                Label::Act(a.clone()),
                *k,
                KProcess::prefix(a.clone(), None, (**q).clone()),
            )]
        }
        KProcess::Prefix(a, Some(k), q) => bwd_moves(q)
            .into_iter()
            .map(|(l, j, q)| (l, j, KProcess::prefix(a.clone(), Some(*k), q)))
            .collect(),
        KProcess::Sum(ps) => {
            let mut out = Vec::new();
            for (i, branch) in ps.iter().enumerate() {
                for (l, k, q) in bwd_moves(branch) {
                    let mut qs = ps.clone();
                    qs[i] = q;
                    out.push((l, k, KProcess::Sum(qs)));
                }
            }
            out
        }
        KProcess::Par(q, r) => {
            let (qk, rk) = (q.keys(), r.keys());
            let lm = bwd_moves(q);
            let rm = bwd_moves(r);
            let mut out = Vec::new();
            for (a, k, q2) in &lm {
                if !rk.contains(k) {
                    out.push((a.clone(), *k, KProcess::Par(Box::new(q2.clone()), r.clone())));
                    continue;
                }
                for (b, j, r2) in &rm {
                    if j == k && a.complement().as_ref() == Some(b) {
                        out.push((Label::Tau, *k, KProcess::par(q2.clone(), r2.clone())));
                    }
                }
            }
            for (b, j, r2) in rm {
                if !qk.contains(&j) {
                    out.push((b, j, KProcess::Par(q.clone(), Box::new(r2))));
                }
            }
            out
        }
        KProcess::Restrict(q, a) => bwd_moves(q)
            .into_iter()
            .filter(|(l, _, _)| !l.mentions(a))
            .map(|(l, k, q)| (l, k, KProcess::restrict(q, a.clone())))
            .collect(),
        KProcess::Relabel(q, s) => bwd_moves(q)
            .into_iter()
            .map(|(l, k, q)| (s.apply_label(&l), k, KProcess::relabel(q, s.clone())))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(text: &str) -> KProcess {
        KProcess::parse(text).unwrap()
    }

    fn fwd(text: &str) -> Vec<String> {
        k_fwd(&k(text), &Defs::new(), 2)
            .unwrap()
            .into_iter()
            .map(|t| format!("{} {} {}", t.label, t.key, t.target))
            .collect()
    }

    fn bwd(text: &str) -> Vec<String> {
        k_bwd(&k(text))
            .into_iter()
            .map(|t| format!("{} {} {}", t.label, t.key, t.target))
            .collect()
    }

    #[test]
    fn forward_examples() {
        assert_eq!(fwd("a.0"), vec!["a 1 a[1].0"]);
        assert!(fwd("a.0 | 'a.0").contains(&"tau 1 a[1].0 | 'a[1].0".to_string()));
        assert_eq!(fwd("a[1].b.0"), vec!["b 2 a[1].b[2].0"]);
        assert_eq!(fwd("a[1].0 + b.0"), Vec::<String>::new());
        assert_eq!(fwd("(a.0 | 'a.0)\\a"), vec!["tau 1 (a[1].0 | 'a[1].0)\\a"]);
    }

    #[test]
    fn backward_examples() {
        assert_eq!(bwd("a[1].0"), vec!["a 1 a.0"]);
        assert_eq!(bwd("a[1].b[2].0"), vec!["b 2 a[1].b.0"]);
        assert!(bwd("a.b.0").is_empty());
        assert_eq!(bwd("a[1].0 | 'a[1].0"), vec!["tau 1 a.0 | 'a.0"]);
        assert_eq!(bwd("a[1].0 + b.0"), vec!["a 1 a.0 + b.0"]);
    }

    #[test]
    fn relabeling_renames_labels_not_prefixes() {
        assert_eq!(fwd("(a.0)[a<-b]"), vec!["b 1 (a[1].0)[a<-b]"]);
    }
}
