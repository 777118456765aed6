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

//! Forward and backward steps, distribution, folding and normal forms.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::rccs::{Event, EventId, Memory, RProcess, RStep, Variant};
use crate::term::{
    all_names, alpha_with, fresh_name, lookup, rigid_binders, substitute, support, Action, AlphaNamer, Defs, Label,
    Name, Process,
};

/// Stands for the id of the step under construction.
const PENDING: EventId = 0;

/// Applies `m |> (P | Q) == (Y.m |> P) | (Y.m |> Q)` left to right everywhere.
pub fn distribute(r: &RProcess) -> RProcess {
    match r {
        RProcess::Thread(m, Process::Par(p, q)) => RProcess::par(
            distribute(&RProcess::Thread(m.fork(), (**p).clone())),
            distribute(&RProcess::Thread(m.fork(), (**q).clone())),
        ),
        RProcess::Thread(..) => r.clone(),
        RProcess::Par(l, r) => RProcess::par(distribute(l), distribute(r)),
        RProcess::Res(b, a) => RProcess::res(distribute(b), a.clone()),
    }
}

/// Distribution, plus lifting `m |> P\a` to `(m |> P)\a` where `P` needs distributing, and
/// unfolding constants in active positions (thread top level, under restrictions and in sum
/// branches), each branch at most `unfold` times.
pub fn normalize(r: &RProcess, defs: &Defs, unfold: usize) -> Result<RProcess> {
    Ok(match r {
        RProcess::Thread(m, p) => norm_thread(m, p, defs, unfold)?,
        RProcess::Par(l, r) => RProcess::par(normalize(l, defs, unfold)?, normalize(r, defs, unfold)?),
        RProcess::Res(b, a) => RProcess::res(normalize(b, defs, unfold)?, a.clone()),
    })
}

fn norm_thread(m: &Memory, code: &Process, defs: &Defs, budget: usize) -> Result<RProcess> {
    Ok(match code {
        Process::Par(p, q) => RProcess::par(
            norm_thread(&m.fork(), p, defs, budget)?,
            norm_thread(&m.fork(), q, defs, budget)?,
        ),
        Process::Restrict(p, a) if needs_split(p, defs, budget)? => {
            let (p, a) = lift_binder(m, p, a);
            RProcess::res(norm_thread(m, &p, defs, budget)?, a)
        }
        Process::Const(c) if budget > 0 => norm_thread(m, defs.body(c)?, defs, budget - 1)?,
        _ => RProcess::Thread(m.clone(), unfold_guards(code, defs, budget)?),
    })
}

/// True when `p`, seen through restrictions and unfoldable constants, is a parallel composition.
fn needs_split(p: &Process, defs: &Defs, budget: usize) -> Result<bool> {
    Ok(match p {
        Process::Par(..) => true,
        Process::Restrict(q, _) => needs_split(q, defs, budget)?,
        Process::Const(c) if budget > 0 => needs_split(defs.body(c)?, defs, budget - 1)?,
        _ => false,
    })
}

fn unfold_guards(p: &Process, defs: &Defs, budget: usize) -> Result<Process> {
    Ok(match p {
        Process::Const(c) if budget > 0 => unfold_guards(defs.body(c)?, defs, budget - 1)?,
        Process::Sum(ps) => Process::Sum(
            ps.iter()
                .map(|q| unfold_guards(q, defs, budget))
                .collect::<Result<_>>()?,
        ),
        Process::Restrict(q, a) => Process::restrict(unfold_guards(q, defs, budget)?, a.clone()),
        _ => p.clone(),
    })
}

/// The restriction `P\a` as seen from outside a thread with memory `m`: the binder is renamed
/// when the memory mentions `a`.
fn lift_binder(m: &Memory, p: &Process, a: &Name) -> (Process, Name) {
    let names = m.names();
    if !names.contains(a) {
        return (p.clone(), a.clone());
    }
    let mut avoid = names;
    avoid.extend(all_names(p));
    avoid.insert(a.clone());
    let c = fresh_name(&avoid);
    (substitute(p, &BTreeMap::from([(a.clone(), c.clone())])), c)
}

/// Inverse of distribution and restriction lifting, applied bottom-up wherever possible.
pub fn fold(r: &RProcess) -> RProcess {
    match r {
        RProcess::Thread(..) => r.clone(),
        RProcess::Par(l, r) => {
            let (l, r) = (fold(l), fold(r));
            if let (RProcess::Thread(m1, p), RProcess::Thread(m2, q)) = (&l, &r) {
                if m1 == m2 && m1.top() == Some(&Event::Fork) {
                    let (_, m) = m1.pop().expect("nonempty");
                    return RProcess::Thread(m, Process::par(p.clone(), q.clone()));
                }
            }
            RProcess::par(l, r)
        }
        RProcess::Res(b, a) => match fold(b) {
            RProcess::Thread(m, p) if !m.names().contains(a) => RProcess::Thread(m, Process::restrict(p, a.clone())),
            b => RProcess::res(b, a.clone()),
        },
    }
}

struct Ctx<'a> {
    defs: &'a Defs,
    fused: bool,
}

/// Forward steps.  Each carries the id `max_id + 1`.
pub fn fwd_transitions(r: &RProcess, defs: &Defs, variant: Variant, unfold: usize) -> Result<Vec<RStep>> {
    let source = match variant {
        Variant::LazyCongruence => normalize(r, defs, unfold)?,
        _ => r.clone(),
    };
    let ctx = Ctx {
        defs,
        fused: variant == Variant::Rule,
    };
    let id = r.max_id() + 1;
    let mut out = BTreeSet::new();
    for (label, target) in moves(&source, &ctx, unfold)? {
        let target = set_pending(&target, id);
        let target = match variant {
            Variant::Congruence => normalize(&target, defs, unfold)?,
            _ => target,
        };
        out.insert(RStep { id, label, target });
    }
    Ok(out.into_iter().collect())
}

fn moves(r: &RProcess, ctx: &Ctx, budget: usize) -> Result<Vec<(Label, RProcess)>> {
    Ok(match r {
        RProcess::Thread(m, p) => thread_moves(m, p, ctx, budget)?,
        RProcess::Par(l, r) => {
            let lm = moves(l, ctx, budget)?;
            let rm = moves(r, ctx, budget)?;
            let mut out = Vec::new();
            for (a, l2) in &lm {
                for (b, r2) in &rm {
                    if let (Label::Act(a), Label::Act(b)) = (a, b) {
                        if a.is_complement_of(b) {
                            out.push((Label::Tau, RProcess::par(l2.clone(), r2.clone())));
                        }
                    }
                }
            }
            out.extend(
                lm.into_iter()
                    .map(|(a, l2)| (a, RProcess::Par(Box::new(l2), r.clone()))),
            );
            out.extend(
                rm.into_iter()
                    .map(|(a, r2)| (a, RProcess::Par(l.clone(), Box::new(r2)))),
            );
            out
        }
        RProcess::Res(b, a) => moves(b, ctx, budget)?
            .into_iter()
            .filter(|(l, _)| !l.mentions(a))
            .map(|(l, b)| (l, RProcess::res(b, a.clone())))
            .collect(),
    })
}

fn thread_moves(m: &Memory, code: &Process, ctx: &Ctx, budget: usize) -> Result<Vec<(Label, RProcess)>> {
    Ok(match code {
        Process::Par(p, q) if ctx.fused => {
            let split = RProcess::par(
                RProcess::Thread(m.fork(), (**p).clone()),
                RProcess::Thread(m.fork(), (**q).clone()),
            );
            moves(&split, ctx, budget)?
        }
        Process::Restrict(p, a) if ctx.fused && needs_split(p, ctx.defs, budget)? => {
            let (p, a) = lift_binder(m, p, a);
            moves(&RProcess::res(RProcess::Thread(m.clone(), p), a), ctx, budget)?
        }
        Process::Const(c) if ctx.fused && budget > 0 => thread_moves(m, ctx.defs.body(c)?, ctx, budget - 1)?,
        _ => fire(code, ctx, budget)?
            .into_iter()
            .map(|(slot, label, code, alternatives)| {
                let e = Event::Act {
                    id: PENDING,
                    label: label.clone(),
                    alternatives,
                    slot,
                };
                (Label::Act(label), RProcess::Thread(m.push(e), code))
            })
            .collect(),
    })
}

/// Prefixes that may fire in a guarded sum, possibly under restrictions:
/// `(slot, action, new code, alternatives)`.  The new code keeps the restrictions on the path to
/// the prefix and drops the sums; the alternatives are the old code with `0` at `slot`.
/// A fired prefix: slot path, action, alternatives and continuation.
type Fired = (Vec<usize>, Action, Process, Process);

fn fire(p: &Process, ctx: &Ctx, budget: usize) -> Result<Vec<Fired>> {
    Ok(match p {
        Process::Prefix(a, q) => vec![(Vec::new(), a.clone(), (**q).clone(), Process::Nil)],
        Process::Sum(ps) => {
            let mut out = Vec::new();
            for (i, branch) in ps.iter().enumerate() {
                for (path, a, code, alt) in fire(branch, ctx, budget)? {
                    let mut alts = ps.clone();
                    alts[i] = alt;
                    let mut slot = vec![i];
                    slot.extend(path);
                    out.push((slot, a, code, Process::Sum(alts)));
                }
            }
            out
        }
        Process::Restrict(q, n) => fire(q, ctx, budget)?
            .into_iter()
            .filter(|(_, a, _, _)| &a.name != n)
            .map(|(path, a, code, alt)| {
                let mut slot = vec![0];
                slot.extend(path);
                (
                    slot,
                    a,
                    Process::restrict(code, n.clone()),
                    Process::restrict(alt, n.clone()),
                )
            })
            .collect(),
        Process::Const(c) if ctx.fused && budget > 0 => fire(ctx.defs.body(c)?, ctx, budget - 1)?,
        _ => Vec::new(),
    })
}

fn set_pending(r: &RProcess, id: EventId) -> RProcess {
    r.map_memories(&mut |m| {
        m.map_events(|e| match e {
            Event::Act {
                id: PENDING,
                label,
                alternatives,
                slot,
            } => Event::Act {
                id,
                label: label.clone(),
                alternatives: alternatives.clone(),
                slot: slot.clone(),
            },
            e => e.clone(),
        })
    })
}

/// Paths to threads, children numbered `0` and `1` under `Par` and `0` under `Res`.
fn thread_paths(r: &RProcess) -> Vec<(Vec<usize>, &Memory, &Process)> {
    fn go<'a>(r: &'a RProcess, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'a Memory, &'a Process)>) {
        match r {
            RProcess::Thread(m, p) => out.push((path.clone(), m, p)),
            RProcess::Par(l, r) => {
                path.push(0);
                go(l, path, out);
                path.pop();
                path.push(1);
                go(r, path, out);
                path.pop();
            }
            RProcess::Res(b, _) => {
                path.push(0);
                go(b, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(r, &mut Vec::new(), &mut out);
    out
}

fn replace_thread(r: &RProcess, path: &[usize], new: RProcess) -> RProcess {
    let Some((&i, rest)) = path.split_first() else {
        return new;
    };
    match r {
        RProcess::Par(l, r) if i == 0 => RProcess::Par(Box::new(replace_thread(l, rest, new)), r.clone()),
        RProcess::Par(l, r) => RProcess::Par(l.clone(), Box::new(replace_thread(r, rest, new))),
        RProcess::Res(b, a) => RProcess::res(replace_thread(b, rest, new), a.clone()),
        RProcess::Thread(..) => unreachable!("path leads through a thread"),
    }
}

fn undo_thread(m: &Memory, code: &Process) -> Option<RProcess> {
    let (
        Event::Act {
            label,
            alternatives,
            slot,
            ..
        },
        rest,
    ) = m.pop()?
    else {
        return None;
    };
    Some(RProcess::Thread(rest, restore(&alternatives, &slot, code, &label)?))
}

/// Puts `label.code` back at `slot` in `alt`.  Restrictions on the way are shared by `alt` and
/// `code`; both binders are renamed to a common fresh name.
fn restore(alt: &Process, slot: &[usize], code: &Process, label: &Action) -> Option<Process> {
    let Some((&i, rest)) = slot.split_first() else {
        return Some(Process::prefix(label.clone(), code.clone()));
    };
    match (alt, code) {
        (Process::Sum(ps), _) if i < ps.len() => {
            let mut ps = ps.clone();
            ps[i] = restore(&ps[i], rest, code, label)?;
            Some(Process::Sum(ps))
        }
        (Process::Restrict(a, x), Process::Restrict(c, y)) if i == 0 => {
            if x == y {
                return Some(Process::restrict(restore(a, rest, c, label)?, x.clone()));
            }
            let mut avoid = all_names(alt);
            avoid.extend(all_names(code));
            avoid.insert(label.name.clone());
            let f = fresh_name(&avoid);
            let a = substitute(a, &BTreeMap::from([(x.clone(), f.clone())]));
            let c = substitute(c, &BTreeMap::from([(y.clone(), f.clone())]));
            Some(Process::restrict(restore(&a, rest, &c, label)?, f))
        }
        _ => None,
    }
}

fn top_act(m: &Memory) -> Option<(EventId, &Action)> {
    match m.top()? {
        Event::Act { id, label, .. } => Some((*id, label)),
        Event::Fork => None,
    }
}

/// Backward steps: undo a top-of-stack event, jointly for a synchronization.  Distribution is
/// folded back first so that events shared by split threads surface again.
pub fn bwd_transitions(r: &RProcess, defs: &Defs, variant: Variant, unfold: usize) -> Result<Vec<RStep>> {
    let folded = fold(r);
    let threads = thread_paths(&folded);
    let mut out = BTreeSet::new();
    for (i, (path, m, code)) in threads.iter().enumerate() {
        let Some((id, label)) = top_act(m) else { continue };
        let holders: Vec<usize> = (0..threads.len()).filter(|&j| threads[j].1.contains_id(id)).collect();
        let tops: Vec<usize> = holders
            .iter()
            .copied()
            .filter(|&j| top_act(threads[j].1).map(|(k, _)| k) == Some(id))
            .collect();
        if holders != tops {
            continue;
        }
        let step = match tops.as_slice() {
            [_] => undo_thread(m, code).map(|t| (Label::Act(label.clone()), replace_thread(&folded, path, t))),
            [a, b] if *a == i => {
                let (p2, m2, c2) = &threads[*b];
                let partner = top_act(m2).expect("top").1;
                if !label.is_complement_of(partner) {
                    continue;
                }
                match (undo_thread(m, code), undo_thread(m2, c2)) {
                    (Some(t1), Some(t2)) => {
                        let s = replace_thread(&folded, path, t1);
                        Some((Label::Tau, replace_thread(&s, p2, t2)))
                    }
                    _ => None,
                }
            }
            _ => None,
        };
        if let Some((label, target)) = step {
            let target = match variant {
                Variant::Congruence => normalize(&target, defs, unfold)?,
                _ => target,
            };
            out.insert(RStep { id, label, target });
        }
    }
    Ok(out.into_iter().collect())
}

fn r_support(r: &RProcess, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match r {
        RProcess::Thread(m, p) => {
            let mut names = m.names();
            names.extend(support(p));
            out.extend(names.into_iter().filter(|n| !bound.contains(n)));
        }
        RProcess::Par(l, r) => {
            r_support(l, bound, out);
            r_support(r, bound, out);
        }
        RProcess::Res(b, a) => {
            bound.push(a.clone());
            r_support(b, bound, out);
            bound.pop();
        }
    }
}

fn mentions_const(r: &RProcess) -> bool {
    r.threads().iter().any(|(m, p)| {
        p.mentions_const()
            || m.events()
                .iter()
                .any(|e| matches!(e, Event::Act { alternatives, .. } if alternatives.mentions_const()))
    })
}

fn r_rigid(r: &RProcess, out: &mut BTreeSet<Name>) {
    match r {
        RProcess::Thread(m, p) => {
            rigid_binders(p, out);
            for e in m.events() {
                if let Event::Act { alternatives, .. } = e {
                    rigid_binders(alternatives, out);
                }
            }
        }
        RProcess::Par(l, r) => {
            r_rigid(l, out);
            r_rigid(r, out);
        }
        RProcess::Res(b, a) => {
            if mentions_const(b) {
                out.insert(a.clone());
            }
            r_rigid(b, out);
        }
    }
}

/// Renames every binder at reversible-process level and in code to `x<i>` in pre-order.  Binders
/// inside recorded alternatives are numbered locally as `%<i>`, so that copies of one event
/// shared by forked threads stay identical.
pub fn r_alpha_canon(r: &RProcess) -> RProcess {
    let mut avoid = BTreeSet::new();
    r_support(r, &mut Vec::new(), &mut avoid);
    r_rigid(r, &mut avoid);
    let mut namer = AlphaNamer::new(avoid);
    r_alpha(r, &mut Vec::new(), &mut namer)
}

fn r_alpha(r: &RProcess, env: &mut Vec<(Name, Name)>, namer: &mut AlphaNamer) -> RProcess {
    match r {
        RProcess::Thread(m, p) => {
            let m = m.map_events(|e| match e {
                Event::Fork => Event::Fork,
                Event::Act {
                    id,
                    label,
                    alternatives,
                    slot,
                } => Event::Act {
                    id: *id,
                    label: Action {
                        name: lookup(env, &label.name),
                        co: label.co,
                    },
                    alternatives: alpha_with(alternatives, env, &mut AlphaNamer::placeholders(0)),
                    slot: slot.clone(),
                },
            });
            RProcess::Thread(m, alpha_with(p, env, namer))
        }
        RProcess::Par(l, r) => {
            let l = r_alpha(l, env, namer);
            RProcess::par(l, r_alpha(r, env, namer))
        }
        RProcess::Res(b, a) => {
            let new = if mentions_const(b) { a.clone() } else { namer.fresh() };
            env.push((a.clone(), new.clone()));
            let b = r_alpha(b, env, namer);
            env.pop();
            RProcess::res(b, new)
        }
    }
}

/// Renumbers event ids to `1..n` preserving their order.
pub(crate) fn renumber(r: &RProcess) -> RProcess {
    let ids: BTreeSet<EventId> = r
        .threads()
        .iter()
        .flat_map(|(m, _)| m.events().iter().filter_map(Event::id).collect::<Vec<_>>())
        .collect();
    let map: BTreeMap<EventId, EventId> = ids.into_iter().zip(1..).collect();
    r.map_memories(&mut |m| {
        m.map_events(|e| match e {
            Event::Act {
                id,
                label,
                alternatives,
                slot,
            } => Event::Act {
                id: map[id],
                label: label.clone(),
                alternatives: alternatives.clone(),
                slot: slot.clone(),
            },
            Event::Fork => Event::Fork,
        })
    })
}

/// Identity of a state up to alpha-conversion and order-preserving renaming of event ids.
pub fn state_key(r: &RProcess) -> RProcess {
    r_alpha_canon(&renumber(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Process {
        text.parse().unwrap()
    }

    fn lift(text: &str) -> RProcess {
        RProcess::lift(&p(text))
    }

    fn fwd(r: &RProcess, v: Variant) -> Vec<RStep> {
        fwd_transitions(r, &Defs::new(), v, 2).unwrap()
    }

    fn bwd(r: &RProcess, v: Variant) -> Vec<RStep> {
        bwd_transitions(r, &Defs::new(), v, 2).unwrap()
    }

    #[test]
    fn first_step_gets_id_one() {
        let ts = fwd(&lift("a.0"), Variant::Congruence);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].id, 1);
        assert_eq!(ts[0].label.to_string(), "a");
        assert_eq!(ts[0].target.to_string(), "<1:a> |> 0");
        let back = bwd(&ts[0].target, Variant::Congruence);
        assert_eq!(back.len(), 1);
        assert_eq!((back[0].id, back[0].label.to_string()), (1, "a".to_string()));
        assert_eq!(back[0].target, lift("a.0"));
    }

    #[test]
    fn unnormalized_parallel_code_is_blocked() {
        assert!(fwd(&lift("a.0 | b.0"), Variant::Congruence).is_empty());
        assert_eq!(fwd(&lift("a.0 | b.0"), Variant::Rule).len(), 2);
        assert_eq!(fwd(&lift("a.0 | b.0"), Variant::LazyCongruence).len(), 2);
    }

    #[test]
    fn distribution_forks_every_operand() {
        let r = distribute(&lift("(a.0 | b.0) | c.0"));
        assert_eq!(r.to_string(), "((<Y;Y> |> a.0) | (<Y;Y> |> b.0)) | (<Y> |> c.0)");
        assert_eq!(distribute(&r), r);
        assert_eq!(distribute(&lift("a.0")), lift("a.0"));
    }

    #[test]
    fn sync_shares_an_id_and_undoes_jointly() {
        for v in [Variant::Congruence, Variant::Rule] {
            let root = normalize(&lift("a.0 | 'a.0"), &Defs::new(), 2).unwrap();
            let tau: Vec<_> = fwd(&root, v).into_iter().filter(|t| t.label == Label::Tau).collect();
            assert_eq!(tau.len(), 1);
            let ids: Vec<_> = tau[0]
                .target
                .threads()
                .iter()
                .map(|(m, _)| top_act(m).unwrap().0)
                .collect();
            assert_eq!(ids, vec![1, 1]);
            let back = bwd(&tau[0].target, v);
            assert_eq!(back.len(), 1);
            assert_eq!(back[0].label, Label::Tau);
            assert_eq!(normalize(&back[0].target, &Defs::new(), 2).unwrap(), root);
        }
    }

    #[test]
    fn sum_alternatives_are_restored() {
        let ts = fwd(&lift("a.b.0 + c.0"), Variant::Congruence);
        let a = ts.iter().find(|t| t.label.to_string() == "a").unwrap();
        assert_eq!(a.target.to_string(), "<1:a{0 + c.0}> |> b.0");
        let back = bwd(&a.target, Variant::Congruence);
        assert_eq!(back[0].target, lift("a.b.0 + c.0"));
    }

    #[test]
    fn shared_history_blocks_undo_until_refolded() {
        let v = Variant::Congruence;
        let s1 = fwd(&lift("a.(b.0 | c.0)"), v).remove(0).target;
        assert_eq!(s1.to_string(), "(<Y;1:a> |> b.0) | (<Y;1:a> |> c.0)");
        assert_eq!(bwd(&s1, v).len(), 1);
        let s2 = fwd(&s1, v)
            .into_iter()
            .find(|t| t.label.to_string() == "b")
            .unwrap()
            .target;
        let back = bwd(&s2, v);
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].id, 2);
        assert_eq!(back[0].target, s1);
    }

    #[test]
    fn restriction_filters_and_lifts() {
        let root = normalize(&lift("(a.0 | 'a.0)\\a"), &Defs::new(), 2).unwrap();
        assert_eq!(root.to_string(), "((<Y> |> a.0) | (<Y> |> 'a.0))\\a");
        let ts = fwd(&root, Variant::Congruence);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].label, Label::Tau);
        let rule = fwd(&lift("(a.0 | 'a.0)\\a"), Variant::Rule);
        assert_eq!(rule.len(), 1);
    }

    #[test]
    fn lifting_renames_binders_seen_by_the_memory() {
        let s = fwd(&lift("a.(a.0 | b.0)\\a"), Variant::Congruence).remove(0).target;
        assert_eq!(s.to_string(), "((<Y;1:a> |> x0.0) | (<Y;1:a> |> b.0))\\x0");
        let back = bwd(&s, Variant::Congruence);
        assert_eq!(back.len(), 1);
        assert_eq!(r_alpha_canon(&back[0].target), r_alpha_canon(&lift("a.(a.0 | b.0)\\a")));
    }

    #[test]
    fn restrictions_around_a_sum_stay_in_the_code() {
        let root = lift("(b.0 + a.0)\\a");
        assert_eq!(normalize(&root, &Defs::new(), 2).unwrap(), root);
        let ts = fwd(&root, Variant::Congruence);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].target.to_string(), "<1:b{(0 + a.0)\\a}> |> 0\\a");
        let back = bwd(&ts[0].target, Variant::Congruence);
        assert_eq!(back[0].target, root);
    }

    #[test]
    fn keys_ignore_id_offsets_and_binder_names() {
        let m1 = Memory::from_events(vec![Event::Act {
            id: 5,
            label: Action::parse("a").unwrap(),
            alternatives: Process::Nil,
            slot: vec![],
        }]);
        let m2 = Memory::from_events(vec![Event::Act {
            id: 1,
            label: Action::parse("a").unwrap(),
            alternatives: Process::Nil,
            slot: vec![],
        }]);
        let r1 = RProcess::res(RProcess::Thread(m1, p("b.0")), Name::new("b").unwrap());
        let r2 = RProcess::res(RProcess::Thread(m2, p("c.0")), Name::new("c").unwrap());
        assert_eq!(state_key(&r1), state_key(&r2));
    }
}
