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

//! Breadth-first closure under the axioms: an independent oracle for the canonical form, a
//! source of replayable witness traces, and bounded witness sets.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::congruence::axioms::rewrites;
use crate::congruence::{CongAxiom, ContextMode};
use crate::error::Result;
use crate::term::{alpha_canon, alpha_eq, Defs, Process};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BruteVerdict {
    Equivalent,
    Inequivalent,
    /// The step budget ran out before the closure was complete.
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteOptions {
    /// Maximum number of expanded states.
    pub step_budget: usize,
    /// Whether constants may be unfolded and folded.
    pub unfold: bool,
    pub context: ContextMode,
    /// Terms heavier than this are not visited; `None` uses the heavier endpoint plus the
    /// heaviest definition body when unfolding.
    pub weight_bound: Option<usize>,
}

impl BruteOptions {
    pub fn new(step_budget: usize) -> BruteOptions {
        BruteOptions {
            step_budget,
            unfold: false,
            context: ContextMode::All,
            weight_bound: None,
        }
    }

    fn bound(&self, defs: &Defs, ends: &[&Process]) -> usize {
        self.weight_bound.unwrap_or_else(|| {
            let extra = if self.unfold {
                defs.iter().map(|(_, b)| b.weight()).max().unwrap_or(0)
            } else {
                0
            };
            ends.iter().map(|p| p.weight()).max().unwrap_or(0) + extra
        })
    }
}

/// One step of an axiom-replay trace: `after` is `before` with the axiom applied at `path`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub axiom: CongAxiom,
    pub path: Vec<usize>,
    pub before: Process,
    pub after: Process,
}

/// States reached by breadth-first search, stored up to alpha.
#[derive(Debug, Clone)]
pub struct Closure {
    pub states: HashSet<Process>,
    /// False when the step budget stopped the search.
    pub complete: bool,
}

/// Congruence by exhaustive search, with constants unfolded iff `defs` is nonempty.
pub fn brute_equiv(p: &Process, q: &Process, defs: &Defs, step_budget: usize) -> Result<BruteVerdict> {
    let opts = BruteOptions {
        unfold: !defs.is_empty(),
        ..BruteOptions::new(step_budget)
    };
    brute_equiv_with(p, q, defs, &opts)
}

pub fn brute_equiv_with(p: &Process, q: &Process, defs: &Defs, opts: &BruteOptions) -> Result<BruteVerdict> {
    defs.check_term(p)?;
    defs.check_term(q)?;
    let target = alpha_canon(q);
    let bound = opts.bound(defs, &[p, q]);
    let mut search = Search::new(alpha_canon(p), bound, true);
    Ok(match search.run(defs, opts, |s| *s == target) {
        Some(_) => BruteVerdict::Equivalent,
        None if search.complete => BruteVerdict::Inequivalent,
        None => BruteVerdict::Exhausted,
    })
}

/// All terms of weight at most `bound` congruent to `p`, up to alpha.
pub fn closure(p: &Process, defs: &Defs, opts: &BruteOptions, bound: usize) -> Closure {
    let mut search = Search::new(alpha_canon(p), bound, false);
    search.run(defs, opts, |_| false);
    Closure {
        complete: search.complete,
        states: search.nodes.into_iter().map(|n| n.state).collect(),
    }
}

/// A shortest axiom sequence from `p` to `q`, if the search finds one within budget.
pub fn trace(p: &Process, q: &Process, defs: &Defs, opts: &BruteOptions) -> Result<Option<Vec<TraceStep>>> {
    defs.check_term(p)?;
    defs.check_term(q)?;
    let target = alpha_canon(q);
    let mut search = Search::new(alpha_canon(p), opts.bound(defs, &[p, q]), true);
    Ok(search.run(defs, opts, |s| *s == target).map(|i| {
        let mut steps = search.steps_to(i, p);
        if *q != target {
            steps.push(TraceStep {
                axiom: CongAxiom::Alpha,
                path: Vec::new(),
                before: target,
                after: q.clone(),
            });
        }
        steps
    }))
}

/// Checks that `steps` is a valid axiom sequence leading from `p` to `q`.
pub fn replay(p: &Process, q: &Process, steps: &[TraceStep], defs: &Defs, unfold: bool, context: ContextMode) -> bool {
    let mut cur = p.clone();
    for s in steps {
        if s.before != cur {
            return false;
        }
        let ok = match s.axiom {
            CongAxiom::Alpha => alpha_eq(&s.before, &s.after),
            axiom => rewrites(&s.before, defs, unfold, context)
                .into_iter()
                .any(|r| r.axiom == axiom && r.path == s.path && r.result == s.after),
        };
        if !ok {
            return false;
        }
        cur = s.after.clone();
    }
    cur == *q
}

/// A term congruent to the root, with the axiom sequence that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub process: Process,
    pub trace: Vec<TraceStep>,
}

/// Terms reachable from `p` by at most `depth` axiom applications, deduplicated up to alpha.
/// `opts.weight_bound` caps term weight when set; the step budget is ignored.
pub fn witness_set(p: &Process, defs: &Defs, depth: usize, opts: &BruteOptions) -> Vec<Witness> {
    let bound = opts.weight_bound.unwrap_or(usize::MAX);
    let mut search = Search::new(alpha_canon(p), bound, true);
    search.max_depth = Some(depth);
    let unlimited = BruteOptions {
        step_budget: usize::MAX,
        ..*opts
    };
    search.run(defs, &unlimited, |_| false);
    (0..search.nodes.len())
        .map(|i| Witness {
            process: search.nodes[i].state.clone(),
            trace: search.steps_to(i, p),
        })
        .collect()
}

struct Node {
    state: Process,
    parent: Option<(usize, CongAxiom, Vec<usize>, Process)>,
    depth: usize,
}

struct Search {
    nodes: Vec<Node>,
    seen: HashMap<Process, usize>,
    bound: usize,
    keep_steps: bool,
    max_depth: Option<usize>,
    complete: bool,
}

impl Search {
    fn new(start: Process, bound: usize, keep_steps: bool) -> Search {
        let mut seen = HashMap::new();
        seen.insert(start.clone(), 0);
        Search {
            nodes: vec![Node {
                state: start,
                parent: None,
                depth: 0,
            }],
            seen,
            bound,
            keep_steps,
            max_depth: None,
            complete: false,
        }
    }

    /// Runs until `goal` holds (returning the node), the frontier empties, or the budget ends.
    fn run(&mut self, defs: &Defs, opts: &BruteOptions, goal: impl Fn(&Process) -> bool) -> Option<usize> {
        if goal(&self.nodes[0].state) {
            return Some(0);
        }
        let mut queue = VecDeque::from([0usize]);
        let mut expanded = 0usize;
        while let Some(i) = queue.pop_front() {
            if self.max_depth.is_some_and(|d| self.nodes[i].depth >= d) {
                continue;
            }
            if expanded >= opts.step_budget {
                return None;
            }
            expanded += 1;
            let depth = self.nodes[i].depth + 1;
            for r in rewrites(&self.nodes[i].state, defs, opts.unfold, opts.context) {
                if r.result.weight() > self.bound {
                    continue;
                }
                let state = alpha_canon(&r.result);
                if self.seen.contains_key(&state) {
                    continue;
                }
                let j = self.nodes.len();
                self.seen.insert(state.clone(), j);
                let parent = self.keep_steps.then_some((i, r.axiom, r.path, r.result));
                self.nodes.push(Node { state, parent, depth });
                if goal(&self.nodes[j].state) {
                    return Some(j);
                }
                queue.push_back(j);
            }
        }
        self.complete = true;
        None
    }

    fn steps_to(&self, mut i: usize, start: &Process) -> Vec<TraceStep> {
        let mut rev = Vec::new();
        while let Some((parent, axiom, path, raw)) = &self.nodes[i].parent {
            let state = &self.nodes[i].state;
            if raw != state {
                rev.push(TraceStep {
                    axiom: CongAxiom::Alpha,
                    path: Vec::new(),
                    before: raw.clone(),
                    after: state.clone(),
                });
            }
            rev.push(TraceStep {
                axiom: *axiom,
                path: path.clone(),
                before: self.nodes[*parent].state.clone(),
                after: raw.clone(),
            });
            i = *parent;
        }
        let root = &self.nodes[0].state;
        if start != root {
            rev.push(TraceStep {
                axiom: CongAxiom::Alpha,
                path: Vec::new(),
                before: start.clone(),
                after: root.clone(),
            });
        }
        rev.reverse();
        rev
    }
}
