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

//! Reversible CCS with distributed memories.
//!
//! Each thread `m |> P` carries a stack of events recording how to undo its past steps.  A
//! parallel composition inside a thread is split by the distribution rule
//! `m |> (P | Q) == (Y.m |> P) | (Y.m |> Q)`, where `Y` is the fork event.  Two variants of the
//! semantics differ in how that rule is used: eagerly as a congruence between steps, or fused
//! into the transition rules.

mod check;
mod step;
pub(crate) use check::initial;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::term::{support, Action, Label, Name, Process};

pub use check::{
    check_variants, coherence, compare_variants, id_check, loop_check, loop_check_roots, rccs_lts, LoopFailure,
    LoopOptions, LoopReport, VariantFinding, VariantVerdict, VariantsSummary,
};
pub use step::{bwd_transitions, distribute, fold, fwd_transitions, normalize, r_alpha_canon, state_key};

/// Event identifiers; `0` is never handed out.
pub type EventId = u32;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Event {
    /// The thread was split by the distribution rule.
    Fork,
    /// A fired prefix `label`.  `alternatives` is the sum the prefix was chosen from, with `0` in
    /// place of the fired branch, and `slot` is the path of that branch inside it.
    Act {
        id: EventId,
        label: Action,
        alternatives: Process,
        slot: Vec<usize>,
    },
}

impl Event {
    pub fn id(&self) -> Option<EventId> {
        match self {
            Event::Fork => None,
            Event::Act { id, .. } => Some(*id),
        }
    }

    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        if let Event::Act {
            label, alternatives, ..
        } = self
        {
            out.insert(label.name.clone());
            out.extend(support(alternatives));
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Fork => f.write_str("Y"),
            Event::Act {
                id,
                label,
                alternatives,
                ..
            } if alternatives.is_nil() => write!(f, "{id}:{label}"),
            Event::Act {
                id,
                label,
                alternatives,
                ..
            } => write!(f, "{id}:{label}{{{alternatives}}}"),
        }
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A memory stack; the last element is the top.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Memory(Vec<Event>);

impl Memory {
    pub fn new() -> Memory {
        Memory(Vec::new())
    }

    /// Builds a memory from its events, bottom first.
    pub fn from_events(events: Vec<Event>) -> Memory {
        Memory(events)
    }

    /// Events, bottom first.
    pub fn events(&self) -> &[Event] {
        &self.0
    }

    pub fn top(&self) -> Option<&Event> {
        self.0.last()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&self, e: Event) -> Memory {
        let mut events = self.0.clone();
        events.push(e);
        Memory(events)
    }

    pub fn fork(&self) -> Memory {
        self.push(Event::Fork)
    }

    /// The memory without its top event.
    pub fn pop(&self) -> Option<(Event, Memory)> {
        let (top, rest) = self.0.split_last()?;
        Some((top.clone(), Memory(rest.to_vec())))
    }

    /// Names mentioned by recorded labels and alternatives.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for e in &self.0 {
            e.collect_names(&mut out);
        }
        out
    }

    pub fn contains_id(&self, id: EventId) -> bool {
        self.0.iter().any(|e| e.id() == Some(id))
    }

    fn map_events(&self, f: impl FnMut(&Event) -> Event) -> Memory {
        Memory(self.0.iter().map(f).collect())
    }
}

impl fmt::Display for Memory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, e) in self.0.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for Memory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A reversible process: threads composed in parallel under restrictions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RProcess {
    Thread(Memory, Process),
    Par(Box<RProcess>, Box<RProcess>),
    Res(Box<RProcess>, Name),
}

impl RProcess {
    /// `<> |> p`.
    pub fn lift(p: &Process) -> RProcess {
        RProcess::Thread(Memory::new(), p.clone())
    }

    pub fn thread(memory: Memory, code: Process) -> RProcess {
        RProcess::Thread(memory, code)
    }

    pub fn par(left: RProcess, right: RProcess) -> RProcess {
        RProcess::Par(Box::new(left), Box::new(right))
    }

    pub fn res(body: RProcess, name: Name) -> RProcess {
        RProcess::Res(Box::new(body), name)
    }

    /// Threads in left-to-right order.
    pub fn threads(&self) -> Vec<(&Memory, &Process)> {
        let mut out = Vec::new();
        self.walk_threads(&mut |m, p| out.push((m, p)));
        out
    }

    fn walk_threads<'a>(&'a self, f: &mut impl FnMut(&'a Memory, &'a Process)) {
        match self {
            RProcess::Thread(m, p) => f(m, p),
            RProcess::Par(l, r) => {
                l.walk_threads(f);
                r.walk_threads(f);
            }
            RProcess::Res(r, _) => r.walk_threads(f),
        }
    }

    /// Largest event id in any memory, `0` if none.
    pub fn max_id(&self) -> EventId {
        self.threads()
            .iter()
            .flat_map(|(m, _)| m.events().iter().filter_map(Event::id))
            .max()
            .unwrap_or(0)
    }

    /// True when no memory records a fired prefix.
    pub fn is_initial(&self) -> bool {
        self.max_id() == 0
    }

    pub(crate) fn map_memories(&self, f: &mut impl FnMut(&Memory) -> Memory) -> RProcess {
        match self {
            RProcess::Thread(m, p) => RProcess::Thread(f(m), p.clone()),
            RProcess::Par(l, r) => {
                let l = l.map_memories(f);
                RProcess::par(l, r.map_memories(f))
            }
            RProcess::Res(r, a) => RProcess::res(r.map_memories(f), a.clone()),
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RProcess::Res(..) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for RProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RProcess::Thread(m, p @ (Process::Sum(_) | Process::Par(..))) => write!(f, "{m} |> ({p})"),
            RProcess::Thread(m, p) => write!(f, "{m} |> {p}"),
            RProcess::Par(l, r) => {
                l.fmt_operand(f)?;
                f.write_str(" | ")?;
                r.fmt_operand(f)
            }
            RProcess::Res(r, a) => {
                r.fmt_operand(f)?;
                write!(f, "\\{a}")
            }
        }
    }
}

impl fmt::Debug for RProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How the distribution rule is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Distribution, restriction lifting and unfolding of active constants are applied eagerly
    /// after every step; a thread whose code is a parallel composition or a restriction is
    /// blocked.
    #[default]
    Congruence,
    /// Splitting happens inside the step rules, only along the path of the fired prefix.
    Rule,
    /// Like `Congruence`, but the normal form is computed on demand before each step and the
    /// successors are left as produced.
    LazyCongruence,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Congruence => "congruence",
            Variant::Rule => "rule",
            Variant::LazyCongruence => "lazy-congruence",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant, Error> {
        match s {
            "congruence" => Ok(Variant::Congruence),
            "rule" => Ok(Variant::Rule),
            "lazy-congruence" => Ok(Variant::LazyCongruence),
            _ => Err(Error::Invalid(format!("unknown variant {s:?}"))),
        }
    }
}

/// One reversible step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RStep {
    pub id: EventId,
    pub label: Label,
    pub target: RProcess,
}

impl Serialize for RProcess {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
