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

//! The rule-based transition system: derivations, their checker, and state-space exploration.

mod lts;
pub(crate) mod sys;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::term::{Label, Process};

pub use lts::{explore, explore_graph, Edge, Lts, Semantics};
pub use sys::{check_derivation, sys_transitions, sys_transitions_flagged};

/// Inference rule names.  `Con` only appears in derivations built modulo congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Com1,
    Com2,
    Syn,
    Act,
    Sum,
    Rec,
    Res,
    Rel,
    Con,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Com1,
        Rule::Com2,
        Rule::Syn,
        Rule::Act,
        Rule::Sum,
        Rule::Rec,
        Rule::Res,
        Rule::Rel,
        Rule::Con,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Com1 => "com1",
            Rule::Com2 => "com2",
            Rule::Syn => "syn",
            Rule::Act => "act",
            Rule::Sum => "sum",
            Rule::Rec => "rec",
            Rule::Res => "res",
            Rule::Rel => "rel",
            Rule::Con => "con",
        }
    }

    /// Number of transition premises.
    pub fn arity(self) -> usize {
        match self {
            Rule::Act => 0,
            Rule::Syn => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule> {
        Rule::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown rule `{s}`")))
    }
}

impl Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A transition together with the derivation that proves it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Transition {
    pub source: Process,
    pub label: Label,
    pub target: Process,
    pub rule: Rule,
    pub premises: Vec<Transition>,
}

impl Transition {
    pub fn axiom(source: Process, label: Label, target: Process) -> Transition {
        Transition {
            source,
            label,
            target,
            rule: Rule::Act,
            premises: Vec::new(),
        }
    }

    /// Height of the derivation tree.
    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Transition::height).max().unwrap_or(0)
    }

    /// Rule at the root, looking through a `con` wrapper.
    pub fn effective_rule(&self) -> Rule {
        match (self.rule, self.premises.first()) {
            (Rule::Con, Some(p)) => p.rule,
            (r, _) => r,
        }
    }

    /// Whether any node of the derivation uses `rule`.
    pub fn uses(&self, rule: Rule) -> bool {
        self.rule == rule || self.premises.iter().any(|p| p.uses(rule))
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} --{}--> {}  [{}]",
            self.source, self.label, self.target, self.rule
        )
    }
}
