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

//! Names, actions, labels and constant identifiers.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A channel name such as `a`.
///
/// User-facing names match `[a-z][a-zA-Z0-9_]*`, except the reserved word `tau`.  The congruence engine additionally uses
/// placeholder names (`%3`) that can never clash with parsed names; they never escape a public
/// operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(text: &str) -> Result<Name> {
        if is_name(text) {
            Ok(Name(Arc::from(text)))
        } else {
            Err(Error::InvalidName(text.to_string()))
        }
    }

    /// Panics on invalid input; for literals in tests and examples.
    pub fn from_static(text: &'static str) -> Name {
        Name::new(text).expect("valid name literal")
    }

    pub(crate) fn placeholder(index: usize) -> Name {
        Name(Arc::from(format!("%{index}")))
    }

    pub(crate) fn temp(index: usize) -> Name {
        Name(Arc::from(format!("%t{index}")))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_placeholder(&self) -> bool {
        self.0.starts_with('%')
    }
}

impl std::str::FromStr for Name {
    type Err = Error;

    fn from_str(text: &str) -> Result<Name> {
        Name::new(text)
    }
}

pub(crate) fn is_name(text: &str) -> bool {
    let mut chars = text.chars();
    text != "tau"
        && matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Identifier of a process constant (`A`, `Buf2`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstId(Arc<str>);

impl ConstId {
    pub fn new(text: &str) -> Result<ConstId> {
        let mut chars = text.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(ConstId(Arc::from(text)))
        } else {
            Err(Error::InvalidConstant(text.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConstId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ConstId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A visible action: a name or a co-name.  Prefixes carry actions, never `tau`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action {
    pub name: Name,
    pub co: bool,
}

impl Action {
    pub fn name(name: Name) -> Action {
        Action { name, co: false }
    }

    pub fn coname(name: Name) -> Action {
        Action { name, co: true }
    }

    pub fn complement(&self) -> Action {
        Action {
            name: self.name.clone(),
            co: !self.co,
        }
    }

    pub fn is_complement_of(&self, other: &Action) -> bool {
        self.name == other.name && self.co != other.co
    }

    /// Parses `a` or `'a`.
    pub fn parse(text: &str) -> Result<Action> {
        match text.strip_prefix('\'') {
            Some(rest) => Ok(Action::coname(Name::new(rest)?)),
            None => Ok(Action::name(Name::new(text)?)),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.co {
            write!(f, "'{}", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A transition label: a visible action or the silent `tau`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Act(Action),
    Tau,
}

impl Label {
    pub fn name(name: Name) -> Label {
        Label::Act(Action::name(name))
    }

    pub fn coname(name: Name) -> Label {
        Label::Act(Action::coname(name))
    }

    /// `None` for `tau`.
    pub fn complement(&self) -> Option<Label> {
        match self {
            Label::Act(a) => Some(Label::Act(a.complement())),
            Label::Tau => None,
        }
    }

    pub fn action(&self) -> Option<&Action> {
        match self {
            Label::Act(a) => Some(a),
            Label::Tau => None,
        }
    }

    /// True when the label mentions `name` (as name or co-name).
    pub fn mentions(&self, name: &Name) -> bool {
        matches!(self, Label::Act(a) if &a.name == name)
    }

    /// Parses `a`, `'a` or `tau`.
    pub fn parse(text: &str) -> Result<Label> {
        if text == "tau" {
            Ok(Label::Tau)
        } else {
            Action::parse(text).map(Label::Act)
        }
    }
}

impl From<Action> for Label {
    fn from(a: Action) -> Label {
        Label::Act(a)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Act(a) => write!(f, "{a}"),
            Label::Tau => f.write_str("tau"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
