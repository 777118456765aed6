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

//! Abstract syntax of CCS processes.

use std::fmt;

use crate::error::{Error, Result};
use crate::term::name::{Action, ConstId, Label, Name};

/// A simultaneous relabeling `[a<-b, c<-d]`: the pair `(a, b)` replaces `a` by `b`.
///
/// Left-hand names are pairwise distinct; pairs are kept sorted by their left-hand name, so two
/// relabelings denoting the same finite map are structurally equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Relabeling(Vec<(Name, Name)>);

impl Relabeling {
    pub fn new(mut pairs: Vec<(Name, Name)>) -> Result<Relabeling> {
        pairs.sort();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateRelabel(w[0].0.to_string()));
            }
        }
        Ok(Relabeling(pairs))
    }

    pub fn pairs(&self) -> &[(Name, Name)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply_name(&self, name: &Name) -> Name {
        match self.0.binary_search_by(|(from, _)| from.cmp(name)) {
            Ok(i) => self.0[i].1.clone(),
            Err(_) => name.clone(),
        }
    }

    pub fn apply_action(&self, action: &Action) -> Action {
        Action {
            name: self.apply_name(&action.name),
            co: action.co,
        }
    }

    /// `tau` is left alone: it mentions no name.
    pub fn apply_label(&self, label: &Label) -> Label {
        match label {
            Label::Act(a) => Label::Act(self.apply_action(a)),
            Label::Tau => Label::Tau,
        }
    }

    /// Renames every name in the relabeling through `f`; `f` must be injective on these names.
    pub(crate) fn map_names(&self, mut f: impl FnMut(&Name) -> Name) -> Relabeling {
        let mut pairs: Vec<_> = self.0.iter().map(|(a, b)| (f(a), f(b))).collect();
        pairs.sort();
        Relabeling(pairs)
    }

    /// Drops `from <- from` pairs.
    pub fn without_identities(&self) -> Relabeling {
        Relabeling(self.0.iter().filter(|(a, b)| a != b).cloned().collect())
    }
}

impl fmt::Display for Relabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (from, to)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{from}<-{to}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Relabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A CCS process term.
///
/// `Sum` always has at least two summands; use [`Process::sum`] to build one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    Nil,
    Prefix(Action, Box<Process>),
    Sum(Vec<Process>),
    Par(Box<Process>, Box<Process>),
    Restrict(Box<Process>, Name),
    Relabel(Box<Process>, Relabeling),
    Const(ConstId),
}

impl Process {
    pub fn prefix(action: Action, body: Process) -> Process {
        Process::Prefix(action, Box::new(body))
    }

    /// The empty sum is `0` and a single summand stands for itself.
    pub fn sum(mut summands: Vec<Process>) -> Process {
        match summands.len() {
            0 => Process::Nil,
            1 => summands.pop().unwrap(),
            _ => Process::Sum(summands),
        }
    }

    pub fn par(left: Process, right: Process) -> Process {
        Process::Par(Box::new(left), Box::new(right))
    }

    pub fn restrict(body: Process, name: Name) -> Process {
        Process::Restrict(Box::new(body), name)
    }

    pub fn relabel(body: Process, relabeling: Relabeling) -> Process {
        Process::Relabel(Box::new(body), relabeling)
    }

    /// Number of AST nodes, not counting `0`.
    pub fn size(&self) -> usize {
        match self {
            Process::Nil => 0,
            Process::Const(_) => 1,
            Process::Prefix(_, p) | Process::Restrict(p, _) | Process::Relabel(p, _) => 1 + p.size(),
            Process::Sum(ps) => 1 + ps.iter().map(Process::size).sum::<usize>(),
            Process::Par(p, q) => 1 + p.size() + q.size(),
        }
    }

    /// Number of AST nodes, `0` included.
    pub fn weight(&self) -> usize {
        match self {
            Process::Nil | Process::Const(_) => 1,
            Process::Prefix(_, p) | Process::Restrict(p, _) | Process::Relabel(p, _) => 1 + p.weight(),
            Process::Sum(ps) => 1 + ps.iter().map(Process::weight).sum::<usize>(),
            Process::Par(p, q) => 1 + p.weight() + q.weight(),
        }
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Process::Nil)
    }

    pub fn mentions_const(&self) -> bool {
        match self {
            Process::Nil => false,
            Process::Const(_) => true,
            Process::Prefix(_, p) | Process::Restrict(p, _) | Process::Relabel(p, _) => p.mentions_const(),
            Process::Sum(ps) => ps.iter().any(Process::mentions_const),
            Process::Par(p, q) => p.mentions_const() || q.mentions_const(),
        }
    }

    /// Calls `f` on every constant identifier occurring in the term.
    pub fn for_each_const(&self, f: &mut impl FnMut(&ConstId)) {
        match self {
            Process::Nil => {}
            Process::Const(c) => f(c),
            Process::Prefix(_, p) | Process::Restrict(p, _) | Process::Relabel(p, _) => p.for_each_const(f),
            Process::Sum(ps) => ps.iter().for_each(|p| p.for_each_const(f)),
            Process::Par(p, q) => {
                p.for_each_const(f);
                q.for_each_const(f);
            }
        }
    }

    /// Direct subterms, in order.
    pub fn children(&self) -> Vec<&Process> {
        match self {
            Process::Nil | Process::Const(_) => vec![],
            Process::Prefix(_, p) | Process::Restrict(p, _) | Process::Relabel(p, _) => vec![p],
            Process::Sum(ps) => ps.iter().collect(),
            Process::Par(p, q) => vec![p, q],
        }
    }

    /// The subterm at `path` (a list of child indices), if any.
    pub fn at_path(&self, path: &[usize]) -> Option<&Process> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.at_path(rest),
        }
    }

    /// Replaces the subterm at `path`; `None` if the path does not exist.
    pub fn replace_at(&self, path: &[usize], new: Process) -> Option<Process> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match self {
            Process::Prefix(a, p) if i == 0 => Process::prefix(a.clone(), p.replace_at(rest, new)?),
            Process::Restrict(p, n) if i == 0 => Process::restrict(p.replace_at(rest, new)?, n.clone()),
            Process::Relabel(p, s) if i == 0 => Process::relabel(p.replace_at(rest, new)?, s.clone()),
            Process::Par(p, q) if i == 0 => Process::par(p.replace_at(rest, new)?, (**q).clone()),
            Process::Par(p, q) if i == 1 => Process::par((**p).clone(), q.replace_at(rest, new)?),
            Process::Sum(ps) if i < ps.len() => {
                let mut ps = ps.clone();
                ps[i] = ps[i].replace_at(rest, new)?;
                Process::Sum(ps)
            }
            _ => return None,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Process::Sum(_) => 0,
            Process::Par(..) => 1,
            Process::Prefix(..) => 2,
            Process::Restrict(..) | Process::Relabel(..) => 3,
            Process::Nil | Process::Const(_) => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Process::Nil => f.write_str("0"),
            Process::Const(c) => write!(f, "{c}"),
            Process::Prefix(a, p) => {
                write!(f, "{a}.")?;
                p.fmt_at(f, 2)
            }
            Process::Sum(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    p.fmt_at(f, 1)?;
                }
                Ok(())
            }
            Process::Par(p, q) => {
                p.fmt_at(f, 1)?;
                f.write_str(" | ")?;
                q.fmt_at(f, 2)
            }
            Process::Restrict(p, n) => {
                p.fmt_at(f, 3)?;
                write!(f, "\\{n}")
            }
            Process::Relabel(p, s) => {
                p.fmt_at(f, 3)?;
                write!(f, "{s}")
            }
        }
    }
}

/// Pretty-printing is the concrete syntax accepted by the parser; parsing the output yields the
/// same tree.
impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
