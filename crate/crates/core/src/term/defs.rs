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

//! Constant definitions `A = P`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::term::name::{ConstId, Name};
use crate::term::names::{alpha_canon_by, support};
use crate::term::parse::parse_syn;
use crate::term::process::Process;

/// Map from constant identifiers to their bodies.  Bodies may refer to any defined constant,
/// including themselves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Defs {
    bodies: BTreeMap<ConstId, Process>,
}

impl Defs {
    pub fn new() -> Defs {
        Defs::default()
    }

    /// Builds a closed set of definitions from `(identifier, body)` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Defs> {
        let mut defs = Defs::new();
        for (id, body) in pairs {
            let body = parse_syn(body)?.into_process()?;
            defs.insert(ConstId::new(id)?, body)?;
        }
        defs.check_closed()?;
        Ok(defs)
    }

    /// Parses a definitions file: one `CONST = proc` per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Defs> {
        let mut defs = Defs::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let at = |column: usize, message: &str| Error::Syntax {
                line: index + 1,
                column,
                message: message.to_string(),
            };
            let eq = line.find('=').ok_or_else(|| at(1, "expected `CONST = proc`"))?;
            let id = ConstId::new(line[..eq].trim())?;
            let body = parse_syn(&line[eq + 1..])
                .map_err(|e| match e {
                    Error::Syntax { column, message, .. } => at(eq + 1 + column, &message),
                    other => other,
                })?
                .into_process()?;
            defs.insert(id, body)?;
        }
        defs.check_closed()?;
        Ok(defs)
    }

    pub fn insert(&mut self, id: ConstId, body: Process) -> Result<()> {
        if self.bodies.contains_key(&id) {
            return Err(Error::DuplicateDefinition(id.to_string()));
        }
        self.bodies.insert(id, body);
        Ok(())
    }

    pub fn get(&self, id: &ConstId) -> Option<&Process> {
        self.bodies.get(id)
    }

    pub fn body(&self, id: &ConstId) -> Result<&Process> {
        self.get(id).ok_or_else(|| Error::UndefinedConstant(id.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ConstId, &Process)> {
        self.bodies.iter()
    }

    /// Fails on the first constant used in `p` without a definition.
    pub fn check_term(&self, p: &Process) -> Result<()> {
        let mut missing = None;
        p.for_each_const(&mut |c| {
            if missing.is_none() && !self.bodies.contains_key(c) {
                missing = Some(c.to_string());
            }
        });
        missing.map_or(Ok(()), |c| Err(Error::UndefinedConstant(c)))
    }

    /// Every constant reachable from any body is defined.
    pub fn check_closed(&self) -> Result<()> {
        self.bodies.values().try_for_each(|b| self.check_term(b))
    }

    /// Support of `p` together with the support of every constant body reachable from it.
    pub fn deep_support(&self, p: &Process) -> BTreeSet<Name> {
        let mut out = support(p);
        let mut seen = BTreeSet::new();
        let mut todo = Vec::new();
        p.for_each_const(&mut |c| todo.push(c.clone()));
        while let Some(c) = todo.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            if let Some(body) = self.bodies.get(&c) {
                out.extend(support(body));
                body.for_each_const(&mut |d| todo.push(d.clone()));
            }
        }
        out
    }

    /// Replaces, bottom up, every subterm that is an alpha-variant of a constant body by that
    /// constant, and drops relabelings of a constant that touch none of the names its unfolding
    /// can use.  Two terms with the same fold are equal modulo the definitions.
    pub fn fold(&self, p: &Process) -> Process {
        let mut folder = Folder {
            bodies: Vec::new(),
            names: self
                .bodies
                .keys()
                .map(|c| (c, self.deep_support(&Process::Const(c.clone()))))
                .collect(),
        };
        folder.bodies = self.bodies.iter().map(|(c, b)| (c, folder.canon(b))).collect();
        folder.fold(p)
    }
}

struct Folder<'a> {
    bodies: Vec<(&'a ConstId, Process)>,
    names: BTreeMap<&'a ConstId, BTreeSet<Name>>,
}

impl Folder<'_> {
    /// Alpha-canonical form in which a restriction over constants is rigid only when one of
    /// those constants can reach the bound name.
    fn canon(&self, p: &Process) -> Process {
        let rigid = |q: &Process, a: &Name| {
            let mut hit = false;
            q.for_each_const(&mut |c| hit |= self.names.get(c).is_none_or(|n| n.contains(a)));
            hit
        };
        alpha_canon_by(p, &rigid)
    }

    fn fold(&self, p: &Process) -> Process {
        let q = match p {
            Process::Nil | Process::Const(_) => return p.clone(),
            Process::Prefix(a, q) => Process::Prefix(a.clone(), Box::new(self.fold(q))),
            Process::Sum(ps) => Process::Sum(ps.iter().map(|q| self.fold(q)).collect()),
            Process::Par(l, r) => Process::Par(Box::new(self.fold(l)), Box::new(self.fold(r))),
            Process::Restrict(q, a) => Process::Restrict(Box::new(self.fold(q)), a.clone()),
            Process::Relabel(q, s) => match self.fold(q) {
                Process::Const(c)
                    if s.pairs()
                        .iter()
                        .all(|(from, to)| from == to || !self.names.get(&c).is_some_and(|n| n.contains(from))) =>
                {
                    return Process::Const(c)
                }
                q => Process::Relabel(Box::new(q), s.clone()),
            },
        };
        let canon = self.canon(&q);
        self.bodies
            .iter()
            .find(|(_, b)| *b == canon)
            .map_or(q, |(c, _)| Process::Const((*c).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_files() {
        let defs = Defs::parse("# buffer\nA = a.B\nB = 'b.A  # back\n\n").unwrap();
        assert_eq!(defs.iter().count(), 2);
        let a = defs.body(&ConstId::new("A").unwrap()).unwrap();
        assert_eq!(a.to_string(), "a.B");
    }

    #[test]
    fn rejects_open_and_duplicate_definitions() {
        assert_eq!(Defs::parse("A = B").unwrap_err(), Error::UndefinedConstant("B".into()));
        assert!(matches!(
            Defs::parse("A = 0\nA = 0"),
            Err(Error::DuplicateDefinition(_))
        ));
        assert!(matches!(Defs::parse("A = 0\nb = 0"), Err(Error::InvalidConstant(_))));
        match Defs::parse("A = 0\nB = a.(") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deep_support_follows_constants() {
        let defs = Defs::parse("A = a.B\nB = b.A").unwrap();
        let p = parse_syn("c.A").unwrap().into_process().unwrap();
        let names: Vec<_> = defs.deep_support(&p).into_iter().map(|n| n.to_string()).collect();
        assert_eq!(names, ["a", "b", "c"]);
    }

    #[test]
    fn folding_undoes_unfolding() {
        let defs = Defs::parse("A = a.B\nB = b.A\nC = (x.0 | 'x.0)\\x").unwrap();
        let fold = |t: &str| defs.fold(&parse_syn(t).unwrap().into_process().unwrap()).to_string();
        assert_eq!(fold("b.a.b.A"), "B");
        assert_eq!(fold("c.b.A | a.B"), "c.B | A");
        assert_eq!(fold("(y.0 | 'y.0)\\y"), "C");
        assert_eq!(fold("a.0"), "a.0");
        assert_eq!(fold("x.0 | A[x<-y]"), "x.0 | A");
        assert_eq!(fold("A[a<-y]"), "A[a<-y]");
        let defs = Defs::parse("D = (x.D | 'x.0)\\x").unwrap();
        let p = parse_syn("x.(x0.D[x<-x0] | 'x0.0)\\x0")
            .unwrap()
            .into_process()
            .unwrap();
        assert_eq!(defs.fold(&p).to_string(), "x.D");
    }
}
