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

//! Transition menus over the four calculi, the interactive stepper, and transcript replay.

use std::fmt;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::ccs::sys_transitions;
use crate::ccsk::{k_bwd, k_fwd, KProcess};
use crate::cli::{Calculus, CliError};
use crate::congruence::{spec_transitions_with, ContextMode, SpecOptions};
use crate::error::{Error, Result};
use crate::rccs::{bwd_transitions, fwd_transitions, RProcess, Variant};
use crate::term::{parse, Defs, Label, Process};

/// How states of one calculus are stepped.
#[derive(Debug, Clone)]
pub struct Machine {
    pub calculus: Calculus,
    pub defs: Defs,
    pub unfold: usize,
    pub keep_rel: bool,
    pub context: ContextMode,
    pub variant: Variant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum State {
    Ccs(Process),
    Rccs(RProcess),
    Ccsk(KProcess),
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Ccs(p) => p.fmt(f),
            State::Rccs(r) => r.fmt(f),
            State::Ccsk(k) => k.fmt(f),
        }
    }
}

/// One enabled transition.  `tag` is the event id (RCCS) or key (CCSK).
#[derive(Debug, Clone)]
pub struct Move {
    pub forward: bool,
    pub label: Label,
    pub tag: Option<u32>,
    pub rule: String,
    pub target: State,
}

#[derive(Serialize)]
struct MoveLine<'a> {
    index: usize,
    direction: &'static str,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<u32>,
    rule: &'a str,
    target: String,
}

impl Move {
    fn direction(&self) -> &'static str {
        if self.forward {
            "fwd"
        } else {
            "bwd"
        }
    }

    /// One JSON object describing the move, numbered from 1.
    pub fn to_json(&self, index: usize) -> String {
        let line = MoveLine {
            index,
            direction: self.direction(),
            label: self.label.to_string(),
            id: self.tag,
            rule: &self.rule,
            target: self.target.to_string(),
        };
        serde_json::to_string(&line).expect("serializable")
    }

    fn render(&self, index: usize, style: Style) -> String {
        let tag = match self.tag {
            Some(t) => format!(" #{t}"),
            None => String::new(),
        };
        let label = if self.forward {
            style.fwd(&self.label.to_string())
        } else {
            style.bwd(&self.label.to_string())
        };
        format!(
            "  [{index}] {} {label}{tag} ({}) -> {}",
            self.direction(),
            self.rule,
            self.target
        )
    }
}

fn sync_rule(label: &Label) -> String {
    match label {
        Label::Tau => "syn".to_string(),
        Label::Act(_) => "act".to_string(),
    }
}

impl Machine {
    /// Parses the start state.  RCCS terms are lifted to a thread with empty memory.
    pub fn start(&self, text: &str) -> Result<State> {
        Ok(match self.calculus {
            Calculus::CcsSys | Calculus::CcsSpec => State::Ccs(parse(text, &self.defs)?),
            Calculus::Rccs => {
                let p = parse(text, &self.defs)?;
                State::Rccs(crate::rccs::initial(&p, &self.defs, self.variant, self.unfold)?)
            }
            Calculus::Ccsk => State::Ccsk(KProcess::parse_with(text, &self.defs)?),
        })
    }

    /// Forward transitions first, then backward ones.
    pub fn moves(&self, state: &State) -> Result<Vec<Move>> {
        let mut out = Vec::new();
        match (self.calculus, state) {
            (Calculus::CcsSys, State::Ccs(p)) => {
                for t in sys_transitions(p, &self.defs, self.unfold)? {
                    out.push(Move {
                        forward: true,
                        rule: t.rule.as_str().to_string(),
                        label: t.label,
                        tag: None,
                        target: State::Ccs(t.target),
                    });
                }
            }
            (Calculus::CcsSpec, State::Ccs(p)) => {
                let opts = SpecOptions {
                    unfold: self.unfold,
                    keep_rel: self.keep_rel,
                    context: self.context,
                };
                for t in spec_transitions_with(p, &self.defs, &opts)?.0 {
                    out.push(Move {
                        forward: true,
                        rule: t.effective_rule().as_str().to_string(),
                        label: t.label,
                        tag: None,
                        target: State::Ccs(t.target),
                    });
                }
            }
            (Calculus::Rccs, State::Rccs(r)) => {
                for (forward, steps) in [
                    (true, fwd_transitions(r, &self.defs, self.variant, self.unfold)?),
                    (false, bwd_transitions(r, &self.defs, self.variant, self.unfold)?),
                ] {
                    for t in steps {
                        out.push(Move {
                            forward,
                            rule: sync_rule(&t.label),
                            label: t.label,
                            tag: Some(t.id),
                            target: State::Rccs(t.target),
                        });
                    }
                }
            }
            (Calculus::Ccsk, State::Ccsk(k)) => {
                for (forward, steps) in [(true, k_fwd(k, &self.defs, self.unfold)?), (false, k_bwd(k))] {
                    for t in steps {
                        out.push(Move {
                            forward,
                            rule: sync_rule(&t.label),
                            label: t.label,
                            tag: Some(t.key),
                            target: State::Ccsk(t.target),
                        });
                    }
                }
            }
            _ => return Err(Error::Invalid("state does not belong to the calculus".into())),
        }
        Ok(out)
    }

    fn reversible(&self) -> bool {
        matches!(self.calculus, Calculus::Rccs | Calculus::Ccsk)
    }

    fn header(&self, term: &str) -> Vec<(&'static str, String)> {
        let mut h = vec![("calculus", self.calculus.as_str().to_string())];
        match self.calculus {
            Calculus::CcsSpec => {
                h.push(("keep-rel", self.keep_rel.to_string()));
                h.push(("context", self.context.to_string()));
            }
            Calculus::Rccs => h.push(("variant", self.variant.to_string())),
            _ => {}
        }
        h.push(("unfold", self.unfold.to_string()));
        h.push(("term", term.to_string()));
        h
    }

    /// Rebuilds a machine from a transcript header; definitions come from the caller.
    fn from_header(header: &[(String, String)], defs: Defs) -> Result<(Machine, String)> {
        let get = |k: &str| header.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
        let bad = |what: &str| Error::Invalid(format!("transcript header: bad or missing `{what}`"));
        let calculus = get("calculus")
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| bad("calculus"))?;
        let machine = Machine {
            calculus,
            defs,
            unfold: get("unfold")
                .and_then(|u| u.parse().ok())
                .ok_or_else(|| bad("unfold"))?,
            keep_rel: get("keep-rel").map_or(Ok(false), |v| v.parse().map_err(|_| bad("keep-rel")))?,
            context: get("context").map_or(Ok(ContextMode::All), |v| v.parse())?,
            variant: get("variant").map_or(Ok(Variant::default()), |v| v.parse())?,
        };
        let term = get("term").ok_or_else(|| bad("term"))?.to_string();
        Ok((machine, term))
    }
}

/// ANSI styling for the stepper, or none.
#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn paint(self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn state(self, text: &str) -> String {
        self.paint("1;36", text)
    }

    fn fwd(self, text: &str) -> String {
        self.paint("32", text)
    }

    fn bwd(self, text: &str) -> String {
        self.paint("33", text)
    }

    fn error(self, text: &str) -> String {
        self.paint("31", text)
    }
}

enum Outcome {
    Moved,
    Quit,
    Help,
    Invalid(String),
}

/// A stepping session: the current state and, for the irreversible calculi, the states visited.
struct Session<'m> {
    machine: &'m Machine,
    history: Vec<State>,
}

impl<'m> Session<'m> {
    fn current(&self) -> &State {
        self.history.last().expect("nonempty history")
    }

    fn apply(&mut self, command: &str, moves: &[Move]) -> Outcome {
        let words: Vec<&str> = command.split_whitespace().collect();
        match words.as_slice() {
            ["q"] | ["quit"] => Outcome::Quit,
            ["h"] | ["help"] | ["?"] => Outcome::Help,
            ["u"] => self.undo(None, moves),
            [n] => match n.parse::<usize>() {
                Ok(i) if (1..=moves.len()).contains(&i) => {
                    self.advance(moves[i - 1].target.clone());
                    Outcome::Moved
                }
                _ => Outcome::Invalid(format!("no transition `{n}`: choose 1 to {}", moves.len())),
            },
            ["u", n] => match n.parse::<u32>() {
                Ok(n) => self.undo(Some(n), moves),
                Err(_) => Outcome::Invalid(format!("`u {n}`: expected a number")),
            },
            _ => Outcome::Invalid(format!("unknown command `{command}`")),
        }
    }

    fn advance(&mut self, next: State) {
        if self.machine.reversible() {
            *self.history.last_mut().expect("nonempty history") = next;
        } else {
            self.history.push(next);
        }
    }

    /// Reversible calculi undo the event with id `n` (default: the newest undoable one); the others
    /// rewind `n` steps (default 1) of the session.
    fn undo(&mut self, n: Option<u32>, moves: &[Move]) -> Outcome {
        if self.machine.reversible() {
            let mut back = moves.iter().filter(|m| !m.forward);
            let chosen = match n {
                Some(n) => back.find(|m| m.tag == Some(n)),
                None => back.max_by_key(|m| m.tag),
            };
            match chosen {
                Some(m) => {
                    self.advance(m.target.clone());
                    Outcome::Moved
                }
                None => Outcome::Invalid(match n {
                    Some(n) => format!("event {n} cannot be undone here"),
                    None => "nothing to undo".to_string(),
                }),
            }
        } else {
            let n = n.unwrap_or(1) as usize;
            if n == 0 || n >= self.history.len() {
                return Outcome::Invalid(format!("cannot rewind {n} steps from step {}", self.history.len() - 1));
            }
            self.history.truncate(self.history.len() - n);
            Outcome::Moved
        }
    }
}

const HELP: &str = "commands: N take transition N, u [N] undo (event N, or N steps for CCS), q quit";

/// Prints the enabled transitions of `term`, as text or JSON lines.
pub fn list(machine: &Machine, term: &str, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let state = machine.start(term)?;
    let moves = machine.moves(&state)?;
    if json {
        for (i, m) in moves.iter().enumerate() {
            writeln!(out, "{}", m.to_json(i + 1))?;
        }
        return Ok(());
    }
    writeln!(out, "state: {state}")?;
    if moves.is_empty() {
        writeln!(out, "no transitions")?;
    }
    for (i, m) in moves.iter().enumerate() {
        writeln!(out, "{}", m.render(i + 1, Style { color: false }))?;
    }
    Ok(())
}

/// Runs the interactive stepper until `q` or end of input.  Accepted commands and the states
/// they lead to are appended to `transcript`.
pub fn interactive(
    machine: &Machine,
    term: &str,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    style: Style,
    mut transcript: Option<&mut dyn Write>,
) -> Result<(), CliError> {
    let mut session = Session {
        machine,
        history: vec![machine.start(term)?],
    };
    if let Some(t) = transcript.as_deref_mut() {
        for (k, v) in machine.header(term) {
            writeln!(t, "{k}: {v}")?;
        }
        writeln!(t, "state: {}", session.current())?;
    }
    writeln!(out, "{HELP}")?;
    let mut line = String::new();
    loop {
        let moves = machine.moves(session.current())?;
        writeln!(out, "{} {}", style.state("state:"), session.current())?;
        if moves.is_empty() {
            writeln!(out, "no transitions")?;
        }
        for (i, m) in moves.iter().enumerate() {
            writeln!(out, "{}", m.render(i + 1, style))?;
        }
        loop {
            write!(out, "> ")?;
            out.flush()?;
            line.clear();
            if input.read_line(&mut line)? == 0 {
                writeln!(out)?;
                return Ok(());
            }
            let command = line.trim();
            if command.is_empty() {
                continue;
            }
            match session.apply(command, &moves) {
                Outcome::Moved => {
                    if let Some(t) = transcript.as_deref_mut() {
                        writeln!(t, "> {command}")?;
                        writeln!(t, "state: {}", session.current())?;
                    }
                    break;
                }
                Outcome::Quit => {
                    if let Some(t) = transcript.as_deref_mut() {
                        writeln!(t, "> q")?;
                    }
                    return Ok(());
                }
                Outcome::Help => writeln!(out, "{HELP}")?,
                Outcome::Invalid(msg) => writeln!(out, "{}", style.error(&msg))?,
            }
        }
    }
}

/// Re-runs a transcript and checks that every recorded state is reproduced.  Returns whether it
/// was.
pub fn replay(text: &str, defs: Defs, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut header = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let mut first_state = None;
    for (n, l) in lines.by_ref() {
        match l.split_once(": ") {
            Some(("state", s)) => {
                first_state = Some((n, s.to_string()));
                break;
            }
            Some((k, v)) => header.push((k.to_string(), v.to_string())),
            None => return Err(Error::Invalid(format!("transcript line {}: expected `key: value`", n + 1)).into()),
        }
    }
    let (machine, term) = Machine::from_header(&header, defs)?;
    let mut session = Session {
        machine: &machine,
        history: vec![machine.start(&term)?],
    };
    let mut expected = first_state;
    let mut commands = 0;
    loop {
        if let Some((n, s)) = expected.take() {
            let now = session.current().to_string();
            if now != s {
                writeln!(out, "line {}: expected state {s}, got {now}", n + 1)?;
                return Ok(false);
            }
            writeln!(out, "state: {now}")?;
        }
        let Some((n, l)) = lines.next() else { break };
        let Some(command) = l.strip_prefix("> ") else {
            return Err(Error::Invalid(format!("transcript line {}: expected `> command`", n + 1)).into());
        };
        commands += 1;
        let moves = machine.moves(session.current())?;
        writeln!(out, "> {command}")?;
        match session.apply(command, &moves) {
            Outcome::Moved => {}
            Outcome::Quit => break,
            Outcome::Help => continue,
            Outcome::Invalid(msg) => {
                writeln!(out, "line {}: {msg}", n + 1)?;
                return Ok(false);
            }
        }
        match lines.next() {
            Some((n, l)) => match l.strip_prefix("state: ") {
                Some(s) => expected = Some((n, s.to_string())),
                None => return Err(Error::Invalid(format!("transcript line {}: expected `state: ...`", n + 1)).into()),
            },
            None => break,
        }
    }
    writeln!(out, "replayed {commands} commands")?;
    Ok(true)
}
