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

//! Recursive-descent parser for the term grammar.
//!
//! ```text
//! sum     := par ("+" par)*
//! par     := prefix ("|" prefix)*
//! prefix  := ["'"] name ["[" key "]"] "." prefix | postfix
//! postfix := atom ("\" name | "[" name "<-" name ("," name "<-" name)* "]")*
//! atom    := "0" | CONST | "(" sum ")"
//! ```
//!
//! Keys (`a[3].P`) are only accepted by the keyed entry point.

use crate::error::{Error, Result};
use crate::term::name::{Action, ConstId, Name};
use crate::term::process::{Process, Relabeling};

/// Parse tree shared by the plain and the keyed front ends.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Syn {
    Nil,
    Prefix(Action, Option<u32>, Box<Syn>),
    Sum(Vec<Syn>),
    Par(Box<Syn>, Box<Syn>),
    Restrict(Box<Syn>, Name),
    Relabel(Box<Syn>, Relabeling),
    Const(ConstId),
}

impl Syn {
    pub(crate) fn into_process(self) -> Result<Process> {
        Ok(match self {
            Syn::Nil => Process::Nil,
            Syn::Prefix(_, Some(_), _) => return Err(Error::UnexpectedKey),
            Syn::Prefix(a, None, p) => Process::prefix(a, p.into_process()?),
            Syn::Sum(ps) => Process::sum(ps.into_iter().map(Syn::into_process).collect::<Result<_>>()?),
            Syn::Par(p, q) => Process::par(p.into_process()?, q.into_process()?),
            Syn::Restrict(p, n) => Process::restrict(p.into_process()?, n),
            Syn::Relabel(p, s) => Process::relabel(p.into_process()?, s),
            Syn::Const(c) => Process::Const(c),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(u64),
    Name(String),
    Const(String),
    Apos,
    Dot,
    Bar,
    Plus,
    Backslash,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Arrow,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(n) => format!("`{n}`"),
            Tok::Name(s) | Tok::Const(s) => format!("`{s}`"),
            Tok::Apos => "`'`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Arrow => "`<-`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            column += n;
        };
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(1, &mut i);
                continue;
            }
            '\'' => {
                advance(1, &mut i);
                Tok::Apos
            }
            '.' => {
                advance(1, &mut i);
                Tok::Dot
            }
            '|' => {
                advance(1, &mut i);
                Tok::Bar
            }
            '+' => {
                advance(1, &mut i);
                Tok::Plus
            }
            '\\' => {
                advance(1, &mut i);
                Tok::Backslash
            }
            '[' => {
                advance(1, &mut i);
                Tok::LBracket
            }
            ']' => {
                advance(1, &mut i);
                Tok::RBracket
            }
            '(' => {
                advance(1, &mut i);
                Tok::LParen
            }
            ')' => {
                advance(1, &mut i);
                Tok::RParen
            }
            ',' => {
                advance(1, &mut i);
                Tok::Comma
            }
            '<' if chars.get(i + 1) == Some(&'-') => {
                advance(2, &mut i);
                Tok::Arrow
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(1, &mut i);
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse().map_err(|_| Error::Syntax {
                    line: start_line,
                    column: start_col,
                    message: format!("number `{digits}` out of range"),
                })?;
                Tok::Number(n)
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    advance(1, &mut i);
                }
                let word: String = chars[start..i].iter().collect();
                if c.is_ascii_uppercase() {
                    Tok::Const(word)
                } else {
                    Tok::Name(word)
                }
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Syntax {
            line: s.line,
            column: s.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    fn name(&mut self) -> Result<Name> {
        match self.peek().clone() {
            Tok::Name(s) => {
                self.bump();
                Name::new(&s)
            }
            other => self.error(format!("expected a name, found {}", other.describe())),
        }
    }

    fn sum(&mut self) -> Result<Syn> {
        let mut parts = vec![self.par()?];
        while *self.peek() == Tok::Plus {
            self.bump();
            parts.push(self.par()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Syn::Sum(parts)
        })
    }

    fn par(&mut self) -> Result<Syn> {
        let mut left = self.prefix()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let right = self.prefix()?;
            left = Syn::Par(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn prefix(&mut self) -> Result<Syn> {
        let co = match self.peek() {
            Tok::Apos => {
                self.bump();
                true
            }
            Tok::Name(_) => false,
            _ => return self.postfix(),
        };
        let name = self.name()?;
        let mut key = None;
        if *self.peek() == Tok::LBracket {
            if let Tok::Number(k) = *self.peek_at(1) {
                self.bump();
                self.bump();
                if k == 0 || k > u32::MAX as u64 {
                    return self.error("keys are positive 32-bit integers");
                }
                key = Some(k as u32);
                self.expect(Tok::RBracket)?;
            }
        }
        self.expect(Tok::Dot)?;
        let body = self.prefix()?;
        Ok(Syn::Prefix(Action { name, co }, key, Box::new(body)))
    }

    fn postfix(&mut self) -> Result<Syn> {
        let mut p = self.atom()?;
        loop {
            match self.peek() {
                Tok::Backslash => {
                    self.bump();
                    let n = self.name()?;
                    p = Syn::Restrict(Box::new(p), n);
                }
                Tok::LBracket => {
                    self.bump();
                    let mut pairs = Vec::new();
                    loop {
                        let from = self.name()?;
                        self.expect(Tok::Arrow)?;
                        let to = self.name()?;
                        pairs.push((from, to));
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
                    self.expect(Tok::RBracket)?;
                    let s = Relabeling::new(pairs).map_err(|e| Error::Syntax {
                        line,
                        column,
                        message: e.to_string(),
                    })?;
                    p = Syn::Relabel(Box::new(p), s);
                }
                _ => return Ok(p),
            }
        }
    }

    fn atom(&mut self) -> Result<Syn> {
        match self.peek().clone() {
            Tok::Number(0) => {
                self.bump();
                Ok(Syn::Nil)
            }
            Tok::Const(c) => {
                self.bump();
                Ok(Syn::Const(ConstId::new(&c)?))
            }
            Tok::LParen => {
                self.bump();
                let p = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            other => self.error(format!("expected a process, found {}", other.describe())),
        }
    }
}

pub(crate) fn parse_syn(text: &str) -> Result<Syn> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let p = parser.sum()?;
    if *parser.peek() != Tok::Eof {
        return parser.error(format!("unexpected {}", parser.peek().describe()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Process {
        parse_syn(text).unwrap().into_process().unwrap()
    }

    fn n(s: &'static str) -> Name {
        Name::from_static(s)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(p("0"), Process::Nil);
        let a0 = Process::prefix(Action::name(n("a")), Process::Nil);
        let ca0 = Process::prefix(Action::coname(n("a")), Process::Nil);
        assert_eq!(p("a.0 | 'a.0"), Process::par(a0.clone(), ca0));
        let b0 = Process::prefix(Action::name(n("b")), Process::Nil);
        assert_eq!(
            p("(a.0 + b.0)\\a"),
            Process::restrict(Process::sum(vec![a0, b0]), n("a"))
        );
    }

    #[test]
    fn precedence() {
        // `\` binds tighter than `.`, `.` tighter than `|`, `|` tighter than `+`.
        assert_eq!(p("a.0\\a").to_string(), "a.0\\a");
        assert!(matches!(p("a.0\\a"), Process::Prefix(..)));
        assert!(matches!(p("a.0 | b.0 + c.0"), Process::Sum(ref v) if v.len() == 2));
        assert!(matches!(p("a.0 + b.0 + c.0"), Process::Sum(ref v) if v.len() == 3));
        assert!(matches!(p("(a.0 + b.0) + c.0"), Process::Sum(ref v) if v.len() == 2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_syn("a.0 |\n  | b.0") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_syn("a.").is_err());
        assert!(parse_syn("a").is_err());
        assert!(parse_syn("0 0").is_err());
        assert!(parse_syn("(0").is_err());
        assert!(parse_syn("0[a<-b, a<-c]").is_err());
        assert!(parse_syn("tau.0").is_err());
    }

    #[test]
    fn keys_only_in_keyed_mode() {
        let s = parse_syn("a[1].b.0").unwrap();
        assert!(matches!(s, Syn::Prefix(_, Some(1), _)));
        assert_eq!(s.into_process(), Err(Error::UnexpectedKey));
        assert!(parse_syn("a[0].0").is_err());
    }
}
