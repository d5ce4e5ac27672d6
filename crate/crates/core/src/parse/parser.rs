use crate::ast::{Action, Atom, AtomicAction, Formula};
use crate::primitives::{Articulator, Direction};

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParseErrorKind, SourceSpan};

const MAX_DEPTH: usize = 128;

/// Parses a complete formula, desugaring `->`, `\/` and `<a>`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks);
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_action(text: &str) -> Result<Action, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks);
    let a = p.action()?;
    p.expect_eof()?;
    Ok(a)
}

/// Parses a single atom such as `touch(R,L)`.
pub fn parse_atom(text: &str) -> Result<Atom, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks);
    let a = p.atom()?;
    p.expect_eof()?;
    Ok(a)
}

pub(crate) struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
    depth: usize,
}

impl<'t> Parser<'t> {
    pub(crate) fn new(toks: &'t [Token]) -> Self {
        debug_assert!(matches!(toks.last().map(|t| &t.tok), Some(Tok::Eof)));
        Parser { toks, pos: 0, depth: 0 }
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub(crate) fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if !matches!(t.tok, Tok::Eof) {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError {
            kind: ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: t.tok.to_string(),
            },
            span: t.span,
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<SourceSpan, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{}`", tok.text())]))
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<(), ParseError> {
        if matches!(self.peek().tok, Tok::Eof) {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    pub(crate) fn ident(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump().span))
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError { kind: ParseErrorKind::TooDeep, span: self.peek().span });
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let lhs = self.disjunction()?;
        let out = if self.eat(&Tok::Arrow) { Formula::implies(lhs, self.formula()?) } else { lhs };
        self.leave();
        Ok(out)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let out = match &self.peek().tok {
            Tok::Bang => {
                self.bump();
                Formula::not(self.unary()?)
            }
            Tok::LBracket => {
                self.bump();
                let a = self.action()?;
                self.expect(Tok::RBracket)?;
                Formula::boxed(a, self.unary()?)
            }
            Tok::Lt => {
                self.bump();
                let a = self.action()?;
                self.expect(Tok::Gt)?;
                Formula::diamond(a, self.unary()?)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                f
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Formula::Top
            }
            Tok::Ident(s) if matches!(s.as_str(), "dir" | "at" | "touch" | "cfg" | "orient") => {
                Formula::Atom(self.atom()?)
            }
            _ => {
                return Err(self
                    .error(&["`!`", "`[`", "`<`", "`(`", "`true`", "`dir`", "`at`", "`touch`", "`cfg`", "`orient`"]))
            }
        };
        self.leave();
        Ok(out)
    }

    fn articulator(&mut self) -> Result<Articulator, ParseError> {
        let (name, span) = self.ident("articulator")?;
        name.parse().map_err(|_| ParseError { kind: ParseErrorKind::UnknownArticulator(name), span })
    }

    fn direction(&mut self) -> Result<Direction, ParseError> {
        let (name, span) = self.ident("direction")?;
        name.parse().map_err(|_| ParseError { kind: ParseErrorKind::UnknownDirection(name), span })
    }

    fn distinct(a: Articulator, b: Articulator, span: SourceSpan) -> Result<(), ParseError> {
        if a == b {
            Err(ParseError { kind: ParseErrorKind::SameArticulator(a), span })
        } else {
            Ok(())
        }
    }

    pub(crate) fn atom(&mut self) -> Result<Atom, ParseError> {
        let (head, span) = self.ident("atom")?;
        let atom = match head.as_str() {
            "dir" => {
                self.expect(Tok::LParen)?;
                let first = self.articulator()?;
                self.expect(Tok::Comma)?;
                let second = self.articulator()?;
                self.expect(Tok::Comma)?;
                let dir = self.direction()?;
                Self::distinct(first, second, span)?;
                Atom::RelDir { first, dir, second }
            }
            "at" => {
                self.expect(Tok::LParen)?;
                let a = self.articulator()?;
                self.expect(Tok::Comma)?;
                let (place, _) = self.ident("place name")?;
                Atom::At(a, place.into())
            }
            "touch" => {
                self.expect(Tok::LParen)?;
                let a = self.articulator()?;
                self.expect(Tok::Comma)?;
                let b = self.articulator()?;
                Self::distinct(a, b, span)?;
                Atom::Touch(a, b)
            }
            "cfg" => {
                self.expect(Tok::LParen)?;
                let a = self.articulator()?;
                self.expect(Tok::Comma)?;
                let (label, _) = self.ident("configuration label")?;
                Atom::Config(a, label.as_str().into())
            }
            "orient" => {
                self.expect(Tok::LParen)?;
                let a = self.articulator()?;
                self.expect(Tok::Comma)?;
                Atom::Orient(a, self.direction()?)
            }
            _ => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax {
                        expected: ["dir", "at", "touch", "cfg", "orient"].map(|s| format!("`{s}`")).to_vec(),
                        found: format!("`{head}`"),
                    },
                    span,
                })
            }
        };
        self.expect(Tok::RParen)?;
        Ok(atom)
    }

    pub(crate) fn action(&mut self) -> Result<Action, ParseError> {
        self.enter()?;
        let mut lhs = self.par()?;
        while self.eat(&Tok::Semi) {
            lhs = Action::seq(lhs, self.par()?);
        }
        self.leave();
        Ok(lhs)
    }

    fn par(&mut self) -> Result<Action, ParseError> {
        let mut lhs = self.choice()?;
        while self.eat(&Tok::Amp) {
            lhs = Action::concurrent(lhs, self.choice()?);
        }
        Ok(lhs)
    }

    fn choice(&mut self) -> Result<Action, ParseError> {
        let mut lhs = self.star()?;
        while self.eat(&Tok::Pipe) {
            lhs = Action::choice(lhs, self.star()?);
        }
        Ok(lhs)
    }

    fn star(&mut self) -> Result<Action, ParseError> {
        let prim = self.prim()?;
        Ok(if self.eat(&Tok::Star) { Action::star(prim) } else { prim })
    }

    fn prim(&mut self) -> Result<Action, ParseError> {
        match &self.peek().tok {
            Tok::LParen => {
                self.bump();
                let a = self.action()?;
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            Tok::Ident(s) if s == "move" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.articulator()?;
                self.expect(Tok::Comma)?;
                let d = self.direction()?;
                self.expect(Tok::RParen)?;
                Ok(Action::atomic(AtomicAction::Move(a, d)))
            }
            Tok::Ident(s) if s == "thrill" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.articulator()?;
                self.expect(Tok::RParen)?;
                Ok(Action::atomic(AtomicAction::Thrill(a)))
            }
            _ => Err(self.error(&["`move`", "`thrill`", "`(`"])),
        }
    }
}
