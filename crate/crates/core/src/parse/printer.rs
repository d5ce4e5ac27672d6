//! Canonical text form. Output re-parses to the same tree and uses only the
//! parentheses the grammar requires.

use std::fmt::{self, Display, Formatter, Write};

use crate::ast::{Action, Atom, AtomicAction, Formula};

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Atom::RelDir { first, dir, second } => write!(f, "dir({first},{second},{dir})"),
            Atom::At(a, p) => write!(f, "at({a},{p})"),
            Atom::Touch(a, b) => write!(f, "touch({a},{b})"),
            Atom::Config(a, c) => write!(f, "cfg({a},{c})"),
            Atom::Orient(a, d) => write!(f, "orient({a},{d})"),
        }
    }
}

impl Display for AtomicAction {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            AtomicAction::Move(a, d) => write!(f, "move({a},{d})"),
            AtomicAction::Thrill(a) => write!(f, "thrill({a})"),
        }
    }
}

// Binding strength: seq < par < choice < star < primitive.
const SEQ: u8 = 0;
const PAR: u8 = 1;
const CHOICE: u8 = 2;
const STAR: u8 = 3;
const PRIM: u8 = 4;

fn action(a: &Action, ctx: u8, out: &mut impl Write) -> fmt::Result {
    let (level, open) = match a {
        Action::Atomic(_) => (PRIM, false),
        Action::Seq(..) => (SEQ, ctx > SEQ),
        Action::Concurrent(..) => (PAR, ctx > PAR),
        Action::Choice(..) => (CHOICE, ctx > CHOICE),
        Action::Star(_) => (STAR, ctx > STAR),
    };
    if open {
        out.write_char('(')?;
    }
    match a {
        Action::Atomic(p) => write!(out, "{p}")?,
        Action::Seq(x, y) => {
            action(x, level, out)?;
            out.write_str("; ")?;
            action(y, level + 1, out)?;
        }
        Action::Concurrent(x, y) => {
            action(x, level, out)?;
            out.write_str(" & ")?;
            action(y, level + 1, out)?;
        }
        Action::Choice(x, y) => {
            action(x, level, out)?;
            out.write_str(" | ")?;
            action(y, level + 1, out)?;
        }
        Action::Star(x) => {
            action(x, PRIM, out)?;
            out.write_char('*')?;
        }
    }
    if open {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for Action {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        action(self, SEQ, f)
    }
}

const CONJ: u8 = 0;
const UNARY: u8 = 1;

fn formula(phi: &Formula, ctx: u8, out: &mut impl Write) -> fmt::Result {
    match phi {
        Formula::Top => out.write_str("true"),
        Formula::Atom(a) => write!(out, "{a}"),
        Formula::Not(x) => {
            out.write_char('!')?;
            formula(x, UNARY, out)
        }
        Formula::Box(a, x) => {
            write!(out, "[{a}] ")?;
            formula(x, UNARY, out)
        }
        Formula::And(x, y) => {
            let open = ctx > CONJ;
            if open {
                out.write_char('(')?;
            }
            formula(x, CONJ, out)?;
            out.write_str(" /\\ ")?;
            formula(y, UNARY, out)?;
            if open {
                out.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        formula(self, CONJ, f)
    }
}

/// Canonical text of a formula; same as its `Display` output.
pub fn print_formula(phi: &Formula) -> String {
    phi.to_string()
}
