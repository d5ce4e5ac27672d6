//! Concrete ASCII syntax for formulas and lexicons.
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?
//! or      := and ("\/" and)*
//! and     := unary ("/\" unary)*
//! unary   := "!" unary | "[" action "]" unary | "<" action ">" unary
//!          | "true" | atom | "(" formula ")"
//! atom    := dir(art,art,DIR) | at(art,NAME) | touch(art,art)
//!          | cfg(art,NAME) | orient(art,DIR)
//! action  := seq
//! seq     := par (";" par)*
//! par     := choice ("&" choice)*
//! choice  := star ("|" star)*
//! star    := prim "*"?
//! prim    := move(art,DIR) | thrill(art) | "(" action ")"
//! ```
//!
//! `dir(b1, b2, d)` reads "b1 lies in direction d from b2".

mod lexer;
mod lexicon;
mod parser;
mod printer;

use std::fmt;

use thiserror::Error;

use crate::primitives::Articulator;

pub use lexicon::{parse_lexicon, LexiconEntry, LexiconError, LexiconFile};
pub use parser::{parse_action, parse_atom, parse_formula};
pub use printer::print_formula;

/// Location of a token or construct: 1-based line and column, length in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub const fn new(line: usize, column: usize, length: usize) -> Self {
        SourceSpan { line, column, length }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<String>, found: String },
    UnexpectedChar(char),
    UnknownArticulator(String),
    UnknownDirection(String),
    SameArticulator(Articulator),
    TooDeep,
    UnsupportedFormat(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected ")?;
                match expected.as_slice() {
                    [one] => write!(f, "{one}")?,
                    many => write!(f, "one of {}", many.join(", "))?,
                }
                write!(f, ", found {found}")
            }
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnknownArticulator(s) => {
                write!(f, "unknown articulator `{s}` (expected D, W, R or L)")
            }
            ParseErrorKind::UnknownDirection(s) => {
                write!(f, "unknown direction `{s}` (expected N, NE, E, SE, S, SW, W or NW)")
            }
            ParseErrorKind::SameArticulator(a) => {
                write!(f, "atom relates articulator {a} to itself")
            }
            ParseErrorKind::TooDeep => f.write_str("nesting too deep"),
            ParseErrorKind::UnsupportedFormat(n) => write!(f, "unsupported format version {n}"),
        }
    }
}

#[cfg(test)]
mod tests;
