//! Lexicon files: an optional `format: 1` header followed by entries of the
//! form `sign NAME := <formula> .`

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ast::Formula;
use crate::primitives::HandConfig;

use super::lexer::{tokenize, Tok};
use super::parser::Parser;
use super::{ParseError, ParseErrorKind, SourceSpan};

pub const LEXICON_FORMAT: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub name: String,
    /// Desugared, not grounded.
    pub formula: Formula,
    /// Span of the `sign NAME` header.
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LexiconFile {
    pub entries: Vec<LexiconEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("{second}: sign `{name}` is already defined at {first}")]
    DuplicateSign { name: String, first: SourceSpan, second: SourceSpan },
    #[error("{}", EntryDisplay(.sign, .entry, .error))]
    Entry { sign: Option<String>, entry: Option<SourceSpan>, error: Box<ParseError> },
}

struct EntryDisplay<'a>(&'a Option<String>, &'a Option<SourceSpan>, &'a ParseError);

impl fmt::Display for EntryDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.2)?;
        if let (Some(sign), Some(span)) = (self.0, self.1) {
            write!(f, " (in sign `{sign}` declared at {span})")?;
        }
        Ok(())
    }
}

impl LexiconError {
    /// Every span the diagnostic points at, primary first.
    pub fn spans(&self) -> Vec<SourceSpan> {
        match self {
            LexiconError::DuplicateSign { first, second, .. } => vec![*second, *first],
            LexiconError::Entry { entry, error, .. } => {
                let mut v = vec![error.span];
                v.extend(entry);
                v
            }
        }
    }
}

impl LexiconFile {
    pub fn get(&self, name: &str) -> Option<&LexiconEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn config_labels(&self) -> std::collections::BTreeSet<HandConfig> {
        self.entries.iter().flat_map(|e| e.formula.config_labels()).collect()
    }

    /// Canonical text, independent of comments and layout in the source.
    pub fn canonical_text(&self) -> String {
        let mut out = format!("format: {LEXICON_FORMAT}\n");
        for e in &self.entries {
            out.push_str(&format!("sign {} := {} .\n", e.name, e.formula));
        }
        out
    }

    /// SHA-256 of the canonical text, hex encoded.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn parse_lexicon(text: &str) -> Result<LexiconFile, LexiconError> {
    let bare = |error| LexiconError::Entry { sign: None, entry: None, error: Box::new(error) };
    let toks = tokenize(text).map_err(bare)?;
    let mut p = Parser::new(&toks);

    if matches!(&p.peek().tok, Tok::Ident(s) if s == "format") {
        p.bump();
        p.expect(Tok::Colon).map_err(bare)?;
        match p.peek().tok {
            Tok::Number(LEXICON_FORMAT) => {
                p.bump();
            }
            Tok::Number(n) => {
                return Err(bare(ParseError { kind: ParseErrorKind::UnsupportedFormat(n), span: p.peek().span }))
            }
            _ => return Err(bare(p.error(&["format version"]))),
        }
    }

    let mut lex = LexiconFile::default();
    while !matches!(p.peek().tok, Tok::Eof) {
        let header = p.peek().span;
        match &p.peek().tok {
            Tok::Ident(s) if s == "sign" => {
                p.bump();
            }
            _ => return Err(bare(p.error(&["`sign`"]))),
        }
        let (name, name_span) = p.ident("sign name").map_err(bare)?;
        let span = SourceSpan::new(
            header.line,
            header.column,
            if name_span.line == header.line {
                name_span.column + name_span.length - header.column
            } else {
                header.length
            },
        );
        let in_entry =
            |error| LexiconError::Entry { sign: Some(name.clone()), entry: Some(span), error: Box::new(error) };
        p.expect(Tok::Define).map_err(in_entry)?;
        let formula = p.formula().map_err(in_entry)?;
        p.expect(Tok::Dot).map_err(in_entry)?;

        if let Some(prev) = lex.get(&name) {
            return Err(LexiconError::DuplicateSign { name, first: prev.span, second: span });
        }
        lex.entries.push(LexiconEntry { name, formula, span });
    }
    Ok(lex)
}
