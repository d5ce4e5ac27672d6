//! Expert corrections applied to a model before verification.
//!
//! ```text
//! # comment
//! state 0: cfg(R,CLAMP) = true
//! state 1: touch(D,W) = unknown
//! ```

use thiserror::Error;

use crate::ast::Atom;
use crate::model::{ModelError, StateId, ThreeVal, UtteranceModel};
use crate::parse::{parse_atom, ParseError};
use crate::primitives::Handedness;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Override {
    pub line: usize,
    pub state: StateId,
    /// As written; may still use `D`/`W`.
    pub atom: Atom,
    pub value: ThreeVal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OverrideError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {error}")]
    Atom { line: usize, error: ParseError },
    #[error("line {line}: state {state} does not exist")]
    UnknownState { line: usize, state: StateId },
    #[error("line {line}: `{atom}` names the same hand twice once grounded")]
    Degenerate { line: usize, atom: String },
}

pub fn parse_overrides(text: &str) -> Result<Vec<Override>, OverrideError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let syntax = |message: &str| OverrideError::Syntax { line, message: message.to_string() };
        let rest = body
            .strip_prefix("state")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| syntax("expected `state <id>: <atom> = <value>`"))?;
        let (id, rest) = rest.split_once(':').ok_or_else(|| syntax("expected `:` after the state id"))?;
        let state: StateId = id.trim().parse().map_err(|_| syntax("state id must be a non-negative integer"))?;
        let (atom_text, value) = rest.rsplit_once('=').ok_or_else(|| syntax("expected `= true|false|unknown`"))?;
        let value = match value.trim() {
            "true" => ThreeVal::True,
            "false" => ThreeVal::False,
            "unknown" => ThreeVal::Unknown,
            _ => return Err(syntax("value must be true, false or unknown")),
        };
        let atom = parse_atom(atom_text.trim()).map_err(|error| OverrideError::Atom { line, error })?;
        out.push(Override { line, state, atom, value });
    }
    Ok(out)
}

/// Grounds each override for `h` and writes it into the model's valuation.
pub fn apply_overrides(m: &mut UtteranceModel, overrides: &[Override], h: Handedness) -> Result<(), OverrideError> {
    for o in overrides {
        let atom = o.atom.ground(h);
        if atom.is_degenerate() {
            return Err(OverrideError::Degenerate { line: o.line, atom: o.atom.to_string() });
        }
        m.set_atom(o.state, atom, o.value).map_err(|e| match e {
            ModelError::UnknownState(state) => OverrideError::UnknownState { line: o.line, state },
            other => OverrideError::Syntax { line: o.line, message: other.to_string() },
        })?;
    }
    Ok(())
}
