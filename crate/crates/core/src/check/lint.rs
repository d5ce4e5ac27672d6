use std::fmt;

use serde::Serialize;

use crate::ast::Atom;
use crate::parse::{LexiconFile, SourceSpan};
use crate::primitives::Handedness;

/// Something in a lexicon that parses but is unlikely to do what was meant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "code")]
pub enum LintWarning {
    /// Palm orientation is not measured from 2-D positions, so these atoms
    /// stay unknown unless the tracker supplies orientation labels.
    OrientationUnobservable { sign: String, span: SourceSpan, atom: String },
    /// After grounding for `handedness`, the atom names one hand twice and can never be decided.
    DegenerateAfterGrounding { sign: String, span: SourceSpan, atom: String, handedness: Handedness },
}

impl fmt::Display for LintWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LintWarning::OrientationUnobservable { sign, span, atom } => write!(
                f,
                "{span}: sign `{sign}` uses `{atom}`; orientation is not observable from 2-D tracking and stays unknown without labels"
            ),
            LintWarning::DegenerateAfterGrounding { sign, span, atom, handedness } => write!(
                f,
                "{span}: sign `{sign}` uses `{atom}`, which names the same hand twice for {handedness} signers"
            ),
        }
    }
}

pub fn lint_lexicon(lex: &LexiconFile) -> Vec<LintWarning> {
    let mut out = Vec::new();
    for e in &lex.entries {
        let mut atoms: Vec<Atom> = Vec::new();
        e.formula.for_each_atom(&mut |a| {
            if !atoms.contains(a) {
                atoms.push(a.clone());
            }
        });
        for a in &atoms {
            if matches!(a, Atom::Orient(..)) {
                out.push(LintWarning::OrientationUnobservable {
                    sign: e.name.clone(),
                    span: e.span,
                    atom: a.to_string(),
                });
            }
            for h in Handedness::ALL {
                if a.ground(h).is_degenerate() {
                    out.push(LintWarning::DegenerateAfterGrounding {
                        sign: e.name.clone(),
                        span: e.span,
                        atom: a.to_string(),
                        handedness: h,
                    });
                }
            }
        }
    }
    out
}
