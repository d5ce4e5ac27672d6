//! Lexicon verification: evaluate every sign at every state and propose the
//! ones that hold (`Match`) or might hold given missing data (`Possible`).

mod lint;
mod overrides;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ast::Formula;
use crate::extract::SegmentationParams;
use crate::model::{ModelError, StateId, ThreeVal, UtteranceModel};
use crate::parse::LexiconFile;
use crate::primitives::Handedness;

pub use lint::{lint_lexicon, LintWarning};
pub use overrides::{apply_overrides, parse_overrides, Override, OverrideError};

pub const REPORT_FORMAT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    /// The sign holds at the state.
    Match,
    /// The sign is undetermined because some atoms are unknown.
    Possible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proposal {
    pub sign: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateProposals {
    pub state: StateId,
    pub proposals: Vec<Proposal>,
}

/// Proposals per state plus what produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProposalReport {
    pub format: u32,
    pub handedness: Handedness,
    /// SHA-256 of the lexicon's canonical text.
    pub lexicon_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<SegmentationParams>,
    pub states: Vec<StateProposals>,
}

impl ProposalReport {
    pub fn with_params(mut self, params: Option<SegmentationParams>) -> Self {
        self.params = params;
        self
    }

    /// Proposals at one state, empty when the state is out of range.
    pub fn at(&self, s: StateId) -> &[Proposal] {
        self.states.get(s).map_or(&[], |e| &e.proposals)
    }

    /// Every `(state, sign, verdict)` triple in report order.
    pub fn entries(&self) -> impl Iterator<Item = (StateId, &str, Verdict)> {
        self.states.iter().flat_map(|e| e.proposals.iter().map(move |p| (e.state, p.sign.as_str(), p.verdict)))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text table with one row per proposal.
    pub fn to_table(&self) -> String {
        let rows: Vec<(String, &str, &str)> = self
            .entries()
            .map(|(s, sign, v)| {
                let verdict = match v {
                    Verdict::Match => "Match",
                    Verdict::Possible => "Possible",
                };
                (format!("s{s}"), sign, verdict)
            })
            .collect();
        let w0 = rows.iter().map(|r| r.0.len()).chain([5]).max().unwrap_or(5);
        let w1 = rows.iter().map(|r| r.1.len()).chain([4]).max().unwrap_or(4);
        let mut out = String::new();
        writeln!(out, "# handedness: {}, lexicon: {}", self.handedness, self.lexicon_hash).unwrap();
        writeln!(out, "{:<w0$}  {:<w1$}  verdict", "state", "sign").unwrap();
        for (s, sign, v) in rows {
            writeln!(out, "{s:<w0$}  {sign:<w1$}  {v}").unwrap();
        }
        out
    }
}

/// The formula that is checked at a state for a lexicon entry.
///
/// A sign written as `A -> C` describes a production that starts in a posture
/// satisfying `A`. Read as a material implication it would hold at every
/// state where `A` fails, so the entry is anchored instead: the state must
/// satisfy `A` and `C`. Other shapes are checked as written. A disjunction
/// parses to the same shape as an implication with a negated antecedent, so
/// antecedents that are themselves negations are left alone.
pub fn anchor(phi: &Formula) -> Formula {
    if let Formula::Not(inner) = phi {
        if let Formula::And(a, not_c) = inner.as_ref() {
            if let Formula::Not(c) = not_c.as_ref() {
                if !matches!(a.as_ref(), Formula::Not(_)) {
                    return Formula::and((**a).clone(), (**c).clone());
                }
            }
        }
    }
    phi.clone()
}

/// Cheap rejection test: false when an atom that is a top-level conjunct of
/// `phi` is false at `s`. A false conjunct makes `phi` false, so skipping
/// those states never changes a verdict.
pub fn prefilter(m: &UtteranceModel, s: StateId, phi: &Formula) -> Result<bool, ModelError> {
    for c in phi.top_conjuncts() {
        if let Formula::Atom(a) = c {
            if m.atom_value(s, a)? == ThreeVal::False {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub prefilter: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { prefilter: true }
    }
}

pub fn verify(m: &UtteranceModel, lex: &LexiconFile, h: Handedness) -> Result<ProposalReport, ModelError> {
    verify_with(m, lex, h, VerifyOptions::default())
}

/// Grounds every sign for `h`, anchors it and evaluates it at every state.
pub fn verify_with(
    m: &UtteranceModel,
    lex: &LexiconFile,
    h: Handedness,
    opts: VerifyOptions,
) -> Result<ProposalReport, ModelError> {
    let n = m.state_count();
    let mut states: Vec<StateProposals> = (0..n).map(|state| StateProposals { state, proposals: Vec::new() }).collect();
    for entry in &lex.entries {
        let phi = anchor(&entry.formula.ground(h));
        let mut candidates = Vec::with_capacity(n);
        for s in 0..n {
            if !opts.prefilter || prefilter(m, s, &phi)? {
                candidates.push(s);
            }
        }
        if candidates.is_empty() {
            continue;
        }
        let values = m.eval_all(&phi)?;
        for s in candidates {
            let verdict = match values[s] {
                ThreeVal::True => Verdict::Match,
                ThreeVal::Unknown => Verdict::Possible,
                ThreeVal::False => continue,
            };
            states[s].proposals.push(Proposal { sign: entry.name.clone(), verdict });
        }
    }
    // Stable sort keeps lexicon order within each verdict class.
    for e in &mut states {
        e.proposals.sort_by_key(|p| p.verdict);
    }
    Ok(ProposalReport { format: REPORT_FORMAT, handedness: h, lexicon_hash: lex.content_hash(), params: None, states })
}
