//! JSON serialization of utterance models.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{Action, Atom};
use crate::extract::SegmentationParams;
use crate::parse::{parse_action, parse_atom, ParseError};
use crate::primitives::Articulator;

use super::{ModelError, Relation, StateId, StateInfo, ThreeVal, UtteranceModel};

pub const MODEL_FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum ModelDumpError {
    #[error("invalid model document at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported model format {0}")]
    Format(u32),
    #[error("bad atom `{text}` at state {state}: {error}")]
    Atom { state: StateId, text: String, error: ParseError },
    #[error("bad action `{text}`: {reason}")]
    Action { text: String, reason: String },
    #[error("edge ({0},{1}) is outside the state range")]
    EdgeOutOfRange(StateId, StateId),
    #[error("valuation listed for state {0}, which does not exist")]
    StateOutOfRange(StateId),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// On-disk model: the four-tuple plus the thresholds it was extracted with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub format: u32,
    pub states: usize,
    pub relation: Vec<[StateId; 2]>,
    pub actions: Vec<ActionEntry>,
    pub valuation: Vec<StateEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<SegmentationParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub action: String,
    pub edges: Vec<[StateId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateEntry {
    pub state: StateId,
    pub observed: Vec<Articulator>,
    pub atoms: BTreeMap<String, ThreeVal>,
}

fn edges(r: &Relation) -> Vec<[StateId; 2]> {
    r.pairs().map(|(a, b)| [a, b]).collect()
}

impl ModelDocument {
    pub fn from_model(model: &UtteranceModel, params: Option<SegmentationParams>) -> Self {
        ModelDocument {
            format: MODEL_FORMAT,
            states: model.state_count(),
            relation: edges(model.relation()),
            actions: model
                .actions()
                .iter()
                .map(|(a, r)| ActionEntry { action: a.to_string(), edges: edges(r) })
                .collect(),
            valuation: model
                .states()
                .iter()
                .enumerate()
                .map(|(state, info)| StateEntry {
                    state,
                    observed: info.observed.iter().copied().collect(),
                    atoms: info.valuation.iter().map(|(a, v)| (a.to_string(), *v)).collect(),
                })
                .collect(),
            params,
        }
    }

    pub fn to_model(&self) -> Result<UtteranceModel, ModelDumpError> {
        if self.format != MODEL_FORMAT {
            return Err(ModelDumpError::Format(self.format));
        }
        let n = self.states;
        let relation = to_relation(n, &self.relation)?;
        let mut actions = BTreeMap::new();
        for entry in &self.actions {
            let atomic = match parse_action(&entry.action) {
                Ok(Action::Atomic(a)) => a,
                Ok(_) => {
                    return Err(ModelDumpError::Action {
                        text: entry.action.clone(),
                        reason: "not an atomic action".into(),
                    })
                }
                Err(e) => return Err(ModelDumpError::Action { text: entry.action.clone(), reason: e.to_string() }),
            };
            let rel: &mut Relation = actions.entry(atomic).or_insert_with(|| Relation::empty(n));
            *rel = rel.union(&to_relation(n, &entry.edges)?);
        }
        let mut states = vec![StateInfo::default(); n];
        for entry in &self.valuation {
            let info = states.get_mut(entry.state).ok_or(ModelDumpError::StateOutOfRange(entry.state))?;
            info.observed = entry.observed.iter().copied().collect::<BTreeSet<_>>();
            for (text, value) in &entry.atoms {
                let atom: Atom = parse_atom(text).map_err(|error| ModelDumpError::Atom {
                    state: entry.state,
                    text: text.clone(),
                    error,
                })?;
                info.valuation.insert(atom, *value);
            }
        }
        Ok(UtteranceModel::new(relation, actions, states)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ModelDumpError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de)
            .map_err(|e| ModelDumpError::Schema { path: json_pointer(e.path()), message: e.inner().to_string() })
    }
}

fn to_relation(n: usize, pairs: &[[StateId; 2]]) -> Result<Relation, ModelDumpError> {
    let mut r = Relation::empty(n);
    for &[a, b] in pairs {
        if a >= n || b >= n {
            return Err(ModelDumpError::EdgeOutOfRange(a, b));
        }
        r.insert(a, b);
    }
    Ok(r)
}

/// Renders a serde path as a JSON pointer (`/frames/3/right/pos`).
pub(crate) fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

impl UtteranceModel {
    pub fn to_json(&self) -> String {
        ModelDocument::from_model(self, None).to_json()
    }

    pub fn from_json(text: &str) -> Result<Self, ModelDumpError> {
        ModelDocument::from_json(text)?.to_model()
    }
}
