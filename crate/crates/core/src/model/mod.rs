//! Utterance models (serial labeled transition systems) and their semantics.
//!
//! Evaluation is three-valued (strong Kleene) so that atoms the tracker could
//! not observe stay `Unknown` instead of being guessed. A closed-world
//! two-valued mode is available for crisp answers.

mod dump;
mod eval;
mod relation;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{Atom, AtomicAction};
use crate::primitives::Articulator;

pub(crate) use dump::json_pointer;
pub use dump::{ActionEntry, ModelDocument, ModelDumpError, StateEntry, MODEL_FORMAT};
pub use relation::Relation;

pub type StateId = usize;

/// Kleene truth value. In the information order `Unknown` sits below both
/// `True` and `False`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThreeVal {
    False,
    Unknown,
    True,
}

impl std::ops::Not for ThreeVal {
    type Output = ThreeVal;

    fn not(self) -> ThreeVal {
        match self {
            ThreeVal::True => ThreeVal::False,
            ThreeVal::False => ThreeVal::True,
            ThreeVal::Unknown => ThreeVal::Unknown,
        }
    }
}

impl ThreeVal {
    /// False dominates, then Unknown.
    pub fn and(self, other: ThreeVal) -> ThreeVal {
        self.min(other)
    }

    pub fn is_known(self) -> bool {
        self != ThreeVal::Unknown
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            ThreeVal::True => Some(true),
            ThreeVal::False => Some(false),
            ThreeVal::Unknown => None,
        }
    }

    /// True when `refined` agrees with `self` wherever `self` is known.
    pub fn refined_by(self, refined: ThreeVal) -> bool {
        !self.is_known() || self == refined
    }
}

impl From<bool> for ThreeVal {
    fn from(b: bool) -> Self {
        if b {
            ThreeVal::True
        } else {
            ThreeVal::False
        }
    }
}

impl fmt::Display for ThreeVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreeVal::True => "True",
            ThreeVal::False => "False",
            ThreeVal::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("a model needs at least one state")]
    NoStates,
    #[error("state {0} has no outgoing transition")]
    NotSerial(StateId),
    #[error("state {0} does not exist")]
    UnknownState(StateId),
    #[error("edge ({from},{to}) of action {action} is not in the transition relation")]
    ActionEdgeOutsideRelation { action: String, from: StateId, to: StateId },
    #[error("{0} mentions a dominant/weak alias; ground it first")]
    Ungrounded(String),
}

/// Observations attached to one state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StateInfo {
    /// Hands whose position was tracked at this state.
    pub observed: BTreeSet<Articulator>,
    /// Explicit atom values; other atoms follow [`UtteranceModel::atom_value`]'s default rule.
    pub valuation: BTreeMap<Atom, ThreeVal>,
}

/// A finite serial LTS: states, transition relation, atomic-action
/// interpretation (each a subset of the relation) and a three-valued valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtteranceModel {
    relation: Relation,
    actions: BTreeMap<AtomicAction, Relation>,
    states: Vec<StateInfo>,
}

impl UtteranceModel {
    pub fn new(
        relation: Relation,
        actions: BTreeMap<AtomicAction, Relation>,
        states: Vec<StateInfo>,
    ) -> Result<Self, ModelError> {
        let n = states.len();
        if n == 0 {
            return Err(ModelError::NoStates);
        }
        if relation.size() != n {
            return Err(ModelError::UnknownState(relation.size().max(n)));
        }
        if let Some(s) = (0..n).find(|&s| !relation.has_successor(s)) {
            return Err(ModelError::NotSerial(s));
        }
        for (action, edges) in &actions {
            if action.articulator().is_alias() {
                return Err(ModelError::Ungrounded(action.to_string()));
            }
            if edges.size() != n {
                return Err(ModelError::UnknownState(edges.size().max(n)));
            }
            if let Some((from, to)) = edges.pairs().find(|&(a, b)| !relation.contains(a, b)) {
                return Err(ModelError::ActionEdgeOutsideRelation { action: action.to_string(), from, to });
            }
        }
        for info in &states {
            if let Some(atom) = info.valuation.keys().find(|a| !a.is_grounded()) {
                return Err(ModelError::Ungrounded(atom.to_string()));
            }
        }
        Ok(UtteranceModel { relation, actions, states })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn actions(&self) -> &BTreeMap<AtomicAction, Relation> {
        &self.actions
    }

    pub fn states(&self) -> &[StateInfo] {
        &self.states
    }

    pub fn state(&self, s: StateId) -> Result<&StateInfo, ModelError> {
        self.states.get(s).ok_or(ModelError::UnknownState(s))
    }

    /// Overrides one atom's value at a state.
    pub fn set_atom(&mut self, s: StateId, atom: Atom, value: ThreeVal) -> Result<(), ModelError> {
        if !atom.is_grounded() {
            return Err(ModelError::Ungrounded(atom.to_string()));
        }
        let info = self.states.get_mut(s).ok_or(ModelError::UnknownState(s))?;
        info.valuation.insert(atom, value);
        Ok(())
    }

    /// Value of `atom` at `s`. Unlisted atoms default to `Unknown` for
    /// configuration and orientation (open vocabularies) and for atoms about
    /// an unobserved hand; geometric atoms over observed hands default to `False`.
    pub fn atom_value(&self, s: StateId, atom: &Atom) -> Result<ThreeVal, ModelError> {
        if !atom.is_grounded() {
            return Err(ModelError::Ungrounded(atom.to_string()));
        }
        let info = self.state(s)?;
        Ok(self.listed_or_default(info, atom))
    }

    fn listed_or_default(&self, info: &StateInfo, atom: &Atom) -> ThreeVal {
        if let Some(v) = info.valuation.get(atom) {
            return *v;
        }
        if atom.is_degenerate() {
            return ThreeVal::Unknown;
        }
        match atom {
            Atom::Config(..) | Atom::Orient(..) => ThreeVal::Unknown,
            Atom::RelDir { .. } | Atom::At(..) | Atom::Touch(..) => {
                if atom.articulators().iter().all(|a| info.observed.contains(a)) {
                    ThreeVal::False
                } else {
                    ThreeVal::Unknown
                }
            }
        }
    }
}

/// Incremental construction, mostly for tests and fixtures.
#[derive(Debug, Clone)]
pub struct ModelBuilder {
    relation: Relation,
    actions: BTreeMap<AtomicAction, Relation>,
    states: Vec<StateInfo>,
}

impl ModelBuilder {
    pub fn new(states: usize) -> Self {
        ModelBuilder {
            relation: Relation::empty(states),
            actions: BTreeMap::new(),
            states: vec![StateInfo::default(); states],
        }
    }

    pub fn edge(mut self, from: StateId, to: StateId) -> Self {
        self.relation.insert(from, to);
        self
    }

    /// Adds `from -> to` to the relation and to `action`'s interpretation.
    pub fn action(mut self, action: AtomicAction, from: StateId, to: StateId) -> Self {
        let n = self.states.len();
        self.relation.insert(from, to);
        self.actions.entry(action).or_insert_with(|| Relation::empty(n)).insert(from, to);
        self
    }

    pub fn observe(mut self, s: StateId, hands: &[Articulator]) -> Self {
        self.states[s].observed.extend(hands.iter().copied());
        self
    }

    pub fn atom(mut self, s: StateId, atom: Atom, value: ThreeVal) -> Self {
        self.states[s].valuation.insert(atom, value);
        self
    }

    /// Adds a self-loop to every state without a successor.
    pub fn serial(mut self) -> Self {
        for s in 0..self.states.len() {
            if !self.relation.has_successor(s) {
                self.relation.insert(s, s);
            }
        }
        self
    }

    pub fn build(self) -> Result<UtteranceModel, ModelError> {
        UtteranceModel::new(self.relation, self.actions, self.states)
    }
}
