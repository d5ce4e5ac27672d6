//! Propositional dynamic logic for sign language.
//!
//! Sign descriptions are written as formulas over hand articulators
//! ([`ast::Formula`]); tracking data is segmented into key postures and
//! movements and turned into a serial labeled transition system
//! ([`model::UtteranceModel`]); [`check::verify`] then evaluates every sign of
//! a lexicon at every state and proposes the ones that match.

pub mod ast;
pub mod check;
pub mod extract;
pub mod fixtures;
pub mod geometry;
pub mod model;
pub mod parse;
pub mod primitives;

pub use ast::{Action, Atom, AtomicAction, Formula};
pub use check::{verify, ProposalReport, Verdict};
pub use geometry::{PlaceMap, Vec2};
pub use model::{ThreeVal, UtteranceModel};
pub use parse::{parse_formula, parse_lexicon, print_formula, LexiconFile};
pub use primitives::{Articulator, Direction, HandConfig, Handedness, PlaceName};
