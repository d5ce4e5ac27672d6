use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ast::{Action, AtomicAction};
use crate::geometry::PlaceMap;
use crate::model::{Relation, StateId, StateInfo, UtteranceModel};
use crate::primitives::HandConfig;

use super::{
    normalize_sequence, posture_valuation, segment, transition_action, validate, Diagnostic, ExtractError, FrameConfig,
    Segment, SegmentationParams, TrackingSequence,
};

/// What happened between two key postures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransitionLabel {
    /// Nothing moved enough to count; the edge carries no atomic action.
    Epsilon,
    Action(Action),
}

impl TransitionLabel {
    fn atomics(&self) -> Vec<AtomicAction> {
        let mut out = Vec::new();
        if let TransitionLabel::Action(a) = self {
            a.for_each_atomic(&mut |x| out.push(x));
        }
        out
    }

    fn is_thrill_only(&self) -> bool {
        let atomics = self.atomics();
        !atomics.is_empty() && atomics.iter().all(|a| matches!(a, AtomicAction::Thrill(_)))
    }
}

/// Everything the pipeline produced for one sequence.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub model: UtteranceModel,
    pub segments: Vec<Segment>,
    /// One label per transition segment, in order.
    pub transitions: Vec<TransitionLabel>,
    /// State of each key posture, in order.
    pub posture_states: Vec<StateId>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Options for [`extract`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtractOptions {
    pub params: SegmentationParams,
    pub frame: FrameConfig,
    /// Overrides the sequence's own `mirrored` flag when set.
    pub mirrored: Option<bool>,
}

/// Assembles the utterance model from a normalized, validated sequence.
///
/// Key postures become states in temporal order, joined by the transitions
/// between them. A transition made only of thrills that returns to a posture
/// with the same valuation becomes a self-loop instead of a new state. The
/// last state always gets an unlabeled self-loop so the relation is serial.
pub fn build_model(
    seq: &TrackingSequence,
    p: &SegmentationParams,
    map: &PlaceMap,
    labels: &BTreeSet<HandConfig>,
) -> Result<Extraction, ExtractError> {
    p.check()?;
    let segments = segment(seq, p)?;
    let keys: Vec<&Segment> = segments.iter().filter(|s| s.is_key_posture()).collect();
    if keys.is_empty() {
        return Err(ExtractError::NoKeyPosture);
    }

    let mut states = vec![posture_valuation(seq, keys[0], map, p, labels)];
    let mut posture_states = vec![0];
    let mut edges: Vec<(StateId, StateId, TransitionLabel)> = Vec::new();
    let mut transitions = Vec::new();
    let mut current = 0;

    for (k, tr) in segments.iter().filter(|s| !s.is_key_posture()).enumerate() {
        let label = transition_action(seq, tr, p).map_or(TransitionLabel::Epsilon, TransitionLabel::Action);
        let next: StateInfo = posture_valuation(seq, keys[k + 1], map, p, labels);
        let target = if label.is_thrill_only() && next == states[current] {
            current
        } else {
            states.push(next);
            states.len() - 1
        };
        edges.push((current, target, label.clone()));
        transitions.push(label);
        posture_states.push(target);
        current = target;
    }

    let n = states.len();
    let mut relation = Relation::empty(n);
    let mut actions: BTreeMap<AtomicAction, Relation> = BTreeMap::new();
    for (from, to, label) in &edges {
        relation.insert(*from, *to);
        for a in label.atomics() {
            actions.entry(a).or_insert_with(|| Relation::empty(n)).insert(*from, *to);
        }
    }
    relation.insert(n - 1, n - 1);

    let model = UtteranceModel::new(relation, actions, states).expect("extracted models are serial and grounded");
    Ok(Extraction { model, segments, transitions, posture_states, diagnostics: Vec::new() })
}

/// The whole pipeline: normalize into the body frame, repair, segment and build.
pub fn extract(
    raw: &TrackingSequence,
    opts: &ExtractOptions,
    map: &PlaceMap,
    labels: &BTreeSet<HandConfig>,
) -> Result<Extraction, ExtractError> {
    opts.params.check()?;
    if raw.is_empty() {
        return Err(ExtractError::EmptySequence);
    }
    let mirrored = opts.mirrored.unwrap_or(raw.mirrored);
    let (normalized, mut diagnostics) = normalize_sequence(raw, &opts.frame, mirrored);
    let (clean, repairs) = validate(&normalized, &opts.params)?;
    diagnostics.extend(repairs);
    diagnostics.sort_by_key(Diagnostic::frame);
    let mut out = build_model(&clean, &opts.params, map, labels)?;
    out.diagnostics = diagnostics;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Atom;
    use crate::extract::{HandSample, TrackingFrame};
    use crate::model::ThreeVal;
    use crate::primitives::{Articulator, Direction};

    fn seq(right: impl Fn(usize) -> [f64; 2], left: impl Fn(usize) -> [f64; 2], n: usize) -> TrackingSequence {
        let frames = (0..n)
            .map(|t| TrackingFrame {
                t: t as u64,
                right: HandSample { pos: Some(right(t).into()), ..Default::default() },
                left: HandSample { pos: Some(left(t).into()), ..Default::default() },
                ..Default::default()
            })
            .collect();
        TrackingSequence::new(frames, 25.0, false)
    }

    fn build(s: &TrackingSequence) -> Extraction {
        build_model(s, &SegmentationParams::default(), &PlaceMap::default(), &BTreeSet::new()).unwrap()
    }

    #[test]
    fn thirty_frame_chain() {
        let s = crate::fixtures::thirty_frames();
        let ex = build(&s);
        let m = &ex.model;
        assert_eq!(m.state_count(), 2);
        assert_eq!(m.relation().pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
        assert_eq!(m.actions().len(), 1);
        let mv = &m.actions()[&AtomicAction::Move(Articulator::Left, Direction::NE)];
        assert_eq!(mv.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn all_still_is_one_state() {
        let ex = build(&seq(|_| [0.3, 0.0], |_| [-0.3, 0.0], 8));
        assert_eq!(ex.model.state_count(), 1);
        assert_eq!(ex.model.relation().pairs().collect::<Vec<_>>(), vec![(0, 0)]);
        assert!(ex.model.actions().is_empty());
        assert!(ex.transitions.is_empty());
    }

    #[test]
    fn thrill_loop_on_second_state() {
        let ex = build(&crate::fixtures::thrill_sequence());
        let m = &ex.model;
        assert_eq!(ex.segments.iter().filter(|s| s.is_key_posture()).count(), 5);
        assert_eq!(m.state_count(), 4);
        assert_eq!(ex.posture_states, vec![0, 1, 1, 2, 3]);
        assert_eq!(m.relation().pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 1), (1, 2), (2, 3), (3, 3)]);
        for hand in Articulator::HANDS {
            let thrill = &m.actions()[&AtomicAction::Thrill(hand)];
            assert_eq!(thrill.pairs().collect::<Vec<_>>(), vec![(1, 1)]);
        }
    }

    #[test]
    fn still_transition_is_epsilon() {
        // both hands drift 0.025 per frame for 4 frames: not still, but the
        // net displacement of 0.1 is split into two opposite halves
        let ex = build(&seq(
            |t| {
                let x = match t {
                    0..=5 => 0.0,
                    6 | 7 => 0.025 * (t - 5) as f64,
                    8 => 0.025,
                    _ => 0.0,
                };
                [x, 0.0]
            },
            |_| [-0.5, 0.0],
            15,
        ));
        assert_eq!(ex.transitions, vec![TransitionLabel::Epsilon]);
        assert_eq!(ex.model.relation().pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
        assert!(ex.model.actions().is_empty());
    }

    #[test]
    fn extract_reports_repairs() {
        let mut s = seq(|_| [0.3, 0.5], |_| [-0.3, 0.5], 10);
        for f in &mut s.frames {
            f.head = Some([0.0, 1.2].into());
        }
        s.frames[6].right.pos = Some([3.0, 0.5].into());
        s.frames[7].head = None;
        let ex = extract(&s, &ExtractOptions::default(), &PlaceMap::default(), &BTreeSet::new()).unwrap();
        assert_eq!(
            ex.diagnostics,
            vec![Diagnostic::Teleport { frame: 6, hand: Articulator::Right }, Diagnostic::HeadMissing { frame: 7 }]
        );
        assert_eq!(ex.model.state_count(), 1);
        let v = ex.model.atom_value(0, &Atom::At(Articulator::Right, "R_SIDEOFBODY".into())).unwrap();
        assert_eq!(v, ThreeVal::True);
    }

    #[test]
    fn empty_is_an_error() {
        let s = TrackingSequence::new(Vec::new(), 25.0, false);
        let err = extract(&s, &ExtractOptions::default(), &PlaceMap::default(), &BTreeSet::new()).unwrap_err();
        assert_eq!(err, ExtractError::EmptySequence);
    }
}
