use std::collections::BTreeSet;

use crate::ast::{Action, Atom, AtomicAction};
use crate::geometry::{classify_direction, relative_direction, PlaceMap, Point2D, Vec2};
use crate::model::{StateInfo, ThreeVal};
use crate::primitives::{Articulator, Direction, HandConfig};

use super::{compute_velocities, Segment, SegmentationParams, TrackingSequence};

/// Median frame position of a segment.
pub fn representative_frame(seg: &Segment) -> usize {
    (seg.first + seg.last) / 2
}

/// Atom values at a key posture, read off its representative frame.
///
/// Geometric atoms over a tracked hand are listed explicitly (True or False);
/// atoms over an untracked hand are left out and so default to `Unknown`.
/// `labels` is the configuration vocabulary that may be valued `False`.
pub fn posture_valuation(
    seq: &TrackingSequence,
    seg: &Segment,
    map: &PlaceMap,
    p: &SegmentationParams,
    labels: &BTreeSet<HandConfig>,
) -> StateInfo {
    let frame = &seq.frames[representative_frame(seg)];
    let mut info = StateInfo::default();
    let mut set = |atom: Atom, v: ThreeVal| {
        info.valuation.insert(atom, v);
    };

    for hand in Articulator::HANDS {
        let sample = frame.hand(hand);
        if let Some(pos) = sample.pos {
            let inside = map.places_containing(pos);
            for place in map.places() {
                set(Atom::At(hand, place.name.clone()), inside.contains(&place.name).into());
            }
        }
        if let Some(label) = &sample.config {
            for other in labels {
                set(Atom::Config(hand, other.clone()), ThreeVal::False);
            }
            set(Atom::Config(hand, label.clone()), ThreeVal::True);
        }
        if let Some(orient) = sample.orient {
            for d in Direction::ALL {
                set(Atom::Orient(hand, d), (d == orient).into());
            }
        }
    }

    if let (Some(r), Some(l)) = (frame.right.pos, frame.left.pos) {
        use Articulator::{Left, Right};
        for (first, second, a, b) in [(Right, Left, r, l), (Left, Right, l, r)] {
            let rel = relative_direction(a, b).ok();
            for d in Direction::ALL {
                let v = rel.map_or(ThreeVal::Unknown, |rel| (d == rel).into());
                set(Atom::RelDir { first, dir: d, second }, v);
            }
            set(Atom::Touch(first, second), touch_value(r.distance(l), p));
        }
    }

    for hand in Articulator::HANDS {
        if frame.pos(hand).is_some() {
            info.observed.insert(hand);
        }
    }
    info
}

fn touch_value(d: f64, p: &SegmentationParams) -> ThreeVal {
    if d < p.tau_touch {
        ThreeVal::True
    } else if d < p.tau_touch + p.touch_unknown_band {
        ThreeVal::Unknown
    } else {
        ThreeVal::False
    }
}

/// The movement performed during a transition, or `None` when no hand moved
/// enough to count.
///
/// A hand whose net displacement reaches `thrill_net_disp` moves in the
/// closest direction. Otherwise it thrills if some window of
/// `thrill_window` velocities holds at least `thrill_min_reversals` sign
/// reversals and its mean speed is at least `tau_still`.
pub fn transition_action(seq: &TrackingSequence, seg: &Segment, p: &SegmentationParams) -> Option<Action> {
    let vel = compute_velocities(seq);
    let mut parts = Vec::new();
    for hand in Articulator::HANDS {
        if let Some(a) = hand_action(seq, seg, p, hand, vel.hand(hand)) {
            parts.push(Action::atomic(a));
        }
    }
    parts.into_iter().reduce(Action::concurrent)
}

fn hand_action(
    seq: &TrackingSequence,
    seg: &Segment,
    p: &SegmentationParams,
    hand: Articulator,
    vel: &[Option<Vec2>],
) -> Option<AtomicAction> {
    let lo = seg.first.saturating_sub(1);
    let hi = (seg.last + 1).min(seq.len() - 1);
    let positions: Vec<Point2D> = (lo..=hi).filter_map(|i| seq.frames[i].pos(hand)).collect();
    if let (Some(&start), Some(&end)) = (positions.first(), positions.last()) {
        let net = end - start;
        if net.norm() >= p.thrill_net_disp {
            return classify_direction(net).ok().map(|d| AtomicAction::Move(hand, d));
        }
    }

    let inside: Vec<Vec2> = vel[seg.first..=seg.last].iter().flatten().copied().collect();
    if inside.is_empty() {
        return None;
    }
    let mean_speed = inside.iter().map(|v| v.norm()).sum::<f64>() / inside.len() as f64;
    if mean_speed < p.tau_still {
        return None;
    }
    let window = p.thrill_window.max(2);
    let reversals = |vs: &[Vec2]| vs.windows(2).filter(|w| w[0].dot(w[1]) < 0.0).count();
    let best = if inside.len() <= window {
        reversals(&inside)
    } else {
        inside.windows(window).map(reversals).max().unwrap_or(0)
    };
    (best >= p.thrill_min_reversals).then_some(AtomicAction::Thrill(hand))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{HandSample, SegmentKind, TrackingFrame};

    fn still(right: Option<[f64; 2]>, left: Option<[f64; 2]>, cfg: Option<&str>) -> TrackingSequence {
        let sample = |p: Option<[f64; 2]>| HandSample {
            pos: p.map(Into::into),
            config: cfg.map(HandConfig::from),
            orient: None,
        };
        let frames = (0..5)
            .map(|t| TrackingFrame { t, right: sample(right), left: sample(left), ..Default::default() })
            .collect();
        TrackingSequence::new(frames, 25.0, false)
    }

    fn value(info: &StateInfo, atom: Atom) -> Option<ThreeVal> {
        info.valuation.get(&atom).copied()
    }

    fn kp() -> Segment {
        Segment::key(0, 4)
    }

    #[test]
    fn representative_is_median() {
        assert_eq!(representative_frame(&Segment::key(0, 9)), 4);
        assert_eq!(representative_frame(&Segment::key(20, 29)), 24);
        assert_eq!(representative_frame(&Segment::key(3, 3)), 3);
    }

    #[test]
    fn hands_apart() {
        use Articulator::*;
        let s = still(Some([0.3, 0.0]), Some([-0.3, 0.0]), None);
        let info = posture_valuation(&s, &kp(), &PlaceMap::default(), &Default::default(), &BTreeSet::new());
        assert_eq!(value(&info, Atom::RelDir { first: Right, dir: Direction::E, second: Left }), Some(ThreeVal::True));
        assert_eq!(value(&info, Atom::RelDir { first: Right, dir: Direction::W, second: Left }), Some(ThreeVal::False));
        assert_eq!(value(&info, Atom::RelDir { first: Left, dir: Direction::W, second: Right }), Some(ThreeVal::True));
        assert_eq!(value(&info, Atom::Touch(Right, Left)), Some(ThreeVal::False));
        assert_eq!(value(&info, Atom::At(Right, "CHEST".into())), Some(ThreeVal::False));
        assert_eq!(value(&info, Atom::At(Right, "TORSE".into())), Some(ThreeVal::True));
        let trues = Direction::ALL
            .iter()
            .filter(|&&d| value(&info, Atom::RelDir { first: Right, dir: d, second: Left }) == Some(ThreeVal::True))
            .count();
        assert_eq!(trues, 1);
    }

    #[test]
    fn clamp_and_touch() {
        use Articulator::*;
        let labels: BTreeSet<HandConfig> = ["CLAMP".into(), "BEAK_CONFIG".into()].into();
        let s = still(Some([-0.015, 1.2]), Some([0.015, 1.2]), Some("CLAMP"));
        let info = posture_valuation(&s, &kp(), &PlaceMap::default(), &Default::default(), &labels);
        assert_eq!(value(&info, Atom::Config(Right, "CLAMP".into())), Some(ThreeVal::True));
        assert_eq!(value(&info, Atom::Config(Left, "CLAMP".into())), Some(ThreeVal::True));
        assert_eq!(value(&info, Atom::Config(Left, "BEAK_CONFIG".into())), Some(ThreeVal::False));
        assert_eq!(value(&info, Atom::Touch(Right, Left)), Some(ThreeVal::True));
        assert_eq!(value(&info, Atom::At(Left, "FACE".into())), Some(ThreeVal::True));
    }

    #[test]
    fn touch_band() {
        let p = SegmentationParams::default();
        assert_eq!(touch_value(0.049, &p), ThreeVal::True);
        assert_eq!(touch_value(0.05, &p), ThreeVal::Unknown);
        assert_eq!(touch_value(0.099, &p), ThreeVal::Unknown);
        assert_eq!(touch_value(0.1, &p), ThreeVal::False);
    }

    #[test]
    fn absent_hand_lists_nothing_about_it() {
        let s = still(None, Some([-0.3, 0.0]), None);
        let info = posture_valuation(&s, &kp(), &PlaceMap::default(), &Default::default(), &BTreeSet::new());
        assert!(info.valuation.keys().all(|a| !a.articulators().contains(&Articulator::Right)));
        assert_eq!(info.observed, [Articulator::Left].into());
    }

    #[test]
    fn coincident_hands_leave_direction_unknown() {
        let s = still(Some([0.0, 0.0]), Some([0.0, 0.0]), None);
        let info = posture_valuation(&s, &kp(), &PlaceMap::default(), &Default::default(), &BTreeSet::new());
        for d in Direction::ALL {
            let atom = Atom::RelDir { first: Articulator::Right, dir: d, second: Articulator::Left };
            assert_eq!(value(&info, atom), Some(ThreeVal::Unknown));
        }
    }

    fn moving(right: impl Fn(usize) -> Option<[f64; 2]>, left: impl Fn(usize) -> Option<[f64; 2]>) -> TrackingSequence {
        let frames = (0..12)
            .map(|t| TrackingFrame {
                t: t as u64,
                right: HandSample { pos: right(t).map(Into::into), ..Default::default() },
                left: HandSample { pos: left(t).map(Into::into), ..Default::default() },
                ..Default::default()
            })
            .collect();
        TrackingSequence::new(frames, 25.0, false)
    }

    fn tr() -> Segment {
        Segment { kind: SegmentKind::Transition, first: 3, last: 8 }
    }

    #[test]
    fn single_hand_move() {
        let s = moving(
            |_| Some([0.3, 0.0]),
            |t| {
                let k = (t.clamp(2, 8) - 2) as f64 * 0.05;
                Some([k, k])
            },
        );
        assert_eq!(
            transition_action(&s, &tr(), &Default::default()),
            Some(Action::atomic(AtomicAction::Move(Articulator::Left, Direction::NE)))
        );
    }

    #[test]
    fn concurrent_moves() {
        let s = moving(
            |t| Some([-((t.clamp(2, 8) - 2) as f64) * 0.4 / 6.0, 0.0]),
            |t| Some([(t.clamp(2, 8) - 2) as f64 * 0.4 / 6.0, 0.0]),
        );
        assert_eq!(
            transition_action(&s, &tr(), &Default::default()),
            Some(Action::concurrent(
                Action::atomic(AtomicAction::Move(Articulator::Right, Direction::W)),
                Action::atomic(AtomicAction::Move(Articulator::Left, Direction::E)),
            ))
        );
    }

    #[test]
    fn oscillation_is_thrill() {
        let osc = |t: usize| {
            let x = if (3..=8).contains(&t) && t % 2 == 1 { 0.01 } else { -0.01 };
            Some([x, 0.0])
        };
        // Frames outside the transition stay put so only 3..=8 oscillate.
        let s = moving(osc, osc);
        assert_eq!(
            transition_action(&s, &tr(), &Default::default()),
            Some(Action::concurrent(
                Action::atomic(AtomicAction::Thrill(Articulator::Right)),
                Action::atomic(AtomicAction::Thrill(Articulator::Left)),
            ))
        );
    }

    #[test]
    fn slow_drift_is_nothing() {
        let s = moving(|t| Some([t as f64 * 0.001, 0.0]), |_| None);
        assert_eq!(transition_action(&s, &tr(), &Default::default()), None);
    }
}
