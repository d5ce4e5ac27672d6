//! Synthetic inputs shared by tests, benchmarks and the shipped example files.

use crate::ast::{Atom, AtomicAction};
use crate::extract::{HandSample, TrackingFrame, TrackingSequence};
use crate::geometry::Vec2;
use crate::model::{ModelBuilder, ThreeVal, UtteranceModel};
use crate::primitives::{Articulator, Direction, HandConfig};

/// ROUTE in French Sign Language: both hands in the clamp shape touch in
/// front of the face, then the right hand moves west and the left east until
/// they are apart, keeping their shape.
pub const ROUTE_FORMULA: &str =
    "(at(R,FACE) /\\ at(L,FACE) /\\ dir(L,R,E) /\\ cfg(R,CLAMP) /\\ cfg(L,CLAMP) /\\ touch(R,L)) \
     -> [move(R,W) & move(L,E)](dir(L,R,E) /\\ cfg(R,CLAMP) /\\ cfg(L,CLAMP) /\\ !touch(R,L))";

pub fn route_lexicon_text() -> String {
    format!("format: 1\n\n# hands touch at the face, then separate horizontally\nsign ROUTE :=\n  {ROUTE_FORMULA} .\n")
}

/// Two states: the touching posture and the separated one, joined by the
/// concurrent west/east movement; the second state loops for seriality.
pub fn route_model() -> UtteranceModel {
    use Articulator::{Left, Right};
    let clamp = || HandConfig::from("CLAMP");
    let both = [Right, Left];
    let mut b = ModelBuilder::new(2)
        .action(AtomicAction::Move(Right, Direction::W), 0, 1)
        .action(AtomicAction::Move(Left, Direction::E), 0, 1)
        .edge(1, 1)
        .observe(0, &both)
        .observe(1, &both);
    for s in 0..2 {
        b = b
            .atom(s, Atom::RelDir { first: Left, dir: Direction::E, second: Right }, ThreeVal::True)
            .atom(s, Atom::Config(Right, clamp()), ThreeVal::True)
            .atom(s, Atom::Config(Left, clamp()), ThreeVal::True)
            .atom(s, Atom::At(Right, "FACE".into()), ThreeVal::True)
            .atom(s, Atom::At(Left, "FACE".into()), ThreeVal::True);
    }
    b.atom(0, Atom::Touch(Right, Left), ThreeVal::True)
        .atom(1, Atom::Touch(Right, Left), ThreeVal::False)
        .build()
        .expect("route model is well formed")
}

/// Rounds to micro-units so the shipped JSON files stay readable.
fn micro(p: [f64; 2]) -> Vec2 {
    let r = |v: f64| (v * 1e6).round() / 1e6;
    Vec2::new(r(p[0]), r(p[1]))
}

fn frame(t: usize, right: Option<[f64; 2]>, left: Option<[f64; 2]>, config: Option<&str>) -> TrackingFrame {
    let sample =
        |pos: Option<[f64; 2]>| HandSample { pos: pos.map(micro), config: config.map(HandConfig::from), orient: None };
    TrackingFrame {
        t: t as u64,
        head: Some(Vec2::new(0.0, 1.2)),
        torso: None,
        right: sample(right),
        left: sample(left),
    }
}

/// Thirty frames realizing ROUTE: hands touching at the face (0-9), moving
/// apart at 0.025 per frame (10-19), held apart (20-29). The head sits at the
/// body-frame position, so tracker and body coordinates coincide.
pub fn route_tracking() -> TrackingSequence {
    let frames = (0..30)
        .map(|t| {
            let k = (t as f64 - 9.0).clamp(0.0, 10.0);
            let dx = 0.015 + 0.025 * k;
            frame(t, Some([-dx, 1.2]), Some([dx, 1.2]), Some("CLAMP"))
        })
        .collect();
    TrackingSequence::new(frames, 25.0, false)
}

/// [`route_tracking`] with the tracker's shape labels missing.
pub fn route_tracking_without_configs() -> TrackingSequence {
    let mut seq = route_tracking();
    for f in &mut seq.frames {
        f.right.config = None;
        f.left.config = None;
    }
    seq
}

/// [`route_tracking`] with the right hand lost during the first posture.
pub fn route_tracking_right_dropout() -> TrackingSequence {
    let mut seq = route_tracking();
    for f in &mut seq.frames[..10] {
        f.right = HandSample::default();
    }
    seq
}

/// [`route_tracking`] with a one-frame tracker spike on the left hand.
pub fn route_tracking_teleport() -> TrackingSequence {
    let mut seq = route_tracking();
    seq.frames[22].left.pos = Some(Vec2::new(1.5, 0.2));
    seq
}

/// 0-9 still, 10-19 the left hand moves north-east at 0.05 per frame, 20-29 still.
pub fn thirty_frames() -> TrackingSequence {
    let step = 0.05 * std::f64::consts::FRAC_1_SQRT_2;
    let frames = (0..30)
        .map(|t| {
            let k = (t as f64 - 9.0).clamp(0.0, 10.0);
            frame(t, Some([0.3, 0.3]), Some([-0.3 + k * step, 0.3 + k * step]), None)
        })
        .collect();
    TrackingSequence::new(frames, 25.0, false)
}

/// Five held postures; the hands shake between the second and the third,
/// which are the same posture, so the model has four states and a thrill
/// self-loop on the second one.
pub fn thrill_sequence() -> TrackingSequence {
    let postures = [(0.3, -0.3), (0.6, -0.6), (0.6, -0.6), (0.6, 0.0), (0.0, -0.3)];
    let (hold, moves) = (6, 6);
    let mut pts: Vec<([f64; 2], [f64; 2])> = Vec::new();
    for (i, &(r, l)) in postures.iter().enumerate() {
        pts.extend(std::iter::repeat_n(([r, 0.2], [l, 0.2]), hold));
        let Some(&(nr, nl)) = postures.get(i + 1) else { break };
        for k in 1..=moves {
            if nr == r && nl == l {
                let d = if k % 2 == 1 { 0.025 } else { -0.025 };
                pts.push(([r + d, 0.2], [l - d, 0.2]));
            } else {
                let f = k as f64 / (moves + 1) as f64;
                pts.push(([r + (nr - r) * f, 0.2], [l + (nl - l) * f, 0.2]));
            }
        }
    }
    let frames = pts.into_iter().enumerate().map(|(t, (r, l))| frame(t, Some(r), Some(l), None)).collect();
    TrackingSequence::new(frames, 25.0, false)
}
