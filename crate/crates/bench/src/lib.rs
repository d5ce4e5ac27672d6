//! Workload generators for the benchmarks.

use pdlsl::ast::{Action, AtomicAction, Formula};
use pdlsl::extract::{HandSample, TrackingFrame, TrackingSequence};
use pdlsl::model::{ModelBuilder, UtteranceModel};
use pdlsl::{Articulator, Direction, Vec2};

/// A chain of `n` states, each linked to the next by a right-hand move north
/// and back to the start by a thrill, so closures fill the whole relation.
pub fn ring_model(n: usize) -> UtteranceModel {
    let mut b = ModelBuilder::new(n);
    for s in 0..n {
        b = b.action(AtomicAction::Move(Articulator::Right, Direction::N), s, (s + 1) % n);
    }
    b.action(AtomicAction::Thrill(Articulator::Left), n - 1, 0).build().expect("ring is serial")
}

/// `[(move(R,N) | thrill(L))*] ... ` nested `depth` times around `touch(R,L)`.
pub fn nested_box(depth: usize) -> Formula {
    let step = Action::star(Action::choice(
        Action::atomic(AtomicAction::Move(Articulator::Right, Direction::N)),
        Action::atomic(AtomicAction::Thrill(Articulator::Left)),
    ));
    let mut f = Formula::atom(pdlsl::Atom::Touch(Articulator::Right, Articulator::Left));
    for _ in 0..depth {
        f = Formula::boxed(step.clone(), Formula::not(f));
    }
    f
}

/// `postures` holds of 8 frames joined by 8-frame moves of both hands.
pub fn long_sequence(postures: usize) -> TrackingSequence {
    let mut frames = Vec::new();
    let mut x = 0.0;
    for p in 0..postures {
        for _ in 0..8 {
            frames.push((x, p));
        }
        if p + 1 < postures {
            for _ in 0..8 {
                x += if p % 2 == 0 { 0.05 } else { -0.05 };
                frames.push((x, p));
            }
        }
    }
    let frames = frames
        .into_iter()
        .enumerate()
        .map(|(t, (x, _))| TrackingFrame {
            t: t as u64,
            head: Some(Vec2::new(0.0, 1.2)),
            torso: None,
            right: HandSample { pos: Some(Vec2::new(0.2 + x, 0.3)), ..Default::default() },
            left: HandSample { pos: Some(Vec2::new(-0.2 - x, 0.3)), ..Default::default() },
        })
        .collect();
    TrackingSequence::new(frames, 25.0, false)
}
