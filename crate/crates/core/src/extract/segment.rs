use serde::Serialize;

use crate::geometry::Vec2;
use crate::primitives::Articulator;

use super::{ExtractError, SegmentationParams, TrackingSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SegmentKind {
    KeyPosture,
    Transition,
}

/// Inclusive range of frame positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub first: usize,
    pub last: usize,
}

impl Segment {
    pub fn key(first: usize, last: usize) -> Self {
        Segment { kind: SegmentKind::KeyPosture, first, last }
    }

    pub fn transition(first: usize, last: usize) -> Self {
        Segment { kind: SegmentKind::Transition, first, last }
    }

    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_key_posture(&self) -> bool {
        self.kind == SegmentKind::KeyPosture
    }
}

/// Per-frame backward-difference velocity of each hand.
#[derive(Debug, Clone, PartialEq)]
pub struct Velocities {
    pub right: Vec<Option<Vec2>>,
    pub left: Vec<Option<Vec2>>,
}

impl Velocities {
    pub fn hand(&self, hand: Articulator) -> &[Option<Vec2>] {
        match hand {
            Articulator::Right => &self.right,
            Articulator::Left => &self.left,
            alias => panic!("no velocity track for {alias}"),
        }
    }
}

/// `v[t] = pos[t] - pos[t-1]`, with `v[0] = 0`. Missing positions leave the
/// velocity missing at that frame and the next.
pub fn compute_velocities(seq: &TrackingSequence) -> Velocities {
    let track = |hand: Articulator| -> Vec<Option<Vec2>> {
        seq.frames
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let here = f.pos(hand)?;
                if i == 0 {
                    return Some(Vec2::ZERO);
                }
                Some(here - seq.frames[i - 1].pos(hand)?)
            })
            .collect()
    };
    Velocities { right: track(Articulator::Right), left: track(Articulator::Left) }
}

/// Splits a sequence into alternating key postures and transitions that
/// together cover every frame, starting and ending with a key posture.
///
/// A frame is still when every hand with a known velocity moves slower than
/// `tau_still`; runs of at least `min_still` still frames become key postures.
/// If the sequence does not start (or end) still, a key posture of up to
/// `min_still` frames is forced at that boundary; when that would leave no
/// room for a transition, the boundary frames join the neighbouring posture.
pub fn segment(seq: &TrackingSequence, p: &SegmentationParams) -> Result<Vec<Segment>, ExtractError> {
    let n = seq.len();
    if n == 0 {
        return Err(ExtractError::EmptySequence);
    }
    let ms = p.min_still.max(1);
    let vel = compute_velocities(seq);
    let still: Vec<bool> = (0..n)
        .map(|i| Articulator::HANDS.iter().all(|&h| vel.hand(h)[i].is_none_or(|v| v.norm() < p.tau_still)))
        .collect();

    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        if !still[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && still[i] {
            i += 1;
        }
        if i - start >= ms {
            keys.push((start, i - 1));
        }
    }

    if keys.is_empty() {
        keys.push((0, ms.min(n) - 1));
    }
    let first = keys[0].0;
    if first > 0 {
        let forced = ms.min(first);
        if forced == first {
            keys[0].0 = 0;
        } else {
            keys.insert(0, (0, forced - 1));
        }
    }
    let last = keys[keys.len() - 1].1;
    if last < n - 1 {
        let available = n - 1 - last;
        let forced = ms.min(available);
        if forced == available {
            keys.last_mut().expect("non-empty").1 = n - 1;
        } else {
            keys.push((n - forced, n - 1));
        }
    }

    let mut out = Vec::with_capacity(keys.len() * 2);
    for (k, &(a, b)) in keys.iter().enumerate() {
        if k > 0 {
            out.push(Segment::transition(keys[k - 1].1 + 1, a - 1));
        }
        out.push(Segment::key(a, b));
    }
    Ok(out)
}
