use crate::geometry::Point2D;
use crate::primitives::Articulator;

use super::{Diagnostic, ExtractError, SegmentationParams, TrackingSequence};

/// Repairs simple tracking errors: repeated frame indices are dropped and
/// implausible jumps are voided. Decreasing indices cannot be repaired.
///
/// A jump is measured against the last accepted position. After a voided
/// frame, the next position is accepted if it is near either the last
/// accepted position (a one-frame spike) or the voided one (the hand really
/// moved and only the jump frame is lost).
pub fn validate(
    seq: &TrackingSequence,
    p: &SegmentationParams,
) -> Result<(TrackingSequence, Vec<Diagnostic>), ExtractError> {
    if seq.is_empty() {
        return Err(ExtractError::EmptySequence);
    }
    let mut diags = Vec::new();
    let mut out = seq.clone();
    out.frames.clear();

    for (position, frame) in seq.frames.iter().enumerate() {
        if let Some(prev) = out.frames.last() {
            if frame.t == prev.t {
                diags.push(Diagnostic::DuplicateFrame { frame: frame.t });
                continue;
            }
            if frame.t < prev.t {
                return Err(ExtractError::NonMonotoneTimestamps { position, t: frame.t, previous: prev.t });
            }
        }
        out.frames.push(frame.clone());
    }

    for hand in Articulator::HANDS {
        let mut anchor: Option<Point2D> = None;
        let mut pending: Option<Point2D> = None;
        for f in &mut out.frames {
            let Some(pos) = f.pos(hand) else { continue };
            let near = |q: Option<Point2D>| q.is_some_and(|q| pos.distance(q) <= p.max_jump);
            let accept = anchor.is_none() || near(anchor) || near(pending);
            if accept {
                anchor = Some(pos);
                pending = None;
            } else {
                pending = Some(pos);
                f.hand_mut(hand).pos = None;
                diags.push(Diagnostic::Teleport { frame: f.t, hand });
            }
        }
    }
    diags.sort_by_key(|d| d.frame());
    Ok((out, diags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{HandSample, TrackingFrame};
    use crate::geometry::Vec2;

    fn seq(xs: &[(u64, f64)]) -> TrackingSequence {
        let frames = xs
            .iter()
            .map(|&(t, x)| TrackingFrame {
                t,
                right: HandSample { pos: Some(Vec2::new(x, 0.0)), ..Default::default() },
                left: HandSample { pos: Some(Vec2::new(-0.3, 0.0)), ..Default::default() },
                ..Default::default()
            })
            .collect();
        TrackingSequence::new(frames, 25.0, false)
    }

    #[test]
    fn clean_sequence_untouched() {
        let s = seq(&[(0, 0.0), (1, 0.1), (2, 0.2)]);
        let (out, diags) = validate(&s, &SegmentationParams::default()).unwrap();
        assert!(diags.is_empty());
        assert_eq!(out, s);
    }

    #[test]
    fn teleport_voided() {
        let s = seq(&[(0, 0.0), (1, 0.0), (2, 2.0), (3, 0.0)]);
        let (out, diags) = validate(&s, &SegmentationParams::default()).unwrap();
        assert_eq!(diags, vec![Diagnostic::Teleport { frame: 2, hand: Articulator::Right }]);
        assert!(out.frames[2].right.pos.is_none());
        assert!(out.frames[3].right.pos.is_some());
        assert!(out.frames[2].left.pos.is_some());
    }

    #[test]
    fn persistent_relocation_loses_only_the_jump_frame() {
        let s = seq(&[(0, 0.0), (1, 2.0), (2, 2.05), (3, 2.1)]);
        let (out, diags) = validate(&s, &SegmentationParams::default()).unwrap();
        assert_eq!(diags.len(), 1);
        assert!(out.frames[1].right.pos.is_none());
        assert!(out.frames[2].right.pos.is_some() && out.frames[3].right.pos.is_some());
    }

    #[test]
    fn duplicate_dropped() {
        let s = seq(&[(4, 0.0), (5, 0.0), (5, 0.1), (6, 0.0)]);
        let (out, diags) = validate(&s, &SegmentationParams::default()).unwrap();
        assert_eq!(diags, vec![Diagnostic::DuplicateFrame { frame: 5 }]);
        assert_eq!(out.frames.iter().map(|f| f.t).collect::<Vec<_>>(), vec![4, 5, 6]);
        assert_eq!(out.frames[1].right.pos, Some(Vec2::new(0.0, 0.0)));
    }

    #[test]
    fn non_monotone_is_fatal() {
        let s = seq(&[(0, 0.0), (2, 0.0), (1, 0.0)]);
        assert_eq!(
            validate(&s, &SegmentationParams::default()).unwrap_err(),
            ExtractError::NonMonotoneTimestamps { position: 2, t: 1, previous: 2 }
        );
    }
}
