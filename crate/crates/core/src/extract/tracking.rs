//! Tracking documents and body-frame normalization.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{normalize, BodyFrame, Point2D, Vec2};
use crate::model::json_pointer;
use crate::primitives::{Articulator, Direction, HandConfig};

use super::Diagnostic;

pub const TRACKING_FORMAT: u32 = 1;

/// One hand at one frame. Absent fields encode tracker dropout.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HandSample {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<Point2D>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<HandConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orient: Option<Direction>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrackingFrame {
    pub t: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<Point2D>,
    /// Optional torso reference; when present it is the body-frame origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torso: Option<Point2D>,
    #[serde(default)]
    pub right: HandSample,
    #[serde(default)]
    pub left: HandSample,
}

impl TrackingFrame {
    /// Panics on `Dominant`/`Weak`; frames only know concrete hands.
    pub fn hand(&self, hand: Articulator) -> &HandSample {
        match hand {
            Articulator::Right => &self.right,
            Articulator::Left => &self.left,
            alias => panic!("tracking frames have no {alias} hand"),
        }
    }

    pub fn hand_mut(&mut self, hand: Articulator) -> &mut HandSample {
        match hand {
            Articulator::Right => &mut self.right,
            Articulator::Left => &mut self.left,
            alias => panic!("tracking frames have no {alias} hand"),
        }
    }

    pub fn pos(&self, hand: Articulator) -> Option<Point2D> {
        self.hand(hand).pos
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrackingSequence {
    #[serde(default = "default_format")]
    pub format: u32,
    pub fps: f64,
    #[serde(default)]
    pub mirrored: bool,
    pub frames: Vec<TrackingFrame>,
}

fn default_format() -> u32 {
    TRACKING_FORMAT
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrackingError {
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{pointer}: coordinates must be finite")]
    NonFinite { pointer: String },
    #[error("/fps: must be positive, got {0}")]
    BadFps(f64),
    #[error("/format: unsupported tracking format {0}")]
    Format(u32),
    #[error("/frames: sequence has no frames")]
    Empty,
}

impl TrackingSequence {
    pub fn new(frames: Vec<TrackingFrame>, fps: f64, mirrored: bool) -> Self {
        TrackingSequence { format: TRACKING_FORMAT, fps, mirrored, frames }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self, TrackingError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let seq: TrackingSequence = serde_path_to_error::deserialize(de)
            .map_err(|e| TrackingError::Schema { pointer: json_pointer(e.path()), message: e.inner().to_string() })?;
        seq.check()?;
        Ok(seq)
    }

    /// One frame per line, so files diff well.
    pub fn to_json(&self) -> String {
        let fps = serde_json::to_string(&self.fps).expect("finite fps");
        let mut s = format!(
            "{{\n  \"format\": {},\n  \"fps\": {fps},\n  \"mirrored\": {},\n  \"frames\": [\n",
            self.format, self.mirrored
        );
        for (i, f) in self.frames.iter().enumerate() {
            s.push_str("    ");
            s.push_str(&serde_json::to_string(f).expect("frame serializes"));
            s.push_str(if i + 1 < self.frames.len() { ",\n" } else { "\n" });
        }
        s.push_str("  ]\n}\n");
        s
    }

    /// Checks invariants that the schema alone does not express.
    pub fn check(&self) -> Result<(), TrackingError> {
        if self.format != TRACKING_FORMAT {
            return Err(TrackingError::Format(self.format));
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return Err(TrackingError::BadFps(self.fps));
        }
        if self.frames.is_empty() {
            return Err(TrackingError::Empty);
        }
        for (i, f) in self.frames.iter().enumerate() {
            let points = [("head", f.head), ("torso", f.torso), ("right/pos", f.right.pos), ("left/pos", f.left.pos)];
            for (name, p) in points {
                if p.is_some_and(|p| !p.is_finite()) {
                    return Err(TrackingError::NonFinite { pointer: format!("/frames/{i}/{name}") });
                }
            }
        }
        Ok(())
    }
}

/// How raw tracker coordinates map into body units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrameConfig {
    /// Raw units per body unit. When unset, derived from the first frame that
    /// has both head and torso, or 1.0.
    pub scale: Option<f64>,
    /// Height of the head centre above the torso origin, in body units.
    pub head_height: f64,
}

impl Default for FrameConfig {
    fn default() -> Self {
        FrameConfig { scale: None, head_height: 1.2 }
    }
}

/// Rewrites every point of `seq` into the body frame (torso origin, y up,
/// head at `head_height`). Absent heads reuse the previous frame's origin.
pub fn normalize_sequence(
    seq: &TrackingSequence,
    cfg: &FrameConfig,
    mirrored: bool,
) -> (TrackingSequence, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    let scale = cfg
        .scale
        .filter(|s| *s > 0.0 && s.is_finite())
        .or_else(|| {
            seq.frames.iter().find_map(|f| match (f.head, f.torso) {
                (Some(h), Some(t)) if h != t && cfg.head_height > 0.0 => Some(h.distance(t) / cfg.head_height),
                _ => None,
            })
        })
        .unwrap_or(1.0);

    let origin_of = |f: &TrackingFrame| -> Option<Point2D> {
        f.torso.or_else(|| f.head.map(|h| h - Vec2::new(0.0, cfg.head_height * scale)))
    };

    let any_reference = seq.frames.iter().any(|f| origin_of(f).is_some());
    if !any_reference {
        diags.push(Diagnostic::NoBodyReference);
    }

    let mut current = if any_reference {
        seq.frames.iter().find_map(origin_of).map(|o| BodyFrame::new(o, scale).unwrap_or_else(BodyFrame::identity))
    } else {
        Some(BodyFrame::identity())
    };

    let mut out = seq.clone();
    out.mirrored = false;
    for f in &mut out.frames {
        match origin_of(f) {
            Some(o) => current = BodyFrame::new(o, scale).or(current),
            None if any_reference => diags.push(Diagnostic::HeadMissing { frame: f.t }),
            None => {}
        }
        let frame = current.unwrap_or_else(BodyFrame::identity);
        let map = |p: Option<Point2D>| p.map(|p| normalize(p, &frame, mirrored));
        f.head = map(f.head);
        f.torso = map(f.torso);
        f.right.pos = map(f.right.pos);
        f.left.pos = map(f.left.pos);
    }
    (out, diags)
}
