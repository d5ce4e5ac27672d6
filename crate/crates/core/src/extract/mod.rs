//! From tracking data to utterance models.
//!
//! The pipeline is: parse the tracking document, normalize every point into
//! the body frame, repair simple tracking errors, split the sequence into key
//! postures and transitions, value the atoms of each posture, label each
//! transition with the movements it contains, and assemble the serial LTS.

mod build;
mod segment;
mod tracking;
mod validate;
mod valuation;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primitives::Articulator;

pub use build::{build_model, extract, ExtractOptions, Extraction, TransitionLabel};
pub use segment::{compute_velocities, segment, Segment, SegmentKind, Velocities};
pub use tracking::{normalize_sequence, FrameConfig, HandSample, TrackingError, TrackingFrame, TrackingSequence};
pub use validate::validate;
pub use valuation::{posture_valuation, representative_frame, transition_action};

/// Thresholds for segmentation and atom synthesis. Distances are in body
/// units, speeds in body units per frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SegmentationParams {
    /// A hand is still when its speed is below this.
    pub tau_still: f64,
    /// Minimum run of still frames that makes a key posture.
    pub min_still: usize,
    /// Hands closer than this touch.
    pub tau_touch: f64,
    /// Distances in `[tau_touch, tau_touch + band)` leave touch undetermined.
    pub touch_unknown_band: f64,
    /// Window, in frames, over which direction reversals are counted.
    pub thrill_window: usize,
    /// Net displacement at or above which a transition is a directed move.
    pub thrill_net_disp: f64,
    pub thrill_min_reversals: usize,
    /// Per-frame displacement above this is treated as a tracker glitch.
    pub max_jump: f64,
}

impl Default for SegmentationParams {
    fn default() -> Self {
        SegmentationParams {
            tau_still: 0.02,
            min_still: 3,
            tau_touch: 0.05,
            touch_unknown_band: 0.05,
            thrill_window: 5,
            thrill_net_disp: 0.03,
            thrill_min_reversals: 2,
            max_jump: 0.5,
        }
    }
}

impl SegmentationParams {
    pub fn check(&self) -> Result<(), ExtractError> {
        let positive = [
            ("tau_still", self.tau_still),
            ("tau_touch", self.tau_touch),
            ("thrill_net_disp", self.thrill_net_disp),
            ("max_jump", self.max_jump),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ExtractError::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.touch_unknown_band >= 0.0 && self.touch_unknown_band.is_finite()) {
            return Err(ExtractError::InvalidParams("touch_unknown_band must be non-negative".into()));
        }
        for (name, v) in [("min_still", self.min_still), ("thrill_window", self.thrill_window)] {
            if v == 0 {
                return Err(ExtractError::InvalidParams(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtractError {
    #[error("tracking sequence has no frames")]
    EmptySequence,
    #[error("frame index {t} at position {position} is not after {previous}")]
    NonMonotoneTimestamps { position: usize, t: u64, previous: u64 },
    #[error("segmentation produced no key posture")]
    NoKeyPosture,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl ExtractError {
    pub fn code(&self) -> &'static str {
        match self {
            ExtractError::EmptySequence => "EmptySequence",
            ExtractError::NonMonotoneTimestamps { .. } => "NonMonotoneTimestamps",
            ExtractError::NoKeyPosture => "NoKeyPosture",
            ExtractError::InvalidParams(_) => "InvalidParams",
        }
    }
}

/// Machine-readable note about repaired or degraded input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "code")]
pub enum Diagnostic {
    /// A hand position jumped further than `max_jump` and was voided.
    Teleport { frame: u64, hand: Articulator },
    /// A frame repeated the previous frame index and was dropped.
    DuplicateFrame { frame: u64 },
    /// No head was tracked at this frame; the previous body frame was reused.
    HeadMissing { frame: u64 },
    /// No head was ever tracked; coordinates were used as given.
    NoBodyReference,
}

impl Diagnostic {
    pub fn frame(&self) -> Option<u64> {
        match self {
            Diagnostic::Teleport { frame, .. }
            | Diagnostic::DuplicateFrame { frame }
            | Diagnostic::HeadMissing { frame } => Some(*frame),
            Diagnostic::NoBodyReference => None,
        }
    }
}
