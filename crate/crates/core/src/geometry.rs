//! Planar geometry in normalized body coordinates: angles, direction
//! classification, body-frame normalization and places of articulation.

use std::collections::{BTreeSet, HashSet};
use std::ops::{Add, Div, Mul, Sub};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primitives::{Direction, PlaceName};

/// Angles closer than this (in degrees) are treated as a tie.
pub const ANGLE_TIE_EPSILON: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("zero-length vector has no direction")]
    ZeroVector,
    #[error("coincident points have no relative direction")]
    CoincidentPoints,
}

/// A point or displacement in normalized body units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub type Point2D = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn mirror_x(self) -> Vec2 {
        Vec2::new(-self.x, self.y)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Vec2 { x, y }
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl From<Direction> for Vec2 {
    fn from(d: Direction) -> Self {
        let (x, y) = d.unit_vector();
        Vec2 { x, y }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, k: f64) -> Vec2 {
        Vec2::new(self.x / k, self.y / k)
    }
}

/// Unsigned rotation angle between two vectors, in degrees within `[0, 180]`.
pub fn rotation_angle(v1: Vec2, v2: Vec2) -> Result<f64, GeometryError> {
    let (n1, n2) = (v1.norm(), v2.norm());
    if n1 == 0.0 || n2 == 0.0 {
        return Err(GeometryError::ZeroVector);
    }
    let cos = (v1.dot(v2) / (n1 * n2)).clamp(-1.0, 1.0);
    Ok(cos.acos().to_degrees())
}

/// The direction with the smallest rotation angle to `v`; exact ties go to
/// the direction that comes first in [`Direction::ALL`].
pub fn classify_direction(v: Vec2) -> Result<Direction, GeometryError> {
    let mut best: Option<(Direction, f64)> = None;
    for d in Direction::ALL {
        let theta = rotation_angle(v, d.into())?;
        match best {
            Some((_, b)) if theta >= b - ANGLE_TIE_EPSILON => {}
            _ => best = Some((d, theta)),
        }
    }
    Ok(best.expect("eight candidate directions").0)
}

/// Direction of `p1` in a Cartesian system anchored at `p2`.
pub fn relative_direction(p1: Point2D, p2: Point2D) -> Result<Direction, GeometryError> {
    if p1 == p2 {
        return Err(GeometryError::CoincidentPoints);
    }
    classify_direction(p1 - p2)
}

/// Reference origin and scale for turning tracker coordinates into body units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyFrame {
    pub origin: Point2D,
    pub scale: f64,
}

impl BodyFrame {
    pub fn new(origin: Point2D, scale: f64) -> Option<Self> {
        (scale > 0.0 && scale.is_finite() && origin.is_finite()).then_some(BodyFrame { origin, scale })
    }

    pub fn identity() -> Self {
        BodyFrame { origin: Vec2::ZERO, scale: 1.0 }
    }
}

/// Maps a raw tracker point into the body frame; `mirrored` flips the
/// abscissa for camera-facing footage.
pub fn normalize(raw: Point2D, frame: &BodyFrame, mirrored: bool) -> Point2D {
    let p = (raw - frame.origin) / frame.scale;
    if mirrored {
        p.mirror_x()
    } else {
        p
    }
}

/// Closed axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x: [f64; 2],
    pub y: [f64; 2],
}

impl Rect {
    pub const fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Rect { x: [x_min, x_max], y: [y_min, y_max] }
    }

    pub fn contains(&self, p: Point2D) -> bool {
        (self.x[0]..=self.x[1]).contains(&p.x) && (self.y[0]..=self.y[1]).contains(&p.y)
    }

    pub fn center(&self) -> Point2D {
        Vec2::new((self.x[0] + self.x[1]) / 2.0, (self.y[0] + self.y[1]) / 2.0)
    }

    fn is_well_formed(&self) -> bool {
        [self.x[0], self.x[1], self.y[0], self.y[1]].iter().all(|v| v.is_finite())
            && self.x[0] < self.x[1]
            && self.y[0] < self.y[1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Place {
    pub name: PlaceName,
    #[serde(flatten)]
    pub region: Rect,
}

#[derive(Debug, Error)]
pub enum PlaceMapError {
    #[error("duplicate place name `{0}`")]
    DuplicateName(String),
    #[error("place `{0}` needs a rectangle with min < max on both axes")]
    BadRegion(String),
    #[error("cannot read place map {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid place map: {0}")]
    Syntax(#[from] toml::de::Error),
}

/// Named regions of the body plane. Regions may overlap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaceMap {
    #[serde(rename = "place")]
    places: Vec<Place>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaceMapFile {
    #[serde(rename = "place", default)]
    places: Vec<Place>,
}

impl PlaceMap {
    pub fn new(places: Vec<Place>) -> Result<Self, PlaceMapError> {
        let mut seen = HashSet::new();
        for p in &places {
            if !p.region.is_well_formed() {
                return Err(PlaceMapError::BadRegion(p.name.to_string()));
            }
            if !seen.insert(p.name.clone()) {
                return Err(PlaceMapError::DuplicateName(p.name.to_string()));
            }
        }
        Ok(PlaceMap { places })
    }

    /// TOML with one `[[place]]` table per region (`name`, `x = [min, max]`, `y = [min, max]`).
    pub fn from_toml_str(text: &str) -> Result<Self, PlaceMapError> {
        let file: PlaceMapFile = toml::from_str(text)?;
        PlaceMap::new(file.places)
    }

    pub fn load(path: &Path) -> Result<Self, PlaceMapError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| PlaceMapError::Io { path: path.display().to_string(), source })?;
        PlaceMap::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("place map serializes")
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn get(&self, name: &str) -> Option<&Place> {
        self.places.iter().find(|p| p.name.as_str() == name)
    }

    /// Every place whose rectangle contains `p`, boundaries included.
    pub fn places_containing(&self, p: Point2D) -> BTreeSet<PlaceName> {
        self.places.iter().filter(|pl| pl.region.contains(p)).map(|pl| pl.name.clone()).collect()
    }
}

impl Default for PlaceMap {
    /// Stand-in layout in body units (torso origin, y up). Override with a file for real data.
    fn default() -> Self {
        let places = [
            ("HEAD", Rect::new(-0.35, 0.35, 0.8, 1.6)),
            ("FACE", Rect::new(-0.3, 0.3, 0.9, 1.5)),
            ("R_SIDEOFHEAD", Rect::new(0.05, 0.6, 0.8, 1.6)),
            ("L_SIDEOFHEAD", Rect::new(-0.6, -0.05, 0.8, 1.6)),
            ("NECK", Rect::new(-0.2, 0.2, 0.6, 0.9)),
            ("CHEST", Rect::new(-0.5, 0.5, 0.1, 0.7)),
            ("TORSE", Rect::new(-0.6, 0.6, -0.5, 0.7)),
            ("CENTEROFBODY", Rect::new(-0.2, 0.2, -0.5, 0.7)),
            ("R_SIDEOFBODY", Rect::new(0.2, 1.2, -0.5, 0.7)),
            ("L_SIDEOFBODY", Rect::new(-1.2, -0.2, -0.5, 0.7)),
            ("NEUTRAL", Rect::new(-0.7, 0.7, -0.2, 0.6)),
        ]
        .into_iter()
        .map(|(name, region)| Place { name: name.into(), region })
        .collect();
        PlaceMap::new(places).expect("default place map is well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn rotation_angle_examples() {
        assert!(close(rotation_angle(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap(), 90.0));
        assert!(close(rotation_angle(Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)).unwrap(), 0.0));
        assert!(close(rotation_angle(Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0)).unwrap(), 45.0));
        assert_eq!(rotation_angle(Vec2::ZERO, Vec2::new(1.0, 0.0)), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_direction(Vec2::new(1.0, 1.0)), Ok(Direction::NE));
        // angle to E is atan(0.2) ~ 11.3 degrees, next best NE at ~33.7
        assert_eq!(classify_direction(Vec2::new(0.5, 0.1)), Ok(Direction::E));
        let r = 22.5f64.to_radians();
        assert_eq!(classify_direction(Vec2::new(r.cos(), r.sin())), Ok(Direction::NE));
        assert_eq!(classify_direction(Vec2::ZERO), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn ties_follow_canonical_order() {
        // halfway between N and NE
        let r = 67.5f64.to_radians();
        assert_eq!(classify_direction(Vec2::new(r.cos(), r.sin())), Ok(Direction::N));
        // halfway between W and NW: NW is later in the order than W
        let r = 157.5f64.to_radians();
        assert_eq!(classify_direction(Vec2::new(r.cos(), r.sin())), Ok(Direction::W));
    }

    #[test]
    fn unit_vectors_classify_to_themselves() {
        for d in Direction::ALL {
            assert_eq!(classify_direction(d.into()), Ok(d));
        }
    }

    #[test]
    fn relative_direction_examples() {
        let o = Vec2::ZERO;
        let p = Vec2::new(1.0, 1.0);
        assert_eq!(relative_direction(p, o), Ok(Direction::NE));
        assert_eq!(relative_direction(o, p), Ok(Direction::SW));
        assert_eq!(relative_direction(Vec2::new(0.2, 0.9), Vec2::new(0.6, 0.9)), Ok(Direction::W));
        assert_eq!(relative_direction(p, p), Err(GeometryError::CoincidentPoints));
    }

    #[test]
    fn normalize_examples() {
        let frame = BodyFrame::new(Vec2::new(5.0, 7.0), 2.0).unwrap();
        assert_eq!(normalize(Vec2::new(5.0, 7.0), &frame, false), Vec2::ZERO);
        assert_eq!(normalize(Vec2::new(7.0, 7.0), &frame, false), Vec2::new(1.0, 0.0));
        assert_eq!(normalize(Vec2::new(7.0, 7.0), &frame, true), Vec2::new(-1.0, 0.0));
        assert!(BodyFrame::new(Vec2::ZERO, 0.0).is_none());
    }

    #[test]
    fn places_containing_examples() {
        let map = PlaceMap::default();
        let torse = map.get("TORSE").unwrap().region.center();
        assert!(map.places_containing(torse).contains(&PlaceName::from("TORSE")));
        assert!(map.places_containing(Vec2::new(5.0, 5.0)).is_empty());

        let shared = PlaceMap::new(vec![
            Place { name: "CENTEROFBODY".into(), region: Rect::new(-0.2, 0.2, -0.5, 0.7) },
            Place { name: "L_SIDEOFBODY".into(), region: Rect::new(-1.2, -0.2, -0.5, 0.7) },
        ])
        .unwrap();
        let hits = shared.places_containing(Vec2::new(-0.2, 0.0));
        assert_eq!(hits.len(), 2);
    }

    #[test]
    fn place_map_rejects_bad_input() {
        let dup = vec![
            Place { name: "A".into(), region: Rect::new(0.0, 1.0, 0.0, 1.0) },
            Place { name: "A".into(), region: Rect::new(0.0, 1.0, 0.0, 1.0) },
        ];
        assert!(matches!(PlaceMap::new(dup), Err(PlaceMapError::DuplicateName(_))));
        let flat = vec![Place { name: "A".into(), region: Rect::new(0.0, 0.0, 0.0, 1.0) }];
        assert!(matches!(PlaceMap::new(flat), Err(PlaceMapError::BadRegion(_))));
    }

    #[test]
    fn place_map_toml_round_trip() {
        let map = PlaceMap::default();
        let text = map.to_toml_string();
        assert_eq!(PlaceMap::from_toml_str(&text).unwrap(), map);
        assert!(PlaceMap::from_toml_str("[[place]]\nname = \"A\"\nx = [0, 1]\ny = [0, 1]\ncolour = 3\n").is_err());
    }

    fn nonzero() -> impl Strategy<Value = Vec2> {
        (-10.0f64..10.0, -10.0f64..10.0)
            .prop_filter("non-zero", |(x, y)| x.hypot(*y) > 1e-6)
            .prop_map(|(x, y)| Vec2::new(x, y))
    }

    fn on_tie_boundary(v: Vec2) -> bool {
        let deg = v.y.atan2(v.x).to_degrees().rem_euclid(45.0);
        (deg - 22.5).abs() < 1e-6
    }

    proptest! {
        #[test]
        fn angle_symmetric_and_bounded(a in nonzero(), b in nonzero()) {
            let ab = rotation_angle(a, b).unwrap();
            prop_assert!((ab - rotation_angle(b, a).unwrap()).abs() < 1e-9);
            prop_assert!((0.0..=180.0).contains(&ab));
            prop_assert!(rotation_angle(a, a).unwrap() < 1e-5);
        }

        #[test]
        fn angle_scale_invariant(a in nonzero(), b in nonzero(), k in 0.01f64..100.0) {
            let base = rotation_angle(a, b).unwrap();
            prop_assert!((base - rotation_angle(a * k, b).unwrap()).abs() < 1e-6);
        }

        #[test]
        fn classify_commutes_with_mirror(v in nonzero()) {
            prop_assume!(!on_tie_boundary(v));
            prop_assert_eq!(
                classify_direction(v.mirror_x()).unwrap(),
                classify_direction(v).unwrap().mirror()
            );
        }

        #[test]
        fn relative_direction_antisymmetric(a in nonzero(), b in nonzero()) {
            prop_assume!(a.distance(b) > 1e-6 && !on_tie_boundary(a - b));
            prop_assert_eq!(
                relative_direction(a, b).unwrap(),
                relative_direction(b, a).unwrap().opposite()
            );
        }

        #[test]
        fn containment_monotone(x in -2.0f64..2.0, y in -2.0f64..2.0, grow in 0.0f64..1.0) {
            let small = Rect::new(-0.5, 0.5, -0.5, 0.5);
            let big = Rect::new(-0.5 - grow, 0.5 + grow, -0.5 - grow, 0.5 + grow);
            let p = Vec2::new(x, y);
            prop_assert!(!small.contains(p) || big.contains(p));
        }
    }
}
