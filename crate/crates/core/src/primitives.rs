//! Sign language primitives: articulators, directions, handedness and the
//! open label vocabularies for places and hand configurations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A body articulator. `Dominant` and `Weak` are aliases that grounding
/// resolves to a concrete hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Articulator {
    #[serde(rename = "D")]
    Dominant,
    #[serde(rename = "W")]
    Weak,
    #[serde(rename = "R")]
    Right,
    #[serde(rename = "L")]
    Left,
}

impl Articulator {
    pub const ALL: [Articulator; 4] = [Articulator::Dominant, Articulator::Weak, Articulator::Right, Articulator::Left];

    /// The two concrete hands, in the order used for iteration.
    pub const HANDS: [Articulator; 2] = [Articulator::Right, Articulator::Left];

    pub fn is_alias(self) -> bool {
        matches!(self, Articulator::Dominant | Articulator::Weak)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Articulator::Dominant => "D",
            Articulator::Weak => "W",
            Articulator::Right => "R",
            Articulator::Left => "L",
        }
    }

    /// Maps `Dominant`/`Weak` to a concrete hand; `Right`/`Left` are returned as is.
    pub fn resolve(self, handedness: Handedness) -> Articulator {
        match (self, handedness) {
            (Articulator::Dominant, Handedness::RightDominant) | (Articulator::Weak, Handedness::LeftDominant) => {
                Articulator::Right
            }
            (Articulator::Dominant, Handedness::LeftDominant) | (Articulator::Weak, Handedness::RightDominant) => {
                Articulator::Left
            }
            (concrete, _) => concrete,
        }
    }
}

impl fmt::Display for Articulator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Articulator {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "D" => Ok(Articulator::Dominant),
            "W" => Ok(Articulator::Weak),
            "R" => Ok(Articulator::Right),
            "L" => Ok(Articulator::Left),
            _ => Err(()),
        }
    }
}

/// One of the eight compass directions in the signer frame
/// (x grows to the right, y grows upward).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl Direction {
    /// Canonical order. Ties in direction classification go to the earliest entry.
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::NE,
        Direction::E,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::W,
        Direction::NW,
    ];

    pub fn unit_vector(self) -> (f64, f64) {
        let d = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Direction::N => (0.0, 1.0),
            Direction::NE => (d, d),
            Direction::E => (1.0, 0.0),
            Direction::SE => (d, -d),
            Direction::S => (0.0, -1.0),
            Direction::SW => (-d, -d),
            Direction::W => (-1.0, 0.0),
            Direction::NW => (-d, d),
        }
    }

    /// Same direction with the abscissa inverted.
    pub fn mirror(self) -> Direction {
        match self {
            Direction::N => Direction::N,
            Direction::NE => Direction::NW,
            Direction::E => Direction::W,
            Direction::SE => Direction::SW,
            Direction::S => Direction::S,
            Direction::SW => Direction::SE,
            Direction::W => Direction::E,
            Direction::NW => Direction::NE,
        }
    }

    /// Direction as written for right-dominant signers, mirrored for left-dominant ones.
    pub fn resolve(self, handedness: Handedness) -> Direction {
        match handedness {
            Handedness::RightDominant => self,
            Handedness::LeftDominant => self.mirror(),
        }
    }

    pub fn opposite(self) -> Direction {
        Direction::ALL[(self.index() + 4) % 8]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::N => "N",
            Direction::NE => "NE",
            Direction::E => "E",
            Direction::SE => "SE",
            Direction::S => "S",
            Direction::SW => "SW",
            Direction::W => "W",
            Direction::NW => "NW",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Direction {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Direction::ALL.iter().copied().find(|d| d.symbol() == s).ok_or(())
    }
}

/// Which hand the signer uses as dominant. Fixed for a whole run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Handedness {
    #[default]
    RightDominant,
    LeftDominant,
}

impl Handedness {
    pub const ALL: [Handedness; 2] = [Handedness::RightDominant, Handedness::LeftDominant];
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Handedness::RightDominant => "right-dominant",
            Handedness::LeftDominant => "left-dominant",
        })
    }
}

macro_rules! label_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(label: impl Into<String>) -> Self {
                $name(label.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }
    };
}

label_newtype!(
    /// Name of a place of articulation, e.g. `FACE` or `R_SIDEOFBODY`.
    PlaceName
);

label_newtype!(
    /// Opaque hand configuration label (`CLAMP`, `KEY_CONFIG`, ...). Compared by exact string equality.
    HandConfig
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_examples() {
        assert_eq!(Direction::E.mirror(), Direction::W);
        assert_eq!(Direction::N.mirror(), Direction::N);
        assert_eq!(Direction::NE.mirror(), Direction::NW);
    }

    #[test]
    fn mirror_negates_x_component() {
        for d in Direction::ALL {
            let (x, y) = d.unit_vector();
            let (mx, my) = d.mirror().unit_vector();
            assert_eq!((mx, my), (-x + 0.0, y), "{d}");
            assert_eq!(d.mirror().mirror(), d);
        }
    }

    #[test]
    fn resolve_direction_examples() {
        assert_eq!(Direction::E.resolve(Handedness::RightDominant), Direction::E);
        assert_eq!(Direction::E.resolve(Handedness::LeftDominant), Direction::W);
        assert_eq!(Direction::S.resolve(Handedness::LeftDominant), Direction::S);
    }

    #[test]
    fn resolve_articulator_examples() {
        use Articulator::*;
        assert_eq!(Dominant.resolve(Handedness::RightDominant), Right);
        assert_eq!(Weak.resolve(Handedness::LeftDominant), Right);
        assert_eq!(Left.resolve(Handedness::RightDominant), Left);
        assert_eq!(Weak.resolve(Handedness::RightDominant), Left);
        assert_eq!(Dominant.resolve(Handedness::LeftDominant), Left);
    }

    #[test]
    fn adjacent_directions_are_45_degrees_apart() {
        for (i, d) in Direction::ALL.iter().enumerate() {
            let next = Direction::ALL[(i + 1) % 8];
            let (ax, ay) = d.unit_vector();
            let (bx, by) = next.unit_vector();
            let deg = (ax * bx + ay * by).clamp(-1.0, 1.0).acos().to_degrees();
            assert!((deg - 45.0).abs() < 1e-9);
            assert_eq!(d.opposite().opposite(), *d);
        }
    }

    #[test]
    fn symbols_round_trip() {
        for d in Direction::ALL {
            assert_eq!(d.symbol().parse::<Direction>(), Ok(d));
        }
        for a in Articulator::ALL {
            assert_eq!(a.symbol().parse::<Articulator>(), Ok(a));
        }
        assert!("Q".parse::<Direction>().is_err());
    }
}
