use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Player;
use crate::Error;

/// Family classes used by the selection games.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    /// Open covers.
    Cover,
    /// Families of open sets with dense union.
    DenseUnion,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Cover => "Cover",
            Class::DenseUnion => "DenseUnion",
        })
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cover" | "o" => Ok(Class::Cover),
            "denseunion" | "dense-union" | "dense" | "od" => Ok(Class::DenseUnion),
            other => Err(Error::Unsupported(format!("unknown family class {other:?}"))),
        }
    }
}

/// The games.
///
/// * `SelCover(A, B)`: I plays an `A`-family, II picks one member; II wins
///   if the picks form a `B`-family.
/// * `SelCoverFin(A, B)`: as above with finitely many members per inning.
/// * `SPlus`: I plays a dense open set, II a point of it; II wins if the
///   points are dense. `SPlusFin` lets II pick finitely many points.
/// * `DGame`: I plays a dense set, II a point of it; II wins if the points
///   are dense.
/// * `PointOpen`: I plays a nonempty open set, II a point of it; I wins if
///   the points are dense.
/// * `OpenPicking`: I plays a point, II an open set containing it; I wins
///   if the union of II's open sets is dense.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameKind {
    SelCover(Class, Class),
    SelCoverFin(Class, Class),
    SPlus,
    SPlusFin,
    DGame,
    PointOpen,
    OpenPicking,
}

/// What the accumulated replies of II are tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Union of II's open sets covers the space.
    CoverUnion,
    /// Union of II's open sets is dense.
    DenseUnion,
    /// II's points are dense.
    DensePoints,
}

impl GameKind {
    /// The player who wins when the target is met.
    pub fn target_owner(self) -> Player {
        match self {
            GameKind::PointOpen | GameKind::OpenPicking => Player::I,
            _ => Player::II,
        }
    }

    pub fn target(self) -> Target {
        match self {
            GameKind::SelCover(_, Class::Cover) | GameKind::SelCoverFin(_, Class::Cover) => {
                Target::CoverUnion
            }
            GameKind::SelCover(..) | GameKind::SelCoverFin(..) | GameKind::OpenPicking => {
                Target::DenseUnion
            }
            GameKind::SPlus | GameKind::SPlusFin | GameKind::DGame | GameKind::PointOpen => {
                Target::DensePoints
            }
        }
    }

    pub fn all() -> Vec<GameKind> {
        use Class::*;
        vec![
            GameKind::SelCover(Cover, Cover),
            GameKind::SelCover(Cover, DenseUnion),
            GameKind::SelCover(DenseUnion, Cover),
            GameKind::SelCover(DenseUnion, DenseUnion),
            GameKind::SelCoverFin(Cover, Cover),
            GameKind::SelCoverFin(Cover, DenseUnion),
            GameKind::SelCoverFin(DenseUnion, Cover),
            GameKind::SelCoverFin(DenseUnion, DenseUnion),
            GameKind::SPlus,
            GameKind::SPlusFin,
            GameKind::DGame,
            GameKind::PointOpen,
            GameKind::OpenPicking,
        ]
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameKind::SelCover(a, b) => write!(f, "SelCover({a},{b})"),
            GameKind::SelCoverFin(a, b) => write!(f, "SelCoverFin({a},{b})"),
            GameKind::SPlus => f.write_str("SPlus"),
            GameKind::SPlusFin => f.write_str("SPlusFin"),
            GameKind::DGame => f.write_str("DGame"),
            GameKind::PointOpen => f.write_str("PointOpen"),
            GameKind::OpenPicking => f.write_str("OpenPicking"),
        }
    }
}

impl FromStr for GameKind {
    type Err = Error;

    /// Accepts the display form (`SelCover(Cover,DenseUnion)`) and the short
    /// names `selcover:o,od`, `splus`, `dgame`, `point-open`, `open-picking`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = t.to_ascii_lowercase();
        let selection = |rest: &str| -> Result<(Class, Class), Error> {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| rest.strip_prefix(':'))
                .ok_or_else(|| Error::Unsupported(format!("unknown game {s:?}")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Unsupported(format!("unknown game {s:?}")))?;
            Ok((a.parse()?, b.parse()?))
        };
        if let Some(rest) = lower.strip_prefix("selcoverfin") {
            let (a, b) = selection(rest)?;
            return Ok(GameKind::SelCoverFin(a, b));
        }
        if let Some(rest) = lower.strip_prefix("selcover") {
            let (a, b) = selection(rest)?;
            return Ok(GameKind::SelCover(a, b));
        }
        match lower.as_str() {
            "splus" | "s+" => Ok(GameKind::SPlus),
            "splusfin" => Ok(GameKind::SPlusFin),
            "dgame" | "d" => Ok(GameKind::DGame),
            "pointopen" | "point-open" => Ok(GameKind::PointOpen),
            "openpicking" | "open-picking" => Ok(GameKind::OpenPicking),
            _ => Err(Error::Unsupported(format!("unknown game {s:?}"))),
        }
    }
}

impl Serialize for GameKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GameKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
