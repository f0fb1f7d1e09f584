use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use super::kinds::Target;
use super::{GameKind, Move, Player};
use crate::space::{Meet, OpenSet, Space};

const PREVIEW: usize = 8;

/// Serializable form of a move. Families are summarized by their label and
/// first members; II's picks are resolved to the concrete sets they select.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum MoveRecord {
    Cover {
        label: String,
        preview: Vec<OpenSet>,
    },
    Dense {
        label: String,
        preview: Vec<usize>,
    },
    Pick {
        index: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        open: Option<OpenSet>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<usize>,
    },
    PickMany {
        indices: Vec<usize>,
        opens: Vec<OpenSet>,
    },
    Point {
        point: usize,
    },
    Points {
        points: Vec<usize>,
    },
    Open {
        open: OpenSet,
    },
}

impl MoveRecord {
    fn of(mv: &Move, before: Option<&Move>) -> MoveRecord {
        match mv {
            Move::Cover(f) => MoveRecord::Cover {
                label: f.label().to_string(),
                preview: f.prefix(PREVIEW),
            },
            Move::Dense(d) => MoveRecord::Dense {
                label: d.label().to_string(),
                preview: d.prefix(PREVIEW),
            },
            Move::Pick(i) => match before {
                Some(Move::Cover(f)) => MoveRecord::Pick {
                    index: *i,
                    open: f.get(*i),
                    point: None,
                },
                Some(Move::Dense(d)) => MoveRecord::Pick {
                    index: *i,
                    open: None,
                    point: Some(d.enumerate(*i)),
                },
                _ => MoveRecord::Pick {
                    index: *i,
                    open: None,
                    point: None,
                },
            },
            Move::PickMany(is) => MoveRecord::PickMany {
                indices: is.clone(),
                opens: match before {
                    Some(Move::Cover(f)) => is.iter().filter_map(|&i| f.get(i)).collect(),
                    _ => vec![],
                },
            },
            Move::Point(p) => MoveRecord::Point { point: *p },
            Move::Points(ps) => MoveRecord::Points { points: ps.clone() },
            Move::Open(o) => MoveRecord::Open { open: o.clone() },
        }
    }

    /// The move this record stands for. Families are rebuilt from their
    /// preview, which is exact for families no longer than the preview.
    pub fn to_move(&self) -> Move {
        use crate::space::{CoverFamily, PointSet};
        match self {
            MoveRecord::Cover { label, preview } => Move::Cover(CoverFamily::listed(label.clone(), preview.clone())),
            MoveRecord::Dense { label, preview } => Move::Dense(PointSet::listed(label.clone(), preview.clone())),
            MoveRecord::Pick { index, .. } => Move::Pick(*index),
            MoveRecord::PickMany { indices, .. } => Move::PickMany(indices.clone()),
            MoveRecord::Point { point } => Move::Point(*point),
            MoveRecord::Points { points } => Move::Points(points.clone()),
            MoveRecord::Open { open } => Move::Open(open.clone()),
        }
    }

    fn gained_opens(&self) -> Vec<OpenSet> {
        match self {
            MoveRecord::Pick { open: Some(o), .. } => vec![o.clone()],
            MoveRecord::PickMany { opens, .. } => opens.clone(),
            MoveRecord::Open { open } => vec![open.clone()],
            _ => vec![],
        }
    }

    fn gained_points(&self) -> Vec<usize> {
        match self {
            MoveRecord::Pick { point: Some(p), .. } => vec![*p],
            MoveRecord::Point { point } => vec![*point],
            MoveRecord::Points { points } => points.clone(),
            _ => vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inning {
    #[serde(rename = "I")]
    pub first: MoveRecord,
    #[serde(rename = "II")]
    pub second: MoveRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub kind: GameKind,
    pub space: String,
    pub seed: Option<u64>,
    pub innings: Vec<Inning>,
}

impl Transcript {
    pub fn record(
        game: &super::Game,
        history: &[Move],
        notes: &[Option<String>],
        seed: Option<u64>,
    ) -> Transcript {
        let innings = history
            .chunks_exact(2)
            .enumerate()
            .map(|(n, pair)| Inning {
                first: MoveRecord::of(&pair[0], None),
                second: MoveRecord::of(&pair[1], Some(&pair[0])),
                note: notes.get(n).cloned().flatten(),
            })
            .collect();
        Transcript {
            kind: game.kind,
            space: game.space.label(),
            seed,
            innings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts serialize")
    }

    pub fn from_json(s: &str) -> crate::Result<Transcript> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The target was met using only the first `inning` innings.
    Won { by: Player, inning: usize },
    NotYetByInning(usize),
    Indeterminate,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Won { by, inning } => write!(f, "Win{by}({inning})"),
            Outcome::NotYetByInning(n) => write!(f, "NotYetByInning({n})"),
            Outcome::Indeterminate => f.write_str("Indeterminate"),
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub horizon: usize,
    pub outcome: Outcome,
}

impl Verdict {
    pub fn won_by(&self, p: Player) -> Option<usize> {
        match self.outcome {
            Outcome::Won { by, inning } if by == p => Some(inning),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at m={}", self.outcome, self.horizon)
    }
}

/// Applies the game's target predicate at horizon `m` to II's replies.
/// The reported inning is the least `N` such that the first `N` innings
/// already meet the target.
pub fn evaluate(space: &Space, t: &Transcript, m: usize) -> Verdict {
    let innings = t.innings.len();
    let target = t.kind.target();
    let m = match target {
        Target::CoverUnion => space.point_count().map_or(m, |n| m.min(n)),
        _ => space.base_count().map_or(m, |bc| m.min(bc)),
    };
    let opens: Vec<Vec<OpenSet>> = t.innings.iter().map(|i| i.second.gained_opens()).collect();
    let points: Vec<Vec<usize>> = t.innings.iter().map(|i| i.second.gained_points()).collect();
    let mut latest = 0usize;
    let mut unknown = false;
    for item in 0..m {
        let mut unsure = false;
        let first = (0..innings).find(|&n| match target {
            Target::CoverUnion => opens[n].iter().any(|u| space.contains(u, item)),
            Target::DensePoints => points[n].iter().any(|&p| space.member(p, item)),
            Target::DenseUnion => opens[n].iter().any(|u| {
                match space.open_meet(&OpenSet::basic(item), u) {
                    Meet::Witness(_) => true,
                    Meet::Empty => false,
                    Meet::Unknown => {
                        unsure = true;
                        false
                    }
                }
            }),
        });
        match first {
            Some(n) => latest = latest.max(n + 1),
            None if unsure => unknown = true,
            None => {
                return Verdict {
                    horizon: m,
                    outcome: Outcome::NotYetByInning(innings),
                }
            }
        }
    }
    let outcome = if unknown {
        Outcome::Indeterminate
    } else {
        Outcome::Won {
            by: t.kind.target_owner(),
            inning: latest,
        }
    };
    Verdict { horizon: m, outcome }
}
