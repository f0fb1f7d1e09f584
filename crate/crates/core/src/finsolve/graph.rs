use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::topology::{bits, open_of, FinTopology};
use crate::games::{gains, Class, Gain, Game, GameKind, Move};
use crate::space::{CoverFamily, PointSet, Space};
use crate::{Error, Result};

/// A move of a finite game in mask form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum FinMove {
    /// A family of nonempty open sets, ascending masks.
    Family { members: Vec<u64> },
    /// A dense point set.
    Dense { mask: u64 },
    Open { mask: u64 },
    Point { point: usize },
}

impl FinMove {
    /// The referee-level move on `space` (families in ascending mask order).
    pub fn to_move(&self, space: &Space) -> Move {
        match self {
            FinMove::Family { members } => Move::Cover(CoverFamily::listed(
                format!("{members:?}"),
                members.iter().map(|&m| open_of(space, m)).collect(),
            )),
            FinMove::Dense { mask } => {
                Move::Dense(PointSet::listed(format!("{mask:#b}"), bits(*mask).collect()))
            }
            FinMove::Open { mask } => Move::Open(open_of(space, *mask)),
            FinMove::Point { point } => Move::Point(*point),
        }
    }
}

/// Families, dense sets or opens above this many candidates are not enumerated.
pub const FAMILY_CAP: u128 = 1 << 20;

/// The game graph of a kind on a finite topology, over accumulated states.
pub struct FinGame {
    pub top: FinTopology,
    pub kind: GameKind,
    i_moves: OnceLock<Result<Vec<FinMove>, String>>,
}

impl FinGame {
    pub fn new(top: FinTopology, kind: GameKind) -> Self {
        FinGame {
            top,
            kind,
            i_moves: OnceLock::new(),
        }
    }

    pub fn from_space(s: &Space, kind: GameKind) -> Result<Self> {
        Ok(FinGame::new(FinTopology::from_space(s)?, kind))
    }

    pub fn target(&self, acc: u64) -> bool {
        use crate::games::GameKind::*;
        match self.kind {
            SelCover(_, Class::Cover) | SelCoverFin(_, Class::Cover) => acc == self.top.full(),
            _ => self.top.is_dense(acc),
        }
    }

    pub fn class_ok(&self, class: Class, union: u64) -> bool {
        match class {
            Class::Cover => union == self.top.full(),
            Class::DenseUnion => self.top.is_dense(union),
        }
    }

    /// Every legal move of player I (legality does not depend on the state).
    pub fn i_moves(&self) -> Result<&[FinMove]> {
        self.i_moves
            .get_or_init(|| self.build_i_moves().map_err(|e| e.to_string()))
            .as_deref()
            .map_err(|e| Error::Unsupported(e.clone()))
    }

    fn build_i_moves(&self) -> Result<Vec<FinMove>> {
        use crate::games::GameKind::*;
        let t = &self.top;
        let dense_opens = || {
            t.nonempty_opens()
                .iter()
                .filter(|&&o| t.is_dense(o))
                .map(|&mask| FinMove::Open { mask })
                .collect()
        };
        Ok(match self.kind {
            SelCover(a, _) | SelCoverFin(a, _) => {
                let k = t.nonempty_opens().len();
                let count = (1u128 << k) - 1;
                if count > FAMILY_CAP {
                    return Err(Error::CapExceeded { count, cap: FAMILY_CAP });
                }
                (1u64..1 << k)
                    .filter_map(|sel| {
                        let members: Vec<u64> = bits(sel).map(|i| t.nonempty_opens()[i]).collect();
                        let union = members.iter().fold(0, |a, &b| a | b);
                        self.class_ok(a, union).then_some(FinMove::Family { members })
                    })
                    .collect()
            }
            SPlus | SPlusFin => dense_opens(),
            DGame => (1..=t.full())
                .filter(|&m| t.is_dense(m))
                .map(|mask| FinMove::Dense { mask })
                .collect(),
            PointOpen => t
                .nonempty_opens()
                .iter()
                .map(|&mask| FinMove::Open { mask })
                .collect(),
            OpenPicking => (0..t.n()).map(|point| FinMove::Point { point }).collect(),
        })
    }

    /// Gains available to II against `m`, one per distinct gain. With
    /// `dominant`, finite-selection games offer only the largest gain, which
    /// dominates every other reply for the reaching player.
    pub fn replies(&self, m: &FinMove, dominant: bool) -> Vec<u64> {
        use crate::games::GameKind::*;
        let mut out: Vec<u64> = match (self.kind, m) {
            (SelCover(..), FinMove::Family { members }) => members.clone(),
            (SelCoverFin(..), FinMove::Family { members }) => {
                if dominant {
                    vec![members.iter().fold(0, |a, &b| a | b)]
                } else {
                    subset_unions(members)
                }
            }
            (DGame, FinMove::Dense { mask }) | (SPlus | PointOpen, FinMove::Open { mask }) => {
                bits(*mask).map(|p| 1u64 << p).collect()
            }
            (SPlusFin, FinMove::Open { mask }) => {
                if dominant {
                    vec![*mask]
                } else {
                    let singles: Vec<u64> = bits(*mask).map(|p| 1u64 << p).collect();
                    subset_unions(&singles)
                }
            }
            (OpenPicking, FinMove::Point { point }) => self
                .top
                .nonempty_opens()
                .iter()
                .copied()
                .filter(|o| o >> point & 1 == 1)
                .collect(),
            _ => vec![],
        };
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn subset_unions(items: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = (1u64..1 << items.len())
        .map(|sel| bits(sel).fold(0, |a, i| a | items[i]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Mask of a finite set of points.
pub fn point_mask(points: &[usize]) -> u64 {
    points.iter().fold(0, |a, &p| a | 1 << p)
}

pub fn gain_mask(space: &Space, g: &Gain) -> u64 {
    match g {
        Gain::Opens(os) => os.iter().fold(0, |a, o| a | space.open_mask(o)),
        Gain::Points(ps) => point_mask(ps),
    }
}

/// The accumulated target of the completed innings of `history`.
pub fn acc_of(space: &Space, history: &[Move]) -> u64 {
    gains(history).iter().fold(0, |a, g| a | gain_mask(space, g))
}

/// Distinct legal replies for II after `history` (which ends with I's move),
/// each paired with its gain. Families and dense sets are read up to their
/// listed length, or `game.search_bound` members otherwise.
pub fn all_replies(game: &Game, history: &[Move]) -> Vec<(Move, u64)> {
    let s = &game.space;
    let n = s.point_count().unwrap_or(0);
    let points_of = |mask: u64| -> Vec<usize> { bits(mask).collect() };
    let mut out: Vec<(Move, u64)> = Vec::new();
    let Some(last) = history.last() else {
        return out;
    };
    let mut seen = std::collections::BTreeSet::new();
    match (game.kind, last) {
        (GameKind::SelCover(..), Move::Cover(f)) | (GameKind::SelCoverFin(..), Move::Cover(f)) => {
            let members = f.prefix(f.len().unwrap_or(game.search_bound));
            let mut firsts: Vec<(usize, u64)> = Vec::new();
            for (i, u) in members.iter().enumerate() {
                let m = s.open_mask(u);
                if seen.insert(m) {
                    firsts.push((i, m));
                }
            }
            if let GameKind::SelCoverFin(..) = game.kind {
                let mut unions = std::collections::BTreeSet::new();
                for sel in 1u64..1 << firsts.len() {
                    let idx: Vec<usize> = bits(sel).map(|k| firsts[k].0).collect();
                    let g = bits(sel).fold(0, |a, k| a | firsts[k].1);
                    if unions.insert(g) {
                        out.push((Move::PickMany(idx), g));
                    }
                }
            } else {
                out.extend(firsts.into_iter().map(|(i, m)| (Move::Pick(i), m)));
            }
        }
        (GameKind::DGame, Move::Dense(d)) => {
            let bound = d.listed_points().map_or(16 * n.max(1), |l| l.len());
            for i in 0..bound {
                let p = d.enumerate(i);
                if seen.insert(1u64 << p) {
                    out.push((Move::Pick(i), 1 << p));
                }
            }
        }
        (GameKind::SPlus | GameKind::PointOpen, Move::Open(o)) => {
            for p in points_of(s.open_mask(o)) {
                out.push((Move::Point(p), 1 << p));
            }
        }
        (GameKind::SPlusFin, Move::Open(o)) => {
            let pts = points_of(s.open_mask(o));
            for sel in 1u64..1 << pts.len() {
                let chosen: Vec<usize> = bits(sel).map(|k| pts[k]).collect();
                out.push((Move::Points(chosen.clone()), point_mask(&chosen)));
            }
        }
        (GameKind::OpenPicking, Move::Point(x)) => {
            if let Ok(top) = FinTopology::from_space(s) {
                for &u in top.nonempty_opens() {
                    if u >> x & 1 == 1 {
                        out.push((Move::Open(open_of(s, u)), u));
                    }
                }
            }
        }
        _ => {}
    }
    out
}
