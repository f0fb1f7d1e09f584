//! Game referees, strategies as move oracles, transcripts and verdicts.
//!
//! A play is a flat history of moves alternating between player I (even
//! positions) and player II (odd positions). Promised classes such as
//! "cover" or "dense" are enforced only at the game's legality horizon.

mod adversary;
mod kinds;
mod strategies;
mod transcript;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use adversary::{
    random_adversary, random_basic_covers, random_dense_opens, random_dense_sets, random_picks,
    random_points, random_rectangles, MovePool,
};
pub use kinds::{Class, GameKind};
pub use strategies::{
    base_open_strategy, constant_family, enumeration_cover_strategy, first_member, first_point,
    first_point_in, pibase_strategy_dgame, witness_pointing, whole_cover,
};
pub use transcript::{evaluate, Inning, MoveRecord, Outcome, Transcript, Verdict};

use crate::space::{
    dense_at_horizon, dense_union_at_horizon, is_cover_at_horizon, CoverFamily, Meet, OpenSet,
    PointSet, Space,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::I => "I",
            Player::II => "II",
        })
    }
}

/// A single move. Which variants are legal depends on the game and the turn.
#[derive(Clone, Debug)]
pub enum Move {
    /// I's family of open sets in a selection game.
    Cover(CoverFamily),
    /// I's dense set in the D-game.
    Dense(PointSet),
    /// II's choice of one member of I's family (or one enumerated point of I's dense set).
    Pick(usize),
    /// II's finite choice of members in the finite-selection games.
    PickMany(Vec<usize>),
    Point(usize),
    Points(Vec<usize>),
    Open(OpenSet),
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::Cover(_) => "cover",
            Move::Dense(_) => "dense",
            Move::Pick(_) => "pick",
            Move::PickMany(_) => "pick-many",
            Move::Point(_) => "point",
            Move::Points(_) => "points",
            Move::Open(_) => "open",
        }
    }
}

/// Player to move after `history`.
pub fn to_move(history: &[Move]) -> Player {
    if history.len() % 2 == 0 {
        Player::I
    } else {
        Player::II
    }
}

/// Index of the inning in progress.
pub fn inning(history: &[Move]) -> usize {
    history.len() / 2
}

/// A game on a space with the horizon and search bound used by the referee.
#[derive(Clone, Debug)]
pub struct Game {
    pub kind: GameKind,
    pub space: Space,
    pub horizon: usize,
    pub search_bound: usize,
}

pub const DEFAULT_HORIZON: usize = 16;
pub const DEFAULT_SEARCH_BOUND: usize = 10_000;

impl Game {
    /// Full horizon on finite spaces, [`DEFAULT_HORIZON`] otherwise.
    pub fn new(kind: GameKind, space: Space) -> Self {
        let horizon = space
            .base_count()
            .map_or(DEFAULT_HORIZON, |m| m.max(space.point_count().unwrap_or(0)));
        Game {
            kind,
            space,
            horizon,
            search_bound: DEFAULT_SEARCH_BOUND,
        }
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn with_kind(mut self, kind: GameKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_search_bound(mut self, bound: usize) -> Self {
        self.search_bound = bound;
        self
    }

    /// The same game on another space, keeping the search bound (and the
    /// horizon when the new space is infinite).
    pub fn on(&self, space: Space) -> Game {
        let mut g = Game::new(self.kind, space);
        if !g.space.is_finite() {
            g.horizon = self.horizon;
        }
        g.search_bound = self.search_bound;
        g
    }
}

/// A deterministic move oracle.
pub trait Strategy: Send + Sync {
    fn label(&self) -> String;

    fn next(&self, game: &Game, history: &[Move]) -> Result<Move>;

    /// Free-form remark recorded with the move just produced.
    fn note(&self, _game: &Game, _history: &[Move]) -> Option<String> {
        None
    }

    /// A key such that histories with equal keys (and equal accumulated
    /// targets) lead to identical future behaviour. Enables exhaustive
    /// verification on finite games.
    fn state_key(&self, _game: &Game, _history: &[Move]) -> Option<u64> {
        None
    }
}

pub type Strat = Arc<dyn Strategy>;

type MoveFn = dyn Fn(&Game, &[Move]) -> Result<Move> + Send + Sync;
type KeyFn = dyn Fn(&Game, &[Move]) -> Option<u64> + Send + Sync;

/// A strategy given by a closure.
pub struct FnStrategy {
    label: String,
    f: Box<MoveFn>,
    key: Option<Box<KeyFn>>,
}

impl FnStrategy {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(&Game, &[Move]) -> Result<Move> + Send + Sync + 'static,
    ) -> Self {
        FnStrategy {
            label: label.into(),
            f: Box::new(f),
            key: None,
        }
    }

    pub fn with_key(
        mut self,
        key: impl Fn(&Game, &[Move]) -> Option<u64> + Send + Sync + 'static,
    ) -> Self {
        self.key = Some(Box::new(key));
        self
    }

    pub fn arc(self) -> Strat {
        Arc::new(self)
    }
}

impl Strategy for FnStrategy {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn next(&self, game: &Game, history: &[Move]) -> Result<Move> {
        (self.f)(game, history)
    }

    fn state_key(&self, game: &Game, history: &[Move]) -> Option<u64> {
        self.key.as_ref().and_then(|k| k(game, history))
    }
}

pub fn strategy(
    label: impl Into<String>,
    f: impl Fn(&Game, &[Move]) -> Result<Move> + Send + Sync + 'static,
) -> Strat {
    FnStrategy::new(label, f).arc()
}

/// The open set I must have played before II's current reply.
fn last_i_move(history: &[Move]) -> Option<&Move> {
    if history.len() % 2 == 1 {
        history.last()
    } else {
        None
    }
}

/// Checks `mv` for the player to move after `history`. Predicates that come
/// out indeterminate at the horizon count as legal.
pub fn check_move(game: &Game, history: &[Move], mv: &Move) -> std::result::Result<(), String> {
    use GameKind::*;
    let s = &game.space;
    let ok_or_indeterminate = |r: Result<bool>, what: &str| match r {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{what} fails at horizon {}", game.horizon)),
        Err(e) if e.is_indeterminate() => Ok(()),
        Err(e) => Err(e.to_string()),
    };
    let wrong = || Err(format!("{} move not allowed here in {}", mv.name(), game.kind));
    match to_move(history) {
        Player::I => match (game.kind, mv) {
            (SelCover(a, _) | SelCoverFin(a, _), Move::Cover(fam)) => {
                let probe = fam.len().unwrap_or(64).min(game.search_bound);
                if fam.prefix(probe).iter().any(|u| u.is_empty()) {
                    return Err("families may not contain the empty set".into());
                }
                if fam.get(0).is_none() {
                    return Err("empty family".into());
                }
                match a {
                    Class::Cover => ok_or_indeterminate(
                        is_cover_at_horizon(s, fam, game.horizon, game.search_bound),
                        "cover",
                    ),
                    Class::DenseUnion => ok_or_indeterminate(
                        dense_union_at_horizon(s, fam, game.horizon, game.search_bound),
                        "dense union",
                    ),
                }
            }
            (SPlus | SPlusFin, Move::Open(o)) => {
                if o.is_empty() {
                    return Err("dense open set must be nonempty".into());
                }
                let m = s.base_count().map_or(game.horizon, |bc| bc.min(game.horizon));
                for b in 0..m {
                    if s.open_meet(&OpenSet::basic(b), o) == Meet::Empty {
                        return Err(format!("open set {o} misses base element {b}"));
                    }
                }
                Ok(())
            }
            (DGame, Move::Dense(d)) => ok_or_indeterminate(
                dense_at_horizon(s, d, game.horizon, game.search_bound),
                "density",
            ),
            (PointOpen, Move::Open(o)) => {
                if o.is_empty() {
                    Err("open set must be nonempty".into())
                } else {
                    Ok(())
                }
            }
            (OpenPicking, Move::Point(p)) => {
                if s.points().admits(*p) {
                    Ok(())
                } else {
                    Err(format!("no point {p}"))
                }
            }
            _ => wrong(),
        },
        Player::II => {
            let prev = last_i_move(history).expect("II moves after I");
            match (game.kind, prev, mv) {
                (SelCover(..), Move::Cover(fam), Move::Pick(i)) => fam
                    .get(*i)
                    .map(|_| ())
                    .ok_or_else(|| format!("family has no member {i}")),
                (SelCoverFin(..), Move::Cover(fam), Move::PickMany(is)) => {
                    match is.iter().find(|&&i| fam.get(i).is_none()) {
                        Some(i) => Err(format!("family has no member {i}")),
                        None => Ok(()),
                    }
                }
                (DGame, Move::Dense(d), Move::Pick(i)) => match d.contains(d.enumerate(*i)) {
                    Some(false) => Err("dense set enumerates a non-member".into()),
                    _ => Ok(()),
                },
                (SPlus | PointOpen, Move::Open(o), Move::Point(p)) => {
                    if s.points().admits(*p) && s.contains(o, *p) {
                        Ok(())
                    } else {
                        Err(format!("point {p} is not in {o}"))
                    }
                }
                (SPlusFin, Move::Open(o), Move::Points(ps)) => {
                    if ps.is_empty() {
                        Err("empty selection".into())
                    } else if let Some(p) = ps.iter().find(|&&p| !s.contains(o, p)) {
                        Err(format!("point {p} is not in {o}"))
                    } else {
                        Ok(())
                    }
                }
                (OpenPicking, Move::Point(x), Move::Open(u)) => {
                    if s.contains(u, *x) {
                        Ok(())
                    } else {
                        Err(format!("{u} does not contain point {x}"))
                    }
                }
                _ => wrong(),
            }
        }
    }
}

pub fn legal(game: &Game, history: &[Move], mv: &Move) -> bool {
    check_move(game, history, mv).is_ok()
}

/// Plays `innings` innings and returns the move history and its transcript.
pub fn play_full(
    game: &Game,
    first: &dyn Strategy,
    second: &dyn Strategy,
    innings: usize,
    seed: Option<u64>,
) -> Result<(Vec<Move>, Transcript)> {
    let mut history: Vec<Move> = Vec::with_capacity(2 * innings);
    let mut notes: Vec<Option<String>> = Vec::with_capacity(innings);
    for n in 0..innings {
        let mut note = None;
        for (player, strat) in [(Player::I, first), (Player::II, second)] {
            let mv = strat.next(game, &history).map_err(|e| match e {
                Error::IllegalMove { .. } | Error::StrategyFailure(_) => e,
                other => Error::StrategyFailure(format!(
                    "player {player} ({}) at inning {n}: {other}",
                    strat.label()
                )),
            })?;
            if let Err(reason) = check_move(game, &history, &mv) {
                return Err(Error::IllegalMove {
                    player,
                    inning: n,
                    reason,
                });
            }
            if let Some(x) = strat.note(game, &history) {
                note = Some(x);
            }
            history.push(mv);
        }
        notes.push(note);
    }
    let transcript = Transcript::record(game, &history, &notes, seed);
    Ok((history, transcript))
}

pub fn play(
    game: &Game,
    first: &dyn Strategy,
    second: &dyn Strategy,
    innings: usize,
    seed: Option<u64>,
) -> Result<Transcript> {
    Ok(play_full(game, first, second, innings, seed)?.1)
}

/// II's contribution to the target in one inning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gain {
    Opens(Vec<OpenSet>),
    Points(Vec<usize>),
}

/// Resolves II's reply at position `2n+1` against I's move at `2n`.
pub fn gain(i_move: &Move, ii_move: &Move) -> Gain {
    match (i_move, ii_move) {
        (Move::Cover(fam), Move::Pick(i)) => Gain::Opens(fam.get(*i).into_iter().collect()),
        (Move::Cover(fam), Move::PickMany(is)) => {
            Gain::Opens(is.iter().filter_map(|&i| fam.get(i)).collect())
        }
        (Move::Dense(d), Move::Pick(i)) => Gain::Points(vec![d.enumerate(*i)]),
        (_, Move::Point(p)) => Gain::Points(vec![*p]),
        (_, Move::Points(ps)) => Gain::Points(ps.clone()),
        (_, Move::Open(u)) => Gain::Opens(vec![u.clone()]),
        _ => Gain::Points(vec![]),
    }
}

/// II's gains for each completed inning of `history`.
pub fn gains(history: &[Move]) -> Vec<Gain> {
    history
        .chunks_exact(2)
        .map(|pair| gain(&pair[0], &pair[1]))
        .collect()
}

#[cfg(test)]
mod tests;
