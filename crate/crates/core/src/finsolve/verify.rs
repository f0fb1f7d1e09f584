use std::collections::HashSet;

use serde::Serialize;

use super::graph::{acc_of, all_replies, FinGame};
use crate::games::{check_move, Game, GameKind, Move, Player, Strategy, Transcript};
use crate::space::Space;
use crate::{Error, Result};

/// Outcome of checking a strategy against every opponent on a finite space.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    /// Inning-start nodes visited.
    pub explored: usize,
    /// Whether the search covered the whole game graph.
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Transcript>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Default depth for strategies without a state key.
pub const DEPTH_BOUND: usize = 12;

/// Checks that `strat`, playing as `player`, wins `kind` on the finite
/// `space` against every legal opponent.
///
/// The search runs over inning starts keyed by the accumulated target and the
/// strategy's state key. When the strategy owns the target, a repeated node on
/// the current path is a play that never reaches it. Otherwise any play that
/// reaches the target is a counterexample. Strategies without a key are
/// explored to `depth_bound` innings, and a target not reached by then counts
/// as a failure.
pub fn verify_strategy(
    space: &Space,
    kind: GameKind,
    strat: &dyn Strategy,
    player: Player,
    depth_bound: Option<usize>,
) -> Result<VerifyReport> {
    let fg = FinGame::from_space(space, kind)?;
    let game = Game::new(kind, space.clone());
    let opp_i: Vec<Move> = fg.i_moves()?.iter().map(|m| m.to_move(space)).collect();
    let mut v = Verifier {
        fg: &fg,
        game: &game,
        strat,
        player,
        reach: kind.target_owner() == player,
        opp_i,
        depth_bound: depth_bound.unwrap_or(DEPTH_BOUND),
        on_path: HashSet::new(),
        done: HashSet::new(),
        explored: 0,
        exhaustive: true,
    };
    let mut history = Vec::new();
    let found = v.node(&mut history)?;
    let (ok, counterexample, reason) = match found {
        None => (true, None, None),
        Some((h, why)) => (false, Some(Transcript::record(&game, &h, &[], None)), Some(why)),
    };
    Ok(VerifyReport {
        ok,
        explored: v.explored,
        exhaustive: v.exhaustive,
        counterexample,
        reason,
    })
}

type Found = Option<(Vec<Move>, String)>;

struct Verifier<'a> {
    fg: &'a FinGame,
    game: &'a Game,
    strat: &'a dyn Strategy,
    player: Player,
    reach: bool,
    opp_i: Vec<Move>,
    depth_bound: usize,
    on_path: HashSet<(u64, u64)>,
    done: HashSet<(u64, u64)>,
    explored: usize,
    exhaustive: bool,
}

impl Verifier<'_> {
    fn node(&mut self, history: &mut Vec<Move>) -> Result<Found> {
        let acc = acc_of(&self.game.space, history);
        let hit = self.fg.target(acc);
        if self.reach && hit {
            return Ok(None);
        }
        if !self.reach && hit {
            return Ok(Some((history.clone(), "the opponent reached the target".into())));
        }
        let depth = history.len() / 2;
        let key = self.strat.state_key(self.game, history);
        let node = key.map(|k| (acc, k));
        if let Some(n) = node {
            if self.on_path.contains(&n) {
                return Ok(if self.reach {
                    Some((history.clone(), "the play cycles without reaching the target".into()))
                } else {
                    None
                });
            }
            if self.done.contains(&n) {
                return Ok(None);
            }
            self.on_path.insert(n);
        } else if depth >= self.depth_bound {
            self.exhaustive = false;
            return Ok(if self.reach {
                Some((history.clone(), format!("target not reached within {depth} innings")))
            } else {
                None
            });
        }
        self.explored += 1;
        let found = self.inning(history)?;
        if let Some(n) = node {
            self.on_path.remove(&n);
            if found.is_none() {
                self.done.insert(n);
            }
        }
        Ok(found)
    }

    fn own_move(&self, history: &mut Vec<Move>) -> Result<std::result::Result<Move, Found>> {
        let mv = match self.strat.next(self.game, history) {
            Ok(m) => m,
            Err(e @ (Error::StrategyFailure(_) | Error::IllegalMove { .. })) => {
                return Ok(Err(Some((history.clone(), e.to_string()))))
            }
            Err(e) => return Err(e),
        };
        if let Err(why) = check_move(self.game, history, &mv) {
            return Ok(Err(Some((history.clone(), format!("illegal move: {why}")))));
        }
        Ok(Ok(mv))
    }

    fn inning(&mut self, history: &mut Vec<Move>) -> Result<Found> {
        match self.player {
            Player::I => {
                let mv = match self.own_move(history)? {
                    Ok(m) => m,
                    Err(f) => return Ok(f),
                };
                history.push(mv);
                let replies = all_replies(self.game, history);
                for (r, _) in replies {
                    history.push(r);
                    let f = self.node(history)?;
                    history.pop();
                    if f.is_some() {
                        return Ok(f);
                    }
                }
                history.pop();
                Ok(None)
            }
            Player::II => {
                for m in self.opp_i.clone() {
                    history.push(m);
                    let reply = match self.own_move(history)? {
                        Ok(r) => r,
                        Err(f) => return Ok(f),
                    };
                    history.push(reply);
                    let f = self.node(history)?;
                    history.truncate(history.len() - 2);
                    if f.is_some() {
                        return Ok(f);
                    }
                }
                Ok(None)
            }
        }
    }
}
