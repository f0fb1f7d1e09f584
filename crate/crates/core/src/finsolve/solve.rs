use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graph::{acc_of, all_replies, FinGame, FinMove};
use super::topology::bits;
use crate::games::{Game, GameKind, Move, Player, Strategy};
use crate::space::Space;
use crate::{Error, Result};

/// How a table strategy chooses II's replies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReplyRule {
    /// Reach the target: reply into the least-ranked state.
    MinRank,
    /// Keep out of the target owner's attractor.
    Avoid,
}

/// A memoryless strategy over accumulated states.
///
/// Player I reads its move from `moves` (states missing from the table play
/// the first legal move). Player II applies `rule` to `ranks`, the number of
/// innings within which the target owner forces the target from each state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableStrategy {
    pub kind: GameKind,
    pub player: Player,
    pub points: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub moves: BTreeMap<u64, FinMove>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<ReplyRule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ranks: Vec<Option<u32>>,
}

impl TableStrategy {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    fn score(&self, state: u64) -> u64 {
        let r = self.ranks.get(state as usize).copied().flatten();
        match self.rule {
            Some(ReplyRule::Avoid) => r.map_or(0, |k| u64::MAX - k as u64),
            _ => r.map_or(u64::MAX, |k| k as u64),
        }
    }
}

impl Strategy for TableStrategy {
    fn label(&self) -> String {
        format!("table({}, player {})", self.kind, self.player)
    }

    fn next(&self, game: &Game, history: &[Move]) -> Result<Move> {
        let acc = acc_of(&game.space, history);
        match self.player {
            Player::I => {
                if let Some(m) = self.moves.get(&acc) {
                    return Ok(m.to_move(&game.space));
                }
                let fg = FinGame::from_space(&game.space, game.kind)?;
                fg.i_moves()?
                    .first()
                    .map(|m| m.to_move(&game.space))
                    .ok_or_else(|| Error::StrategyFailure("no legal move".into()))
            }
            Player::II => {
                let replies = all_replies(game, history);
                let best = replies
                    .iter()
                    .min_by_key(|(_, g)| self.score(acc | g))
                    .ok_or_else(|| Error::StrategyFailure("no legal reply".into()))?;
                Ok(best.0.clone())
            }
        }
    }

    fn state_key(&self, _game: &Game, _history: &[Move]) -> Option<u64> {
        Some(0)
    }
}

/// Winner of a finite game with a certified strategy for the winner.
#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub kind: GameKind,
    pub winner: Player,
    /// Innings within which the target owner forces the target, when it wins.
    pub bound: Option<u32>,
    /// Attractor rank of every accumulated state.
    pub ranks: Vec<Option<u32>>,
    pub strategy: TableStrategy,
}

/// Solves the game by backward reachability over accumulated states.
pub fn solve_game(space: &Space, kind: GameKind) -> Result<SolveResult> {
    let g = FinGame::from_space(space, kind)?;
    solve_fin(&g)
}

pub fn solve_fin(g: &FinGame) -> Result<SolveResult> {
    let t = &g.top;
    let states = 1usize << t.n();
    let owner = g.kind.target_owner();
    let mut ranks: Vec<Option<u32>> = (0..states as u64).map(|a| g.target(a).then_some(0)).collect();
    let mut k = 0u32;
    loop {
        let prev = ranks.clone();
        let inside = |s: u64| prev[s as usize].is_some();
        let mut changed = false;
        for acc in 0..states as u64 {
            if prev[acc as usize].is_some() {
                continue;
            }
            let forced = match owner {
                Player::II => escape(g, acc, &inside)?.is_none(),
                Player::I => g
                    .i_moves()?
                    .iter()
                    .any(|m| g.replies(m, true).iter().all(|&r| inside(acc | r))),
            };
            if forced {
                ranks[acc as usize] = Some(k + 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
        k += 1;
    }
    let inside = |s: u64| ranks[s as usize].is_some();
    let winner = if inside(0) { owner } else { owner.other() };
    let mut moves = BTreeMap::new();
    let rule;
    if winner == Player::I {
        rule = None;
        for acc in 0..states as u64 {
            let mv = match owner {
                Player::II => escape(g, acc, &inside)?,
                Player::I => best_forcing(g, acc, &ranks)?,
            };
            if let Some(m) = mv {
                moves.insert(acc, m);
            }
        }
    } else {
        rule = Some(if owner == Player::II {
            ReplyRule::MinRank
        } else {
            ReplyRule::Avoid
        });
    }
    let strategy = TableStrategy {
        kind: g.kind,
        player: winner,
        points: t.n(),
        moves,
        rule,
        ranks: if winner == Player::II { ranks.clone() } else { vec![] },
    };
    Ok(SolveResult {
        kind: g.kind,
        winner,
        bound: ranks[0],
        ranks,
        strategy,
    })
}

/// A legal move of I after which every reply stays outside `inside`.
/// Where legality is upward closed the largest such move decides.
fn escape(g: &FinGame, acc: u64, inside: &dyn Fn(u64) -> bool) -> Result<Option<FinMove>> {
    use GameKind::*;
    let t = &g.top;
    Ok(match g.kind {
        SelCover(a, _) => {
            let members: Vec<u64> = t
                .nonempty_opens()
                .iter()
                .copied()
                .filter(|&u| !inside(acc | u))
                .collect();
            let union = members.iter().fold(0, |x, &y| x | y);
            (!members.is_empty() && g.class_ok(a, union)).then_some(FinMove::Family { members })
        }
        DGame => {
            let bad = bits(t.full()).filter(|&p| !inside(acc | 1 << p)).fold(0, |x, p| x | 1 << p);
            (bad != 0 && t.is_dense(bad)).then_some(FinMove::Dense { mask: bad })
        }
        SPlus => {
            let bad = bits(t.full()).filter(|&p| !inside(acc | 1 << p)).fold(0, |x, p| x | 1 << p);
            let o = t.interior(bad);
            (o != 0 && t.is_dense(o)).then_some(FinMove::Open { mask: o })
        }
        _ => g
            .i_moves()?
            .iter()
            .find(|m| g.replies(m, true).iter().all(|&r| !inside(acc | r)))
            .cloned(),
    })
}

/// I's move realizing the rank of `acc` when I owns the target.
fn best_forcing(g: &FinGame, acc: u64, ranks: &[Option<u32>]) -> Result<Option<FinMove>> {
    let Some(k) = ranks[acc as usize] else {
        return Ok(None);
    };
    if k == 0 {
        return Ok(None);
    }
    Ok(g.i_moves()?
        .iter()
        .find(|m| {
            g.replies(m, true)
                .iter()
                .all(|&r| ranks[(acc | r) as usize].is_some_and(|x| x < k))
        })
        .cloned())
}
