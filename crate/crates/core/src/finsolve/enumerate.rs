use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use super::graph::{acc_of, all_replies, FinGame};
use super::solve::TableStrategy;
use super::topology::FinTopology;
use crate::games::{Class, Game, GameKind, Move, Player, Strat, Strategy};
use crate::space::Space;
use crate::{Error, Result};

/// Every nonempty family of nonempty opens whose union is in `class`,
/// as ascending mask lists in subset order.
pub fn enumerate_covers(t: &FinTopology, class: Class, cap: u128) -> Result<Vec<Vec<u64>>> {
    let opens = t.nonempty_opens();
    let count = (1u128 << opens.len()) - 1;
    if opens.len() >= 127 || count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut out = Vec::new();
    for sel in 1u64..1 << opens.len() {
        let members: Vec<u64> = (0..opens.len()).filter(|k| sel >> k & 1 == 1).map(|k| opens[k]).collect();
        let union = members.iter().fold(0, |a, &b| a | b);
        let ok = match class {
            Class::Cover => union == t.full(),
            Class::DenseUnion => t.is_dense(union),
        };
        if ok {
            out.push(members);
        }
    }
    Ok(out)
}

/// Non-target accumulated states reachable under any legal play.
fn live_states(g: &FinGame) -> Result<Vec<u64>> {
    let mut seen = BTreeSet::from([0u64]);
    let mut queue = VecDeque::from([0u64]);
    let mut live = Vec::new();
    while let Some(acc) = queue.pop_front() {
        if g.target(acc) {
            continue;
        }
        live.push(acc);
        for m in g.i_moves()? {
            for r in g.replies(m, false) {
                if seen.insert(acc | r) {
                    queue.push_back(acc | r);
                }
            }
        }
    }
    live.sort_unstable();
    Ok(live)
}

fn product_count(sizes: &[usize]) -> u128 {
    sizes.iter().fold(1u128, |a, &s| a.saturating_mul(s as u128))
}

/// Calls `f` with every choice vector `c` where `c[k] < sizes[k]`.
fn for_each_choice(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut c = vec![0usize; sizes.len()];
    loop {
        f(&c);
        let mut k = 0;
        loop {
            if k == c.len() {
                return;
            }
            c[k] += 1;
            if c[k] < sizes[k] {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

/// All memoryless strategies of player I: one legal move per live state.
pub fn memoryless_tables(space: &Space, kind: GameKind, cap: u128) -> Result<Vec<TableStrategy>> {
    let g = FinGame::from_space(space, kind)?;
    let moves = g.i_moves()?;
    let live = live_states(&g)?;
    let count = product_count(&vec![moves.len(); live.len()]);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    for_each_choice(&vec![moves.len(); live.len()], |c| {
        out.push(TableStrategy {
            kind,
            player: Player::I,
            points: g.top.n(),
            moves: live.iter().zip(c).map(|(&a, &k)| (a, moves[k].clone())).collect(),
            rule: None,
            ranks: vec![],
        })
    });
    Ok(out)
}

/// A memoryless strategy of player II: the gain to take, given the
/// accumulated state and the gains I's move offers.
pub struct ReplyTable {
    pub kind: GameKind,
    pub table: BTreeMap<(u64, Vec<u64>), u64>,
}

impl Strategy for ReplyTable {
    fn label(&self) -> String {
        format!("reply-table({})", self.kind)
    }

    fn next(&self, game: &Game, history: &[Move]) -> Result<Move> {
        let acc = acc_of(&game.space, &history[..history.len() - history.len() % 2]);
        let replies = all_replies(game, history);
        let offered: Vec<u64> = replies.iter().map(|r| r.1).collect::<BTreeSet<_>>().into_iter().collect();
        let want = self.table.get(&(acc, offered));
        replies
            .iter()
            .find(|r| want.is_none_or(|&w| r.1 == w))
            .map(|r| r.0.clone())
            .ok_or_else(|| Error::StrategyFailure("no legal reply".into()))
    }

    fn state_key(&self, _game: &Game, _history: &[Move]) -> Option<u64> {
        Some(0)
    }
}

/// All memoryless strategies of `player`, each a function from solver
/// states to legal moves. Moves of I offering the same gains are identified.
pub fn enumerate_memoryless_strategies(
    space: &Space,
    kind: GameKind,
    player: Player,
    cap: u128,
) -> Result<Vec<Strat>> {
    if player == Player::I {
        return Ok(memoryless_tables(space, kind, cap)?
            .into_iter()
            .map(|t| Arc::new(t) as Strat)
            .collect());
    }
    let g = FinGame::from_space(space, kind)?;
    let live = live_states(&g)?;
    let mut offers: BTreeSet<Vec<u64>> = BTreeSet::new();
    for m in g.i_moves()? {
        let gains: BTreeSet<u64> = g.replies(m, false).into_iter().collect();
        offers.insert(gains.into_iter().collect());
    }
    let slots: Vec<(u64, Vec<u64>)> = live
        .iter()
        .flat_map(|&a| offers.iter().map(move |o| (a, o.clone())))
        .collect();
    let sizes: Vec<usize> = slots.iter().map(|s| s.1.len()).collect();
    let count = product_count(&sizes);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut out: Vec<Strat> = Vec::with_capacity(count as usize);
    for_each_choice(&sizes, |c| {
        let table = slots.iter().zip(c).map(|(s, &k)| (s.clone(), s.1[k])).collect();
        out.push(Arc::new(ReplyTable { kind, table }));
    });
    Ok(out)
}
