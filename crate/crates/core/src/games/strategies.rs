//! Built-in strategies.

use super::{inning, FnStrategy, Game, GameKind, Move, Strat};
use crate::space::{CoverFamily, OpenSet, PointSet, Space};
use crate::{Error, Result};

fn last(history: &[Move]) -> Result<&Move> {
    history
        .last()
        .ok_or_else(|| Error::StrategyFailure("no move to answer".into()))
}

/// The least point of `o` on finite spaces; the least base witness among
/// its parts otherwise.
pub fn first_point_in(space: &Space, o: &OpenSet) -> Option<usize> {
    match space.point_count() {
        Some(n) => (0..n).find(|&p| space.contains(o, p)),
        None => o.parts().iter().map(|&b| space.base_witness(b)).min(),
    }
}

/// Player I in the open-picking game: at inning `n` play the witness of base
/// element `n` (cycling on finite spaces).
pub fn witness_pointing() -> Strat {
    FnStrategy::new("witness-pointing", |g: &Game, h: &[Move]| {
        let n = inning(h);
        let b = g.space.base_count().map_or(n, |m| n % m);
        Ok(Move::Point(g.space.base_witness(b)))
    })
    .with_key(|g, h| g.space.base_count().map(|m| (inning(h) % m) as u64))
    .arc()
}

/// Player I in the point-open game: at inning `n` play base element `n`.
pub fn base_open_strategy() -> Strat {
    FnStrategy::new("base-opens", |g: &Game, h: &[Move]| {
        let n = inning(h);
        let b = g.space.base_count().map_or(n, |m| n % m);
        Ok(Move::Open(OpenSet::basic(b)))
    })
    .with_key(|g, h| g.space.base_count().map(|m| (inning(h) % m) as u64))
    .arc()
}

/// Player II in the D-game: at inning `n` pick the first enumerated point of
/// I's dense set inside `pibase(n)`.
pub fn pibase_strategy_dgame(pibase: CoverFamily) -> Strat {
    let label = format!("pibase({})", pibase.label());
    FnStrategy::new(label, move |g: &Game, h: &[Move]| {
        let n = inning(h);
        let Move::Dense(d) = last(h)? else {
            return Err(Error::StrategyFailure("expected a dense set".into()));
        };
        let target = pibase
            .get(n)
            .ok_or_else(|| Error::StrategyFailure(format!("π-base has no member {n}")))?;
        if target.is_empty() {
            return Err(Error::EmptyOpenSet);
        }
        (0..g.search_bound)
            .find(|&i| g.space.contains(&target, d.enumerate(i)))
            .map(Move::Pick)
            .ok_or_else(|| Error::SearchExhausted {
                what: format!("point of {} in π-base member {n} = {target}", d.label()),
                bound: g.search_bound,
            })
    })
    .arc()
}

/// Player II in a selection game: at inning `n` pick the first member of
/// I's family containing `targets.enumerate(n)`.
pub fn enumeration_cover_strategy(targets: PointSet) -> Strat {
    let label = format!("enumeration-cover({})", targets.label());
    FnStrategy::new(label, move |g: &Game, h: &[Move]| {
        let n = inning(h);
        let Move::Cover(fam) = last(h)? else {
            return Err(Error::StrategyFailure("expected a family".into()));
        };
        let x = targets.enumerate(n);
        let i = fam
            .position(g.search_bound, |u| g.space.contains(u, x))
            .ok_or_else(|| Error::SearchExhausted {
                what: format!("member of {} containing point {x}", fam.label()),
                bound: g.search_bound,
            })?;
        Ok(match g.kind {
            GameKind::SelCoverFin(..) => Move::PickMany(vec![i]),
            _ => Move::Pick(i),
        })
    })
    .arc()
}

/// Player II: always the first member (or the first enumerated point).
pub fn first_member() -> Strat {
    FnStrategy::new("first-member", |g: &Game, _h: &[Move]| {
        Ok(match g.kind {
            GameKind::SelCoverFin(..) => Move::PickMany(vec![0]),
            _ => Move::Pick(0),
        })
    })
    .with_key(|_, _| Some(0))
    .arc()
}

/// Player II in the S⁺ or point-open game: the first point of I's open set.
pub fn first_point() -> Strat {
    FnStrategy::new("first-point", |g: &Game, h: &[Move]| {
        let Move::Open(o) = last(h)? else {
            return Err(Error::StrategyFailure("expected an open set".into()));
        };
        let p = first_point_in(&g.space, o).ok_or(Error::EmptyOpenSet)?;
        Ok(match g.kind {
            GameKind::SPlusFin => Move::Points(vec![p]),
            _ => Move::Point(p),
        })
    })
    .with_key(|_, _| Some(0))
    .arc()
}

/// Player I: always the same family.
pub fn constant_family(fam: CoverFamily) -> Strat {
    let label = format!("constant({})", fam.label());
    FnStrategy::new(label, move |_g: &Game, _h: &[Move]| Ok(Move::Cover(fam.clone())))
        .with_key(|_, _| Some(0))
        .arc()
}

/// Player I: the one-member cover by the whole space.
pub fn whole_cover() -> Strat {
    FnStrategy::new("whole-cover", |g: &Game, _h: &[Move]| {
        let w = g
            .space
            .whole()
            .ok_or_else(|| Error::Unsupported("space has no finite whole open set".into()))?;
        Ok(Move::Cover(CoverFamily::listed("{X}", vec![w])))
    })
    .with_key(|_, _| Some(0))
    .arc()
}
