//! Seeded random opponents. Each move is drawn from a ChaCha stream keyed by
//! the seed and the position, so replays are deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_move, to_move, FnStrategy, Game, GameKind, Move, Player, Strat};
use crate::pairing::{undiag, zigzag};
use crate::space::{CoverFamily, Dyadic, OpenSet, PointSet, ProductSpace, Rationals};
use crate::{Error, Result};

fn rng_at(seed: u64, position: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (position as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Candidate moves for a random opponent. `Replies` lets player II draw
/// from the replies available against I's last move.
#[derive(Clone, Debug)]
pub enum MovePool {
    Families(Vec<CoverFamily>),
    DenseSets(Vec<PointSet>),
    Opens(Vec<OpenSet>),
    Points(Vec<usize>),
    Replies,
}

const REPLY_WIDTH: usize = 8;

fn random_reply(g: &Game, h: &[Move], rng: &mut ChaCha8Rng) -> Result<Move> {
    let prev = h
        .last()
        .ok_or_else(|| Error::StrategyFailure("no move to answer".into()))?;
    let s = &g.space;
    let points_of = |o: &OpenSet| -> Vec<usize> {
        match s.point_count() {
            Some(n) => (0..n).filter(|&p| s.contains(o, p)).collect(),
            None => o.parts().iter().map(|&b| s.base_witness(b)).collect(),
        }
    };
    Ok(match (g.kind, prev) {
        (GameKind::SelCover(..), Move::Cover(f)) => {
            let width = f.len().unwrap_or(REPLY_WIDTH).min(REPLY_WIDTH);
            Move::Pick(rng.gen_range(0..width))
        }
        (GameKind::SelCoverFin(..), Move::Cover(f)) => {
            let width = f.len().unwrap_or(REPLY_WIDTH).min(REPLY_WIDTH);
            let mut pick: Vec<usize> = (0..width).filter(|_| rng.gen_bool(0.5)).collect();
            if pick.is_empty() {
                pick.push(rng.gen_range(0..width));
            }
            Move::PickMany(pick)
        }
        (GameKind::DGame, Move::Dense(_)) => Move::Pick(rng.gen_range(0..2 * REPLY_WIDTH)),
        (GameKind::SPlus | GameKind::PointOpen, Move::Open(o)) => {
            Move::Point(*points_of(o).choose(rng).ok_or(Error::EmptyOpenSet)?)
        }
        (GameKind::SPlusFin, Move::Open(o)) => {
            let pts = points_of(o);
            let mut pick: Vec<usize> = pts.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if pick.is_empty() {
                pick.push(*pts.choose(rng).ok_or(Error::EmptyOpenSet)?);
            }
            Move::Points(pick)
        }
        (GameKind::OpenPicking, Move::Point(x)) => {
            let limit = s.base_count().unwrap_or(256);
            let around: Vec<usize> = (0..limit).filter(|&b| s.member(*x, b)).collect();
            Move::Open(OpenSet::basic(
                *around
                    .choose(rng)
                    .ok_or_else(|| Error::StrategyFailure(format!("no base element holds {x}")))?,
            ))
        }
        _ => return Err(Error::StrategyFailure("no replies for this position".into())),
    })
}

/// A seeded opponent that only plays legal moves drawn from `pool`.
pub fn random_adversary(kind: GameKind, player: Player, seed: u64, pool: MovePool) -> Strat {
    let label = format!("random-{kind}-{player}(seed {seed})");
    FnStrategy::new(label, move |g: &Game, h: &[Move]| {
        if to_move(h) != player {
            return Err(Error::StrategyFailure(format!("not player {player}'s turn")));
        }
        let mut rng = rng_at(seed, h.len());
        let candidates: Vec<Move> = match &pool {
            MovePool::Families(f) => f.iter().cloned().map(Move::Cover).collect(),
            MovePool::DenseSets(d) => d.iter().cloned().map(Move::Dense).collect(),
            MovePool::Opens(o) => o.iter().cloned().map(Move::Open).collect(),
            MovePool::Points(p) => p.iter().copied().map(Move::Point).collect(),
            MovePool::Replies => return random_reply(g, h, &mut rng),
        };
        let legal: Vec<Move> = candidates
            .into_iter()
            .filter(|m| check_move(g, h, m).is_ok())
            .collect();
        legal
            .choose(&mut rng)
            .cloned()
            .ok_or_else(|| Error::StrategyFailure("no legal move in the pool".into()))
    })
    .arc()
}

/// Random legal replies for player II.
pub fn random_picks(seed: u64) -> Strat {
    FnStrategy::new(format!("random-picks(seed {seed})"), move |g: &Game, h: &[Move]| {
        random_reply(g, h, &mut rng_at(seed, h.len()))
    })
    .arc()
}

pub fn random_points(seed: u64) -> Strat {
    random_picks(seed)
}

/// Player I in selection games on the rationals: a few random basic
/// intervals followed by a grid of intervals of radius `2^-r` centred at
/// the multiples of `2^-r`, in zigzag order from a random offset.
pub fn random_basic_covers(seed: u64) -> Strat {
    FnStrategy::new(format!("random-basic-covers(seed {seed})"), move |_g: &Game, h: &[Move]| {
        let mut rng = rng_at(seed, h.len());
        let r: u32 = rng.gen_range(0..=4);
        let offset: i64 = rng.gen_range(-16..=16);
        let decoys: Vec<usize> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(1..200)).collect();
        let label = format!("grid(r={r},offset={offset},decoys={decoys:?})");
        Ok(Move::Cover(CoverFamily::lazy(label, move |i| {
            if i < decoys.len() {
                return Some(OpenSet::basic(decoys[i]));
            }
            let c = Dyadic::new(BigInt::from(offset + zigzag(i - decoys.len())), r);
            Rationals::base_index(&c, r).map(OpenSet::basic)
        })))
    })
    .arc()
}

/// Player I in the D-game on the rationals: one of a few dense sets, each
/// enumerated from a random offset.
pub fn random_dense_sets(seed: u64) -> Strat {
    FnStrategy::new(format!("random-dense-sets(seed {seed})"), move |_g: &Game, h: &[Move]| {
        let mut rng = rng_at(seed, h.len());
        let d = match rng.gen_range(0..3) {
            0 => {
                let e0: u32 = rng.gen_range(1..=4);
                let off: i64 = rng.gen_range(-8..=8);
                let enumerate = move |n: usize| {
                    let (a, e) = undiag(n);
                    let num = BigInt::from(2 * (zigzag(a) + off) + 1);
                    let d = Dyadic::new(num, e as u32 + e0);
                    2 * d.index().expect("small dyadic")
                };
                let contains = move |p: usize| p % 2 == 0 && Dyadic::from_index(p / 2).exp >= e0;
                PointSet::from_fn(
                    format!("dyadics with exponent ≥ {e0} (offset {off})"),
                    enumerate,
                    Some(std::sync::Arc::new(contains)),
                )
            }
            1 => {
                let off: usize = rng.gen_range(0..50);
                PointSet::from_fn(
                    format!("non-dyadic rationals from {off}"),
                    move |n| 2 * (n + off) + 1,
                    Some(std::sync::Arc::new(move |p: usize| p % 2 == 1 && p > 2 * off)),
                )
            }
            _ => {
                let off: usize = rng.gen_range(0..50);
                PointSet::from_fn(
                    format!("rationals from index {off}"),
                    move |n| n + off,
                    Some(std::sync::Arc::new(move |p: usize| p >= off)),
                )
            }
        };
        Ok(Move::Dense(d))
    })
    .arc()
}

/// Player II in the open-picking game on `Q × Q`: a random basic rectangle
/// around I's point.
pub fn random_rectangles(seed: u64, prod: ProductSpace) -> Strat {
    let q = Rationals::new();
    FnStrategy::new(format!("random-rectangles(seed {seed})"), move |_g: &Game, h: &[Move]| {
        let Some(Move::Point(p)) = h.last() else {
            return Err(Error::StrategyFailure("expected a point".into()));
        };
        let mut rng = rng_at(seed, h.len());
        let (x, y) = prod.split_point(*p);
        let mut around = |v: usize| {
            let r = rng.gen_range(0..=5);
            Rationals::interval_around(&q.value(v), r, rng.gen_bool(0.5))
                .ok_or_else(|| Error::StrategyFailure("interval index overflow".into()))
        };
        let a = around(x)?;
        let b = around(y)?;
        Ok(Move::Open(OpenSet::basic(prod.rect(a, b))))
    })
    .arc()
}

/// Player I in the S⁺ game on the rationals: a union of one random small
/// interval inside each base element below the game's horizon.
pub fn random_dense_opens(seed: u64) -> Strat {
    FnStrategy::new(format!("random-dense-opens(seed {seed})"), move |g: &Game, h: &[Move]| {
        let mut rng = rng_at(seed, h.len());
        let mut parts = Vec::with_capacity(g.horizon);
        for b in 0..g.horizon.max(1) {
            let (centre, r) = match Rationals::interval_params(b) {
                None => (Dyadic::new(BigInt::from(zigzag(rng.gen_range(0..8))), 0), 0),
                Some(cr) => cr,
            };
            let shift = BigRational::new(
                BigInt::from(rng.gen_range(-1i64..=1)),
                BigInt::from(1u64) << (r + 1),
            );
            let c = Dyadic::round(&(centre.value() + shift), r + 1, false);
            let radius = r + 2 + rng.gen_range(0..2);
            parts.push(
                Rationals::base_index(&c, radius)
                    .ok_or_else(|| Error::StrategyFailure("interval index overflow".into()))?,
            );
        }
        Ok(Move::Open(OpenSet::new(parts)))
    })
    .arc()
}
