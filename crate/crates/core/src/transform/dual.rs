use super::DualPair;
use crate::finsolve::{acc_of, bits, open_of, FinGame, FinMove, FinTopology};
use crate::games::{inning, FnStrategy, Game, GameKind, Move, Strat, Strategy};
use crate::space::{CoverFamily, OpenSet, PointSet, Space};
use crate::{Error, Result};

fn fail(msg: impl Into<String>) -> Error {
    Error::StrategyFailure(msg.into())
}

fn with_kind(g: &Game, kind: GameKind) -> Game {
    let mut out = g.clone();
    out.kind = kind;
    out
}

/// The first member of `fam` (or enumerated point of a dense set) lying in
/// I's pointing move, with the pointing-game answer it stands for.
fn first_hit(g: &Game, sel: &Move, pointing: &Move) -> Result<(usize, Move)> {
    match (sel, pointing) {
        (Move::Cover(f), Move::Point(x)) => {
            let i = f
                .position(g.search_bound, |u| g.space.contains(u, *x))
                .ok_or_else(|| fail(format!("no member of {} contains point {x}", f.label())))?;
            Ok((i, Move::Open(f.get(i).unwrap())))
        }
        (Move::Dense(d), Move::Open(o)) => {
            let bound = d.listed_points().map_or(g.search_bound, |l| l.len());
            let i = (0..bound)
                .find(|&i| g.space.contains(o, d.enumerate(i)))
                .ok_or_else(|| fail(format!("{} misses {o} within {bound} points", d.label())))?;
            Ok((i, Move::Point(d.enumerate(i))))
        }
        _ => Err(fail("selection and pointing moves do not match")),
    }
}

/// Rebuilds the pointing-game history behind a selection-game history in
/// which II answered through `tau`.
fn pointing_history(pg: &Game, tau: &dyn Strategy, h: &[Move]) -> Result<Vec<Move>> {
    let mut ph = Vec::with_capacity(h.len());
    for pair in h.chunks_exact(2) {
        let m = tau.next(pg, &ph)?;
        let answer = match (&pair[0], &pair[1]) {
            (Move::Cover(f), Move::Pick(i)) => {
                Move::Open(f.get(*i).ok_or_else(|| fail("pick beyond the family"))?)
            }
            (Move::Dense(d), Move::Pick(i)) => Move::Point(d.enumerate(*i)),
            _ => return Err(fail("unexpected move in the selection history")),
        };
        ph.push(m);
        ph.push(answer);
    }
    Ok(ph)
}

/// II in the selection game from I's pointing strategy `tau`: pick the first
/// member of I's family containing tau's next point (or the first point of
/// I's dense set inside tau's next open).
pub fn dual_forward(pair: DualPair, tau: Strat) -> Strat {
    let label = format!("dual-forward[{pair}]({})", tau.label());
    let t2 = tau.clone();
    FnStrategy::new(label, move |g: &Game, h: &[Move]| {
        let pg = with_kind(g, pair.pointing_game());
        let ph = pointing_history(&pg, tau.as_ref(), &h[..h.len() - h.len() % 2])?;
        let m = tau.next(&pg, &ph)?;
        let last = h.last().ok_or_else(|| fail("no move to answer"))?;
        first_hit(g, last, &m).map(|(i, _)| Move::Pick(i))
    })
    .with_key(move |g, h| {
        let pg = with_kind(g, pair.pointing_game());
        let ph = pointing_history(&pg, t2.as_ref(), h).ok()?;
        t2.state_key(&pg, &ph)
    })
    .arc()
}

/// Rebuilds the selection-game history behind a pointing-game history in
/// which II answered through the first-hit rule against `sigma`.
fn selection_history(sg: &Game, sigma: &dyn Strategy, h: &[Move]) -> Result<Vec<Move>> {
    let mut sh = Vec::with_capacity(h.len());
    for pair in h.chunks_exact(2) {
        let fam = sigma.next(sg, &sh)?;
        let (i, _) = first_hit(sg, &fam, &pair[0])?;
        sh.push(fam);
        sh.push(Move::Pick(i));
    }
    Ok(sh)
}

/// II in the pointing game from I's selection strategy `sigma`: answer I's
/// point with the first member of sigma's current family containing it (or
/// I's open with the first point of sigma's dense set inside it).
pub fn dual_backward_ii(pair: DualPair, sigma: Strat) -> Strat {
    let label = format!("dual-backward-ii[{pair}]({})", sigma.label());
    let s2 = sigma.clone();
    FnStrategy::new(label, move |g: &Game, h: &[Move]| {
        let sg = with_kind(g, pair.selection_game());
        let sh = selection_history(&sg, sigma.as_ref(), &h[..h.len() - h.len() % 2])?;
        let fam = sigma.next(&sg, &sh)?;
        let last = h.last().ok_or_else(|| fail("no move to answer"))?;
        first_hit(&sg, &fam, last).map(|(_, answer)| answer)
    })
    .with_key(move |g, h| {
        let sg = with_kind(g, pair.selection_game());
        let sh = selection_history(&sg, s2.as_ref(), h).ok()?;
        s2.state_key(&sg, &sh)
    })
    .arc()
}

/// Rebuilds the pointing-game history behind a selection-game history in
/// which I played `tau`'s answers as families (or dense sets).
fn answered_history(
    pair: DualPair,
    pg: &Game,
    tau: &dyn Strategy,
    h: &[Move],
) -> Result<Vec<Move>> {
    let mut ph = Vec::with_capacity(h.len());
    for chunk in h.chunks_exact(2) {
        let Move::Pick(k) = chunk[1] else {
            return Err(fail("unexpected move in the selection history"));
        };
        ph.push(asked(pair, &pg.space, k));
        let answer = tau.next(pg, &ph)?;
        ph.push(answer);
    }
    Ok(ph)
}

/// The pointing move generating member `k` of the family built by
/// [`dual_forward_ii`].
fn asked(pair: DualPair, space: &Space, k: usize) -> Move {
    match pair {
        DualPair::PoOd => Move::Point(k),
        DualPair::OpDd => Move::Open(OpenSet::basic(space.base_count().map_or(k, |m| k % m))),
    }
}

/// I in the selection game from II's pointing strategy `tau`: the family
/// `{ tau(history, x) : x }` over the point enumeration (or the dense set of
/// tau's points answering each base element).
pub fn dual_forward_ii(pair: DualPair, tau: Strat) -> Strat {
    let label = format!("dual-forward-ii[{pair}]({})", tau.label());
    let t2 = tau.clone();
    FnStrategy::new(label, move |g: &Game, h: &[Move]| {
        let pg = with_kind(g, pair.pointing_game());
        let ph = answered_history(pair, &pg, tau.as_ref(), h)?;
        let n = inning(h);
        let answer = |k: usize| -> Result<Move> {
            let mut q = ph.clone();
            q.push(asked(pair, &pg.space, k));
            tau.next(&pg, &q)
        };
        match pair {
            DualPair::PoOd => {
                let as_open = |m: Move| match m {
                    Move::Open(o) => Ok(o),
                    _ => Err(fail("tau must answer with open sets")),
                };
                match g.space.point_count() {
                    Some(count) => {
                        let members = (0..count).map(|x| answer(x).and_then(as_open)).collect::<Result<_>>()?;
                        Ok(Move::Cover(CoverFamily::listed(format!("tau-cover@{n}"), members)))
                    }
                    None => {
                        let (tau, pg, ph) = (tau.clone(), pg.clone(), ph.clone());
                        Ok(Move::Cover(CoverFamily::lazy(format!("tau-cover@{n}"), move |x| {
                            let mut q = ph.clone();
                            q.push(Move::Point(x));
                            tau.next(&pg, &q).ok().and_then(|m| as_open(m).ok())
                        })))
                    }
                }
            }
            DualPair::OpDd => {
                let as_point = |m: Move| match m {
                    Move::Point(p) => Ok(p),
                    _ => Err(fail("tau must answer with points")),
                };
                match g.space.base_count() {
                    Some(m) => {
                        let points = (0..m).map(|b| answer(b).and_then(as_point)).collect::<Result<_>>()?;
                        Ok(Move::Dense(PointSet::listed(format!("tau-points@{n}"), points)))
                    }
                    None => {
                        let (tau, pg, ph) = (tau.clone(), pg.clone(), ph.clone());
                        Ok(Move::Dense(PointSet::from_fn(
                            format!("tau-points@{n}"),
                            move |b| {
                                let mut q = ph.clone();
                                q.push(Move::Open(OpenSet::basic(b)));
                                match tau.next(&pg, &q) {
                                    Ok(Move::Point(p)) => p,
                                    _ => pg.space.base_witness(b),
                                }
                            },
                            None,
                        )))
                    }
                }
            }
        }
    })
    .with_key(move |g, h| {
        let pg = with_kind(g, pair.pointing_game());
        let ph = answered_history(pair, &pg, t2.as_ref(), h).ok()?;
        t2.state_key(&pg, &ph)
    })
    .arc()
}

/// The pointing move found by exhaustive enumeration of I's moves on a
/// finite space, with the first move of I producing each response of sigma.
#[derive(Clone, Debug)]
pub struct ClaimWitness {
    pub mv: Move,
    /// Response mask and the first I move (ascending enumeration) producing it.
    pub responses: Vec<(u64, FinMove)>,
    /// Union of the opens (or the points) that are never a response.
    pub missed: u64,
}

impl ClaimWitness {
    pub fn producer(&self, mask: u64) -> Option<&FinMove> {
        self.responses.iter().find(|r| r.0 == mask).map(|r| &r.1)
    }
}

/// Enumerates every cover (or dense set) of the finite space `space` after
/// `history` and collects sigma's responses. For covers the result is a
/// point every neighbourhood of which is a response; for dense sets, a
/// nonempty open all of whose points are responses.
pub fn claim_point(pair: DualPair, sigma: &dyn Strategy, space: &Space, history: &[Move]) -> Result<ClaimWitness> {
    let top = FinTopology::from_space(space)?;
    let sg = Game::new(pair.selection_game(), space.clone());
    let fg = FinGame::new(top.clone(), sg.kind);
    let mut responses: Vec<(u64, FinMove)> = Vec::new();
    let mut h = history.to_vec();
    for fm in fg.i_moves()? {
        let mv = fm.to_move(space);
        h.push(mv.clone());
        let r = sigma.next(&sg, &h)?;
        h.pop();
        let gain = acc_of(space, &[mv, r]);
        if !responses.iter().any(|e| e.0 == gain) {
            responses.push((gain, fm.clone()));
        }
    }
    let full = top.full();
    match pair {
        DualPair::PoOd => {
            let missed = top
                .nonempty_opens()
                .iter()
                .filter(|o| !responses.iter().any(|e| e.0 == **o))
                .fold(0, |a, &o| a | o);
            if missed == full {
                return Err(Error::ClaimViolation(format!(
                    "the opens never picked by {} cover the space",
                    sigma.label()
                )));
            }
            let x = bits(full & !missed).next().unwrap();
            Ok(ClaimWitness { mv: Move::Point(x), responses, missed })
        }
        DualPair::OpDd => {
            let hit = responses.iter().fold(0, |a, e| a | e.0);
            let missed = full & !hit;
            let o = top
                .nonempty_opens()
                .iter()
                .copied()
                .find(|&o| o & missed == 0)
                .ok_or_else(|| {
                    Error::ClaimViolation(format!(
                        "the points never picked by {} are dense",
                        sigma.label()
                    ))
                })?;
            Ok(ClaimWitness { mv: Move::Open(open_of(space, o)), responses, missed })
        }
    }
}

/// I's pointing move on a finite space from II's selection strategy sigma.
pub fn dual_backward_finite(pair: DualPair, sigma: &dyn Strategy, space: &Space, history: &[Move]) -> Result<Move> {
    claim_point(pair, sigma, space, history).map(|w| w.mv)
}

/// Rebuilds the selection history that a claim-following I strategy
/// simulates: each of II's pointing answers is replaced by the first I move
/// that makes sigma produce it.
fn claimed_history(
    pair: DualPair,
    sigma: &dyn Strategy,
    space: &Space,
    h: &[Move],
) -> Result<(Vec<Move>, ClaimWitness)> {
    let sg = Game::new(pair.selection_game(), space.clone());
    let mut sh = Vec::with_capacity(h.len());
    for chunk in h.chunks_exact(2) {
        let w = claim_point(pair, sigma, space, &sh)?;
        let mask = acc_of(space, &[w.mv.clone(), chunk[1].clone()]);
        let fm = w
            .producer(mask)
            .ok_or_else(|| fail(format!("answer {mask:#b} is never produced by {}", sigma.label())))?;
        let mv = fm.to_move(space);
        sh.push(mv.clone());
        let r = sigma.next(&sg, &sh)?;
        sh.push(r);
    }
    let w = claim_point(pair, sigma, space, &sh)?;
    Ok((sh, w))
}

/// I in the pointing game on a finite space: plays the claim point against
/// every history, simulating sigma on the covers (or dense sets) that
/// produce II's answers.
pub fn claim_strategy(pair: DualPair, sigma: Strat, space: Space) -> Strat {
    let label = format!("claim[{pair}]({})", sigma.label());
    let (s2, sp2) = (sigma.clone(), space.clone());
    FnStrategy::new(label, move |_g: &Game, h: &[Move]| {
        claimed_history(pair, sigma.as_ref(), &space, h).map(|(_, w)| w.mv)
    })
    .with_key(move |_g, h| {
        let (sh, _) = claimed_history(pair, s2.as_ref(), &sp2, h).ok()?;
        let sg = Game::new(pair.selection_game(), sp2.clone());
        s2.state_key(&sg, &sh)
    })
    .arc()
}
