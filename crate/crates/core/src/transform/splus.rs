use super::mix;
use crate::finsolve::{acc_of, open_of, FinTopology};
use crate::games::{first_point_in, inning, Game, Move, Strat, Strategy};
use crate::space::{induced_subspace_of, OpenSet, Space, Subspace};
use crate::{Error, Result};

fn fail(msg: impl Into<String>) -> Error {
    Error::StrategyFailure(msg.into())
}

fn open_move(m: &Move) -> Result<&OpenSet> {
    match m {
        Move::Open(o) => Ok(o),
        _ => Err(fail("expected an open set from I")),
    }
}

/// A subspace together with II's strategy on it.
#[derive(Clone)]
pub struct Piece {
    pub sub: Subspace,
    pub strategy: Strat,
}

/// `Int(X \ u)` on a finite space.
pub fn int_complement(space: &Space, u: &OpenSet) -> Result<OpenSet> {
    let top = FinTopology::from_space(space)?;
    Ok(open_of(space, top.interior(top.full() & !space.open_mask(u))))
}

/// The piece `Int(cl A) ∩ A` of a finite space, `None` when it is empty.
pub fn relativized_piece(space: &Space, a: u64) -> Result<Option<Subspace>> {
    let top = FinTopology::from_space(space)?;
    let piece = top.int_closure(a) & a;
    if piece == 0 {
        return Ok(None);
    }
    induced_subspace_of(space, &format!("{piece:#b}"), move |p| p < 64 && piece >> p & 1 == 1).map(Some)
}

/// II in `S+` (or its finite-selection variant) on the union of the pieces:
/// inning `n` is answered by piece `n mod k` from the traces of I's opens
/// at its own innings.
pub fn union_splus_strategy(pieces: Vec<Piece>) -> Strat {
    std::sync::Arc::new(UnionStrategy { pieces })
}

struct UnionStrategy {
    pieces: Vec<Piece>,
}

impl UnionStrategy {
    fn piece_of(&self, n: usize) -> &Piece {
        &self.pieces[n % self.pieces.len()]
    }

    /// The history seen by the piece owning inning `n`, over innings before `n`.
    fn sub_history(&self, h: &[Move], n: usize) -> Result<Vec<Move>> {
        let k = self.pieces.len();
        let piece = self.piece_of(n);
        let mut sh = Vec::new();
        for t in (n % k..n).step_by(k) {
            sh.push(Move::Open(piece.sub.trace_open(open_move(&h[2 * t])?)));
            let local = |p: &usize| {
                piece
                    .sub
                    .sub_index(*p)
                    .ok_or_else(|| fail(format!("point {p} lies outside the piece")))
            };
            sh.push(match &h[2 * t + 1] {
                Move::Point(p) => Move::Point(local(p)?),
                Move::Points(ps) => Move::Points(ps.iter().map(local).collect::<Result<_>>()?),
                _ => return Err(fail("unexpected answer in the history")),
            });
        }
        Ok(sh)
    }
}

impl Strategy for UnionStrategy {
    fn label(&self) -> String {
        let names: Vec<String> = self.pieces.iter().map(|p| p.strategy.label()).collect();
        format!("union({})", names.join(","))
    }

    fn next(&self, g: &Game, h: &[Move]) -> Result<Move> {
        if self.pieces.is_empty() {
            return Err(fail("union of no pieces"));
        }
        let n = inning(h);
        let piece = self.piece_of(n);
        let sg = g.on(piece.sub.space());
        let mut sh = self.sub_history(h, n)?;
        let o = open_move(h.last().ok_or_else(|| fail("no move to answer"))?)?;
        sh.push(Move::Open(piece.sub.trace_open(o)));
        match piece.strategy.next(&sg, &sh)? {
            Move::Point(q) => Ok(Move::Point(piece.sub.embed(q))),
            Move::Points(qs) => Ok(Move::Points(qs.iter().map(|&q| piece.sub.embed(q)).collect())),
            _ => Err(fail("pieces must answer with points")),
        }
    }

    fn note(&self, _g: &Game, h: &[Move]) -> Option<String> {
        (!self.pieces.is_empty()).then(|| format!("piece {}", inning(h) % self.pieces.len()))
    }

    fn state_key(&self, g: &Game, h: &[Move]) -> Option<u64> {
        if self.pieces.is_empty() || !g.space.is_finite() {
            return None;
        }
        let n = inning(h);
        let k = self.pieces.len();
        let mut parts = vec![(n % k) as u64];
        for i in 0..k {
            // the history piece i will see at its next inning
            let next = n + (i + k - n % k) % k;
            let piece = &self.pieces[i];
            let sh = self.sub_history(h, next).ok()?;
            let space = piece.sub.space();
            parts.push(piece.strategy.state_key(&g.on(space.clone()), &sh)?);
            parts.push(acc_of(&space, &sh));
        }
        Some(mix(&parts))
    }
}

/// Plays the union strategy against a fixed sequence of I's opens and
/// returns II's points per inning.
pub fn union_selection(g: &Game, pieces: Vec<Piece>, opens: &[OpenSet]) -> Result<Vec<Vec<usize>>> {
    let s = UnionStrategy { pieces };
    let mut h = Vec::with_capacity(2 * opens.len());
    let mut out = Vec::with_capacity(opens.len());
    for o in opens {
        h.push(Move::Open(o.clone()));
        let m = s.next(g, &h)?;
        out.push(match &m {
            Move::Point(p) => vec![*p],
            Move::Points(ps) => ps.clone(),
            _ => unreachable!(),
        });
        h.push(m);
    }
    Ok(out)
}

/// II in `S+` on the open subspace `sub` of X from II's strategy `tau` on X:
/// answer O with tau's point against `O ∪ int_compl` when it lies in O, and
/// with the first point of O otherwise.
pub fn restrict_splus_strategy(tau: Strat, sub: Subspace, int_compl: OpenSet) -> Strat {
    std::sync::Arc::new(RestrictStrategy { tau, sub, int_compl })
}

struct RestrictStrategy {
    tau: Strat,
    sub: Subspace,
    int_compl: OpenSet,
}

impl RestrictStrategy {
    /// `O ∪ int_compl` as an open set of X.
    fn widen(&self, o: &OpenSet) -> OpenSet {
        let x = self.sub.parent();
        let lifted = self.sub.lift_open(o);
        match self.sub.space().point_count() {
            Some(n) if x.is_finite() => {
                let inside = (0..n).fold(0u64, |a, q| a | 1 << self.sub.embed(q));
                let exact = x.open_mask(&lifted) & inside;
                open_of(x, exact | x.open_mask(&self.int_compl))
            }
            _ => lifted.union(&self.int_compl),
        }
    }

    /// tau's history on X and its pending answer to the last open.
    fn replay(&self, g: &Game, h: &[Move]) -> Result<(Game, Vec<Move>, Option<usize>)> {
        let gx = g.on(self.sub.parent().clone());
        let mut th = Vec::with_capacity(h.len());
        let mut pending = None;
        for m in h {
            if let Move::Open(o) = m {
                th.push(Move::Open(self.widen(o)));
                match self.tau.next(&gx, &th)? {
                    Move::Point(p) => pending = Some(p),
                    _ => return Err(fail("tau must answer with points")),
                }
                th.push(Move::Point(pending.unwrap()));
            }
        }
        if h.len() % 2 == 1 {
            th.pop();
        } else {
            pending = None;
        }
        Ok((gx, th, pending))
    }

    fn answer(&self, g: &Game, h: &[Move]) -> Result<(usize, bool)> {
        let (_, _, pending) = self.replay(g, h)?;
        let o = open_move(h.last().ok_or_else(|| fail("no move to answer"))?)?;
        if let Some(q) = pending.and_then(|p| self.sub.sub_index(p)) {
            if g.space.contains(o, q) {
                return Ok((q, false));
            }
        }
        let q = first_point_in(&g.space, o).ok_or_else(|| fail(format!("{o} has no point")))?;
        Ok((q, true))
    }
}

impl Strategy for RestrictStrategy {
    fn label(&self) -> String {
        format!("restrict({})", self.tau.label())
    }

    fn next(&self, g: &Game, h: &[Move]) -> Result<Move> {
        self.answer(g, h).map(|(q, _)| Move::Point(q))
    }

    fn note(&self, g: &Game, h: &[Move]) -> Option<String> {
        match self.answer(g, h) {
            Ok((_, true)) => Some("fallback: tau's point lies outside the subspace open".into()),
            _ => None,
        }
    }

    fn state_key(&self, g: &Game, h: &[Move]) -> Option<u64> {
        if !g.space.is_finite() {
            return None;
        }
        let (gx, th, _) = self.replay(g, h).ok()?;
        Some(mix(&[self.tau.state_key(&gx, &th)?, acc_of(&gx.space, &th)]))
    }
}

/// II in `S+` on X from II's strategy `tau` on the dense subspace `sub`:
/// answer O with tau's point against the trace of O.
pub fn lift_dense_strategy(tau: Strat, sub: Subspace) -> Strat {
    std::sync::Arc::new(LiftStrategy { tau, sub })
}

struct LiftStrategy {
    tau: Strat,
    sub: Subspace,
}

impl LiftStrategy {
    fn traced(&self, h: &[Move]) -> Result<Vec<Move>> {
        h.iter()
            .map(|m| match m {
                Move::Open(o) => Ok(Move::Open(self.sub.trace_open(o))),
                Move::Point(p) => self
                    .sub
                    .sub_index(*p)
                    .map(Move::Point)
                    .ok_or_else(|| fail(format!("point {p} lies outside the dense subspace"))),
                _ => Err(fail("unexpected move in the history")),
            })
            .collect()
    }
}

impl Strategy for LiftStrategy {
    fn label(&self) -> String {
        format!("lift({})", self.tau.label())
    }

    fn next(&self, g: &Game, h: &[Move]) -> Result<Move> {
        let gd = g.on(self.sub.space());
        match self.tau.next(&gd, &self.traced(h)?)? {
            Move::Point(q) => Ok(Move::Point(self.sub.embed(q))),
            _ => Err(fail("tau must answer with points")),
        }
    }

    fn state_key(&self, g: &Game, h: &[Move]) -> Option<u64> {
        if !g.space.is_finite() {
            return None;
        }
        let gd = g.on(self.sub.space());
        let dh = self.traced(h).ok()?;
        Some(mix(&[self.tau.state_key(&gd, &dh)?, acc_of(&gd.space, &dh)]))
    }
}
