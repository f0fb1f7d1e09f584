use crate::games::{inning, FnStrategy, Game, GameKind, Move, Strat};
use crate::pairing::{diag, undiag};
use crate::space::{OpenSet, PointSet, ProductSpace};
use crate::Error;

/// The first `count` innings owned by row `k` of the diagonal pairing.
pub fn diag_innings(k: usize, count: usize) -> Vec<usize> {
    (0..count).map(|j| diag(k, j)).collect()
}

/// I in open-picking on `X × Y`. Inning `diag(k, j)` plays `(x, d_k)` where
/// `x` is sigma_x's `j`-th point against the X-projections of II's answers
/// at the earlier innings of row `k`. A non-basic answer is refined to its
/// first rectangle containing I's point.
pub fn product_pointing_strategy(sigma_x: Strat, dense_y: PointSet, prod: ProductSpace) -> Strat {
    let label = format!("product-pointing({},{})", sigma_x.label(), dense_y.label());
    FnStrategy::new(label, move |g: &Game, h: &[Move]| {
        let (k, j) = undiag(inning(h));
        let (xs, _) = prod.factors();
        let gx = g.on(xs.clone()).with_kind(GameKind::OpenPicking);
        let mut xh = Vec::with_capacity(2 * j);
        for m in 0..j {
            let t = diag(k, m);
            let (Move::Point(p), Move::Open(w)) = (&h[2 * t], &h[2 * t + 1]) else {
                return Err(Error::StrategyFailure("unexpected move in the product history".into()));
            };
            let (px, _) = prod.split_point(*p);
            let ps = prod.space();
            let r = w
                .parts()
                .iter()
                .copied()
                .find(|&r| ps.member(*p, r))
                .ok_or_else(|| Error::StrategyFailure(format!("answer {w} misses point {p}")))?;
            let (bx, _) = prod.split_rect(r);
            xh.push(Move::Point(px));
            xh.push(Move::Open(OpenSet::basic(bx)));
        }
        match sigma_x.next(&gx, &xh)? {
            Move::Point(x) => Ok(Move::Point(prod.point(x, dense_y.enumerate(k)))),
            _ => Err(Error::StrategyFailure("sigma_x must play points".into())),
        }
    })
    .arc()
}
