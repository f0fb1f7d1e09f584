use std::collections::HashMap;

use crate::games::{Class, GameKind, Player};
use crate::space::Space;
use crate::{Error, Result};

/// Winner by plain minimax, independent of the attractor solver.
///
/// Opens are closed up from the base masks by brute force, every move of both
/// players is listed explicitly, and the target owner is asked to force the
/// target within `n` innings (along an optimal play the accumulated set grows
/// strictly, so `n` innings suffice). Meant for spaces of at most 3 points.
pub fn minimax_winner(space: &Space, kind: GameKind) -> Result<Player> {
    let n = space
        .point_count()
        .filter(|&n| n <= 4)
        .ok_or_else(|| Error::Unsupported("minimax needs at most 4 points".into()))?;
    let bases = space.base_count().unwrap_or(0);
    let full = (1u64 << n) - 1;
    let mut opens = vec![0u64];
    for b in 0..bases {
        let m = space.base_mask(b);
        for k in 0..opens.len() {
            let u = opens[k] | m;
            if !opens.contains(&u) {
                opens.push(u);
            }
        }
        if !opens.contains(&m) {
            opens.push(m);
        }
    }
    opens.sort_unstable();
    opens.dedup();
    let nonempty: Vec<u64> = opens.iter().copied().filter(|&u| u != 0).collect();
    let dense = |s: u64| nonempty.iter().all(|&u| u & s != 0);
    let in_class = |c: Class, u: u64| match c {
        Class::Cover => u == full,
        Class::DenseUnion => dense(u),
    };
    let subsets = |items: &[u64]| -> Vec<Vec<u64>> {
        (1u64..1 << items.len())
            .map(|sel| (0..items.len()).filter(|k| sel >> k & 1 == 1).map(|k| items[k]).collect())
            .collect()
    };
    let singles = |mask: u64| -> Vec<u64> { (0..n).filter(|p| mask >> p & 1 == 1).map(|p| 1 << p).collect() };

    // (I's move, II's gains) pairs
    use GameKind::*;
    let mut moves: Vec<Vec<u64>> = Vec::new();
    match kind {
        SelCover(a, _) | SelCoverFin(a, _) => {
            for fam in subsets(&nonempty) {
                let union = fam.iter().fold(0, |x, &y| x | y);
                if !in_class(a, union) {
                    continue;
                }
                moves.push(if matches!(kind, SelCover(..)) {
                    fam
                } else {
                    subsets(&fam).iter().map(|s| s.iter().fold(0, |x, &y| x | y)).collect()
                });
            }
        }
        SPlus | SPlusFin => {
            for &u in nonempty.iter().filter(|&&u| dense(u)) {
                moves.push(if kind == SPlus {
                    singles(u)
                } else {
                    subsets(&singles(u)).iter().map(|s| s.iter().fold(0, |x, &y| x | y)).collect()
                });
            }
        }
        DGame => {
            for d in 1..=full {
                if dense(d) {
                    moves.push(singles(d));
                }
            }
        }
        PointOpen => {
            for &u in &nonempty {
                moves.push(singles(u));
            }
        }
        OpenPicking => {
            for p in 0..n {
                moves.push(nonempty.iter().copied().filter(|u| u >> p & 1 == 1).collect());
            }
        }
    }
    let target = |acc: u64| match kind {
        SelCover(_, Class::Cover) | SelCoverFin(_, Class::Cover) => acc == full,
        _ => dense(acc),
    };
    let owner = kind.target_owner();
    let mut memo: HashMap<(u64, usize), bool> = HashMap::new();
    fn forces(
        acc: u64,
        d: usize,
        owner: Player,
        moves: &[Vec<u64>],
        target: &dyn Fn(u64) -> bool,
        memo: &mut HashMap<(u64, usize), bool>,
    ) -> bool {
        if target(acc) {
            return true;
        }
        if d == 0 {
            return false;
        }
        if let Some(&v) = memo.get(&(acc, d)) {
            return v;
        }
        let v = match owner {
            Player::II => moves
                .iter()
                .all(|rs| rs.iter().any(|&g| forces(acc | g, d - 1, owner, moves, target, memo))),
            Player::I => moves
                .iter()
                .any(|rs| rs.iter().all(|&g| forces(acc | g, d - 1, owner, moves, target, memo))),
        };
        memo.insert((acc, d), v);
        v
    }
    Ok(if forces(0, n, owner, &moves, &target, &mut memo) {
        owner
    } else {
        owner.other()
    })
}
