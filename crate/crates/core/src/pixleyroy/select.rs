use serde::Serialize;

use super::double::{DoubleCover, DoublePair};
use crate::pairing::{set_decode, undiag};
use crate::space::{FiniteSet, OmegaCover, OpenSet, Space};
use crate::{Error, Result};

/// The `n`-th canonical finite set of `s` (ranks wrap on finite spaces).
fn nth_finite_set(s: &Space, n: usize) -> FiniteSet {
    match s.point_count() {
        Some(p) if p < usize::BITS as usize - 1 => FiniteSet::unrank(n % (1usize << p)),
        _ => FiniteSet::unrank(n),
    }
}

/// First member of `cover` containing `target`.
pub fn omega_select(
    s: &Space,
    cover: &OmegaCover,
    target: &FiniteSet,
    search_bound: usize,
) -> Result<(usize, OpenSet)> {
    cover
        .position(search_bound, |u| s.contains_all(u, target))
        .map(|i| (i, cover.get(i).unwrap()))
        .ok_or_else(|| Error::SearchExhausted {
            what: format!("member of {} containing {:?}", cover.label(), target.elems()),
            bound: search_bound,
        })
}

/// Selection `n ↦` first member of `covers(n)` containing the `n`-th
/// canonical finite set, for `n < count`. Every finite set is served at its
/// own index, so the selection is an ω-cover.
pub fn omega_selector_countable(
    s: &Space,
    covers: &dyn Fn(usize) -> OmegaCover,
    count: usize,
    search_bound: usize,
) -> Result<Vec<OpenSet>> {
    (0..count)
        .map(|n| omega_select(s, &covers(n), &nth_finite_set(s, n), search_bound).map(|r| r.1))
        .collect()
}

/// The `k`-th finite union of base elements: the base indices `set_decode(k)`
/// (restricted to existing indices on a finite base). The enumeration is
/// closed under finite unions and starts with the empty union.
pub fn union_base(s: &Space, k: usize) -> OpenSet {
    let parts = set_decode(k);
    match s.base_count() {
        Some(m) => OpenSet::new(parts.into_iter().filter(|&b| b < m).collect()),
        None => OpenSet::new(parts),
    }
}

/// One inning of the double selector.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleSelection {
    pub n: usize,
    /// `n = diag(k, j)`: the selection serves the `j`-th finite subset of `B_k`.
    pub k: usize,
    pub j: usize,
    pub block: OpenSet,
    pub target: FiniteSet,
    /// Position of the chosen pair inside `dcs(n)`.
    pub index: usize,
    pub pair: DoublePair,
    /// Whether `U_n ⊆ B_k` holds for the chosen pair. Otherwise only
    /// `F_n ⊆ B_k` is guaranteed.
    pub inside_block: bool,
}

/// The `j`-th canonical finite set contained in `block`.
fn nth_subset_of(s: &Space, block: &OpenSet, j: usize, search_bound: usize) -> Result<FiniteSet> {
    if block.is_empty() {
        return Ok(FiniteSet::empty());
    }
    let ranks = match s.point_count() {
        Some(p) => 1usize << p,
        None => usize::MAX,
    };
    let inside: Vec<FiniteSet> = (0..ranks)
        .take(search_bound)
        .map(FiniteSet::unrank)
        .filter(|g| s.contains_all(block, g))
        .take(j + 1)
        .collect();
    match (inside.len() > j, s.is_finite()) {
        (true, _) => Ok(inside[j].clone()),
        (false, true) => Ok(inside[j % inside.len()].clone()),
        (false, false) => Err(Error::SearchExhausted {
            what: format!("finite subset {j} of {block}"),
            bound: search_bound,
        }),
    }
}

/// Picks `(F_n, U_n) ∈ dcs(n)` for `n < count`.
///
/// `ℕ` is split into `I_k = {diag(k, j)}`. For `n = diag(k, j)` the target is
/// the `j`-th finite subset `G` of `B_k = union_base(k)`. The pair chosen is
/// the first with `G ⊆ U ⊆ B_k`, or failing that the first with `G ⊆ U` and
/// `F ⊆ B_k`. Either way, for `G ⊆ B_k ⊆ V` the pair serves `(G, V)`.
pub fn second_countable_double_selector(
    s: &Space,
    dcs: &dyn Fn(usize) -> DoubleCover,
    count: usize,
    search_bound: usize,
) -> Result<Vec<DoubleSelection>> {
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let (k, j) = undiag(n);
        let block = union_base(s, k);
        let target = nth_subset_of(s, &block, j, search_bound)?;
        let dc = dcs(n);
        let pairs = dc.prefix(search_bound)?;
        let serves = |p: &DoublePair| s.contains_all(&p.u, &target);
        // F ⊆ U, so F ⊆ B_k is necessary for U ⊆ B_k
        let candidates: Vec<usize> = (0..pairs.len())
            .filter(|&i| serves(&pairs[i]) && s.contains_all(&block, &pairs[i].f))
            .collect();
        let literal = candidates
            .iter()
            .copied()
            .find(|&i| {
                let u = &pairs[i].u;
                u.parts().iter().all(|&b| s.contains(&block, s.base_witness(b)))
                    && s.open_subset(u, &block) == Some(true)
            });
        let (index, inside_block) = match literal {
            Some(i) => (i, true),
            None => candidates
                .first()
                .map(|&i| (i, false))
                .ok_or_else(|| Error::SearchExhausted {
                    what: format!(
                        "pair of {} serving {:?} inside {block}",
                        dc.label(),
                        target.elems()
                    ),
                    bound: search_bound,
                })?,
        };
        out.push(DoubleSelection {
            n,
            k,
            j,
            block,
            target,
            index,
            pair: pairs[index].clone(),
            inside_block,
        });
    }
    Ok(out)
}
