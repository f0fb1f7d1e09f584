//! The Pixley-Roy hyperspace and ω-double covers.

mod double;
mod select;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::finsolve::FinTopology;
use crate::pairing::{checked_diag, checked_finset_rank, set_code, set_decode, undiag};
use crate::space::{open_subspace_of, Count, FiniteSet, Meet, OpenSet, Presentation, Space};
use crate::Result;

pub use double::{
    doublecover_to_hyperspace_family, embed_omega_cover, hyperspace_family_to_doublecover,
    is_double_cover_at_horizon, long_interval_pairs, DoubleCover, DoublePair,
};
pub use select::{
    omega_select, omega_selector_countable, second_countable_double_selector, union_base,
    DoubleSelection,
};

/// `PR(X)`: the finite subsets of `X` with basic opens `[F,U] = {G : F ⊆ G ⊆ U}`.
///
/// Points are canonical finite-set ranks, so only finite sets of points below
/// 63 are addressable. Over a finite space the base lists every `[F,U]` with
/// `U` in the open lattice (ascending masks) and `F ⊆ U` (ascending rank).
/// Over an infinite space base index `diag(i, j)` is `[F, U]` with `F` of
/// rank `i` and `U` the union of the base indices `set_decode(j)`; when
/// `F ⊄ U` the first base element around each missing point is added to `U`.
#[derive(Clone)]
pub struct PixleyRoy {
    inner: Space,
    finite: Option<Arc<FiniteBase>>,
    decoded: Arc<Mutex<HashMap<usize, (FiniteSet, OpenSet)>>>,
}

struct FiniteBase {
    pairs: Vec<(u64, u64)>,
    index: HashMap<(u64, u64), usize>,
}

impl PixleyRoy {
    pub fn new(inner: Space) -> Result<Self> {
        let finite = match inner.point_count() {
            Some(_) => {
                let t = FinTopology::from_space(&inner)?;
                let mut pairs = Vec::new();
                for &u in t.opens() {
                    let mut fs: Vec<u64> = (0..=u).filter(|f| f & !u == 0).collect();
                    fs.sort_by_key(|&f| FiniteSet::from_mask(f).rank());
                    pairs.extend(fs.into_iter().map(|f| (f, u)));
                }
                let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
                Some(Arc::new(FiniteBase { pairs, index }))
            }
            None => None,
        };
        Ok(PixleyRoy {
            inner,
            finite,
            decoded: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    pub fn space(&self) -> Space {
        Space::new(self.clone())
    }

    pub fn inner(&self) -> &Space {
        &self.inner
    }

    /// Point index of a finite set.
    pub fn point_of(&self, f: &FiniteSet) -> Option<usize> {
        checked_finset_rank(f.elems())
    }

    pub fn set_of(&self, point: usize) -> FiniteSet {
        FiniteSet::unrank(point)
    }

    /// The pair `(F, U)` of base element `b`.
    pub fn pair(&self, b: usize) -> (FiniteSet, OpenSet) {
        if let Some(fb) = &self.finite {
            let (f, u) = fb.pairs[b];
            let open = self.inner.open_from_mask(u).expect("lattice member is open");
            return (FiniteSet::from_mask(f), open);
        }
        if let Some(p) = self.decoded.lock().unwrap().get(&b) {
            return p.clone();
        }
        let (i, j) = undiag(b);
        let f = FiniteSet::unrank(i);
        let mut parts = set_decode(j);
        for &p in f.elems() {
            if !parts.iter().any(|&q| self.inner.member(p, q)) {
                parts.push((0..).find(|&q| self.inner.member(p, q)).unwrap());
            }
        }
        let pair = (f, OpenSet::new(parts));
        self.decoded.lock().unwrap().insert(b, pair.clone());
        pair
    }

    /// Base index of `[F, U]`; `None` when `F ⊄ U` or the index overflows.
    pub fn base_index(&self, f: &FiniteSet, u: &OpenSet) -> Option<usize> {
        if !self.inner.contains_all(u, f) {
            return None;
        }
        match &self.finite {
            Some(fb) => fb.index.get(&(f.mask(), self.inner.open_mask(u))).copied(),
            None => checked_diag(checked_finset_rank(f.elems())?, set_code(u.parts())?),
        }
    }

    /// `G ∈ [F, U]`.
    pub fn in_basic(&self, g: &FiniteSet, f: &FiniteSet, u: &OpenSet) -> bool {
        f.is_subset(g) && self.inner.contains_all(u, g)
    }
}

impl Presentation for PixleyRoy {
    fn label(&self) -> String {
        format!("pr:{}", self.inner.label())
    }

    fn points(&self) -> Count {
        match self.inner.point_count() {
            Some(n) => Count::Finite(1 << n),
            None => Count::Infinite,
        }
    }

    fn bases(&self) -> Count {
        match &self.finite {
            Some(fb) => Count::Finite(fb.pairs.len()),
            None => Count::Infinite,
        }
    }

    fn member(&self, point: usize, base: usize) -> bool {
        let (f, u) = self.pair(base);
        self.in_basic(&FiniteSet::unrank(point), &f, &u)
    }

    fn base_witness(&self, base: usize) -> usize {
        self.pair(base).0.rank()
    }

    /// `[F₁,U₁] ∩ … ∩ [Fₖ,Uₖ]` is nonempty exactly when `H = ⋃Fᵢ` lies in
    /// every `Uᵢ`, and then `H` is its least member.
    fn meet(&self, bases: &[usize]) -> Meet {
        let pairs: Vec<(FiniteSet, OpenSet)> = bases.iter().map(|&b| self.pair(b)).collect();
        let h = pairs
            .iter()
            .fold(FiniteSet::empty(), |acc, (f, _)| acc.union(f));
        if pairs.iter().all(|(_, u)| self.inner.contains_all(u, &h)) {
            checked_finset_rank(h.elems()).map_or(Meet::Unknown, Meet::Witness)
        } else {
            Meet::Empty
        }
    }

    fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        if parts.contains(&base) {
            return Some(true);
        }
        if let Some(n) = self.inner.point_count() {
            return Some((0..1usize << n).all(|p| {
                !self.member(p, base) || parts.iter().any(|&q| self.member(p, q))
            }));
        }
        // [F,U] ⊆ [F',U'] iff F' ⊆ F and U ⊆ U'
        let (f, u) = self.pair(base);
        for &q in parts {
            let (fq, uq) = self.pair(q);
            if fq.is_subset(&f) && self.inner.open_subset(&u, &uq) == Some(true) {
                return Some(true);
            }
        }
        None
    }

    fn whole(&self) -> Option<OpenSet> {
        let all = self.inner.whole()?;
        self.base_index(&FiniteSet::empty(), &all).map(OpenSet::basic)
    }
}

/// The Pixley-Roy hyperspace of `s`.
pub fn pixley_roy(s: &Space) -> Result<Space> {
    Ok(PixleyRoy::new(s.clone())?.space())
}

/// Whether `PR(U)` and the open subspace `[∅, U]` of `PR(X)` have the same
/// open-set lattice, matching `G ⊆ U` with its index inside `[∅, U]`.
/// Finite spaces only.
pub fn open_subspace_commutes(s: &Space, u: &OpenSet) -> Result<bool> {
    let pr = PixleyRoy::new(s.clone())?;
    let sub = open_subspace_of(s, u)?;
    let pr_sub = pixley_roy(&sub.space())?;
    let block = pr
        .base_index(&FiniteSet::empty(), u)
        .ok_or_else(|| crate::Error::Unsupported(format!("no base index for [∅, {u}]")))?;
    let sub_pr = open_subspace_of(&pr.space(), &OpenSet::basic(block))?;
    let n = pr_sub
        .point_count()
        .ok_or_else(|| crate::Error::Unsupported("finite spaces only".into()))?;
    if sub_pr.space().point_count() != Some(n) {
        return Ok(false);
    }
    let mut reindex = Vec::with_capacity(n);
    for g in 0..n {
        let parent = FiniteSet::new(FiniteSet::unrank(g).elems().iter().map(|&p| sub.embed(p)).collect());
        match sub_pr.sub_index(parent.rank()) {
            Some(i) => reindex.push(i),
            None => return Ok(false),
        }
    }
    let lattice = |sp: &Space, map: &dyn Fn(usize) -> usize| -> Result<Vec<u64>> {
        let mut opens: Vec<u64> = FinTopology::from_space(sp)?
            .opens()
            .iter()
            .map(|&m| (0..n).filter(|&p| m >> p & 1 == 1).fold(0u64, |a, p| a | 1 << map(p)))
            .collect();
        opens.sort_unstable();
        Ok(opens)
    };
    Ok(lattice(&pr_sub, &|p| reindex[p])? == lattice(&sub_pr.space(), &|p| p)?)
}

#[cfg(test)]
mod tests;
