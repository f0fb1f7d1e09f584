//! Countably presented spaces.
//!
//! A space is a point universe `0, 1, 2, …` together with an enumerated base
//! and a decidable membership relation. Finite spaces are the exactly
//! computable case; countable ones are probed up to explicit horizons.

mod constructions;
mod finite;
mod predicates;
mod rationals;
mod sets;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use constructions::{
    alexandroff_double, dense_subspace, dense_subspace_of, induced_subspace, induced_subspace_of,
    open_subspace, open_subspace_of, product, AlexandroffDouble, DoubleBase, ProductSpace,
    Subspace,
};
pub use finite::{finite_space, parse_finite_space, FiniteSpaceFile};
pub use predicates::{
    dense_at_horizon, dense_union_at_horizon, is_cover_at_horizon, is_omega_cover_at_horizon,
    meets_open,
};
pub use rationals::{rationals, Dyadic, Rationals};
pub use sets::{CoverFamily, Family, FiniteSet, OmegaCover, OpenSet, PointSet};

/// Size of a point universe or base enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl Count {
    pub fn finite(self) -> Option<usize> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Count::Finite(_))
    }

    /// True when `i` is a valid index.
    pub fn admits(self, i: usize) -> bool {
        match self {
            Count::Finite(n) => i < n,
            Count::Infinite => true,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "ω"),
        }
    }
}

/// Outcome of asking whether finitely many base elements have a common point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meet {
    Witness(usize),
    Empty,
    Unknown,
}

/// The data defining a presented space.
///
/// Implementors must guarantee `member(base_witness(b), b)` for every base
/// index and that the base covers the space.
pub trait Presentation: Send + Sync {
    fn label(&self) -> String;
    fn points(&self) -> Count;
    fn bases(&self) -> Count;
    fn member(&self, point: usize, base: usize) -> bool;
    fn base_witness(&self, base: usize) -> usize;

    /// A common point of the listed base elements. The default scans all
    /// points of a finite space and gives up on infinite ones.
    fn meet(&self, bases: &[usize]) -> Meet {
        match self.points() {
            Count::Finite(n) => (0..n)
                .find(|&p| bases.iter().all(|&b| self.member(p, b)))
                .map_or(Meet::Empty, Meet::Witness),
            Count::Infinite => match bases {
                [b] => Meet::Witness(self.base_witness(*b)),
                _ => Meet::Unknown,
            },
        }
    }

    /// Whether base element `base` is contained in the union of `parts`.
    fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        if parts.contains(&base) {
            return Some(true);
        }
        match self.points() {
            Count::Finite(n) => Some((0..n).all(|p| {
                !self.member(p, base) || parts.iter().any(|&q| self.member(p, q))
            })),
            Count::Infinite => None,
        }
    }

    /// The whole space as an open set, when it is a finite union of base elements.
    fn whole(&self) -> Option<OpenSet> {
        self.bases()
            .finite()
            .map(|m| OpenSet::new((0..m).collect()))
    }
}

/// Shared handle to an immutable presented space.
#[derive(Clone)]
pub struct Space(Arc<dyn Presentation>);

impl Space {
    pub fn new(p: impl Presentation + 'static) -> Self {
        Space(Arc::new(p))
    }

    pub fn label(&self) -> String {
        self.0.label()
    }

    pub fn points(&self) -> Count {
        self.0.points()
    }

    pub fn bases(&self) -> Count {
        self.0.bases()
    }

    pub fn point_count(&self) -> Option<usize> {
        self.points().finite()
    }

    pub fn base_count(&self) -> Option<usize> {
        self.bases().finite()
    }

    pub fn is_finite(&self) -> bool {
        self.points().is_finite()
    }

    pub fn member(&self, point: usize, base: usize) -> bool {
        self.0.member(point, base)
    }

    pub fn base_witness(&self, base: usize) -> usize {
        self.0.base_witness(base)
    }

    pub fn meet(&self, bases: &[usize]) -> Meet {
        self.0.meet(bases)
    }

    pub fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        self.0.base_within(base, parts)
    }

    pub fn whole(&self) -> Option<OpenSet> {
        self.0.whole()
    }

    pub fn presentation(&self) -> &dyn Presentation {
        &*self.0
    }

    pub fn contains(&self, open: &OpenSet, point: usize) -> bool {
        open.parts().iter().any(|&b| self.member(point, b))
    }

    pub fn contains_all(&self, open: &OpenSet, set: &FiniteSet) -> bool {
        set.elems().iter().all(|&p| self.contains(open, p))
    }

    /// Whether `inner ⊆ outer`; `None` when undecidable for this presentation.
    pub fn open_subset(&self, inner: &OpenSet, outer: &OpenSet) -> Option<bool> {
        let mut all = true;
        for &b in inner.parts() {
            match self.base_within(b, outer.parts()) {
                Some(true) => {}
                Some(false) => all = false,
                None => return None,
            }
        }
        Some(all)
    }

    /// A point of `a ∩ b`, `Meet::Empty` if disjoint.
    pub fn open_meet(&self, a: &OpenSet, b: &OpenSet) -> Meet {
        let mut unknown = false;
        for &x in a.parts() {
            for &y in b.parts() {
                match self.meet(&[x, y]) {
                    Meet::Witness(p) => return Meet::Witness(p),
                    Meet::Empty => {}
                    Meet::Unknown => unknown = true,
                }
            }
        }
        if unknown {
            Meet::Unknown
        } else {
            Meet::Empty
        }
    }

    /// Membership mask of a base element; finite spaces with at most 64 points only.
    pub fn base_mask(&self, b: usize) -> u64 {
        let n = self.point_count().expect("base_mask on an infinite space");
        assert!(n <= 64, "base_mask needs at most 64 points");
        (0..n).filter(|&p| self.member(p, b)).fold(0, |m, p| m | 1 << p)
    }

    pub fn open_mask(&self, open: &OpenSet) -> u64 {
        open.parts().iter().fold(0, |m, &b| m | self.base_mask(b))
    }

    /// Canonical open set for a mask on a finite space: every base element inside it.
    /// Returns `None` when the mask is not open.
    pub fn open_from_mask(&self, mask: u64) -> Option<OpenSet> {
        let m = self.base_count()?;
        let mut union = 0u64;
        let mut parts = Vec::new();
        for b in 0..m {
            let bm = self.base_mask(b);
            if bm & !mask == 0 {
                parts.push(b);
                union |= bm;
            }
        }
        (union == mask).then(|| OpenSet::new(parts))
    }

    /// Checks the presentation invariants: nonempty base elements with valid
    /// witnesses, a covering base, and the base intersection axiom. Exact on
    /// finite spaces. On infinite spaces only witnesses and covering are
    /// spot-checked for indices below `horizon`.
    pub fn validate(&self, horizon: usize) -> crate::Result<()> {
        let invalid = |msg: String| Err(crate::Error::InvalidSpace(msg));
        let points = self.point_count().unwrap_or(horizon);
        let bases = self.base_count().unwrap_or(horizon);
        for b in 0..bases {
            let w = self.base_witness(b);
            if !self.points().admits(w) || !self.member(w, b) {
                return invalid(format!("base element {b} does not contain its witness {w}"));
            }
        }
        let cover_search = self.base_count().unwrap_or(horizon.saturating_mul(64));
        for p in 0..points {
            if !(0..cover_search).any(|b| self.member(p, b)) {
                return invalid(format!("point {p} lies in no base element"));
            }
        }
        if !self.is_finite() {
            return Ok(());
        }
        let masks: Vec<u64> = (0..bases).map(|b| self.base_mask(b)).collect();
        for a in 0..bases {
            for b in a + 1..bases {
                let both = masks[a] & masks[b];
                for p in (0..points).filter(|p| both >> p & 1 == 1) {
                    let refined = masks
                        .iter()
                        .any(|&c| c >> p & 1 == 1 && c & !both == 0);
                    if !refined {
                        return invalid(format!(
                            "point {p} in base {a} ∩ {b} has no base element inside the intersection"
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space({})", self.label())
    }
}

/// The discrete space on `n` points.
pub fn discrete(n: usize) -> Space {
    finite_space(n, &[]).expect("antichain is a preorder")
}

/// The chain `0 ≤ 1 ≤ … ≤ n-1`.
pub fn chain(n: usize) -> Space {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    finite_space(n, &pairs).expect("chain is a preorder")
}

/// Two points with opens ∅, {1}, {0,1}.
pub fn sierpinski() -> Space {
    finite_space(2, &[(0, 1)]).expect("sierpinski is a preorder")
}
