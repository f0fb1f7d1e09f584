use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::pairing::{finset_rank, finset_unrank};

/// A finite union of base elements, stored as an ascending, duplicate-free
/// list of base indices. The empty list is the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OpenSet(Vec<usize>);

impl OpenSet {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        parts.dedup();
        OpenSet(parts)
    }

    pub fn empty() -> Self {
        OpenSet(Vec::new())
    }

    pub fn basic(b: usize) -> Self {
        OpenSet(vec![b])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        OpenSet::new(parts)
    }

    /// Position of this open set in the canonical finite-set enumeration of base indices.
    pub fn rank(&self) -> usize {
        finset_rank(&self.0)
    }

    pub fn unrank(index: usize) -> OpenSet {
        OpenSet(finset_unrank(index))
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⋃{:?}", self.0)
    }
}

/// A finite set of point indices, ascending and duplicate free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteSet(Vec<usize>);

impl FiniteSet {
    pub fn new(mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        FiniteSet(elems)
    }

    pub fn empty() -> Self {
        FiniteSet(Vec::new())
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.0.iter().all(|p| other.contains(*p))
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FiniteSet::new(v)
    }

    pub fn rank(&self) -> usize {
        finset_rank(&self.0)
    }

    pub fn unrank(index: usize) -> FiniteSet {
        FiniteSet(finset_unrank(index))
    }

    pub fn from_mask(mask: u64) -> FiniteSet {
        FiniteSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &p| m | 1 << p)
    }
}

type EnumFn<T> = dyn Fn(usize) -> Option<T> + Send + Sync;

enum Source<T> {
    Listed(Arc<[T]>),
    Lazy {
        gen: Arc<EnumFn<T>>,
        memo: Arc<Mutex<Vec<Option<T>>>>,
    },
}

impl<T> Clone for Source<T> {
    fn clone(&self) -> Self {
        match self {
            Source::Listed(v) => Source::Listed(v.clone()),
            Source::Lazy { gen, memo } => Source::Lazy {
                gen: gen.clone(),
                memo: memo.clone(),
            },
        }
    }
}

/// A family enumerated by index: either an explicit finite list or a lazy
/// generator. Lazy members are memoized so repeated reads observe identical
/// values; a generator returning `None` marks the end of a finite family.
pub struct Family<T> {
    source: Source<T>,
    label: Arc<str>,
}

impl<T> Clone for Family<T> {
    fn clone(&self) -> Self {
        Family {
            source: self.source.clone(),
            label: self.label.clone(),
        }
    }
}

impl<T: Clone + Send + 'static> Family<T> {
    pub fn listed(label: impl Into<String>, members: Vec<T>) -> Self {
        Family {
            source: Source::Listed(members.into()),
            label: label.into().into(),
        }
    }

    pub fn lazy(
        label: impl Into<String>,
        gen: impl Fn(usize) -> Option<T> + Send + Sync + 'static,
    ) -> Self {
        Family {
            source: Source::Lazy {
                gen: Arc::new(gen),
                memo: Arc::new(Mutex::new(Vec::new())),
            },
            label: label.into().into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of members when the family is an explicit list.
    pub fn len(&self) -> Option<usize> {
        match &self.source {
            Source::Listed(v) => Some(v.len()),
            Source::Lazy { .. } => None,
        }
    }

    pub fn is_listed(&self) -> bool {
        matches!(self.source, Source::Listed(_))
    }

    pub fn get(&self, i: usize) -> Option<T> {
        match &self.source {
            Source::Listed(v) => v.get(i).cloned(),
            Source::Lazy { gen, memo } => {
                let mut memo = memo.lock().unwrap();
                while memo.len() <= i {
                    let next = memo.len();
                    if matches!(memo.last(), Some(None)) {
                        return None;
                    }
                    memo.push(gen(next));
                }
                memo[i].clone()
            }
        }
    }

    /// Members `0..bound`, stopping early at the end of a finite family.
    pub fn prefix(&self, bound: usize) -> Vec<T> {
        let mut out = Vec::new();
        for i in 0..bound {
            match self.get(i) {
                Some(x) => out.push(x),
                None => break,
            }
        }
        out
    }

    /// True when the family has no member at index `bound`, i.e. every
    /// member was seen within `bound` reads.
    pub fn exhausted_within(&self, bound: usize) -> bool {
        self.get(bound).is_none()
    }

    /// First index `< bound` whose member satisfies `pred`.
    pub fn position(&self, bound: usize, mut pred: impl FnMut(&T) -> bool) -> Option<usize> {
        for i in 0..bound {
            let x = self.get(i)?;
            if pred(&x) {
                return Some(i);
            }
        }
        None
    }
}

impl<T> fmt::Debug for Family<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family({})", self.label)
    }
}

/// A lazily enumerated family of open sets.
pub type CoverFamily = Family<OpenSet>;
/// A family promised to be an ω-cover.
pub type OmegaCover = CoverFamily;

type PointFn = dyn Fn(usize) -> usize + Send + Sync;
type PredFn = dyn Fn(usize) -> bool + Send + Sync;

/// A set of points given by an enumeration (repeats allowed) and, when
/// available, a decidable membership test.
#[derive(Clone)]
pub struct PointSet {
    label: Arc<str>,
    enumerate: Arc<PointFn>,
    contains: Option<Arc<PredFn>>,
    listed: Option<Arc<[usize]>>,
}

impl PointSet {
    pub fn from_fn(
        label: impl Into<String>,
        enumerate: impl Fn(usize) -> usize + Send + Sync + 'static,
        contains: Option<Arc<PredFn>>,
    ) -> Self {
        PointSet {
            label: label.into().into(),
            enumerate: Arc::new(enumerate),
            contains,
            listed: None,
        }
    }

    /// A finite nonempty list of points; the enumeration cycles through it.
    pub fn listed(label: impl Into<String>, mut points: Vec<usize>) -> Self {
        assert!(!points.is_empty(), "listed point set must be nonempty");
        let list: Arc<[usize]> = points.clone().into();
        points.sort_unstable();
        points.dedup();
        let sorted: Arc<[usize]> = points.into();
        let cyc = list.clone();
        PointSet {
            label: label.into().into(),
            enumerate: Arc::new(move |n| cyc[n % cyc.len()]),
            contains: Some(Arc::new(move |p| sorted.binary_search(&p).is_ok())),
            listed: Some(list),
        }
    }

    /// Points `0..universe` (or all of ℕ) satisfying `pred`, enumerated in
    /// index order. The filtered enumeration is memoized.
    pub fn filtered(
        label: impl Into<String>,
        universe: Option<usize>,
        pred: impl Fn(usize) -> bool + Send + Sync + 'static,
    ) -> Self {
        let pred: Arc<PredFn> = Arc::new(pred);
        let memo: Arc<Mutex<(usize, Vec<usize>)>> = Arc::new(Mutex::new((0, Vec::new())));
        let p2 = pred.clone();
        let enumerate = move |n: usize| {
            let mut guard = memo.lock().unwrap();
            let (cursor, found) = &mut *guard;
            loop {
                if n < found.len() {
                    return found[n];
                }
                if universe.is_some_and(|u| *cursor >= u) {
                    assert!(!found.is_empty(), "filtered point set is empty");
                    return found[n % found.len()];
                }
                let c = *cursor;
                *cursor += 1;
                if p2(c) {
                    found.push(c);
                }
            }
        };
        PointSet {
            label: label.into().into(),
            enumerate: Arc::new(enumerate),
            contains: Some(pred),
            listed: None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn enumerate(&self, n: usize) -> usize {
        (self.enumerate)(n)
    }

    pub fn contains(&self, p: usize) -> Option<bool> {
        self.contains.as_ref().map(|c| c(p))
    }

    pub fn has_membership(&self) -> bool {
        self.contains.is_some()
    }

    pub fn listed_points(&self) -> Option<&[usize]> {
        self.listed.as_deref()
    }

    pub fn prefix(&self, bound: usize) -> Vec<usize> {
        (0..bound).map(|n| self.enumerate(n)).collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet({})", self.label)
    }
}
