//! Derived spaces: Alexandroff double, products and subspaces.

use std::sync::{Arc, Mutex};

use super::{Count, FiniteSet, Meet, OpenSet, PointSet, Presentation, Space};
use crate::pairing::Pairing;
use crate::{Error, Result};

/// `X × {0,1}`: point `(x, c)` has index `2x + c`; copy 1 is isolated.
///
/// Over an infinite base the base elements are the singletons `{(x,1)}` at
/// even indices and `B×{0} ∪ (B∖F)×{1}` at odd indices `2·diag(B, F) + 1`,
/// with `F` a canonically ranked finite set. Over a finite space the first
/// `n` base elements are the singletons and the rest are `B×{0,1}`.
#[derive(Clone)]
pub struct AlexandroffDouble {
    inner: Space,
}

/// A base element of the double, decoded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoubleBase {
    Isolated(usize),
    Split { base: usize, removed: FiniteSet },
}

impl AlexandroffDouble {
    pub fn new(inner: Space) -> Self {
        AlexandroffDouble { inner }
    }

    pub fn space(&self) -> Space {
        Space::new(self.clone())
    }

    pub fn point(x: usize, copy: usize) -> usize {
        2 * x + copy
    }

    pub fn split_point(p: usize) -> (usize, usize) {
        (p / 2, p % 2)
    }

    pub fn decode_base(&self, b: usize) -> DoubleBase {
        match self.inner.point_count() {
            Some(n) => {
                if b < n {
                    DoubleBase::Isolated(b)
                } else {
                    DoubleBase::Split {
                        base: b - n,
                        removed: FiniteSet::empty(),
                    }
                }
            }
            None => {
                if b % 2 == 0 {
                    DoubleBase::Isolated(b / 2)
                } else {
                    let (base, f) = self.split_pairing().decode(b / 2);
                    DoubleBase::Split {
                        base,
                        removed: FiniteSet::unrank(f),
                    }
                }
            }
        }
    }

    /// Base index of `B×{0} ∪ (B∖F)×{1}`; on finite inputs `F` must be empty.
    pub fn split_base(&self, base: usize, removed: &FiniteSet) -> Option<usize> {
        match self.inner.point_count() {
            Some(n) => removed.is_empty().then_some(n + base),
            None => self
                .split_pairing()
                .try_encode(base, removed.rank())?
                .checked_mul(2)?
                .checked_add(1),
        }
    }

    pub fn isolated_base(&self, x: usize) -> usize {
        match self.inner.point_count() {
            Some(_) => x,
            None => 2 * x,
        }
    }

    fn split_pairing(&self) -> Pairing {
        Pairing::new(self.inner.base_count(), None)
    }
}

impl Presentation for AlexandroffDouble {
    fn label(&self) -> String {
        format!("double:{}", self.inner.label())
    }

    fn points(&self) -> Count {
        match self.inner.points() {
            Count::Finite(n) => Count::Finite(2 * n),
            Count::Infinite => Count::Infinite,
        }
    }

    fn bases(&self) -> Count {
        match (self.inner.points(), self.inner.bases()) {
            (Count::Finite(n), Count::Finite(m)) => Count::Finite(n + m),
            _ => Count::Infinite,
        }
    }

    fn member(&self, point: usize, base: usize) -> bool {
        let (x, c) = Self::split_point(point);
        match self.decode_base(base) {
            DoubleBase::Isolated(y) => c == 1 && x == y,
            DoubleBase::Split { base, removed } => {
                self.inner.member(x, base) && (c == 0 || !removed.contains(x))
            }
        }
    }

    fn base_witness(&self, base: usize) -> usize {
        match self.decode_base(base) {
            DoubleBase::Isolated(x) => Self::point(x, 1),
            DoubleBase::Split { base, .. } => Self::point(self.inner.base_witness(base), 0),
        }
    }

    fn meet(&self, bases: &[usize]) -> Meet {
        let decoded: Vec<DoubleBase> = bases.iter().map(|&b| self.decode_base(b)).collect();
        if let Some(x) = decoded.iter().find_map(|d| match d {
            DoubleBase::Isolated(x) => Some(*x),
            _ => None,
        }) {
            let p = Self::point(x, 1);
            return if bases.iter().all(|&b| self.member(p, b)) {
                Meet::Witness(p)
            } else {
                Meet::Empty
            };
        }
        let inner: Vec<usize> = decoded
            .iter()
            .map(|d| match d {
                DoubleBase::Split { base, .. } => *base,
                DoubleBase::Isolated(_) => unreachable!(),
            })
            .collect();
        match self.inner.meet(&inner) {
            Meet::Witness(w) => Meet::Witness(Self::point(w, 0)),
            other => other,
        }
    }

    fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        if parts.contains(&base) {
            return Some(true);
        }
        if self.inner.is_finite() {
            let n = self.points().finite()?;
            return Some((0..n).all(|p| {
                !self.member(p, base) || parts.iter().any(|&q| self.member(p, q))
            }));
        }
        match self.decode_base(base) {
            DoubleBase::Isolated(x) => {
                let p = Self::point(x, 1);
                Some(parts.iter().any(|&q| self.member(p, q)))
            }
            DoubleBase::Split { base, .. } => {
                let inner: Vec<usize> = parts
                    .iter()
                    .filter_map(|&q| match self.decode_base(q) {
                        DoubleBase::Split { base, .. } => Some(base),
                        DoubleBase::Isolated(_) => None,
                    })
                    .collect();
                match self.inner.base_within(base, &inner) {
                    Some(false) => Some(false),
                    _ => None,
                }
            }
        }
    }

    fn whole(&self) -> Option<OpenSet> {
        if let Some(m) = self.bases().finite() {
            return Some(OpenSet::new((0..m).collect()));
        }
        let w = self.inner.whole()?;
        let parts = w
            .parts()
            .iter()
            .map(|&b| self.split_base(b, &FiniteSet::empty()))
            .collect::<Option<Vec<_>>>()?;
        Some(OpenSet::new(parts))
    }
}

pub fn alexandroff_double(s: &Space) -> Space {
    AlexandroffDouble::new(s.clone()).space()
}

/// `X × Y` with the rectangle base. Points and base elements are paired
/// with [`Pairing`].
#[derive(Clone)]
pub struct ProductSpace {
    x: Space,
    y: Space,
}

impl ProductSpace {
    pub fn new(x: Space, y: Space) -> Self {
        ProductSpace { x, y }
    }

    pub fn space(&self) -> Space {
        Space::new(self.clone())
    }

    pub fn factors(&self) -> (&Space, &Space) {
        (&self.x, &self.y)
    }

    fn point_pairing(&self) -> Pairing {
        Pairing::new(self.x.point_count(), self.y.point_count())
    }

    fn base_pairing(&self) -> Pairing {
        Pairing::new(self.x.base_count(), self.y.base_count())
    }

    pub fn point(&self, px: usize, py: usize) -> usize {
        self.point_pairing().encode(px, py)
    }

    pub fn split_point(&self, p: usize) -> (usize, usize) {
        self.point_pairing().decode(p)
    }

    pub fn rect(&self, bx: usize, by: usize) -> usize {
        self.base_pairing().encode(bx, by)
    }

    pub fn split_rect(&self, b: usize) -> (usize, usize) {
        self.base_pairing().decode(b)
    }
}

impl Presentation for ProductSpace {
    fn label(&self) -> String {
        format!("product:{},{}", self.x.label(), self.y.label())
    }

    fn points(&self) -> Count {
        self.point_pairing().size().map_or(Count::Infinite, Count::Finite)
    }

    fn bases(&self) -> Count {
        self.base_pairing().size().map_or(Count::Infinite, Count::Finite)
    }

    fn member(&self, point: usize, base: usize) -> bool {
        let (px, py) = self.split_point(point);
        let (bx, by) = self.split_rect(base);
        self.x.member(px, bx) && self.y.member(py, by)
    }

    fn base_witness(&self, base: usize) -> usize {
        let (bx, by) = self.split_rect(base);
        self.point(self.x.base_witness(bx), self.y.base_witness(by))
    }

    fn meet(&self, bases: &[usize]) -> Meet {
        let (xs, ys): (Vec<usize>, Vec<usize>) = bases.iter().map(|&b| self.split_rect(b)).unzip();
        match (self.x.meet(&xs), self.y.meet(&ys)) {
            (Meet::Witness(a), Meet::Witness(b)) => Meet::Witness(self.point(a, b)),
            (Meet::Empty, _) | (_, Meet::Empty) => Meet::Empty,
            _ => Meet::Unknown,
        }
    }

    fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        if parts.contains(&base) {
            return Some(true);
        }
        if let Some(n) = self.points().finite() {
            return Some((0..n).all(|p| {
                !self.member(p, base) || parts.iter().any(|&q| self.member(p, q))
            }));
        }
        let (bx, by) = self.split_rect(base);
        let single = parts.iter().any(|&q| {
            let (qx, qy) = self.split_rect(q);
            self.x.base_within(bx, &[qx]) == Some(true) && self.y.base_within(by, &[qy]) == Some(true)
        });
        single.then_some(true)
    }

    fn whole(&self) -> Option<OpenSet> {
        let wx = self.x.whole()?;
        let wy = self.y.whole()?;
        let mut parts = Vec::new();
        for &a in wx.parts() {
            for &b in wy.parts() {
                parts.push(self.rect(a, b));
            }
        }
        Some(OpenSet::new(parts))
    }
}

pub fn product(sx: &Space, sy: &Space) -> Space {
    ProductSpace::new(sx.clone(), sy.clone()).space()
}

type Pred = dyn Fn(usize) -> bool + Send + Sync;

#[derive(Clone)]
enum Trace {
    /// Subspace is an open set: base traces are decided through `meet`.
    Open(OpenSet),
    /// Dense subspace: every parent base element is kept (promise).
    Dense,
    /// Finite parent: traces decided by scanning.
    Finite,
}

struct Cache {
    point_cursor: usize,
    points: Vec<usize>,
    base_cursor: usize,
    /// `(parent base, parent witness)` for each kept base element.
    bases: Vec<(usize, usize)>,
}

/// A subspace of a presented space, re-enumerated in parent order.
#[derive(Clone)]
pub struct Subspace {
    parent: Space,
    label: String,
    pred: Arc<Pred>,
    trace: Trace,
    points: Count,
    bases: Count,
    cache: Arc<Mutex<Cache>>,
}

const DENSE_WITNESS_SEARCH: usize = 1 << 20;

impl Subspace {
    fn build(parent: &Space, label: String, pred: Arc<Pred>, trace: Trace) -> Result<Self> {
        let mut sub = Subspace {
            parent: parent.clone(),
            label,
            pred,
            trace,
            points: Count::Infinite,
            bases: Count::Infinite,
            cache: Arc::new(Mutex::new(Cache {
                point_cursor: 0,
                points: Vec::new(),
                base_cursor: 0,
                bases: Vec::new(),
            })),
        };
        if let (Some(n), Some(m)) = (parent.point_count(), parent.base_count()) {
            let (np, nb) = {
                let mut c = sub.cache.lock().unwrap();
                sub.extend_points(&mut c, n);
                sub.extend_bases(&mut c, m);
                (c.points.len(), c.bases.len())
            };
            if np == 0 {
                return Err(Error::InvalidSpace(format!("{} has no points", sub.label)));
            }
            sub.points = Count::Finite(np);
            sub.bases = Count::Finite(nb);
        }
        Ok(sub)
    }

    fn extend_points(&self, c: &mut Cache, upto: usize) {
        while c.point_cursor < upto {
            let p = c.point_cursor;
            c.point_cursor += 1;
            if (self.pred)(p) {
                c.points.push(p);
            }
        }
    }

    fn extend_bases(&self, c: &mut Cache, upto: usize) {
        while c.base_cursor < upto {
            let b = c.base_cursor;
            c.base_cursor += 1;
            if let Some(w) = self.trace_witness(c, b) {
                c.bases.push((b, w));
            }
        }
    }

    /// A parent point of the trace of parent base `b`, if the trace is nonempty.
    fn trace_witness(&self, c: &mut Cache, b: usize) -> Option<usize> {
        match &self.trace {
            Trace::Finite => {
                let n = self.parent.point_count().unwrap();
                self.extend_points(c, n);
                c.points.iter().copied().find(|&p| self.parent.member(p, b))
            }
            Trace::Open(u) => u.parts().iter().find_map(|&part| match self.parent.meet(&[b, part]) {
                Meet::Witness(w) => Some(w),
                _ => None,
            }),
            Trace::Dense => {
                let w = self.parent.base_witness(b);
                if (self.pred)(w) {
                    return Some(w);
                }
                (0..DENSE_WITNESS_SEARCH).find_map(|i| {
                    while c.points.len() <= i {
                        let next = c.point_cursor + 1;
                        self.extend_points(c, next);
                    }
                    let p = c.points[i];
                    self.parent.member(p, b).then_some(p)
                })
            }
        }
    }

    fn base_entry(&self, sub_base: usize) -> (usize, usize) {
        let mut c = self.cache.lock().unwrap();
        while c.bases.len() <= sub_base {
            let next = c.base_cursor + 1;
            self.extend_bases(&mut c, next);
        }
        c.bases[sub_base]
    }

    pub fn space(&self) -> Space {
        Space::new(self.clone())
    }

    pub fn parent(&self) -> &Space {
        &self.parent
    }

    /// Parent index of a subspace point.
    pub fn embed(&self, sub_point: usize) -> usize {
        let mut c = self.cache.lock().unwrap();
        while c.points.len() <= sub_point {
            let next = c.point_cursor + 1;
            self.extend_points(&mut c, next);
        }
        c.points[sub_point]
    }

    /// Subspace index of a parent point, if it lies in the subspace.
    pub fn sub_index(&self, parent_point: usize) -> Option<usize> {
        if !(self.pred)(parent_point) {
            return None;
        }
        let mut c = self.cache.lock().unwrap();
        self.extend_points(&mut c, parent_point + 1);
        c.points.binary_search(&parent_point).ok()
    }

    pub fn parent_base(&self, sub_base: usize) -> usize {
        self.base_entry(sub_base).0
    }

    /// Subspace index of the trace of parent base `b`; `None` if the trace is empty.
    pub fn sub_base(&self, parent_base: usize) -> Option<usize> {
        if let Trace::Dense = self.trace {
            return Some(parent_base);
        }
        let mut c = self.cache.lock().unwrap();
        self.extend_bases(&mut c, parent_base + 1);
        c.bases.binary_search_by_key(&parent_base, |e| e.0).ok()
    }

    /// Trace of a parent open set: its parts with nonempty trace.
    pub fn trace_open(&self, open: &OpenSet) -> OpenSet {
        OpenSet::new(open.parts().iter().filter_map(|&b| self.sub_base(b)).collect())
    }

    /// The parent open set whose parts are those of `open`; its trace is `open`.
    pub fn lift_open(&self, open: &OpenSet) -> OpenSet {
        OpenSet::new(open.parts().iter().map(|&b| self.parent_base(b)).collect())
    }

    pub fn contains_parent_point(&self, p: usize) -> bool {
        (self.pred)(p)
    }
}

impl Presentation for Subspace {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn points(&self) -> Count {
        self.points
    }

    fn bases(&self) -> Count {
        self.bases
    }

    fn member(&self, point: usize, base: usize) -> bool {
        let p = self.embed(point);
        self.parent.member(p, self.parent_base(base))
    }

    fn base_witness(&self, base: usize) -> usize {
        let (_, w) = self.base_entry(base);
        self.sub_index(w).expect("trace witness lies in the subspace")
    }

    fn meet(&self, bases: &[usize]) -> Meet {
        if let Some(n) = self.points.finite() {
            return (0..n)
                .find(|&p| bases.iter().all(|&b| self.member(p, b)))
                .map_or(Meet::Empty, Meet::Witness);
        }
        let parents: Vec<usize> = bases.iter().map(|&b| self.parent_base(b)).collect();
        match &self.trace {
            Trace::Open(u) => {
                let mut unknown = false;
                for &part in u.parts() {
                    let mut all = parents.clone();
                    all.push(part);
                    match self.parent.meet(&all) {
                        Meet::Witness(w) => {
                            return self.sub_index(w).map_or(Meet::Unknown, Meet::Witness)
                        }
                        Meet::Unknown => unknown = true,
                        Meet::Empty => {}
                    }
                }
                if unknown {
                    Meet::Unknown
                } else {
                    Meet::Empty
                }
            }
            Trace::Dense => match self.parent.meet(&parents) {
                Meet::Empty => Meet::Empty,
                Meet::Witness(w) if (self.pred)(w) => {
                    self.sub_index(w).map_or(Meet::Unknown, Meet::Witness)
                }
                _ => (0..DENSE_WITNESS_SEARCH)
                    .find(|&i| bases.iter().all(|&b| self.member(i, b)))
                    .map_or(Meet::Unknown, Meet::Witness),
            },
            Trace::Finite => unreachable!("finite subspaces have finite point counts"),
        }
    }

    fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        if parts.contains(&base) {
            return Some(true);
        }
        if let Some(n) = self.points.finite() {
            return Some((0..n).all(|p| {
                !self.member(p, base) || parts.iter().any(|&q| self.member(p, q))
            }));
        }
        let pb = self.parent_base(base);
        let pparts: Vec<usize> = parts.iter().map(|&q| self.parent_base(q)).collect();
        match (self.parent.base_within(pb, &pparts), &self.trace) {
            (Some(true), _) => Some(true),
            // a dense subspace sees every gap of the parent
            (Some(false), Trace::Dense) => Some(false),
            _ => None,
        }
    }

    fn whole(&self) -> Option<OpenSet> {
        if let Some(m) = self.bases.finite() {
            return Some(OpenSet::new((0..m).collect()));
        }
        match &self.trace {
            Trace::Open(u) => Some(self.trace_open(u)),
            Trace::Dense => self.parent.whole(),
            Trace::Finite => None,
        }
    }
}

/// The open subspace `u` of `s`. Base elements are the nonempty traces.
pub fn open_subspace_of(s: &Space, u: &OpenSet) -> Result<Subspace> {
    if u.is_empty() {
        return Err(Error::EmptyOpenSet);
    }
    let parent = s.clone();
    let uu = u.clone();
    let pred: Arc<Pred> = Arc::new(move |p| parent.contains(&uu, p));
    let sub = Subspace::build(s, format!("opensub:{},{}", s.label(), u), pred, Trace::Open(u.clone()))?;
    if !s.is_finite() && sub.trace_witness(&mut sub.cache.lock().unwrap(), u.parts()[0]).is_none() {
        return Err(Error::EmptyOpenSet);
    }
    Ok(sub)
}

pub fn open_subspace(s: &Space, u: &OpenSet) -> Result<Space> {
    Ok(open_subspace_of(s, u)?.space())
}

/// The subspace on a dense point set; requires a membership test.
/// Base indices coincide with the parent's.
pub fn dense_subspace_of(s: &Space, d: &PointSet) -> Result<Subspace> {
    if !d.has_membership() {
        return Err(Error::Unsupported(
            "dense subspace needs a point set with a membership test".into(),
        ));
    }
    let dd = d.clone();
    let pred: Arc<Pred> = Arc::new(move |p| dd.contains(p) == Some(true));
    let sub = Subspace::build(s, format!("densesub:{},{}", s.label(), d.label()), pred, Trace::Dense)?;
    if let (Some(m), Some(sm)) = (s.base_count(), sub.bases.finite()) {
        if m != sm {
            return Err(Error::Precondition(format!("{} is not dense", d.label())));
        }
    }
    Ok(sub)
}

pub fn dense_subspace(s: &Space, d: &PointSet) -> Result<Space> {
    Ok(dense_subspace_of(s, d)?.space())
}

/// Arbitrary subspace of a finite space.
pub fn induced_subspace_of(
    s: &Space,
    label: &str,
    pred: impl Fn(usize) -> bool + Send + Sync + 'static,
) -> Result<Subspace> {
    if !s.is_finite() {
        return Err(Error::Unsupported("induced subspaces need a finite parent".into()));
    }
    Subspace::build(s, format!("sub:{},{label}", s.label()), Arc::new(pred), Trace::Finite)
}

pub fn induced_subspace(
    s: &Space,
    label: &str,
    pred: impl Fn(usize) -> bool + Send + Sync + 'static,
) -> Result<Space> {
    Ok(induced_subspace_of(s, label, pred)?.space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{discrete, finite_space, rationals, sierpinski, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    /// All unions of base elements of a finite space, as masks.
    fn opens(s: &Space) -> Vec<u64> {
        let m = s.base_count().unwrap();
        let mut out: Vec<u64> = (0u64..1 << m)
            .map(|sel| (0..m).filter(|b| sel >> b & 1 == 1).fold(0, |a, b| a | s.base_mask(b)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn double_of_discrete_three() {
        let d = alexandroff_double(&discrete(3));
        assert_eq!(d.point_count(), Some(6));
        d.validate(0).unwrap();
        let o = opens(&d);
        for x in 0..3 {
            assert!(o.contains(&(1 << (2 * x + 1))), "(x,1) isolated");
            assert!(!o.contains(&(1 << (2 * x))), "(x,0) not isolated");
        }
    }

    #[test]
    fn double_isolates_exactly_copy_one_on_finite_inputs() {
        for s in [sierpinski(), discrete(2), finite_space(3, &[(0, 1), (0, 2)]).unwrap()] {
            let d = alexandroff_double(&s);
            let o = opens(&d);
            for p in 0..d.point_count().unwrap() {
                assert_eq!(o.contains(&(1 << p)), p % 2 == 1);
            }
        }
    }

    #[test]
    fn double_of_rationals_split_neighbourhoods() {
        let dd = AlexandroffDouble::new(rationals());
        let d = dd.space();
        let f = FiniteSet::new(vec![0, 2]);
        let b = dd.split_base(1, &f).unwrap();
        assert_eq!(dd.decode_base(b), DoubleBase::Split { base: 1, removed: f });
        assert!(d.member(0, b) && !d.member(1, b));
        assert!(d.member(4, b) && !d.member(5, b));
        assert!(d.member(AlexandroffDouble::point(6, 1), b));
        assert!(d.member(dd.base_witness(b), b));
        let s = dd.isolated_base(3);
        assert!(d.member(7, s) && !d.member(6, s));
        d.validate(64).unwrap();
    }

    #[test]
    fn product_of_discrete_pairs() {
        let p = product(&discrete(2), &discrete(2));
        assert_eq!(p.point_count(), Some(4));
        assert_eq!(p.base_count(), Some(4));
        p.validate(0).unwrap();
        let ps = ProductSpace::new(discrete(2), discrete(3));
        for a in 0..2 {
            for b in 0..3 {
                for x in 0..2 {
                    for y in 0..3 {
                        assert_eq!(
                            ps.member(ps.point(x, y), ps.rect(a, b)),
                            x == a && y == b
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn open_subspace_of_whole_is_identical() {
        let s = finite_space(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let sub = open_subspace(&s, &s.whole().unwrap()).unwrap();
        assert_eq!(sub.point_count(), Some(3));
        for p in 0..3 {
            for b in 0..3 {
                assert_eq!(sub.member(p, b), s.member(p, b));
            }
        }
    }

    #[test]
    fn sierpinski_open_point() {
        let s = sierpinski();
        let sub = open_subspace(&s, &OpenSet::basic(1)).unwrap();
        assert_eq!(sub.point_count(), Some(1));
        assert!(open_subspace(&s, &OpenSet::empty()).is_err());
    }

    #[test]
    fn rationals_on_unit_interval() {
        let r = Rationals::new();
        let unit = OpenSet::basic(5);
        let sub = open_subspace_of(&rationals(), &unit).unwrap();
        let s = sub.space();
        let zero = BigRational::from_integer(BigInt::from(0));
        let one = BigRational::from_integer(BigInt::from(1));
        for p in 0..8 {
            let v = r.value(sub.embed(p));
            assert!(zero < v && v < one);
            for b in 0..8 {
                let pb = sub.parent_base(b);
                let (lo, hi) = Rationals::interval(pb).unwrap_or((BigRational::from_integer(BigInt::from(-100)), BigRational::from_integer(BigInt::from(100))));
                assert_eq!(s.member(p, b), lo < v && v < hi);
            }
        }
        for b in 0..32 {
            let w = s.base_witness(b);
            assert!(s.member(w, b));
        }
    }

    #[test]
    fn dyadic_subspace_is_dense() {
        let d = PointSet::filtered("dyadic", None, |p| p % 2 == 0);
        let sub = dense_subspace_of(&rationals(), &d).unwrap();
        for b in 0..64 {
            let w = sub.embed(sub.space().base_witness(b));
            assert_eq!(w % 2, 0);
            assert!(rationals().member(w, b));
        }
    }
}
