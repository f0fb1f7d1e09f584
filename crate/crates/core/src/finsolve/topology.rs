use crate::space::{finite_space, OpenSet, Space};
use crate::{Error, Result};

/// A finite topology given by its complete lattice of open sets as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinTopology {
    n: usize,
    /// All open sets, ascending, including `0` and the full mask.
    opens: Vec<u64>,
    /// Nonempty open sets, ascending.
    nonempty: Vec<u64>,
    /// Minimal neighbourhood of each point.
    minimal: Vec<u64>,
}

/// Spaces beyond this size are rejected by the exact solver.
pub const MAX_POINTS: usize = 8;

impl FinTopology {
    pub fn from_space(s: &Space) -> Result<FinTopology> {
        let n = s
            .point_count()
            .ok_or_else(|| Error::Unsupported("exact solving needs a finite space".into()))?;
        if n > MAX_POINTS {
            return Err(Error::Unsupported(format!(
                "exact solving is limited to {MAX_POINTS} points, got {n}"
            )));
        }
        let m = s.base_count().unwrap();
        let bases: Vec<u64> = (0..m).map(|b| s.base_mask(b)).collect();
        let mut opens = vec![0u64];
        for &b in &bases {
            let mut more: Vec<u64> = opens.iter().map(|&o| o | b).collect();
            opens.append(&mut more);
            opens.sort_unstable();
            opens.dedup();
        }
        FinTopology::from_opens(n, opens)
    }

    /// Validates a lattice of open sets: contains `∅` and `X`, closed under
    /// unions and intersections.
    pub fn from_opens(n: usize, mut opens: Vec<u64>) -> Result<FinTopology> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::InvalidSpace(format!("unsupported point count {n}")));
        }
        let full = (1u64 << n) - 1;
        opens.sort_unstable();
        opens.dedup();
        let bad = |msg: String| Err(Error::InvalidSpace(msg));
        if opens.first() != Some(&0) || opens.last() != Some(&full) {
            return bad("topology must contain ∅ and X".into());
        }
        for &a in &opens {
            if a & !full != 0 {
                return bad(format!("open set {a:#b} has points outside X"));
            }
            for &b in &opens {
                if opens.binary_search(&(a | b)).is_err() || opens.binary_search(&(a & b)).is_err() {
                    return bad(format!("opens {a:#b}, {b:#b} not closed under ∪/∩"));
                }
            }
        }
        let minimal = (0..n)
            .map(|p| opens.iter().filter(|&&o| o >> p & 1 == 1).fold(full, |a, &o| a & o))
            .collect();
        let nonempty = opens[1..].to_vec();
        Ok(FinTopology { n, opens, nonempty, minimal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn nonempty_opens(&self) -> &[u64] {
        &self.nonempty
    }

    /// Minimal open neighbourhood of `p`.
    pub fn minimal(&self, p: usize) -> u64 {
        self.minimal[p]
    }

    pub fn is_open(&self, set: u64) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    pub fn interior(&self, set: u64) -> u64 {
        self.opens
            .iter()
            .filter(|&&o| o & !set == 0)
            .fold(0, |a, &o| a | o)
    }

    pub fn closure(&self, set: u64) -> u64 {
        self.full() & !self.interior(self.full() & !set)
    }

    pub fn int_closure(&self, set: u64) -> u64 {
        self.interior(self.closure(set))
    }

    pub fn is_dense(&self, set: u64) -> bool {
        self.minimal.iter().all(|&u| u & set != 0)
    }

    /// The specialization preorder as pairs `(x, y)` with `x ≤ y`, i.e.
    /// `y` in every open set containing `x`.
    pub fn order(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.minimal[x] >> y & 1 == 1 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Rebuilds the presented space (base = minimal neighbourhoods).
    pub fn to_space(&self) -> Space {
        finite_space(self.n, &self.order()).expect("specialization order is a preorder")
    }
}

/// Masks of a space's open sets, via its canonical presentation.
pub fn open_of(s: &Space, mask: u64) -> OpenSet {
    s.open_from_mask(mask).expect("mask is open")
}

pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |p| mask >> p & 1 == 1)
}

/// Every preorder on `n` labelled points (as finite spaces).
pub fn preorder_spaces(n: usize) -> Vec<Space> {
    preorders(n, false)
        .into_iter()
        .map(|pairs| finite_space(n, &pairs).unwrap())
        .collect()
}

/// Every partial order (T0 preorder) on `n` labelled points.
pub fn t0_spaces(n: usize) -> Vec<Space> {
    preorders(n, true)
        .into_iter()
        .map(|pairs| finite_space(n, &pairs).unwrap())
        .collect()
}

/// All spaces on `1..=max` points.
pub fn small_spaces(max: usize, t0_only: bool) -> Vec<Space> {
    (1..=max)
        .flat_map(|n| if t0_only { t0_spaces(n) } else { preorder_spaces(n) })
        .collect()
}

fn preorders(n: usize, antisymmetric: bool) -> Vec<Vec<(usize, usize)>> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for sel in 0u64..1 << off.len() {
        let rel = |i: usize, j: usize| {
            i == j || off.iter().position(|&p| p == (i, j)).is_some_and(|k| sel >> k & 1 == 1)
        };
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k)))
        });
        let anti = !antisymmetric || off.iter().all(|&(i, j)| !(rel(i, j) && rel(j, i)));
        if transitive && anti {
            out.push(
                off.iter()
                    .enumerate()
                    .filter(|(k, _)| sel >> k & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect(),
            );
        }
    }
    out
}
