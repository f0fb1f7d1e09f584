//! Horizon-bounded topological predicates.
//!
//! On finite spaces with full horizons these are exact. On infinite spaces a
//! failed search is reported as [`Error::Indeterminate`] unless the searched
//! object was exhausted.

use super::{CoverFamily, FiniteSet, Meet, OpenSet, PointSet, Space};
use crate::{Error, Result};

fn indeterminate<T>(what: String, bound: usize) -> Result<T> {
    Err(Error::Indeterminate { what, bound })
}

/// Whether `d` meets each of the first `m` base elements within
/// `search_bound` enumeration steps.
pub fn dense_at_horizon(s: &Space, d: &PointSet, m: usize, search_bound: usize) -> Result<bool> {
    let m = s.base_count().map_or(m, |bc| m.min(bc));
    let listed_done = d.listed_points().is_some_and(|l| l.len() <= search_bound);
    for b in 0..m {
        if (0..search_bound).any(|i| s.member(d.enumerate(i), b)) {
            continue;
        }
        if let (Some(n), true) = (s.point_count(), d.has_membership()) {
            if (0..n).any(|p| d.contains(p) == Some(true) && s.member(p, b)) {
                continue;
            }
            return Ok(false);
        }
        if s.is_finite() || listed_done {
            return Ok(false);
        }
        return indeterminate(format!("{} meeting base element {b}", d.label()), search_bound);
    }
    Ok(true)
}

/// Whether every point `< m` lies in a member of `fam` found within
/// `search_bound` members.
pub fn is_cover_at_horizon(
    s: &Space,
    fam: &CoverFamily,
    m: usize,
    search_bound: usize,
) -> Result<bool> {
    let m = s.point_count().map_or(m, |n| m.min(n));
    for p in 0..m {
        if fam.position(search_bound, |u| s.contains(u, p)).is_some() {
            continue;
        }
        if fam.exhausted_within(search_bound) {
            return Ok(false);
        }
        return indeterminate(format!("member of {} containing point {p}", fam.label()), search_bound);
    }
    Ok(true)
}

/// Whether every finite set of canonical index `< m` lies inside one member.
/// On finite spaces only subsets of the point universe are tested.
pub fn is_omega_cover_at_horizon(
    s: &Space,
    fam: &CoverFamily,
    m: usize,
    search_bound: usize,
) -> Result<bool> {
    let m = s.point_count().map_or(m, |n| m.min(1usize << n.min(63)));
    for i in 0..m {
        let f = FiniteSet::unrank(i);
        if fam.position(search_bound, |u| s.contains_all(u, &f)).is_some() {
            continue;
        }
        if fam.exhausted_within(search_bound) {
            return Ok(false);
        }
        return indeterminate(format!("member of {} containing {f:?}", fam.label()), search_bound);
    }
    Ok(true)
}

/// Whether `a ∩ b ≠ ∅`.
pub fn meets_open(s: &Space, a: &OpenSet, b: &OpenSet) -> Result<bool> {
    match s.open_meet(a, b) {
        Meet::Witness(_) => Ok(true),
        Meet::Empty => Ok(false),
        Meet::Unknown => indeterminate(format!("{a} ∩ {b}"), 0),
    }
}

/// Whether the union of the members of `fam` found within `search_bound`
/// meets each of the first `m` base elements.
pub fn dense_union_at_horizon(
    s: &Space,
    fam: &CoverFamily,
    m: usize,
    search_bound: usize,
) -> Result<bool> {
    let m = s.base_count().map_or(m, |bc| m.min(bc));
    let members = fam.prefix(search_bound);
    for b in 0..m {
        let basic = OpenSet::basic(b);
        let mut unknown = false;
        let mut hit = false;
        for u in &members {
            match s.open_meet(&basic, u) {
                Meet::Witness(_) => {
                    hit = true;
                    break;
                }
                Meet::Unknown => unknown = true,
                Meet::Empty => {}
            }
        }
        if hit {
            continue;
        }
        if !unknown && fam.exhausted_within(search_bound) {
            return Ok(false);
        }
        return indeterminate(format!("member of {} meeting base element {b}", fam.label()), search_bound);
    }
    Ok(true)
}
