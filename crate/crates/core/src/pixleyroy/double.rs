use serde::{Deserialize, Serialize};

use super::PixleyRoy;
use crate::space::{CoverFamily, Family, FiniteSet, OmegaCover, OpenSet, Space};
use crate::{Error, Result};

/// A pair `(F, U)` with `F` finite and `F ⊆ U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoublePair {
    #[serde(rename = "F")]
    pub f: FiniteSet,
    #[serde(rename = "U")]
    pub u: OpenSet,
}

impl DoublePair {
    pub fn new(f: FiniteSet, u: OpenSet) -> Self {
        DoublePair { f, u }
    }
}

type Slot = std::result::Result<DoublePair, String>;

/// A family of pairs `(F, U)`, enumerated by index. `F ⊆ U` is checked on
/// every access.
#[derive(Clone)]
pub struct DoubleCover {
    space: Space,
    family: Family<Slot>,
}

impl DoubleCover {
    pub fn listed(space: &Space, label: impl Into<String>, pairs: Vec<DoublePair>) -> Self {
        DoubleCover {
            space: space.clone(),
            family: Family::listed(label, pairs.into_iter().map(Ok).collect()),
        }
    }

    pub fn lazy(
        space: &Space,
        label: impl Into<String>,
        gen: impl Fn(usize) -> Option<DoublePair> + Send + Sync + 'static,
    ) -> Self {
        DoubleCover {
            space: space.clone(),
            family: Family::lazy(label, move |i| gen(i).map(Ok)),
        }
    }

    fn lazy_checked(
        space: &Space,
        label: impl Into<String>,
        gen: impl Fn(usize) -> Option<Slot> + Send + Sync + 'static,
    ) -> Self {
        DoubleCover {
            space: space.clone(),
            family: Family::lazy(label, gen),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn label(&self) -> &str {
        self.family.label()
    }

    pub fn len(&self) -> Option<usize> {
        self.family.len()
    }

    pub fn is_listed(&self) -> bool {
        self.family.is_listed()
    }

    pub fn get(&self, i: usize) -> Result<Option<DoublePair>> {
        match self.family.get(i) {
            None => Ok(None),
            Some(Err(e)) => Err(Error::Precondition(e)),
            Some(Ok(p)) => {
                if !self.space.contains_all(&p.u, &p.f) {
                    return Err(Error::Precondition(format!(
                        "pair {i} of {}: {:?} is not inside {}",
                        self.label(),
                        p.f.elems(),
                        p.u
                    )));
                }
                Ok(Some(p))
            }
        }
    }

    /// Pairs `0..bound`, stopping early at the end of a finite family.
    pub fn prefix(&self, bound: usize) -> Result<Vec<DoublePair>> {
        let mut out = Vec::new();
        for i in 0..bound {
            match self.get(i)? {
                Some(p) => out.push(p),
                None => break,
            }
        }
        Ok(out)
    }

    pub fn exhausted_within(&self, bound: usize) -> bool {
        self.family.exhausted_within(bound)
    }

    /// JSON array of `{ "F": [points], "U": [base indices] }`; listed families only.
    pub fn to_json(&self) -> Result<String> {
        let n = self
            .len()
            .ok_or_else(|| Error::Unsupported("only listed double covers serialize".into()))?;
        Ok(serde_json::to_string(&self.prefix(n)?)?)
    }

    pub fn from_json(space: &Space, label: impl Into<String>, s: &str) -> Result<Self> {
        let pairs: Vec<DoublePair> = serde_json::from_str(s)?;
        let dc = DoubleCover::listed(space, label, pairs);
        dc.prefix(dc.len().unwrap_or(0))?;
        Ok(dc)
    }
}

impl std::fmt::Debug for DoubleCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DoubleCover({})", self.label())
    }
}

/// Whether every tested `(G, V)` with `G ⊆ V` has a pair `(F, U)` among the
/// first `search_bound` with `F ⊆ V` and `G ⊆ U`.
///
/// Tested are the finite sets of canonical rank `< m` and the unions of base
/// elements with index `< m` (the empty union included). On a finite space
/// `m` is capped at the number of subsets and base elements, and open sets are
/// compared by membership.
pub fn is_double_cover_at_horizon(
    s: &Space,
    dc: &DoubleCover,
    m: usize,
    search_bound: usize,
) -> Result<bool> {
    let gs = match s.point_count() {
        Some(n) => m.min(1 << n),
        None => m,
    };
    let bases = s.base_count().map_or(m, |b| b.min(m));
    if bases >= 24 {
        return Err(Error::CapExceeded {
            count: 1u128 << bases,
            cap: 1 << 23,
        });
    }
    let pairs = dc.prefix(search_bound)?;
    let exhausted = dc.exhausted_within(search_bound);
    let mut seen_masks = std::collections::HashSet::new();
    for sel in 0u64..1 << bases {
        let v = OpenSet::new((0..bases).filter(|b| sel >> b & 1 == 1).collect());
        if s.is_finite() && !seen_masks.insert(s.open_mask(&v)) {
            continue;
        }
        for r in 0..gs {
            let g = FiniteSet::unrank(r);
            if !s.contains_all(&v, &g) {
                continue;
            }
            let hit = pairs
                .iter()
                .any(|p| s.contains_all(&v, &p.f) && s.contains_all(&p.u, &g));
            if hit {
                continue;
            }
            if exhausted {
                return Ok(false);
            }
            return Err(Error::Indeterminate {
                what: format!("pair of {} serving ({:?}, {v})", dc.label(), g.elems()),
                bound: search_bound,
            });
        }
    }
    Ok(true)
}

/// `n ↦ (∅, oc(n))`.
pub fn embed_omega_cover(s: &Space, oc: &OmegaCover) -> DoubleCover {
    let label = format!("∅×{}", oc.label());
    match oc.len() {
        Some(n) => DoubleCover::listed(
            s,
            label,
            oc.prefix(n)
                .into_iter()
                .map(|u| DoublePair::new(FiniteSet::empty(), u))
                .collect(),
        ),
        None => {
            let oc = oc.clone();
            DoubleCover::lazy(s, label, move |i| {
                oc.get(i).map(|u| DoublePair::new(FiniteSet::empty(), u))
            })
        }
    }
}

/// `n ↦ [F_n, U_n]` as a family of basic opens of the hyperspace.
///
/// A lazy input whose pair has no base index (an index overflow) ends the
/// output family at that point.
pub fn doublecover_to_hyperspace_family(pr: &PixleyRoy, dc: &DoubleCover) -> Result<CoverFamily> {
    let label = format!("[{}]", dc.label());
    let basic = |pr: &PixleyRoy, p: &DoublePair| -> Result<OpenSet> {
        pr.base_index(&p.f, &p.u).map(OpenSet::basic).ok_or_else(|| {
            Error::Unsupported(format!("no base index for [{:?}, {}]", p.f.elems(), p.u))
        })
    };
    match dc.len() {
        Some(n) => Ok(CoverFamily::listed(
            label,
            dc.prefix(n)?.iter().map(|p| basic(pr, p)).collect::<Result<_>>()?,
        )),
        None => {
            let (pr, dc) = (pr.clone(), dc.clone());
            Ok(CoverFamily::lazy(label, move |i| {
                let p = dc.get(i).ok()??;
                basic(&pr, &p).ok()
            }))
        }
    }
}

/// Reads each member `[F, U]` back as the pair `(F, U)`. Members must be
/// single base elements of the hyperspace.
pub fn hyperspace_family_to_doublecover(pr: &PixleyRoy, fam: &CoverFamily) -> Result<DoubleCover> {
    let label = format!("pairs({})", fam.label());
    let read = |pr: &PixleyRoy, u: &OpenSet| -> std::result::Result<DoublePair, String> {
        match u.parts() {
            [b] => {
                let (f, u) = pr.pair(*b);
                Ok(DoublePair::new(f, u))
            }
            other => Err(format!("member {other:?} is not a basic open of the hyperspace")),
        }
    };
    let s = pr.inner().clone();
    match fam.len() {
        Some(n) => {
            let pairs = fam
                .prefix(n)
                .iter()
                .map(|u| read(pr, u))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(Error::Precondition)?;
            Ok(DoubleCover::listed(&s, label, pairs))
        }
        None => {
            let (pr, fam) = (pr.clone(), fam.clone());
            Ok(DoubleCover::lazy_checked(&s, label, move |i| {
                fam.get(i).map(|u| read(&pr, &u))
            }))
        }
    }
}

/// Pairs `(F, U)` with `U` a finite union of intervals of length at least
/// 1/8 and `F ⊆ U`, in diagonal order of (rank F, code U).
pub fn long_interval_pairs() -> DoubleCover {
    let q = crate::space::rationals();
    let allowed: Vec<usize> = (0..4000)
        .filter(|&b| b == 0 || crate::pairing::undiag(b - 1).1 <= 4)
        .collect();
    let s = q.clone();
    let state = std::sync::Mutex::new((0usize, 0usize));
    DoubleCover::lazy(&q, "long-interval pairs", move |i| {
        let mut st = state.lock().unwrap();
        // the family is read in order, so a running cursor suffices
        assert_eq!(st.0, i);
        loop {
            let (a, c) = crate::pairing::undiag(st.1);
            st.1 += 1;
            let f = FiniteSet::unrank(a);
            let parts: Vec<usize> = crate::pairing::set_decode(c).iter().map(|&k| allowed[k]).collect();
            let u = OpenSet::new(parts);
            if s.contains_all(&u, &f) {
                st.0 += 1;
                return Some(DoublePair::new(f, u));
            }
        }
    })
}
