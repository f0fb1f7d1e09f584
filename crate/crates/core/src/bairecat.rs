//! Finite-prefix models of the Baire-category arguments: the sets `N_α` of
//! sequences whose selections miss a π-base element, the diagonal selector
//! that escapes them, property (P) of vector families and the discrete
//! cover table built from such a family.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::pairing::zigzag;
use crate::space::{discrete, CoverFamily, Dyadic, Meet, OpenSet, Rationals, Space};
use crate::{Error, Result};

/// A finite sequence of naturals, read as a partial function on an initial
/// segment of ω.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeqPrefix(pub Vec<usize>);

impl SeqPrefix {
    pub fn new(values: Vec<usize>) -> Self {
        SeqPrefix(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `self ⊇ other` as partial functions.
    pub fn extends(&self, other: &SeqPrefix) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn extended(&self, v: usize) -> SeqPrefix {
        let mut out = self.0.clone();
        out.push(v);
        SeqPrefix(out)
    }
}

/// Rows of countable subfamilies of open covers: `U[n][k]`.
#[derive(Clone)]
pub struct CoverTable {
    rows: Vec<CoverFamily>,
}

impl CoverTable {
    pub fn new(rows: Vec<CoverFamily>) -> Self {
        CoverTable { rows }
    }

    pub fn from_matrix(rows: Vec<Vec<OpenSet>>) -> Self {
        CoverTable {
            rows: rows
                .into_iter()
                .enumerate()
                .map(|(n, r)| CoverFamily::listed(format!("row {n}"), r))
                .collect(),
        }
    }

    /// Number of rows (covers modelled).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, n: usize) -> &CoverFamily {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, k: usize) -> Option<OpenSet> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    /// Listed rows as a JSON matrix of open sets.
    pub fn to_json(&self) -> Result<String> {
        let mut m: Vec<Vec<OpenSet>> = Vec::with_capacity(self.rows.len());
        for (n, r) in self.rows.iter().enumerate() {
            let len = r
                .len()
                .ok_or_else(|| Error::Unsupported(format!("row {n} is not a listed family")))?;
            m.push(r.prefix(len));
        }
        Ok(serde_json::to_string(&m)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(CoverTable::from_matrix(serde_json::from_str(s)?))
    }
}

/// Row `n` covers the rationals with the intervals of radius `2^-r` centred
/// at the multiples of `2^-r`, in zigzag order, where `r = 1 + n mod 3`.
pub fn dyadic_cover_table(rows: usize) -> CoverTable {
    CoverTable::new(
        (0..rows)
            .map(|n| {
                let r = 1 + (n % 3) as u32;
                CoverFamily::lazy(format!("dyadic radius 2^-{r}"), move |i| {
                    let c = Dyadic::new(BigInt::from(zigzag(i)), r);
                    Rationals::base_index(&c, r).map(OpenSet::basic)
                })
            })
            .collect(),
    )
}

fn table_member(table: &CoverTable, n: usize, k: usize) -> Result<OpenSet> {
    table
        .get(n, k)
        .ok_or_else(|| Error::Precondition(format!("row {n} has no member {k}")))
}

/// Whether `f` lies in `N_α` for the modelled rows: `B ∩ U[n][f(n)] = ∅` for
/// every `n < N`.
pub fn in_n_alpha(space: &Space, b: &OpenSet, table: &CoverTable, f: &SeqPrefix, search_bound: usize) -> Result<bool> {
    let rows = table.len();
    if f.len() < rows {
        return Err(Error::Dimension(format!(
            "sequence of length {} for {rows} rows",
            f.len()
        )));
    }
    for n in 0..rows {
        let u = table_member(table, n, f.0[n])?;
        match space.open_meet(b, &u) {
            Meet::Witness(_) => return Ok(false),
            Meet::Empty => {}
            Meet::Unknown => {
                return Err(Error::Indeterminate {
                    what: format!("whether {b} meets {u}"),
                    bound: search_bound,
                })
            }
        }
    }
    Ok(true)
}

/// Extends `sigma` by the first `j` with `B ∩ U[k][j] ≠ ∅`, `k = |sigma|`.
/// No extension of the result lies in `N_α`.
pub fn nowhere_dense_witness(
    space: &Space,
    b: &OpenSet,
    table: &CoverTable,
    sigma: &SeqPrefix,
    search_bound: usize,
) -> Result<SeqPrefix> {
    let k = sigma.len();
    if k >= table.len() {
        return Err(Error::Dimension(format!(
            "prefix of length {k} leaves no row of {}",
            table.len()
        )));
    }
    let row = table.row(k);
    let bound = row.len().map_or(search_bound, |l| l.min(search_bound));
    for j in 0..bound {
        let Some(u) = row.get(j) else { break };
        if let Meet::Witness(_) = space.open_meet(b, &u) {
            return Ok(sigma.extended(j));
        }
    }
    Err(Error::SearchExhausted {
        what: format!("no member of row {k} meets {b}"),
        bound,
    })
}

/// A sequence outside every modelled `N_α`: one witness coordinate per
/// π-base element in order, padded with zeros to the number of rows.
pub fn diagonal_selector(space: &Space, pibase: &[OpenSet], table: &CoverTable, search_bound: usize) -> Result<SeqPrefix> {
    if table.len() < pibase.len() {
        return Err(Error::Dimension(format!(
            "{} rows cannot serve {} π-base elements",
            table.len(),
            pibase.len()
        )));
    }
    let mut f = SeqPrefix::default();
    for b in pibase {
        f = nowhere_dense_witness(space, b, table, &f, search_bound)?;
    }
    f.0.resize(table.len(), 0);
    Ok(f)
}

/// The selection `U[n][f(n)]`, `n < N`.
pub fn selection(table: &CoverTable, f: &SeqPrefix) -> Result<Vec<OpenSet>> {
    (0..table.len()).map(|n| table_member(table, n, f.0[n])).collect()
}

/// A finite family of equal-length vectors, optionally bounded pointwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorFamily {
    pub vectors: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VectorFamilyFile {
    Matrix(Vec<Vec<usize>>),
    Full {
        vectors: Vec<Vec<usize>>,
        #[serde(default)]
        bound: Option<Vec<usize>>,
    },
}

impl VectorFamily {
    pub fn new(vectors: Vec<Vec<usize>>) -> Result<Self> {
        VectorFamily { vectors, bound: None }.checked()
    }

    pub fn bounded(vectors: Vec<Vec<usize>>, bound: Vec<usize>) -> Result<Self> {
        VectorFamily { vectors, bound: Some(bound) }.checked()
    }

    fn checked(self) -> Result<Self> {
        let n = self.width();
        if let Some(v) = self.vectors.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension(format!("vector {v:?} has length {} not {n}", v.len())));
        }
        if let Some(b) = &self.bound {
            if b.len() != n {
                return Err(Error::Dimension(format!("bound {b:?} has length {} not {n}", b.len())));
            }
            if let Some(v) = self.vectors.iter().find(|v| v.iter().zip(b).any(|(x, y)| x >= y)) {
                return Err(Error::Precondition(format!("vector {v:?} is not below {b:?}")));
            }
        }
        Ok(self)
    }

    /// Common length `N` (the bound's length for an empty family).
    pub fn width(&self) -> usize {
        self.vectors
            .first()
            .map(|v| v.len())
            .or_else(|| self.bound.as_ref().map(|b| b.len()))
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `1 + max f(n)` per coordinate: every larger value of `g` behaves
    /// like this one.
    pub fn sentinel_bound(&self) -> Vec<usize> {
        (0..self.width())
            .map(|n| 1 + self.vectors.iter().map(|v| v[n]).max().unwrap_or(0))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("vector families serialize")
    }

    /// Accepts a bare matrix or `{"vectors": …, "bound": …}`.
    pub fn from_json(s: &str) -> Result<Self> {
        match serde_json::from_str(s)? {
            VectorFamilyFile::Matrix(vectors) => VectorFamily::new(vectors),
            VectorFamilyFile::Full { vectors, bound: None } => VectorFamily::new(vectors),
            VectorFamilyFile::Full { vectors, bound: Some(b) } => VectorFamily::bounded(vectors, b),
        }
    }
}

/// Every vector below `bound`, in mixed-radix order.
fn all_below(bound: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = bound.iter().product();
    (0..total).map(move |mut c| {
        bound
            .iter()
            .map(|&r| {
                let d = c % r;
                c /= r;
                d
            })
            .collect()
    })
}

/// Number of `g` to scan, or `None` on overflow.
fn count_below(bound: &[usize]) -> Option<usize> {
    bound.iter().try_fold(1usize, |a, &r| a.checked_mul(r))
}

/// Property (P) at finite length: every `g` below `g_bound` has a member
/// differing from it at every coordinate. `g_bound` must dominate
/// [`VectorFamily::sentinel_bound`].
pub fn has_property_p(fam: &VectorFamily, g_bound: &[usize]) -> bool {
    let total = count_below(g_bound).expect("g range fits in usize");
    (0..total).into_par_iter().all(|mut c| {
        let g: Vec<usize> = g_bound
            .iter()
            .map(|&r| {
                let d = c % r;
                c /= r;
                d
            })
            .collect();
        fam.vectors
            .iter()
            .any(|f| f.iter().zip(&g).all(|(a, b)| a != b))
    })
}

/// The padded family: for each `(h, cut)` the vectors equal to `i` below
/// `cut` and to `h` from `cut` on, for `i < min_{n<cut} b(n)`.
pub fn pad_family(h_list: &[(Vec<usize>, usize)], b: &[usize]) -> Result<VectorFamily> {
    let mut out = Vec::new();
    for (h, cut) in h_list {
        if h.len() != b.len() || *cut > h.len() {
            return Err(Error::Dimension(format!(
                "vector {h:?} with cut {cut} against bound {b:?}"
            )));
        }
        if let Some(n) = (*cut..h.len()).find(|&n| h[n] >= b[n]) {
            return Err(Error::Precondition(format!(
                "h({n}) = {} is not below b({n}) = {}",
                h[n], b[n]
            )));
        }
        let copies = b[..*cut].iter().copied().min().unwrap_or(1);
        for i in 0..copies {
            let mut v = vec![i; *cut];
            v.extend_from_slice(&h[*cut..]);
            out.push(v);
        }
    }
    VectorFamily::bounded(out, b.to_vec())
}

/// The discrete space on the members of `fam` and the table
/// `U[n][k] = { ξ : f_ξ(n) = k }` for `k` below the family's bound (or
/// sentinel bound). Rows partition the space; empty pieces are kept so that
/// `k` stays the value.
pub fn discrete_cover_family(fam: &VectorFamily) -> Result<(Space, CoverTable)> {
    if fam.is_empty() {
        return Err(Error::Precondition("the index set is empty".into()));
    }
    let s = discrete(fam.len());
    let bound = fam.bound.clone().unwrap_or_else(|| fam.sentinel_bound());
    let rows = (0..fam.width())
        .map(|n| {
            (0..bound[n])
                .map(|k| {
                    let mask = fam
                        .vectors
                        .iter()
                        .enumerate()
                        .filter(|(_, f)| f[n] == k)
                        .fold(0u64, |a, (xi, _)| a | 1 << xi);
                    s.open_from_mask(mask).unwrap_or_default()
                })
                .collect()
        })
        .collect();
    Ok((s, CoverTable::from_matrix(rows)))
}

/// A selection `g` (below the row lengths) whose members cover the finite
/// space, if one exists.
pub fn covering_selection(space: &Space, table: &CoverTable) -> Result<Option<Vec<usize>>> {
    let n = space
        .point_count()
        .ok_or_else(|| Error::Unsupported("covering search needs a finite space".into()))?;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut masks: Vec<Vec<u64>> = Vec::with_capacity(table.len());
    for r in 0..table.len() {
        let row = table.row(r);
        let len = row
            .len()
            .ok_or_else(|| Error::Unsupported(format!("row {r} is not listed")))?;
        masks.push(row.prefix(len).iter().map(|u| space.open_mask(u)).collect());
    }
    let sizes: Vec<usize> = masks.iter().map(|m| m.len()).collect();
    if sizes.contains(&0) {
        return Ok(None);
    }
    let found = all_below(&sizes).find(|g| g.iter().enumerate().fold(0, |a, (n, &k)| a | masks[n][k]) == full);
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{chain, rationals};
    use num_rational::BigRational;

    fn q() -> Space {
        rationals()
    }

    fn interval(lo: (i64, i64), hi: (i64, i64)) -> OpenSet {
        // basic interval with the given rational endpoints, found by search
        let lo = BigRational::new(lo.0.into(), lo.1.into());
        let hi = BigRational::new(hi.0.into(), hi.1.into());
        let b = (0..10_000)
            .find(|&b| Rationals::interval(b).is_some_and(|(a, c)| a == lo && c == hi))
            .expect("interval is basic");
        OpenSet::basic(b)
    }

    #[test]
    fn disjoint_row_puts_sequence_in_n_alpha() {
        let b = interval((0, 1), (1, 1));
        let t = CoverTable::from_matrix(vec![vec![interval((2, 1), (3, 1))]]);
        assert!(in_n_alpha(&q(), &b, &t, &SeqPrefix::new(vec![0]), 100).unwrap());
        let t = CoverTable::from_matrix(vec![vec![OpenSet::basic(0)]]);
        assert!(!in_n_alpha(&q(), &b, &t, &SeqPrefix::new(vec![0]), 100).unwrap());
    }

    #[test]
    fn short_sequence_is_a_dimension_error() {
        let t = dyadic_cover_table(2);
        let e = in_n_alpha(&q(), &OpenSet::basic(0), &t, &SeqPrefix::new(vec![0]), 10).unwrap_err();
        assert!(matches!(e, Error::Dimension(_)));
    }

    #[test]
    fn witness_for_unit_interval() {
        let b = interval((0, 1), (1, 1));
        let t = dyadic_cover_table(1);
        let tau = nowhere_dense_witness(&q(), &b, &t, &SeqPrefix::default(), 1000).unwrap();
        // row 0: radius 1/2 around 0, -1/2, 1/2, ... ; (-1/2,1/2) meets (0,1)
        assert_eq!(tau.values(), &[0]);
        assert!(!in_n_alpha(&q(), &b, &t, &tau, 1000).unwrap());
    }

    #[test]
    fn selector_needs_enough_rows() {
        let t = dyadic_cover_table(1);
        let e = diagonal_selector(&q(), &[OpenSet::basic(0), OpenSet::basic(1)], &t, 100).unwrap_err();
        assert!(matches!(e, Error::Dimension(_)));
    }

    #[test]
    fn selector_with_one_element_pads_zeros() {
        let t = dyadic_cover_table(4);
        let f = diagonal_selector(&q(), &[OpenSet::basic(5)], &t, 1000).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(&f.values()[1..], &[0, 0, 0]);
    }

    #[test]
    fn selector_on_finite_space_gives_dense_union() {
        let s = chain(3);
        let pibase: Vec<OpenSet> = (0..s.base_count().unwrap()).map(OpenSet::basic).collect();
        let rows = (0..pibase.len()).map(|_| pibase.iter().rev().cloned().collect()).collect();
        let t = CoverTable::from_matrix(rows);
        let f = diagonal_selector(&s, &pibase, &t, 100).unwrap();
        let sel = selection(&t, &f).unwrap();
        let union = sel.iter().fold(0, |a, u| a | s.open_mask(u));
        let top = crate::finsolve::FinTopology::from_space(&s).unwrap();
        assert!(top.is_dense(union));
        for b in &pibase {
            assert!(!in_n_alpha(&s, b, &t, &f, 100).unwrap());
        }
    }

    #[test]
    fn property_p_examples() {
        let f = VectorFamily::new(vec![vec![0], vec![1]]).unwrap();
        assert!(has_property_p(&f, &[3]));
        let f = VectorFamily::new(vec![vec![0]]).unwrap();
        assert!(!has_property_p(&f, &[2]));
        let f = VectorFamily::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!has_property_p(&f, &[2, 2]));
    }

    #[test]
    fn padding_examples() {
        let f = pad_family(&[(vec![5, 1], 1)], &[3, 2]).unwrap();
        assert_eq!(f.vectors, vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
        let f = pad_family(&[(vec![2, 1], 0)], &[3, 2]).unwrap();
        assert_eq!(f.vectors, vec![vec![2, 1]]);
        assert!(matches!(pad_family(&[(vec![5, 2], 1)], &[3, 2]), Err(Error::Precondition(_))));
    }

    #[test]
    fn narrow_bound_loses_property_p() {
        // {⟨0⟩, ⟨1⟩} has (P), but a bound of 1 below the cut leaves one copy
        let h = VectorFamily::new(vec![vec![0], vec![1]]).unwrap();
        assert!(has_property_p(&h, &h.sentinel_bound()));
        let f = pad_family(&[(vec![0], 1), (vec![1], 1)], &[1]).unwrap();
        assert_eq!(f.vectors, vec![vec![0], vec![0]]);
        assert!(!has_property_p(&f, &f.sentinel_bound()));
    }

    #[test]
    fn discrete_table_example() {
        let f = VectorFamily::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (s, t) = discrete_cover_family(&f).unwrap();
        let m = |n, k| s.open_mask(&t.get(n, k).unwrap());
        assert_eq!((m(0, 0), m(0, 1), m(1, 0), m(1, 1)), (0b01, 0b10, 0b10, 0b01));
        for n in 0..2 {
            assert_eq!(m(n, 0) | m(n, 1), 0b11);
        }
        // (P) fails and g = ⟨0,0⟩ covers
        assert_eq!(covering_selection(&s, &t).unwrap(), Some(vec![0, 0]));
    }

    #[test]
    fn json_forms() {
        let f = VectorFamily::from_json("[[0,1],[1,0]]").unwrap();
        assert_eq!(f.width(), 2);
        let g = VectorFamily::from_json(r#"{"vectors":[[0,1]],"bound":[2,2]}"#).unwrap();
        assert_eq!(g.bound, Some(vec![2, 2]));
        assert_eq!(VectorFamily::from_json(&g.to_json()).unwrap(), g);
        assert!(VectorFamily::from_json("[[0],[1,2]]").is_err());
        let (_, t) = discrete_cover_family(&f).unwrap();
        let back = CoverTable::from_json(&t.to_json().unwrap()).unwrap();
        assert_eq!(back.get(1, 1), t.get(1, 1));
        assert!(dyadic_cover_table(1).to_json().is_err());
    }
}
