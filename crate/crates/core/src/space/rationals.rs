//! The rationals with the dyadic-interval base.
//!
//! Points: index `2i` is the `i`-th dyadic rational, index `2i+1` the `i`-th
//! non-dyadic rational in order of height `|p| + q` (then numerator, then
//! sign). Dyadic `i` decodes as `(a, e) = undiag(i)`: for `e = 0` the integer
//! `zigzag(a)`, otherwise `(2·zigzag(a) + 1) / 2^e`.
//!
//! Base: index 0 is the whole line; index `1 + diag(k, r)` is the open
//! interval of radius `2^-r` centred on dyadic `k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Count, Meet, OpenSet, Presentation, Space};
use crate::pairing::{diag, undiag, unzigzag, zigzag};

/// A dyadic rational `num / 2^exp`, normalized so `num` is odd when `exp > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        while d.exp > 0 && d.num.is_even() {
            d.num /= 2;
            d.exp -= 1;
        }
        if d.num.is_zero() {
            d.exp = 0;
        }
        d
    }

    pub fn from_index(i: usize) -> Dyadic {
        let (a, e) = undiag(i);
        if e == 0 {
            Dyadic {
                num: BigInt::from(zigzag(a)),
                exp: 0,
            }
        } else {
            Dyadic {
                num: BigInt::from(2 * zigzag(a) + 1),
                exp: e as u32,
            }
        }
    }

    /// Position in the dyadic enumeration, if it fits in `usize`.
    pub fn index(&self) -> Option<usize> {
        let a = if self.exp == 0 {
            self.num.to_i64()?
        } else {
            ((&self.num - BigInt::one()) / BigInt::from(2)).to_i64()?
        };
        let za = unzigzag(a);
        let s = za.checked_add(self.exp as usize)?;
        s.checked_mul(s + 1)?;
        Some(diag(za, self.exp as usize))
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    /// `⌊v·2^e⌋ / 2^e` or, with `up`, `⌈v·2^e⌉ / 2^e`.
    pub fn round(v: &BigRational, e: u32, up: bool) -> Dyadic {
        let scaled = v.numer() << e;
        let (q, r) = scaled.div_mod_floor(v.denom());
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Dyadic::new(q, e)
    }

    /// The dyadic of least exponent strictly inside `(lo, hi)`.
    pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> Dyadic {
        assert!(lo < hi);
        if lo < &BigRational::zero() && hi > &BigRational::zero() {
            return Dyadic::new(BigInt::zero(), 0);
        }
        let mut e = 0u32;
        loop {
            let next: BigInt = Integer::div_floor(&(lo.numer() << e), lo.denom()) + BigInt::one();
            if BigRational::new(next.clone(), BigInt::one() << e) < *hi {
                return Dyadic::new(next, e);
            }
            e += 1;
        }
    }
}

struct NonDyadic {
    height: i64,
    values: Vec<BigRational>,
    index: HashMap<BigRational, usize>,
}

impl NonDyadic {
    fn grow(&mut self) {
        self.height += 1;
        let h = self.height;
        for p in 1..h {
            let q = h - p;
            if q >= 3 && (q & (q - 1)) != 0 && p.gcd(&q) == 1 {
                for v in [
                    BigRational::new(BigInt::from(p), BigInt::from(q)),
                    BigRational::new(BigInt::from(-p), BigInt::from(q)),
                ] {
                    self.index.insert(v.clone(), self.values.len());
                    self.values.push(v);
                }
            }
        }
    }
}

/// The rationals presentation. Cloning shares the memoized enumeration.
#[derive(Clone)]
pub struct Rationals {
    non_dyadic: Arc<Mutex<NonDyadic>>,
}

impl Default for Rationals {
    fn default() -> Self {
        Rationals {
            non_dyadic: Arc::new(Mutex::new(NonDyadic {
                height: 3,
                values: Vec::new(),
                index: HashMap::new(),
            })),
        }
    }
}

impl Rationals {
    pub fn new() -> Self {
        Rationals::default()
    }

    pub fn value(&self, point: usize) -> BigRational {
        if point % 2 == 0 {
            Dyadic::from_index(point / 2).value()
        } else {
            let i = point / 2;
            let mut nd = self.non_dyadic.lock().unwrap();
            while nd.values.len() <= i {
                nd.grow();
            }
            nd.values[i].clone()
        }
    }

    /// Point index of a rational; `None` if it does not fit in `usize`.
    pub fn index_of(&self, v: &BigRational) -> Option<usize> {
        let den = v.denom();
        let is_pow2 = (den - 1u32) & den == BigInt::zero();
        if is_pow2 {
            let exp = den.bits() as u32 - 1;
            return Dyadic::new(v.numer().clone(), exp).index()?.checked_mul(2);
        }
        let height = (v.numer().abs() + den).to_i64()?;
        let mut nd = self.non_dyadic.lock().unwrap();
        while nd.height < height {
            nd.grow();
        }
        nd.index.get(v).map(|i| 2 * i + 1)
    }

    pub fn dyadic_point(&self, d: &Dyadic) -> Option<usize> {
        d.index()?.checked_mul(2)
    }

    /// `(centre, radius exponent)` of base element `b`; `None` for the whole line.
    pub fn interval_params(b: usize) -> Option<(Dyadic, u32)> {
        if b == 0 {
            return None;
        }
        let (k, r) = undiag(b - 1);
        Some((Dyadic::from_index(k), r as u32))
    }

    /// Endpoints of base element `b`; `None` for the whole line.
    pub fn interval(b: usize) -> Option<(BigRational, BigRational)> {
        let (c, r) = Self::interval_params(b)?;
        let half = BigRational::new(BigInt::one(), BigInt::one() << r);
        let c = c.value();
        Some((&c - &half, c + half))
    }

    /// Base index of the interval of radius `2^-r` around `centre`.
    pub fn base_index(centre: &Dyadic, r: u32) -> Option<usize> {
        let k = centre.index()?;
        Some(1 + diag(k, r as usize))
    }

    /// A basic interval of radius `2^-r` containing `v`, centred on a multiple of `2^-r`.
    pub fn interval_around(v: &BigRational, r: u32, up: bool) -> Option<usize> {
        Self::base_index(&Dyadic::round(v, r, up), r)
    }

    /// Membership in machine integers; `None` on overflow.
    fn member_small(&self, point: usize, base: usize) -> Option<bool> {
        let v = self.value(point);
        let (p, q) = (v.numer().to_i128()?, v.denom().to_i128()?);
        let (c, r) = Self::interval_params(base)?;
        let a = c.num.to_i128()?;
        let two_e = 1i128.checked_shl(c.exp).filter(|&x| x > 0)?;
        let two_r = 1i128.checked_shl(r).filter(|&x| x > 0)?;
        // |p/q - a/2^e| < 2^-r  ⟺  |p·2^e - a·q| · 2^r < q · 2^e
        let diff = p.checked_mul(two_e)?.checked_sub(a.checked_mul(q)?)?.checked_abs()?;
        Some(diff.checked_mul(two_r)? < q.checked_mul(two_e)?)
    }

    pub fn in_interval(v: &BigRational, b: usize) -> bool {
        match Self::interval(b) {
            None => true,
            Some((lo, hi)) => &lo < v && v < &hi,
        }
    }
}

impl Presentation for Rationals {
    fn label(&self) -> String {
        "rationals".into()
    }

    fn points(&self) -> Count {
        Count::Infinite
    }

    fn bases(&self) -> Count {
        Count::Infinite
    }

    fn member(&self, point: usize, base: usize) -> bool {
        if base == 0 {
            return true;
        }
        self.member_small(point, base)
            .unwrap_or_else(|| Self::in_interval(&self.value(point), base))
    }

    fn base_witness(&self, base: usize) -> usize {
        match Self::interval_params(base) {
            None => 0,
            Some((c, _)) => self.dyadic_point(&c).expect("witness index overflow"),
        }
    }

    fn meet(&self, bases: &[usize]) -> Meet {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for &b in bases {
            if let Some((l, h)) = Self::interval(b) {
                if lo.as_ref().is_none_or(|x| &l > x) {
                    lo = Some(l);
                }
                if hi.as_ref().is_none_or(|x| &h < x) {
                    hi = Some(h);
                }
            }
        }
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                if lo >= hi {
                    Meet::Empty
                } else {
                    let d = Dyadic::simplest_between(&lo, &hi);
                    self.dyadic_point(&d).map_or(Meet::Unknown, Meet::Witness)
                }
            }
            _ => Meet::Witness(0),
        }
    }

    fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        if parts.contains(&0) || parts.contains(&base) {
            return Some(true);
        }
        let Some((lo, hi)) = Self::interval(base) else {
            return Some(false);
        };
        let ivs: Vec<(BigRational, BigRational)> =
            parts.iter().filter_map(|&b| Self::interval(b)).collect();
        // Any uncovered part of (lo, hi) contains an endpoint or the midpoint
        // between consecutive critical values.
        let mut crit: Vec<BigRational> = vec![lo.clone(), hi.clone()];
        for (a, b) in &ivs {
            for x in [a, b] {
                if &lo < x && x < &hi {
                    crit.push(x.clone());
                }
            }
        }
        crit.sort();
        crit.dedup();
        let covered = |y: &BigRational| ivs.iter().any(|(a, b)| a < y && y < b);
        for w in crit.windows(2) {
            let mid = (&w[0] + &w[1]) / BigInt::from(2);
            if !covered(&mid) {
                return Some(false);
            }
        }
        for x in &crit[1..crit.len() - 1] {
            if !covered(x) {
                return Some(false);
            }
        }
        Some(true)
    }

    fn whole(&self) -> Option<OpenSet> {
        Some(OpenSet::basic(0))
    }
}

pub fn rationals() -> Space {
    Space::new(Rationals::new())
}
