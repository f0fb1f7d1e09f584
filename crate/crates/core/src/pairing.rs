//! Pairing functions and the canonical enumeration of finite subsets of ℕ.
//!
//! `diag(k, j) = (k+j)(k+j+1)/2 + k` is the single pairing used throughout:
//! for product enumerations, for splitting ℕ into the infinite pieces
//! `I_k = { diag(k, j) : j ∈ ℕ }`, and for base enumerations.
//!
//! Finite sets are ordered by maximum element, then lexicographically as
//! ascending lists. Sets with maximum `m` occupy indices `2^m .. 2^(m+1)`.

pub fn diag(k: usize, j: usize) -> usize {
    let s = k + j;
    s * (s + 1) / 2 + k
}

/// [`diag`] without overflow.
pub fn checked_diag(k: usize, j: usize) -> Option<usize> {
    let s = k.checked_add(j)?;
    s.checked_mul(s.checked_add(1)?)
        .map(|x| x / 2)?
        .checked_add(k)
}

/// Inverse of [`diag`].
pub fn undiag(n: usize) -> (usize, usize) {
    // largest s with s(s+1)/2 <= n
    let mut s = (((8.0 * n as f64 + 1.0).sqrt() - 1.0) / 2.0) as usize;
    while s * (s + 1) / 2 > n {
        s -= 1;
    }
    while (s + 1) * (s + 2) / 2 <= n {
        s += 1;
    }
    let k = n - s * (s + 1) / 2;
    (k, s - k)
}

/// 0, -1, 1, -2, 2, ...
pub fn zigzag(n: usize) -> i64 {
    if n % 2 == 0 {
        (n / 2) as i64
    } else {
        -(((n + 1) / 2) as i64)
    }
}

pub fn unzigzag(z: i64) -> usize {
    if z >= 0 {
        (z as usize) * 2
    } else {
        ((-z) as usize) * 2 - 1
    }
}

/// Index of a finite set (ascending, duplicate free) in the canonical order.
pub fn finset_rank(elems: &[usize]) -> usize {
    let Some(&max) = elems.last() else {
        return 0;
    };
    let mut rank = 1usize << max;
    let mut lo = 0;
    for &x in &elems[..elems.len() - 1] {
        for skipped in lo..x {
            rank += 1usize << (max - skipped - 1);
        }
        lo = x + 1;
    }
    // the final element `max` alone comes after every list starting below it
    for skipped in lo..max {
        rank += 1usize << (max - skipped - 1);
    }
    rank
}

/// The finite set at `index` in the canonical order.
pub fn finset_unrank(index: usize) -> Vec<usize> {
    if index == 0 {
        return Vec::new();
    }
    let max = (usize::BITS - 1 - index.leading_zeros()) as usize;
    let mut j = index - (1usize << max);
    let mut out = Vec::new();
    let mut lo = 0;
    'outer: loop {
        for x in lo..max {
            let count = 1usize << (max - x - 1);
            if j < count {
                out.push(x);
                lo = x + 1;
                continue 'outer;
            }
            j -= count;
        }
        debug_assert_eq!(j, 0);
        out.push(max);
        return out;
    }
}

/// [`finset_rank`] returning `None` when the index does not fit a `usize`.
pub fn checked_finset_rank(elems: &[usize]) -> Option<usize> {
    match elems.last() {
        Some(&max) if max >= usize::BITS as usize - 1 => None,
        _ => Some(finset_rank(elems)),
    }
}

/// Code of a finite set through its gap list: `code([]) = 0` and
/// `code(g :: rest) = 1 + diag(g, code(rest))`. A bijection with ℕ whose
/// values stay small for small sets of large numbers.
pub fn set_code(elems: &[usize]) -> Option<usize> {
    let mut gaps = Vec::with_capacity(elems.len());
    let mut prev: Option<usize> = None;
    for &x in elems {
        gaps.push(match prev {
            None => x,
            Some(p) => x - p - 1,
        });
        prev = Some(x);
    }
    gaps.iter()
        .rev()
        .try_fold(0usize, |acc, &g| checked_diag(g, acc)?.checked_add(1))
}

/// Inverse of [`set_code`].
pub fn set_decode(mut code: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut next = 0usize;
    while code > 0 {
        let (g, rest) = undiag(code - 1);
        next += g;
        out.push(next);
        next += 1;
        code = rest;
    }
    out
}

/// Encodes pairs drawn from two index universes of the given sizes.
/// Finite × finite uses row-major order; anything infinite uses [`diag`]
/// (or a strided layout when exactly one side is finite).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    left: Option<usize>,
    right: Option<usize>,
}

impl Pairing {
    pub fn new(left: Option<usize>, right: Option<usize>) -> Self {
        Pairing { left, right }
    }

    pub fn size(&self) -> Option<usize> {
        Some(self.left? * self.right?)
    }

    pub fn encode(&self, a: usize, b: usize) -> usize {
        match (self.left, self.right) {
            (Some(_), Some(nb)) => a * nb + b,
            (None, Some(nb)) => a * nb + b,
            (Some(na), None) => b * na + a,
            (None, None) => diag(a, b),
        }
    }

    pub fn try_encode(&self, a: usize, b: usize) -> Option<usize> {
        match (self.left, self.right) {
            (Some(_), Some(nb)) | (None, Some(nb)) => a.checked_mul(nb)?.checked_add(b),
            (Some(na), None) => b.checked_mul(na)?.checked_add(a),
            (None, None) => checked_diag(a, b),
        }
    }

    pub fn decode(&self, n: usize) -> (usize, usize) {
        match (self.left, self.right) {
            (Some(_), Some(nb)) | (None, Some(nb)) => (n / nb, n % nb),
            (Some(na), None) => (n % na, n / na),
            (None, None) => undiag(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn diag_table() {
        assert_eq!(diag(0, 0), 0);
        assert_eq!(diag(0, 1), 1);
        assert_eq!(diag(1, 0), 2);
        assert_eq!(diag(7, 7), 112);
        let i0: Vec<usize> = (0..5).map(|j| diag(0, j)).collect();
        assert_eq!(i0, vec![0, 1, 3, 6, 10]);
        let i1: Vec<usize> = (0..3).map(|j| diag(1, j)).collect();
        assert_eq!(i1, vec![2, 4, 7]);
    }

    #[test]
    fn set_code_small() {
        let sets: Vec<Vec<usize>> = (0..6).map(set_decode).collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![0, 1], vec![1], vec![0, 1, 2], vec![1, 2]]);
        assert_eq!(set_code(&[5]), Some(21));
        assert_eq!(checked_finset_rank(&[70]), None);
    }

    #[test]
    fn finset_order_small() {
        let sets: Vec<Vec<usize>> = (0..8).map(finset_unrank).collect();
        assert_eq!(
            sets,
            vec![
                vec![],
                vec![0],
                vec![0, 1],
                vec![1],
                vec![0, 1, 2],
                vec![0, 2],
                vec![1, 2],
                vec![2],
            ]
        );
    }

    #[test]
    fn finset_order_is_max_then_lex() {
        let sets: Vec<Vec<usize>> = (0..256).map(finset_unrank).collect();
        for w in sets.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (ma, mb) = (a.last().copied(), b.last().copied());
            assert!(ma < mb || (ma == mb && a < b), "{a:?} !< {b:?}");
        }
    }

    proptest! {
        #[test]
        fn undiag_inverts_diag(k in 0usize..5000, j in 0usize..5000) {
            prop_assert_eq!(undiag(diag(k, j)), (k, j));
        }

        #[test]
        fn finset_rank_inverts_unrank(i in 0usize..(1 << 20)) {
            prop_assert_eq!(finset_rank(&finset_unrank(i)), i);
        }

        #[test]
        fn set_code_inverts_decode(i in 0usize..(1 << 24)) {
            prop_assert_eq!(set_code(&set_decode(i)), Some(i));
        }

        #[test]
        fn zigzag_roundtrip(n in 0usize..100_000) {
            prop_assert_eq!(unzigzag(zigzag(n)), n);
        }
    }
}
