use serde::{Deserialize, Serialize};

use super::{Count, Presentation, Space};
use crate::{Error, Result};

/// On-disk form of a finite space: `order` lists pairs `i ≤ j` of the
/// specialization preorder; reflexive pairs may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSpaceFile {
    pub points: usize,
    #[serde(default)]
    pub order: Vec<[usize; 2]>,
}

/// Finite Alexandrov space: open sets are the up-sets of a preorder and
/// base element `x` is the up-set of `x`.
struct FinitePreorder {
    n: usize,
    up: Vec<u64>,
    label: String,
}

impl Presentation for FinitePreorder {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn points(&self) -> Count {
        Count::Finite(self.n)
    }

    fn bases(&self) -> Count {
        Count::Finite(self.n)
    }

    fn member(&self, point: usize, base: usize) -> bool {
        self.up[base] >> point & 1 == 1
    }

    fn base_witness(&self, base: usize) -> usize {
        base
    }

    fn base_within(&self, base: usize, parts: &[usize]) -> Option<bool> {
        let union = parts.iter().fold(0u64, |m, &b| m | self.up[b]);
        Some(self.up[base] & !union == 0)
    }
}

/// Builds the finite space of a preorder given as pairs `(i, j)` meaning `i ≤ j`.
/// Reflexivity is added; transitivity is checked, not closed.
pub fn finite_space(n: usize, order: &[(usize, usize)]) -> Result<Space> {
    if n == 0 || n > 64 {
        return Err(Error::InvalidSpace(format!(
            "finite spaces need 1..=64 points, got {n}"
        )));
    }
    let mut up = vec![0u64; n];
    for (x, row) in up.iter_mut().enumerate() {
        *row |= 1 << x;
    }
    for &(i, j) in order {
        if i >= n || j >= n {
            return Err(Error::NotAPreorder(format!("pair ({i},{j}) out of range")));
        }
        up[i] |= 1 << j;
    }
    for x in 0..n {
        for y in 0..n {
            if up[x] >> y & 1 == 1 && up[y] & !up[x] != 0 {
                let z = (0..n).find(|&z| up[y] >> z & 1 == 1 && up[x] >> z & 1 == 0).unwrap();
                return Err(Error::NotAPreorder(format!(
                    "not transitive: {x} ≤ {y} ≤ {z} but not {x} ≤ {z}"
                )));
            }
        }
    }
    let label = if order.iter().all(|(i, j)| i == j) {
        format!("discrete:{n}")
    } else {
        let mut pairs: Vec<String> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && up[x] >> y & 1 == 1 {
                    pairs.push(format!("{x}<={y}"));
                }
            }
        }
        format!("preorder:{n}[{}]", pairs.join(","))
    };
    Ok(Space::new(FinitePreorder { n, up, label }))
}

pub fn parse_finite_space(json: &str) -> Result<Space> {
    let file: FiniteSpaceFile = serde_json::from_str(json)?;
    let pairs: Vec<(usize, usize)> = file.order.iter().map(|[i, j]| (*i, *j)).collect();
    finite_space(file.points, &pairs)
}
