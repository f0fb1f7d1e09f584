//! Strategy transformers: each takes winning strategies for one game and
//! builds a strategy for another, replaying histories move by move.

mod dual;
mod product;
mod splus;
#[cfg(test)]
mod tests;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::games::{Class, GameKind};
use crate::Error;

pub use dual::{
    claim_point, claim_strategy, dual_backward_finite, dual_backward_ii, dual_forward,
    dual_forward_ii, ClaimWitness,
};
pub use product::{diag_innings, product_pointing_strategy};
pub use splus::{
    int_complement, lift_dense_strategy, relativized_piece, restrict_splus_strategy,
    union_selection, union_splus_strategy, Piece,
};

/// A pointing game and the selection game it is dual to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualPair {
    /// Open-picking against covers selected for a dense union.
    PoOd,
    /// Point-open against the dense-set game.
    OpDd,
}

impl DualPair {
    pub fn pointing_game(self) -> GameKind {
        match self {
            DualPair::PoOd => GameKind::OpenPicking,
            DualPair::OpDd => GameKind::PointOpen,
        }
    }

    pub fn selection_game(self) -> GameKind {
        match self {
            DualPair::PoOd => GameKind::SelCover(Class::Cover, Class::DenseUnion),
            DualPair::OpDd => GameKind::DGame,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DualPair::PoOd => "po-od",
            DualPair::OpDd => "op-dd",
        }
    }
}

impl fmt::Display for DualPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "po-od" => Ok(DualPair::PoOd),
            "op-dd" => Ok(DualPair::OpDd),
            _ => Err(Error::Precondition(format!("unknown dual pair {s:?} (po-od, op-dd)"))),
        }
    }
}

fn mix(parts: &[u64]) -> u64 {
    let mut h = DefaultHasher::new();
    parts.hash(&mut h);
    h.finish()
}
