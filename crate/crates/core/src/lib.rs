//! Executable selection principles and topological games.
//!
//! Spaces are presented by an enumerated base with decidable membership.
//! Finite spaces are solved exactly (`finsolve`); countable spaces are
//! checked against explicit horizons. Constructive arguments about games
//! live in `transform` as strategy combinators whose contracts are checked
//! by the finite solver and by horizon-bounded play.

pub mod bairecat;
pub mod error;
pub mod finsolve;
pub mod games;
pub mod pairing;
pub mod pixleyroy;
pub mod recipe;
pub mod space;
pub mod suites;
pub mod transform;

pub use error::{Error, Result};
pub use space::{Count, FiniteSet, Meet, OpenSet, PointSet, Space};
