//! Exact topology and game solving on spaces of at most eight points.

mod enumerate;
mod graph;
mod oracle;
mod solve;
mod topology;
mod verify;

pub use enumerate::{enumerate_covers, enumerate_memoryless_strategies, memoryless_tables, ReplyTable};
pub use graph::{acc_of, all_replies, gain_mask, point_mask, FinGame, FinMove, FAMILY_CAP};
pub use oracle::minimax_winner;
pub use solve::{solve_fin, solve_game, ReplyRule, SolveResult, TableStrategy};
pub use topology::{bits, open_of, preorder_spaces, small_spaces, t0_spaces, FinTopology, MAX_POINTS};
pub use verify::{verify_strategy, VerifyReport, DEPTH_BOUND};

#[cfg(test)]
mod tests;
