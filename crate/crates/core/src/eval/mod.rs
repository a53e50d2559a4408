//! Listening-test administration and scoring: the Modified Rhyme Test for
//! intelligibility and Mean Opinion Score ratings for naturalness.

pub mod mos;
pub mod mrt;
pub mod report;
pub mod sheets;

use thiserror::Error;

pub use mos::{score_mos, MosReport, MosResponse, Rating};
pub use mrt::{make_mrt_session, score_mrt, MrtGrid, MrtItem, MrtReport, MrtResponseSheet, MrtSession, RowConfusion};
pub use report::{render_report, EvalReport, ReportFormat};
pub use sheets::{read_mos_responses, read_mrt_sheets};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("the MRT grid has no rows")]
    EmptyGrid,
    #[error("mrt grid line {line}: {reason}")]
    InvalidGrid { line: usize, reason: String },
    #[error("a session needs at least one item")]
    NoItems,
    #[error("listener {listener}: {got} answers for {expected} items")]
    LengthMismatch { listener: String, expected: usize, got: usize },
    #[error("no responses to score")]
    Empty,
    #[error("rating {0} is outside 1..=5")]
    InvalidRating(i64),
    #[error("response sheet: {0}")]
    Sheet(String),
}

/// `100 × num / den` rounded half-up to one decimal.
pub(crate) fn percent_1dp(num: u64, den: u64) -> f64 {
    assert!(den > 0);
    let tenths = (2000 * num + den) / (2 * den);
    tenths as f64 / 10.0
}
