//! Symbolic-to-physical translation: segment durations, F0 targets and the
//! MBROLA `.pho` format.

pub mod duration;
pub mod f0;
pub mod pho;

use thiserror::Error;

pub use duration::{compute_durations, DurationTable};
pub use f0::{compute_f0, F0Config};
pub use pho::{emit_pho, parse_pho};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AcousticsError {
    #[error("no duration for phone {0:?}")]
    MissingDuration(String),
    #[error("{file} line {line}: {reason}")]
    Table { file: &'static str, line: usize, reason: String },
    #[error(".pho line {line}: {reason}")]
    PhoSyntax { line: usize, reason: String },
}
