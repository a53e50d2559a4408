use std::collections::HashSet;

use serde::Serialize;

use super::{percent_1dp, EvalError};

/// An opinion score: 1 Bad, 2 Poor, 3 Fair, 4 Good, 5 Excellent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rating(u8);

impl Rating {
    pub const LABELS: [&'static str; 5] = ["Bad", "Poor", "Fair", "Good", "Excellent"];

    pub fn new(value: i64) -> Result<Rating, EvalError> {
        if (1..=5).contains(&value) {
            Ok(Rating(value as u8))
        } else {
            Err(EvalError::InvalidRating(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl TryFrom<i64> for Rating {
    type Error = EvalError;
    fn try_from(v: i64) -> Result<Self, EvalError> {
        Rating::new(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MosResponse {
    pub listener: String,
    pub sentence: String,
    pub rating: Rating,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MosReport {
    /// Percent of responses per rating 1..=5, rounded half-up to one decimal.
    pub distribution: [f64; 5],
    pub counts: [u64; 5],
    pub mean: f64,
    pub n_responses: usize,
    pub n_listeners: usize,
}

/// Rating distribution and mean `Σ rating × count / N`.
pub fn score_mos(responses: &[MosResponse]) -> Result<MosReport, EvalError> {
    if responses.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut counts = [0u64; 5];
    for r in responses {
        counts[r.rating.0 as usize - 1] += 1;
    }
    let n = responses.len() as u64;
    let weighted: u64 = counts.iter().enumerate().map(|(i, c)| (i as u64 + 1) * c).sum();
    let listeners: HashSet<&str> = responses.iter().map(|r| r.listener.as_str()).collect();
    Ok(MosReport {
        distribution: counts.map(|c| percent_1dp(c, n)),
        counts,
        mean: weighted as f64 / n as f64,
        n_responses: responses.len(),
        n_listeners: listeners.len(),
    })
}
