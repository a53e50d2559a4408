use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{percent_1dp, EvalError};
use crate::tsv;

pub const ROW_LEN: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrtGrid {
    pub rows: Vec<Vec<String>>,
}

impl MrtGrid {
    /// Six tab-separated words per row, distinct within the row.
    pub fn parse(text: &str) -> Result<Self, EvalError> {
        let mut rows = Vec::new();
        for row in tsv::rows(text) {
            let bad = |reason: String| EvalError::InvalidGrid { line: row.line, reason };
            if row.fields.len() != ROW_LEN {
                return Err(bad(format!("expected {ROW_LEN} words, found {}", row.fields.len())));
            }
            let distinct: HashSet<&str> = row.fields.iter().copied().collect();
            if distinct.len() != ROW_LEN || row.fields.iter().any(|w| w.is_empty()) {
                return Err(bad("words in a row must be distinct and non-empty".into()));
            }
            rows.push(row.fields.iter().map(|w| w.to_string()).collect());
        }
        Ok(MrtGrid { rows })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrtItem {
    pub row: usize,
    pub word: String,
    /// File name of the synthesized word.
    pub stimulus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrtSession {
    pub seed: u64,
    pub grid: MrtGrid,
    pub items: Vec<MrtItem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrtResponseSheet {
    pub listener: String,
    /// `None` for a blank answer.
    pub answers: Vec<Option<String>>,
}

/// Samples `n_items` (row, word) pairs uniformly with a seeded ChaCha8
/// generator.
pub fn make_mrt_session(grid: &MrtGrid, n_items: usize, seed: u64) -> Result<MrtSession, EvalError> {
    if grid.rows.is_empty() {
        return Err(EvalError::EmptyGrid);
    }
    if n_items == 0 {
        return Err(EvalError::NoItems);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items = (0..n_items)
        .map(|_| {
            let row = rng.random_range(0..grid.rows.len());
            let word = grid.rows[row][rng.random_range(0..grid.rows[row].len())].clone();
            MrtItem { row, stimulus: format!("{word}.wav"), word }
        })
        .collect();
    Ok(MrtSession { seed, grid: grid.clone(), items })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RowConfusion {
    pub row: usize,
    pub correct: u64,
    pub total: u64,
    /// `played -> answered` counts; blank answers appear as `""`.
    pub confusions: BTreeMap<String, BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MrtReport {
    pub percent_correct: f64,
    pub correct: u64,
    pub total: u64,
    pub n_listeners: usize,
    pub rows: Vec<RowConfusion>,
}

fn normalize_answer(a: &str) -> String {
    a.trim().to_lowercase()
}

/// Percentage of correct answers over every listener and item. Blank or
/// unknown answers are incorrect.
pub fn score_mrt(session: &MrtSession, sheets: &[MrtResponseSheet]) -> Result<MrtReport, EvalError> {
    if sheets.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut rows: BTreeMap<usize, RowConfusion> = BTreeMap::new();
    let (mut correct, mut total) = (0u64, 0u64);
    for sheet in sheets {
        if sheet.answers.len() != session.items.len() {
            return Err(EvalError::LengthMismatch {
                listener: sheet.listener.clone(),
                expected: session.items.len(),
                got: sheet.answers.len(),
            });
        }
        for (item, answer) in session.items.iter().zip(&sheet.answers) {
            let answered = answer.as_deref().map(normalize_answer).unwrap_or_default();
            let hit = !answered.is_empty() && answered == normalize_answer(&item.word);
            let rc = rows.entry(item.row).or_insert_with(|| RowConfusion { row: item.row, ..Default::default() });
            rc.total += 1;
            total += 1;
            if hit {
                rc.correct += 1;
                correct += 1;
            }
            *rc.confusions.entry(item.word.clone()).or_default().entry(answered).or_default() += 1;
        }
    }
    let listeners: HashSet<&str> = sheets.iter().map(|s| s.listener.as_str()).collect();
    Ok(MrtReport {
        percent_correct: if total == 0 { 0.0 } else { percent_1dp(correct, total) },
        correct,
        total,
        n_listeners: listeners.len(),
        rows: rows.into_values().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    fn session(n: usize, seed: u64) -> MrtSession {
        make_mrt_session(&Resources::bundled().mrt_grid, n, seed).unwrap()
    }

    fn sheet(who: &str, answers: Vec<Option<&str>>) -> MrtResponseSheet {
        MrtResponseSheet { listener: who.into(), answers: answers.into_iter().map(|a| a.map(String::from)).collect() }
    }

    #[test]
    fn grid_matches_published_words() {
        let g = Resources::bundled().mrt_grid;
        assert_eq!(g.rows.len(), 12);
        assert_eq!(g.rows[0], ["bbiri", "bibiri", "ebiri", "ekika", "ebika", "muntu"]);
        assert_eq!(g.rows[11], ["tujja", "maaso", "enaku", "bonna", "amaze", "etaka"]);
        assert!(MrtGrid::parse("a\tb\tc\td\te\n").is_err());
        assert!(MrtGrid::parse("a\tb\tc\td\te\ta\n").is_err());
    }

    #[test]
    fn sessions_are_reproducible() {
        let s = session(12, 7);
        assert_eq!(s, session(12, 7));
        assert_eq!(s.items.len(), 12);
        for it in &s.items {
            assert!(s.grid.rows[it.row].contains(&it.word));
            assert_eq!(it.stimulus, format!("{}.wav", it.word));
        }
        assert_ne!(s.items, session(12, 8).items);
        assert_eq!(make_mrt_session(&MrtGrid { rows: vec![] }, 3, 0), Err(EvalError::EmptyGrid));
        assert_eq!(make_mrt_session(&s.grid, 0, 0), Err(EvalError::NoItems));
    }

    #[test]
    fn scoring() {
        let s = session(1, 1);
        let word = s.items[0].word.as_str();
        assert_eq!(score_mrt(&s, &[sheet("a", vec![Some(word)])]).unwrap().percent_correct, 100.0);
        let blank = score_mrt(&s, &[sheet("a", vec![None])]).unwrap();
        assert_eq!(blank.percent_correct, 0.0);
        assert_eq!(blank.rows[0].confusions[word][""], 1);
        assert!(matches!(score_mrt(&s, &[sheet("a", vec![])]), Err(EvalError::LengthMismatch { .. })));
        assert_eq!(score_mrt(&s, &[]), Err(EvalError::Empty));
    }

    #[test]
    fn seventy_one_of_a_hundred() {
        let s = session(10, 3);
        let sheets: Vec<_> = (0..10)
            .map(|l| MrtResponseSheet {
                listener: format!("L{l}"),
                answers: s
                    .items
                    .iter()
                    .enumerate()
                    .map(|(i, it)| if l * 10 + i < 71 { Some(it.word.to_uppercase()) } else { Some("x".into()) })
                    .collect(),
            })
            .collect();
        let r = score_mrt(&s, &sheets).unwrap();
        assert_eq!((r.correct, r.total, r.percent_correct, r.n_listeners), (71, 100, 71.0, 10));
        let mut rev = sheets.clone();
        rev.reverse();
        assert_eq!(score_mrt(&s, &rev).unwrap().percent_correct, 71.0);
    }
}
