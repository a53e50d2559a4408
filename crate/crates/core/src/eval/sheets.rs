//! CSV response sheets: `listener,item,answer` for the MRT (items are
//! 1-based) and `listener,sentence,rating` for MOS. A header row is
//! required.

use std::collections::BTreeMap;

use super::{EvalError, MosResponse, MrtResponseSheet, Rating};

fn records(text: &str, header: [&str; 3]) -> Result<Vec<(usize, [String; 3])>, EvalError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let found: Vec<String> = reader
        .headers()
        .map_err(|e| EvalError::Sheet(e.to_string()))?
        .iter()
        .map(|h| h.to_lowercase())
        .collect();
    if found != header {
        return Err(EvalError::Sheet(format!("expected header {}", header.join(","))));
    }
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| EvalError::Sheet(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 3 {
            return Err(EvalError::Sheet(format!("line {line}: expected 3 fields")));
        }
        out.push((line, [rec[0].to_string(), rec[1].to_string(), rec[2].to_string()]));
    }
    Ok(out)
}

/// Groups answers by listener, in first-appearance order. Items a listener
/// skipped are blank; an empty answer field is blank too.
pub fn read_mrt_sheets(text: &str, n_items: usize) -> Result<Vec<MrtResponseSheet>, EvalError> {
    let mut order: Vec<String> = Vec::new();
    let mut answers: BTreeMap<String, Vec<Option<String>>> = BTreeMap::new();
    for (line, [listener, item, answer]) in records(text, ["listener", "item", "answer"])? {
        let idx: usize = item.parse().map_err(|_| EvalError::Sheet(format!("line {line}: bad item {item:?}")))?;
        if idx == 0 || idx > n_items {
            return Err(EvalError::LengthMismatch { listener, expected: n_items, got: idx });
        }
        if !answers.contains_key(&listener) {
            order.push(listener.clone());
        }
        let slots = answers.entry(listener).or_insert_with(|| vec![None; n_items]);
        slots[idx - 1] = (!answer.is_empty()).then_some(answer);
    }
    Ok(order
        .into_iter()
        .map(|l| MrtResponseSheet { answers: answers.remove(&l).unwrap_or_default(), listener: l })
        .collect())
}

pub fn read_mos_responses(text: &str) -> Result<Vec<MosResponse>, EvalError> {
    records(text, ["listener", "sentence", "rating"])?
        .into_iter()
        .map(|(line, [listener, sentence, rating])| {
            let v: i64 = rating.parse().map_err(|_| EvalError::Sheet(format!("line {line}: bad rating {rating:?}")))?;
            Ok(MosResponse { listener, sentence, rating: Rating::new(v)? })
        })
        .collect()
}
