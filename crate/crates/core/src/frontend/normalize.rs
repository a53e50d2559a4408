//! Rewrites numbers and abbreviations into pronounceable word sequences.

use std::collections::HashMap;

use thiserror::Error;

use crate::doc::{
    DirectiveKind, InflectionFlag, NormNote, Sentence, TokenKind, UtteranceDoc,
};
use crate::tsv;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberType {
    Cardinal,
    Ordinal,
    Telephone,
}

impl NumberType {
    pub fn from_say_as(value: &str) -> Option<NumberType> {
        match value {
            "cardinal" => Some(NumberType::Cardinal),
            "ordinal" => Some(NumberType::Ordinal),
            "telephone" => Some(NumberType::Telephone),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumberError {
    #[error("{0:?} is beyond the numeral table's range")]
    OutOfRange(String),
    #[error("{0:?} is not a digit string")]
    NotDigits(String),
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("numeral table is missing key {0:?}")]
    MissingKey(String),
}

/// Largest value a cardinal or ordinal expansion covers.
pub const MAX_CARDINAL: u64 = 999_999_999;

/// Numeral words keyed by value (`0..9`, tens, `100`, `1000`) plus the
/// ordinal prefix and the conjunction joining components.
///
/// A cardinal is read largest component first. Thousands and hundreds are
/// the base word followed by their multiplier (omitted when it is one);
/// the thousands multiplier is itself read recursively, which covers every
/// value up to [`MAX_CARDINAL`]. Components are joined by the conjunction.
#[derive(Clone, Debug, PartialEq)]
pub struct NumeralTable {
    values: HashMap<u64, Vec<String>>,
    ordinal_prefix: Vec<String>,
    conjunction: Vec<String>,
}

impl NumeralTable {
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut values = HashMap::new();
        let mut ordinal_prefix = None;
        let mut conjunction = None;
        for row in tsv::rows(text) {
            if row.fields.len() < 2 || row.fields[1].is_empty() {
                return Err(TableError::Syntax {
                    line: row.line,
                    reason: "expected key<TAB>words".into(),
                });
            }
            let words: Vec<String> = row.fields[1].split_whitespace().map(String::from).collect();
            match row.fields[0] {
                "ordinal_prefix" => ordinal_prefix = Some(words),
                "conjunction" => conjunction = Some(words),
                key => {
                    let v: u64 = key.parse().map_err(|_| TableError::Syntax {
                        line: row.line,
                        reason: format!("unknown key {key:?}"),
                    })?;
                    if v < 10 && words.len() != 1 {
                        return Err(TableError::Syntax {
                            line: row.line,
                            reason: "digit entries must be a single word".into(),
                        });
                    }
                    values.insert(v, words);
                }
            }
        }
        let required = (0..10).chain((1..10).map(|t| t * 10)).chain([100, 1000]);
        for key in required {
            if !values.contains_key(&key) {
                return Err(TableError::MissingKey(key.to_string()));
            }
        }
        Ok(NumeralTable {
            values,
            ordinal_prefix: ordinal_prefix.ok_or_else(|| TableError::MissingKey("ordinal_prefix".into()))?,
            conjunction: conjunction.ok_or_else(|| TableError::MissingKey("conjunction".into()))?,
        })
    }

    pub fn entry(&self, value: u64) -> &[String] {
        &self.values[&value]
    }

    pub fn conjunction(&self) -> &[String] {
        &self.conjunction
    }

    pub fn ordinal_prefix(&self) -> &[String] {
        &self.ordinal_prefix
    }

    fn cardinal(&self, n: u64) -> Vec<String> {
        if n == 0 {
            return self.entry(0).to_vec();
        }
        let mut parts: Vec<Vec<String>> = Vec::new();
        let mut rest = n;
        if rest >= 1000 {
            let mut part = self.entry(1000).to_vec();
            let thousands = rest / 1000;
            if thousands > 1 {
                part.extend(self.cardinal(thousands));
            }
            parts.push(part);
            rest %= 1000;
        }
        if rest >= 100 {
            let mut part = self.entry(100).to_vec();
            let hundreds = rest / 100;
            if hundreds > 1 {
                part.extend(self.entry(hundreds).iter().cloned());
            }
            parts.push(part);
            rest %= 100;
        }
        if rest >= 10 {
            parts.push(self.entry(rest / 10 * 10).to_vec());
            rest %= 10;
        }
        if rest > 0 {
            parts.push(self.entry(rest).to_vec());
        }
        let mut out = Vec::new();
        for (i, part) in parts.into_iter().enumerate() {
            if i > 0 {
                out.extend(self.conjunction.iter().cloned());
            }
            out.extend(part);
        }
        out
    }
}

/// Expands a digit string into words.
pub fn expand_number(
    digits: &str,
    number_type: NumberType,
    table: &NumeralTable,
) -> Result<Vec<String>, NumberError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(NumberError::NotDigits(digits.to_string()));
    }
    match number_type {
        NumberType::Telephone => Ok(digits
            .bytes()
            .map(|b| table.entry(u64::from(b - b'0'))[0].clone())
            .collect()),
        NumberType::Cardinal | NumberType::Ordinal => {
            let significant = digits.trim_start_matches('0');
            if significant.len() > 9 {
                return Err(NumberError::OutOfRange(digits.to_string()));
            }
            let value: u64 = if significant.is_empty() { 0 } else { significant.parse().expect("checked digits") };
            let mut words = Vec::new();
            if number_type == NumberType::Ordinal {
                words.extend(table.ordinal_prefix.iter().cloned());
            }
            words.extend(table.cardinal(value));
            Ok(words)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbbrevMode {
    Spell,
    Expand,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbbrevEntry {
    pub mode: AbbrevMode,
    pub expansion: Vec<String>,
    /// The expansion needs an inflection ending.
    pub inflect: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AbbreviationTable {
    entries: HashMap<String, AbbrevEntry>,
}

impl AbbreviationTable {
    /// Rows are `abbrev<TAB>spell|expand<TAB>expansion[<TAB>inflect]`. An empty
    /// expansion in spell mode spells the abbreviation's own letters.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut entries = HashMap::new();
        for row in tsv::rows(text) {
            let syntax = |reason: &str| TableError::Syntax { line: row.line, reason: reason.into() };
            if row.fields.len() < 2 {
                return Err(syntax("expected abbrev<TAB>mode<TAB>expansion"));
            }
            let mode = match row.fields[1] {
                "spell" => AbbrevMode::Spell,
                "expand" => AbbrevMode::Expand,
                _ => return Err(syntax("mode must be spell or expand")),
            };
            let expansion: Vec<String> = row
                .fields
                .get(2)
                .map(|e| e.split_whitespace().map(String::from).collect())
                .unwrap_or_default();
            if mode == AbbrevMode::Expand && expansion.is_empty() {
                return Err(syntax("expand entries need an expansion"));
            }
            let inflect = match row.fields.get(3) {
                None | Some(&"") => false,
                Some(&"inflect") => true,
                Some(_) => return Err(syntax("fourth column must be 'inflect'")),
            };
            entries.insert(row.fields[0].to_string(), AbbrevEntry { mode, expansion, inflect });
        }
        Ok(AbbreviationTable { entries })
    }

    /// Exact match, then without a trailing dot, then case-insensitively.
    pub fn lookup(&self, surface: &str) -> Option<&AbbrevEntry> {
        self.entries
            .get(surface)
            .or_else(|| self.entries.get(surface.trim_end_matches('.')))
            .or_else(|| {
                let lower = surface.to_lowercase();
                self.entries
                    .iter()
                    .filter(|(k, _)| {
                        let k = k.to_lowercase();
                        k == lower || k.trim_end_matches('.') == lower.trim_end_matches('.')
                    })
                    .min_by(|a, b| a.0.cmp(b.0))
                    .map(|(_, v)| v)
            })
    }

    pub fn expand(&self, surface: &str) -> Option<(Vec<String>, bool)> {
        let entry = self.lookup(surface)?;
        let words = match (entry.mode, entry.expansion.is_empty()) {
            (AbbrevMode::Spell, true) => surface
                .chars()
                .filter(|c| c.is_alphabetic())
                .map(|c| c.to_lowercase().collect())
                .collect(),
            _ => entry.expansion.clone(),
        };
        Some((words, entry.inflect))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationTables {
    pub numerals: NumeralTable,
    pub abbreviations: AbbreviationTable,
}

const CURRENCY: [&str; 5] = ["$", "€", "£", "¥", "₤"];

/// Gives every NUMBER and ABBREV token its expansion. Tokens that cannot be
/// expanded keep `expansion = None` and get a [`NormNote`]. Already-expanded
/// tokens are left alone, so the operation is idempotent.
pub fn normalize(mut doc: UtteranceDoc, tables: &NormalizationTables) -> UtteranceDoc {
    for sentence in &mut doc.sentences {
        normalize_sentence(sentence, tables);
    }
    doc
}

fn number_type_at(sentence: &Sentence, idx: usize) -> NumberType {
    if let Some(d) = sentence.directive_at(idx, DirectiveKind::SayAs) {
        if let Some(t) = NumberType::from_say_as(&d.value) {
            return t;
        }
    }
    // "3. ..." with the sentence continuing: an ordinal dot
    let tokens = &sentence.tokens;
    match tokens.get(idx + 1) {
        Some(dot)
            if dot.kind == TokenKind::Punct
                && dot.surface == "."
                && dot.leading_ws.is_empty()
                && idx + 2 < tokens.len() =>
        {
            NumberType::Ordinal
        }
        _ => NumberType::Cardinal,
    }
}

fn normalize_sentence(sentence: &mut Sentence, tables: &NormalizationTables) {
    for idx in 0..sentence.tokens.len() {
        if sentence.tokens[idx].expansion.is_some() {
            continue;
        }
        match sentence.tokens[idx].kind {
            TokenKind::Number => {
                let ty = number_type_at(sentence, idx);
                let tok = &mut sentence.tokens[idx];
                match expand_number(&tok.surface, ty, &tables.numerals) {
                    Ok(words) => {
                        tok.expansion = Some(words);
                        tok.note = None;
                        if ty == NumberType::Ordinal {
                            tok.inflection = Some(InflectionFlag::Ordinal);
                        }
                    }
                    Err(_) => tok.note = Some(NormNote::Unexpanded),
                }
            }
            TokenKind::Abbrev => {
                let tok = &mut sentence.tokens[idx];
                match tables.abbreviations.expand(&tok.surface) {
                    Some((words, inflect)) => {
                        tok.expansion = Some(words);
                        tok.note = None;
                        if inflect {
                            tok.inflection = Some(InflectionFlag::Abbreviation);
                        }
                    }
                    None => tok.note = Some(NormNote::Unexpanded),
                }
            }
            TokenKind::Symbol => {
                let tok = &mut sentence.tokens[idx];
                if CURRENCY.contains(&tok.surface.as_str()) {
                    tok.note = Some(NormNote::Currency);
                }
            }
            TokenKind::Word | TokenKind::Punct => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    fn table() -> NumeralTable {
        Resources::bundled().normalization.numerals
    }

    fn words(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn telephone_is_per_digit() {
        let t = table();
        assert_eq!(expand_number("0", NumberType::Telephone, &t).unwrap(), t.entry(0).to_vec());
        let e = expand_number("256", NumberType::Telephone, &t).unwrap();
        assert_eq!(e, words(&["bbiri", "ttaano", "mukaaga"]));
    }

    #[test]
    fn cardinal_composition() {
        let t = table();
        // 40 and 2 joined by the conjunction
        let mut expect = t.entry(40).to_vec();
        expect.extend(t.conjunction().iter().cloned());
        expect.extend(t.entry(2).iter().cloned());
        assert_eq!(expand_number("42", NumberType::Cardinal, &t).unwrap(), expect);

        assert_eq!(expand_number("100", NumberType::Cardinal, &t).unwrap(), words(&["kikumi"]));
        assert_eq!(
            expand_number("342", NumberType::Cardinal, &t).unwrap(),
            words(&["kikumi", "ssatu", "mu", "ana", "mu", "bbiri"])
        );
        assert_eq!(
            expand_number("2001", NumberType::Cardinal, &t).unwrap(),
            words(&["lukumi", "bbiri", "mu", "emu"])
        );
        assert_eq!(expand_number("0", NumberType::Cardinal, &t).unwrap(), words(&["zeero"]));
        assert_eq!(expand_number("007", NumberType::Cardinal, &t).unwrap(), words(&["musanvu"]));
        assert!(expand_number("999999999", NumberType::Cardinal, &t).is_ok());
    }

    #[test]
    fn range_and_digit_errors() {
        let t = table();
        assert_eq!(
            expand_number("1000000000", NumberType::Cardinal, &t),
            Err(NumberError::OutOfRange("1000000000".into()))
        );
        assert!(matches!(expand_number("1000000000", NumberType::Ordinal, &t), Err(NumberError::OutOfRange(_))));
        assert_eq!(expand_number("12", NumberType::Telephone, &t).unwrap().len(), 2);
        assert!(matches!(expand_number("1a", NumberType::Cardinal, &t), Err(NumberError::NotDigits(_))));
    }

    #[test]
    fn ordinal_prefix() {
        let t = table();
        let e = expand_number("3", NumberType::Ordinal, &t).unwrap();
        assert_eq!(e, words(&["ow'oku", "ssatu"]));
    }

    #[test]
    fn missing_key_rejected() {
        assert!(matches!(NumeralTable::parse("0\tzeero\n"), Err(TableError::MissingKey(_))));
    }

    #[test]
    fn abbreviation_lookup() {
        let a = Resources::bundled().normalization.abbreviations;
        assert_eq!(a.expand("Dr.").unwrap().0, words(&["dokita"]));
        assert_eq!(a.expand("dr.").unwrap().0, words(&["dokita"]));
        assert_eq!(a.expand("UTV").unwrap().0, words(&["yu", "ti", "vi"]));
        assert!(a.expand("XYZ").is_none());
        let own = AbbreviationTable::parse("AB\tspell\t\n").unwrap();
        assert_eq!(own.expand("AB").unwrap().0, words(&["a", "b"]));
    }
}
