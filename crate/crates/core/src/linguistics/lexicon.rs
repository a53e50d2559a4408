use std::collections::HashMap;

use super::{LinguisticsError, PhoneSet};
use crate::doc::Pos;
use crate::tsv;

#[derive(Clone, Debug, PartialEq)]
pub struct LexiconEntry {
    pub grapheme: String,
    pub phones: Vec<String>,
    /// Phone indices at which a new syllable begins (excluding 0). Empty when
    /// the entry carries no syllable marks.
    pub syllable_starts: Vec<usize>,
    pub pos_hint: Option<Pos>,
    pub inflection_class: Option<String>,
}

impl LexiconEntry {
    pub fn syllables(&self) -> Vec<Vec<String>> {
        let mut out = Vec::new();
        let mut prev = 0;
        for &s in self.syllable_starts.iter().chain(std::iter::once(&self.phones.len())) {
            out.push(self.phones[prev..s].to_vec());
            prev = s;
        }
        out
    }

    pub fn has_syllable_marks(&self) -> bool {
        !self.syllable_starts.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Lexicon {
    entries: HashMap<String, LexiconEntry>,
}

impl Lexicon {
    /// Rows are `grapheme<TAB>transcription[<TAB>pos_hint[<TAB>inflection_class]]`
    /// with space-separated phones and `.` between syllables.
    pub fn parse(text: &str, phoneset: &PhoneSet) -> Result<Self, LinguisticsError> {
        let mut entries = HashMap::new();
        for row in tsv::rows(text) {
            let bad = |reason: String| LinguisticsError::Data { file: "lexicon", line: row.line, reason };
            if row.fields.len() < 2 || row.fields[1].is_empty() {
                return Err(bad("expected grapheme<TAB>transcription".into()));
            }
            let grapheme = row.fields[0].to_lowercase();
            let mut phones = Vec::new();
            let mut syllable_starts = Vec::new();
            for sym in row.fields[1].split_whitespace() {
                if sym == "." {
                    if !phones.is_empty() && syllable_starts.last() != Some(&phones.len()) {
                        syllable_starts.push(phones.len());
                    }
                    continue;
                }
                if !phoneset.contains(sym) {
                    return Err(bad(format!("unknown phone {sym:?}")));
                }
                phones.push(sym.to_string());
            }
            if phones.is_empty() {
                return Err(bad("empty transcription".into()));
            }
            syllable_starts.retain(|&s| s < phones.len());
            let pos_hint = match row.fields.get(2) {
                Some(p) if !p.is_empty() => Some(p.parse().map_err(bad)?),
                _ => None,
            };
            let inflection_class = row.fields.get(3).filter(|s| !s.is_empty()).map(|s| s.to_string());
            let entry = LexiconEntry { grapheme: grapheme.clone(), phones, syllable_starts, pos_hint, inflection_class };
            if entry.has_syllable_marks()
                && entry.syllables().iter().any(|syl| !syl.iter().any(|p| phoneset.is_vowel(p)))
            {
                return Err(bad("every marked syllable needs a vowel".into()));
            }
            entries.insert(grapheme, entry);
        }
        Ok(Lexicon { entries })
    }

    pub fn lookup(&self, grapheme: &str) -> Option<&LexiconEntry> {
        self.entries.get(grapheme)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    #[test]
    fn parse_with_marks() {
        let ps = Resources::bundled().phoneset;
        let lex = Lexicon::parse("Omuntu\to . m u . n t u\tNOUN\n", &ps).unwrap();
        let e = lex.lookup("omuntu").unwrap();
        assert_eq!(e.phones, ["o", "m", "u", "n", "t", "u"]);
        assert_eq!(e.syllables(), vec![vec!["o"], vec!["m", "u"], vec!["n", "t", "u"]]);
        assert_eq!(e.pos_hint, Some(Pos::Noun));
    }

    #[test]
    fn rejects_bad_rows() {
        let ps = Resources::bundled().phoneset;
        assert!(Lexicon::parse("x\th a\n", &ps).is_err());
        assert!(Lexicon::parse("x\t\n", &ps).is_err());
        assert!(Lexicon::parse("x\tm . a\n", &ps).is_err());
        assert!(Lexicon::parse("x\ta\tVERB\n", &ps).is_err());
    }
}
