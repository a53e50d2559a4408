//! Part-of-speech tagging, noun-phrase chunking and phonemization into the
//! Luganda SAMPA phone set.

pub mod inflection;
pub mod lexicon;
pub mod lts;
pub mod phoneset;
pub mod pos;
pub mod syllable;

use thiserror::Error;

use crate::doc::{PhoneSource, Syllable};

pub use inflection::{apply_inflection, EndingRules};
pub use lexicon::{Lexicon, LexiconEntry};
pub use lts::letter_to_sound;
pub use phoneset::{PhoneCategory, PhoneSet};
pub use pos::{chunk_phrases, tag_pos, FunctionWords};
pub use syllable::syllabify;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinguisticsError {
    #[error("no letter of {0:?} maps to a phone")]
    Unphonemizable(String),
    #[error("no vowel nucleus in [{0}]")]
    NoNucleus(String),
    #[error("phone {0:?} is not in the phone set")]
    UnknownPhone(String),
    #[error("{file} line {line}: {reason}")]
    Data { file: &'static str, line: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Phonemization {
    pub phones: Vec<String>,
    /// Syllables from lexicon marks, when the entry has them.
    pub syllables: Option<Vec<Syllable>>,
    pub source: PhoneSource,
}

impl Phonemization {
    /// Syllables from the lexicon marks, or computed by [`syllabify`].
    pub fn into_syllables(self, phoneset: &PhoneSet) -> Result<Vec<Syllable>, LinguisticsError> {
        match self.syllables {
            Some(s) => Ok(s),
            None => syllabify(&self.phones, phoneset),
        }
    }
}

/// Lexicon lookup first, letter-to-sound rules otherwise. The word is
/// lowercased and abbreviation dots are removed before lookup.
pub fn phonemize_word(
    grapheme: &str,
    lexicon: &Lexicon,
    phoneset: &PhoneSet,
) -> Result<Phonemization, LinguisticsError> {
    let key: String = grapheme
        .to_lowercase()
        .chars()
        .filter(|&c| c != '.')
        .map(|c| if crate::frontend::tokenize::is_apostrophe(c) { '\'' } else { c })
        .collect();
    if let Some(entry) = lexicon.lookup(&key) {
        let syllables = entry
            .has_syllable_marks()
            .then(|| syllable::from_boundaries(entry.syllables()));
        return Ok(Phonemization {
            phones: entry.phones.clone(),
            syllables,
            source: PhoneSource::Lexicon,
        });
    }
    Ok(Phonemization {
        phones: letter_to_sound(&key, phoneset)?,
        syllables: None,
        source: PhoneSource::Lts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    #[test]
    fn lexicon_has_priority() {
        let r = Resources::bundled();
        let p = phonemize_word("Muzungu", &r.lexicon, &r.phoneset).unwrap();
        assert_eq!(p.source, PhoneSource::Lexicon);
        assert_eq!(p.phones, r.lexicon.lookup("muzungu").unwrap().phones);
        // LTS would have said n g
        assert_eq!(p.phones, ["m", "u", "z", "u", "N", "g", "u"]);
    }

    #[test]
    fn lts_fallback() {
        let r = Resources::bundled();
        let p = phonemize_word("butiko", &r.lexicon, &r.phoneset).unwrap();
        assert_eq!(p.source, PhoneSource::Lts);
        assert_eq!(p.phones.join(" "), "b u t i k o");
        assert!(matches!(
            phonemize_word("###", &r.lexicon, &r.phoneset),
            Err(LinguisticsError::Unphonemizable(_))
        ));
    }
}
