use super::{syllabify, LinguisticsError, PhoneSet};
use crate::doc::{InflectionFlag, Pos, Word};
use crate::tsv;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndingContext {
    NounPhrase,
    Any,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndingRule {
    pub flag: InflectionFlag,
    pub pos: Pos,
    pub context: EndingContext,
    pub ending: Vec<String>,
}

/// Ordered ending table; the first matching row wins.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EndingRules {
    pub rules: Vec<EndingRule>,
}

impl EndingRules {
    /// Rows are `flag<TAB>pos<TAB>np|any<TAB>ending phones`.
    pub fn parse(text: &str, phoneset: &PhoneSet) -> Result<Self, LinguisticsError> {
        let mut rules = Vec::new();
        for row in tsv::rows(text) {
            let bad = |reason: String| LinguisticsError::Data { file: "inflection_endings", line: row.line, reason };
            if row.fields.len() < 4 {
                return Err(bad("expected flag<TAB>pos<TAB>context<TAB>ending".into()));
            }
            let flag = match row.fields[0] {
                "ordinal" => InflectionFlag::Ordinal,
                "abbrev" => InflectionFlag::Abbreviation,
                other => return Err(bad(format!("unknown flag {other:?}"))),
            };
            let pos: Pos = row.fields[1].parse().map_err(bad)?;
            let context = match row.fields[2] {
                "np" => EndingContext::NounPhrase,
                "any" => EndingContext::Any,
                other => return Err(bad(format!("unknown context {other:?}"))),
            };
            let ending: Vec<String> = row.fields[3].split_whitespace().map(String::from).collect();
            if let Some(p) = ending.iter().find(|p| !phoneset.contains(p)) {
                return Err(bad(format!("unknown phone {p:?}")));
            }
            rules.push(EndingRule { flag, pos, context, ending });
        }
        Ok(EndingRules { rules })
    }
}

/// Appends the ending selected by the word's flag, part of speech and whether
/// it sits in a noun phrase. Unflagged or already inflected words, and words
/// without phones, are returned unchanged.
pub fn apply_inflection(
    word: Word,
    rules: &EndingRules,
    in_noun_phrase: bool,
    phoneset: &PhoneSet,
) -> Result<Word, LinguisticsError> {
    let Some(flag) = word.inflection else { return Ok(word) };
    if word.inflected || !word.has_phones() {
        return Ok(word);
    }
    let rule = rules.rules.iter().find(|r| {
        r.flag == flag
            && r.pos == word.pos
            && (r.context == EndingContext::Any || in_noun_phrase)
    });
    let Some(rule) = rule else { return Ok(word) };
    let mut phones = word.phones();
    phones.extend(rule.ending.iter().cloned());
    let syllables = syllabify(&phones, phoneset)?;
    Ok(Word { syllables, inflected: true, ..word })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    fn word(pos: Pos, flag: Option<InflectionFlag>) -> Word {
        let ps = Resources::bundled().phoneset;
        let mut w = Word::new(0, "ssatu", pos);
        w.syllables = syllabify(&["s:".into(), "a".into(), "t".into(), "u".into()], &ps).unwrap();
        w.inflection = flag;
        w
    }

    #[test]
    fn unflagged_unchanged() {
        let r = Resources::bundled();
        let w = word(Pos::Adj, None);
        assert_eq!(apply_inflection(w.clone(), &r.inflection, true, &r.phoneset).unwrap(), w);
    }

    #[test]
    fn adjectival_and_adverbial_endings() {
        let r = Resources::bundled();
        let adj = apply_inflection(word(Pos::Adj, Some(InflectionFlag::Ordinal)), &r.inflection, true, &r.phoneset).unwrap();
        assert_eq!(adj.phones(), ["s:", "a", "t", "u", "y", "e"]);
        assert!(adj.inflected);
        let adj_out = apply_inflection(word(Pos::Adj, Some(InflectionFlag::Ordinal)), &r.inflection, false, &r.phoneset).unwrap();
        assert_eq!(adj_out.phones(), ["s:", "a", "t", "u", "y", "a"]);
        let adv = apply_inflection(word(Pos::Adv, Some(InflectionFlag::Ordinal)), &r.inflection, false, &r.phoneset).unwrap();
        assert_eq!(adv.phones(), ["s:", "a", "t", "u", "k", "o"]);
        assert_eq!(adv.syllables.len(), 3);
        // applying twice adds nothing
        let again = apply_inflection(adv.clone(), &r.inflection, false, &r.phoneset).unwrap();
        assert_eq!(again, adv);
    }
}
