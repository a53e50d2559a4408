use super::{LinguisticsError, PhoneSet};
use crate::doc::Syllable;

/// Open-syllable, maximal-onset segmentation: each vowel is a nucleus and
/// takes all consonants before it. Consonants after the last vowel close the
/// final syllable. The first syllable is marked stressed.
pub fn syllabify(phones: &[String], phoneset: &PhoneSet) -> Result<Vec<Syllable>, LinguisticsError> {
    let mut syllables: Vec<Syllable> = Vec::new();
    let mut onset: Vec<String> = Vec::new();
    for p in phones {
        if !phoneset.contains(p) {
            return Err(LinguisticsError::UnknownPhone(p.clone()));
        }
        onset.push(p.clone());
        if phoneset.is_vowel(p) {
            syllables.push(Syllable { phones: std::mem::take(&mut onset), stressed: false });
        }
    }
    match syllables.last_mut() {
        None => return Err(LinguisticsError::NoNucleus(phones.join(" "))),
        Some(last) => last.phones.extend(onset),
    }
    syllables[0].stressed = true;
    Ok(syllables)
}

/// Builds syllables from explicit boundaries (lexicon marks).
pub fn from_boundaries(groups: Vec<Vec<String>>) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = groups
        .into_iter()
        .map(|phones| Syllable { phones, stressed: false })
        .collect();
    if let Some(first) = out.first_mut() {
        first.stressed = true;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    fn syl(phones: &[&str]) -> Result<Vec<String>, LinguisticsError> {
        let ps = Resources::bundled().phoneset;
        let phones: Vec<String> = phones.iter().map(|s| s.to_string()).collect();
        Ok(syllabify(&phones, &ps)?.into_iter().map(|s| s.phones.concat()).collect())
    }

    #[test]
    fn examples() {
        assert_eq!(syl(&["b", "u", "t", "i", "k", "o"]).unwrap(), ["bu", "ti", "ko"]);
        assert_eq!(syl(&["e", "J:", "u", "m", "b", "a"]).unwrap(), ["e", "J:u", "mba"]);
        assert!(matches!(syl(&["s"]), Err(LinguisticsError::NoNucleus(_))));
        assert!(matches!(syl(&[]), Err(LinguisticsError::NoNucleus(_))));
    }

    #[test]
    fn coda_and_long_vowels() {
        assert_eq!(syl(&["m", "i", "s", "i", "r"]).unwrap(), ["mi", "sir"]);
        assert_eq!(syl(&["k", "a:", "l", "o"]).unwrap(), ["ka:", "lo"]);
        assert!(matches!(syl(&["x", "a"]), Err(LinguisticsError::UnknownPhone(_))));
    }

    #[test]
    fn first_syllable_stressed() {
        let ps = Resources::bundled().phoneset;
        let s = syllabify(&["a".into(), "b".into(), "a".into()], &ps).unwrap();
        assert!(s[0].stressed && !s[1].stressed);
    }
}
