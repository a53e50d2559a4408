//! Handwritten letter-to-sound rules for Luganda orthography.

use super::{LinguisticsError, PhoneSet};
use crate::frontend::tokenize::{is_apostrophe, is_letter};

/// Multi-letter rules, tried longest first at each position.
const DIGRAPHS: [(&str, &str); 6] = [
    ("nng'", "N:"),
    ("ng'", "N"),
    ("ŋŋ", "N:"),
    ("ŋ", "N"),
    ("nny", "J:"),
    ("ny", "J"),
];

/// Maps a written word to phones by longest match:
///
/// * `ng'` (or `ŋ`) is the velar nasal `N`, `ny` the palatal nasal `J`;
/// * a doubled letter is one long vowel or geminate consonant (`bb` → `b:`,
///   `aa` → `a:`, `nny` → `J:`);
/// * other apostrophes (elision), hyphens and dots are dropped;
/// * remaining letters map one-to-one; letters with no phone are skipped.
pub fn letter_to_sound(grapheme: &str, phoneset: &PhoneSet) -> Result<Vec<String>, LinguisticsError> {
    let chars: Vec<char> = grapheme
        .chars()
        .flat_map(char::to_lowercase)
        .map(|c| if is_apostrophe(c) { '\'' } else { c })
        .collect();
    let mut phones: Vec<String> = Vec::new();
    let mut i = 0;
    'outer: while i < chars.len() {
        for (pattern, phone) in DIGRAPHS {
            let pat: Vec<char> = pattern.chars().collect();
            if chars[i..].starts_with(&pat) && phoneset.contains(phone) {
                phones.push(phone.to_string());
                i += pat.len();
                continue 'outer;
            }
        }
        let c = chars[i];
        let single = c.to_string();
        if !is_letter(c) || !phoneset.contains(&single) {
            i += 1;
            continue;
        }
        if chars.get(i + 1) == Some(&c) {
            if let Some(long) = phoneset.lengthened(&single).filter(|l| *l != single) {
                phones.push(long.to_string());
                i += 2;
                continue;
            }
        }
        phones.push(single);
        i += 1;
    }
    if phones.is_empty() {
        return Err(LinguisticsError::Unphonemizable(grapheme.to_string()));
    }
    Ok(phones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    fn lts(w: &str) -> Vec<String> {
        letter_to_sound(w, &Resources::bundled().phoneset).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(lts("butiko"), ["b", "u", "t", "i", "k", "o"]);
        assert_eq!(lts("bbiri"), ["b:", "i", "r", "i"]);
        assert_eq!(lts("ennyumba"), ["e", "J:", "u", "m", "b", "a"]);
    }

    #[test]
    fn apostrophes_and_nasals() {
        assert_eq!(lts("ng'omuntu"), ["N", "o", "m", "u", "n", "t", "u"]);
        assert_eq!(lts("ŋŋoma"), ["N:", "o", "m", "a"]);
        assert_eq!(lts("n'okuggwaawo"), ["n", "o", "k", "u", "g:", "w", "a:", "w", "o"]);
        assert_eq!(lts("bw’ayera"), ["b", "w", "a", "y", "e", "r", "a"]);
        assert_eq!(lts("nyama"), ["J", "a", "m", "a"]);
        // ng without apostrophe is two phones
        assert_eq!(lts("nga"), ["n", "g", "a"]);
    }

    #[test]
    fn unmapped_letters() {
        assert_eq!(lts("Hello"), ["e", "l:", "o"]);
        let ps = Resources::bundled().phoneset;
        assert!(matches!(letter_to_sound("###", &ps), Err(LinguisticsError::Unphonemizable(_))));
        assert!(letter_to_sound("hq", &ps).is_err());
    }
}
