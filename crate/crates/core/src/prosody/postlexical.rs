//! Postlexical phonological rewrite rules.
//!
//! One rule per line:
//!
//! ```text
//! name: focus / left _ right -> replacement [@precision]
//! ```
//!
//! Pattern elements are phone symbols, the classes `V` (vowel), `C`
//! (consonant) and `N` (nasal), `#` (word boundary, also matched by a phrase
//! boundary) and `%` (phrase boundary; sentence edges count as phrase
//! boundaries). A class followed by a digit (`V1`) binds the matched phone;
//! later uses of the same name must match the same phone. Any phone element
//! may carry conditions in braces: `V{unstressed,accented}`.
//!
//! The replacement lists phones and bound names. `V1:` is the long
//! counterpart of the bound phone, `V1~` the short one, and a lone `0`
//! deletes the focus phones. Boundaries in the focus are kept.
//!
//! `@level` restricts a rule to articulation at that precision or looser
//! (`@relaxed` fires only when relaxed). Each rule makes a single
//! left-to-right pass; contexts are read from the rule's input, so a rule
//! never feeds itself.

use std::collections::HashMap;
use std::str::FromStr;

use super::ProsodyError;
use crate::doc::{Sentence, UtteranceDoc};
use crate::linguistics::{syllabify, PhoneSet};

/// Requested articulation precision, ordered loosest first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub enum Precision {
    Relaxed,
    #[default]
    Normal,
    Precise,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Relaxed => "relaxed",
            Precision::Normal => "normal",
            Precision::Precise => "precise",
        }
    }
}

impl FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "relaxed" => Ok(Precision::Relaxed),
            "normal" => Ok(Precision::Normal),
            "precise" => Ok(Precision::Precise),
            _ => Err(format!("unknown precision {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhoneClass {
    Vowel,
    Consonant,
    Nasal,
}

impl PhoneClass {
    fn matches(self, symbol: &str, phoneset: &PhoneSet) -> bool {
        match self {
            PhoneClass::Vowel => phoneset.is_vowel(symbol),
            PhoneClass::Consonant => phoneset.is_consonant(symbol),
            PhoneClass::Nasal => {
                phoneset.has_feature(symbol, crate::linguistics::phoneset::PhoneFeature::Nasal)
            }
        }
    }
}

type VarKey = (PhoneClass, u8);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Conditions {
    pub stressed: Option<bool>,
    pub accented: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Phone(String, Conditions),
    Class { class: PhoneClass, var: Option<u8>, cond: Conditions },
    WordBoundary,
    PhraseBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthChange {
    Keep,
    Lengthen,
    Shorten,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replacement {
    Phone(String),
    Var(VarKey, LengthChange),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub focus: Vec<Element>,
    pub left: Vec<Element>,
    pub right: Vec<Element>,
    pub replacement: Vec<Replacement>,
    /// Loosest-permitted gate; `None` applies at every precision.
    pub gate: Option<Precision>,
}

impl RewriteRule {
    pub fn applies_at(&self, precision: Precision) -> bool {
        self.gate.is_none_or(|g| precision <= g)
    }
}

fn parse_class(s: &str) -> Option<PhoneClass> {
    match s {
        "V" => Some(PhoneClass::Vowel),
        "C" => Some(PhoneClass::Consonant),
        "N" => Some(PhoneClass::Nasal),
        _ => None,
    }
}

/// Splits `V1:` style tokens into class, variable number and suffix.
fn split_var(token: &str) -> Option<(PhoneClass, Option<u8>, &str)> {
    let mut chars = token.char_indices();
    let (_, c) = chars.next()?;
    let class = parse_class(&c.to_string())?;
    let rest = &token[c.len_utf8()..];
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    let var = if digits > 0 { Some(rest[..digits].parse().ok()?) } else { None };
    Some((class, var, &rest[digits..]))
}

fn parse_element(token: &str, phoneset: &PhoneSet) -> Result<Element, String> {
    match token {
        "#" => return Ok(Element::WordBoundary),
        "%" => return Ok(Element::PhraseBoundary),
        _ => {}
    }
    let (head, cond) = match token.split_once('{') {
        Some((h, c)) => {
            let c = c.strip_suffix('}').ok_or_else(|| format!("unclosed condition in {token:?}"))?;
            let mut cond = Conditions::default();
            for name in c.split(',').map(str::trim) {
                match name {
                    "stressed" => cond.stressed = Some(true),
                    "unstressed" => cond.stressed = Some(false),
                    "accented" => cond.accented = Some(true),
                    "unaccented" => cond.accented = Some(false),
                    other => return Err(format!("unknown condition {other:?}")),
                }
            }
            (h, cond)
        }
        None => (token, Conditions::default()),
    };
    if let Some((class, var, "")) = split_var(head) {
        return Ok(Element::Class { class, var, cond });
    }
    if phoneset.contains(head) {
        Ok(Element::Phone(head.to_string(), cond))
    } else {
        Err(format!("unknown phone or class {head:?}"))
    }
}

fn parse_rule(line: &str, phoneset: &PhoneSet) -> Result<RewriteRule, String> {
    let (name, rest) = line.split_once(": ").ok_or("expected 'name: ...'")?;
    let (lhs, rhs) = rest.split_once("->").ok_or("expected '->'")?;
    let (focus_src, context) = match lhs.split_once('/') {
        Some((f, c)) => (f, Some(c)),
        None => (lhs, None),
    };
    let elements = |src: &str| -> Result<Vec<Element>, String> {
        src.split_whitespace().map(|t| parse_element(t, phoneset)).collect()
    };
    let focus = elements(focus_src)?;
    if !focus.iter().any(|e| matches!(e, Element::Phone(..) | Element::Class { .. })) {
        return Err("focus needs at least one phone".into());
    }
    let (left, right) = match context {
        None => (Vec::new(), Vec::new()),
        Some(c) => {
            let toks: Vec<&str> = c.split_whitespace().collect();
            let at = toks.iter().position(|t| *t == "_").ok_or("context needs '_'")?;
            if toks[at + 1..].contains(&"_") {
                return Err("context has more than one '_'".into());
            }
            (elements(&toks[..at].join(" "))?, elements(&toks[at + 1..].join(" "))?)
        }
    };
    let mut rhs_toks: Vec<&str> = rhs.split_whitespace().collect();
    let gate = match rhs_toks.last() {
        Some(t) if t.starts_with('@') => {
            let g = t[1..].parse()?;
            rhs_toks.pop();
            Some(g)
        }
        _ => None,
    };
    let mut bound: Vec<VarKey> = Vec::new();
    for e in left.iter().chain(&focus).chain(&right) {
        if let Element::Class { class, var: Some(v), .. } = e {
            bound.push((*class, *v));
        }
    }
    let replacement = if rhs_toks == ["0"] {
        Vec::new()
    } else if rhs_toks.is_empty() {
        return Err("empty replacement (use 0 to delete)".into());
    } else {
        rhs_toks
            .iter()
            .map(|t| match split_var(t) {
                Some((class, Some(v), suffix)) => {
                    if !bound.contains(&(class, v)) {
                        return Err(format!("{t:?} is not bound by the pattern"));
                    }
                    let change = match suffix {
                        "" => LengthChange::Keep,
                        ":" => LengthChange::Lengthen,
                        "~" => LengthChange::Shorten,
                        _ => return Err(format!("bad suffix in {t:?}")),
                    };
                    Ok(Replacement::Var((class, v), change))
                }
                Some((_, None, _)) => Err(format!("bare class {t:?} in replacement")),
                None if phoneset.contains(t) => Ok(Replacement::Phone(t.to_string())),
                None => Err(format!("unknown phone {t:?}")),
            })
            .collect::<Result<_, _>>()?
    };
    Ok(RewriteRule { name: name.trim().to_string(), focus, left, right, replacement, gate })
}

/// Parses a rule file. Any pattern naming an unknown symbol is an error.
pub fn parse_rules(text: &str, phoneset: &PhoneSet) -> Result<Vec<RewriteRule>, ProsodyError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            parse_rule(l.trim(), phoneset).map_err(|reason| ProsodyError::InvalidRule { line: i + 1, reason })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Slot {
    Phone { symbol: String, word: usize, stressed: bool, accented: bool },
    WordBoundary,
    PhraseBoundary,
}

fn build_slots(sentence: &Sentence) -> Vec<Slot> {
    let mut slots = vec![Slot::PhraseBoundary];
    let mut prev: Option<usize> = None;
    for (wi, w) in sentence.words.iter().enumerate() {
        if !w.has_phones() {
            continue;
        }
        if let Some(p) = prev {
            let phrase = sentence.breaks.iter().any(|b| p <= b.after_word && b.after_word < wi);
            slots.push(if phrase { Slot::PhraseBoundary } else { Slot::WordBoundary });
        }
        for syl in &w.syllables {
            for ph in &syl.phones {
                slots.push(Slot::Phone {
                    symbol: ph.clone(),
                    word: wi,
                    stressed: syl.stressed,
                    accented: w.accented,
                });
            }
        }
        prev = Some(wi);
    }
    slots.push(Slot::PhraseBoundary);
    slots
}

fn element_matches(
    e: &Element,
    slot: &Slot,
    binds: &mut HashMap<VarKey, String>,
    phoneset: &PhoneSet,
) -> bool {
    let cond_ok = |c: &Conditions, stressed: bool, accented: bool| {
        c.stressed.is_none_or(|s| s == stressed) && c.accented.is_none_or(|a| a == accented)
    };
    match (e, slot) {
        (Element::WordBoundary, Slot::WordBoundary | Slot::PhraseBoundary) => true,
        (Element::PhraseBoundary, Slot::PhraseBoundary) => true,
        (Element::Phone(p, c), Slot::Phone { symbol, stressed, accented, .. }) => {
            p == symbol && cond_ok(c, *stressed, *accented)
        }
        (Element::Class { class, var, cond }, Slot::Phone { symbol, stressed, accented, .. }) => {
            if !class.matches(symbol, phoneset) || !cond_ok(cond, *stressed, *accented) {
                return false;
            }
            match var {
                None => true,
                Some(v) => match binds.get(&(*class, *v)) {
                    Some(b) => b == symbol,
                    None => {
                        binds.insert((*class, *v), symbol.clone());
                        true
                    }
                },
            }
        }
        _ => false,
    }
}

fn match_at(slots: &[Slot], i: usize, rule: &RewriteRule, phoneset: &PhoneSet) -> Option<HashMap<VarKey, String>> {
    let end = i + rule.focus.len();
    if end > slots.len() || i < rule.left.len() || end + rule.right.len() > slots.len() {
        return None;
    }
    let mut binds = HashMap::new();
    let focus_ok = rule.focus.iter().zip(&slots[i..end]).all(|(e, s)| element_matches(e, s, &mut binds, phoneset));
    if !focus_ok {
        return None;
    }
    let left_start = i - rule.left.len();
    let left_ok = rule.left.iter().zip(&slots[left_start..i]).all(|(e, s)| element_matches(e, s, &mut binds, phoneset));
    let right_ok = left_ok
        && rule
            .right
            .iter()
            .zip(&slots[end..end + rule.right.len()])
            .all(|(e, s)| element_matches(e, s, &mut binds, phoneset));
    right_ok.then_some(binds)
}

fn realize(rule: &RewriteRule, binds: &HashMap<VarKey, String>, phoneset: &PhoneSet) -> Option<Vec<String>> {
    rule.replacement
        .iter()
        .map(|r| match r {
            Replacement::Phone(p) => Some(p.clone()),
            Replacement::Var(key, change) => {
                let bound = binds.get(key)?;
                match change {
                    LengthChange::Keep => Some(bound.clone()),
                    LengthChange::Lengthen => phoneset.lengthened(bound).map(String::from),
                    LengthChange::Shorten => phoneset.shortened(bound).map(String::from),
                }
            }
        })
        .collect()
}

fn apply_rule(slots: &[Slot], rule: &RewriteRule, phoneset: &PhoneSet) -> Vec<Slot> {
    let mut out = Vec::with_capacity(slots.len());
    let mut i = 0;
    while i < slots.len() {
        let hit = match_at(slots, i, rule, phoneset)
            .and_then(|b| realize(rule, &b, phoneset));
        let Some(phones) = hit else {
            out.push(slots[i].clone());
            i += 1;
            continue;
        };
        let focus = &slots[i..i + rule.focus.len()];
        let infos: Vec<&Slot> = focus.iter().filter(|s| matches!(s, Slot::Phone { .. })).collect();
        for (k, symbol) in phones.into_iter().enumerate() {
            if let Slot::Phone { word, stressed, accented, .. } = infos[k.min(infos.len() - 1)] {
                out.push(Slot::Phone { symbol, word: *word, stressed: *stressed, accented: *accented });
            }
        }
        out.extend(focus.iter().filter(|s| !matches!(s, Slot::Phone { .. })).cloned());
        i += rule.focus.len();
    }
    out
}

fn rebuild(sentence: &mut Sentence, slots: &[Slot], phoneset: &PhoneSet) {
    let n = sentence.words.len();
    let mut phones: Vec<Vec<String>> = vec![Vec::new(); n];
    for s in slots {
        if let Slot::Phone { symbol, word, .. } = s {
            phones[*word].push(symbol.clone());
        }
    }
    let lexical: Vec<usize> = (0..n).filter(|&i| sentence.words[i].has_phones()).collect();
    // a word left with consonants only hands them to a neighbour
    for (k, &wi) in lexical.iter().enumerate() {
        if phones[wi].is_empty() || phones[wi].iter().any(|p| phoneset.is_vowel(p)) {
            continue;
        }
        let moved = std::mem::take(&mut phones[wi]);
        if k > 0 {
            phones[lexical[k - 1]].extend(moved);
        } else if let Some(&next) = lexical.get(k + 1) {
            let mut joined = moved;
            joined.append(&mut phones[next]);
            phones[next] = joined;
        } else {
            phones[wi] = moved;
        }
    }
    for &wi in &lexical {
        let word = &mut sentence.words[wi];
        if word.phones() == phones[wi] {
            continue;
        }
        word.syllables = if phones[wi].is_empty() {
            Vec::new()
        } else {
            syllabify(&phones[wi], phoneset).unwrap_or_else(|_| {
                vec![crate::doc::Syllable { phones: phones[wi].clone(), stressed: true }]
            })
        };
    }
}

/// Runs the rules in order over every sentence's phones.
pub fn apply_postlexical(
    mut doc: UtteranceDoc,
    rules: &[RewriteRule],
    precision: Precision,
    phoneset: &PhoneSet,
) -> UtteranceDoc {
    let active: Vec<&RewriteRule> = rules.iter().filter(|r| r.applies_at(precision)).collect();
    if active.is_empty() {
        return doc;
    }
    for sentence in &mut doc.sentences {
        let original = build_slots(sentence);
        let mut slots = original.clone();
        for rule in &active {
            slots = apply_rule(&slots, rule, phoneset);
        }
        if slots != original {
            rebuild(sentence, &slots, phoneset);
        }
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;
    use crate::doc::{Pos, Word};
    use crate::linguistics::phonemize_word;

    fn doc_of(words: &[&str]) -> UtteranceDoc {
        let r = Resources::bundled();
        let mut doc = crate::frontend::parse_plain(&words.join(" "));
        let s = &mut doc.sentences[0];
        s.words = words
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let mut word = Word::new(i, *w, Pos::Noun);
                word.syllables = phonemize_word(w, &r.lexicon, &r.phoneset)
                    .unwrap()
                    .into_syllables(&r.phoneset)
                    .unwrap();
                word
            })
            .collect();
        s.breaks = crate::prosody::assign_phrase_breaks(s);
        doc
    }

    fn phones(doc: &UtteranceDoc) -> Vec<String> {
        doc.sentences[0].words.iter().map(|w| w.phones().join(" ")).collect()
    }

    fn rules(text: &str) -> Vec<RewriteRule> {
        parse_rules(text, &Resources::bundled().phoneset).unwrap()
    }

    #[test]
    fn empty_rules_identity() {
        let ps = Resources::bundled().phoneset;
        let d = doc_of(&["ne", "era"]);
        assert_eq!(apply_postlexical(d.clone(), &[], Precision::Normal, &ps), d);
    }

    #[test]
    fn identical_vowels_merge_across_words() {
        let ps = Resources::bundled().phoneset;
        let r = rules("merge: V1 # V1 / _ -> V1:");
        let out = apply_postlexical(doc_of(&["ne", "era"]), &r, Precision::Normal, &ps);
        assert_eq!(phones(&out), ["n e:", "r a"]);
        let s = &out.sentences[0];
        assert!(s.words.iter().all(|w| w.syllables.iter().all(|syl| syl.phones.iter().any(|p| ps.is_vowel(p)))));
    }

    #[test]
    fn precision_gate() {
        let ps = Resources::bundled().phoneset;
        let r = rules("shorten: V1 / _ % -> V1~ @relaxed");
        let d = doc_of(&["kaa"]);
        assert_eq!(apply_postlexical(d.clone(), &r, Precision::Precise, &ps), d);
        assert_eq!(apply_postlexical(d.clone(), &r, Precision::Normal, &ps), d);
        let relaxed = apply_postlexical(d, &r, Precision::Relaxed, &ps);
        assert_eq!(phones(&relaxed), ["k a"]);
    }

    #[test]
    fn single_pass_does_not_cascade() {
        let ps = Resources::bundled().phoneset;
        // a -> e; with cascading the produced e would match again
        let r = rules("raise: a / _ -> e");
        let out = apply_postlexical(doc_of(&["kaala"]), &r, Precision::Normal, &ps);
        assert_eq!(phones(&out), ["k a: l e"]);
    }

    #[test]
    fn order_matters() {
        let ps = Resources::bundled().phoneset;
        let a = "r1: a / _ -> e\nr2: e / _ -> i";
        let b = "r2: e / _ -> i\nr1: a / _ -> e";
        let d = doc_of(&["baba"]);
        let out_a = apply_postlexical(d.clone(), &rules(a), Precision::Normal, &ps);
        let out_b = apply_postlexical(d, &rules(b), Precision::Normal, &ps);
        assert_eq!(phones(&out_a), ["b i b i"]);
        assert_eq!(phones(&out_b), ["b e b e"]);
    }

    #[test]
    fn deletion_and_conditions() {
        let ps = Resources::bundled().phoneset;
        let r = rules("drop: V{unstressed} / _ % -> 0");
        let out = apply_postlexical(doc_of(&["butiko"]), &r, Precision::Normal, &ps);
        assert_eq!(phones(&out), ["b u t i k"]);
        assert_eq!(out.sentences[0].words[0].syllables.len(), 2);
    }

    #[test]
    fn invalid_rules() {
        let ps = Resources::bundled().phoneset;
        for bad in [
            "x: h / _ -> a",
            "x: a / _ -> h",
            "x: a -> V2",
            "x: # / _ -> a",
            "x a -> e",
            "x: a / b -> e",
            "x: a -> e @sloppy",
            "x: a{loud} -> e",
        ] {
            assert!(matches!(parse_rules(bad, &ps), Err(ProsodyError::InvalidRule { .. })), "{bad} accepted");
        }
        assert_eq!(rules(&std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/postlexical.rules")).unwrap()).len(), 2);
    }
}
