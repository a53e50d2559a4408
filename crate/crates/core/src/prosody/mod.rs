//! Sentence types, phrase breaks, pitch accents, tones and postlexical
//! rewrite rules.

pub mod postlexical;
pub mod tones;

use std::collections::HashSet;

use thiserror::Error;

use crate::doc::{
    BreakLevel, DirectiveKind, PhraseBreak, PitchAccent, Pos, Sentence, SentenceType, TokenKind, Word,
};
use crate::tsv;

pub use postlexical::{apply_postlexical, parse_rules, Precision, RewriteRule};
pub use tones::{assign_tones, ToneMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProsodyError {
    #[error("invalid rule at line {line}: {reason}")]
    InvalidRule { line: usize, reason: String },
    #[error("tone map line {line}: {reason}")]
    ToneMap { line: usize, reason: String },
}

/// Interrogative words that make a question a W-question.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WWords(HashSet<String>);

impl WWords {
    pub fn parse(text: &str) -> Self {
        WWords(tsv::rows(text).map(|r| r.fields[0].to_lowercase()).collect())
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }
}

const CLOSERS: [&str; 6] = ["\"", ")", "]", "\u{201D}", "\u{00BB}", "'"];

/// Classifies by final punctuation (ignoring closing quotes and brackets)
/// and, for questions, by the presence of an interrogative word.
pub fn detect_sentence_type(sentence: &Sentence, w_words: &WWords) -> SentenceType {
    let last = sentence
        .tokens
        .iter()
        .rev()
        .find(|t| !(t.kind == TokenKind::Punct && CLOSERS.contains(&t.surface.as_str())));
    match last.map(|t| (t.kind, t.surface.as_str())) {
        Some((TokenKind::Punct, "!")) => SentenceType::Exclamative,
        Some((TokenKind::Punct, "?")) => {
            let has_w = sentence.tokens.iter().any(|t| {
                let texts = t.expansion.clone().unwrap_or_else(|| vec![t.surface.clone()]);
                texts.iter().any(|w| w_words.contains(&w.to_lowercase()))
            });
            if has_w {
                SentenceType::InterrogativeW
            } else {
                SentenceType::InterrogativeYn
            }
        }
        _ => SentenceType::Declarative,
    }
}

const PHRASE_PUNCT: [&str; 3] = [",", ";", ":"];

fn last_lexical_at_or_before(words: &[Word], idx: usize) -> Option<usize> {
    (0..=idx.min(words.len().checked_sub(1)?)).rev().find(|&i| words[i].pos != Pos::Punc)
}

/// Places breaks after words: an intermediate break before `,` `;` `:` and at
/// SSML `break` anchors (strength `none` excepted), and exactly one
/// intonation break after the last non-punctuation word.
pub fn assign_phrase_breaks(sentence: &Sentence) -> Vec<PhraseBreak> {
    let words = &sentence.words;
    if words.is_empty() {
        return Vec::new();
    }
    let final_pos = last_lexical_at_or_before(words, words.len() - 1).unwrap_or(words.len() - 1);
    let mut positions: Vec<usize> = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if w.pos == Pos::Punc && PHRASE_PUNCT.contains(&w.text.as_str()) && i > 0 {
            if let Some(p) = last_lexical_at_or_before(words, i - 1) {
                positions.push(p);
            }
        }
    }
    for d in &sentence.directives {
        if d.kind != DirectiveKind::Break || d.value == "none" {
            continue;
        }
        if let Some(last_word) = words.iter().rposition(|w| w.token <= d.anchor.1) {
            if let Some(p) = last_lexical_at_or_before(words, last_word) {
                positions.push(p);
            }
        }
    }
    positions.sort_unstable();
    positions.dedup();
    let mut breaks: Vec<PhraseBreak> = positions
        .into_iter()
        .filter(|&p| p < final_pos)
        .map(|after_word| PhraseBreak { after_word, level: BreakLevel::Intermediate, boundary_tone: None })
        .collect();
    breaks.push(PhraseBreak { after_word: final_pos, level: BreakLevel::Intonation, boundary_tone: None });
    breaks
}

/// Word index ranges (inclusive) of the phrases delimited by `breaks`.
pub fn phrase_spans(breaks: &[PhraseBreak]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = 0;
    for b in breaks {
        spans.push((start, b.after_word));
        start = b.after_word + 1;
    }
    spans
}

/// Accents every NOUN and ADJ; a phrase left without an accent gets one on
/// its highest-ranked word (FULL_VERB > MODAL_VERB > ADV, leftmost on ties).
/// The last accent is nuclear. Returns warnings for phrases with no
/// eligible word.
pub fn assign_accents(words: &[Word], breaks: &[PhraseBreak]) -> (Vec<PitchAccent>, Vec<String>) {
    let mut accented: Vec<bool> = words.iter().map(|w| matches!(w.pos, Pos::Noun | Pos::Adj)).collect();
    let mut warnings = Vec::new();
    for (start, end) in phrase_spans(breaks) {
        if start > end || (start..=end).any(|i| accented[i]) {
            continue;
        }
        let mut best: Option<usize> = None;
        for i in start..=end {
            let rank = words[i].pos.accent_rank();
            if rank > 0 && best.is_none_or(|b| rank > words[b].pos.accent_rank()) {
                best = Some(i);
            }
        }
        match best {
            Some(i) => accented[i] = true,
            None => warnings.push(format!("phrase of words {start}..={end} has no accentable word")),
        }
    }
    let mut accents: Vec<PitchAccent> = accented
        .iter()
        .enumerate()
        .filter(|(_, &a)| a)
        .map(|(word, _)| PitchAccent { word, tone: None, nuclear: false })
        .collect();
    if let Some(last) = accents.last_mut() {
        last.nuclear = true;
    }
    (accents, warnings)
}
