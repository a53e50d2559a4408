//! Plain-text serializations of pipeline stages, shared by the CLI and
//! the HTTP service.
//!
//! * TOKENS: `surface<TAB>KIND[<TAB>expansion]` per token.
//! * WORDS: `word<TAB>POS` per word.
//! * PHONEMES: one line per sentence, phones separated by spaces and
//!   words by ` | `.
//! * ALLOPHONES: one line per sentence. Syllables are joined by ` . `
//!   with `'` before the stressed one; an accented word is followed by
//!   its tone in brackets; words are separated by ` # `, or by ` | T `
//!   and ` || T ` at intermediate and intonation breaks with tone `T`.
//!
//! Sentences are separated by a blank line in TOKENS and WORDS. No
//! output ends in a newline.

use std::fmt::Write;

use crate::doc::{BreakLevel, Sentence, UtteranceDoc};

pub fn tokens(doc: &UtteranceDoc) -> String {
    let blocks: Vec<String> = doc
        .sentences
        .iter()
        .map(|s| {
            s.tokens
                .iter()
                .map(|t| match &t.expansion {
                    Some(e) => format!("{}\t{}\t{}", t.surface, t.kind.as_str(), e.join(" ")),
                    None => format!("{}\t{}", t.surface, t.kind.as_str()),
                })
                .collect::<Vec<_>>()
                .join("\n")
        })
        .collect();
    blocks.join("\n\n")
}

pub fn words(doc: &UtteranceDoc) -> String {
    let blocks: Vec<String> = doc
        .sentences
        .iter()
        .map(|s| s.words.iter().map(|w| format!("{}\t{}", w.text, w.pos.as_str())).collect::<Vec<_>>().join("\n"))
        .collect();
    blocks.join("\n\n")
}

pub fn phonemes(doc: &UtteranceDoc) -> String {
    let lines: Vec<String> = doc
        .sentences
        .iter()
        .map(|s| {
            s.words
                .iter()
                .filter(|w| w.has_phones())
                .map(|w| w.phones().join(" "))
                .collect::<Vec<_>>()
                .join(" | ")
        })
        .collect();
    lines.join("\n")
}

fn allophone_line(s: &Sentence) -> String {
    let mut out = String::new();
    let lexical: Vec<usize> = (0..s.words.len()).filter(|&i| s.words[i].has_phones()).collect();
    for (k, &wi) in lexical.iter().enumerate() {
        let w = &s.words[wi];
        let syls: Vec<String> = w
            .syllables
            .iter()
            .filter(|syl| !syl.phones.is_empty())
            .map(|syl| {
                let body = syl.phones.join(" ");
                if syl.stressed {
                    format!("'{body}")
                } else {
                    body
                }
            })
            .collect();
        out.push_str(&syls.join(" . "));
        if let Some(a) = s.accents.iter().find(|a| a.word == wi) {
            write!(out, " [{}]", a.tone.as_deref().unwrap_or("*")).unwrap();
        }
        let next = lexical.get(k + 1).copied();
        let brk = s
            .breaks
            .iter()
            .filter(|b| b.after_word >= wi && next.is_none_or(|n| b.after_word < n))
            .max_by_key(|b| b.level);
        match brk {
            Some(b) => {
                let bar = if b.level == BreakLevel::Intonation { "||" } else { "|" };
                write!(out, " {bar} {}", b.boundary_tone.as_deref().unwrap_or("-")).unwrap();
                if next.is_some() {
                    out.push(' ');
                }
            }
            None if next.is_some() => out.push_str(" # "),
            None => {}
        }
    }
    out
}

pub fn allophones(doc: &UtteranceDoc) -> String {
    doc.sentences.iter().map(allophone_line).collect::<Vec<_>>().join("\n")
}

/// Every sentence's segments, in order.
pub fn segment_targets(doc: &UtteranceDoc) -> Vec<crate::doc::SegmentTarget> {
    doc.sentences.iter().flat_map(|s| s.segments.iter().map(|g| g.target.clone())).collect()
}

pub fn pho(doc: &UtteranceDoc) -> String {
    crate::acoustics::emit_pho(&segment_targets(doc))
}
