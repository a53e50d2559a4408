use std::collections::HashMap;

use super::{Lexicon, LinguisticsError};
use crate::doc::{ChunkSpan, InflectionFlag, Pos, Sentence, TokenKind, Word};
use crate::tsv;

/// Closed-class word list: word → part of speech.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FunctionWords {
    words: HashMap<String, Pos>,
}

impl FunctionWords {
    pub fn parse(text: &str) -> Result<Self, LinguisticsError> {
        let mut words = HashMap::new();
        for row in tsv::rows(text) {
            let pos = match row.fields.get(1) {
                Some(p) if !p.is_empty() => p.parse().map_err(|reason| LinguisticsError::Data {
                    file: "function_words",
                    line: row.line,
                    reason,
                })?,
                _ => Pos::Func,
            };
            words.insert(row.fields[0].to_lowercase(), pos);
        }
        Ok(FunctionWords { words })
    }

    pub fn get(&self, word: &str) -> Option<Pos> {
        self.words.get(word).copied()
    }
}

fn content_pos(text: &str, func_words: &FunctionWords, lexicon: &Lexicon) -> Pos {
    func_words
        .get(text)
        .or_else(|| lexicon.lookup(text).and_then(|e| e.pos_hint))
        .unwrap_or(Pos::Noun)
}

/// Creates the sentence's words with parts of speech. Expanded tokens yield
/// one word per expansion word.
///
/// Priority: punctuation and numbers are forced (PUNC, NUM), then the
/// function-word list, then the lexicon hint, then NOUN. The last word of an
/// ordinal is ADJ after a nominal word and ADV otherwise.
pub fn tag_pos(sentence: &Sentence, func_words: &FunctionWords, lexicon: &Lexicon) -> Vec<Word> {
    let mut words: Vec<Word> = Vec::new();
    for (ti, tok) in sentence.tokens.iter().enumerate() {
        match tok.kind {
            TokenKind::Punct => words.push(Word::new(ti, tok.surface.clone(), Pos::Punc)),
            TokenKind::Symbol => words.push(Word::new(ti, tok.surface.clone(), Pos::Other)),
            TokenKind::Number => {
                let texts = tok.expansion.clone().unwrap_or_else(|| vec![tok.surface.clone()]);
                let last = texts.len() - 1;
                let nominal_before = words
                    .iter()
                    .rev()
                    .find(|w| w.pos != Pos::Punc)
                    .is_some_and(|w| matches!(w.pos, Pos::Noun | Pos::Adj | Pos::Num));
                for (k, text) in texts.into_iter().enumerate() {
                    let mut w = Word::new(ti, text.to_lowercase(), Pos::Num);
                    if k == last && tok.inflection.is_some() {
                        w.inflection = tok.inflection;
                        if tok.inflection == Some(InflectionFlag::Ordinal) {
                            w.pos = if nominal_before { Pos::Adj } else { Pos::Adv };
                        }
                    }
                    words.push(w);
                }
            }
            TokenKind::Word | TokenKind::Abbrev => {
                let texts = tok.expansion.clone().unwrap_or_else(|| vec![tok.surface.clone()]);
                let last = texts.len() - 1;
                for (k, text) in texts.into_iter().enumerate() {
                    let text = text.to_lowercase();
                    let mut w = Word::new(ti, text.clone(), content_pos(&text, func_words, lexicon));
                    if k == last {
                        w.inflection = tok.inflection;
                    }
                    words.push(w);
                }
            }
        }
    }
    words
}

/// Maximal runs of NOUN, ADJ and NUM words become noun-phrase spans.
pub fn chunk_phrases(words: &[Word]) -> Vec<ChunkSpan> {
    let mut spans = Vec::new();
    let mut start = None;
    for (i, w) in words.iter().enumerate() {
        let nominal = matches!(w.pos, Pos::Noun | Pos::Adj | Pos::Num);
        match (nominal, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                spans.push(ChunkSpan { start: s, end: i - 1 });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        spans.push(ChunkSpan { start: s, end: words.len() - 1 });
    }
    spans
}
