use crate::doc::{Token, TokenKind};

const APOSTROPHES: [char; 3] = ['\'', '\u{2019}', '\u{02BC}'];
const PUNCTUATION: &[char] = &[
    '.', ',', ';', ':', '!', '?', '"', '(', ')', '[', ']', '-', '\'', '\u{2019}', '\u{02BC}',
    '\u{201C}', '\u{201D}', '\u{00AB}', '\u{00BB}', '\u{2026}', '\u{2013}', '\u{2014}',
];
const TERMINATORS: [&str; 3] = [".", "?", "!"];

/// Letters of the Luganda alphabet (ASCII letters plus the velar nasal).
pub fn is_letter(c: char) -> bool {
    c.is_ascii_alphabetic() || c == 'ŋ' || c == 'Ŋ'
}

pub fn is_apostrophe(c: char) -> bool {
    APOSTROPHES.contains(&c)
}

fn is_punct(c: char) -> bool {
    PUNCTUATION.contains(&c)
}

/// Splits text into tokens. Every character ends up either in some token's
/// surface or in a token's leading whitespace; whitespace after the last
/// token is returned separately.
///
/// Word-internal apostrophes and hyphens (letter, mark, letter) stay inside
/// the word. A dot is attached to the preceding word, making it an
/// abbreviation, when it sits between letters (`e.g.`) or is followed by
/// whitespace and a lowercase letter or digit.
pub fn tokenize_with_trailing(text: &str) -> (Vec<Token>, String) {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let byte_at = |i: usize| if i < n { chars[i].0 } else { text.len() };
    let ch = |i: usize| if i < n { Some(chars[i].1) } else { None };

    let mut tokens = Vec::new();
    let mut ws_start = 0usize;
    let mut i = 0usize;
    while i < n {
        let c = chars[i].1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind;
        if is_letter(c) {
            let mut j = scan_word(&chars, i);
            let mut dotted = false;
            while ch(j) == Some('.') && ch(j + 1).is_some_and(is_letter) {
                j = scan_word(&chars, j + 1);
                dotted = true;
            }
            if dotted {
                if ch(j) == Some('.') {
                    j += 1;
                }
                kind = TokenKind::Abbrev;
            } else if ch(j) == Some('.') && dot_is_internal(&chars, j) {
                j += 1;
                kind = TokenKind::Abbrev;
            } else if is_acronym(&chars[i..j]) {
                kind = TokenKind::Abbrev;
            } else {
                kind = TokenKind::Word;
            }
            i = j;
        } else if c.is_ascii_digit() {
            while ch(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            kind = TokenKind::Number;
        } else if is_punct(c) {
            i += 1;
            kind = TokenKind::Punct;
        } else {
            i += 1;
            kind = TokenKind::Symbol;
        }
        let (b0, b1) = (byte_at(start), byte_at(i));
        tokens.push(Token::new(&text[b0..b1], &text[byte_at(ws_start)..b0], kind, (b0, b1)));
        ws_start = i;
    }
    let trailing = text[byte_at(ws_start)..].to_string();
    (tokens, trailing)
}

/// Tokenizes one sentence's text. Trailing whitespace is dropped.
pub fn tokenize(sentence_text: &str) -> Vec<Token> {
    tokenize_with_trailing(sentence_text).0
}

fn scan_word(chars: &[(usize, char)], mut i: usize) -> usize {
    let n = chars.len();
    while i < n {
        let c = chars[i].1;
        let joiner = (is_apostrophe(c) || c == '-')
            && i > 0
            && is_letter(chars[i - 1].1)
            && i + 1 < n
            && is_letter(chars[i + 1].1);
        if !(is_letter(c) || joiner) {
            break;
        }
        i += 1;
    }
    i
}

/// A word-final dot followed by whitespace and then a lowercase letter or a
/// digit belongs to an abbreviation rather than ending the sentence.
fn dot_is_internal(chars: &[(usize, char)], dot: usize) -> bool {
    let mut k = dot + 1;
    if k >= chars.len() || !chars[k].1.is_whitespace() {
        return false;
    }
    while k < chars.len() && chars[k].1.is_whitespace() {
        k += 1;
    }
    k < chars.len() && continues_sentence(chars[k].1)
}

fn continues_sentence(c: char) -> bool {
    c.is_lowercase() || c.is_ascii_digit()
}

fn is_acronym(chars: &[(usize, char)]) -> bool {
    chars.len() >= 2 && chars.iter().all(|&(_, c)| c.is_uppercase())
}

/// Whether token `idx` ends a sentence: it is `.`, `?` or `!` and is followed
/// either by nothing or by whitespace and a token that does not start with a
/// lowercase letter or digit.
pub fn ends_sentence(tokens: &[Token], idx: usize) -> bool {
    let t = &tokens[idx];
    if t.kind != TokenKind::Punct || !TERMINATORS.contains(&t.surface.as_str()) {
        return false;
    }
    match tokens.get(idx + 1) {
        None => true,
        Some(next) => {
            !next.leading_ws.is_empty()
                && !next.surface.chars().next().is_some_and(continues_sentence)
        }
    }
}

/// Groups tokens into sentences. `forced` lists byte offsets where a new
/// sentence must start regardless of punctuation.
pub fn split_sentences(tokens: Vec<Token>, forced: &[usize]) -> Vec<Vec<Token>> {
    let ends: Vec<bool> = (0..tokens.len()).map(|i| ends_sentence(&tokens, i)).collect();
    let mut sentences = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    for (tok, end) in tokens.into_iter().zip(ends) {
        if !current.is_empty() {
            let prev_end = current.last().map(|t: &Token| t.span.1).unwrap_or(0);
            if forced.iter().any(|&f| prev_end <= f && f <= tok.span.0) {
                sentences.push(std::mem::take(&mut current));
            }
        }
        current.push(tok);
        if end {
            sentences.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    sentences
}
