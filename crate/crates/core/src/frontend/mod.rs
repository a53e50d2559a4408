//! Text input: plain text and SSML parsing, tokenization and normalization.

pub mod normalize;
pub mod ssml;
pub mod tokenize;

use thiserror::Error;

use crate::doc::{InputKind, Sentence, UtteranceDoc};

pub use normalize::{
    expand_number, normalize, AbbreviationTable, NormalizationTables, NumberError, NumberType,
    NumeralTable,
};
pub use ssml::parse_ssml_subset;
pub use tokenize::tokenize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrontendError {
    #[error("malformed markup: {0}")]
    MalformedMarkup(String),
}

/// Parses plain text into sentences of tokens.
pub fn parse_plain(text: &str) -> UtteranceDoc {
    let (tokens, trailing_ws) = tokenize::tokenize_with_trailing(text);
    let sentences = tokenize::split_sentences(tokens, &[])
        .into_iter()
        .map(Sentence::new)
        .collect();
    UtteranceDoc {
        sentences,
        source_text: text.to_string(),
        input_kind: InputKind::Plain,
        trailing_ws,
        warnings: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::TokenKind;

    #[test]
    fn empty_input() {
        let doc = parse_plain("");
        assert!(doc.sentences.is_empty());
        assert_eq!(doc.reconstruct(), "");
    }

    #[test]
    fn mos_sentence_tokens() {
        let text = "era ndyerera ddala ennyumba ya Yerobowaamu ng'omuntu bw'ayera obusa n'okuggwaawo ne buggwaawo bwonna";
        let doc = parse_plain(text);
        assert_eq!(doc.sentences.len(), 1);
        let toks = &doc.sentences[0].tokens;
        assert_eq!(toks.len(), 13);
        assert!(toks.iter().all(|t| t.kind == TokenKind::Word));
        assert_eq!(doc.reconstruct(), text);
    }

    #[test]
    fn two_sentences() {
        let doc = parse_plain("Ogenda wa? Genda!");
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(doc.reconstruct(), "Ogenda wa? Genda!");
    }
}
