//! The utterance document: sentences → tokens → words → syllables → phones,
//! annotated stage by stage as it moves through the pipeline.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InputKind {
    Plain,
    Ssml,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UtteranceDoc {
    pub sentences: Vec<Sentence>,
    pub source_text: String,
    pub input_kind: InputKind,
    /// Whitespace after the last token. Tokens' `leading_ws + surface`
    /// followed by this reproduces `source_text` for plain input.
    pub trailing_ws: String,
    pub warnings: Vec<String>,
}

impl UtteranceDoc {
    pub fn empty(kind: InputKind) -> Self {
        UtteranceDoc {
            sentences: Vec::new(),
            source_text: String::new(),
            input_kind: kind,
            trailing_ws: String::new(),
            warnings: Vec::new(),
        }
    }

    /// Rebuilds the text from token whitespace and surfaces.
    pub fn reconstruct(&self) -> String {
        let mut out = String::with_capacity(self.source_text.len());
        for s in &self.sentences {
            for t in &s.tokens {
                out.push_str(&t.leading_ws);
                out.push_str(&t.surface);
            }
        }
        out.push_str(&self.trailing_ws);
        out
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SentenceType {
    Declarative,
    InterrogativeW,
    InterrogativeYn,
    Exclamative,
}

impl SentenceType {
    pub const ALL: [SentenceType; 4] = [
        SentenceType::Declarative,
        SentenceType::InterrogativeW,
        SentenceType::InterrogativeYn,
        SentenceType::Exclamative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SentenceType::Declarative => "DECLARATIVE",
            SentenceType::InterrogativeW => "INTERROGATIVE_W",
            SentenceType::InterrogativeYn => "INTERROGATIVE_YN",
            SentenceType::Exclamative => "EXCLAMATIVE",
        }
    }
}

impl FromStr for SentenceType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SentenceType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown sentence type {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub sentence_type: Option<SentenceType>,
    pub directives: Vec<MarkupDirective>,
    pub words: Vec<Word>,
    pub chunks: Vec<ChunkSpan>,
    pub breaks: Vec<PhraseBreak>,
    pub accents: Vec<PitchAccent>,
    pub segments: Vec<Segment>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence {
            tokens,
            sentence_type: None,
            directives: Vec::new(),
            words: Vec::new(),
            chunks: Vec::new(),
            breaks: Vec::new(),
            accents: Vec::new(),
            segments: Vec::new(),
        }
    }

    /// Directive of the given kind whose anchor covers token `idx`.
    pub fn directive_at(&self, idx: usize, kind: DirectiveKind) -> Option<&MarkupDirective> {
        self.directives
            .iter()
            .find(|d| d.kind == kind && d.anchor.0 <= idx && idx <= d.anchor.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TokenKind {
    Word,
    Number,
    Abbrev,
    Punct,
    Symbol,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::Word => "WORD",
            TokenKind::Number => "NUMBER",
            TokenKind::Abbrev => "ABBREV",
            TokenKind::Punct => "PUNCT",
            TokenKind::Symbol => "SYMBOL",
        }
    }
}

/// Why normalization left a token as it was.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormNote {
    /// No table entry, or the number is out of table range.
    Unexpanded,
    /// Currency symbol; no reading convention is defined.
    Currency,
}

/// Marks a word that needs an inflection ending appended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InflectionFlag {
    Ordinal,
    Abbreviation,
}

impl InflectionFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            InflectionFlag::Ordinal => "ordinal",
            InflectionFlag::Abbreviation => "abbrev",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Token {
    pub surface: String,
    pub leading_ws: String,
    pub kind: TokenKind,
    pub expansion: Option<Vec<String>>,
    /// Byte offsets `[start, end)` into the document's source text.
    pub span: (usize, usize),
    pub note: Option<NormNote>,
    pub inflection: Option<InflectionFlag>,
}

impl Token {
    pub fn new(surface: &str, leading_ws: &str, kind: TokenKind, span: (usize, usize)) -> Self {
        Token {
            surface: surface.to_string(),
            leading_ws: leading_ws.to_string(),
            kind,
            expansion: None,
            span,
            note: None,
            inflection: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DirectiveKind {
    Break,
    SayAs,
    Emphasis,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarkupDirective {
    pub kind: DirectiveKind,
    pub value: String,
    /// Inclusive token index range within the owning sentence.
    pub anchor: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pos {
    Noun,
    Adj,
    FullVerb,
    ModalVerb,
    Adv,
    Func,
    Num,
    Punc,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 9] = [
        Pos::Noun,
        Pos::Adj,
        Pos::FullVerb,
        Pos::ModalVerb,
        Pos::Adv,
        Pos::Func,
        Pos::Num,
        Pos::Punc,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Adj => "ADJ",
            Pos::FullVerb => "FULL_VERB",
            Pos::ModalVerb => "MODAL_VERB",
            Pos::Adv => "ADV",
            Pos::Func => "FUNC",
            Pos::Num => "NUM",
            Pos::Punc => "PUNC",
            Pos::Other => "OTHER",
        }
    }

    /// Rank used when an accentless phrase needs an accent; 0 = not eligible.
    pub fn accent_rank(self) -> u8 {
        match self {
            Pos::FullVerb => 3,
            Pos::ModalVerb => 2,
            Pos::Adv => 1,
            _ => 0,
        }
    }
}

impl FromStr for Pos {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown part of speech {s:?}"))
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhoneSource {
    Lexicon,
    Lts,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Syllable {
    pub phones: Vec<String>,
    pub stressed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Word {
    /// Index of the originating token within the sentence.
    pub token: usize,
    pub text: String,
    pub pos: Pos,
    pub syllables: Vec<Syllable>,
    pub accented: bool,
    pub source: Option<PhoneSource>,
    pub inflection: Option<InflectionFlag>,
    /// Set once an inflection ending has been appended.
    pub inflected: bool,
}

impl Word {
    pub fn new(token: usize, text: impl Into<String>, pos: Pos) -> Self {
        Word {
            token,
            text: text.into(),
            pos,
            syllables: Vec::new(),
            accented: false,
            source: None,
            inflection: None,
            inflected: false,
        }
    }

    pub fn phones(&self) -> Vec<String> {
        self.syllables.iter().flat_map(|s| s.phones.iter().cloned()).collect()
    }

    pub fn has_phones(&self) -> bool {
        self.syllables.iter().any(|s| !s.phones.is_empty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChunkSpan {
    /// Inclusive word indices.
    pub start: usize,
    pub end: usize,
}

impl ChunkSpan {
    pub fn contains(&self, idx: usize) -> bool {
        self.start <= idx && idx <= self.end
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BreakLevel {
    Intermediate,
    Intonation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhraseBreak {
    /// The break follows this word index.
    pub after_word: usize,
    pub level: BreakLevel,
    pub boundary_tone: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PitchAccent {
    pub word: usize,
    pub tone: Option<String>,
    pub nuclear: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct F0Target {
    pub percent: u8,
    pub hz: f64,
}

/// One `.pho` row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SegmentTarget {
    pub phone: String,
    pub duration_ms: u32,
    pub f0_targets: Vec<F0Target>,
}

impl SegmentTarget {
    pub fn new(phone: impl Into<String>, duration_ms: u32) -> Self {
        SegmentTarget {
            phone: phone.into(),
            duration_ms,
            f0_targets: Vec::new(),
        }
    }
}

/// Where a segment came from in the symbolic utterance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SegmentOrigin {
    Phone {
        word: usize,
        syllable: usize,
        index: usize,
    },
    Pause(BreakLevel),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub target: SegmentTarget,
    pub origin: SegmentOrigin,
}

pub const SILENCE: &str = "_";
