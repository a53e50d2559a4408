//! Luganda text-to-speech engine and voice-building toolkit.
//!
//! Text flows through a staged pipeline that progressively annotates an
//! [`UtteranceDoc`]:
//!
//! 1. [`frontend`] parses plain text or an SSML subset, tokenizes and
//!    normalizes numbers and abbreviations.
//! 2. [`linguistics`] tags parts of speech, chunks noun phrases and turns
//!    words into syllabified SAMPA phones (lexicon first, then letter-to-sound).
//! 3. [`prosody`] decides sentence type, phrase breaks, pitch accents and
//!    tones, then runs postlexical rewrite rules.
//! 4. [`acoustics`] turns the symbolic utterance into segment durations and
//!    F0 targets, serialized as MBROLA `.pho`.
//! 5. [`synth`] picks units from a [`voicedb::VoiceInventory`] with a Viterbi
//!    search and concatenates their waveforms.
//!
//! [`pipeline::Engine`] wires the stages together. [`eval`] scores Modified
//! Rhyme Test and Mean Opinion Score listening tests.

pub mod acoustics;
pub mod audio;
pub mod data;
pub mod doc;
pub mod eval;
pub mod format;
pub mod frontend;
pub mod linguistics;
pub mod pipeline;
pub mod prosody;
pub mod synth;
pub mod voicedb;

mod tsv;

pub use doc::{InputKind, UtteranceDoc};
pub use pipeline::{Engine, OutputType, PipelineError, Stage};
