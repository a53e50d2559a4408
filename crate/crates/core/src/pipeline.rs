//! The staged text-to-speech pipeline.

use std::fmt;
use std::str::FromStr;

use crate::acoustics::{compute_durations, compute_f0};
use crate::audio::{wav_bytes, Waveform};
use crate::data::Resources;
use crate::doc::{DirectiveKind, InputKind, PhoneSource, Pos, UtteranceDoc};
use crate::format;
use crate::frontend::{normalize, parse_plain, parse_ssml_subset};
use crate::linguistics::{apply_inflection, chunk_phrases, phonemize_word, tag_pos};
use crate::prosody::{
    apply_postlexical, assign_accents, assign_phrase_breaks, assign_tones, detect_sentence_type, Precision,
};
use crate::synth::{render, select_units, unit_targets, CostWeights, RenderOptions, UnitPath};
use crate::voicedb::VoiceInventory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Parse,
    Normalize,
    Tag,
    Phonemize,
    Inflect,
    Prosody,
    Postlexical,
    Durations,
    F0,
    Select,
    Render,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Parse => "parse",
            Stage::Normalize => "normalize",
            Stage::Tag => "tag",
            Stage::Phonemize => "phonemize",
            Stage::Inflect => "inflect",
            Stage::Prosody => "prosody",
            Stage::Postlexical => "postlexical",
            Stage::Durations => "durations",
            Stage::F0 => "f0",
            Stage::Select => "select",
            Stage::Render => "render",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineError {
    pub stage: Stage,
    pub message: String,
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {}: {}", self.stage, self.message)
    }
}

impl std::error::Error for PipelineError {}

fn fail(stage: Stage) -> impl Fn(&dyn fmt::Display) -> PipelineError {
    move |e| PipelineError { stage, message: e.to_string() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputType {
    Tokens,
    Words,
    Phonemes,
    Allophones,
    AcoustParams,
    Audio,
}

impl OutputType {
    pub const ALL: [OutputType; 6] = [
        OutputType::Tokens,
        OutputType::Words,
        OutputType::Phonemes,
        OutputType::Allophones,
        OutputType::AcoustParams,
        OutputType::Audio,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OutputType::Tokens => "TOKENS",
            OutputType::Words => "WORDS",
            OutputType::Phonemes => "PHONEMES",
            OutputType::Allophones => "ALLOPHONES",
            OutputType::AcoustParams => "ACOUSTPARAMS",
            OutputType::Audio => "AUDIO",
        }
    }

    /// The last stage the output needs.
    pub fn stage(self) -> Stage {
        match self {
            OutputType::Tokens => Stage::Normalize,
            OutputType::Words => Stage::Tag,
            OutputType::Phonemes | OutputType::Allophones => Stage::Postlexical,
            OutputType::AcoustParams => Stage::F0,
            OutputType::Audio => Stage::Render,
        }
    }
}

impl FromStr for OutputType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        OutputType::ALL
            .into_iter()
            .find(|o| o.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown output type {s:?}"))
    }
}

impl FromStr for InputKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "TEXT" => Ok(InputKind::Plain),
            "SSML" => Ok(InputKind::Ssml),
            _ => Err(format!("unknown input type {s:?}")),
        }
    }
}

/// A stage output: text for everything but audio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Text(String),
    Audio(Vec<u8>),
}

impl Output {
    pub fn into_bytes(self) -> Vec<u8> {
        match self {
            Output::Text(t) => t.into_bytes(),
            Output::Audio(b) => b,
        }
    }
}

/// Everything a synthesis produces.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub waveform: Waveform,
    pub pho: String,
    pub doc: UtteranceDoc,
    pub path: UnitPath,
}

/// Language resources plus synthesis settings. Stateless between calls.
#[derive(Clone, Debug)]
pub struct Engine {
    pub resources: Resources,
    pub precision: Precision,
    pub weights: CostWeights,
    pub render: RenderOptions,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Resources::bundled())
    }
}

impl Engine {
    pub fn new(resources: Resources) -> Self {
        Engine { resources, precision: Precision::Normal, weights: CostWeights::default(), render: RenderOptions::default() }
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.precision = p;
        self
    }

    /// Runs the text stages up to and including `last` (at most
    /// [`Stage::F0`]).
    pub fn run_to(&self, text: &str, kind: InputKind, last: Stage) -> Result<UtteranceDoc, PipelineError> {
        let r = &self.resources;
        let mut doc = match kind {
            InputKind::Plain => parse_plain(text),
            InputKind::Ssml => parse_ssml_subset(text).map_err(|e| fail(Stage::Parse)(&e))?,
        };
        if last == Stage::Parse {
            return Ok(doc);
        }
        doc = normalize(doc, &r.normalization);
        if last == Stage::Normalize {
            return Ok(doc);
        }
        for s in &mut doc.sentences {
            s.words = tag_pos(s, &r.function_words, &r.lexicon);
            s.chunks = chunk_phrases(&s.words);
        }
        if last == Stage::Tag {
            return Ok(doc);
        }
        self.phonemize(&mut doc);
        if last == Stage::Phonemize {
            return Ok(doc);
        }
        self.inflect(&mut doc);
        if last == Stage::Inflect {
            return Ok(doc);
        }
        self.prosody(&mut doc);
        if last == Stage::Prosody {
            return Ok(doc);
        }
        doc = apply_postlexical(doc, &r.postlexical, self.precision, &r.phoneset);
        if last == Stage::Postlexical {
            return Ok(doc);
        }
        doc = compute_durations(doc, &r.durations, &r.phoneset, self.precision).map_err(|e| fail(Stage::Durations)(&e))?;
        if last == Stage::Durations {
            return Ok(doc);
        }
        Ok(compute_f0(doc, &r.f0, &r.phoneset))
    }

    /// All text stages: the document carries segments with F0 targets.
    pub fn analyze(&self, text: &str, kind: InputKind) -> Result<UtteranceDoc, PipelineError> {
        self.run_to(text, kind, Stage::F0)
    }

    fn phonemize(&self, doc: &mut UtteranceDoc) {
        let r = &self.resources;
        let mut warnings = Vec::new();
        for s in &mut doc.sentences {
            for w in &mut s.words {
                if matches!(w.pos, Pos::Punc | Pos::Other) {
                    continue;
                }
                let result = phonemize_word(&w.text, &r.lexicon, &r.phoneset).and_then(|p| {
                    let source = p.source;
                    p.into_syllables(&r.phoneset).map(|syl| (syl, source))
                });
                match result {
                    Ok((syllables, source)) => {
                        w.syllables = syllables;
                        w.source = Some(source);
                    }
                    Err(e) => warnings.push(format!("word {:?} left unpronounced: {e}", w.text)),
                }
            }
        }
        doc.warnings.extend(warnings);
    }

    fn inflect(&self, doc: &mut UtteranceDoc) {
        let r = &self.resources;
        let mut warnings = Vec::new();
        for s in &mut doc.sentences {
            let chunks = s.chunks.clone();
            for (i, w) in s.words.iter_mut().enumerate() {
                let in_np = chunks.iter().any(|c| c.contains(i));
                match apply_inflection(w.clone(), &r.inflection, in_np, &r.phoneset) {
                    Ok(nw) => *w = nw,
                    Err(e) => warnings.push(format!("word {:?} not inflected: {e}", w.text)),
                }
            }
        }
        doc.warnings.extend(warnings);
    }

    fn prosody(&self, doc: &mut UtteranceDoc) {
        let r = &self.resources;
        let mut warnings = Vec::new();
        for s in &mut doc.sentences {
            let ty = detect_sentence_type(s, &r.w_words);
            s.sentence_type = Some(ty);
            let mut breaks = assign_phrase_breaks(s);
            let (mut accents, warn) = assign_accents(&s.words, &breaks);
            warnings.extend(warn);
            // emphasis markup adds an accent to words it covers
            for (i, w) in s.words.iter().enumerate() {
                let emphasized = s
                    .directive_at(w.token, DirectiveKind::Emphasis)
                    .is_some_and(|d| d.value != "none" && d.value != "reduced");
                if emphasized && w.pos != Pos::Punc && !accents.iter().any(|a| a.word == i) {
                    accents.push(crate::doc::PitchAccent { word: i, tone: None, nuclear: false });
                }
            }
            accents.sort_by_key(|a| a.word);
            let n = accents.len();
            for (k, a) in accents.iter_mut().enumerate() {
                a.nuclear = k + 1 == n;
            }
            assign_tones(ty, &mut accents, &mut breaks, &r.tone_map);
            for w in &mut s.words {
                w.accented = false;
            }
            for a in &accents {
                s.words[a.word].accented = true;
            }
            s.breaks = breaks;
            s.accents = accents;
        }
        doc.warnings.extend(warnings);
    }

    pub fn synthesize(&self, text: &str, kind: InputKind, voice: &VoiceInventory) -> Result<Synthesis, PipelineError> {
        let doc = self.analyze(text, kind)?;
        let segments = format::segment_targets(&doc);
        let path = select_units(&unit_targets(&segments), voice, &self.weights).map_err(|e| fail(Stage::Select)(&e))?;
        let waveform = render(&path, voice, &segments, self.render);
        Ok(Synthesis { pho: crate::acoustics::emit_pho(&segments), waveform, doc, path })
    }

    /// The serialization behind each output type. AUDIO needs a voice.
    pub fn process(
        &self,
        text: &str,
        kind: InputKind,
        output: OutputType,
        voice: Option<&VoiceInventory>,
    ) -> Result<Output, PipelineError> {
        if output == OutputType::Audio {
            let voice = voice.ok_or_else(|| PipelineError { stage: Stage::Select, message: "no voice loaded".into() })?;
            let syn = self.synthesize(text, kind, voice)?;
            return Ok(Output::Audio(wav_bytes(&syn.waveform)));
        }
        let doc = self.run_to(text, kind, output.stage())?;
        Ok(Output::Text(match output {
            OutputType::Tokens => format::tokens(&doc),
            OutputType::Words => format::words(&doc),
            OutputType::Phonemes => format::phonemes(&doc),
            OutputType::Allophones => format::allophones(&doc),
            OutputType::AcoustParams => format::pho(&doc),
            OutputType::Audio => unreachable!(),
        }))
    }
}

/// Plain text through every stage with the bundled resources.
pub fn synthesize_text(text: &str, voice: &VoiceInventory) -> Result<Synthesis, PipelineError> {
    Engine::default().synthesize(text, InputKind::Plain, voice)
}

/// Words whose phones came from letter-to-sound rules.
pub fn lts_words(doc: &UtteranceDoc) -> Vec<&str> {
    doc.sentences
        .iter()
        .flat_map(|s| s.words.iter())
        .filter(|w| w.source == Some(PhoneSource::Lts))
        .map(|w| w.text.as_str())
        .collect()
}
