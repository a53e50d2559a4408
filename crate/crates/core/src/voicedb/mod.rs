//! Speech-unit inventory: corpus selection, recording-session checks,
//! label ingestion, unit segmentation, pitch marking, join features and
//! on-disk persistence.

pub mod corpus;
pub mod features;
pub mod import;
pub mod labels;
pub mod persist;
pub mod pitch;
pub mod segment;
pub mod session;
pub mod synthetic;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use thiserror::Error;

use crate::audio::{AudioError, Waveform, SAMPLE_RATE};

pub use corpus::{greedy_cover, select_corpus, CorpusSentence};
pub use features::{compute_edge_features, FEATURE_ORDER};
pub use import::{build_units, import_session, VoiceBuilder};
pub use labels::{parse_labels, LabelEntry, LabelTrack, TimeUnit};
pub use persist::{load_inventory, save_inventory};
pub use pitch::{compute_pitch_marks, estimate_f0, FrameF0, VOICING_THRESHOLD};
pub use segment::{segment_units, triphone_label, SIL_LABEL};
pub use session::{validate_session, SessionPair};
pub use synthetic::{synthetic_voice, write_synthetic_session, SYNTHETIC_VOICE_NAME};

#[derive(Debug, Error)]
pub enum VoiceError {
    #[error("label line {line}: {reason}")]
    LabelSyntax { line: usize, reason: String },
    #[error("labels not contiguous at line {line}: {reason}")]
    NonContiguous { line: usize, reason: String },
    #[error("label {phone:?} ends at {end_s} s, past the end of the audio ({len_s} s)")]
    OutOfRange { phone: String, end_s: f64, len_s: f64 },
    #[error("session directory {0} lacks wav/ or text/")]
    MissingDirectory(PathBuf),
    #[error("orphan files: wav without text {wav_only:?}, text without wav {text_only:?}")]
    OrphanFiles { wav_only: Vec<String>, text_only: Vec<String> },
    #[error("{path}: {reason}")]
    FormatMismatch { path: PathBuf, reason: String },
    #[error("corrupt inventory: {0}")]
    CorruptInventory(String),
    #[error("no label file for {0}")]
    MissingLabels(String),
    #[error(transparent)]
    Audio(#[from] AudioError),
    #[error("i/o failure on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> VoiceError {
    let path = path.into();
    move |source| VoiceError::Io { path, source }
}

/// A segmented speech unit. Sample positions index the source recording.
#[derive(Clone, Debug, PartialEq)]
pub struct Unit {
    pub id: u32,
    pub phone: String,
    /// `L-P+R`, with `<sil>` at utterance edges and next to pauses.
    pub triphone: String,
    pub source: String,
    pub start: usize,
    pub end: usize,
    pub duration_ms: f64,
    pub mean_f0: Option<f64>,
    pub left_f0: Option<f64>,
    pub right_f0: Option<f64>,
    pub pitch_marks: Vec<usize>,
    pub left_features: Vec<f32>,
    pub right_features: Vec<f32>,
}

impl Unit {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    /// Same recording, and this unit ends where `next` starts.
    pub fn adjoins(&self, next: &Unit) -> bool {
        self.source == next.source && self.end == next.start
    }
}

/// Units plus the recordings they point into, indexed by triphone and
/// phone. Immutable once built.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VoiceInventory {
    pub name: String,
    pub metadata: BTreeMap<String, String>,
    units: Vec<Unit>,
    sources: BTreeMap<String, Waveform>,
    by_triphone: HashMap<String, Vec<u32>>,
    by_phone: HashMap<String, Vec<u32>>,
}

impl VoiceInventory {
    /// Unit ids are reassigned to their positions.
    pub fn new(
        name: impl Into<String>,
        metadata: BTreeMap<String, String>,
        mut units: Vec<Unit>,
        sources: BTreeMap<String, Waveform>,
    ) -> Self {
        let mut by_triphone: HashMap<String, Vec<u32>> = HashMap::new();
        let mut by_phone: HashMap<String, Vec<u32>> = HashMap::new();
        for (i, u) in units.iter_mut().enumerate() {
            u.id = i as u32;
            by_triphone.entry(u.triphone.clone()).or_default().push(u.id);
            by_phone.entry(u.phone.clone()).or_default().push(u.id);
        }
        VoiceInventory { name: name.into(), metadata, units, sources, by_triphone, by_phone }
    }

    pub fn sample_rate(&self) -> u32 {
        SAMPLE_RATE
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    pub fn unit(&self, id: u32) -> &Unit {
        &self.units[id as usize]
    }

    pub fn sources(&self) -> &BTreeMap<String, Waveform> {
        &self.sources
    }

    /// Unit ids with this triphone label, ascending.
    pub fn with_triphone(&self, label: &str) -> &[u32] {
        self.by_triphone.get(label).map_or(&[], Vec::as_slice)
    }

    /// Unit ids of this phone, ascending.
    pub fn with_phone(&self, phone: &str) -> &[u32] {
        self.by_phone.get(phone).map_or(&[], Vec::as_slice)
    }

    pub fn phones(&self) -> impl Iterator<Item = &str> {
        self.by_phone.keys().map(String::as_str)
    }

    /// The unit's waveform slice, or an empty slice when its recording is
    /// not loaded.
    pub fn samples(&self, id: u32) -> &[i16] {
        let u = self.unit(id);
        self.sources.get(&u.source).map_or(&[], |w| &w.samples[u.start..u.end])
    }
}
