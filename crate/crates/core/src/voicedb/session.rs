use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::{io_err, VoiceError};
use crate::audio::read_wav_spec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionPair {
    pub name: String,
    pub wav: PathBuf,
    pub text: PathBuf,
}

fn by_stem(dir: &Path, ext: &str) -> Result<BTreeMap<String, PathBuf>, VoiceError> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.extension().and_then(|e| e.to_str()).is_some_and(|e| e.eq_ignore_ascii_case(ext)) {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                out.insert(stem.to_string(), path.clone());
            }
        }
    }
    Ok(out)
}

/// Pairs `wav/<name>.wav` with `text/<name>.txt`, sorted by name. Every wav
/// must be 16 kHz, 16-bit mono PCM.
pub fn validate_session(dir: &Path) -> Result<Vec<SessionPair>, VoiceError> {
    let (wav_dir, text_dir) = (dir.join("wav"), dir.join("text"));
    if !wav_dir.is_dir() || !text_dir.is_dir() {
        return Err(VoiceError::MissingDirectory(dir.to_path_buf()));
    }
    let wavs = by_stem(&wav_dir, "wav")?;
    let texts = by_stem(&text_dir, "txt")?;
    let wav_only: Vec<String> = wavs.keys().filter(|k| !texts.contains_key(*k)).cloned().collect();
    let text_only: Vec<String> = texts.keys().filter(|k| !wavs.contains_key(*k)).cloned().collect();
    if !wav_only.is_empty() || !text_only.is_empty() {
        return Err(VoiceError::OrphanFiles { wav_only, text_only });
    }
    let mut pairs = Vec::new();
    for (name, wav) in wavs {
        let spec = read_wav_spec(&wav).map_err(|e| VoiceError::FormatMismatch { path: wav.clone(), reason: e.to_string() })?;
        spec.check().map_err(|reason| VoiceError::FormatMismatch { path: wav.clone(), reason })?;
        let text = texts[&name].clone();
        pairs.push(SessionPair { name, wav, text });
    }
    Ok(pairs)
}
