//! 16 kHz, 16-bit mono PCM waveforms and RIFF/WAVE I/O.

use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

pub const SAMPLE_RATE: u32 = 16_000;
pub const HEADER_LEN: usize = 44;

#[derive(Debug, Error)]
pub enum AudioError {
    #[error("unsupported wav: {0}")]
    UnsupportedWav(String),
    #[error("i/o failure: {0}")]
    IoFailure(#[from] std::io::Error),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Waveform {
    pub samples: Vec<i16>,
}

impl Waveform {
    pub fn new(samples: Vec<i16>) -> Self {
        Waveform { samples }
    }

    pub fn sample_rate(&self) -> u32 {
        SAMPLE_RATE
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / SAMPLE_RATE as f64
    }

    /// Rounds and saturates floating-point samples.
    pub fn from_f64(samples: &[f64]) -> Self {
        Waveform { samples: samples.iter().map(|&s| s.round().clamp(i16::MIN as f64, i16::MAX as f64) as i16).collect() }
    }
}

/// The format fields of a `fmt ` chunk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WavSpec {
    pub format: u16,
    pub channels: u16,
    pub sample_rate: u32,
    pub bits: u16,
}

impl WavSpec {
    pub fn check(&self) -> Result<(), String> {
        if self.format != 1 {
            return Err(format!("format {} is not PCM", self.format));
        }
        if self.channels != 1 {
            return Err(format!("{} channels, expected mono", self.channels));
        }
        if self.sample_rate != SAMPLE_RATE {
            return Err(format!("{} Hz, expected {SAMPLE_RATE} Hz", self.sample_rate));
        }
        if self.bits != 16 {
            return Err(format!("{} bits per sample, expected 16", self.bits));
        }
        Ok(())
    }
}

pub fn wav_bytes(w: &Waveform) -> Vec<u8> {
    let data_len = (w.samples.len() * 2) as u32;
    let mut out = Vec::with_capacity(HEADER_LEN + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&SAMPLE_RATE.to_le_bytes());
    out.extend_from_slice(&(SAMPLE_RATE * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for s in &w.samples {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out
}

pub fn write_wav(w: &Waveform, path: &Path) -> Result<(), AudioError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&wav_bytes(w))?;
    Ok(())
}

fn u16_at(b: &[u8], i: usize) -> u16 {
    u16::from_le_bytes([b[i], b[i + 1]])
}

fn u32_at(b: &[u8], i: usize) -> u32 {
    u32::from_le_bytes([b[i], b[i + 1], b[i + 2], b[i + 3]])
}

/// Walks the RIFF chunks, returning the format and the data chunk bytes.
/// Unknown chunks are skipped.
pub fn parse_wav_chunks(bytes: &[u8]) -> Result<(WavSpec, &[u8]), AudioError> {
    let bad = |m: &str| AudioError::UnsupportedWav(m.to_string());
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(bad("not a RIFF/WAVE file"));
    }
    let mut spec = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let len = u32_at(bytes, pos + 4) as usize;
        let body_start = pos + 8;
        let body_end = body_start.checked_add(len).filter(|&e| e <= bytes.len());
        match id {
            b"fmt " => {
                let end = body_end.ok_or_else(|| bad("truncated fmt chunk"))?;
                if len < 16 {
                    return Err(bad("short fmt chunk"));
                }
                let b = &bytes[body_start..end];
                spec = Some(WavSpec { format: u16_at(b, 0), channels: u16_at(b, 2), sample_rate: u32_at(b, 4), bits: u16_at(b, 14) });
            }
            b"data" => {
                let spec = spec.ok_or_else(|| bad("data chunk before fmt chunk"))?;
                let end = body_end.unwrap_or(bytes.len());
                return Ok((spec, &bytes[body_start..end]));
            }
            _ => {}
        }
        pos = body_start + len + (len & 1);
    }
    Err(bad("no data chunk"))
}

pub fn wav_from_bytes(bytes: &[u8]) -> Result<Waveform, AudioError> {
    let (spec, data) = parse_wav_chunks(bytes)?;
    spec.check().map_err(AudioError::UnsupportedWav)?;
    if data.len() % 2 != 0 {
        return Err(AudioError::UnsupportedWav("odd data length".into()));
    }
    Ok(Waveform { samples: data.chunks_exact(2).map(|c| i16::from_le_bytes([c[0], c[1]])).collect() })
}

pub fn read_wav(path: &Path) -> Result<Waveform, AudioError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    wav_from_bytes(&bytes)
}

/// Format of a wav file without decoding its samples.
pub fn read_wav_spec(path: &Path) -> Result<WavSpec, AudioError> {
    let bytes = std::fs::read(path)?;
    parse_wav_chunks(&bytes).map(|(s, _)| s)
}
