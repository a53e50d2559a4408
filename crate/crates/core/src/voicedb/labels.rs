use std::str::FromStr;

use super::VoiceError;
use crate::doc::SILENCE;
use crate::linguistics::PhoneSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeUnit {
    Seconds,
    /// HTK label units of 100 ns.
    Htk100ns,
}

impl FromStr for TimeUnit {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "SECONDS" | "S" => Ok(TimeUnit::Seconds),
            "HTK_100NS" | "HTK" => Ok(TimeUnit::Htk100ns),
            _ => Err(format!("unknown time unit {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelEntry {
    pub start_s: f64,
    pub end_s: f64,
    pub phone: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LabelTrack {
    pub entries: Vec<LabelEntry>,
}

const TOLERANCE_S: f64 = 1e-6;
const SILENCE_ALIASES: [&str; 4] = ["_", "sil", "pau", "<sil>"];

/// Parses `start end phone` lines. Silence spellings `sil`, `pau` and
/// `<sil>` become `_`. Each entry must start where the previous one ended.
pub fn parse_labels(text: &str, unit: TimeUnit, phoneset: &PhoneSet) -> Result<LabelTrack, VoiceError> {
    let scale = match unit {
        TimeUnit::Seconds => 1.0,
        TimeUnit::Htk100ns => 1e-7,
    };
    let mut entries: Vec<LabelEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |reason: String| VoiceError::LabelSyntax { line: i + 1, reason };
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(syntax("expected 'start end phone'".into()));
        }
        let time = |s: &str| -> Result<f64, VoiceError> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(|v| v * scale)
                .ok_or_else(|| syntax(format!("bad time {s:?}")))
        };
        let (start_s, end_s) = (time(f[0])?, time(f[1])?);
        if start_s < 0.0 || end_s <= start_s {
            return Err(syntax(format!("need 0 <= start < end, got {start_s} {end_s}")));
        }
        let phone = if SILENCE_ALIASES.contains(&f[2]) { SILENCE.to_string() } else { f[2].to_string() };
        if phone != SILENCE && !phoneset.contains(&phone) {
            return Err(syntax(format!("unknown phone {phone:?}")));
        }
        if let Some(prev) = entries.last() {
            if (start_s - prev.end_s).abs() > TOLERANCE_S {
                return Err(VoiceError::NonContiguous {
                    line: i + 1,
                    reason: format!("starts at {start_s} s, previous ends at {} s", prev.end_s),
                });
            }
        }
        entries.push(LabelEntry { start_s, end_s, phone });
    }
    Ok(LabelTrack { entries })
}
