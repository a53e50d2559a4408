use std::collections::BTreeMap;
use std::path::Path;

use super::{
    compute_edge_features, compute_pitch_marks, estimate_f0, io_err, parse_labels, segment_units, validate_session,
    LabelTrack, TimeUnit, Unit, VoiceError, VoiceInventory, FEATURE_ORDER, VOICING_THRESHOLD,
};
use crate::audio::{read_wav, Waveform, SAMPLE_RATE};
use crate::linguistics::PhoneSet;

fn period_hz(a: usize, b: usize) -> f64 {
    SAMPLE_RATE as f64 / (b - a) as f64
}

/// Segments one recording and fills in each unit's pitch marks, F0 and
/// edge features.
pub fn build_units(source: &str, wave: &Waveform, labels: &LabelTrack) -> Result<Vec<Unit>, VoiceError> {
    let mut units = segment_units(wave, labels, source)?;
    let frames = estimate_f0(&wave.samples, VOICING_THRESHOLD);
    let marks = compute_pitch_marks(&wave.samples, &frames);
    for u in &mut units {
        u.pitch_marks = marks.iter().copied().filter(|&m| u.start <= m && m < u.end).collect();
        let voiced: Vec<f64> = frames
            .iter()
            .filter(|f| {
                let c = (f.time_s * SAMPLE_RATE as f64) as usize;
                u.start <= c && c < u.end
            })
            .filter_map(|f| f.hz)
            .collect();
        u.mean_f0 = (!voiced.is_empty()).then(|| voiced.iter().sum::<f64>() / voiced.len() as f64);
        let pm = &u.pitch_marks;
        u.left_f0 = if pm.len() >= 2 { Some(period_hz(pm[0], pm[1])) } else { u.mean_f0 };
        u.right_f0 = if pm.len() >= 2 { Some(period_hz(pm[pm.len() - 2], pm[pm.len() - 1])) } else { u.mean_f0 };
        let (l, r) = compute_edge_features(&wave.samples, u, FEATURE_ORDER);
        u.left_features = l;
        u.right_features = r;
    }
    Ok(units)
}

/// Accumulates recordings into an inventory.
#[derive(Debug, Default)]
pub struct VoiceBuilder {
    name: String,
    metadata: BTreeMap<String, String>,
    units: Vec<Unit>,
    sources: BTreeMap<String, Waveform>,
}

impl VoiceBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        VoiceBuilder { name: name.into(), ..Default::default() }
    }

    pub fn meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn add_recording(&mut self, source: &str, wave: Waveform, labels: &LabelTrack) -> Result<(), VoiceError> {
        let units = build_units(source, &wave, labels)?;
        self.units.extend(units);
        self.sources.insert(source.to_string(), wave);
        Ok(())
    }

    pub fn build(self) -> VoiceInventory {
        VoiceInventory::new(self.name, self.metadata, self.units, self.sources)
    }
}

/// Imports a session directory laid out as `wav/`, `text/` and `lab/`,
/// with one `lab/<name>.lab` per recording.
pub fn import_session(
    dir: &Path,
    name: &str,
    unit: TimeUnit,
    phoneset: &PhoneSet,
) -> Result<VoiceInventory, VoiceError> {
    let pairs = validate_session(dir)?;
    let mut builder = VoiceBuilder::new(name).meta("imported_from", dir.display().to_string());
    for pair in pairs {
        let lab = dir.join("lab").join(format!("{}.lab", pair.name));
        if !lab.exists() {
            return Err(VoiceError::MissingLabels(pair.name));
        }
        let text = std::fs::read_to_string(&lab).map_err(io_err(&lab))?;
        let labels = parse_labels(&text, unit, phoneset)?;
        builder.add_recording(&pair.name, read_wav(&pair.wav)?, &labels)?;
    }
    Ok(builder.build())
}
