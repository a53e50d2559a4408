use super::{LabelTrack, Unit, VoiceError};
use crate::audio::{Waveform, SAMPLE_RATE};
use crate::doc::SILENCE;

pub const SIL_LABEL: &str = "<sil>";

/// `L-P+R`; missing or silent neighbours are written `<sil>`.
pub fn triphone_label(left: Option<&str>, phone: &str, right: Option<&str>) -> String {
    let side = |p: Option<&str>| match p {
        Some(p) if p != SILENCE => p.to_string(),
        _ => SIL_LABEL.to_string(),
    };
    format!("{}-{phone}+{}", side(left), side(right))
}

fn to_sample(t: f64) -> usize {
    (t * SAMPLE_RATE as f64).round() as usize
}

/// One unit per non-silence label. Pitch marks, F0 and edge features are
/// left empty.
pub fn segment_units(wave: &Waveform, labels: &LabelTrack, source: &str) -> Result<Vec<Unit>, VoiceError> {
    let e = &labels.entries;
    let len_s = wave.duration_s();
    let mut units = Vec::new();
    for (i, entry) in e.iter().enumerate() {
        if entry.phone == SILENCE {
            continue;
        }
        let (start, end) = (to_sample(entry.start_s), to_sample(entry.end_s));
        if end > wave.len() {
            return Err(VoiceError::OutOfRange { phone: entry.phone.clone(), end_s: entry.end_s, len_s });
        }
        let left = i.checked_sub(1).map(|j| e[j].phone.as_str());
        let right = e.get(i + 1).map(|n| n.phone.as_str());
        units.push(Unit {
            id: units.len() as u32,
            phone: entry.phone.clone(),
            triphone: triphone_label(left, &entry.phone, right),
            source: source.to_string(),
            start,
            end,
            duration_ms: (end - start) as f64 * 1000.0 / SAMPLE_RATE as f64,
            mean_f0: None,
            left_f0: None,
            right_f0: None,
            pitch_marks: Vec::new(),
            left_features: Vec::new(),
            right_features: Vec::new(),
        });
    }
    Ok(units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voicedb::LabelEntry;

    fn track(phones: &[&str]) -> LabelTrack {
        LabelTrack {
            entries: phones
                .iter()
                .enumerate()
                .map(|(i, p)| LabelEntry { start_s: i as f64 * 0.1, end_s: (i + 1) as f64 * 0.1, phone: p.to_string() })
                .collect(),
        }
    }

    #[test]
    fn butiko_triphones() {
        let phones = ["_", "b", "u", "t", "i", "k", "o", "_"];
        let wave = Waveform::new(vec![0; 12800]);
        let units = segment_units(&wave, &track(&phones), "butiko").unwrap();
        let labels: Vec<&str> = units.iter().map(|u| u.triphone.as_str()).collect();
        assert_eq!(labels, ["<sil>-b+u", "b-u+t", "u-t+i", "t-i+k", "i-k+o", "k-o+<sil>"]);
        assert_eq!((units[0].start, units[0].end, units[0].duration_ms), (1600, 3200, 100.0));
        assert!(units.windows(2).all(|w| w[0].adjoins(&w[1])));
    }

    #[test]
    fn padding_and_empty() {
        let wave = Waveform::new(vec![0; 4800]);
        let u = segment_units(&wave, &track(&["_", "p", "_"]), "x").unwrap();
        assert_eq!(u[0].triphone, "<sil>-p+<sil>");
        assert!(segment_units(&wave, &LabelTrack::default(), "x").unwrap().is_empty());
        assert!(matches!(segment_units(&Waveform::new(vec![0; 100]), &track(&["p"]), "x"), Err(VoiceError::OutOfRange { .. })));
    }
}
