//! A deterministic test voice. Each recording is a phone string rendered
//! as harmonic pulse trains (voiced phones) or seeded noise (voiceless
//! phones) at a fixed F0, with exact labels, so the whole voice-building
//! path runs without real recordings.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{io_err, LabelEntry, LabelTrack, VoiceBuilder, VoiceError, VoiceInventory};
use crate::audio::{write_wav, Waveform, SAMPLE_RATE};
use crate::data::Resources;
use crate::doc::SILENCE;
use crate::linguistics::phoneset::{is_long, PhoneCategory, PhoneFeature};
use crate::linguistics::PhoneSet;

pub const SYNTHETIC_VOICE_NAME: &str = "lug-synthetic";

const VOICELESS: [&str; 6] = ["p", "t", "k", "f", "s", "c"];
const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];

struct Recording {
    name: String,
    phones: Vec<String>,
    f0: f64,
}

fn recordings(phoneset: &PhoneSet) -> Vec<Recording> {
    let consonants: Vec<String> = phoneset
        .phones()
        .iter()
        .filter(|p| p.category == PhoneCategory::Consonant && !is_long(&p.symbol))
        .map(|p| p.symbol.clone())
        .collect();
    let mut scripts: Vec<Vec<String>> = vec![["b", "u", "t", "i", "k", "o"].map(String::from).to_vec()];
    for (n, chunk) in consonants.chunks(5).enumerate() {
        let mut s = Vec::new();
        for (i, c) in chunk.iter().enumerate() {
            s.push(c.clone());
            s.push(VOWELS[(n + i) % VOWELS.len()].to_string());
        }
        scripts.push(s);
    }
    for (n, chunk) in consonants.chunks(5).enumerate() {
        let mut s = vec![VOWELS[n % VOWELS.len()].to_string()];
        for (i, c) in chunk.iter().enumerate() {
            s.push(phoneset.lengthened(c).unwrap_or(c).to_string());
            s.push(VOWELS[(n + i + 1) % VOWELS.len()].to_string());
        }
        scripts.push(s);
    }
    let mut longs = Vec::new();
    for (c, v) in ["b", "d", "g", "m", "n"].iter().zip(VOWELS) {
        longs.push(c.to_string());
        longs.push(phoneset.lengthened(v).unwrap_or(v).to_string());
    }
    scripts.push(longs);
    scripts
        .into_iter()
        .enumerate()
        .map(|(i, body)| {
            let mut phones = vec![SILENCE.to_string()];
            phones.extend(body);
            phones.push(SILENCE.to_string());
            Recording { name: format!("syn{i:03}"), phones, f0: 160.0 + ((i * 23) % 61) as f64 }
        })
        .collect()
}

fn duration_ms(phone: &str, phoneset: &PhoneSet) -> f64 {
    let base = if phone == SILENCE {
        150.0
    } else if phoneset.is_vowel(phone) {
        90.0
    } else {
        70.0
    };
    if phoneset.has_feature(phone, PhoneFeature::Geminate) {
        base * 1.6
    } else if phoneset.has_feature(phone, PhoneFeature::Long) {
        base * 1.5
    } else {
        base
    }
}

/// Harmonic weights from two spectral peaks that depend on the phone.
fn harmonic_weights(phone_index: usize, f0: f64) -> Vec<f64> {
    let f1 = 300.0 + ((phone_index * 137) % 600) as f64;
    let f2 = 900.0 + ((phone_index * 311) % 1500) as f64;
    let n = (3800.0 / f0) as usize;
    let w: Vec<f64> = (1..=n)
        .map(|h| {
            let f = h as f64 * f0;
            (-((f - f1) / 200.0).powi(2)).exp() + 0.6 * (-((f - f2) / 300.0).powi(2)).exp() + 0.3 / h as f64
        })
        .collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn render(rec: &Recording, index: usize, phoneset: &PhoneSet) -> (Waveform, LabelTrack) {
    let mut rng = ChaCha8Rng::seed_from_u64(index as u64);
    let mut out: Vec<f64> = Vec::new();
    let mut entries = Vec::new();
    let mut phase = 0.0_f64;
    let step = 2.0 * PI * rec.f0 / SAMPLE_RATE as f64;
    for phone in &rec.phones {
        let n = (duration_ms(phone, phoneset) * SAMPLE_RATE as f64 / 1000.0).round() as usize;
        let start = out.len();
        let short = phoneset.shortened(phone).unwrap_or(phone);
        let voiceless = VOICELESS.contains(&short);
        let weights = phoneset
            .phones()
            .iter()
            .position(|p| p.symbol == short)
            .map(|i| harmonic_weights(i, rec.f0))
            .unwrap_or_default();
        let amp = if phoneset.is_vowel(phone) {
            9000.0
        } else if phoneset.has_feature(phone, PhoneFeature::Nasal) {
            5000.0
        } else {
            4500.0
        };
        for _ in 0..n {
            let s = if phone == SILENCE {
                0.0
            } else if voiceless {
                rng.random_range(-2500.0..2500.0)
            } else {
                amp * weights.iter().enumerate().map(|(h, w)| w * ((h + 1) as f64 * phase).sin()).sum::<f64>()
            };
            out.push(s);
            phase = (phase + step) % (2.0 * PI);
        }
        entries.push(LabelEntry {
            start_s: start as f64 / SAMPLE_RATE as f64,
            end_s: out.len() as f64 / SAMPLE_RATE as f64,
            phone: phone.clone(),
        });
    }
    (Waveform::from_f64(&out), LabelTrack { entries })
}

fn builder() -> VoiceBuilder {
    VoiceBuilder::new(SYNTHETIC_VOICE_NAME)
        .meta("speaker", "synthetic")
        .meta("description", "harmonic pulse trains and noise; for tests")
}

fn build(phoneset: &PhoneSet) -> VoiceInventory {
    let mut b = builder();
    for (i, rec) in recordings(phoneset).iter().enumerate() {
        let (wave, labels) = render(rec, i, phoneset);
        b.add_recording(&rec.name, wave, &labels).expect("synthetic labels are consistent");
    }
    b.build()
}

/// The synthetic voice over the bundled phone set, built once.
pub fn synthetic_voice() -> &'static VoiceInventory {
    static VOICE: OnceLock<VoiceInventory> = OnceLock::new();
    VOICE.get_or_init(|| build(&Resources::bundled().phoneset))
}

/// Writes the synthetic recordings as a session directory (`wav/`,
/// `text/`, `lab/` in seconds) for [`import_session`](super::import_session).
pub fn write_synthetic_session(dir: &Path, phoneset: &PhoneSet) -> Result<(), VoiceError> {
    for sub in ["wav", "text", "lab"] {
        let d = dir.join(sub);
        std::fs::create_dir_all(&d).map_err(io_err(&d))?;
    }
    for (i, rec) in recordings(phoneset).iter().enumerate() {
        let (wave, labels) = render(rec, i, phoneset);
        write_wav(&wave, &dir.join("wav").join(format!("{}.wav", rec.name)))?;
        let text: Vec<&str> = rec.phones.iter().map(String::as_str).filter(|p| *p != SILENCE).collect();
        let txt = dir.join("text").join(format!("{}.txt", rec.name));
        std::fs::write(&txt, text.join(" ")).map_err(io_err(&txt))?;
        let lab: String = labels.entries.iter().map(|e| format!("{} {} {}\n", e.start_s, e.end_s, e.phone)).collect();
        let lab_path = dir.join("lab").join(format!("{}.lab", rec.name));
        std::fs::write(&lab_path, lab).map_err(io_err(&lab_path))?;
    }
    Ok(())
}
