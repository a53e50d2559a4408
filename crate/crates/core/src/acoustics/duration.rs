use std::collections::HashMap;

use super::AcousticsError;
use crate::doc::{BreakLevel, Segment, SegmentOrigin, SegmentTarget, Sentence, UtteranceDoc, SILENCE};
use crate::linguistics::phoneset::PhoneFeature;
use crate::linguistics::PhoneSet;
use crate::prosody::Precision;
use crate::tsv;

/// Base durations per short phone plus multipliers. Long and geminate
/// phones without their own row use the short phone's base.
#[derive(Clone, Debug, PartialEq)]
pub struct DurationTable {
    pub base_ms: HashMap<String, f64>,
    pub geminate: f64,
    pub long_vowel: f64,
    pub accented: f64,
    pub phrase_final: f64,
    pub precise: f64,
    pub normal: f64,
    pub relaxed: f64,
    pub pause_intonation_ms: u32,
    pub pause_intermediate_ms: u32,
}

impl Default for DurationTable {
    fn default() -> Self {
        DurationTable {
            base_ms: HashMap::new(),
            geminate: 1.0,
            long_vowel: 1.0,
            accented: 1.0,
            phrase_final: 1.0,
            precise: 1.0,
            normal: 1.0,
            relaxed: 1.0,
            pause_intonation_ms: 200,
            pause_intermediate_ms: 100,
        }
    }
}

impl DurationTable {
    pub fn parse(text: &str) -> Result<Self, AcousticsError> {
        let mut t = DurationTable::default();
        for row in tsv::rows(text) {
            let bad = |reason: String| AcousticsError::Table { file: "duration_table", line: row.line, reason };
            let [key, value] = row.fields[..] else {
                return Err(bad("expected key<TAB>value".into()));
            };
            let v: f64 = value.parse().map_err(|_| bad(format!("bad number {value:?}")))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(bad(format!("{key} must be positive")));
            }
            match key {
                "@geminate" => t.geminate = v,
                "@long_vowel" => t.long_vowel = v,
                "@accented" => t.accented = v,
                "@phrase_final" => t.phrase_final = v,
                "@precise" => t.precise = v,
                "@normal" => t.normal = v,
                "@relaxed" => t.relaxed = v,
                "@pause_intonation" => t.pause_intonation_ms = v.round() as u32,
                "@pause_intermediate" => t.pause_intermediate_ms = v.round() as u32,
                k if k.starts_with('@') => return Err(bad(format!("unknown multiplier {k}"))),
                k => {
                    t.base_ms.insert(k.to_string(), v);
                }
            }
        }
        Ok(t)
    }

    pub fn base(&self, phone: &str) -> Option<f64> {
        self.base_ms
            .get(phone)
            .or_else(|| self.base_ms.get(phone.trim_end_matches(crate::linguistics::phoneset::LENGTH_MARK)))
            .copied()
    }

    pub fn precision_factor(&self, p: Precision) -> f64 {
        match p {
            Precision::Precise => self.precise,
            Precision::Normal => self.normal,
            Precision::Relaxed => self.relaxed,
        }
    }

    pub fn pause_ms(&self, level: BreakLevel) -> u32 {
        match level {
            BreakLevel::Intonation => self.pause_intonation_ms,
            BreakLevel::Intermediate => self.pause_intermediate_ms,
        }
    }
}

/// Words (by index) that close a phrase, paired with the break level: the
/// last word with phones in each phrase.
fn phrase_final_words(sentence: &Sentence) -> Vec<(usize, BreakLevel)> {
    let mut out: Vec<(usize, BreakLevel)> = Vec::new();
    let mut start = 0;
    for b in &sentence.breaks {
        let end = b.after_word.min(sentence.words.len().saturating_sub(1));
        if let Some(w) = (start..=end).rev().find(|&i| i < sentence.words.len() && sentence.words[i].has_phones()) {
            out.push((w, b.level));
        }
        start = b.after_word + 1;
    }
    out
}

fn sentence_segments(
    sentence: &Sentence,
    table: &DurationTable,
    phoneset: &PhoneSet,
    precision: Precision,
) -> Result<Vec<Segment>, AcousticsError> {
    let finals = phrase_final_words(sentence);
    let mut segments = Vec::new();
    for (wi, word) in sentence.words.iter().enumerate() {
        if !word.has_phones() {
            continue;
        }
        let closes = finals.iter().find(|(w, _)| *w == wi).map(|(_, l)| *l);
        let last_syl = word.syllables.iter().rposition(|s| !s.phones.is_empty());
        for (si, syl) in word.syllables.iter().enumerate() {
            for (pi, phone) in syl.phones.iter().enumerate() {
                let base = table.base(phone).ok_or_else(|| AcousticsError::MissingDuration(phone.clone()))?;
                let mut ms = base * table.precision_factor(precision);
                if phoneset.has_feature(phone, PhoneFeature::Geminate) {
                    ms *= table.geminate;
                } else if phoneset.has_feature(phone, PhoneFeature::Long) {
                    ms *= table.long_vowel;
                }
                if word.accented && syl.stressed {
                    ms *= table.accented;
                }
                if closes.is_some() && Some(si) == last_syl {
                    ms *= table.phrase_final;
                }
                segments.push(Segment {
                    target: SegmentTarget::new(phone.clone(), (ms.round() as u32).max(1)),
                    origin: SegmentOrigin::Phone { word: wi, syllable: si, index: pi },
                });
            }
        }
        if let Some(level) = closes {
            segments.push(Segment {
                target: SegmentTarget::new(SILENCE, table.pause_ms(level).max(1)),
                origin: SegmentOrigin::Pause(level),
            });
        }
    }
    Ok(segments)
}

/// Fills each sentence's segment list: one segment per phone with
/// `round(base × multipliers)` ms, and a pause after every phrase break.
pub fn compute_durations(
    mut doc: UtteranceDoc,
    table: &DurationTable,
    phoneset: &PhoneSet,
    precision: Precision,
) -> Result<UtteranceDoc, AcousticsError> {
    for s in &mut doc.sentences {
        s.segments = sentence_segments(s, table, phoneset, precision)?;
    }
    Ok(doc)
}
