use super::AcousticsError;
use crate::doc::{F0Target, Segment, SegmentOrigin, Sentence, UtteranceDoc};
use crate::linguistics::PhoneSet;
use crate::tsv;

#[derive(Clone, Debug, PartialEq)]
pub struct F0Config {
    pub topline_hz: f64,
    pub baseline_hz: f64,
    /// Hz per second.
    pub declination: f64,
    /// Fraction of the reference line added (or removed) by an accent.
    pub excursion: f64,
}

impl Default for F0Config {
    fn default() -> Self {
        F0Config { topline_hz: 180.0, baseline_hz: 110.0, declination: 10.0, excursion: 0.30 }
    }
}

impl F0Config {
    pub fn parse(text: &str) -> Result<Self, AcousticsError> {
        let mut c = F0Config::default();
        for row in tsv::rows(text) {
            let bad = |reason: String| AcousticsError::Table { file: "f0_config", line: row.line, reason };
            let [key, value] = row.fields[..] else {
                return Err(bad("expected key<TAB>value".into()));
            };
            let v: f64 = value.parse().map_err(|_| bad(format!("bad number {value:?}")))?;
            if !v.is_finite() || v < 0.0 {
                return Err(bad(format!("{key} must be non-negative")));
            }
            match key {
                "topline" => c.topline_hz = v,
                "baseline" => c.baseline_hz = v,
                "declination" => c.declination = v,
                "excursion" => c.excursion = v,
                _ => return Err(bad(format!("unknown key {key}"))),
            }
        }
        if !(c.topline_hz > c.baseline_hz && c.baseline_hz > 0.0) {
            return Err(AcousticsError::Table { file: "f0_config", line: 0, reason: "need topline > baseline > 0".into() });
        }
        Ok(c)
    }

    /// The declining reference line at `t` seconds.
    pub fn reference(&self, t: f64) -> f64 {
        (self.topline_hz - self.declination * t).max(self.baseline_hz)
    }

    pub fn floor(&self) -> f64 {
        self.baseline_hz * 0.8
    }

    pub fn ceiling(&self) -> f64 {
        self.topline_hz * (1.0 + self.excursion)
    }

    /// Endpoint for a boundary or phrase tone: low tones go to the
    /// baseline, high ones to the topline, mixed ones halfway.
    fn boundary_hz(&self, label: &str) -> Option<f64> {
        let tones: Vec<char> = label.chars().filter(|c| matches!(c, 'H' | 'L')).collect();
        let well_formed = label.contains('-') && !tones.is_empty() && tones.len() <= 2;
        if !well_formed || label.chars().any(|c| !matches!(c, 'H' | 'L' | '-' | '%')) {
            return None;
        }
        let (first, last) = (tones[0], tones[tones.len() - 1]);
        Some(match (first, last) {
            ('L', 'L') => self.baseline_hz,
            ('H', 'H') => self.topline_hz,
            _ => (self.baseline_hz + self.topline_hz) / 2.0,
        })
    }
}

struct Placed {
    segment: usize,
    percent: u8,
    hz: f64,
}

fn round_hz(hz: f64) -> f64 {
    (hz * 10.0).round() / 10.0
}

fn sentence_f0(s: &mut Sentence, cfg: &F0Config, phoneset: &PhoneSet, warnings: &mut Vec<String>) {
    let segs = &s.segments;
    if segs.is_empty() {
        return;
    }
    let mut starts = Vec::with_capacity(segs.len());
    let mut t = 0.0;
    for seg in segs {
        starts.push(t);
        t += seg.target.duration_ms as f64 / 1000.0;
    }
    let at = |i: usize, pct: u8| starts[i] + segs[i].target.duration_ms as f64 / 1000.0 * pct as f64 / 100.0;
    let mut placed = Vec::new();
    if let Some(first) = segs.iter().position(|s| matches!(s.origin, SegmentOrigin::Phone { .. })) {
        placed.push(Placed { segment: first, percent: 0, hz: cfg.reference(0.0) });
    }

    for acc in &s.accents {
        let Some(word) = s.words.get(acc.word) else { continue };
        let stressed = word.syllables.iter().position(|syl| syl.stressed).unwrap_or(0);
        let in_syl = |seg: &Segment| matches!(seg.origin, SegmentOrigin::Phone { word: w, syllable, .. } if w == acc.word && syllable == stressed);
        let Some(v) = segs
            .iter()
            .position(|seg| in_syl(seg) && phoneset.is_vowel(&seg.target.phone))
            .or_else(|| segs.iter().position(in_syl))
        else {
            continue;
        };
        let label = acc.tone.as_deref().unwrap_or("H*");
        let points: &[(u8, f64)] = match label {
            "H*" => &[(50, 1.0)],
            "L*" => &[(50, -1.0)],
            "L+H*" => &[(10, -1.0), (60, 1.0)],
            other => {
                warnings.push(format!("unknown accent {other:?}, using H*"));
                &[(50, 1.0)]
            }
        };
        for &(pct, dir) in points {
            let hz = cfg.reference(at(v, pct)) * (1.0 + dir * cfg.excursion);
            placed.push(Placed { segment: v, percent: pct, hz });
        }
    }

    for b in &s.breaks {
        let last = segs.iter().rposition(|seg| {
            matches!(seg.origin, SegmentOrigin::Phone { word, .. } if word <= b.after_word)
        });
        let Some(last) = last else { continue };
        let label = b.boundary_tone.as_deref().unwrap_or("L-L%");
        let hz = cfg.boundary_hz(label).unwrap_or_else(|| {
            warnings.push(format!("unknown boundary tone {label:?}, using L-L%"));
            cfg.baseline_hz
        });
        placed.push(Placed { segment: last, percent: 100, hz });
    }

    let (lo, hi) = (cfg.floor(), cfg.ceiling());
    for seg in &mut s.segments {
        seg.target.f0_targets.clear();
    }
    for p in placed {
        let mut hz = p.hz;
        if hz < lo || hz > hi {
            log::debug!("clamping F0 target {hz:.1} Hz into [{lo:.1}, {hi:.1}]");
            hz = hz.clamp(lo, hi);
        }
        let targets = &mut s.segments[p.segment].target.f0_targets;
        targets.retain(|t| t.percent != p.percent);
        targets.push(F0Target { percent: p.percent, hz: round_hz(hz) });
    }
    for seg in &mut s.segments {
        seg.target.f0_targets.sort_by_key(|t| t.percent);
    }
}

/// Adds F0 targets to computed segments: a starting target on the
/// declining reference line, accent targets in the stressed vowel and an
/// endpoint at each phrase boundary. Other segments get no target.
pub fn compute_f0(mut doc: UtteranceDoc, cfg: &F0Config, phoneset: &PhoneSet) -> UtteranceDoc {
    let mut warnings = Vec::new();
    for s in &mut doc.sentences {
        sentence_f0(s, cfg, phoneset, &mut warnings);
    }
    doc.warnings.extend(warnings);
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acoustics::compute_durations;
    use crate::data::Resources;
    use crate::doc::{BreakLevel, InputKind, PhraseBreak, PitchAccent, Pos, Syllable, Word};
    use crate::prosody::Precision;

    fn doc(accent: Option<&str>, boundary: &str) -> UtteranceDoc {
        let r = Resources::bundled();
        let mut w = Word::new(0, "butiko", Pos::Noun);
        w.syllables = [["b", "u"], ["t", "i"], ["k", "o"]]
            .iter()
            .enumerate()
            .map(|(i, s)| Syllable { phones: s.iter().map(|p| p.to_string()).collect(), stressed: i == 0 })
            .collect();
        w.accented = accent.is_some();
        let mut s = Sentence::new(Vec::new());
        s.words = vec![w];
        s.breaks = vec![PhraseBreak { after_word: 0, level: BreakLevel::Intonation, boundary_tone: Some(boundary.into()) }];
        if let Some(a) = accent {
            s.accents = vec![PitchAccent { word: 0, tone: Some(a.into()), nuclear: true }];
        }
        let mut d = UtteranceDoc::empty(InputKind::Plain);
        d.sentences.push(s);
        compute_durations(d, &r.durations, &r.phoneset, Precision::Normal).unwrap()
    }

    fn targets(d: &UtteranceDoc) -> Vec<(usize, u8, f64)> {
        d.sentences[0]
            .segments
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.target.f0_targets.iter().map(move |t| (i, t.percent, t.hz)))
            .collect()
    }

    #[test]
    fn no_accent_low_boundary() {
        let r = Resources::bundled();
        let out = compute_f0(doc(None, "L-L%"), &r.f0, &r.phoneset);
        assert_eq!(targets(&out), [(0, 0, 180.0), (5, 100, 110.0)]);
    }

    #[test]
    fn single_peak_above_reference() {
        let r = Resources::bundled();
        let out = compute_f0(doc(Some("H*"), "L-L%"), &r.f0, &r.phoneset);
        let t = targets(&out);
        assert_eq!(t.len(), 3);
        // accented b is 72 ms and u 96 ms: the vowel midpoint is at 0.120 s
        let expected = ((180.0 - 10.0 * 0.120) * 1.3 * 10.0_f64).round() / 10.0;
        assert_eq!(t[1], (1, 50, expected));
        assert!(t[1].2 > r.f0.reference(0.120));
    }

    #[test]
    fn boundary_endpoints_and_fallbacks() {
        let r = Resources::bundled();
        let hh = compute_f0(doc(None, "H-H%"), &r.f0, &r.phoneset);
        assert_eq!(targets(&hh).last().unwrap().2, 180.0);
        let lh = compute_f0(doc(None, "L-H%"), &r.f0, &r.phoneset);
        assert_eq!(targets(&lh).last().unwrap().2, 145.0);
        let odd = compute_f0(doc(Some("X*"), "??"), &r.f0, &r.phoneset);
        assert_eq!(odd.warnings.len(), 2);
        assert_eq!(targets(&odd).len(), 3);
    }

    #[test]
    fn targets_within_bounds_and_increasing() {
        let r = Resources::bundled();
        let steep = F0Config { declination: 400.0, ..r.f0.clone() };
        let out = compute_f0(doc(Some("L+H*"), "L-L%"), &steep, &r.phoneset);
        for s in &out.sentences[0].segments {
            assert!(s.target.f0_targets.windows(2).all(|w| w[0].percent < w[1].percent));
            for t in &s.target.f0_targets {
                assert!(t.hz >= steep.floor() && t.hz <= steep.ceiling());
            }
        }
    }

    #[test]
    fn empty_doc_has_no_targets() {
        let r = Resources::bundled();
        let out = compute_f0(UtteranceDoc::empty(InputKind::Plain), &r.f0, &r.phoneset);
        assert!(out.sentences.is_empty());
    }

    #[test]
    fn config_validation() {
        assert!(F0Config::parse("topline\t100\nbaseline\t120\n").is_err());
        assert_eq!(F0Config::parse("").unwrap(), F0Config::default());
    }
}
