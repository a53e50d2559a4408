use std::collections::{BTreeSet, HashMap};

use super::ProsodyError;
use crate::doc::{BreakLevel, PhraseBreak, PitchAccent, SentenceType};
use crate::tsv;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToneRow {
    pub accent: String,
    pub nuclear_accent: String,
    pub intermediate_boundary: String,
    pub final_boundary: String,
}

/// Tone labels per sentence type, over a declared label alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct ToneMap {
    pub alphabet: BTreeSet<String>,
    rows: HashMap<SentenceType, ToneRow>,
}

impl ToneMap {
    /// An `alphabet` row lists the labels; every sentence type then needs a
    /// row `TYPE<TAB>accent<TAB>nuclear<TAB>intermediate<TAB>final`. The final
    /// boundary must be a full `X-Y%` tone and differ from the intermediate
    /// boundary, which must be an `X-` tone.
    pub fn parse(text: &str) -> Result<Self, ProsodyError> {
        let mut alphabet = BTreeSet::new();
        let mut rows = HashMap::new();
        for row in tsv::rows(text) {
            let bad = |reason: String| ProsodyError::ToneMap { line: row.line, reason };
            if row.fields[0] == "alphabet" {
                let labels = row.fields.get(1).ok_or_else(|| bad("empty alphabet".into()))?;
                alphabet.extend(labels.split_whitespace().map(String::from));
                continue;
            }
            let ty: SentenceType = row.fields[0].parse().map_err(bad)?;
            if row.fields.len() != 5 {
                return Err(bad("expected type and four tone labels".into()));
            }
            for label in &row.fields[1..] {
                if !alphabet.contains(*label) {
                    return Err(bad(format!("label {label:?} is not in the alphabet")));
                }
            }
            let tr = ToneRow {
                accent: row.fields[1].into(),
                nuclear_accent: row.fields[2].into(),
                intermediate_boundary: row.fields[3].into(),
                final_boundary: row.fields[4].into(),
            };
            if !is_phrase_tone(&tr.intermediate_boundary) {
                return Err(bad("intermediate boundary must look like X-".into()));
            }
            if !is_boundary_tone(&tr.final_boundary) {
                return Err(bad("final boundary must look like X-Y%".into()));
            }
            rows.insert(ty, tr);
        }
        for ty in SentenceType::ALL {
            if !rows.contains_key(&ty) {
                return Err(ProsodyError::ToneMap { line: 0, reason: format!("no row for {}", ty.as_str()) });
            }
        }
        Ok(ToneMap { alphabet, rows })
    }

    pub fn row(&self, ty: SentenceType) -> &ToneRow {
        &self.rows[&ty]
    }
}

fn is_phrase_tone(label: &str) -> bool {
    label.len() >= 2 && label.ends_with('-') && !label.contains('%')
}

fn is_boundary_tone(label: &str) -> bool {
    label.ends_with('%') && label.split_once('-').is_some_and(|(a, b)| !a.is_empty() && b.len() >= 2)
}

/// Fills accent and boundary tones from the sentence type's row.
pub fn assign_tones(ty: SentenceType, accents: &mut [PitchAccent], breaks: &mut [PhraseBreak], map: &ToneMap) {
    let row = map.row(ty);
    for a in accents.iter_mut() {
        a.tone = Some(if a.nuclear { row.nuclear_accent.clone() } else { row.accent.clone() });
    }
    for b in breaks.iter_mut() {
        b.boundary_tone = Some(match b.level {
            BreakLevel::Intermediate => row.intermediate_boundary.clone(),
            BreakLevel::Intonation => row.final_boundary.clone(),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Resources;

    fn brk(level: BreakLevel) -> PhraseBreak {
        PhraseBreak { after_word: 0, level, boundary_tone: None }
    }

    #[test]
    fn declarative_defaults() {
        let map = Resources::bundled().tone_map;
        let mut acc = vec![
            PitchAccent { word: 0, tone: None, nuclear: false },
            PitchAccent { word: 1, tone: None, nuclear: true },
        ];
        let mut br = vec![brk(BreakLevel::Intermediate), brk(BreakLevel::Intonation)];
        assign_tones(SentenceType::Declarative, &mut acc, &mut br, &map);
        assert_eq!(acc[0].tone.as_deref(), Some("H*"));
        assert_eq!(acc[1].tone.as_deref(), Some("H*"));
        assert_eq!(br[0].boundary_tone.as_deref(), Some("L-"));
        assert_eq!(br[1].boundary_tone.as_deref(), Some("L-L%"));
    }

    #[test]
    fn yes_no_question_rises() {
        let map = Resources::bundled().tone_map;
        let mut br = vec![brk(BreakLevel::Intonation)];
        assign_tones(SentenceType::InterrogativeYn, &mut [], &mut br, &map);
        assert_eq!(br[0].boundary_tone.as_deref(), Some("H-H%"));
    }

    #[test]
    fn final_differs_from_intermediate_for_every_type() {
        let map = Resources::bundled().tone_map;
        for ty in SentenceType::ALL {
            let r = map.row(ty);
            assert_ne!(r.final_boundary, r.intermediate_boundary);
        }
    }

    #[test]
    fn rejects_undeclared_labels_and_missing_rows() {
        assert!(ToneMap::parse("alphabet\tH* L- L-L%\nDECLARATIVE\tH*\tH*\tL-\tH-H%\n").is_err());
        assert!(ToneMap::parse("alphabet\tH* L- L-L%\nDECLARATIVE\tH*\tH*\tL-\tL-L%\n").is_err());
        assert!(ToneMap::parse("alphabet\tH* L-L%\nDECLARATIVE\tH*\tH*\tL-L%\tL-L%\n").is_err());
    }
}
