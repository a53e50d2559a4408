use lugtts_core::acoustics::{emit_pho, parse_pho};
use lugtts_core::data::Resources;
use lugtts_core::doc::{BreakLevel, F0Target, InputKind, Pos, SegmentTarget};
use lugtts_core::frontend::{normalize, parse_plain};
use lugtts_core::prosody::phrase_spans;
use lugtts_core::{Engine, Stage};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config { cases: 1000, rng_seed: RngSeed::Fixed(0x1ea5e), failure_persistence: None, ..Config::default() }
}

const ALPHABET: &[char] = &[
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'r', 's', 't', 'u', 'v', 'w', 'y',
    'z', 'ŋ', 'A', 'B', 'K', 'N', 'Ŋ', '\'', '’', '-', '.', ',', ';', '?', '!', '"', '1', '7', '0', ' ', ' ', ' ',
    '\t', '\n', '$',
];

const PIECES: &[&str] = &[
    "omuntu", "abantu", "butiko", "ennyumba", "genda", "ne", "era", "ya", "ku", "bwonna", "ddala", "Dr.", "Mw.",
    "UTV", "3", "21", "101", "1000000000", "3.", ",", ".", "?", "!", ";", ":", "$", "ng'omuntu", "wa", "ani",
    "mukasa", "kaalo", "okugenda",
];

fn alphabet_text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(ALPHABET), 0..80).prop_map(|cs| cs.into_iter().collect())
}

fn piece_text() -> impl Strategy<Value = String> {
    prop::collection::vec((prop::sample::select(PIECES), prop::sample::select(&[" ", " ", "", "  ", "\n"][..])), 0..16)
        .prop_map(|v| v.into_iter().flat_map(|(p, ws)| [p, ws]).collect())
}

fn segment_list() -> impl Strategy<Value = Vec<SegmentTarget>> {
    let phone = prop::sample::select(&["a", "e:", "b", "J:", "_", "ŋ", "t", "o"][..]);
    let targets = prop::collection::btree_map(0u8..=100, 1u32..6000, 0..5);
    prop::collection::vec((phone, 1u32..2000, targets), 0..30).prop_map(|rows| {
        rows.into_iter()
            .map(|(p, d, t)| SegmentTarget {
                phone: p.to_string(),
                duration_ms: d,
                f0_targets: t.into_iter().map(|(percent, tenths)| F0Target { percent, hz: tenths as f64 / 10.0 }).collect(),
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn tokenization_is_lossless(text in alphabet_text()) {
        prop_assert_eq!(parse_plain(&text).reconstruct(), text);
    }

    #[test]
    fn normalize_is_idempotent(text in piece_text()) {
        let tables = &Resources::bundled().normalization;
        let once = normalize(parse_plain(&text), tables);
        let twice = normalize(once.clone(), tables);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn phrases_with_accentable_words_get_an_accent(text in piece_text()) {
        let doc = Engine::default().run_to(&text, InputKind::Plain, Stage::Prosody).unwrap();
        for s in &doc.sentences {
            for (start, end) in phrase_spans(&s.breaks) {
                let eligible = (start..=end)
                    .any(|i| matches!(s.words[i].pos, Pos::Noun | Pos::Adj) || s.words[i].pos.accent_rank() > 0);
                if eligible {
                    prop_assert!(s.accents.iter().any(|a| (start..=end).contains(&a.word)), "{:?} {}..={}", text, start, end);
                }
            }
        }
    }

    #[test]
    fn one_final_intonation_break(text in piece_text()) {
        let doc = Engine::default().run_to(&text, InputKind::Plain, Stage::Prosody).unwrap();
        for s in doc.sentences.iter().filter(|s| !s.words.is_empty()) {
            let finals: Vec<_> = s.breaks.iter().filter(|b| b.level == BreakLevel::Intonation).collect();
            prop_assert_eq!(finals.len(), 1);
            prop_assert_eq!(s.breaks.last().map(|b| b.level), Some(BreakLevel::Intonation));
            let last_lexical = s.words.iter().rposition(|w| w.pos != Pos::Punc);
            if let Some(i) = last_lexical {
                prop_assert_eq!(finals[0].after_word, i);
            }
        }
    }

    #[test]
    fn pho_round_trip(segments in segment_list()) {
        prop_assert_eq!(parse_pho(&emit_pho(&segments)).unwrap(), segments);
    }
}
