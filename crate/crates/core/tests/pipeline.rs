use std::time::Instant;

use lugtts_core::data::Resources;
use lugtts_core::doc::BreakLevel;
use lugtts_core::pipeline::{synthesize_text, Output};
use lugtts_core::prosody::Precision;
use lugtts_core::synth::unit_targets;
use lugtts_core::voicedb::synthetic_voice;
use lugtts_core::{format, Engine, InputKind, OutputType, Stage};

fn text(out: Output) -> String {
    match out {
        Output::Text(t) => t,
        Output::Audio(_) => panic!("expected text"),
    }
}

#[test]
fn butiko_phones_syllables_triphones() {
    let start = Instant::now();
    let doc = Engine::default().analyze("butiko", InputKind::Plain).unwrap();
    let word = &doc.sentences[0].words[0];
    assert_eq!(word.phones().join(" "), "b u t i k o");
    let syllables: Vec<String> = word.syllables.iter().map(|s| s.phones.concat()).collect();
    assert_eq!(syllables.join(" "), "bu ti ko");
    let triphones: Vec<String> =
        unit_targets(&format::segment_targets(&doc)).into_iter().map(|t| t.triphone).collect();
    assert_eq!(triphones, ["<sil>-b+u", "b-u+t", "u-t+i", "t-i+k", "i-k+o", "k-o+<sil>"]);
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn ssml_and_plain_agree_without_markup() {
    let e = Engine::default();
    for out in [OutputType::Phonemes, OutputType::Allophones, OutputType::AcoustParams] {
        let plain = e.process("omuntu agenda.", InputKind::Plain, out, None).unwrap();
        let ssml = e.process("<speak>omuntu agenda.</speak>", InputKind::Ssml, out, None).unwrap();
        assert_eq!(plain, ssml, "{}", out.as_str());
    }
}

#[test]
fn ssml_break_adds_phrase() {
    let doc = Engine::default()
        .run_to(r#"<speak>omuntu <break strength="strong"/> abantu</speak>"#, InputKind::Ssml, Stage::Prosody)
        .unwrap();
    let levels: Vec<BreakLevel> = doc.sentences[0].breaks.iter().map(|b| b.level).collect();
    assert_eq!(levels, [BreakLevel::Intermediate, BreakLevel::Intonation]);
}

#[test]
fn numbers_are_spoken() {
    let e = Engine::default();
    let tokens = text(e.process("3", InputKind::Plain, OutputType::Tokens, None).unwrap());
    assert!(tokens.starts_with("3\tNUMBER\t"), "{tokens}");
    let phonemes = text(e.process("3", InputKind::Plain, OutputType::Phonemes, None).unwrap());
    assert!(!phonemes.is_empty());
}

#[test]
fn relaxed_speech_is_shorter() {
    let total = |p: Precision| {
        let doc = Engine::default().with_precision(p).analyze("omuntu agenda", InputKind::Plain).unwrap();
        format::segment_targets(&doc).iter().map(|s| s.duration_ms).sum::<u32>()
    };
    assert!(total(Precision::Relaxed) < total(Precision::Normal));
    assert!(total(Precision::Normal) < total(Precision::Precise));
}

#[test]
fn audio_output_is_a_wav_of_the_synthesis() {
    let voice = synthetic_voice();
    let syn = synthesize_text("omuntu", voice).unwrap();
    let Output::Audio(bytes) = Engine::default().process("omuntu", InputKind::Plain, OutputType::Audio, Some(voice)).unwrap()
    else {
        panic!("expected audio")
    };
    assert_eq!(lugtts_core::audio::wav_from_bytes(&bytes).unwrap(), syn.waveform);
}

#[test]
fn data_directory_overrides_bundled_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("lexicon.tsv"), "butiko\tb u . t i . k X\tNOUN\n").unwrap();
    let r = Resources::from_dir(dir.path());
    assert!(r.is_err(), "transcription with an unknown phone must be rejected");
    std::fs::write(dir.path().join("lexicon.tsv"), "butiko\tb u . t i . k o:\tNOUN\n").unwrap();
    let engine = Engine::new(Resources::from_dir(dir.path()).unwrap());
    let out = text(engine.process("butiko", InputKind::Plain, OutputType::Phonemes, None).unwrap());
    assert_eq!(out, "b u t i k o:");
}
