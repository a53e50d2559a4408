use std::path::Path;

use lugtts::cli::run;
use lugtts_core::acoustics::parse_pho;
use lugtts_core::audio::{read_wav, wav_from_bytes, write_wav, Waveform};
use lugtts_core::pipeline::synthesize_text;
use lugtts_core::voicedb::synthetic_voice;

struct Outcome {
    code: i32,
    stdout: Vec<u8>,
    stderr: String,
}

impl Outcome {
    fn text(&self) -> &str {
        std::str::from_utf8(&self.stdout).unwrap()
    }
}

fn lugtts(args: &[&str], input: &str) -> Outcome {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("lugtts").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut stdout, &mut stderr);
    Outcome { code, stdout, stderr: String::from_utf8(stderr).unwrap() }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn phonemize_butiko() {
    let o = lugtts(&["phonemize"], "butiko");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.text(), "b u t i k o\n");
}

#[test]
fn stage_commands() {
    assert_eq!(lugtts(&["tokenize"], "Dr. mukasa").text(), "Dr.\tABBREV\nmukasa\tWORD\n");
    assert_eq!(lugtts(&["normalize"], "Dr. mukasa").text(), "Dr.\tABBREV\tdokita\nmukasa\tWORD\n");
    assert_eq!(lugtts(&["prosody"], "butiko").text(), "'b u . t i . k o [H*] || L-L%\n");
    let pho = lugtts(&["pho"], "butiko");
    assert_eq!(pho.code, 0);
    assert_eq!(parse_pho(pho.text()).unwrap().len(), 7);
    assert_eq!(lugtts(&["phonemize", "--ssml"], "<speak>butiko</speak>").text(), "b u t i k o\n");
}

#[test]
fn input_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("in.txt");
    std::fs::write(&f, "omuntu").unwrap();
    assert_eq!(lugtts(&["phonemize", path_str(&f)], "").text(), "o m u n t u\n");
    let missing = lugtts(&["phonemize", path_str(&dir.path().join("nope.txt"))], "");
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("input"));
}

#[test]
fn usage_and_processing_errors() {
    assert_eq!(lugtts(&["speak"], "").code, 1);
    assert_eq!(lugtts(&[], "").code, 1);
    assert_eq!(lugtts(&["phonemize", "--precision", "sloppy"], "").code, 1);
    assert_eq!(lugtts(&["serve", "--port", "0"], "").code, 1);
    let bad = lugtts(&["phonemize", "--ssml"], "<speak>wa");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("stage parse"), "{}", bad.stderr);
    let help = lugtts(&["--help"], "");
    assert_eq!(help.code, 0);
    assert!(help.text().contains("voice-select-corpus"));
}

#[test]
fn precision_changes_durations() {
    let total = |p: &str| -> u32 {
        parse_pho(lugtts(&["pho", "--precision", p], "omuntu agenda").text()).unwrap().iter().map(|s| s.duration_ms).sum()
    };
    assert!(total("relaxed") < total("normal"));
    assert!(total("normal") < total("precise"));
}

#[test]
fn data_dir_flag() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("lexicon.tsv"), "butiko\tb u . t i . k o:\tNOUN\n").unwrap();
    let o = lugtts(&["phonemize", "--data-dir", path_str(dir.path())], "butiko");
    assert_eq!(o.text(), "b u t i k o:\n");
    std::fs::write(dir.path().join("lexicon.tsv"), "butiko\tb u . X\tNOUN\n").unwrap();
    let o = lugtts(&["phonemize", "--data-dir", path_str(dir.path())], "butiko");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("stage data"), "{}", o.stderr);
}

#[test]
fn synth_writes_the_library_waveform() {
    let o = lugtts(&["synth"], "butiko");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let want = synthesize_text("butiko", synthetic_voice()).unwrap().waveform;
    assert_eq!(wav_from_bytes(&o.stdout).unwrap(), want);

    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("out.wav");
    assert_eq!(lugtts(&["synth", "-o", path_str(&wav)], "butiko").code, 0);
    assert_eq!(read_wav(&wav).unwrap(), want);
    assert_eq!(lugtts(&["synth", "--voice", path_str(&dir.path().join("none"))], "butiko").code, 2);
}

#[test]
fn built_voice_synthesizes_like_the_original() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("voice");
    let built = lugtts(&["voice-build", "--synthetic", "--out", path_str(&out)], "");
    assert_eq!(built.code, 0, "{}", built.stderr);
    let a = lugtts(&["synth", "--voice", path_str(&out)], "omuntu");
    let b = lugtts(&["synth"], "omuntu");
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(lugtts(&["voice-build", "--out", path_str(&out)], "").code, 1);
}

#[test]
fn voice_session_tools() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("session");
    lugtts_core::voicedb::write_synthetic_session(&session, &lugtts_core::data::Resources::bundled().phoneset).unwrap();
    let o = lugtts(&["voice-import", path_str(&session)], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.text().starts_with("syn000\t6\t"), "{}", o.text());

    let out = dir.path().join("voice");
    let o = lugtts(&["voice-build", path_str(&session), "--out", path_str(&out), "--name", "studio"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.text().starts_with("studio\t"));

    let wav = session.join("wav").join("syn000.wav");
    let lab = session.join("lab").join("syn000.lab");
    let f = lugtts(&["voice-features", path_str(&wav), path_str(&lab)], "");
    assert_eq!(f.code, 0, "{}", f.stderr);
    let first: Vec<&str> = f.text().lines().next().unwrap().split('\t').collect();
    assert_eq!(first[0], "<sil>-b+u");
    assert_eq!(first[3].split(' ').count(), 13);

    std::fs::remove_file(session.join("text").join("syn001.txt")).unwrap();
    let o = lugtts(&["voice-import", path_str(&session)], "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("syn001"), "{}", o.stderr);
}

#[test]
fn pitchmarks_of_a_sine() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("sine.wav");
    let s: Vec<i16> = (0..8000).map(|i| (10000.0 * (2.0 * std::f64::consts::PI * 100.0 * i as f64 / 16000.0).sin()) as i16).collect();
    write_wav(&Waveform::new(s), &wav).unwrap();
    let o = lugtts(&["voice-pitchmarks", path_str(&wav)], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let marks: Vec<usize> = o.text().lines().map(|l| l.parse().unwrap()).collect();
    assert!((marks.len() as i64 - 50).abs() <= 1, "{}", marks.len());
    let frames = lugtts(&["voice-pitchmarks", "--frames", path_str(&wav)], "");
    assert!(frames.text().lines().all(|l| l.split('\t').nth(1).unwrap().starts_with("100.") || l.contains("99.")));
}

#[test]
fn corpus_selection() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("candidates.txt");
    std::fs::write(&f, "butiko\n\nbutiko butiko\nomuntu omulungi ennyo nnyo\nkabaka\n").unwrap();
    let o = lugtts(&["voice-select-corpus", path_str(&f), "--max-words", "3"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let ids: Vec<&str> = o.text().lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(ids, ["3", "5"]);
}

#[test]
fn evaluation_commands() {
    let dir = tempfile::tempdir().unwrap();
    let made = lugtts(&["eval-mrt-make", "--items", "4", "--seed", "3"], "");
    assert_eq!(made.code, 0, "{}", made.stderr);
    let session_path = dir.path().join("session.json");
    std::fs::write(&session_path, &made.stdout).unwrap();
    let session: serde_json::Value = serde_json::from_slice(&made.stdout).unwrap();
    let words: Vec<&str> = session["items"].as_array().unwrap().iter().map(|i| i["word"].as_str().unwrap()).collect();
    let mut sheet = String::from("listener,item,answer\n");
    for (i, w) in words.iter().enumerate() {
        sheet.push_str(&format!("A,{},{}\n", i + 1, if i < 3 { w } else { "" }));
    }
    let sheet_path = dir.path().join("mrt.csv");
    std::fs::write(&sheet_path, sheet).unwrap();
    let scored = lugtts(&["eval-mrt-score", path_str(&session_path), path_str(&sheet_path)], "");
    assert_eq!(scored.code, 0, "{}", scored.stderr);
    assert!(scored.text().starts_with("MRT correct: 75.0%"), "{}", scored.text());

    let mos_path = dir.path().join("mos.csv");
    std::fs::write(&mos_path, "listener,sentence,rating\nA,s1,3\nB,s1,4\n").unwrap();
    let json = lugtts(&["eval-mos-score", path_str(&mos_path), "--format", "json"], "");
    let report: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(report["mos_mean"], 3.5);
    std::fs::write(&mos_path, "listener,sentence,rating\nA,s1,9\n").unwrap();
    let bad = lugtts(&["eval-mos-score", path_str(&mos_path)], "");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("eval-mos-score"));
}
