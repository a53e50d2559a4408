//! The `lugtts` command line.
//!
//! Exit status is 0 on success, 1 for usage errors and 2 when processing
//! fails; in the last case standard error names the failing stage.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use lugtts_core::audio::{read_wav, wav_bytes, SAMPLE_RATE};
use lugtts_core::data::{Resources, DATA_DIR_ENV};
use lugtts_core::doc::InputKind;
use lugtts_core::eval::{
    make_mrt_session, read_mos_responses, read_mrt_sheets, render_report, score_mos, score_mrt, EvalReport, MrtGrid,
    MrtSession, ReportFormat,
};
use lugtts_core::pipeline::Output;
use lugtts_core::prosody::Precision;
use lugtts_core::voicedb::{
    compute_edge_features, compute_pitch_marks, estimate_f0, import_session, load_inventory, parse_labels,
    save_inventory, segment_units, select_corpus, synthetic_voice, validate_session, TimeUnit, VoiceInventory,
    FEATURE_ORDER, SYNTHETIC_VOICE_NAME, VOICING_THRESHOLD,
};
use lugtts_core::{format, Engine, OutputType, Stage};

use crate::server;

#[derive(Parser, Debug)]
#[command(name = "lugtts", version, about = "Luganda text-to-speech")]
struct Cli {
    /// Directory whose data files replace the bundled ones.
    #[arg(long, global = true, value_name = "DIR", env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value = "normal", value_name = "precise|normal|relaxed")]
    precision: Precision,
    /// A saved voice directory, or `lug-synthetic` for the built-in voice.
    /// Repeat to load several voices into the server.
    #[arg(long, global = true, value_name = "NAME|DIR")]
    voice: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TextInput {
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Treat the input as SSML.
    #[arg(long)]
    ssml: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split text into sentences and tokens.
    Tokenize(TextInput),
    /// Tokens with number and abbreviation expansions.
    Normalize(TextInput),
    /// Phones per word.
    Phonemize(TextInput),
    /// Syllables, stress, pitch accents and phrase breaks.
    Prosody(TextInput),
    /// Durations and F0 targets as `.pho`.
    Pho(TextInput),
    /// Synthesize a WAV file.
    Synth {
        #[command(flatten)]
        text: TextInput,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pick recording sentences for triphone coverage. Prints the line
    /// number, triphone count and text of each pick.
    VoiceSelectCorpus {
        /// One candidate sentence per line.
        candidates: PathBuf,
        #[arg(long, default_value_t = 50)]
        max_sentences: usize,
        #[arg(long, default_value_t = 20)]
        max_words: usize,
    },
    /// Check a recording session and summarize its units.
    VoiceImport {
        session: PathBuf,
        #[arg(long, default_value = "seconds")]
        time_unit: TimeUnit,
    },
    /// Pitch marks of a WAV file, one sample index per line.
    VoicePitchmarks {
        wav: PathBuf,
        #[arg(long, default_value_t = VOICING_THRESHOLD)]
        threshold: f64,
        /// Print the frame F0 track instead.
        #[arg(long)]
        frames: bool,
    },
    /// Edge features of every labelled unit in a recording.
    VoiceFeatures {
        wav: PathBuf,
        labels: PathBuf,
        #[arg(long, default_value = "seconds")]
        time_unit: TimeUnit,
        #[arg(long, default_value_t = FEATURE_ORDER)]
        order: usize,
    },
    /// Build and save a voice inventory.
    VoiceBuild {
        /// Session directory with wav/, text/ and lab/.
        #[arg(required_unless_present = "synthetic")]
        session: Option<PathBuf>,
        /// Save the built-in synthetic voice instead.
        #[arg(long, conflicts_with = "session")]
        synthetic: bool,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value = "lug-voice")]
        name: String,
        #[arg(long, default_value = "seconds")]
        time_unit: TimeUnit,
    },
    /// Draw a seeded MRT session as JSON.
    EvalMrtMake {
        /// Word grid, six words per row; the bundled grid when absent.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        items: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Score MRT answer sheets against a session.
    EvalMrtScore {
        session: PathBuf,
        sheets: PathBuf,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Score MOS ratings.
    EvalMosScore {
        sheets: PathBuf,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = server::DEFAULT_PORT, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug)]
struct Failure {
    stage: String,
    message: String,
}

fn failure(stage: impl Into<String>) -> impl FnOnce(&dyn std::fmt::Display) -> Failure {
    let stage = stage.into();
    move |e| Failure { stage, message: e.to_string() }
}

impl From<lugtts_core::PipelineError> for Failure {
    fn from(e: lugtts_core::PipelineError) -> Self {
        Failure { stage: e.stage.to_string(), message: e.message }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { stage: "input".into(), message: format!("{}: {e}", path.display()) })
}

fn read_text(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match input {
        Some(p) if p.as_os_str() != "-" => read_file(p),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| failure("input")(&e))?;
            Ok(s)
        }
    }
}

fn kind(t: &TextInput) -> InputKind {
    if t.ssml {
        InputKind::Ssml
    } else {
        InputKind::Plain
    }
}

/// Text output ends with exactly one newline unless empty.
fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| failure("output")(&e);
    stdout.write_all(text.as_bytes()).map_err(io)?;
    if !text.is_empty() && !text.ends_with('\n') {
        stdout.write_all(b"\n").map_err(io)?;
    }
    Ok(())
}

pub fn load_voice(spec: &str) -> Result<Arc<VoiceInventory>, String> {
    if spec == SYNTHETIC_VOICE_NAME {
        return Ok(Arc::new(synthetic_voice().clone()));
    }
    load_inventory(Path::new(spec)).map(Arc::new).map_err(|e| format!("{spec}: {e}"))
}

fn voices(specs: &[String]) -> Result<Vec<Arc<VoiceInventory>>, Failure> {
    if specs.is_empty() {
        return Ok(vec![Arc::new(synthetic_voice().clone())]);
    }
    specs.iter().map(|s| load_voice(s).map_err(|m| Failure { stage: "voice".into(), message: m })).collect()
}

fn stage_text(engine: &Engine, t: &TextInput, stdin: &mut dyn Read, last: Stage) -> Result<String, Failure> {
    let text = read_text(&t.input, stdin)?;
    let doc = engine.run_to(&text, kind(t), last)?;
    Ok(format::tokens(&doc))
}

fn process_text(engine: &Engine, t: &TextInput, stdin: &mut dyn Read, output: OutputType) -> Result<String, Failure> {
    let text = read_text(&t.input, stdin)?;
    match engine.process(&text, kind(t), output, None)? {
        Output::Text(s) => Ok(s),
        Output::Audio(_) => unreachable!("text output type"),
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let resources = match &cli.data_dir {
        Some(dir) => Resources::from_dir(dir).map_err(|e| failure("data")(&e))?,
        None => Resources::bundled(),
    };
    let engine = Engine::new(resources).with_precision(cli.precision);
    match &cli.command {
        Command::Tokenize(t) => emit(stdout, &stage_text(&engine, t, stdin, Stage::Parse)?),
        Command::Normalize(t) => emit(stdout, &stage_text(&engine, t, stdin, Stage::Normalize)?),
        Command::Phonemize(t) => emit(stdout, &process_text(&engine, t, stdin, OutputType::Phonemes)?),
        Command::Prosody(t) => emit(stdout, &process_text(&engine, t, stdin, OutputType::Allophones)?),
        Command::Pho(t) => emit(stdout, &process_text(&engine, t, stdin, OutputType::AcoustParams)?),
        Command::Synth { text, output } => {
            let voice = voices(&cli.voice)?.remove(0);
            let input = read_text(&text.input, stdin)?;
            let syn = engine.synthesize(&input, kind(text), &voice)?;
            for w in &syn.doc.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let bytes = wav_bytes(&syn.waveform);
            match output {
                Some(p) => std::fs::write(p, bytes).map_err(|e| failure("output")(&e)),
                None => stdout.write_all(&bytes).map_err(|e| failure("output")(&e)),
            }
        }
        Command::VoiceSelectCorpus { candidates, max_sentences, max_words } => {
            let text = read_file(candidates)?;
            let (line_numbers, lines): (Vec<usize>, Vec<String>) = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(n, l)| (n + 1, l.trim().to_string()))
                .unzip();
            let chosen = select_corpus(&lines, *max_sentences, *max_words, &engine);
            let out: String = chosen
                .iter()
                .map(|c| format!("{}\t{}\t{}\n", line_numbers[c.id], c.triphones.len(), c.text))
                .collect();
            let covered: std::collections::BTreeSet<&String> = chosen.iter().flat_map(|c| &c.triphones).collect();
            let _ = writeln!(stderr, "{} sentences cover {} triphones", chosen.len(), covered.len());
            emit(stdout, &out)
        }
        Command::VoiceImport { session, time_unit } => {
            validate_session(session).map_err(|e| failure("voice-import")(&e))?;
            let inv = import_session(session, "import", *time_unit, &engine.resources.phoneset)
                .map_err(|e| failure("voice-import")(&e))?;
            let mut out = String::new();
            for (name, wave) in inv.sources() {
                let n = inv.units().iter().filter(|u| &u.source == name).count();
                out.push_str(&format!("{name}\t{n}\t{:.3}\n", wave.duration_s()));
            }
            out.push_str(&format!("total\t{}\t{}\n", inv.units().len(), inv.phones().count()));
            emit(stdout, &out)
        }
        Command::VoicePitchmarks { wav, threshold, frames } => {
            let wave = read_wav(wav).map_err(|e| failure("voice-pitchmarks")(&e))?;
            let f0 = estimate_f0(&wave.samples, *threshold);
            let out: String = if *frames {
                f0.iter()
                    .map(|f| match f.hz {
                        Some(hz) => format!("{:.3}\t{hz:.1}\n", f.time_s),
                        None => format!("{:.3}\t-\n", f.time_s),
                    })
                    .collect()
            } else {
                compute_pitch_marks(&wave.samples, &f0).iter().map(|m| format!("{m}\n")).collect()
            };
            emit(stdout, &out)
        }
        Command::VoiceFeatures { wav, labels, time_unit, order } => {
            let stage = failure("voice-features");
            let wave = read_wav(wav).map_err(|e| failure("voice-features")(&e))?;
            let track = parse_labels(&read_file(labels)?, *time_unit, &engine.resources.phoneset)
                .map_err(|e| failure("voice-features")(&e))?;
            let source = wav.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let units = segment_units(&wave, &track, &source).map_err(|e| stage(&e))?;
            let join = |v: &[f32]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
            let mut out = String::new();
            for u in &units {
                let (l, r) = compute_edge_features(&wave.samples, u, *order);
                out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", u.triphone, u.start, u.end, join(&l), join(&r)));
            }
            emit(stdout, &out)
        }
        Command::VoiceBuild { session, synthetic, out, name, time_unit } => {
            let inv = if *synthetic {
                synthetic_voice().clone()
            } else {
                let dir = session.as_ref().expect("clap requires a session");
                import_session(dir, name, *time_unit, &engine.resources.phoneset)
                    .map_err(|e| failure("voice-build")(&e))?
            };
            save_inventory(&inv, out).map_err(|e| failure("voice-build")(&e))?;
            emit(stdout, &format!("{}\t{} units\t{}", inv.name, inv.units().len(), out.display()))
        }
        Command::EvalMrtMake { grid, items, seed } => {
            let grid = match grid {
                Some(p) => MrtGrid::parse(&read_file(p)?).map_err(|e| failure("eval-mrt-make")(&e))?,
                None => engine.resources.mrt_grid.clone(),
            };
            let session = make_mrt_session(&grid, *items, *seed).map_err(|e| failure("eval-mrt-make")(&e))?;
            emit(stdout, &serde_json::to_string_pretty(&session).map_err(|e| failure("eval-mrt-make")(&e))?)
        }
        Command::EvalMrtScore { session, sheets, format } => {
            let session: MrtSession =
                serde_json::from_str(&read_file(session)?).map_err(|e| failure("eval-mrt-score")(&e))?;
            let sheets =
                read_mrt_sheets(&read_file(sheets)?, session.items.len()).map_err(|e| failure("eval-mrt-score")(&e))?;
            let report = score_mrt(&session, &sheets).map_err(|e| failure("eval-mrt-score")(&e))?;
            emit(stdout, &render_report(&EvalReport::default().with_mrt(report), *format))
        }
        Command::EvalMosScore { sheets, format } => {
            let responses = read_mos_responses(&read_file(sheets)?).map_err(|e| failure("eval-mos-score")(&e))?;
            let report = score_mos(&responses).map_err(|e| failure("eval-mos-score")(&e))?;
            emit(stdout, &render_report(&EvalReport::default().with_mos(report), *format))
        }
        Command::Serve { port, host } => {
            let app = server::router(engine, voices(&cli.voice)?);
            let rt = tokio::runtime::Runtime::new().map_err(|e| failure("serve")(&e))?;
            rt.block_on(async {
                let listener =
                    tokio::net::TcpListener::bind((host.as_str(), *port)).await.map_err(|e| failure("serve")(&e))?;
                log::info!("listening on {host}:{port}, {SAMPLE_RATE} Hz");
                let _ = writeln!(stderr, "listening on http://{host}:{port}");
                server::serve(listener, app).await.map_err(|e| failure("serve")(&e))
            })
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let informational =
                matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = stdout.write_all(rendered.as_bytes());
                return 0;
            }
            let _ = stderr.write_all(rendered.as_bytes());
            return 1;
        }
    };
    match execute(cli, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error in stage {}: {}", f.stage, f.message);
            2
        }
    }
}
