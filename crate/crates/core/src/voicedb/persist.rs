//! Inventory directory: `voice.manifest` (key=value), `units.tsv`,
//! `features.f32` (little-endian, left then right vector per unit) and the
//! source recordings under `wav/`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::{io_err, Unit, VoiceError, VoiceInventory, FEATURE_ORDER};
use crate::audio::{read_wav, write_wav, SAMPLE_RATE};

const FORMAT: &str = "lugtts-voice-1";
const UNITS_HEADER: &str = "id\tphone\ttriphone\tsource\tstart\tend\tduration_ms\tmean_f0\tleft_f0\tright_f0\tpitch_marks";

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn corrupt(msg: impl Into<String>) -> VoiceError {
    VoiceError::CorruptInventory(msg.into())
}

fn safe_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(['/', '\\', '\t', '\n', '\r', '=']) && s != "." && s != ".."
}

pub fn save_inventory(inv: &VoiceInventory, dir: &Path) -> Result<(), VoiceError> {
    let dim = inv.units().first().map_or(FEATURE_ORDER + 1, |u| u.left_features.len());
    let mut units_tsv = String::from(UNITS_HEADER);
    units_tsv.push('\n');
    let mut features = Vec::new();
    for u in inv.units() {
        if u.left_features.len() != dim || u.right_features.len() != dim {
            return Err(corrupt(format!("unit {} has features of the wrong length", u.id)));
        }
        if !safe_name(&u.source) {
            return Err(corrupt(format!("source name {:?} cannot be stored", u.source)));
        }
        let marks: Vec<String> = u.pitch_marks.iter().map(|m| m.to_string()).collect();
        writeln!(
            units_tsv,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            u.id,
            u.phone,
            u.triphone,
            u.source,
            u.start,
            u.end,
            u.duration_ms,
            opt(u.mean_f0),
            opt(u.left_f0),
            opt(u.right_f0),
            if marks.is_empty() { "-".into() } else { marks.join(",") }
        )
        .unwrap();
        for v in u.left_features.iter().chain(&u.right_features) {
            features.extend_from_slice(&v.to_le_bytes());
        }
    }
    let mut manifest = String::new();
    writeln!(manifest, "format={FORMAT}").unwrap();
    writeln!(manifest, "name={}", inv.name).unwrap();
    writeln!(manifest, "sample_rate={SAMPLE_RATE}").unwrap();
    writeln!(manifest, "units={}", inv.units().len()).unwrap();
    writeln!(manifest, "feature_dim={dim}").unwrap();
    writeln!(manifest, "units_sha256={}", sha256_hex(units_tsv.as_bytes())).unwrap();
    writeln!(manifest, "features_sha256={}", sha256_hex(&features)).unwrap();
    for (k, v) in &inv.metadata {
        writeln!(manifest, "meta.{k}={}", v.replace('\n', " ")).unwrap();
    }

    let wav_dir = dir.join("wav");
    std::fs::create_dir_all(&wav_dir).map_err(io_err(&wav_dir))?;
    for (name, wave) in inv.sources() {
        if !safe_name(name) {
            return Err(corrupt(format!("source name {name:?} cannot be stored")));
        }
        write_wav(wave, &wav_dir.join(format!("{name}.wav")))?;
    }
    let write = |file: &str, bytes: &[u8]| {
        let p = dir.join(file);
        std::fs::write(&p, bytes).map_err(io_err(&p))
    };
    write("units.tsv", units_tsv.as_bytes())?;
    write("features.f32", &features)?;
    write("voice.manifest", manifest.as_bytes())
}

fn parse_opt(s: &str) -> Result<Option<f64>, VoiceError> {
    if s == "-" {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(|_| corrupt(format!("bad number {s:?}")))
    }
}

pub fn load_inventory(dir: &Path) -> Result<VoiceInventory, VoiceError> {
    let read = |file: &str| {
        let p = dir.join(file);
        std::fs::read(&p).map_err(|e| corrupt(format!("{}: {e}", p.display())))
    };
    let manifest_bytes = read("voice.manifest")?;
    let manifest = String::from_utf8(manifest_bytes).map_err(|_| corrupt("manifest is not UTF-8"))?;
    let mut keys: BTreeMap<String, String> = BTreeMap::new();
    for line in manifest.lines().filter(|l| !l.trim().is_empty()) {
        let (k, v) = line.split_once('=').ok_or_else(|| corrupt(format!("manifest line {line:?}")))?;
        keys.insert(k.to_string(), v.to_string());
    }
    let key = |k: &str| keys.get(k).cloned().ok_or_else(|| corrupt(format!("manifest lacks {k}")));
    if key("format")? != FORMAT {
        return Err(corrupt("unknown inventory format"));
    }
    if key("sample_rate")? != SAMPLE_RATE.to_string() {
        return Err(corrupt("sample rate is not 16000"));
    }
    let n: usize = key("units")?.parse().map_err(|_| corrupt("bad unit count"))?;
    let dim: usize = key("feature_dim")?.parse().map_err(|_| corrupt("bad feature_dim"))?;

    let units_bytes = read("units.tsv")?;
    let features = read("features.f32")?;
    if sha256_hex(&units_bytes) != key("units_sha256")? {
        return Err(corrupt("units.tsv checksum mismatch"));
    }
    if sha256_hex(&features) != key("features_sha256")? {
        return Err(corrupt("features.f32 checksum mismatch"));
    }
    if features.len() != n * 2 * dim * 4 {
        return Err(corrupt("features.f32 has the wrong size"));
    }
    let floats: Vec<f32> = features.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();

    let text = String::from_utf8(units_bytes).map_err(|_| corrupt("units.tsv is not UTF-8"))?;
    let mut lines = text.lines();
    if lines.next() != Some(UNITS_HEADER) {
        return Err(corrupt("units.tsv header"));
    }
    let mut units = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 11 {
            return Err(corrupt(format!("units.tsv row {}", i + 1)));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| corrupt(format!("bad integer {s:?}")));
        let marks = if f[10] == "-" { Vec::new() } else { f[10].split(',').map(num).collect::<Result<_, _>>()? };
        let base = i * 2 * dim;
        units.push(Unit {
            id: num(f[0])? as u32,
            phone: f[1].to_string(),
            triphone: f[2].to_string(),
            source: f[3].to_string(),
            start: num(f[4])?,
            end: num(f[5])?,
            duration_ms: f[6].parse().map_err(|_| corrupt("bad duration"))?,
            mean_f0: parse_opt(f[7])?,
            left_f0: parse_opt(f[8])?,
            right_f0: parse_opt(f[9])?,
            pitch_marks: marks,
            left_features: floats.get(base..base + dim).ok_or_else(|| corrupt("features"))?.to_vec(),
            right_features: floats.get(base + dim..base + 2 * dim).ok_or_else(|| corrupt("features"))?.to_vec(),
        });
    }
    if units.len() != n {
        return Err(corrupt(format!("expected {n} units, found {}", units.len())));
    }

    let mut sources = BTreeMap::new();
    for u in &units {
        if !sources.contains_key(&u.source) {
            if !safe_name(&u.source) {
                return Err(corrupt(format!("bad source name {:?}", u.source)));
            }
            let w = read_wav(&dir.join("wav").join(format!("{}.wav", u.source)))
                .map_err(|e| corrupt(format!("source {}: {e}", u.source)))?;
            sources.insert(u.source.clone(), w);
        }
    }
    for (i, u) in units.iter().enumerate() {
        let len = sources[&u.source].len();
        let marks_ok = u.pitch_marks.windows(2).all(|w| w[0] < w[1])
            && u.pitch_marks.iter().all(|&m| u.start <= m && m < u.end);
        if u.id as usize != i || u.start > u.end || u.end > len || !marks_ok {
            return Err(corrupt(format!("unit {i} is inconsistent")));
        }
    }
    let metadata = keys
        .iter()
        .filter_map(|(k, v)| k.strip_prefix("meta.").map(|k| (k.to_string(), v.clone())))
        .collect();
    Ok(VoiceInventory::new(key("name")?, metadata, units, sources))
}
