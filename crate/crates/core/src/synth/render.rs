use super::UnitPath;
use crate::audio::{Waveform, SAMPLE_RATE};
use crate::doc::{SegmentTarget, SILENCE};
use crate::voicedb::{Unit, VoiceInventory};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub match_durations: bool,
    pub crossfade_ms: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { match_durations: false, crossfade_ms: 5.0 }
    }
}

fn ms_to_samples(ms: f64) -> usize {
    (ms * SAMPLE_RATE as f64 / 1000.0).round() as usize
}

const FALLBACK_CHUNK: usize = 160;

/// Period boundaries for time scaling: pitch marks inside the slice, with
/// the stretches they do not cover cut into 10 ms chunks.
fn chunk_bounds(unit: &Unit, len: usize) -> Vec<usize> {
    let marks: Vec<usize> = unit.pitch_marks.iter().map(|m| m - unit.start).filter(|&m| m > 0 && m < len).collect();
    let mut b = vec![0];
    for &m in marks.iter().chain(std::iter::once(&len)) {
        let from = *b.last().unwrap();
        b.extend((1..).map(|k| from + k * FALLBACK_CHUNK).take_while(|&x| x + FALLBACK_CHUNK / 2 < m));
        b.push(m);
    }
    b
}

/// Chunk indices in an order that spreads early picks across the unit.
fn spread_order(n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 1u32;
    while order.len() < n {
        // van der Corput sequence in base 2
        let (mut v, mut f, mut j) = (0.0, 0.5, k);
        while j > 0 {
            v += f * (j & 1) as f64;
            j >>= 1;
            f /= 2.0;
        }
        let i = ((v * n as f64) as usize).min(n - 1);
        if !seen[i] {
            seen[i] = true;
            order.push(i);
        }
        k += 1;
    }
    order
}

/// Repeats or drops whole periods, spread evenly, to approach `target`
/// samples.
pub fn scale_to(samples: &[i16], unit: &Unit, target: usize) -> Vec<i16> {
    let len = samples.len();
    if len == 0 || target == len {
        return samples.to_vec();
    }
    let b = chunk_bounds(unit, len);
    let chunks: Vec<&[i16]> = b.windows(2).map(|w| &samples[w[0]..w[1]]).collect();
    let n = chunks.len();
    let order = spread_order(n);
    let mut copies = vec![1usize; n];
    let mut cur = len;
    if target > len {
        'grow: loop {
            for &i in &order {
                let c = chunks[i].len();
                if cur + c / 2 >= target {
                    break 'grow;
                }
                copies[i] += 1;
                cur += c;
            }
        }
    } else {
        for &i in &order {
            let c = chunks[i].len();
            if cur <= target + c / 2 || cur == c {
                continue;
            }
            copies[i] = 0;
            cur -= c;
        }
    }
    chunks.iter().zip(copies).flat_map(|(c, k)| std::iter::repeat_n(*c, k)).flatten().copied().collect()
}

/// Concatenates the chosen units in target order, with silence targets as
/// zeros. Joins between units that are not adjacent in their recording
/// overlap by a linear crossfade; other joins are butt-spliced.
pub fn render(path: &UnitPath, inv: &VoiceInventory, targets: &[SegmentTarget], opts: RenderOptions) -> Waveform {
    let fade = ms_to_samples(opts.crossfade_ms);
    let mut out: Vec<f64> = Vec::new();
    let mut steps = path.steps.iter();
    // previous unit and the length of its piece when the last piece was a unit
    let mut prev: Option<(&Unit, usize)> = None;
    for t in targets {
        if t.phone == SILENCE {
            out.extend(std::iter::repeat_n(0.0, ms_to_samples(t.duration_ms as f64)));
            prev = None;
            continue;
        }
        let Some(step) = steps.next() else { break };
        let unit = inv.unit(step.unit);
        let raw = inv.samples(step.unit);
        let piece = if opts.match_durations { scale_to(raw, unit, ms_to_samples(t.duration_ms as f64)) } else { raw.to_vec() };
        let overlap = match prev {
            Some((p, plen)) if !p.adjoins(unit) => fade.min(plen).min(piece.len()),
            _ => 0,
        };
        let base = out.len() - overlap;
        for k in 0..overlap {
            let w = (k + 1) as f64 / (overlap + 1) as f64;
            out[base + k] = out[base + k] * (1.0 - w) + piece[k] as f64 * w;
        }
        out.extend(piece[overlap..].iter().map(|&s| s as f64));
        prev = Some((unit, piece.len()));
    }
    Waveform::from_f64(&out)
}
