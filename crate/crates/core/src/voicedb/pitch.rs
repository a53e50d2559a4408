use crate::audio::SAMPLE_RATE;

pub const FRAME_LEN: usize = 400;
pub const HOP: usize = 160;
pub const MIN_HZ: f64 = 60.0;
pub const MAX_HZ: f64 = 400.0;
/// Minimum normalized correlation for a voiced frame.
pub const VOICING_THRESHOLD: f64 = 0.3;

/// Frame centre in seconds and its F0, `None` when unvoiced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameF0 {
    pub time_s: f64,
    pub hz: Option<f64>,
}

/// Correlation of the frame at `start` with the same-length window `lag`
/// samples later, shortened only at the end of the signal.
fn nccf(x: &[f64], start: usize, lag: usize) -> f64 {
    let n = FRAME_LEN.min(x.len().saturating_sub(start + lag));
    if n < FRAME_LEN / 2 {
        return 0.0;
    }
    let (a, b) = (&x[start..start + n], &x[start + lag..start + lag + n]);
    let cross: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let ea: f64 = a.iter().map(|x| x * x).sum();
    let eb: f64 = b.iter().map(|x| x * x).sum();
    if ea <= 0.0 || eb <= 0.0 {
        0.0
    } else {
        cross / (ea * eb).sqrt()
    }
}

fn frame_pitch(x: &[f64], start: usize, threshold: f64) -> Option<f64> {
    let min_lag = (SAMPLE_RATE as f64 / MAX_HZ).ceil() as usize;
    let max_lag = (SAMPLE_RATE as f64 / MIN_HZ).floor() as usize;
    let r: Vec<f64> = (min_lag - 1..=max_lag + 1).map(|l| nccf(x, start, l)).collect();
    let at = |lag: usize| r[lag + 1 - min_lag];
    let best = (min_lag..=max_lag).map(at).fold(f64::MIN, f64::max);
    if best < threshold {
        return None;
    }
    // shortest lag with a local peak close to the best avoids octave errors
    let lag = (min_lag..=max_lag).find(|&l| at(l) >= 0.9 * best && at(l) >= at(l - 1) && at(l) >= at(l + 1))?;
    let (y0, y1, y2) = (at(lag - 1), at(lag), at(lag + 1));
    let denom = y0 - 2.0 * y1 + y2;
    let delta = if denom.abs() > 1e-12 { (0.5 * (y0 - y2) / denom).clamp(-0.5, 0.5) } else { 0.0 };
    Some(SAMPLE_RATE as f64 / (lag as f64 + delta))
}

/// F0 per 25 ms frame every 10 ms from normalized cross-correlation over
/// 60 to 400 Hz. A frame is voiced when its correlation peak reaches
/// `threshold`.
pub fn estimate_f0(samples: &[i16], threshold: f64) -> Vec<FrameF0> {
    let x: Vec<f64> = samples.iter().map(|&s| s as f64).collect();
    let mut out = Vec::new();
    let mut start = 0;
    while start + FRAME_LEN <= x.len() {
        out.push(FrameF0 {
            time_s: (start + FRAME_LEN / 2) as f64 / SAMPLE_RATE as f64,
            hz: frame_pitch(&x, start, threshold),
        });
        start += HOP;
    }
    out
}

fn is_rising_zero(s: &[i16], i: usize) -> bool {
    i > 0 && i < s.len() && s[i - 1] < 0 && s[i] >= 0
}

fn nearest_rising_zero(s: &[i16], around: usize, radius: usize) -> Option<usize> {
    (0..=radius).find_map(|d| {
        [around.checked_sub(d), Some(around + d)]
            .into_iter()
            .flatten()
            .find(|&i| is_rising_zero(s, i))
    })
}

/// Places marks one period apart through each voiced region and snaps each
/// to the nearest rising zero crossing (`s[i-1] < 0 <= s[i]`) within half a
/// period. Marks with no crossing nearby are dropped.
pub fn compute_pitch_marks(samples: &[i16], frames: &[FrameF0]) -> Vec<usize> {
    let half_hop = HOP as f64 / 2.0;
    let mut marks: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < frames.len() {
        if frames[i].hz.is_none() {
            i += 1;
            continue;
        }
        let first = i;
        while i < frames.len() && frames[i].hz.is_some() {
            i += 1;
        }
        let last = i - 1;
        let centre = |f: usize| frames[f].time_s * SAMPLE_RATE as f64;
        let region_start = if first == 0 { 0.0 } else { (centre(first) - half_hop).max(0.0) };
        let region_end = if last + 1 == frames.len() { samples.len() as f64 } else { (centre(last) + half_hop).min(samples.len() as f64) };
        let period_at = |pos: f64| {
            let f = (first..=last)
                .min_by(|&a, &b| (centre(a) - pos).abs().total_cmp(&(centre(b) - pos).abs()))
                .unwrap_or(first);
            SAMPLE_RATE as f64 / frames[f].hz.unwrap_or(100.0)
        };
        let mut pos = region_start;
        while pos < region_end {
            let period = period_at(pos);
            let provisional = pos.round() as usize;
            match nearest_rising_zero(samples, provisional, (period / 2.0) as usize) {
                Some(m) if marks.last().is_none_or(|&l| m > l) && (m as f64) < region_end + period / 2.0 => {
                    marks.push(m);
                    pos = m as f64 + period;
                }
                _ => pos += period,
            }
        }
    }
    marks
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn sine(hz: f64, secs: f64, amp: f64) -> Vec<i16> {
        let n = (secs * SAMPLE_RATE as f64) as usize;
        (0..n).map(|i| (amp * (2.0 * std::f64::consts::PI * hz * i as f64 / SAMPLE_RATE as f64).sin()).round() as i16).collect()
    }

    #[test]
    fn sine_f0() {
        for hz in [100.0, 200.0, 150.0] {
            let f = estimate_f0(&sine(hz, 0.5, 10000.0), VOICING_THRESHOLD);
            assert!(!f.is_empty());
            for fr in &f {
                let est = fr.hz.expect("voiced");
                assert!((est - hz).abs() <= 2.0, "{hz}: {est}");
            }
        }
    }

    #[test]
    fn silence_and_noise_unvoiced() {
        assert!(estimate_f0(&vec![0; 4000], VOICING_THRESHOLD).iter().all(|f| f.hz.is_none()));
        for seed in 0..5 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let noise: Vec<i16> = (0..4000).map(|_| rng.random_range(-8000..8000)).collect();
            assert!(estimate_f0(&noise, VOICING_THRESHOLD).iter().all(|f| f.hz.is_none()), "seed {seed}");
        }
        assert!(compute_pitch_marks(&vec![0; 4000], &estimate_f0(&vec![0; 4000], VOICING_THRESHOLD)).is_empty());
    }

    #[test]
    fn marks_on_sine_zero_crossings() {
        for (hz, secs) in [(100.0, 1.0), (200.0, 0.5)] {
            let s = sine(hz, secs, 12000.0);
            let marks = compute_pitch_marks(&s, &estimate_f0(&s, VOICING_THRESHOLD));
            let period = SAMPLE_RATE as f64 / hz;
            let expected = secs * hz;
            assert!((marks.len() as f64 - expected).abs() <= 1.0, "{hz}: {} marks", marks.len());
            for &m in &marks {
                let k = (m as f64 / period).round();
                assert!((m as f64 - k * period).abs() <= 1.0);
                assert!(s[m - 1] < 0 && s[m] >= 0);
            }
            assert!(marks.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
