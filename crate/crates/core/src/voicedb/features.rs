use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::Unit;
use crate::voicedb::pitch::FRAME_LEN;

/// Cepstral coefficients `c1..cK` followed by log RMS energy.
pub const FEATURE_ORDER: usize = 12;
const FFT_LEN: usize = 512;

fn hann(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    (0..n).map(|i| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos()).collect()
}

fn edge_vector(frame: &[f64], k: usize, planner: &mut FftPlanner<f64>) -> Vec<f32> {
    let w = hann(frame.len());
    let windowed: Vec<f64> = frame.iter().zip(&w).map(|(x, w)| x * w).collect();
    let fft_len = FFT_LEN.max(windowed.len().next_power_of_two());
    let mut buf: Vec<Complex<f64>> = windowed.iter().map(|&x| Complex::new(x, 0.0)).collect();
    buf.resize(fft_len, Complex::new(0.0, 0.0));
    planner.plan_fft_forward(fft_len).process(&mut buf);
    for c in buf.iter_mut() {
        *c = Complex::new((c.norm() + 1e-9).ln(), 0.0);
    }
    planner.plan_fft_inverse(fft_len).process(&mut buf);
    let mut v: Vec<f32> = (1..=k).map(|i| (buf[i].re / fft_len as f64) as f32).collect();
    let rms = (windowed.iter().map(|x| x * x).sum::<f64>() / windowed.len().max(1) as f64).sqrt();
    v.push((rms + 1e-9).ln() as f32);
    v
}

/// Real cepstrum (`k` coefficients) and log energy of Hann-windowed 25 ms
/// frames centred on the unit's start and end. Units shorter than a frame
/// use their whole span for both edges.
pub fn compute_edge_features(samples: &[i16], unit: &Unit, k: usize) -> (Vec<f32>, Vec<f32>) {
    let x: Vec<f64> = samples.iter().map(|&s| s as f64).collect();
    let mut planner = FftPlanner::new();
    if unit.is_empty() {
        return (vec![0.0; k + 1], vec![0.0; k + 1]);
    }
    if unit.len() < FRAME_LEN || x.len() < FRAME_LEN {
        let v = edge_vector(&x[unit.start..unit.end], k, &mut planner);
        return (v.clone(), v);
    }
    let frame_at = |centre: usize| {
        let start = centre.saturating_sub(FRAME_LEN / 2).min(x.len() - FRAME_LEN);
        &x[start..start + FRAME_LEN]
    };
    let left = edge_vector(frame_at(unit.start), k, &mut planner);
    let right = edge_vector(frame_at(unit.end), k, &mut planner);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(start: usize, end: usize) -> Unit {
        Unit {
            id: 0,
            phone: "a".into(),
            triphone: "<sil>-a+<sil>".into(),
            source: "s".into(),
            start,
            end,
            duration_ms: 0.0,
            mean_f0: None,
            left_f0: None,
            right_f0: None,
            pitch_marks: vec![],
            left_features: vec![],
            right_features: vec![],
        }
    }

    fn signal(n: usize, amp: f64) -> Vec<i16> {
        (0..n)
            .map(|i| {
                let t = i as f64 / 16000.0;
                (amp * ((2.0 * std::f64::consts::PI * 150.0 * t).sin() + 0.5 * (2.0 * std::f64::consts::PI * 450.0 * t).sin()))
                    .round() as i16
            })
            .collect()
    }

    #[test]
    fn deterministic_and_shared_boundary() {
        let s = signal(8000, 4000.0);
        let (a, b) = (unit(1000, 3000), unit(3000, 5000));
        let fa = compute_edge_features(&s, &a, FEATURE_ORDER);
        assert_eq!(fa, compute_edge_features(&s, &a, FEATURE_ORDER));
        assert_eq!(fa.0.len(), FEATURE_ORDER + 1);
        assert_eq!(fa.1, compute_edge_features(&s, &b, FEATURE_ORDER).0);
    }

    #[test]
    fn amplitude_only_moves_energy() {
        let quiet = signal(8000, 4000.0);
        let loud: Vec<i16> = quiet.iter().map(|&x| x * 2).collect();
        let u = unit(2000, 6000);
        let (lq, _) = compute_edge_features(&quiet, &u, FEATURE_ORDER);
        let (ll, _) = compute_edge_features(&loud, &u, FEATURE_ORDER);
        for i in 0..FEATURE_ORDER {
            assert!((lq[i] - ll[i]).abs() < 1e-4, "c{}: {} vs {}", i + 1, lq[i], ll[i]);
        }
        assert!((ll[FEATURE_ORDER] - lq[FEATURE_ORDER] - std::f32::consts::LN_2).abs() < 1e-4);
    }

    #[test]
    fn short_units_use_whole_span() {
        let s = signal(1000, 3000.0);
        let (l, r) = compute_edge_features(&s, &unit(100, 300), FEATURE_ORDER);
        assert_eq!(l, r);
    }
}
