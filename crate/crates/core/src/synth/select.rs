use thiserror::Error;

use crate::doc::{SegmentTarget, SILENCE};
use crate::voicedb::{triphone_label, Unit, VoiceInventory};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("no unit for phone {0:?}")]
    MissingPhone(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostWeights {
    pub triphone_mismatch: f64,
    pub phone_fallback: f64,
    /// Per unit of `|ln(unit / target duration)|`.
    pub duration: f64,
    /// Per Hz.
    pub f0: f64,
    pub join_spectral: f64,
    /// Per Hz.
    pub join_f0: f64,
}

impl Default for CostWeights {
    fn default() -> Self {
        CostWeights { triphone_mismatch: 10.0, phone_fallback: 20.0, duration: 5.0, f0: 0.05, join_spectral: 1.0, join_f0: 0.02 }
    }
}

impl CostWeights {
    pub fn scaled(self, c: f64) -> Self {
        CostWeights {
            triphone_mismatch: self.triphone_mismatch * c,
            phone_fallback: self.phone_fallback * c,
            duration: self.duration * c,
            f0: self.f0 * c,
            join_spectral: self.join_spectral * c,
            join_f0: self.join_f0 * c,
        }
    }
}

/// What the synthesizer asks of one non-silent segment.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitTarget {
    pub phone: String,
    pub triphone: String,
    pub duration_ms: f64,
    /// Mean of the segment's F0 targets, if it has any.
    pub f0_hz: Option<f64>,
}

/// One target per non-silent segment. Neighbours across a pause or the
/// utterance edge are `<sil>`.
pub fn unit_targets(segments: &[SegmentTarget]) -> Vec<UnitTarget> {
    let phone_at = |i: Option<usize>| i.and_then(|i| segments.get(i)).map(|s| s.phone.as_str());
    segments
        .iter()
        .enumerate()
        .filter(|(_, s)| s.phone != SILENCE)
        .map(|(i, s)| UnitTarget {
            phone: s.phone.clone(),
            triphone: triphone_label(phone_at(i.checked_sub(1)), &s.phone, phone_at(Some(i + 1))),
            duration_ms: s.duration_ms as f64,
            f0_hz: (!s.f0_targets.is_empty())
                .then(|| s.f0_targets.iter().map(|t| t.hz).sum::<f64>() / s.f0_targets.len() as f64),
        })
        .collect()
}

pub fn target_cost(target: &UnitTarget, unit: &Unit, fallback: bool, w: &CostWeights) -> f64 {
    let mut c = 0.0;
    if unit.triphone != target.triphone {
        c += w.triphone_mismatch;
    }
    if fallback {
        c += w.phone_fallback;
    }
    if unit.duration_ms > 0.0 && target.duration_ms > 0.0 {
        c += w.duration * (unit.duration_ms / target.duration_ms).ln().abs();
    }
    if let (Some(u), Some(t)) = (unit.mean_f0, target.f0_hz) {
        c += w.f0 * (u - t).abs();
    }
    c
}

/// Zero for units that are adjacent in the same recording.
pub fn join_cost(a: &Unit, b: &Unit, w: &CostWeights) -> f64 {
    if a.adjoins(b) {
        return 0.0;
    }
    let dist: f64 = a
        .right_features
        .iter()
        .zip(&b.left_features)
        .map(|(x, y)| (*x as f64 - *y as f64).powi(2))
        .sum::<f64>()
        .sqrt();
    let f0 = match (a.right_f0, b.left_f0) {
        (Some(x), Some(y)) => (x - y).abs(),
        _ => 0.0,
    };
    w.join_spectral * dist + w.join_f0 * f0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathStep {
    pub unit: u32,
    pub target_cost: f64,
    /// Join from the previous step; zero for the first.
    pub join_cost: f64,
}

/// The chosen units. `total_cost` accumulates left to right as
/// `((t0 + j1) + t1) + j2 + ...`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UnitPath {
    pub steps: Vec<PathStep>,
    pub total_cost: f64,
}

impl UnitPath {
    pub fn unit_ids(&self) -> Vec<u32> {
        self.steps.iter().map(|s| s.unit).collect()
    }
}

/// Candidates: units with the target's triphone, otherwise every unit of
/// its phone at the fallback penalty. Viterbi finds the cheapest path; on
/// equal cost the lower unit id wins.
pub fn select_units(targets: &[UnitTarget], inv: &VoiceInventory, w: &CostWeights) -> Result<UnitPath, SynthError> {
    let mut cands: Vec<Vec<(u32, f64)>> = Vec::with_capacity(targets.len());
    for t in targets {
        let exact = inv.with_triphone(&t.triphone);
        let (ids, fallback) = if exact.is_empty() { (inv.with_phone(&t.phone), true) } else { (exact, false) };
        if ids.is_empty() {
            return Err(SynthError::MissingPhone(t.phone.clone()));
        }
        let mut ids = ids.to_vec();
        ids.sort_unstable();
        cands.push(ids.into_iter().map(|id| (id, target_cost(t, inv.unit(id), fallback, w))).collect());
    }
    if cands.is_empty() {
        return Ok(UnitPath::default());
    }
    // cost[j] for the current column, back[t][j] = best predecessor index
    let mut cost: Vec<f64> = cands[0].iter().map(|&(_, tc)| tc).collect();
    let mut back: Vec<Vec<usize>> = vec![Vec::new()];
    for t in 1..cands.len() {
        let mut next = Vec::with_capacity(cands[t].len());
        let mut ptr = Vec::with_capacity(cands[t].len());
        for &(id, tc) in &cands[t] {
            let u = inv.unit(id);
            let mut best = (f64::INFINITY, 0usize);
            for (i, &(pid, _)) in cands[t - 1].iter().enumerate() {
                let c = cost[i] + join_cost(inv.unit(pid), u, w);
                if c < best.0 {
                    best = (c, i);
                }
            }
            next.push(best.0 + tc);
            ptr.push(best.1);
        }
        cost = next;
        back.push(ptr);
    }
    let mut j = 0;
    for (i, &c) in cost.iter().enumerate() {
        if c < cost[j] {
            j = i;
        }
    }
    let total_cost = cost[j];
    let mut idx = vec![0; cands.len()];
    for t in (0..cands.len()).rev() {
        idx[t] = j;
        if t > 0 {
            j = back[t][j];
        }
    }
    let mut steps = Vec::with_capacity(cands.len());
    for t in 0..cands.len() {
        let (id, tc) = cands[t][idx[t]];
        let jc = if t == 0 { 0.0 } else { join_cost(inv.unit(cands[t - 1][idx[t - 1]].0), inv.unit(id), w) };
        steps.push(PathStep { unit: id, target_cost: tc, join_cost: jc });
    }
    Ok(UnitPath { steps, total_cost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voicedb::synthetic_voice;

    fn target(phone: &str, tri: &str) -> UnitTarget {
        UnitTarget { phone: phone.into(), triphone: tri.into(), duration_ms: 80.0, f0_hz: None }
    }

    #[test]
    fn contiguous_butiko() {
        let inv = synthetic_voice();
        let tri = ["<sil>-b+u", "b-u+t", "u-t+i", "t-i+k", "i-k+o", "k-o+<sil>"];
        let phones = ["b", "u", "t", "i", "k", "o"];
        let ts: Vec<_> = phones.iter().zip(tri).map(|(p, t)| target(p, t)).collect();
        let path = select_units(&ts, inv, &CostWeights::default()).unwrap();
        assert_eq!(path.steps.len(), 6);
        assert!(path.steps.iter().all(|s| s.join_cost == 0.0));
        let labels: Vec<&str> = path.steps.iter().map(|s| inv.unit(s.unit).triphone.as_str()).collect();
        assert_eq!(labels, tri);
        let sum = path.steps.iter().fold(0.0, |acc, s| acc + s.join_cost + s.target_cost);
        assert_eq!(sum, path.total_cost);
    }

    #[test]
    fn missing_phone_and_fallback() {
        let inv = synthetic_voice();
        assert_eq!(select_units(&[target("h", "<sil>-h+<sil>")], inv, &CostWeights::default()), Err(SynthError::MissingPhone("h".into())));
        let p = select_units(&[target("b", "x-b+y")], inv, &CostWeights::default()).unwrap();
        assert!(p.total_cost >= 30.0);
        assert!(select_units(&[], inv, &CostWeights::default()).unwrap().steps.is_empty());
    }

    #[test]
    fn targets_from_segments() {
        let segs = vec![SegmentTarget::new("b", 60), SegmentTarget::new("a", 80), SegmentTarget::new("_", 100), SegmentTarget::new("k", 60)];
        let t = unit_targets(&segs);
        let tri: Vec<&str> = t.iter().map(|t| t.triphone.as_str()).collect();
        assert_eq!(tri, ["<sil>-b+a", "b-a+<sil>", "<sil>-k+<sil>"]);
    }
}
