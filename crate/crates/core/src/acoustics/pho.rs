use super::AcousticsError;
use crate::doc::{F0Target, SegmentTarget};

fn format_hz(hz: f64) -> String {
    let s = format!("{hz:.1}");
    match s.strip_suffix(".0") {
        Some(int) => int.to_string(),
        None => s,
    }
}

/// One line per segment: `phone duration [percent hz]...`, newline
/// terminated.
pub fn emit_pho(segments: &[SegmentTarget]) -> String {
    let mut out = String::new();
    for seg in segments {
        out.push_str(&seg.phone);
        out.push(' ');
        out.push_str(&seg.duration_ms.to_string());
        for t in &seg.f0_targets {
            out.push_str(&format!(" {} {}", t.percent, format_hz(t.hz)));
        }
        out.push('\n');
    }
    out
}

/// Inverse of [`emit_pho`]. Blank lines and `;` comments are skipped.
pub fn parse_pho(text: &str) -> Result<Vec<SegmentTarget>, AcousticsError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        let bad = |reason: String| AcousticsError::PhoSyntax { line: i + 1, reason };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 {
            return Err(bad("expected phone and duration".into()));
        }
        let duration_ms: u32 = fields[1].parse().map_err(|_| bad(format!("bad duration {:?}", fields[1])))?;
        if duration_ms == 0 {
            return Err(bad("duration must be at least 1 ms".into()));
        }
        let pairs = &fields[2..];
        if !pairs.len().is_multiple_of(2) {
            return Err(bad("F0 targets must come in percent/Hz pairs".into()));
        }
        let mut f0_targets: Vec<F0Target> = Vec::with_capacity(pairs.len() / 2);
        for p in pairs.chunks(2) {
            let percent: u8 = p[0].parse().ok().filter(|v| *v <= 100).ok_or_else(|| bad(format!("bad percent {:?}", p[0])))?;
            let hz: f64 = p[1].parse().ok().filter(|v: &f64| v.is_finite() && *v > 0.0).ok_or_else(|| bad(format!("bad frequency {:?}", p[1])))?;
            if f0_targets.last().is_some_and(|t| t.percent >= percent) {
                return Err(bad("percents must increase".into()));
            }
            f0_targets.push(F0Target { percent, hz });
        }
        out.push(SegmentTarget { phone: fields[0].to_string(), duration_ms, f0_targets });
    }
    Ok(out)
}
