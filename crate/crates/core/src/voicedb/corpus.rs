use std::collections::BTreeSet;

use crate::doc::InputKind;
use crate::pipeline::Engine;
use crate::synth::unit_targets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSentence {
    /// Index into the candidate list.
    pub id: usize,
    pub text: String,
    pub triphones: BTreeSet<String>,
}

/// Greedy set cover: repeatedly takes the set adding the most uncovered
/// elements (earliest on ties) until `max` picks or no set adds anything.
/// Returns the picked indices in order.
pub fn greedy_cover(sets: &[BTreeSet<String>], max: usize) -> Vec<usize> {
    let mut covered: BTreeSet<&String> = BTreeSet::new();
    let mut picked = Vec::new();
    while picked.len() < max {
        let mut best: Option<(usize, usize)> = None;
        for (i, s) in sets.iter().enumerate() {
            if picked.contains(&i) {
                continue;
            }
            let gain = s.iter().filter(|t| !covered.contains(t)).count();
            if gain > 0 && best.is_none_or(|(_, g)| gain > g) {
                best = Some((i, gain));
            }
        }
        let Some((i, _)) = best else { break };
        covered.extend(sets[i].iter());
        picked.push(i);
    }
    picked
}

fn word_count(text: &str) -> usize {
    text.split_whitespace().filter(|w| w.chars().any(char::is_alphanumeric)).count()
}

/// Triphone labels of a sentence as the synthesizer would request them.
pub fn sentence_triphones(text: &str, engine: &Engine) -> Option<BTreeSet<String>> {
    let doc = engine.analyze(text, InputKind::Plain).ok()?;
    let segments: Vec<_> = doc.sentences.iter().flat_map(|s| s.segments.iter().map(|g| g.target.clone())).collect();
    Some(unit_targets(&segments).into_iter().map(|t| t.triphone).collect())
}

/// Picks sentences for phonetic coverage. Candidates over
/// `max_words_per_sentence` words, or that fail to phonemize, are skipped.
pub fn select_corpus(
    candidates: &[String],
    max_sentences: usize,
    max_words_per_sentence: usize,
    engine: &Engine,
) -> Vec<CorpusSentence> {
    let mut pool: Vec<CorpusSentence> = Vec::new();
    for (id, text) in candidates.iter().enumerate() {
        if word_count(text) > max_words_per_sentence {
            continue;
        }
        match sentence_triphones(text, engine) {
            Some(triphones) => pool.push(CorpusSentence { id, text: text.clone(), triphones }),
            None => log::warn!("candidate {id} could not be analysed; skipped"),
        }
    }
    let sets: Vec<BTreeSet<String>> = pool.iter().map(|c| c.triphones.clone()).collect();
    greedy_cover(&sets, max_sentences).into_iter().map(|i| pool[i].clone()).collect()
}
