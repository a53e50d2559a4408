//! SSML subset: `speak`, `s`, `break`, `say-as` and `emphasis`. Other
//! elements are dropped (their text is kept) with a warning.

use quick_xml::escape::resolve_predefined_entity;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::tokenize::{split_sentences, tokenize_with_trailing};
use super::FrontendError;
use crate::doc::{DirectiveKind, InputKind, MarkupDirective, Sentence, UtteranceDoc};

const SAY_AS_TYPES: [&str; 3] = ["cardinal", "ordinal", "telephone"];

/// A markup element located in the extracted text by byte offsets.
#[derive(Debug)]
struct Marker {
    kind: DirectiveKind,
    value: String,
    start: usize,
    end: usize,
}

fn attr(e: &BytesStart<'_>, name: &str) -> Result<Option<String>, FrontendError> {
    for a in e.attributes() {
        let a = a.map_err(|err| FrontendError::MalformedMarkup(err.to_string()))?;
        if a.key.local_name().as_ref() == name.as_bytes() {
            let v = a
                .unescape_value()
                .map_err(|err| FrontendError::MalformedMarkup(err.to_string()))?;
            return Ok(Some(v.into_owned()));
        }
    }
    Ok(None)
}

fn local(e: &BytesStart<'_>) -> String {
    String::from_utf8_lossy(e.local_name().as_ref()).into_owned()
}

/// Sentence elements imply a word boundary.
fn separate(text: &mut String) {
    if text.chars().next_back().is_some_and(|c| !c.is_whitespace()) {
        text.push(' ');
    }
}

pub fn parse_ssml_subset(xml: &str) -> Result<UtteranceDoc, FrontendError> {
    let malformed = |e: &dyn std::fmt::Display| FrontendError::MalformedMarkup(e.to_string());
    let mut reader = Reader::from_str(xml);
    let mut text = String::new();
    let mut markers: Vec<Marker> = Vec::new();
    let mut forced: Vec<usize> = Vec::new();
    let mut warnings = Vec::new();
    // (element name, index of an open marker)
    let mut stack: Vec<(String, Option<usize>)> = Vec::new();
    let mut seen_root = false;
    let mut root_closed = false;

    loop {
        let event = reader.read_event().map_err(|e| malformed(&e))?;
        match event {
            Event::Start(ref e) | Event::Empty(ref e) => {
                let empty = matches!(event, Event::Empty(_));
                let name = local(e);
                if !seen_root {
                    if name != "speak" {
                        return Err(FrontendError::MalformedMarkup(format!(
                            "root element is <{name}>, expected <speak>"
                        )));
                    }
                    seen_root = true;
                } else if stack.is_empty() {
                    return Err(FrontendError::MalformedMarkup("content after </speak>".into()));
                }
                if name == "s" {
                    separate(&mut text);
                }
                let pos = text.len();
                let mut open = None;
                match name.as_str() {
                    "speak" if stack.is_empty() => {}
                    "s" => forced.push(pos),
                    "break" => {
                        let value = match (attr(e, "strength")?, attr(e, "time")?) {
                            (Some(s), _) => s,
                            (None, Some(t)) => t,
                            (None, None) => "medium".into(),
                        };
                        markers.push(Marker { kind: DirectiveKind::Break, value, start: pos, end: pos });
                    }
                    "say-as" => match attr(e, "interpret-as")? {
                        Some(v) if SAY_AS_TYPES.contains(&v.as_str()) => {
                            markers.push(Marker { kind: DirectiveKind::SayAs, value: v, start: pos, end: pos });
                            open = Some(markers.len() - 1);
                        }
                        other => warnings.push(format!(
                            "say-as interpret-as={:?} is not supported; content read as plain text",
                            other.unwrap_or_default()
                        )),
                    },
                    "emphasis" => {
                        let level = attr(e, "level")?.unwrap_or_else(|| "moderate".into());
                        markers.push(Marker { kind: DirectiveKind::Emphasis, value: level, start: pos, end: pos });
                        open = Some(markers.len() - 1);
                    }
                    other => warnings.push(format!("skipped unknown element <{other}>")),
                }
                if !empty {
                    stack.push((name, open));
                } else if name == "s" {
                    forced.push(pos);
                } else if stack.is_empty() {
                    root_closed = true;
                }
            }
            Event::End(_) => {
                let (name, open) = stack.pop().ok_or_else(|| FrontendError::MalformedMarkup("unbalanced end tag".into()))?;
                if let Some(i) = open {
                    markers[i].end = text.len();
                }
                if name == "s" {
                    separate(&mut text);
                    forced.push(text.len());
                }
                if stack.is_empty() {
                    root_closed = true;
                }
            }
            Event::Text(t) => {
                if !stack.is_empty() {
                    text.push_str(&t.xml_content().map_err(|e| malformed(&e))?);
                } else if !t.decode().map_err(|e| malformed(&e))?.trim().is_empty() {
                    return Err(FrontendError::MalformedMarkup("text outside <speak>".into()));
                }
            }
            Event::CData(t) => {
                if stack.is_empty() {
                    return Err(FrontendError::MalformedMarkup("CDATA outside <speak>".into()));
                }
                text.push_str(&t.decode().map_err(|e| malformed(&e))?);
            }
            Event::GeneralRef(r) => {
                if stack.is_empty() {
                    return Err(FrontendError::MalformedMarkup("reference outside <speak>".into()));
                }
                if let Some(c) = r.resolve_char_ref().map_err(|e| malformed(&e))? {
                    text.push(c);
                } else {
                    let name = r.decode().map_err(|e| malformed(&e))?;
                    let resolved = resolve_predefined_entity(&name)
                        .ok_or_else(|| FrontendError::MalformedMarkup(format!("unknown entity &{name};")))?;
                    text.push_str(resolved);
                }
            }
            Event::Eof => break,
            Event::Comment(_) | Event::Decl(_) | Event::PI(_) | Event::DocType(_) => {}
        }
    }
    if !seen_root {
        return Err(FrontendError::MalformedMarkup("no <speak> root element".into()));
    }
    if !stack.is_empty() || !root_closed {
        return Err(FrontendError::MalformedMarkup("unclosed element".into()));
    }

    let (tokens, trailing_ws) = tokenize_with_trailing(&text);
    let mut sentences: Vec<Sentence> = split_sentences(tokens, &forced).into_iter().map(Sentence::new).collect();
    for m in markers {
        attach_marker(&mut sentences, &m, &mut warnings);
    }
    Ok(UtteranceDoc {
        sentences,
        source_text: text,
        input_kind: InputKind::Ssml,
        trailing_ws,
        warnings,
    })
}

fn attach_marker(sentences: &mut [Sentence], m: &Marker, warnings: &mut Vec<String>) {
    if m.kind == DirectiveKind::Break {
        // anchored on the last token that ends at or before the break
        let mut found = None;
        for (si, s) in sentences.iter().enumerate() {
            for (ti, t) in s.tokens.iter().enumerate() {
                if t.span.1 <= m.start {
                    found = Some((si, ti));
                }
            }
        }
        match found {
            Some((si, ti)) => sentences[si].directives.push(MarkupDirective {
                kind: m.kind,
                value: m.value.clone(),
                anchor: (ti, ti),
            }),
            None => warnings.push("break before any text ignored".into()),
        }
        return;
    }
    let mut attached = false;
    for s in sentences.iter_mut() {
        let hits: Vec<usize> = s
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| t.span.0 < m.end && t.span.1 > m.start)
            .map(|(i, _)| i)
            .collect();
        if let (Some(&first), Some(&last)) = (hits.first(), hits.last()) {
            s.directives.push(MarkupDirective {
                kind: m.kind,
                value: m.value.clone(),
                anchor: (first, last),
            });
            attached = true;
        }
    }
    if !attached {
        warnings.push(format!("empty <{}> ignored", directive_element(m.kind)));
    }
}

fn directive_element(kind: DirectiveKind) -> &'static str {
    match kind {
        DirectiveKind::Break => "break",
        DirectiveKind::SayAs => "say-as",
        DirectiveKind::Emphasis => "emphasis",
    }
}
