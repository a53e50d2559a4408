/// A non-comment, non-blank line of a tab-separated data file.
pub(crate) struct Row<'a> {
    pub line: usize,
    pub fields: Vec<&'a str>,
}

/// Iterates the data rows of a TSV file. Lines starting with `#` and blank
/// lines are skipped; line numbers are 1-based.
pub(crate) fn rows(text: &str) -> impl Iterator<Item = Row<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            return None;
        }
        Some(Row {
            line: i + 1,
            fields: line.split('\t').map(str::trim).collect(),
        })
    })
}
