//! Plain-text square tables shared by the quandle and group file formats.
//!
//! ```text
//! # comment lines start with '#'
//! 3
//! identity 0        (group files only)
//! labels a b c      (optional; rows may then use labels or indices)
//! 0 2 1
//! 2 1 0
//! 1 0 2
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Parse failure with a 1-based source location. `column` counts
/// whitespace-separated tokens, not characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ParsedTable {
    pub size: usize,
    pub rows: Vec<Vec<usize>>,
    pub identity: Option<usize>,
    pub labels: Option<Vec<String>>,
}

pub(crate) fn parse(text: &str, want_identity: bool) -> Result<ParsedTable, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (size_line, size_text) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing size line"))?;
    let size: usize = size_text
        .parse()
        .map_err(|_| ParseError::new(size_line, 1, format!("expected a size, found `{size_text}`")))?;
    if size == 0 {
        return Err(ParseError::new(size_line, 1, "size must be at least 1"));
    }

    let mut identity_token: Option<(usize, String)> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut rows = Vec::with_capacity(size);
    let mut last_line = size_line;

    for (line_no, line) in lines {
        last_line = line_no;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if rows.is_empty() {
            match tokens[0] {
                "identity" => {
                    if !want_identity {
                        return Err(ParseError::new(line_no, 1, "`identity` header is only valid in group files"));
                    }
                    if tokens.len() != 2 {
                        return Err(ParseError::new(line_no, 1, "expected `identity <element>`"));
                    }
                    identity_token = Some((line_no, tokens[1].to_string()));
                    continue;
                }
                "labels" => {
                    if tokens.len() != size + 1 {
                        return Err(ParseError::new(
                            line_no,
                            tokens.len().min(size + 1),
                            format!("expected {size} labels, found {}", tokens.len() - 1),
                        ));
                    }
                    let names: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
                    for (i, name) in names.iter().enumerate() {
                        if names[..i].contains(name) {
                            return Err(ParseError::new(line_no, i + 2, format!("duplicate label `{name}`")));
                        }
                    }
                    labels = Some(names);
                    continue;
                }
                _ => {}
            }
        }
        if rows.len() == size {
            return Err(ParseError::new(line_no, 1, format!("more than {size} table rows")));
        }
        if tokens.len() != size {
            return Err(ParseError::new(
                line_no,
                tokens.len().min(size) + 1,
                format!("expected {size} entries, found {}", tokens.len()),
            ));
        }
        rows.push(tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>());
        // keep the line number next to each row for later error reporting
        rows.last_mut().unwrap().push(line_no.to_string());
    }

    if rows.len() != size {
        return Err(ParseError::new(last_line + 1, 1, format!("expected {size} table rows, found {}", rows.len())));
    }

    let lookup: HashMap<&str, usize> = labels
        .as_ref()
        .map(|ls| ls.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect())
        .unwrap_or_default();
    let resolve = |token: &str, line: usize, column: usize| -> Result<usize, ParseError> {
        if let Some(&i) = lookup.get(token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < size => Ok(i),
            Ok(i) => Err(ParseError::new(line, column, format!("entry {i} out of range 0..{size}"))),
            Err(_) => Err(ParseError::new(line, column, format!("unknown element `{token}`"))),
        }
    };

    let mut numeric = Vec::with_capacity(size);
    for row in &rows {
        let line_no: usize = row[size].parse().unwrap();
        let mut out = Vec::with_capacity(size);
        for (col, tok) in row[..size].iter().enumerate() {
            out.push(resolve(tok, line_no, col + 1)?);
        }
        numeric.push(out);
    }

    let identity = match (want_identity, identity_token) {
        (false, _) => None,
        (true, None) => return Err(ParseError::new(size_line + 1, 1, "missing `identity <element>` header")),
        (true, Some((line, tok))) => Some(resolve(&tok, line, 2)?),
    };

    Ok(ParsedTable { size, rows: numeric, identity, labels })
}

/// Canonical serialization: size line, optional identity line, rows joined
/// by single spaces, trailing newline.
pub(crate) fn serialize(size: usize, entries: &[usize], identity: Option<usize>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{size}");
    if let Some(e) = identity {
        let _ = writeln!(out, "identity {e}");
    }
    for row in entries.chunks(size) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_labels() {
        let text = "# R3\n3\nlabels a b c\n# rows\na c b\nc b a\nb a c\n";
        let t = parse(text, false).unwrap();
        assert_eq!(t.rows, vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]);
        assert_eq!(t.labels.unwrap(), vec!["a", "b", "c"]);
    }

    #[test]
    fn bad_entry_location() {
        let err = parse("2\n0 1\n1 x\n", false).unwrap_err();
        assert_eq!((err.line, err.column), (3, 2));
        let err = parse("2\n0 5\n1 1\n", false).unwrap_err();
        assert_eq!((err.line, err.column), (2, 2));
    }

    #[test]
    fn short_row_and_missing_rows() {
        let err = parse("3\n0 1 2\n0 1\n", false).unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        let err = parse("2\n0 0\n", false).unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn identity_header() {
        let t = parse("2\nidentity 0\n0 1\n1 0\n", true).unwrap();
        assert_eq!(t.identity, Some(0));
        assert!(parse("2\n0 1\n1 0\n", true).is_err());
        assert!(parse("2\nidentity 0\n0 1\n1 0\n", false).is_err());
    }

    #[test]
    fn serialize_normalizes_whitespace() {
        let t = parse("2\n  0    0\n1\t1  \n", false).unwrap();
        let flat: Vec<usize> = t.rows.concat();
        assert_eq!(serialize(2, &flat, None), "2\n0 0\n1 1\n");
    }
}
