//! The line-oriented poset file format.
//!
//! ```text
//! # comments run to end of line
//! name: diamond
//! elements: bot a b top
//! covers:
//! bot < a
//! bot < b
//! a < top
//! b < top
//! ```
//!
//! A cover line may chain several relations, as in `bot < a < top`.

use taxotopy::{Error, FinitePoset};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed poset file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetFile {
    pub name: String,
    pub poset: FinitePoset,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// 1-based column of `part` inside `line`; `part` must be a subslice of it.
fn column_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

pub fn parse(text: &str) -> Result<PosetFile, ParseError> {
    let mut name = None;
    let mut elements: Option<(usize, Vec<String>)> = None;
    let mut covers: Vec<(usize, usize, String, String)> = Vec::new();
    let mut in_covers = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let key_trim = key.trim();
            match key_trim {
                "name" => {
                    name = Some(value.trim().to_string());
                    in_covers = false;
                    continue;
                }
                "elements" => {
                    if elements.is_some() {
                        return Err(err(
                            lineno,
                            column_of(raw, key_trim),
                            "duplicate `elements:` line",
                        ));
                    }
                    let labels: Vec<String> =
                        value.split_whitespace().map(str::to_string).collect();
                    if labels.iter().any(|l| l == "<") {
                        return Err(err(
                            lineno,
                            column_of(raw, key_trim),
                            "`<` is not a valid label",
                        ));
                    }
                    elements = Some((lineno, labels));
                    in_covers = false;
                    continue;
                }
                "covers" => {
                    if !value.trim().is_empty() {
                        let v = value.trim();
                        return Err(err(
                            lineno,
                            column_of(raw, v),
                            "cover relations go on the lines after `covers:`",
                        ));
                    }
                    in_covers = true;
                    continue;
                }
                _ if !in_covers => {
                    return Err(err(
                        lineno,
                        column_of(raw, key_trim),
                        format!("unknown key `{key_trim}`"),
                    ));
                }
                _ => {}
            }
        }
        if !in_covers {
            let t = line.trim();
            return Err(err(
                lineno,
                column_of(raw, t),
                "expected `name:`, `elements:` or `covers:`",
            ));
        }
        let parts: Vec<&str> = line.split('<').collect();
        if parts.len() < 2 {
            let t = line.trim();
            return Err(err(
                lineno,
                column_of(raw, t),
                "expected a cover line `a < b`",
            ));
        }
        let mut labels = Vec::new();
        for part in &parts {
            let t = part.trim();
            if t.is_empty() || t.split_whitespace().count() != 1 {
                let col = if t.is_empty() {
                    column_of(raw, part)
                } else {
                    column_of(raw, t)
                };
                return Err(err(
                    lineno,
                    col,
                    "expected exactly one label between `<` signs",
                ));
            }
            labels.push((column_of(raw, t), t.to_string()));
        }
        for w in labels.windows(2) {
            covers.push((lineno, w[0].0, w[0].1.clone(), w[1].1.clone()));
        }
    }

    let Some((elements_line, labels)) = elements else {
        return Err(err(
            text.lines().count().max(1),
            1,
            "missing `elements:` line",
        ));
    };
    if labels.is_empty() {
        return Err(err(elements_line, 1, "a poset needs at least one element"));
    }
    for (j, l) in labels.iter().enumerate() {
        if labels[..j].contains(l) {
            return Err(err(
                elements_line,
                1,
                format!("duplicate element label `{l}`"),
            ));
        }
    }
    for (lineno, col, a, b) in &covers {
        for l in [a, b] {
            if !labels.contains(l) {
                return Err(err(*lineno, *col, format!("unknown element label `{l}`")));
            }
        }
    }
    let pairs: Vec<(&str, &str)> = covers
        .iter()
        .map(|(_, _, a, b)| (a.as_str(), b.as_str()))
        .collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let poset = FinitePoset::from_covers(&refs, &pairs).map_err(|e| match e {
        Error::Cycle(l) => {
            let (lineno, col) = covers
                .iter()
                .find(|(_, _, a, b)| *a == l || *b == l)
                .map(|(n, c, _, _)| (*n, *c))
                .unwrap_or((elements_line, 1));
            err(
                lineno,
                col,
                format!("cover relation contains a cycle through `{l}`"),
            )
        }
        other => err(elements_line, 1, other.to_string()),
    })?;
    Ok(PosetFile {
        name: name.unwrap_or_else(|| "P".to_string()),
        poset,
    })
}

/// Writes `p` with its Hasse edges in index order.
pub fn print(name: &str, p: &FinitePoset) -> String {
    let mut out = format!(
        "name: {name}\nelements: {}\ncovers:\n",
        p.labels().join(" ")
    );
    for (a, b) in p.covers() {
        out.push_str(&format!("{} < {}\n", p.label(a), p.label(b)));
    }
    out
}

/// The canonical spelling of a poset file: parse then print.
pub fn normalize(text: &str) -> Result<String, ParseError> {
    let f = parse(text)?;
    Ok(print(&f.name, &f.poset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use taxotopy::catalog;

    #[test]
    fn singleton() {
        let f = parse("elements: a\ncovers:").unwrap();
        assert_eq!(
            f.poset,
            FinitePoset::from_covers::<&str>(&["a"], &[]).unwrap()
        );
        assert_eq!(f.name, "P");
    }

    #[test]
    fn diamond_round_trips() {
        let d = catalog("diamond").unwrap();
        let text = print("diamond", &d);
        let f = parse(&text).unwrap();
        assert_eq!(f.poset, d);
        assert_eq!(print(&f.name, &f.poset), text);
    }

    #[test]
    fn chained_covers_and_comments() {
        let f = parse("# a chain\nname: c\nelements: x y z\ncovers:\n  x < y < z  # all of it\n")
            .unwrap();
        assert_eq!(f.poset.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(
            normalize("elements: x y z\ncovers:\nx<y<z").unwrap(),
            "name: P\nelements: x y z\ncovers:\nx < y\ny < z\n"
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("elements: a b\ncovers:\na < c\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        assert!(e.message.contains("`c`"));
        let e = parse("elements: a b\ncovers:\na < b\n  b < a\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("cycle"));
        let e = parse("elements: a\ncovers:\n  a <\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 6));
        let e = parse("nme: x\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert!(parse("name: x\n").unwrap_err().message.contains("elements"));
    }
}
