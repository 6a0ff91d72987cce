//! The structured result of one command, printed as a table or as JSON.

use std::fmt::Write;

use serde::Serialize;
use taxotopy::iso::canonical_form;
use taxotopy::FinitePoset;

pub const SCHEMA: &str = "taxotopy-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Vec<PosetRecord>,
    pub results: Vec<ResultRecord>,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    /// Wall time of the computation; the only field that varies between runs.
    pub timing_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetRecord {
    pub role: String,
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    /// Isomorphism-invariant code, hex words joined by `.`.
    pub canonical: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub role: String,
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    /// Members of each element's class, when the result is a quotient.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub holds: bool,
    pub detail: String,
}

fn hasse(p: &FinitePoset) -> Vec<[String; 2]> {
    p.covers()
        .into_iter()
        .map(|(a, b)| [p.label(a).to_string(), p.label(b).to_string()])
        .collect()
}

impl PosetRecord {
    pub fn new(role: &str, name: &str, p: &FinitePoset) -> Self {
        let code = canonical_form(p).0;
        PosetRecord {
            role: role.to_string(),
            name: name.to_string(),
            elements: p.labels().to_vec(),
            covers: hasse(p),
            canonical: code
                .iter()
                .map(|w| format!("{w:x}"))
                .collect::<Vec<_>>()
                .join("."),
        }
    }
}

impl ResultRecord {
    pub fn new(role: &str, p: &FinitePoset, classes: Option<Vec<Vec<String>>>) -> Self {
        ResultRecord {
            role: role.to_string(),
            elements: p.labels().to_vec(),
            covers: hasse(p),
            classes,
        }
    }
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            schema: SCHEMA,
            command,
            inputs: Vec::new(),
            results: Vec::new(),
            tables: Vec::new(),
            verdicts: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn verdict(&mut self, claim: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            claim: claim.into(),
            holds,
            detail: detail.into(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for input in &self.inputs {
            let _ = writeln!(
                out,
                "{} {}: {} elements",
                input.role,
                input.name,
                input.elements.len()
            );
        }
        for r in &self.results {
            let noun = if r.classes.is_some() {
                "classes"
            } else {
                "elements"
            };
            let _ = writeln!(out, "{}: {} {noun}", r.role, r.elements.len());
            match &r.classes {
                Some(classes) => {
                    let width = r
                        .elements
                        .iter()
                        .map(|e| e.chars().count())
                        .max()
                        .unwrap_or(0);
                    for (e, members) in r.elements.iter().zip(classes) {
                        let pad = width - e.chars().count();
                        let _ =
                            writeln!(out, "  {e}{} = {{{}}}", " ".repeat(pad), members.join(", "));
                    }
                }
                None => {
                    let _ = writeln!(out, "  elements: {}", r.elements.join(" "));
                }
            }
            if !r.covers.is_empty() {
                let edges: Vec<String> =
                    r.covers.iter().map(|[a, b]| format!("{a} < {b}")).collect();
                let _ = writeln!(out, "  covers: {}", edges.join(", "));
            }
        }
        for t in &self.tables {
            let _ = writeln!(out, "{} ({} rows)", t.name, t.rows.len());
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for row in &t.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                format!("  {}", padded.join("  ").trim_end())
            };
            let _ = writeln!(out, "{}", line(&t.columns));
            for row in &t.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        for v in &self.verdicts {
            let mark = if v.holds { "holds" } else { "FAILS" };
            if v.detail.is_empty() {
                let _ = writeln!(out, "{mark}: {}", v.claim);
            } else {
                let _ = writeln!(out, "{mark}: {} ({})", v.claim, v.detail);
            }
        }
        out
    }
}
