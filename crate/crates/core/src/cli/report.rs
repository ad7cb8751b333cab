//! Report types and their markdown, JSON and CSV renderings.

use serde::{Deserialize, Serialize};

use crate::exact::Rat;
use crate::knowledge::Verdict;
use crate::numerology::TransformationType;
use crate::solver::{Candidate, MaximalList};

pub const ENGINE_VERSION: &str = concat!("special-birational ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub command: String,
    pub n: Option<i64>,
    pub engine_version: String,
    /// Further inputs that shaped the report, in flag order.
    pub params: Vec<(String, String)>,
}

impl Header {
    pub fn new(command: &str, n: Option<i64>) -> Header {
        Header { command: command.into(), n, engine_version: ENGINE_VERSION.into(), params: vec![] }
    }

    pub fn param(mut self, name: &str, value: impl ToString) -> Header {
        self.params.push((name.into(), value.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Row label within its maximal list, e.g. `viii`.
    pub label: String,
    pub case_id: Option<String>,
    pub candidate: Candidate,
    pub verdict: Option<Verdict>,
    pub description: Option<String>,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedTuple {
    pub list: MaximalList,
    pub ttype: TransformationType,
    pub tuple: Vec<(String, Rat)>,
    pub constraint: String,
}

/// Rows of a maximal list or of a classification, with the tuples that were killed.
///
/// `visited = rows.len() + rejected_count`; `rejected` is filled only on request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub header: Header,
    pub rows: Vec<ReportRow>,
    pub rejected: Vec<RejectedTuple>,
    pub rejected_count: usize,
    pub visited: usize,
    pub notes: Vec<String>,
}

/// A plain table for the other subcommands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub header: Header,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Report {
    Classification(ClassificationReport),
    Table(TableReport),
}

fn tuple_str(t: &[(String, Rat)]) -> String {
    t.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(" ")
}

fn invariants_str(c: &Candidate) -> String {
    c.inv.named().iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(" ")
}

const CLASS_COLUMNS: [&str; 12] =
    ["section", "list", "label", "r", "a", "b", "z", "e", "invariants", "verdict", "description", "citation"];

impl ClassificationReport {
    /// One flat table: `row` lines, then `rejected` lines.
    pub fn flatten(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut out = Vec::new();
        for r in &self.rows {
            let c = &r.candidate;
            let t = &c.ttype;
            out.push(vec![
                "row".into(),
                c.list.tag().into(),
                r.label.clone(),
                t.r.to_string(),
                t.a.to_string(),
                t.b.to_string(),
                c.z.to_string(),
                c.e.to_string(),
                invariants_str(c),
                r.verdict.as_ref().map_or(String::new(), Verdict::to_string),
                r.description.clone().unwrap_or_default(),
                r.citations.join("; "),
            ]);
        }
        for x in &self.rejected {
            let t = &x.ttype;
            out.push(vec![
                "rejected".into(),
                x.list.tag().into(),
                String::new(),
                t.r.to_string(),
                t.a.to_string(),
                t.b.to_string(),
                String::new(),
                String::new(),
                tuple_str(&x.tuple),
                "rejected".into(),
                String::new(),
                x.constraint.clone(),
            ]);
        }
        (CLASS_COLUMNS.iter().map(|s| s.to_string()).collect(), out)
    }
}

impl Report {
    pub fn header(&self) -> &Header {
        match self {
            Report::Classification(r) => &r.header,
            Report::Table(t) => &t.header,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let (columns, rows) = match self {
            Report::Classification(r) => r.flatten(),
            Report::Table(t) => (t.columns.clone(), t.rows.clone()),
        };
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(vec![]);
        w.write_record(&columns).expect("in-memory write");
        for row in &rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn to_markdown(&self) -> String {
        let h = self.header();
        let mut out = format!("# {}\n\n", h.command);
        out.push_str(&format!("- engine: {}\n", h.engine_version));
        if let Some(n) = h.n {
            out.push_str(&format!("- n: {n}\n"));
        }
        for (k, v) in &h.params {
            out.push_str(&format!("- {k}: {v}\n"));
        }
        out.push('\n');
        match self {
            Report::Table(t) => {
                out.push_str(&markdown_table(&t.columns, &t.rows));
                notes(&mut out, &t.notes);
            }
            Report::Classification(r) => {
                let (columns, rows) = r.flatten();
                let keep: Vec<usize> = (1..columns.len()).collect();
                let pick = |row: &Vec<String>| keep.iter().map(|&i| row[i].clone()).collect::<Vec<_>>();
                let main: Vec<Vec<String>> = rows.iter().filter(|x| x[0] == "row").map(pick).collect();
                let cols: Vec<String> = keep.iter().map(|&i| columns[i].clone()).collect();
                out.push_str(&format!("## rows ({})\n\n", main.len()));
                out.push_str(&markdown_table(&cols, &main));
                out.push_str(&format!("\nvisited {}, rejected {}\n", r.visited, r.rejected_count));
                if !r.rejected.is_empty() {
                    let rej_cols: Vec<String> = ["list", "r", "a", "b", "tuple", "constraint"].map(String::from).to_vec();
                    let rej: Vec<Vec<String>> = r
                        .rejected
                        .iter()
                        .map(|x| {
                            vec![
                                x.list.tag().into(),
                                x.ttype.r.to_string(),
                                x.ttype.a.to_string(),
                                x.ttype.b.to_string(),
                                tuple_str(&x.tuple),
                                x.constraint.clone(),
                            ]
                        })
                        .collect();
                    out.push_str(&format!("\n## rejected ({})\n\n", rej.len()));
                    out.push_str(&markdown_table(&rej_cols, &rej));
                }
                let traced: Vec<&ReportRow> = r.rows.iter().filter(|x| !x.candidate.trace.is_empty()).collect();
                if !traced.is_empty() {
                    out.push_str("\n## traces\n");
                    for row in traced {
                        out.push_str(&format!("\n{} {}:\n", row.candidate.list.tag(), row.label));
                        for s in &row.candidate.trace {
                            out.push_str(&format!("- {}: {}\n", s.constraint, s.values));
                        }
                    }
                }
                notes(&mut out, &r.notes);
            }
        }
        out
    }
}

fn notes(out: &mut String, notes: &[String]) {
    if notes.is_empty() {
        return;
    }
    out.push_str("\n## notes\n\n");
    for n in notes {
        out.push_str(&format!("- {n}\n"));
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

/// Pipe table with every column padded to its widest cell.
pub fn markdown_table(columns: &[String], rows: &[Vec<String>]) -> String {
    let cells: Vec<Vec<String>> = std::iter::once(columns.to_vec())
        .chain(rows.iter().cloned())
        .map(|r| r.iter().map(|c| md_cell(c)).collect())
        .collect();
    let widths: Vec<usize> = (0..columns.len())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0).max(3))
        .collect();
    let line = |r: &[String]| -> String {
        let padded: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(&cells[0]);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
    for r in &cells[1..] {
        out.push_str(&line(r));
    }
    out
}
