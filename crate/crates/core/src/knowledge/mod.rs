//! Curated verdicts, theorem tables and stated resolutions, joined with the solver output.
//!
//! The ledger lives in a line-oriented text file (see [`format`]); the built-in copy is
//! compiled into the crate.

pub mod format;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use format::{AuxRecord, ExclusionRecord, FamilyRecord, Key, KnowledgeBase, KnowledgeError, LinkRecord, Verdict};

use crate::chern::resolution::normalize;
use crate::chern::{hilbert_from_resolution, HilbertProfile, ResolutionError, SheafResolution};
use crate::exact::Rat;
use crate::solver::{self, Candidate, MaximalList, Search};

pub const BUILTIN: &str = include_str!("../../data/knowledge.txt");

impl KnowledgeBase {
    pub fn builtin() -> KnowledgeBase {
        KnowledgeBase::parse(BUILTIN).expect("built-in knowledge file is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("n = {0} is outside 1..=3")]
    BadDimension(i64),
    #[error("solver row without a verdict: {0}")]
    MissingVerdict(String),
    #[error("solver row matches several records: {0}")]
    Ambiguous(String),
    #[error("ledger record {0} matches no solver row")]
    Orphan(String),
}

/// A maximal-list row with its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedRow {
    pub case_id: String,
    pub candidate: Candidate,
    pub verdict: Verdict,
    pub description: String,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub n: i64,
    pub rows: Vec<ClassifiedRow>,
    pub search: Search,
}

impl Classification {
    /// Rows with a smooth verdict, in solver order.
    pub fn survivors(&self) -> Vec<&ClassifiedRow> {
        self.rows.iter().filter(|r| r.verdict.is_smooth()).collect()
    }

    /// Surviving rows of one theorem table, e.g. `"n3r5"`.
    pub fn theorem(&self, table: &str) -> Vec<&ClassifiedRow> {
        self.rows.iter().filter(|r| r.verdict.labels().iter().any(|l| l.split('/').next() == Some(table))).collect()
    }
}

/// Value of a key field on a candidate.
pub fn candidate_value(c: &Candidate, name: &str) -> Option<Rat> {
    match name {
        "r" => Some(c.ttype.r.into()),
        "a" => Some(c.ttype.a.into()),
        "b" => Some(c.ttype.b.into()),
        "z" => Some(c.z.into()),
        "e" => Some(c.e.into()),
        _ => c.inv.named().into_iter().find(|(n, _)| *n == name).map(|(_, v)| v),
    }
}

fn key_matches(key: &Key, c: &Candidate) -> bool {
    key.0.iter().all(|(n, v)| candidate_value(c, n).as_ref() == Some(v))
}

fn describe(c: &Candidate) -> String {
    let inv: Vec<String> = c.inv.named().iter().map(|(n, v)| format!("{n}={v}")).collect();
    format!("{} [{}] {} z={} e={}", c.list, c.ttype, inv.join(" "), c.z, c.e)
}

/// Solver output for every maximal list of base-locus dimension `n`.
pub fn search_for(n: i64) -> Result<Search, ClassifyError> {
    Ok(match n {
        1 => solver::search_n1(),
        2 => solver::search_n2(),
        3 => {
            let mut s = solver::search_n3_a4();
            s.extend(solver::search_n3_a5(1));
            s.extend(Search { rows: solver::solve_n3_easy(), rejected: vec![] });
            s
        }
        _ => return Err(ClassifyError::BadDimension(n)),
    })
}

/// Joins the solver rows for `n` with the ledger by invariant key; every row needs exactly one
/// record and every record of those lists exactly one row.
pub fn classify(kb: &KnowledgeBase, n: i64) -> Result<Classification, ClassifyError> {
    let search = search_for(n)?;
    join(kb, n, search)
}

pub fn join(kb: &KnowledgeBase, n: i64, search: Search) -> Result<Classification, ClassifyError> {
    let records: Vec<&ExclusionRecord> = kb.rows.iter().filter(|r| r.list.n() == n).collect();
    let mut used = vec![false; records.len()];
    let mut rows = Vec::with_capacity(search.rows.len());
    for c in &search.rows {
        let hits: Vec<usize> = (0..records.len()).filter(|&i| records[i].list == c.list && key_matches(&records[i].key, c)).collect();
        let i = match hits.as_slice() {
            [] => return Err(ClassifyError::MissingVerdict(describe(c))),
            [i] => *i,
            _ => return Err(ClassifyError::Ambiguous(describe(c))),
        };
        if used[i] {
            return Err(ClassifyError::Ambiguous(format!("{} (record {})", describe(c), records[i].case_id)));
        }
        used[i] = true;
        let rec = records[i];
        rows.push(ClassifiedRow {
            case_id: rec.case_id.clone(),
            candidate: c.clone(),
            verdict: rec.verdict.clone(),
            description: rec.description.clone(),
            citation: rec.citation.clone(),
        });
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(ClassifyError::Orphan(records[i].case_id.clone()));
    }
    Ok(Classification { n, rows, search })
}

/// Surviving types with `r = n + 2`, the quadric rows (`m = 0`) counted once as a family.
pub fn codimension_two_types(classes: &[Classification]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut quadric = false;
    for cl in classes {
        for row in cl.survivors() {
            let t = &row.candidate.ttype;
            if t.r != t.n + 2 {
                continue;
            }
            if t.m == 0 {
                quadric = true;
            } else {
                out.push(row.case_id.clone());
            }
        }
    }
    if quadric {
        out.push("family/m0".into());
    }
    out
}

/// Outcome of one stored resolution or link check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCheck {
    pub id: String,
    pub passed: bool,
    pub computed: Option<HilbertProfile>,
    pub expected: Key,
    pub message: String,
}

fn profile_value(p: &HilbertProfile, name: &str) -> Option<Rat> {
    match name {
        "d" => Some(p.d.clone()),
        "g" => Some(p.g.clone()),
        "chi" | "chiX" => Some(p.chi_x.clone()),
        "chiS" => p.chi_s.clone(),
        _ => None,
    }
}

const PROFILE_FIELDS: [&str; 5] = ["d", "g", "chi", "chiX", "chiS"];

fn check_profile(id: String, res: &SheafResolution, key: &Key) -> ResolutionCheck {
    let expected = Key(key.0.iter().filter(|(n, _)| PROFILE_FIELDS.contains(&n.as_str())).cloned().collect());
    match hilbert_from_resolution(res) {
        Ok(p) => {
            let bad: Vec<String> = expected
                .0
                .iter()
                .filter(|(n, v)| profile_value(&p, n).as_ref() != Some(v))
                .map(|(n, v)| format!("{n}: expected {v}, got {}", profile_value(&p, n).map_or("-".into(), |x| x.to_string())))
                .collect();
            let message = if bad.is_empty() { "ok".to_string() } else { bad.join("; ") };
            ResolutionCheck { id, passed: bad.is_empty(), computed: Some(p), expected, message }
        }
        Err(e) => ResolutionCheck { id, passed: false, computed: None, expected, message: e.to_string() },
    }
}

/// Expands every stored resolution and compares `(d, g, chi)` with the owning record, then
/// checks every link record by formal transport.
pub fn verify_resolutions(kb: &KnowledgeBase) -> Vec<ResolutionCheck> {
    let mut out = Vec::new();
    for row in &kb.rows {
        if let Some(res) = &row.resolution {
            out.push(check_profile(row.case_id.clone(), res, &row.key));
        }
    }
    for aux in &kb.aux {
        out.push(check_profile(aux.id.clone(), &aux.resolution, &aux.key));
    }
    let by_id: BTreeMap<&str, (&SheafResolution, &Key)> = kb
        .rows
        .iter()
        .filter_map(|r| r.resolution.as_ref().map(|res| (r.case_id.as_str(), (res, &r.key))))
        .chain(kb.aux.iter().map(|a| (a.id.as_str(), (&a.resolution, &a.key))))
        .collect();
    for link in &kb.links {
        let id = format!("{} -> {}", link.from, link.to);
        let (Some((src, _)), Some((dst, dst_key))) = (by_id.get(link.from.as_str()), by_id.get(link.to.as_str())) else {
            out.push(ResolutionCheck {
                id,
                passed: false,
                computed: None,
                expected: Key::default(),
                message: "link endpoint without a resolution".into(),
            });
            continue;
        };
        let linked = liaison_resolution(src, link.p, link.q);
        let mut check = check_profile(id, &linked.resolution, dst_key);
        let target = hilbert_from_resolution(dst).ok();
        if check.passed && check.computed != target {
            check.passed = false;
            check.message = "Hilbert profile differs from the stored target resolution".into();
        } else if check.passed {
            let same = normalized(&linked.resolution) == normalized(dst);
            check.message = if same { "ok, identical terms".into() } else { format!("ok, same profile as {}", linked.resolution) };
        }
        out.push(check);
    }
    out
}

fn normalized(res: &SheafResolution) -> SheafResolution {
    let mut r = res.untwisted();
    normalize(&mut r.left);
    normalize(&mut r.right);
    r
}

/// A linked resolution with the hypotheses the transport relies on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedResolution {
    pub resolution: SheafResolution,
    pub assumptions: Vec<String>,
    /// The residual is empty: `X` itself is the complete intersection.
    pub degenerate: bool,
}

/// Formal liaison by a complete intersection `(p, q)`, with `h^1(E(p)) = h^1(E(q)) = 0` carried
/// as unchecked assumptions.
pub fn liaison_resolution(res: &SheafResolution, p: i64, q: i64) -> LinkedResolution {
    let resolution = res.linked(p, q);
    let degenerate = matches!(hilbert_from_resolution(&resolution), Err(ResolutionError::Empty));
    let assumptions = vec![format!("h1(E({p})) = 0 (unchecked)"), format!("h1(E({q})) = 0 (unchecked)")];
    LinkedResolution { resolution, assumptions, degenerate }
}

impl fmt::Display for ResolutionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.id, self.message)
    }
}

/// Tag of the maximal list a case id refers to, e.g. `max/51/viii` -> `51`.
pub fn list_of_case(case_id: &str) -> Option<MaximalList> {
    let mut parts = case_id.split('/');
    match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some("max"), Some(tag), Some(label), None) if !label.is_empty() => MaximalList::from_tag(tag),
        _ => None,
    }
}
