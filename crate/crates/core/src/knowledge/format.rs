//! Line-oriented ledger format.
//!
//! ```text
//! version 1
//! row    <case> | <verdict> | <key> | <resolution or -> | <description> | <citation>
//! aux    <id> | <owner case> | <key> | <resolution> | <citation>
//! link   <from> -> <to> | <p>,<q> | <citation>
//! family <id> | <condition> | <description> | <citation>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::chern::SheafResolution;
use crate::exact::Rat;
use crate::solver::MaximalList;

pub const SUPPORTED_VERSION: u32 = 1;

pub const KEY_FIELDS: [&str; 13] = ["r", "a", "b", "z", "e", "d", "g", "K2", "chi", "chiS", "chiX", "KS2", "KX3"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnowledgeError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

impl KnowledgeError {
    pub fn line(&self) -> Option<usize> {
        match self {
            KnowledgeError::Syntax { line, .. } => Some(*line),
            KnowledgeError::Io { .. } => None,
        }
    }
}

/// Serialized as its text form, e.g. `"smooth@n2/XIII"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Smooth, listed under the given theorem labels such as `n2/XIII`.
    Smooth(Vec<String>),
    SingularZ,
    Nonexistent,
}

impl Verdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Verdict::Smooth(_))
    }

    pub fn labels(&self) -> &[String] {
        match self {
            Verdict::Smooth(l) => l,
            _ => &[],
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Smooth(l) => write!(f, "smooth@{}", l.join(",")),
            Verdict::SingularZ => f.write_str("singular_z"),
            Verdict::Nonexistent => f.write_str("nonexistent"),
        }
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "singular_z" => Ok(Verdict::SingularZ),
            "nonexistent" => Ok(Verdict::Nonexistent),
            _ => {
                let labels = s.strip_prefix("smooth@").ok_or_else(|| format!("unknown verdict {s:?}"))?;
                let labels: Vec<String> = labels.split(',').map(|l| l.trim().to_string()).collect();
                for l in &labels {
                    match l.split_once('/') {
                        Some((t, n)) if !t.is_empty() && !n.is_empty() && !n.contains('/') => {}
                        _ => return Err(format!("bad theorem label {l:?}")),
                    }
                }
                Ok(Verdict::Smooth(labels))
            }
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `name=value` pairs in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Key(pub Vec<(String, Rat)>);

impl Key {
    pub fn get(&self, name: &str) -> Option<&Rat> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(n, v)| format!("{n}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Key {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out: Vec<(String, Rat)> = Vec::new();
        for tok in s.split_whitespace() {
            let (n, v) = tok.split_once('=').ok_or_else(|| format!("expected name=value, got {tok:?}"))?;
            if !KEY_FIELDS.contains(&n) {
                return Err(format!("unknown key field {n:?}"));
            }
            if out.iter().any(|(m, _)| m == n) {
                return Err(format!("duplicate key field {n:?}"));
            }
            let v: Rat = v.parse().map_err(|_| format!("bad value {v:?} for {n}"))?;
            out.push((n.to_string(), v));
        }
        if out.is_empty() {
            return Err("empty key".into());
        }
        Ok(Key(out))
    }
}

/// Verdict for one maximal-list row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionRecord {
    pub case_id: String,
    pub list: MaximalList,
    pub verdict: Verdict,
    pub key: Key,
    pub resolution: Option<SheafResolution>,
    pub description: String,
    pub citation: String,
    pub line: usize,
}

/// A resolution that supports a row without being the row itself (a linked partner, a curve
/// section, a Beilinson presentation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxRecord {
    pub id: String,
    pub owner: String,
    pub key: Key,
    pub resolution: SheafResolution,
    pub citation: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub from: String,
    pub to: String,
    pub p: i64,
    pub q: i64,
    pub citation: String,
    pub line: usize,
}

/// A parametric family kept as a single row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub id: String,
    pub condition: String,
    pub description: String,
    pub citation: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub version: u32,
    pub rows: Vec<ExclusionRecord>,
    pub aux: Vec<AuxRecord>,
    pub links: Vec<LinkRecord>,
    pub families: Vec<FamilyRecord>,
}

fn fields(rest: &str, n: usize, line: usize, kind: &str) -> Result<Vec<String>, KnowledgeError> {
    let f: Vec<String> = rest.split('|').map(|x| x.trim().to_string()).collect();
    if f.len() != n {
        return Err(KnowledgeError::Syntax { line, msg: format!("{kind} record needs {n} fields, found {}", f.len()) });
    }
    if let Some(i) = f.iter().position(String::is_empty) {
        return Err(KnowledgeError::Syntax { line, msg: format!("{kind} record has an empty field {}", i + 1) });
    }
    Ok(f)
}

impl KnowledgeBase {
    pub fn parse(text: &str) -> Result<KnowledgeBase, KnowledgeError> {
        let mut version = None;
        let mut kb = KnowledgeBase { version: 0, rows: vec![], aux: vec![], links: vec![], families: vec![] };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let syn = |msg: String| KnowledgeError::Syntax { line, msg };
            let (kind, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
            let rest = rest.trim();
            if version.is_none() {
                if kind != "version" {
                    return Err(syn("file must start with 'version <n>'".into()));
                }
                let v: u32 = rest.parse().map_err(|_| syn(format!("bad version {rest:?}")))?;
                if v != SUPPORTED_VERSION {
                    return Err(syn(format!("unsupported version {v}")));
                }
                version = Some(v);
                continue;
            }
            match kind {
                "row" => {
                    let f = fields(rest, 6, line, "row")?;
                    let list = super::list_of_case(&f[0]).ok_or_else(|| syn(format!("bad case id {:?}", f[0])))?;
                    let verdict = f[1].parse().map_err(syn)?;
                    let key = f[2].parse().map_err(syn)?;
                    let resolution = match f[3].as_str() {
                        "-" => None,
                        r => Some(r.parse().map_err(|e: crate::chern::ResolutionError| syn(e.to_string()))?),
                    };
                    kb.rows.push(ExclusionRecord {
                        case_id: f[0].clone(),
                        list,
                        verdict,
                        key,
                        resolution,
                        description: f[4].clone(),
                        citation: f[5].clone(),
                        line,
                    });
                }
                "aux" => {
                    let f = fields(rest, 5, line, "aux")?;
                    let key = f[2].parse().map_err(syn)?;
                    let resolution = f[3].parse().map_err(|e: crate::chern::ResolutionError| syn(e.to_string()))?;
                    kb.aux.push(AuxRecord {
                        id: f[0].clone(),
                        owner: f[1].clone(),
                        key,
                        resolution,
                        citation: f[4].clone(),
                        line,
                    });
                }
                "link" => {
                    let f = fields(rest, 3, line, "link")?;
                    let (from, to) = f[0].split_once("->").ok_or_else(|| syn("expected '<from> -> <to>'".into()))?;
                    let (p, q) = f[1].split_once(',').ok_or_else(|| syn("expected '<p>,<q>'".into()))?;
                    let deg = |x: &str| x.trim().parse::<i64>().ok().filter(|v| *v >= 1);
                    let (Some(p), Some(q)) = (deg(p), deg(q)) else {
                        return Err(syn(format!("bad link degrees {:?}", f[1])));
                    };
                    kb.links.push(LinkRecord {
                        from: from.trim().to_string(),
                        to: to.trim().to_string(),
                        p,
                        q,
                        citation: f[2].clone(),
                        line,
                    });
                }
                "family" => {
                    let f = fields(rest, 4, line, "family")?;
                    kb.families.push(FamilyRecord {
                        id: f[0].clone(),
                        condition: f[1].clone(),
                        description: f[2].clone(),
                        citation: f[3].clone(),
                        line,
                    });
                }
                "version" => return Err(syn("repeated version line".into())),
                other => return Err(syn(format!("unknown record kind {other:?}"))),
            }
        }
        kb.version = version.ok_or(KnowledgeError::Syntax { line: 1, msg: "missing version line".into() })?;
        kb.validate()?;
        Ok(kb)
    }

    pub fn load(path: &Path) -> Result<KnowledgeBase, KnowledgeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| KnowledgeError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        KnowledgeBase::parse(&text)
    }

    fn validate(&self) -> Result<(), KnowledgeError> {
        let mut ids = BTreeSet::new();
        let rows = self.rows.iter().map(|r| (r.case_id.as_str(), r.line));
        let aux = self.aux.iter().map(|a| (a.id.as_str(), a.line));
        let fam = self.families.iter().map(|f| (f.id.as_str(), f.line));
        for (id, line) in rows.chain(aux).chain(fam) {
            if !ids.insert(id) {
                return Err(KnowledgeError::Syntax { line, msg: format!("duplicate id {id:?}") });
            }
        }
        for a in &self.aux {
            if !self.rows.iter().any(|r| r.case_id == a.owner) {
                return Err(KnowledgeError::Syntax { line: a.line, msg: format!("unknown owner {:?}", a.owner) });
            }
        }
        for l in &self.links {
            for end in [&l.from, &l.to] {
                if !ids.contains(end.as_str()) {
                    return Err(KnowledgeError::Syntax { line: l.line, msg: format!("unknown link endpoint {end:?}") });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = "version 1\n# c\nrow max/n1/x | smooth@n1/VIII | r=3 d=2 | - | conic | quadric\n";

    #[test]
    fn parses_minimal_file() {
        let kb = KnowledgeBase::parse(MINI).unwrap();
        assert_eq!(kb.rows.len(), 1);
        assert_eq!(kb.rows[0].line, 3);
        assert_eq!(kb.rows[0].verdict.to_string(), "smooth@n1/VIII");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("row max/n1/x | smooth@n1/VIII | r=3 | - | x | c\n", 1),
            ("version 2\n", 1),
            ("version 1\n\nrow max/n1/x | smooth@n1/VIII | r=3 | - | x |\n", 3),
            ("version 1\nrow max/n1/x | fine | r=3 | - | x | c\n", 2),
            ("version 1\nrow max/n1/x | singular_z | q=3 | - | x | c\n", 2),
            ("version 1\nrow max/n1/x | singular_z | r=3 | P3: O(-1) -> O | x | c\n", 2),
            ("version 1\nlink a -> b | 2,2 | c\n", 2),
            ("version 1\nwidget x\n", 2),
        ];
        for (text, line) in cases {
            let e = KnowledgeBase::parse(text).unwrap_err();
            assert_eq!(e.line(), Some(line), "{text:?}: {e}");
        }
    }

    #[test]
    fn verdict_round_trip() {
        for s in ["smooth@easy/III,n3r5/VI", "singular_z", "nonexistent"] {
            assert_eq!(s.parse::<Verdict>().unwrap().to_string(), s);
        }
        assert!("smooth@".parse::<Verdict>().is_err());
    }
}
