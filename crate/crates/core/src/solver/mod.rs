//! Per-case Diophantine searches reproducing the maximal lists.
//!
//! Every case follows the same pattern: fix the integer variables that enter
//! nonlinearly (the degree `d`, and for `(a,b) = (5,1)` also the genus), solve
//! the remaining invariants from the affine constraints by exact elimination,
//! then filter by the nonlinear secant constraint, integrality and
//! positivity. Each emitted row carries a trace; each killed tuple is kept as a
//! [`Rejection`] naming every check it failed.

mod curves;
mod easy;
pub mod linear;
mod surfaces;
mod threefolds;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use curves::{search_n1, solve_n1};
pub use easy::solve_n3_easy;
pub use surfaces::{search_n2, solve_n2};
pub use threefolds::{search_n3_a4, search_n3_a5, solve_n3_a4, solve_n3_a5, G_WINDOW_51};

use crate::chern::{fundamental_system, VarietyInvariants};
use crate::exact::Rat;
use crate::multisecant::Formula;
use crate::numerology::TransformationType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("impossible link: d = {d} exceeds pq = {pq}")]
    ImpossibleLink { d: i64, pq: i64 },
    #[error("negative degree {0}")]
    NegativeDegree(i64),
}

/// The maximal list a candidate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MaximalList {
    Curves,
    Surfaces,
    /// `n = 3`, `(a, b) = (4, b)`.
    Threefold4b,
    /// `n = 3`, `(a, b) = (5, b)` with `b >= 2`.
    Threefold5b,
    /// `n = 3`, `(a, b) = (5, 1)`.
    Threefold51,
    /// `n = 3`, the geometric cases `r = 7`, `r = 6, a = 2`, `r = 5, a <= 3`.
    ThreefoldEasy,
}

impl MaximalList {
    pub const ALL: [MaximalList; 6] = [
        MaximalList::Curves,
        MaximalList::Surfaces,
        MaximalList::Threefold4b,
        MaximalList::Threefold5b,
        MaximalList::Threefold51,
        MaximalList::ThreefoldEasy,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            MaximalList::Curves => "n1",
            MaximalList::Surfaces => "n2",
            MaximalList::Threefold4b => "4b",
            MaximalList::Threefold5b => "5b",
            MaximalList::Threefold51 => "51",
            MaximalList::ThreefoldEasy => "easy",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        MaximalList::ALL.into_iter().find(|l| l.tag() == s)
    }

    pub fn n(&self) -> i64 {
        match self {
            MaximalList::Curves => 1,
            MaximalList::Surfaces => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for MaximalList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Derived,
    Curated,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Derived => "derived",
            Provenance::Curated => "curated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub constraint: String,
    pub values: String,
}

impl TraceStep {
    pub fn new(constraint: impl Into<String>, values: impl Into<String>) -> Self {
        TraceStep { constraint: constraint.into(), values: values.into() }
    }
}

/// A secant-count constraint imposed during derivation: `formula = expected` on `P^ambient`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantConstraint {
    pub formula: Formula,
    pub ambient: i64,
    pub expected: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub list: MaximalList,
    pub ttype: TransformationType,
    pub inv: VarietyInvariants,
    pub z: i64,
    pub e: i64,
    pub provenance: Provenance,
    pub citation: Option<String>,
    pub secant_constraints: Vec<SecantConstraint>,
    pub trace: Vec<TraceStep>,
}

impl Candidate {
    /// Recomputes the Segre classes and checks `z`, `bz`, `b^2 z - e` exactly.
    pub fn fundamental_round_trip(&self) -> bool {
        let Ok(s) = self.inv.segre(self.ttype.r) else {
            return false;
        };
        let Ok((z, bz, b2z_e)) = fundamental_system(&self.ttype, &s) else {
            return false;
        };
        let b = self.ttype.b;
        z == self.z && bz == b * self.z && b2z_e == b * b * self.z - self.e
    }

    pub fn is_scroll(&self) -> bool {
        matches!(&self.inv, VarietyInvariants::Surface(s) if s.is_scroll)
    }
}

/// A visited tuple that was killed, with every check it failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub list: MaximalList,
    pub ttype: TransformationType,
    pub values: Vec<(String, Rat)>,
    pub reasons: Vec<String>,
}

/// Output of a traced search.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Search {
    pub rows: Vec<Candidate>,
    pub rejected: Vec<Rejection>,
}

impl Search {
    pub fn extend(&mut self, other: Search) {
        self.rows.extend(other.rows);
        self.rejected.extend(other.rejected);
    }
}

/// Every maximal list, in a fixed order.
pub fn search_all() -> Search {
    let mut out = search_n1();
    out.extend(search_n2());
    out.extend(search_n3_a4());
    out.extend(search_n3_a5(1));
    out.extend(Search { rows: solve_n3_easy(), rejected: vec![] });
    out
}

/// Linkage by a complete intersection of type `(p, q)`: `(d, g) -> (pq - d, g - (p+q-4)(d-d')/2)`.
pub fn liaison_invariants(d: i64, g: i64, p: i64, q: i64) -> Result<(i64, i64), SolverError> {
    if d < 0 {
        return Err(SolverError::NegativeDegree(d));
    }
    if d > p * q {
        return Err(SolverError::ImpossibleLink { d, pq: p * q });
    }
    let d2 = p * q - d;
    Ok((d2, g - (p + q - 4) * (d - d2) / 2))
}

/// Failed-integrality messages for the named values.
pub(crate) fn non_integral(named: &[(&str, &Rat)]) -> Vec<String> {
    named
        .iter()
        .filter(|(_, v)| !v.is_integer())
        .map(|(n, v)| format!("{n} = {v} not integral"))
        .collect()
}

pub(crate) fn show(named: &[(&str, &Rat)]) -> String {
    named.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(" ")
}

pub(crate) fn owned(named: &[(&str, &Rat)]) -> Vec<(String, Rat)> {
    named.iter().map(|(n, v)| (n.to_string(), (*v).clone())).collect()
}

pub(crate) fn int(v: &Rat) -> i64 {
    v.to_i64().expect("checked integral")
}

pub(crate) fn list_str(zs: &[i64]) -> String {
    let v: Vec<String> = zs.iter().map(i64::to_string).collect();
    format!("{{{}}}", v.join(","))
}
