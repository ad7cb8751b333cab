//! Transformation types `(n, r, a, b, i, m)` allowed by the numerology.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerologyError {
    #[error("base locus dimension must be at least 1")]
    ZeroDimension,
    #[error("ill-formed type: {0}")]
    IllFormed(String),
}

/// Type of a candidate special birational transformation `P^r --> Z`.
///
/// `n = dim X`, `m = dim Y`, `(a, b)` the degrees of the map and its inverse,
/// `i` the index of `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransformationType {
    pub n: i64,
    pub r: i64,
    pub a: i64,
    pub b: i64,
    pub i: i64,
    pub m: i64,
}

impl TransformationType {
    /// Builds the type from `(n, r, a, b)`, computing `m` and `i`.
    pub fn from_degrees(n: i64, r: i64, a: i64, b: i64) -> Result<Self, NumerologyError> {
        if r - n - 1 < 1 {
            return Err(NumerologyError::IllFormed(format!("r={r} too small for n={n}")));
        }
        let m = a * (r - n - 1) - 2;
        let i = (r + 1) * b - (r - n - 1) * (a * b - 1);
        let t = TransformationType { n, r, a, b, i, m };
        if !t.satisfies_equations() {
            return Err(NumerologyError::IllFormed(t.to_string()));
        }
        Ok(t)
    }

    /// All four numerology identities hold exactly.
    pub fn satisfies_equations(&self) -> bool {
        let TransformationType { n, r, a, b, i, m } = *self;
        i == (r + 1) * b - (r - n - 1) * (a * b - 1)
            && r + 1 == i * a - (r - m - 1) * (a * b - 1)
            && a * (r - n - 1) == m + 2
            && b * (r - m - 1) == n + 2 + i - r - 1
    }

    pub fn dim_z(&self) -> i64 {
        self.r
    }

    pub fn coindex(&self) -> i64 {
        self.r + 1 - self.i
    }

    /// Codimension of `Y` in `Z`.
    pub fn codim_y(&self) -> i64 {
        self.r - self.m
    }

    /// Upper bound `a^{r-n}` on the degree of `X`, exclusive.
    pub fn degree_bound(&self) -> i64 {
        self.a.pow((self.r - self.n) as u32)
    }

    /// Family key used to group tuples that differ only in `b`.
    pub fn family(&self) -> (i64, i64, i64) {
        (self.r, self.a, self.m)
    }
}

impl fmt::Display for TransformationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} r={} a={} b={} i={} m={}",
            self.n, self.r, self.a, self.b, self.i, self.m
        )
    }
}

/// Every type with base locus of dimension `n`, sorted by `(-r, -a, b)`.
pub fn enumerate_types(n: i64) -> Result<Vec<TransformationType>, NumerologyError> {
    if n < 1 {
        return Err(NumerologyError::ZeroDimension);
    }
    let mut out = Vec::new();
    for r in n + 2..=2 * n + 2 {
        let c = r - n - 1;
        for m in 0..=r - 2 {
            if (m + 2) % c != 0 {
                continue;
            }
            let a = (m + 2) / c;
            if a < 2 {
                continue;
            }
            for b in 1.. {
                let i = (r + 1) * b - c * (a * b - 1);
                if i > r + 1 {
                    break;
                }
                let t = TransformationType { n, r, a, b, i, m };
                if i >= 1 && t.satisfies_equations() {
                    out.push(t);
                }
            }
        }
    }
    out.sort_by_key(|t| (-t.r, -t.a, t.b));
    Ok(out)
}

/// Corollary bounds `a <= min(m+2, r/(r-n-1))` and `b <= min(n+1+i-r, (i-1)/(r-m-1))`.
pub fn bounds_check(t: &TransformationType) -> bool {
    let TransformationType { n, r, a, b, i, m } = *t;
    if r - n - 1 <= 0 || r - m - 1 <= 0 {
        return false;
    }
    let a_ok = a <= m + 2 && Rat::int(a) <= Rat::new(r, r - n - 1).unwrap();
    let b_ok = b <= n + 1 + i - r && Rat::int(b) <= Rat::new(i - 1, r - m - 1).unwrap();
    a_ok && b_ok
}

/// Types grouped into families `(r, a, m)` with their `b`-ranges, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub n: i64,
    pub r: i64,
    pub a: i64,
    pub m: i64,
    pub bs: Vec<i64>,
}

impl Family {
    /// `i` as an affine expression in `b`, e.g. `b+3`, `2b+2`, or a constant.
    pub fn index_expr(&self) -> String {
        let slope = self.r - self.m - 1;
        let offset = self.r - self.n - 1;
        if self.bs.len() == 1 {
            return (slope * self.bs[0] + offset).to_string();
        }
        let lead = if slope == 1 { "b".to_string() } else { format!("{slope}b") };
        format!("{lead}+{offset}")
    }

    pub fn b_range(&self) -> String {
        match self.bs.as_slice() {
            [b] => b.to_string(),
            [lo, .., hi] => format!("{lo}..{hi}"),
            [] => String::new(),
        }
    }
}

pub fn families(types: &[TransformationType]) -> Vec<Family> {
    let mut out: Vec<Family> = Vec::new();
    for t in types {
        match out.last_mut() {
            Some(f) if (f.r, f.a, f.m) == t.family() => f.bs.push(t.b),
            _ => out.push(Family { n: t.n, r: t.r, a: t.a, m: t.m, bs: vec![t.b] }),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: i64) -> Vec<(i64, i64, Vec<i64>, String, i64)> {
        families(&enumerate_types(n).unwrap())
            .into_iter()
            .map(|f| (f.r, f.a, f.bs.clone(), f.index_expr(), f.m))
            .collect()
    }

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn curves() {
        assert_eq!(
            fam(1),
            vec![
                (4, 2, vec![1, 2, 3], s("b+2"), 2),
                (3, 3, vec![1, 2, 3], s("b+1"), 1),
                (3, 2, vec![1], s("3"), 0),
            ]
        );
    }

    #[test]
    fn surfaces() {
        assert_eq!(
            fam(2),
            vec![
                (6, 2, vec![1, 2, 3, 4], s("b+3"), 4),
                (5, 2, vec![1, 2], s("2b+2"), 2),
                (4, 4, vec![1, 2, 3, 4], s("b+1"), 2),
                (4, 3, vec![1, 2], s("2b+1"), 1),
                (4, 2, vec![1], s("4"), 0),
            ]
        );
    }

    #[test]
    fn threefolds() {
        assert_eq!(
            fam(3),
            vec![
                (8, 2, vec![1, 2, 3, 4, 5], s("b+4"), 6),
                (7, 2, vec![1, 2], s("2b+3"), 4),
                (6, 3, vec![1, 2, 3, 4, 5], s("b+2"), 4),
                (6, 2, vec![1], s("5"), 2),
                (5, 5, vec![1, 2, 3, 4, 5], s("b+1"), 3),
                (5, 4, vec![1, 2], s("2b+1"), 2),
                (5, 3, vec![1], s("4"), 1),
                (5, 2, vec![1], s("5"), 0),
            ]
        );
    }

    #[test]
    fn zero_dimension_rejected() {
        assert_eq!(enumerate_types(0), Err(NumerologyError::ZeroDimension));
    }

    #[test]
    fn bounds_examples() {
        let t = TransformationType { n: 1, r: 4, a: 2, b: 3, i: 5, m: 2 };
        assert!(bounds_check(&t));
        let bad = TransformationType { n: 1, r: 4, a: 3, b: 1, i: 1, m: 2 };
        assert!(!bounds_check(&bad));
        for n in 1..=3 {
            for t in enumerate_types(n).unwrap() {
                assert!(bounds_check(&t), "{t}");
            }
        }
    }

    #[test]
    fn from_degrees_matches_enumeration() {
        let t = TransformationType::from_degrees(3, 5, 5, 1).unwrap();
        assert_eq!((t.i, t.m), (2, 3));
        assert!(TransformationType::from_degrees(1, 2, 2, 1).is_err());
    }
}
