//! Two-term resolutions `0 -> E -> F -> I_X(k) -> 0` on `P^r` and their Hilbert profiles.
//!
//! Terms are twists of `O`, `Omega^p` and `T`. Euler characteristics of the
//! bundle twists are expanded through the Euler sequence into twists of `O`.
//!
//! Text form, as used by the knowledge file:
//!
//! ```text
//! resolution := "P" r ":" sum "->" sum [ "->" "I(" k ")" ]
//! sum        := term { "+" term }
//! term       := bundle [ "(" int ")" ] [ "^" mult ]
//! bundle     := "O" | "T" | "Omega" [ "^" p ]
//! ```
//!
//! e.g. `P5: O(-6)^5 -> O(-5)^6` or `P5: O(-1)^10 -> Omega^3(3) + O -> I(4)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Poly;
use crate::exact::{binom, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("rank(F) - rank(E) = {0}, expected 1")]
    RankDefect(i64),
    #[error("resolution describes a subscheme of codimension {found}, expected 2")]
    Codimension { found: i64 },
    #[error("resolution describes the empty scheme")]
    Empty,
    #[error("Omega^{p} out of range on P^{r}")]
    BadExterior { p: i64, r: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BundleKind {
    Tangent,
    Cotangent(i64),
    Trivial,
}

/// `kind(twist)^mult`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub kind: BundleKind,
    pub twist: i64,
    pub mult: u32,
}

impl Term {
    pub fn o(twist: i64, mult: u32) -> Self {
        Term { kind: BundleKind::Trivial, twist, mult }
    }

    pub fn omega(p: i64, twist: i64, mult: u32) -> Self {
        Term { kind: BundleKind::Cotangent(p), twist, mult }
    }

    pub fn tangent(twist: i64, mult: u32) -> Self {
        Term { kind: BundleKind::Tangent, twist, mult }
    }

    pub fn rank(&self, r: i64) -> i64 {
        let one = match self.kind {
            BundleKind::Trivial => 1,
            BundleKind::Tangent => r,
            BundleKind::Cotangent(p) => binom(r, p).to_i64().expect("small binomial"),
        };
        one * self.mult as i64
    }

    /// `chi(kind(twist + t))` as a polynomial in `t`, times the multiplicity.
    pub fn euler_poly(&self, r: i64) -> Poly {
        let single = match self.kind {
            BundleKind::Trivial => Poly::binomial_in_t(r, self.twist),
            BundleKind::Cotangent(p) => exterior_euler(r, p, self.twist),
            BundleKind::Tangent => exterior_euler(r, r - 1, self.twist + r + 1),
        };
        single.scale(&Rat::int(self.mult as i64))
    }

    pub fn twisted(&self, s: i64) -> Term {
        Term { twist: self.twist + s, ..*self }
    }

    /// Dual bundle: `O(k)* = O(-k)`, `Omega^p(k)* = Omega^{r-p}(r+1-k)`, `T(k)* = Omega^1(-k)`.
    pub fn dual(&self, r: i64) -> Term {
        let (kind, twist) = match self.kind {
            BundleKind::Trivial => (BundleKind::Trivial, -self.twist),
            BundleKind::Cotangent(p) => (BundleKind::Cotangent(r - p), r + 1 - self.twist),
            BundleKind::Tangent => (BundleKind::Cotangent(1), -self.twist),
        };
        Term { kind, twist, mult: self.mult }.canonical(r)
    }

    /// Rewrites `Omega^0`, `Omega^r` and `Omega^{r-1}` as `O`, `O(-r-1)` and `T(-r-1)`.
    pub fn canonical(&self, r: i64) -> Term {
        match self.kind {
            BundleKind::Cotangent(0) => Term { kind: BundleKind::Trivial, ..*self },
            BundleKind::Cotangent(p) if p == r => {
                Term { kind: BundleKind::Trivial, twist: self.twist - r - 1, mult: self.mult }
            }
            BundleKind::Cotangent(p) if p == r - 1 && r > 1 => {
                Term { kind: BundleKind::Tangent, twist: self.twist - r - 1, mult: self.mult }
            }
            _ => *self,
        }
    }
}

/// `chi(Omega^p(k + t))` via `0 -> Omega^p -> O(-p)^{C(r+1,p)} -> Omega^{p-1} -> 0`.
fn exterior_euler(r: i64, p: i64, k: i64) -> Poly {
    let mut acc = Poly::zero();
    for j in 0..=p {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = binom(r + 1, p - j) * sign;
        acc = &acc + &Poly::binomial_in_t(r, k - p + j).scale(&c);
    }
    acc
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BundleKind::Trivial => write!(f, "O")?,
            BundleKind::Tangent => write!(f, "T")?,
            BundleKind::Cotangent(1) => write!(f, "Omega")?,
            BundleKind::Cotangent(p) => write!(f, "Omega^{p}")?,
        }
        if self.twist != 0 {
            write!(f, "({})", self.twist)?;
        }
        if self.mult != 1 {
            write!(f, "^{}", self.mult)?;
        }
        Ok(())
    }
}

impl FromStr for Term {
    type Err = ResolutionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ResolutionError::Parse(format!("bad term {s:?}"));
        let s = s.trim();
        let (kind, mut rest) = if let Some(rest) = s.strip_prefix("Omega") {
            if let Some(r2) = rest.strip_prefix('^') {
                let end = r2.find(|c: char| !c.is_ascii_digit()).unwrap_or(r2.len());
                let p: i64 = r2[..end].parse().map_err(|_| err())?;
                (BundleKind::Cotangent(p), &r2[end..])
            } else {
                (BundleKind::Cotangent(1), rest)
            }
        } else if let Some(rest) = s.strip_prefix('T') {
            (BundleKind::Tangent, rest)
        } else if let Some(rest) = s.strip_prefix('O') {
            (BundleKind::Trivial, rest)
        } else {
            return Err(err());
        };
        let mut twist = 0;
        if let Some(r2) = rest.strip_prefix('(') {
            let close = r2.find(')').ok_or_else(err)?;
            twist = r2[..close].trim().parse().map_err(|_| err())?;
            rest = &r2[close + 1..];
        }
        let mut mult = 1;
        if let Some(r2) = rest.strip_prefix('^') {
            mult = r2.trim().parse().map_err(|_| err())?;
            rest = "";
        }
        if !rest.trim().is_empty() || mult == 0 {
            return Err(err());
        }
        Ok(Term { kind, twist, mult })
    }
}

/// `0 -> left -> right -> I_X(twist) -> 0` on `P^ambient_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafResolution {
    pub ambient_r: i64,
    pub twist: i64,
    pub left: Vec<Term>,
    pub right: Vec<Term>,
}

impl SheafResolution {
    pub fn new(ambient_r: i64, twist: i64, left: Vec<Term>, right: Vec<Term>) -> Result<Self, ResolutionError> {
        let res = SheafResolution { ambient_r, twist, left, right };
        for t in res.left.iter().chain(&res.right) {
            if let BundleKind::Cotangent(p) = t.kind {
                if p < 0 || p > ambient_r {
                    return Err(ResolutionError::BadExterior { p, r: ambient_r });
                }
            }
        }
        let defect = res.rank(&res.right) - res.rank(&res.left);
        if defect != 1 {
            return Err(ResolutionError::RankDefect(defect));
        }
        Ok(res)
    }

    /// Koszul resolution of a complete intersection of hypersurfaces of degrees `p, q`.
    pub fn complete_intersection(ambient_r: i64, p: i64, q: i64) -> Self {
        let mut right = vec![Term::o(-p, 1), Term::o(-q, 1)];
        normalize(&mut right);
        SheafResolution { ambient_r, twist: 0, left: vec![Term::o(-p - q, 1)], right }
    }

    fn rank(&self, terms: &[Term]) -> i64 {
        terms.iter().map(|t| t.rank(self.ambient_r)).sum()
    }

    /// Same ideal sheaf with twist 0.
    pub fn untwisted(&self) -> SheafResolution {
        let k = self.twist;
        SheafResolution {
            ambient_r: self.ambient_r,
            twist: 0,
            left: self.left.iter().map(|t| t.twisted(-k)).collect(),
            right: self.right.iter().map(|t| t.twisted(-k)).collect(),
        }
    }

    /// Formal linkage by a complete intersection `(p, q)`:
    /// `0 -> F*(-p-q) -> E*(-p-q) + O(-p) + O(-q) -> I_X' -> 0`.
    pub fn linked(&self, p: i64, q: i64) -> SheafResolution {
        let base = self.untwisted();
        let r = self.ambient_r;
        let mut left: Vec<Term> = base.right.iter().map(|t| t.dual(r).twisted(-p - q)).collect();
        let mut right: Vec<Term> = base.left.iter().map(|t| t.dual(r).twisted(-p - q)).collect();
        right.push(Term::o(-p, 1));
        right.push(Term::o(-q, 1));
        normalize(&mut left);
        normalize(&mut right);
        SheafResolution { ambient_r: r, twist: 0, left, right }
    }

    /// `chi(I_X(t))` as a polynomial in `t`.
    pub fn ideal_euler_poly(&self) -> Poly {
        let r = self.ambient_r;
        let k = self.twist;
        let sum = |ts: &[Term]| ts.iter().fold(Poly::zero(), |acc, t| &acc + &t.twisted(-k).euler_poly(r));
        &sum(&self.right) - &sum(&self.left)
    }

    /// `chi(O_X(t))` as a polynomial in `t`.
    pub fn structure_euler_poly(&self) -> Poly {
        &Poly::binomial_in_t(self.ambient_r, 0) - &self.ideal_euler_poly()
    }

    /// `h^0(I_X(t))` when every term is a line bundle (no intermediate cohomology on `P^r`).
    pub fn h0_ideal(&self, t: i64) -> Option<i64> {
        if self.left.iter().chain(&self.right).any(|x| x.kind != BundleKind::Trivial) {
            return None;
        }
        let r = self.ambient_r;
        let h0 = |ts: &[Term]| -> i64 {
            ts.iter()
                .map(|x| {
                    let k = x.twist + t - self.twist;
                    let one = if k < 0 { 0 } else { binom(k + r, r).to_i64().expect("small") };
                    one * x.mult as i64
                })
                .sum()
        };
        Some(h0(&self.right) - h0(&self.left))
    }
}

/// Merges equal bundles and sorts terms: tangent, then exterior powers by `p` descending,
/// then line bundles, each by twist descending.
pub fn normalize(terms: &mut Vec<Term>) {
    let key = |t: &Term| {
        let kind_rank = match t.kind {
            BundleKind::Tangent => (0, 0),
            BundleKind::Cotangent(p) => (1, -p),
            BundleKind::Trivial => (2, 0),
        };
        (kind_rank, -t.twist)
    };
    terms.sort_by_key(key);
    let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms.drain(..) {
        match merged.last_mut() {
            Some(last) if last.kind == t.kind && last.twist == t.twist => last.mult += t.mult,
            _ => merged.push(t),
        }
    }
    *terms = merged;
}

fn join(terms: &[Term]) -> String {
    terms.iter().map(Term::to_string).collect::<Vec<_>>().join(" + ")
}

impl fmt::Display for SheafResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}: {} -> {}", self.ambient_r, join(&self.left), join(&self.right))?;
        if self.twist != 0 {
            write!(f, " -> I({})", self.twist)?;
        }
        Ok(())
    }
}

impl FromStr for SheafResolution {
    type Err = ResolutionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| ResolutionError::Parse(format!("{m} in {s:?}"));
        let (head, body) = s.split_once(':').ok_or_else(|| err("missing 'P<r>:'"))?;
        let r: i64 = head
            .trim()
            .strip_prefix('P')
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| err("bad ambient"))?;
        let parts: Vec<&str> = body.split("->").map(str::trim).collect();
        let (left, right, twist) = match parts.as_slice() {
            [l, rt] => (*l, *rt, 0),
            [l, rt, i] => {
                let k = i
                    .strip_prefix("I(")
                    .and_then(|x| x.strip_suffix(')'))
                    .and_then(|x| x.trim().parse().ok())
                    .ok_or_else(|| err("bad ideal twist"))?;
                (*l, *rt, k)
            }
            _ => return Err(err("expected 'E -> F'")),
        };
        let terms = |x: &str| -> Result<Vec<Term>, ResolutionError> { x.split('+').map(str::parse).collect() };
        SheafResolution::new(r, twist, terms(left)?, terms(right)?)
    }
}

/// Numerical data read off `chi(O_X(t))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub dim: i64,
    pub codim: i64,
    pub d: Rat,
    /// Sectional genus: genus of the curve section.
    pub g: Rat,
    pub chi_x: Rat,
    /// `chi(O_S)` of the surface section, when `dim >= 2`.
    pub chi_s: Option<Rat>,
}

/// Hilbert profile of the subscheme resolved by `res`, required to have codimension 2.
pub fn hilbert_from_resolution(res: &SheafResolution) -> Result<HilbertProfile, ResolutionError> {
    let hx = res.structure_euler_poly();
    let dim = match hx.degree() {
        None => return Err(ResolutionError::Empty),
        Some(k) => k as i64,
    };
    let codim = res.ambient_r - dim;
    if codim != 2 {
        return Err(ResolutionError::Codimension { found: codim });
    }
    let mut fact = Rat::one();
    for j in 1..=dim {
        fact = fact * j;
    }
    let d = hx.leading() * &fact;
    let mut curve = hx.clone();
    let mut surface = None;
    for step in 0..dim - 1 {
        if step == dim - 2 {
            surface = Some(curve.clone());
        }
        curve = curve.delta();
    }
    let zero = Rat::zero();
    Ok(HilbertProfile {
        dim,
        codim,
        d,
        g: Rat::one() - curve.eval(&zero),
        chi_x: hx.eval(&zero),
        chi_s: surface.map(|p| p.eval(&zero)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(s: &str) -> SheafResolution {
        s.parse().unwrap()
    }

    #[test]
    fn exterior_powers_at_zero() {
        for r in 1..7 {
            for p in 0..=r {
                let chi = exterior_euler(r, p, 0).eval(&Rat::zero());
                assert_eq!(chi, if p % 2 == 0 { 1 } else { -1 }, "r={r} p={p}");
            }
        }
    }

    #[test]
    fn castelnuovo_quintic() {
        let h = hilbert_from_resolution(&res("P5: O(-4)^2 -> O(-2) + O(-3)^2")).unwrap();
        assert_eq!((h.codim, h.d.clone(), h.g.clone()), (2, Rat::int(5), Rat::int(2)));
    }

    #[test]
    fn determinantal_fifteen() {
        let h = hilbert_from_resolution(&res("P5: O(-6)^5 -> O(-5)^6")).unwrap();
        assert_eq!((h.d, h.g), (Rat::int(15), Rat::int(26)));
    }

    #[test]
    fn degenerate_inputs() {
        let e = SheafResolution::new(5, 0, vec![Term::o(-1, 1)], vec![Term::o(-1, 1)]);
        assert_eq!(e, Err(ResolutionError::RankDefect(0)));
        let ideal_of_nothing = SheafResolution::new(5, 0, vec![Term::o(-1, 1)], vec![Term::o(-1, 1), Term::o(0, 1)]).unwrap();
        assert_eq!(hilbert_from_resolution(&ideal_of_nothing), Err(ResolutionError::Empty));
        let hyper = SheafResolution::new(5, 0, vec![], vec![Term::o(-3, 1)]).unwrap();
        assert_eq!(hilbert_from_resolution(&hyper), Err(ResolutionError::Codimension { found: 1 }));
    }

    #[test]
    fn parse_display_round_trip() {
        for s in [
            "P5: O(-6)^5 -> O(-5)^6",
            "P5: T(-7) + O(-6) -> O(-5)^7",
            "P5: O(-1)^10 -> Omega^3(3) + O -> I(4)",
            "P3: O(-5)^3 + O(-6) -> Omega(-3) + O(-4)^2",
        ] {
            assert_eq!(res(s).to_string(), s);
        }
        assert!("P5: O(-6)^5 -> O(-5)^5".parse::<SheafResolution>().is_err());
        assert!("Q5: O -> O".parse::<SheafResolution>().is_err());
        assert!("P5: X(-6) -> O".parse::<SheafResolution>().is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(Term::o(3, 2).dual(5), Term::o(-3, 2));
        assert_eq!(Term::tangent(-7, 1).dual(5), Term::omega(1, 7, 1));
        assert_eq!(Term::omega(1, 7, 1).dual(5), Term::tangent(-7, 1));
        assert_eq!(Term::omega(2, -2, 1).dual(5), Term::omega(3, 8, 1));
    }

    #[test]
    fn tangent_matches_euler_sequence() {
        // 0 -> O -> O(1)^{r+1} -> T -> 0
        for r in 2..6 {
            let t = Term::tangent(0, 1).euler_poly(r);
            let e = &Term::o(1, (r + 1) as u32).euler_poly(r) - &Term::o(0, 1).euler_poly(r);
            assert_eq!(t, e);
        }
    }

    #[test]
    fn twisted_form_agrees() {
        let a = hilbert_from_resolution(&res("P5: O(-1)^10 -> Omega^3(3) + O -> I(4)")).unwrap();
        let b = hilbert_from_resolution(&res("P5: O(-5)^10 -> Omega^3(-1) + O(-4)")).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.d, a.g, a.chi_x), (Rat::int(13), Rat::int(19), Rat::int(1)));
    }

    #[test]
    fn link_of_complete_intersection_is_empty() {
        let ci = SheafResolution::complete_intersection(5, 4, 5);
        let h = hilbert_from_resolution(&ci).unwrap();
        assert_eq!((h.d, h.g), (Rat::int(20), Rat::int(51)));
        assert_eq!(hilbert_from_resolution(&ci.linked(4, 5)), Err(ResolutionError::Empty));
    }

    #[test]
    fn h0_of_line_bundle_resolution() {
        let r = res("P5: O(-8) + O(-6)^2 -> O(-5)^4");
        assert_eq!(r.h0_ideal(5), Some(4));
        assert_eq!(r.h0_ideal(4), Some(0));
        assert_eq!(res("P5: T(-7) + O(-6) -> O(-5)^7").h0_ideal(5), None);
    }
}
