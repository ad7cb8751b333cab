//! Segre-class calculus and the invariant identities used by the solver.
//!
//! Invariants are carried as [`Rat`] so the same formulas serve both the
//! typed rows and the affine eliminations inside the solver, where unknowns
//! are probed at rational points.

mod poly;
pub mod resolution;

pub use poly::Poly;
pub use resolution::{
    hilbert_from_resolution, BundleKind, HilbertProfile, ResolutionError, SheafResolution, Term,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{binom, Rat};
use crate::numerology::TransformationType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("incomplete invariants: {0} not populated")]
    Incomplete(&'static str),
    #[error("expected {expected} Segre classes, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("inconsistent invariants: d^2-5d-10(g-1)+12chi(O_S) = {0} is odd")]
    OddCanonicalSquare(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub d: Rat,
    pub g: Rat,
}

impl CurveInvariants {
    pub fn new(d: i64, g: i64) -> Self {
        CurveInvariants { d: d.into(), g: g.into() }
    }
}

/// Surface invariants; `line_selfints` lists the self-intersections of lines on `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub d: Rat,
    pub g: Rat,
    pub k2: Rat,
    pub chi: Rat,
    pub is_scroll: bool,
    pub line_selfints: Vec<i64>,
}

impl SurfaceInvariants {
    pub fn new(d: i64, g: i64, k2: i64, chi: i64) -> Self {
        SurfaceInvariants {
            d: d.into(),
            g: g.into(),
            k2: k2.into(),
            chi: chi.into(),
            is_scroll: false,
            line_selfints: vec![],
        }
    }

    /// A scroll over a curve of genus `g`: `K^2 = 8(1-g)`, `chi = 1-g`.
    pub fn scroll(d: Rat, g: Rat) -> Self {
        let k2 = (Rat::one() - &g) * 8;
        let chi = Rat::one() - &g;
        SurfaceInvariants { d, g, k2, chi, is_scroll: true, line_selfints: vec![] }
    }

    pub fn c2(&self) -> Rat {
        noether_c2(&self.chi, &self.k2)
    }
}

/// Threefold invariants; `chi_s`, `ks2` and `c2s` refer to a general hyperplane section `S`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldInvariants {
    pub d: Rat,
    pub g: Rat,
    pub chi_s: Option<Rat>,
    pub chi_x: Option<Rat>,
    pub ks2: Option<Rat>,
    pub kx3: Option<Rat>,
    pub c2s: Option<Rat>,
    pub c3x: Option<Rat>,
}

impl ThreefoldInvariants {
    pub fn new(d: i64, g: i64) -> Self {
        ThreefoldInvariants { d: d.into(), g: g.into(), ..Default::default() }
    }

    fn need<'a>(v: &'a Option<Rat>, name: &'static str) -> Result<&'a Rat, ChernError> {
        v.as_ref().ok_or(ChernError::Incomplete(name))
    }

    pub fn noether_c2s(&self) -> Result<Rat, ChernError> {
        Ok(noether_c2(Self::need(&self.chi_s, "chiS")?, Self::need(&self.ks2, "KS2")?))
    }

    /// Fills `ks2`, `kx3`, `c2s` and `c3x` from `d, g, chi_s, chi_x` for `X` in `P^5`.
    pub fn completed_in_p5(&self) -> Result<Self, ChernError> {
        let (kx3, ks2) = p5_relations(self)?;
        let mut out = self.clone();
        out.ks2 = Some(ks2);
        out.kx3 = Some(kx3);
        out.c2s = Some(out.noether_c2s()?);
        out.c3x = Some(c3_formula(&out)?);
        Ok(out)
    }

    /// Hyperplane-section surface, used to evaluate surface multisecant formulae.
    pub fn section(&self) -> Result<SurfaceInvariants, ChernError> {
        Ok(SurfaceInvariants {
            d: self.d.clone(),
            g: self.g.clone(),
            k2: Self::need(&self.ks2, "KS2")?.clone(),
            chi: Self::need(&self.chi_s, "chiS")?.clone(),
            is_scroll: false,
            line_selfints: vec![],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "dim", rename_all = "lowercase")]
pub enum VarietyInvariants {
    Curve(CurveInvariants),
    Surface(SurfaceInvariants),
    Threefold(ThreefoldInvariants),
}

impl VarietyInvariants {
    pub fn d(&self) -> &Rat {
        match self {
            VarietyInvariants::Curve(c) => &c.d,
            VarietyInvariants::Surface(s) => &s.d,
            VarietyInvariants::Threefold(t) => &t.d,
        }
    }

    pub fn g(&self) -> &Rat {
        match self {
            VarietyInvariants::Curve(c) => &c.g,
            VarietyInvariants::Surface(s) => &s.g,
            VarietyInvariants::Threefold(t) => &t.g,
        }
    }

    pub fn dim(&self) -> i64 {
        match self {
            VarietyInvariants::Curve(_) => 1,
            VarietyInvariants::Surface(_) => 2,
            VarietyInvariants::Threefold(_) => 3,
        }
    }

    /// Segre classes of the normal bundle in `P^r`.
    pub fn segre(&self, r: i64) -> Result<SegreClasses, ChernError> {
        match self {
            VarietyInvariants::Curve(c) => Ok(segre_curve(c, r)),
            VarietyInvariants::Surface(s) => Ok(segre_surface(s, r)),
            VarietyInvariants::Threefold(t) => segre_threefold(t, r),
        }
    }

    /// Named invariant values in a fixed order, for reports.
    pub fn named(&self) -> Vec<(&'static str, Rat)> {
        match self {
            VarietyInvariants::Curve(c) => vec![("d", c.d.clone()), ("g", c.g.clone())],
            VarietyInvariants::Surface(s) => vec![
                ("d", s.d.clone()),
                ("g", s.g.clone()),
                ("K2", s.k2.clone()),
                ("chi", s.chi.clone()),
            ],
            VarietyInvariants::Threefold(t) => {
                let mut v = vec![("d", t.d.clone()), ("g", t.g.clone())];
                for (name, val) in [
                    ("chiS", &t.chi_s),
                    ("chiX", &t.chi_x),
                    ("KS2", &t.ks2),
                    ("KX3", &t.kx3),
                    ("c2S", &t.c2s),
                    ("c3X", &t.c3x),
                ] {
                    if let Some(x) = val {
                        v.push((name, x.clone()));
                    }
                }
                v
            }
        }
    }
}

/// Degrees `s_0..s_n` of the Segre classes of `N_{X/P^r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreClasses {
    pub s: Vec<Rat>,
}

pub fn noether_c2(chi: &Rat, k2: &Rat) -> Rat {
    chi * 12 - k2
}

pub fn segre_curve(inv: &CurveInvariants, r: i64) -> SegreClasses {
    let s1 = Rat::int(2) - &inv.g * 2 - &inv.d * (r + 1);
    SegreClasses { s: vec![inv.d.clone(), s1] }
}

pub fn segre_surface(inv: &SurfaceInvariants, r: i64) -> SegreClasses {
    let e = Rat::int(2) - &inv.g * 2;
    let s1 = &e - &inv.d * r;
    let s2 = inv.c2() - &e * (r + 1) + binom(r + 1, 2) * &inv.d;
    SegreClasses { s: vec![inv.d.clone(), s1, s2] }
}

pub fn segre_threefold(inv: &ThreefoldInvariants, r: i64) -> Result<SegreClasses, ChernError> {
    let c2 = inv.c2s.as_ref().ok_or(ChernError::Incomplete("c2S"))?;
    let c3 = inv.c3x.as_ref().ok_or(ChernError::Incomplete("c3X"))?;
    let e = Rat::int(2) - &inv.g * 2;
    let s1 = &e - &inv.d * (r - 1);
    let s2 = c2 - &e * r + binom(r, 2) * &inv.d;
    let s3 = c3 - c2 * (r + 1) + binom(r + 1, 2) * &e - binom(r + 1, 3) * &inv.d;
    Ok(SegreClasses { s: vec![inv.d.clone(), s1, s2, s3] })
}

/// `c_3(X)` for a threefold in `P^5`, from the invariants of `X` and `S`.
pub fn c3_formula(inv: &ThreefoldInvariants) -> Result<Rat, ChernError> {
    let ks2 = ThreefoldInvariants::need(&inv.ks2, "KS2")?;
    let chi_x = ThreefoldInvariants::need(&inv.chi_x, "chiX")?;
    let chi_s = ThreefoldInvariants::need(&inv.chi_s, "chiS")?;
    let (d, g) = (&inv.d, &inv.g);
    Ok(ks2 * 6 + chi_x * 24 - chi_s * 72 - d * 2 * (d - 6 - g) + (g - 1) * 12)
}

/// `(K_X^3, K_S^2)` for a threefold in `P^5`.
pub fn p5_relations(inv: &ThreefoldInvariants) -> Result<(Rat, Rat), ChernError> {
    let (kx3, twice) = p5_values(inv)?;
    let ks2 = &twice / 2;
    if twice.is_integer() && !ks2.is_integer() {
        return Err(ChernError::OddCanonicalSquare(twice));
    }
    Ok((kx3, ks2))
}

/// `(K_X^3, 2 K_S^2)` without the parity check, for rational probing.
pub fn p5_values(inv: &ThreefoldInvariants) -> Result<(Rat, Rat), ChernError> {
    let chi_x = ThreefoldInvariants::need(&inv.chi_x, "chiX")?;
    let chi_s = ThreefoldInvariants::need(&inv.chi_s, "chiS")?;
    let (d, g) = (&inv.d, &inv.g);
    let kx3 = -(d * d) * 5 + d * (g * 2 + 25) + (g - 1) * 24 - chi_s * 36 - chi_x * 24;
    let twice = d * d - d * 5 - (g - 1) * 10 + chi_s * 12;
    Ok((kx3, twice))
}

/// The three fundamental expressions `(z, bz, b^2 z - e)` from the Segre classes.
pub fn fundamental_system(
    t: &TransformationType,
    s: &SegreClasses,
) -> Result<(Rat, Rat, Rat), ChernError> {
    let n = t.n;
    if s.s.len() != (n + 1) as usize {
        return Err(ChernError::LengthMismatch { expected: (n + 1) as usize, got: s.s.len() });
    }
    let a = Rat::int(t.a);
    let d = &s.s[0];
    // sum_{i=lo}^{n-1} C(r-j, i-j) a^{i-j} s_{n-i}, plus the degree term, for shift j
    let expr = |j: i64| -> Rat {
        let rr = t.r - j;
        let mut acc = a.pow(rr as u32);
        if n - j >= 0 {
            acc -= binom(rr, n - j) * a.pow((n - j) as u32) * d;
        }
        for i in j..n {
            acc -= binom(rr, i - j) * a.pow((i - j) as u32) * &s.s[(n - i) as usize];
        }
        acc
    };
    Ok((expr(0), expr(1), expr(2)))
}

/// Closed form of the curve case: `(a^r + (r+1-ra)d + 2g - 2, a^{r-1} - d, a^{r-2})`.
pub fn fundamental_curve_closed(t: &TransformationType, inv: &CurveInvariants) -> (Rat, Rat, Rat) {
    let a = Rat::int(t.a);
    let z = a.pow(t.r as u32) + &inv.d * (t.r + 1 - t.r * t.a) + &inv.g * 2 - 2;
    let bz = a.pow((t.r - 1) as u32) - &inv.d;
    (z, bz, a.pow((t.r - 2) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(n: i64, r: i64, a: i64, b: i64) -> TransformationType {
        TransformationType::from_degrees(n, r, a, b).unwrap()
    }

    #[test]
    fn segre_curve_examples() {
        assert_eq!(segre_curve(&CurveInvariants::new(5, 1), 4).s, vec![Rat::int(5), Rat::int(-25)]);
        assert_eq!(segre_curve(&CurveInvariants::new(1, 0), 3).s, vec![Rat::int(1), Rat::int(-2)]);
        assert_eq!(segre_curve(&CurveInvariants::new(6, 3), 3).s, vec![Rat::int(6), Rat::int(-28)]);
    }

    #[test]
    fn segre_surface_examples() {
        let ver = SurfaceInvariants::new(4, 0, 9, 1);
        assert_eq!(segre_surface(&ver, 5).s[1], -18);
        let plane = SurfaceInvariants::new(1, 0, 9, 1);
        assert_eq!(plane.c2(), 3);
        assert_eq!(segre_surface(&plane, 4).s, vec![Rat::int(1), Rat::int(-2), Rat::int(3)]);
        assert_eq!(segre_surface(&SurfaceInvariants::new(8, 3, 1, 1), 6).s[1], -52);
    }

    #[test]
    fn segre_threefold_examples() {
        let mut quadric = ThreefoldInvariants::new(2, 0);
        quadric.chi_s = Some(1.into());
        quadric.chi_x = Some(1.into());
        let quadric = quadric.completed_in_p5().unwrap();
        assert_eq!(segre_threefold(&quadric, 5).unwrap().s[1], -6);
        let mut x = ThreefoldInvariants::new(13, 19);
        x.c2s = Some(0.into());
        x.c3x = Some(0.into());
        assert_eq!(segre_threefold(&x, 5).unwrap().s[1], -88);
        assert_eq!(
            segre_threefold(&ThreefoldInvariants::new(1, 0), 5),
            Err(ChernError::Incomplete("c2S"))
        );
    }

    #[test]
    fn noether_examples() {
        assert_eq!(noether_c2(&1.into(), &9.into()), 3);
        assert_eq!(noether_c2(&11.into(), &28.into()), 104);
        assert_eq!(noether_c2(&1.into(), &5.into()), 7);
    }

    #[test]
    fn c3_examples() {
        let mut x = ThreefoldInvariants::new(13, 19);
        x.chi_s = Some(11.into());
        x.chi_x = Some(1.into());
        x.ks2 = Some(28.into());
        assert_eq!(c3_formula(&x).unwrap(), -72);
        let mut p3 = ThreefoldInvariants::new(1, 0);
        p3.chi_s = Some(1.into());
        p3.chi_x = Some(1.into());
        p3.ks2 = Some(9.into());
        assert_eq!(c3_formula(&p3).unwrap(), 4);
    }

    #[test]
    fn c3_against_expansion() {
        let (d, g, chi_s, chi_x) = (12i64, 15i64, 6i64, 2i64);
        let ks2 = (d * d - 5 * d - 10 * (g - 1) + 12 * chi_s) / 2;
        let expanded = 6 * ks2 + 24 * chi_x - 72 * chi_s - 2 * d * d + 12 * d + 2 * d * g + 12 * g - 12;
        let mut x = ThreefoldInvariants::new(d, g);
        x.chi_s = Some(chi_s.into());
        x.chi_x = Some(chi_x.into());
        x.ks2 = Some(ks2.into());
        assert_eq!(c3_formula(&x).unwrap(), expanded);
    }

    #[test]
    fn p5_examples() {
        let mut x = ThreefoldInvariants::new(13, 19);
        x.chi_s = Some(11.into());
        x.chi_x = Some(1.into());
        assert_eq!(p5_relations(&x).unwrap().1, 28);
        let mut q = ThreefoldInvariants::new(2, 0);
        q.chi_s = Some(1.into());
        q.chi_x = Some(1.into());
        assert_eq!(p5_relations(&q).unwrap().0, -54);
        let mut odd = ThreefoldInvariants::new(3, 0);
        odd.chi_s = Some(Rat::new(1, 12).unwrap());
        odd.chi_x = Some(0.into());
        assert!(matches!(p5_relations(&odd), Err(ChernError::OddCanonicalSquare(_))));
    }

    #[test]
    fn fundamental_examples() {
        let t = ty(1, 4, 2, 3);
        let inv = CurveInvariants::new(5, 1);
        let f = fundamental_system(&t, &segre_curve(&inv, 4)).unwrap();
        assert_eq!(f, (Rat::int(1), Rat::int(3), Rat::int(4)));
        assert_eq!(fundamental_curve_closed(&t, &inv), f);

        let t = ty(2, 6, 2, 4);
        let f = fundamental_system(&t, &segre_surface(&SurfaceInvariants::new(8, 3, 1, 1), 6)).unwrap();
        assert_eq!(f, (Rat::int(1), Rat::int(4), Rat::int(8)));

        let t = ty(3, 5, 5, 1);
        let mut x = ThreefoldInvariants::new(13, 19);
        x.chi_s = Some(11.into());
        x.chi_x = Some(1.into());
        let x = x.completed_in_p5().unwrap();
        let (z, bz, b2z_e) = fundamental_system(&t, &segre_threefold(&x, 5).unwrap()).unwrap();
        assert_eq!(z, 21);
        assert_eq!(bz, 21);
        assert_eq!(z - b2z_e, 3);
    }

    #[test]
    fn fundamental_length_mismatch() {
        let t = ty(2, 6, 2, 4);
        let s = segre_curve(&CurveInvariants::new(5, 1), 6);
        assert_eq!(
            fundamental_system(&t, &s),
            Err(ChernError::LengthMismatch { expected: 3, got: 2 })
        );
    }
}
