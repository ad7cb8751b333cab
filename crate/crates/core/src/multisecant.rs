//! Multisecant line counts of a surface, with applicability guards for scrolls.
//!
//! Each formula is stored once as a monomial table in `(d, g, chi, K^2)` over a
//! common denominator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chern::SurfaceInvariants;
use crate::exact::{binom, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantCount {
    pub value: Rat,
    pub applicable: bool,
}

/// `(coefficient, deg d, deg g, deg chi, deg K^2)`.
type Monomial = (i64, u32, u32, u32, u32);

struct Table {
    denominator: i64,
    terms: &'static [Monomial],
}

const N2: Table = Table {
    denominator: 2,
    terms: &[(1, 2, 0, 0, 0), (-2, 0, 0, 0, 1), (12, 0, 0, 1, 0), (-10, 0, 1, 0, 0), (-5, 1, 0, 0, 0), (10, 0, 0, 0, 0)],
};

const N3_6: Table = Table {
    denominator: 3,
    terms: &[
        (1, 3, 0, 0, 0),
        (-3, 1, 0, 0, 1),
        (18, 1, 0, 1, 0),
        (-18, 1, 1, 0, 0),
        (-12, 2, 0, 0, 0),
        (24, 0, 0, 0, 1),
        (-120, 0, 0, 1, 0),
        (132, 0, 1, 0, 0),
        (50, 1, 0, 0, 0),
        (-132, 0, 0, 0, 0),
    ],
};

const N3_4: Table = Table {
    denominator: 6,
    terms: &[(1, 3, 0, 0, 0), (-6, 1, 1, 0, 0), (-6, 2, 0, 0, 0), (12, 0, 0, 1, 0), (18, 0, 1, 0, 0), (11, 1, 0, 0, 0), (-18, 0, 0, 0, 0)],
};

const N4_4: Table = Table {
    denominator: 8,
    terms: &[
        (1, 4, 0, 0, 0),
        (-8, 2, 1, 0, 0),
        (-10, 3, 0, 0, 0),
        (4, 0, 2, 0, 0),
        (16, 1, 0, 1, 0),
        (56, 1, 1, 0, 0),
        (35, 2, 0, 0, 0),
        (-72, 0, 0, 1, 0),
        (-100, 0, 1, 0, 0),
        (-66, 1, 0, 0, 0),
        (96, 0, 0, 0, 0),
    ],
};

const N5_4: Table = Table {
    denominator: 24,
    terms: &[
        (1, 5, 0, 0, 0),
        (-12, 3, 1, 0, 0),
        (-16, 4, 0, 0, 0),
        (24, 1, 2, 0, 0),
        (24, 2, 0, 1, 0),
        (156, 2, 1, 0, 0),
        (95, 3, 0, 0, 0),
        (-48, 0, 1, 1, 0),
        (-120, 0, 2, 0, 0),
        (-288, 1, 0, 1, 0),
        (-744, 1, 1, 0, 0),
        (-260, 2, 0, 0, 0),
        (1056, 0, 0, 1, 0),
        (1320, 0, 1, 0, 0),
        (516, 1, 0, 0, 0),
        (-1200, 0, 0, 0, 0),
    ],
};

const N6_4: Table = Table {
    denominator: 144,
    terms: &[
        (1, 6, 0, 0, 0),
        (-18, 4, 1, 0, 0),
        (-21, 5, 0, 0, 0),
        (72, 2, 2, 0, 0),
        (48, 3, 0, 1, 0),
        (348, 3, 1, 0, 0),
        (157, 4, 0, 0, 0),
        (-24, 0, 3, 0, 0),
        (-288, 1, 1, 1, 0),
        (-864, 1, 2, 0, 0),
        (-936, 2, 0, 1, 0),
        (-2862, 2, 1, 0, 0),
        (-195, 3, 0, 0, 0),
        (288, 0, 0, 2, 0),
        (2160, 0, 1, 1, 0),
        (2664, 0, 2, 0, 0),
        (8520, 1, 0, 1, 0),
        (12396, 1, 1, 0, 0),
        (-3326, 2, 0, 0, 0),
        (-34560, 0, 0, 1, 0),
        (-20496, 0, 1, 0, 0),
        (9288, 1, 0, 0, 0),
        (17856, 0, 0, 0, 0),
    ],
};

impl Table {
    fn eval(&self, inv: &SurfaceInvariants) -> Rat {
        let powers = |x: &Rat| -> Vec<Rat> {
            let mut v = vec![Rat::one()];
            for k in 0..6 {
                let next = &v[k] * x;
                v.push(next);
            }
            v
        };
        let (d, g, chi, k2) = (powers(&inv.d), powers(&inv.g), powers(&inv.chi), powers(&inv.k2));
        let mut acc = Rat::zero();
        for &(c, pd, pg, pc, pk) in self.terms {
            acc += &d[pd as usize] * &g[pg as usize] * &chi[pc as usize] * &k2[pk as usize] * c;
        }
        acc / self.denominator
    }
}

/// Double points: 2-secant lines meeting a general `P^{r-5}`.
pub fn n2(inv: &SurfaceInvariants, _r: i64) -> SecantCount {
    SecantCount { value: N2.eval(inv), applicable: true }
}

/// 3-secant lines of a surface in `P^6` meeting a general `P^4`; fails for scrolls.
pub fn n3_6(inv: &SurfaceInvariants) -> SecantCount {
    SecantCount { value: N3_6.eval(inv), applicable: !inv.is_scroll }
}

/// 3-secant lines of a surface in `P^4` through a general point.
pub fn n3_4(inv: &SurfaceInvariants) -> SecantCount {
    SecantCount { value: N3_4.eval(inv), applicable: true }
}

/// 4-secant lines of a surface in `P^4` meeting a general line.
pub fn n4_4(inv: &SurfaceInvariants) -> SecantCount {
    SecantCount { value: N4_4.eval(inv), applicable: true }
}

/// 5-secant lines of a surface in `P^4` meeting a general plane; fails for scrolls.
pub fn n5_4(inv: &SurfaceInvariants) -> SecantCount {
    SecantCount { value: N5_4.eval(inv), applicable: !inv.is_scroll }
}

/// 6-secant lines of a surface in `P^4`, corrected by the lines of self-intersection `l_j`.
pub fn n6_4(inv: &SurfaceInvariants) -> SecantCount {
    let lines: Rat = inv.line_selfints.iter().map(|&l| binom(7 + l, 6)).sum();
    SecantCount { value: N6_4.eval(inv) - lines, applicable: !inv.is_scroll }
}

/// The formulae by name, for constraint records and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    N2,
    N3_6,
    N3_4,
    N4_4,
    N5_4,
    N6_4,
}

impl Formula {
    pub const ALL: [Formula; 6] = [Formula::N2, Formula::N3_6, Formula::N3_4, Formula::N4_4, Formula::N5_4, Formula::N6_4];

    pub fn eval(&self, inv: &SurfaceInvariants, r: i64) -> SecantCount {
        match self {
            Formula::N2 => n2(inv, r),
            Formula::N3_6 => n3_6(inv),
            Formula::N3_4 => n3_4(inv),
            Formula::N4_4 => n4_4(inv),
            Formula::N5_4 => n5_4(inv),
            Formula::N6_4 => n6_4(inv),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Formula::N2 => "N2",
            Formula::N3_6 => "N3,6",
            Formula::N3_4 => "N3,4",
            Formula::N4_4 => "N4,4",
            Formula::N5_4 => "N5,4",
            Formula::N6_4 => "N6,4",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: i64, g: i64, k2: i64, chi: i64) -> SurfaceInvariants {
        SurfaceInvariants::new(d, g, k2, chi)
    }

    #[test]
    fn double_points() {
        assert_eq!(n2(&s(8, 3, 1, 1), 6).value, 7);
        assert_eq!(n2(&s(1, 0, 9, 1), 4).value, 0);
        assert_eq!(n2(&s(4, 0, 9, 1), 5).value, 0);
    }

    #[test]
    fn trisecants_in_p6() {
        assert_eq!(n3_6(&s(8, 3, 1, 1)).value, 0);
        assert_eq!(n3_6(&s(7, 2, 3, 1)).value, 0);
        let scroll = SurfaceInvariants::scroll(7.into(), 1.into());
        assert!(!n3_6(&scroll).applicable);
    }

    #[test]
    fn p4_counts() {
        let elliptic_scroll = SurfaceInvariants::scroll(5.into(), 1.into());
        assert_eq!(n3_4(&elliptic_scroll).value, 0);
        assert!(!n5_4(&elliptic_scroll).applicable);
        assert!(!n6_4(&elliptic_scroll).applicable);
        let x = s(9, 8, -5, 2);
        assert_eq!(n6_4(&x).value, N6_4.eval(&x));
    }

    #[test]
    fn line_correction() {
        let mut x = s(12, 15, 8, 6);
        let raw = n6_4(&x).value;
        x.line_selfints = vec![0, -1, -2];
        assert_eq!(n6_4(&x).value, raw - 8);
    }
}
