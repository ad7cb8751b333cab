use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{binom, Rat};

/// Univariate polynomial over `Rat`, coefficients in increasing degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `t + c`.
    pub fn linear(c: Rat) -> Self {
        Poly::new(vec![c, Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `t -> f(t + s)`.
    pub fn shift(&self, s: i64) -> Poly {
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut pw = Rat::one();
            for j in (0..=k).rev() {
                out[j] += binom(k as i64, j as i64) * c * &pw;
                pw = pw * s;
            }
        }
        Poly::new(out)
    }

    /// Backward difference `f(t) - f(t-1)`.
    pub fn delta(&self) -> Poly {
        self - &self.shift(-1)
    }

    /// `C(t + k + r, r)` as a polynomial in `t`: the Euler characteristic of `O(k)` on `P^r`.
    pub fn binomial_in_t(r: i64, k: i64) -> Poly {
        let mut p = Poly::constant(Rat::one());
        for j in 1..=r {
            p = &p * &Poly::linear(Rat::int(k + j));
        }
        let mut fact = Rat::one();
        for j in 1..=r {
            fact = fact * j;
        }
        p.scale(&fact.recip().expect("nonzero factorial"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[Rat], i: usize| v.get(i).cloned().unwrap_or_else(Rat::zero);
        Poly::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &-rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
