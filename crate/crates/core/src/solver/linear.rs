//! Exact elimination for affine systems `A x + P p + c = 0`.
//!
//! The residual is supplied as a closure; its coefficients are read off by
//! probing at the origin and at unit vectors, and affinity is checked at one
//! extra point.

use thiserror::Error;

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("residual is not affine in the unknowns and parameters")]
    NotAffine,
    #[error("unknowns are underdetermined (rank {rank} < {unknowns})")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("residual length changed between evaluations")]
    Shape,
}

/// `x = M p + x0`, valid on the affine subspace `L p + l0 = 0` of parameters.
#[derive(Debug, Clone)]
pub struct ParametricSolution {
    m: Vec<Vec<Rat>>,
    x0: Vec<Rat>,
    constraints: Vec<(Vec<Rat>, Rat)>,
}

impl ParametricSolution {
    /// Unknowns at `p`, or `None` when `p` violates a compatibility condition.
    pub fn at(&self, p: &[Rat]) -> Option<Vec<Rat>> {
        for (l, l0) in &self.constraints {
            let v: Rat = l.iter().zip(p).map(|(a, b)| a * b).sum::<Rat>() + l0;
            if !v.is_zero() {
                return None;
            }
        }
        Some(
            self.m
                .iter()
                .zip(&self.x0)
                .map(|(row, x0)| row.iter().zip(p).map(|(a, b)| a * b).sum::<Rat>() + x0)
                .collect(),
        )
    }

    /// Residuals of the compatibility conditions at `p`.
    pub fn defects(&self, p: &[Rat]) -> Vec<Rat> {
        self.constraints
            .iter()
            .map(|(l, l0)| l.iter().zip(p).map(|(a, b)| a * b).sum::<Rat>() + l0)
            .collect()
    }
}

fn unit(n: usize, k: usize) -> Vec<Rat> {
    (0..n).map(|j| if j == k { Rat::one() } else { Rat::zero() }).collect()
}

/// Solves `f(x, p) = 0` for `x`, where `f` is affine in both arguments.
pub fn solve_parametric<F>(unknowns: usize, params: usize, f: F) -> Result<ParametricSolution, LinearError>
where
    F: Fn(&[Rat], &[Rat]) -> Vec<Rat>,
{
    let zx = vec![Rat::zero(); unknowns];
    let zp = vec![Rat::zero(); params];
    let c = f(&zx, &zp);
    let rows = c.len();
    let column = |v: Vec<Rat>| -> Result<Vec<Rat>, LinearError> {
        if v.len() != rows {
            return Err(LinearError::Shape);
        }
        Ok(v.iter().zip(&c).map(|(a, b)| a - b).collect())
    };
    let a_cols: Vec<Vec<Rat>> = (0..unknowns).map(|k| column(f(&unit(unknowns, k), &zp))).collect::<Result<_, _>>()?;
    let p_cols: Vec<Vec<Rat>> = (0..params).map(|k| column(f(&zx, &unit(params, k)))).collect::<Result<_, _>>()?;

    let probe_x: Vec<Rat> = (0..unknowns).map(|k| Rat::int(k as i64 + 2)).collect();
    let probe_p: Vec<Rat> = (0..params).map(|k| Rat::int(3 - 2 * k as i64)).collect();
    let actual = f(&probe_x, &probe_p);
    for (row, val) in actual.iter().enumerate() {
        let mut predicted = c[row].clone();
        for k in 0..unknowns {
            predicted += &a_cols[k][row] * &probe_x[k];
        }
        for k in 0..params {
            predicted += &p_cols[k][row] * &probe_p[k];
        }
        if predicted != *val {
            return Err(LinearError::NotAffine);
        }
    }

    // augmented rows [A | -P | -c]: A x = -P p - c
    let width = unknowns + params + 1;
    let mut mat: Vec<Vec<Rat>> = (0..rows)
        .map(|row| {
            let mut v = Vec::with_capacity(width);
            v.extend((0..unknowns).map(|k| a_cols[k][row].clone()));
            v.extend((0..params).map(|k| -&p_cols[k][row]));
            v.push(-&c[row]);
            v
        })
        .collect();

    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(sel) = (pivot_row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(pivot_row, sel);
        let inv = mat[pivot_row][col].recip().expect("nonzero pivot");
        for v in mat[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for j in 0..width {
                    let delta = &factor * &mat[pivot_row][j];
                    mat[r][j] -= delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < unknowns {
        return Err(LinearError::Underdetermined { rank: pivots.len(), unknowns });
    }
    let m = (0..unknowns).map(|k| mat[k][unknowns..unknowns + params].to_vec()).collect();
    let x0 = (0..unknowns).map(|k| mat[k][width - 1].clone()).collect();
    // leftover rows read 0 = -P' p - c', i.e. P' p + c' = 0 after negation
    let constraints = mat[unknowns..]
        .iter()
        .filter(|row| row[unknowns..].iter().any(|v| !v.is_zero()))
        .map(|row| (row[unknowns..unknowns + params].iter().map(|v| -v).collect(), -&row[width - 1]))
        .collect();
    Ok(ParametricSolution { m, x0, constraints })
}
