//! Admissible degrees of a prime Fano target by coindex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanoError {
    #[error("index {index} exceeds dim+1 = {}", .dim + 1)]
    ImpossibleIndex { dim: i64, index: i64 },
    #[error("index must be positive, got {0}")]
    NonPositiveIndex(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoTarget {
    pub r_dim: i64,
    pub index: i64,
    pub coindex: i64,
    /// `None` when no classification is available (coindex at least 4).
    pub degrees: Option<Vec<i64>>,
    pub citation: String,
}

const MUKAI: [i64; 9] = [4, 6, 8, 10, 12, 14, 16, 18, 22];

pub fn target(r_dim: i64, index: i64) -> Result<FanoTarget, FanoError> {
    if index < 1 {
        return Err(FanoError::NonPositiveIndex(index));
    }
    if index > r_dim + 1 {
        return Err(FanoError::ImpossibleIndex { dim: r_dim, index });
    }
    let coindex = r_dim + 1 - index;
    let (degrees, citation) = match coindex {
        0 => (Some(vec![1]), "Kobayashi-Ochiai: Z is projective space"),
        1 => (Some(vec![2]), "Kobayashi-Ochiai: Z is a quadric"),
        2 => (Some(vec![3, 4, 5]), "Fujita: prime del Pezzo manifolds"),
        3 => {
            let cap = match r_dim {
                6 => 16,
                4 | 5 => 18,
                _ => 22,
            };
            let list = MUKAI.iter().copied().filter(|&z| z <= cap).collect();
            (Some(list), "Mukai: prime Fano manifolds of coindex 3")
        }
        _ => (None, "no classification for coindex at least 4"),
    };
    Ok(FanoTarget { r_dim, index, coindex, degrees, citation: citation.to_string() })
}

/// Admissible degrees `z` for `Z` of dimension `r_dim` and index `index`.
pub fn admissible_degrees(r_dim: i64, index: i64) -> Result<Option<Vec<i64>>, FanoError> {
    Ok(target(r_dim, index)?.degrees)
}

/// Small degrees force small coindex: `z = 1, 2, 3` need coindex `0`, `<= 1`, `<= 2`.
/// Coindex `0` is projective space, so it also forces `z = 1`.
pub fn degree_coindex_compatible(z: i64, coindex: i64) -> bool {
    if coindex == 0 {
        return z == 1;
    }
    !((z == 1 && coindex > 0) || (z == 2 && coindex > 1) || (z == 3 && coindex > 2))
}
