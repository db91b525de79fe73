//! Exact detection of the eigenvalue −1, and the construction turning an
//! integral (−1)-eigenvector into an efficient dominating function.
//!
//! For an r-regular graph, `(A + I) f = k·1` has a non-constant solution
//! `f ≥ 0` exactly when −1 is an eigenvalue: shift any integral
//! (−1)-eigenvector `x` by `a = −min(x)` and the result satisfies the system
//! with `k = a(r + 1)`, since `x` is orthogonal to the all-ones vector.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::domination::{DominatingFunction, DominationError};
use crate::graph::Graph;
use crate::linalg::certified_kernel;

/// Default largest graph for the dense rank computation.
pub const DEFAULT_SPECTRAL_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has {n} vertices, above the spectral cap {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("vector is not a (-1)-eigenvector")]
    NotEigenvector,
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("shifted values do not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Domination(#[from] DominationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinusOneReport {
    pub multiplicity: usize,
    /// First canonical primitive integer vector of `ker(A + I)`.
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Vec<BigInt>>,
}

fn serialize_witness<S: serde::Serializer>(
    w: &Option<Vec<BigInt>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match w {
        None => s.serialize_none(),
        Some(v) => {
            let small: Option<Vec<i64>> = v.iter().map(ToPrimitive::to_i64).collect();
            match small {
                Some(small) => s.serialize_some(&small),
                None => s.serialize_some(&v.iter().map(ToString::to_string).collect::<Vec<_>>()),
            }
        }
    }
}

/// Multiplicity of −1 as an eigenvalue of a regular graph, `n − rank(A + I)`,
/// with a witness eigenvector when positive.
pub fn minus_one_multiplicity(x: &Graph, cap: usize) -> Result<MinusOneReport, SpectralError> {
    x.regular_degree().ok_or(SpectralError::NotRegular)?;
    if x.n() > cap {
        return Err(SpectralError::SizeCap { n: x.n(), cap });
    }
    let (rank, basis) = certified_kernel(&x.closed_adjacency_matrix());
    Ok(MinusOneReport {
        multiplicity: x.n() - rank,
        witness: basis.into_iter().next(),
    })
}

/// `x + a·1` with `a = −min(x)`; efficient with `j = max` and `k = a(r + 1)`.
pub fn function_from_eigenvector(
    x: &Graph,
    vector: &[BigInt],
) -> Result<DominatingFunction, SpectralError> {
    let r = x.regular_degree().ok_or(SpectralError::NotRegular)?;
    if vector.len() != x.n() {
        return Err(SpectralError::LengthMismatch {
            expected: x.n(),
            found: vector.len(),
        });
    }
    if vector.iter().all(Zero::is_zero) {
        return Err(SpectralError::ZeroVector);
    }
    let is_eigen = (0..x.n()).all(|v| {
        let s: BigInt = &vector[v] + x.neighbors(v).iter().map(|&u| &vector[u]).sum::<BigInt>();
        s.is_zero()
    });
    if !is_eigen {
        return Err(SpectralError::NotEigenvector);
    }
    let min = vector.iter().min().expect("nonempty");
    let shift = -min.clone();
    debug_assert!(shift.is_positive(), "eigenvectors of -1 sum to zero");
    let values: Vec<u64> = vector
        .iter()
        .map(|e| (e + &shift).to_u64().ok_or(SpectralError::Overflow))
        .collect::<Result<_, _>>()?;
    let j = values.iter().copied().max().unwrap_or(0);
    let k = shift
        .to_u64()
        .and_then(|a| a.checked_mul(r as u64 + 1))
        .ok_or(SpectralError::Overflow)?;
    Ok(DominatingFunction::new(j, k, values)?)
}
