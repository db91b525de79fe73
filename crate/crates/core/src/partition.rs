//! Equitable and dominatable vertex partitions.
//!
//! A partition is equitable when the number of neighbors a vertex of cell
//! `i` has in cell `j` depends only on `(i, j)`; those counts form the
//! characteristic matrix. It is dominatable when column `l` of that matrix
//! is constant `a_l` off the diagonal and `a_l - 1` on it, so that every
//! closed neighborhood meets cell `l` in exactly `a_l` vertices.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::domination::{DominatingFunction, DominationError};
use crate::graph::{Graph, GraphError};
use crate::linalg::{char_poly, poly_divides, IntMatrix, IntPolynomial};

/// Default largest graph handed to the characteristic polynomial routine.
pub const DEFAULT_CHARPOLY_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("partition is not equitable")]
    NotEquitable,
    #[error("partition is not dominatable")]
    NotDominatable,
    #[error("alpha has {found} entries for {expected} cells")]
    AlphaLength { expected: usize, found: usize },
    #[error("alpha value {value} for cell {cell} is outside [0, {j}]")]
    AlphaOutOfRange { cell: usize, value: u64, j: u64 },
    #[error("characteristic matrix row sums are not constant")]
    NonConstantRowSums,
    #[error("graph has {n} vertices, above the characteristic polynomial cap {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("partition has {cells} cells but the base graph has {base} vertices")]
    CellCountMismatch { cells: usize, base: usize },
    #[error("function is not constant on fibre {0}")]
    NotConstantOnFibres(usize),
    #[error("function has {found} values, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cover parameter k must be at least 1")]
    BadK,
    #[error("the given set is not a perfect code")]
    NotPerfectCode,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Domination(#[from] DominationError),
}

/// A partition of `{0..n-1}` into nonempty cells. Cell order is preserved
/// as given (it matters for covers); vertices within a cell are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, mut cells: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut cell_of = vec![usize::MAX; n];
        for (i, cell) in cells.iter_mut().enumerate() {
            if cell.is_empty() {
                return Err(PartitionError::BadPartition(format!("cell {i} is empty")));
            }
            cell.sort_unstable();
            for &v in cell.iter() {
                if v >= n {
                    return Err(PartitionError::BadPartition(format!(
                        "vertex {v} is out of range for {n} vertices"
                    )));
                }
                if cell_of[v] != usize::MAX {
                    return Err(PartitionError::BadPartition(format!(
                        "vertex {v} appears in more than one cell"
                    )));
                }
                cell_of[v] = i;
            }
        }
        if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(PartitionError::BadPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(VertexPartition { cells, cell_of })
    }

    /// Groups vertices by label; cells are ordered by label value.
    pub fn from_labels(labels: &[usize]) -> Result<Self, PartitionError> {
        let mut distinct: Vec<usize> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut cells = vec![Vec::new(); distinct.len()];
        for (v, l) in labels.iter().enumerate() {
            let idx = distinct.binary_search(l).expect("label listed");
            cells[idx].push(v);
        }
        Self::new(labels.len(), cells)
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            cells: (0..n).map(|v| vec![v]).collect(),
            cell_of: (0..n).collect(),
        }
    }

    /// The same partition with cells sorted by minimum element.
    pub fn canonicalized(&self) -> Self {
        let mut cells = self.cells.clone();
        cells.sort_by_key(|c| c[0]);
        Self::new(self.cell_of.len(), cells).expect("reordering keeps validity")
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self) -> &[usize] {
        &self.cell_of
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn n(&self) -> usize {
        self.cell_of.len()
    }

    pub(crate) fn check_graph(&self, x: &Graph) -> Result<(), PartitionError> {
        if self.n() != x.n() {
            return Err(PartitionError::BadPartition(format!(
                "partition covers {} vertices, graph has {}",
                self.n(),
                x.n()
            )));
        }
        Ok(())
    }

    /// Neighbor counts of `v` into each cell.
    pub(crate) fn profile(&self, x: &Graph, v: usize) -> Vec<u64> {
        let mut counts = vec![0u64; self.len()];
        for &u in x.neighbors(v) {
            counts[self.cell_of[u]] += 1;
        }
        counts
    }
}

/// The s×s matrix of an equitable partition: entry `(i, j)` is the number
/// of neighbors any vertex of cell `i` has in cell `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicMatrix {
    rows: Vec<Vec<u64>>,
}

impl CharacteristicMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self, PartitionError> {
        let s = rows.len();
        if rows.iter().any(|r| r.len() != s) {
            return Err(PartitionError::BadPartition(
                "characteristic matrix must be square".into(),
            ));
        }
        Ok(CharacteristicMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let s = self.size();
        IntMatrix::new(
            s,
            s,
            self.rows
                .iter()
                .flatten()
                .map(|&x| BigInt::from(x))
                .collect(),
        )
        .expect("square by construction")
    }

    /// `a_l` values when the column pattern of a dominatable partition holds.
    pub fn dominatable_values(&self) -> Option<Vec<u64>> {
        let s = self.size();
        (0..s)
            .map(|l| {
                let a = self.rows[l][l] + 1;
                (0..s).all(|i| i == l || self.rows[i][l] == a).then_some(a)
            })
            .collect()
    }
}

/// `A_π` if `π` is equitable on `x`, `None` otherwise.
pub fn characteristic_matrix(
    x: &Graph,
    pi: &VertexPartition,
) -> Result<Option<CharacteristicMatrix>, PartitionError> {
    pi.check_graph(x)?;
    let mut rows = Vec::with_capacity(pi.len());
    for cell in pi.cells() {
        let first = pi.profile(x, cell[0]);
        if cell[1..].iter().any(|&v| pi.profile(x, v) != first) {
            return Ok(None);
        }
        rows.push(first);
    }
    Ok(Some(CharacteristicMatrix { rows }))
}

/// The values `a_1..a_s` when `π` is a dominatable partition of `x`.
pub fn is_dominatable(x: &Graph, pi: &VertexPartition) -> Result<Option<Vec<u64>>, PartitionError> {
    Ok(characteristic_matrix(x, pi)?.and_then(|m| m.dominatable_values()))
}

/// The function constant `alpha[l]` on cell `l` of a dominatable partition;
/// it is efficient with `k = Σ alpha_l a_l`.
pub fn function_from_dominatable(
    x: &Graph,
    pi: &VertexPartition,
    alpha: &[u64],
    j: u64,
) -> Result<DominatingFunction, PartitionError> {
    if alpha.len() != pi.len() {
        return Err(PartitionError::AlphaLength {
            expected: pi.len(),
            found: alpha.len(),
        });
    }
    if let Some((cell, &value)) = alpha.iter().enumerate().find(|(_, &a)| a > j) {
        return Err(PartitionError::AlphaOutOfRange { cell, value, j });
    }
    let a = is_dominatable(x, pi)?.ok_or(PartitionError::NotDominatable)?;
    let k = alpha.iter().zip(&a).map(|(al, al_a)| al * al_a).sum();
    let values = pi.cell_of().iter().map(|&c| alpha[c]).collect();
    Ok(DominatingFunction::new(j, k, values)?)
}

/// Spectral form of the dominatable condition: `char_poly(A_π) = (x − r)(x + 1)^(s−1)`.
pub fn dominatable_eigen_check(m: &CharacteristicMatrix) -> Result<bool, PartitionError> {
    let sums = m.row_sums();
    let r = match sums.first() {
        Some(&r) if sums.iter().all(|&x| x == r) => r,
        Some(_) => return Err(PartitionError::NonConstantRowSums),
        None => return Ok(true),
    };
    let s = m.size() as u32;
    let target = IntPolynomial::new(vec![-BigInt::from(r), BigInt::from(1)])
        .mul(&IntPolynomial::from_i64(&[1, 1]).pow(s - 1));
    let cp = char_poly(&m.to_int_matrix()).expect("square");
    Ok(cp == target)
}

/// Whether the characteristic polynomial of `A_π` divides that of `A(X)`.
pub fn charpoly_divides_graph(
    x: &Graph,
    pi: &VertexPartition,
    cap: usize,
) -> Result<bool, PartitionError> {
    let m = characteristic_matrix(x, pi)?.ok_or(PartitionError::NotEquitable)?;
    if x.n() > cap {
        return Err(PartitionError::SizeCap { n: x.n(), cap });
    }
    let quotient = char_poly(&m.to_int_matrix()).expect("square");
    let whole = char_poly(&x.adjacency_matrix()).expect("square");
    Ok(poly_divides(&quotient, &whole).expect("characteristic polynomials are monic"))
}
