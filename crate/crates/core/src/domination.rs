//! (j,k)-dominating functions and their verification.
//!
//! A function `f: V → {0..j}` is (j,k)-dominating when every closed
//! neighborhood carries total value at least `k`, and efficient when every
//! closed neighborhood carries exactly `k`, i.e. `(A + I) f = k·1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("function has {found} values but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("value {value} at vertex {vertex} is outside [0, {j}]")]
    ValueOutOfRange { vertex: usize, value: u64, j: u64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("function is not efficient")]
    NotEfficient,
    #[error("function is not 0/1-valued")]
    NotZeroOne,
    #[error("k = {k} is outside 1..={r}")]
    BadK { k: u64, r: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
}

/// A vertex-indexed value vector with its declared `(j, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominatingFunction {
    j: u64,
    k: u64,
    values: Vec<u64>,
}

impl DominatingFunction {
    pub fn new(j: u64, k: u64, values: Vec<u64>) -> Result<Self, DominationError> {
        if let Some((vertex, &value)) = values.iter().enumerate().find(|(_, &x)| x > j) {
            return Err(DominationError::ValueOutOfRange { vertex, value, j });
        }
        Ok(DominatingFunction { j, k, values })
    }

    pub fn zero(n: usize, k: u64) -> Self {
        DominatingFunction {
            j: 1,
            k,
            values: vec![0; n],
        }
    }

    /// 0/1 indicator of `support` on `n` vertices.
    pub fn indicator(n: usize, support: &[usize], k: u64) -> Result<Self, DominationError> {
        let mut values = vec![0; n];
        for &v in support {
            *values
                .get_mut(v)
                .ok_or(DominationError::VertexOutOfRange(v))? = 1;
        }
        Ok(DominatingFunction { j: 1, k, values })
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&v| self.values[v] != 0)
            .collect()
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn is_zero_one(&self) -> bool {
        self.values.iter().all(|&x| x <= 1)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// True when some vertex attains the declared maximum `j`.
    pub fn is_tight(&self) -> bool {
        self.max_value() == self.j
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = k;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub efficient: bool,
    /// The common closed-neighborhood sum, when all sums agree.
    pub observed_k: Option<u64>,
    /// Every vertex whose closed-neighborhood sum differs from `k`.
    pub violations: Vec<(usize, u64)>,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationReport {
    pub dominating: bool,
    /// Every vertex whose closed-neighborhood sum is below `k`.
    pub violations: Vec<(usize, u64)>,
}

fn closed_sums(x: &Graph, f: &DominatingFunction) -> Result<Vec<u64>, DominationError> {
    if f.values.len() != x.n() {
        return Err(DominationError::LengthMismatch {
            expected: x.n(),
            found: f.values.len(),
        });
    }
    if let Some((vertex, &value)) = f.values.iter().enumerate().find(|(_, &v)| v > f.j) {
        return Err(DominationError::ValueOutOfRange {
            vertex,
            value,
            j: f.j,
        });
    }
    Ok((0..x.n())
        .into_par_iter()
        .map(|v| x.closed_neighborhood_sum(&f.values, v))
        .collect())
}

/// Checks `f(N[v]) = k` at every vertex, reporting all violations.
pub fn verify_efficient(
    x: &Graph,
    f: &DominatingFunction,
) -> Result<VerificationReport, DominationError> {
    let sums = closed_sums(x, f)?;
    let violations: Vec<(usize, u64)> = sums
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != f.k)
        .map(|(v, &s)| (v, s))
        .collect();
    let observed_k = match sums.first() {
        Some(&s0) if sums.iter().all(|&s| s == s0) => Some(s0),
        Some(_) => None,
        None => Some(f.k),
    };
    Ok(VerificationReport {
        efficient: violations.is_empty(),
        observed_k,
        violations,
        tight: f.is_tight(),
    })
}

/// Checks `f(N[v]) ≥ k` at every vertex.
pub fn verify_dominating(
    x: &Graph,
    f: &DominatingFunction,
) -> Result<DominationReport, DominationError> {
    let sums = closed_sums(x, f)?;
    let violations: Vec<(usize, u64)> = sums
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < f.k)
        .map(|(v, &s)| (v, s))
        .collect();
    Ok(DominationReport {
        dominating: violations.is_empty(),
        violations,
    })
}

/// Necessary condition for an efficient (j,k)-dominating function on an
/// r-regular graph with n vertices: `(r + 1) | n·k`.
pub fn divisibility_feasible(n: u64, r: u64, k: u64) -> Result<bool, DominationError> {
    if n == 0 {
        return Err(DominationError::BadParameter("n must be at least 1".into()));
    }
    if k > r + 1 {
        return Err(DominationError::BadParameter(format!(
            "k = {k} exceeds r + 1 = {}",
            r + 1
        )));
    }
    Ok((n as u128 * k as u128).is_multiple_of(r as u128 + 1))
}

/// `k ≤ j (1 + δ(X))`.
pub fn value_bound_holds(x: &Graph, j: u64, k: u64) -> bool {
    k as u128 <= j as u128 * (1 + x.min_degree() as u128)
}

/// Maps an efficient (1,k)-dominating function on an r-regular graph to the
/// efficient (1, r−k+1)-dominating function `1 − f`.
pub fn complement_dual(
    x: &Graph,
    f: &DominatingFunction,
) -> Result<DominatingFunction, DominationError> {
    let r = x.regular_degree().ok_or(DominationError::NotRegular)? as u64;
    if !f.is_zero_one() || f.j != 1 {
        return Err(DominationError::NotZeroOne);
    }
    if !verify_efficient(x, f)?.efficient {
        return Err(DominationError::NotEfficient);
    }
    Ok(DominatingFunction {
        j: 1,
        k: r + 1 - f.k,
        values: f.values.iter().map(|&v| 1 - v).collect(),
    })
}

/// For an r-regular graph and 1 ≤ k ≤ r: whether `X[S]` is (k−1)-regular
/// and `X[V∖S]` is (r−k)-regular, i.e. whether the indicator of `S` is an
/// efficient (1,k)-dominating function.
pub fn two_cell_partition_check(x: &Graph, s: &[usize], k: u64) -> Result<bool, DominationError> {
    let r = x.regular_degree().ok_or(DominationError::NotRegular)?;
    if k < 1 || k > r as u64 {
        return Err(DominationError::BadK { k, r });
    }
    let mut in_s = vec![false; x.n()];
    for &v in s {
        *in_s
            .get_mut(v)
            .ok_or(DominationError::VertexOutOfRange(v))? = true;
    }
    let k = k as usize;
    Ok((0..x.n()).all(|v| {
        let inside = x.neighbors_in(v, &in_s);
        if in_s[v] {
            inside == k - 1
        } else {
            x.degree(v) - inside == r - k
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, hypercube, DEFAULT_SIZE_CAP};

    fn df(j: u64, k: u64, values: &[u64]) -> DominatingFunction {
        DominatingFunction::new(j, k, values.to_vec()).unwrap()
    }

    #[test]
    fn small_worked_examples() {
        let c6 = cycle(6).unwrap();
        let rep = verify_efficient(&c6, &df(1, 1, &[1, 0, 0, 1, 0, 0])).unwrap();
        assert!(rep.efficient);
        assert_eq!(rep.observed_k, Some(1));
        let k23 = complete_bipartite(2, 3).unwrap();
        let rep = verify_efficient(&k23, &df(2, 5, &[2, 2, 1, 1, 1])).unwrap();
        assert!(rep.efficient && rep.tight);
    }

    #[test]
    fn complete_and_constant_functions() {
        let k4 = complete(4).unwrap();
        assert!(
            verify_efficient(&k4, &df(2, 3, &[1, 0, 2, 0]))
                .unwrap()
                .efficient
        );
        let q3 = hypercube(3, DEFAULT_SIZE_CAP).unwrap();
        assert!(verify_efficient(&q3, &df(1, 4, &[1; 8])).unwrap().efficient);
        let rep = verify_efficient(&q3, &df(1, 4, &[0; 8])).unwrap();
        assert!(!rep.efficient);
        assert_eq!(rep.violations.len(), 8);
        assert_eq!(rep.observed_k, Some(0));
        assert!(!rep.tight);
    }

    #[test]
    fn reports_every_violation() {
        let c6 = cycle(6).unwrap();
        let rep = verify_efficient(&c6, &df(1, 1, &[1, 1, 0, 1, 0, 0])).unwrap();
        assert_eq!(rep.violations, vec![(0, 2), (1, 2), (2, 2)]);
        assert_eq!(rep.observed_k, None);
    }

    #[test]
    fn input_errors() {
        let c6 = cycle(6).unwrap();
        assert_eq!(
            verify_efficient(&c6, &df(1, 1, &[1, 0])),
            Err(DominationError::LengthMismatch {
                expected: 6,
                found: 2
            })
        );
        assert_eq!(
            DominatingFunction::new(1, 1, vec![0, 2]),
            Err(DominationError::ValueOutOfRange {
                vertex: 1,
                value: 2,
                j: 1
            })
        );
    }

    #[test]
    fn domination_inequality() {
        let c6 = cycle(6).unwrap();
        assert!(
            verify_dominating(&c6, &df(1, 2, &[1; 6]))
                .unwrap()
                .dominating
        );
        let rep = verify_dominating(&c6, &df(1, 2, &[1, 0, 0, 1, 0, 0])).unwrap();
        assert_eq!(rep.violations.len(), 6);
        assert!(rep.violations.iter().all(|&(_, s)| s == 1));
        assert!(
            verify_dominating(&c6, &df(0, 0, &[0; 6]))
                .unwrap()
                .dominating
        );
    }

    #[test]
    fn divisibility_and_bounds() {
        assert_eq!(divisibility_feasible(6, 2, 1), Ok(true));
        assert_eq!(divisibility_feasible(9, 4, 1), Ok(false));
        for n in 1..20 {
            assert_eq!(divisibility_feasible(n, 3, 4), Ok(true));
        }
        assert!(divisibility_feasible(0, 2, 1).is_err());
        assert!(divisibility_feasible(6, 2, 4).is_err());

        let c6 = cycle(6).unwrap();
        assert!(value_bound_holds(&c6, 1, 3));
        assert!(!value_bound_holds(&c6, 1, 4));
        assert!(value_bound_holds(&complete_bipartite(2, 3).unwrap(), 2, 5));
    }

    #[test]
    fn duality() {
        let c6 = cycle(6).unwrap();
        let f = df(1, 1, &[1, 0, 0, 1, 0, 0]);
        let g = complement_dual(&c6, &f).unwrap();
        assert_eq!(g, df(1, 2, &[0, 1, 1, 0, 1, 1]));
        assert!(verify_efficient(&c6, &g).unwrap().efficient);
        assert_eq!(complement_dual(&c6, &g).unwrap(), f);

        let all = complement_dual(&c6, &df(1, 3, &[1; 6])).unwrap();
        assert_eq!(all, df(1, 0, &[0; 6]));

        let q3 = hypercube(3, DEFAULT_SIZE_CAP).unwrap();
        let code = DominatingFunction::indicator(8, &[0, 7], 1).unwrap();
        let dual = complement_dual(&q3, &code).unwrap();
        assert_eq!(dual.k(), 3);
        assert_eq!(dual.support(), vec![1, 2, 3, 4, 5, 6]);
        assert!(verify_efficient(&q3, &dual).unwrap().efficient);

        assert_eq!(
            complement_dual(&c6, &df(1, 1, &[1, 1, 0, 0, 0, 0])),
            Err(DominationError::NotEfficient)
        );
        assert_eq!(
            complement_dual(&c6, &df(2, 2, &[2, 0, 0, 2, 0, 0])),
            Err(DominationError::NotZeroOne)
        );
        assert_eq!(
            complement_dual(&complete_bipartite(2, 3).unwrap(), &df(1, 1, &[0; 5])),
            Err(DominationError::NotRegular)
        );
    }

    #[test]
    fn two_cell_partitions() {
        let c6 = cycle(6).unwrap();
        assert_eq!(two_cell_partition_check(&c6, &[0, 3], 1), Ok(true));
        assert_eq!(two_cell_partition_check(&c6, &[0, 1, 3, 4], 2), Ok(true));
        assert_eq!(two_cell_partition_check(&c6, &[0, 1], 1), Ok(false));
        assert!(matches!(
            two_cell_partition_check(&c6, &[0], 3),
            Err(DominationError::BadK { .. })
        ));
    }

    #[test]
    fn two_cell_check_agrees_with_verification() {
        // every subset of Q_3 and C_6, every 1 <= k <= r
        for g in [cycle(6).unwrap(), hypercube(3, DEFAULT_SIZE_CAP).unwrap()] {
            let n = g.n();
            let r = g.regular_degree().unwrap() as u64;
            for mask in 0u32..(1 << n) {
                let support: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                for k in 1..=r {
                    let f = DominatingFunction::indicator(n, &support, k).unwrap();
                    let eff = verify_efficient(&g, &f).unwrap().efficient;
                    assert_eq!(two_cell_partition_check(&g, &support, k).unwrap(), eff);
                    if eff {
                        assert!(divisibility_feasible(n as u64, r, k).unwrap());
                        assert_eq!(support.len() as u64 * (r + 1), n as u64 * k);
                    }
                }
            }
        }
    }
}
