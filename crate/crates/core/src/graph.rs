//! Simple undirected graphs and the generators for the families used here:
//! complete, cycle and complete bipartite graphs, Hamming graphs, folded
//! cubes and Cayley graphs over GF(q)^d.
//!
//! Vertices of the vector-space families are identified with their base-q
//! rank: the tuple `(x_0, ..., x_{d-1})` is vertex `Σ code(x_i) q^i`.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::field::FieldSpec;
use crate::linalg::IntMatrix;

/// Default limit on generated vertex counts.
pub const DEFAULT_SIZE_CAP: usize = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph would have {requested} vertices, above the cap of {cap}")]
    SizeCapExceeded { requested: u128, cap: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad connection set: {0}")]
    BadConnectionSet(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
}

/// A finite simple undirected graph with sorted, duplicate-free neighbor
/// lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(
        name: impl Into<String>,
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            name: name.into(),
            adjacency,
        })
    }

    /// Builds a graph from neighbor lists, which must already describe a
    /// symmetric loop-free relation. Lists are sorted and deduplicated.
    pub fn from_adjacency(
        name: impl Into<String>,
        mut adjacency: Vec<Vec<usize>>,
    ) -> Result<Self, GraphError> {
        let n = adjacency.len();
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&w) = list.iter().find(|&&w| w >= n) {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
            if list.binary_search(&v).is_ok() {
                return Err(GraphError::SelfLoop(v));
            }
        }
        for (v, list) in adjacency.iter().enumerate() {
            for &w in list {
                if adjacency[w].binary_search(&v).is_err() {
                    return Err(GraphError::Asymmetric(v, w));
                }
            }
        }
        Ok(Graph {
            name: name.into(),
            adjacency,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|l| l.len() == r).then_some(r)
    }

    /// `values[v] + Σ_{u ~ v} values[u]`.
    pub fn closed_neighborhood_sum(&self, values: &[u64], v: usize) -> u64 {
        values[v] + self.adjacency[v].iter().map(|&u| values[u]).sum::<u64>()
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut m = IntMatrix::zeros(n, n);
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                m.set(u, v, BigInt::one());
            }
        }
        m
    }

    /// `A(X) + I`.
    pub fn closed_adjacency_matrix(&self) -> IntMatrix {
        let mut m = self.adjacency_matrix();
        for v in 0..self.n() {
            m.set(v, v, BigInt::one());
        }
        m
    }

    /// Number of neighbors of `v` inside `set` (given as a membership mask).
    pub fn neighbors_in(&self, v: usize, mask: &[bool]) -> usize {
        self.adjacency[v].iter().filter(|&&u| mask[u]).count()
    }
}

fn check_cap(requested: u128, cap: usize) -> Result<usize, GraphError> {
    if requested > cap as u128 {
        Err(GraphError::SizeCapExceeded { requested, cap })
    } else {
        Ok(requested as usize)
    }
}

fn checked_power(q: usize, d: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

/// Base-q rank of a tuple, coordinate 0 least significant.
pub fn vertex_rank(q: u32, tuple: &[u32]) -> usize {
    tuple
        .iter()
        .rev()
        .fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

/// Inverse of [`vertex_rank`].
pub fn vertex_tuple(q: u32, d: usize, mut rank: usize) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let x = (rank % q as usize) as u32;
            rank /= q as usize;
            x
        })
        .collect()
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParameter(
            "complete graph needs n >= 1".into(),
        ));
    }
    let adjacency = (0..n)
        .map(|v| (0..n).filter(|&u| u != v).collect())
        .collect();
    Ok(Graph {
        name: format!("K_{n}"),
        adjacency,
    })
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadParameter("cycle needs n >= 3".into()));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(format!("C_{n}"), n, &edges)
}

/// `K_{m,n}` with parts `{0..m-1}` and `{m..m+n-1}`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    if m == 0 || n == 0 {
        return Err(GraphError::BadParameter(
            "complete bipartite graph needs both parts nonempty".into(),
        ));
    }
    let edges: Vec<_> = (0..m)
        .flat_map(|a| (m..m + n).map(move |b| (a, b)))
        .collect();
    Graph::from_edges(format!("K_{{{m},{n}}}"), m + n, &edges)
}

/// `H(q, d)` over an alphabet of `q` symbols: tuples adjacent iff they
/// differ in exactly one coordinate.
pub fn hamming_graph(q: usize, d: usize, cap: usize) -> Result<Graph, GraphError> {
    if q < 2 || d < 1 {
        return Err(GraphError::BadParameter(format!(
            "H(q,d) needs q >= 2 and d >= 1, got q={q}, d={d}"
        )));
    }
    let n = check_cap(checked_power(q, d), cap)?;
    let mut places = Vec::with_capacity(d);
    let mut place = 1usize;
    for _ in 0..d {
        places.push(place);
        place *= q;
    }
    let adjacency = (0..n)
        .map(|v| {
            let mut list = Vec::with_capacity((q - 1) * d);
            for &pl in &places {
                let digit = (v / pl) % q;
                let base = v - digit * pl;
                list.extend((0..q).filter(|&s| s != digit).map(|s| base + s * pl));
            }
            list.sort_unstable();
            list
        })
        .collect();
    Ok(Graph {
        name: format!("H({q},{d})"),
        adjacency,
    })
}

/// The d-cube `Q_d = H(2, d)`.
pub fn hypercube(d: usize, cap: usize) -> Result<Graph, GraphError> {
    let mut g = hamming_graph(2, d, cap)?;
    g.name = format!("Q_{d}");
    Ok(g)
}

/// Folded cube `F_d`: `Q_{d-1}` plus the antipodal perfect matching.
pub fn folded_cube(d: usize, cap: usize) -> Result<Graph, GraphError> {
    if d < 2 {
        return Err(GraphError::BadParameter("folded cube needs d >= 2".into()));
    }
    let n = check_cap(checked_power(2, d - 1), cap)?;
    let mask = n - 1;
    let adjacency = (0..n)
        .map(|v| {
            let mut list: Vec<usize> = (0..d - 1).map(|i| v ^ (1 << i)).collect();
            let antipode = v ^ mask;
            // F_2 = K_2 already has the antipode as a cube neighbor.
            if !list.contains(&antipode) {
                list.push(antipode);
            }
            list.sort_unstable();
            list
        })
        .collect();
    Ok(Graph {
        name: format!("F_{d}"),
        adjacency,
    })
}

/// A Cayley graph on the additive group GF(q)^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyPresentation {
    field: FieldSpec,
    d: usize,
    connection: Vec<Vec<u32>>,
}

impl CayleyPresentation {
    /// Checks that the connection set avoids zero and is closed under
    /// negation. Duplicates are removed and the set is sorted by rank.
    pub fn new(field: &FieldSpec, d: usize, connection: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let q = field.order();
        for c in &connection {
            if c.len() != d {
                return Err(GraphError::BadConnectionSet(format!(
                    "element {c:?} does not have length {d}"
                )));
            }
            if c.iter().any(|&x| x >= q) {
                return Err(GraphError::BadConnectionSet(format!(
                    "element {c:?} has an entry outside GF({q})"
                )));
            }
            if c.iter().all(|&x| x == 0) {
                return Err(GraphError::BadConnectionSet(
                    "contains the zero vector".into(),
                ));
            }
        }
        let mut connection = connection;
        connection.sort_by_key(|c| vertex_rank(q, c));
        connection.dedup();
        for c in &connection {
            let neg: Vec<u32> = c.iter().map(|&x| field.neg(x)).collect();
            if !connection.contains(&neg) {
                return Err(GraphError::BadConnectionSet(format!(
                    "not closed under negation: {c:?} has no inverse"
                )));
            }
        }
        Ok(CayleyPresentation {
            field: field.clone(),
            d,
            connection,
        })
    }

    /// `{α e_i : α ≠ 0}`, the presentation of `H(q, d)`.
    pub fn hamming(field: &FieldSpec, d: usize) -> Self {
        let connection = (0..d)
            .flat_map(|i| {
                (1..field.order()).map(move |alpha| {
                    let mut v = vec![0; d];
                    v[i] = alpha;
                    v
                })
            })
            .collect();
        Self::new(field, d, connection).expect("hamming connection set is valid")
    }

    /// `{e_1, ..., e_{d-1}, 1}` over GF(2)^{d-1}, the presentation of `F_d`.
    pub fn folded_cube(d: usize) -> Result<Self, GraphError> {
        if d < 2 {
            return Err(GraphError::BadParameter("folded cube needs d >= 2".into()));
        }
        let f2 = FieldSpec::prime(2).expect("2 is prime");
        let mut connection: Vec<Vec<u32>> = (0..d - 1)
            .map(|i| {
                let mut v = vec![0; d - 1];
                v[i] = 1;
                v
            })
            .collect();
        connection.push(vec![1; d - 1]);
        Self::new(&f2, d - 1, connection)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn connection(&self) -> &[Vec<u32>] {
        &self.connection
    }

    pub fn group_order(&self) -> u128 {
        checked_power(self.field.order() as usize, self.d)
    }

    /// Group sum of two ranks.
    pub fn add_ranks(&self, u: usize, v: usize) -> usize {
        let q = self.field.order();
        let a = vertex_tuple(q, self.d, u);
        let b = vertex_tuple(q, self.d, v);
        let s: Vec<u32> = a
            .iter()
            .zip(&b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect();
        vertex_rank(q, &s)
    }

    pub fn neg_rank(&self, u: usize) -> usize {
        let q = self.field.order();
        let a: Vec<u32> = vertex_tuple(q, self.d, u)
            .into_iter()
            .map(|x| self.field.neg(x))
            .collect();
        vertex_rank(q, &a)
    }
}

/// Cayley graph `X(GF(q)^d, C)`: `u ~ v` iff `u - v ∈ C`.
pub fn cayley_graph(pres: &CayleyPresentation, cap: usize) -> Result<Graph, GraphError> {
    let n = check_cap(pres.group_order(), cap)?;
    let q = pres.field.order();
    let f = &pres.field;
    let adjacency = (0..n)
        .map(|v| {
            let t = vertex_tuple(q, pres.d, v);
            let mut list: Vec<usize> = pres
                .connection
                .iter()
                .map(|c| {
                    let s: Vec<u32> = t.iter().zip(c).map(|(&x, &y)| f.add(x, y)).collect();
                    vertex_rank(q, &s)
                })
                .collect();
            list.sort_unstable();
            list
        })
        .collect();
    Ok(Graph {
        name: format!("Cay({}^{},|C|={})", f, pres.d, pres.connection.len()),
        adjacency,
    })
}
