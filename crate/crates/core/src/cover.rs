//! Covers and k-covers of a base graph, lifting and pushing functions
//! along them, and the translate partition of a perfect code in a Cayley
//! graph on GF(q)^d.

use rayon::prelude::*;
use serde::Serialize;

use crate::domination::{verify_efficient, DominatingFunction};
use crate::graph::{cayley_graph, complete, vertex_rank, vertex_tuple, CayleyPresentation, Graph};
use crate::partition::{PartitionError, VertexPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverKind {
    /// Independent fibres, perfect matchings between adjacent fibres.
    Cover,
    /// Fibres induce (k−1)-regular graphs, adjacent fibres are joined by
    /// k-regular bipartite graphs.
    KCover(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub base_size: usize,
    /// Common fibre size.
    pub fold: usize,
    pub kind: CoverKind,
    /// Fibre (base vertex) of every vertex of the covering graph.
    pub fibre_map: Vec<usize>,
}

impl CoverCertificate {
    /// The `k` of a k-cover; 1 for an ordinary cover.
    pub fn degree(&self) -> usize {
        match self.kind {
            CoverKind::Cover => 1,
            CoverKind::KCover(k) => k,
        }
    }
}

/// Checks that `fibres` (cell `i` over base vertex `i`) make `x` a cover of `y`.
pub fn verify_cover(
    x: &Graph,
    fibres: &VertexPartition,
    y: &Graph,
) -> Result<Option<CoverCertificate>, PartitionError> {
    Ok(check_kcover(x, fibres, y, 1)?.map(|mut c| {
        c.kind = CoverKind::Cover;
        c
    }))
}

/// Checks that `fibres` make `x` a k-cover of `y`. With `k = 1` this is
/// exactly [`verify_cover`].
pub fn verify_kcover(
    x: &Graph,
    fibres: &VertexPartition,
    y: &Graph,
    k: usize,
) -> Result<Option<CoverCertificate>, PartitionError> {
    check_kcover(x, fibres, y, k)
}

/// The lowest vertex violating the k-cover conditions, if any.
pub fn first_kcover_violation(
    x: &Graph,
    fibres: &VertexPartition,
    y: &Graph,
    k: usize,
) -> Option<usize> {
    let fibre_of = fibres.cell_of();
    (0..x.n()).into_par_iter().find_first(|&v| {
        let home = fibre_of[v];
        let mut nbr: Vec<usize> = x.neighbors(v).iter().map(|&u| fibre_of[u]).collect();
        nbr.sort_unstable();
        let mut distinct_away = 0;
        let mut i = 0;
        while i < nbr.len() {
            let b = nbr[i];
            let run = nbr[i..].iter().take_while(|&&c| c == b).count();
            if b != home {
                if run != k || !y.is_adjacent(home, b) {
                    return true;
                }
                distinct_away += 1;
            }
            i += run;
        }
        let own = nbr.iter().filter(|&&c| c == home).count();
        own != k - 1 || distinct_away != y.degree(home)
    })
}

fn check_kcover(
    x: &Graph,
    fibres: &VertexPartition,
    y: &Graph,
    k: usize,
) -> Result<Option<CoverCertificate>, PartitionError> {
    if k == 0 {
        return Err(PartitionError::BadK);
    }
    fibres.check_graph(x)?;
    if fibres.len() != y.n() {
        return Err(PartitionError::CellCountMismatch {
            cells: fibres.len(),
            base: y.n(),
        });
    }
    let fold = fibres.cells()[0].len();
    if fibres.cells().iter().any(|c| c.len() != fold) {
        return Ok(None);
    }
    if first_kcover_violation(x, fibres, y, k).is_some() {
        return Ok(None);
    }
    Ok(Some(CoverCertificate {
        base_size: y.n(),
        fold,
        kind: CoverKind::KCover(k),
        fibre_map: fibres.cell_of().to_vec(),
    }))
}

/// `f̂(u) = f(fibre of u)`.
pub fn lift(
    f: &DominatingFunction,
    cert: &CoverCertificate,
) -> Result<DominatingFunction, PartitionError> {
    if f.len() != cert.base_size {
        return Err(PartitionError::LengthMismatch {
            expected: cert.base_size,
            found: f.len(),
        });
    }
    let values = cert.fibre_map.iter().map(|&b| f.values()[b]).collect();
    Ok(DominatingFunction::new(f.j(), f.k(), values)?)
}

/// `f̌(b) = f(u)` for any `u` over `b`; fails unless `f` is constant on
/// every fibre.
pub fn push(
    f: &DominatingFunction,
    cert: &CoverCertificate,
) -> Result<DominatingFunction, PartitionError> {
    if f.len() != cert.fibre_map.len() {
        return Err(PartitionError::LengthMismatch {
            expected: cert.fibre_map.len(),
            found: f.len(),
        });
    }
    let mut values: Vec<Option<u64>> = vec![None; cert.base_size];
    for (u, &b) in cert.fibre_map.iter().enumerate() {
        let val = f.values()[u];
        match values[b] {
            None => values[b] = Some(val),
            Some(seen) if seen != val => return Err(PartitionError::NotConstantOnFibres(b)),
            Some(_) => {}
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.expect("every fibre is nonempty"))
        .collect();
    Ok(DominatingFunction::new(f.j(), f.k(), values)?)
}

/// For a perfect code `S` of a Cayley graph on GF(q)^d, the cells `S` and
/// `c + S` for each `c` in the connection set, which are the fibres of a
/// cover of `K_{|C|+1}`.
pub fn lee_translates(
    pres: &CayleyPresentation,
    s: &[usize],
    cap: usize,
) -> Result<(VertexPartition, CoverCertificate), PartitionError> {
    let x = cayley_graph(pres, cap)?;
    let code = DominatingFunction::indicator(x.n(), s, 1)?;
    if !verify_efficient(&x, &code)?.efficient {
        return Err(PartitionError::NotPerfectCode);
    }
    let field = pres.field();
    let q = field.order();
    let d = pres.dimension();
    let base = code.support();
    let mut cells = vec![base.clone()];
    for c in pres.connection() {
        cells.push(
            base.iter()
                .map(|&v| {
                    let t: Vec<u32> = vertex_tuple(q, d, v)
                        .iter()
                        .zip(c)
                        .map(|(&a, &b)| field.add(a, b))
                        .collect();
                    vertex_rank(q, &t)
                })
                .collect(),
        );
    }
    let partition = VertexPartition::new(x.n(), cells)
        .map_err(|e| PartitionError::Internal(format!("translates do not partition: {e}")))?;
    let base_graph = complete(partition.len())?;
    let cert = verify_cover(&x, &partition, &base_graph)?
        .ok_or_else(|| PartitionError::Internal("translates do not form a cover".into()))?;
    Ok((partition, cert))
}

/// The antipodal pairs `{v, v̄}` of `Q_d`, cell `v` for `v < 2^(d−1)`. Cell
/// `v` lies over vertex `v` of `F_d`, so this is the fibration `Q_d → F_d`.
pub fn antipodal_partition(d: usize) -> Result<VertexPartition, PartitionError> {
    if !(2..usize::BITS as usize).contains(&d) {
        return Err(PartitionError::BadPartition(format!(
            "no antipodal partition for d = {d}"
        )));
    }
    let n = 1usize << d;
    let cells = (0..n / 2).map(|v| vec![v, v ^ (n - 1)]).collect();
    VertexPartition::new(n, cells)
}
