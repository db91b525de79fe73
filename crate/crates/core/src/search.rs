//! Exhaustive backtracking search for efficient (j,k)-dominating functions.
//!
//! Vertices are assigned in a fixed order. For every vertex `w` the search
//! tracks the partial sum `s(w)` of assigned values on `N[w]` and the number
//! `u(w)` of unassigned vertices there; a value `x` for the next vertex is
//! admissible only if every `w` in its closed neighborhood keeps
//! `s(w) + x ≤ k` and `s(w) + x + j·(u(w) − 1) ≥ k`.

use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::domination::DominatingFunction;
use crate::graph::Graph;

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("node limit {limit} exceeded")]
    NodeLimitExceeded { limit: u64 },
    #[error("node limit {limit} exceeded while counting k = {k}")]
    NodeLimitExceededAt { k: u64, limit: u64 },
    #[error("vertex order is not a permutation of 0..{n}")]
    BadOrder { n: usize },
    #[error("graph is not regular")]
    NotRegular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub j: u64,
    pub k: u64,
    pub node_limit: u64,
    /// Assignment order; breadth-first from vertex 0 when `None`.
    pub order: Option<Vec<usize>>,
}

impl SearchConfig {
    pub fn new(j: u64, k: u64) -> Self {
        SearchConfig {
            j,
            k,
            node_limit: DEFAULT_NODE_LIMIT,
            order: None,
        }
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn with_order(mut self, order: Vec<usize>) -> Self {
        self.order = Some(order);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub functions: Vec<DominatingFunction>,
    /// True iff the whole search space was explored.
    pub exhausted: bool,
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn count(&self) -> usize {
        self.functions.len()
    }

    /// The limit diagnostic when the search was cut short.
    pub fn diagnostic(&self, limit: u64) -> Option<SearchError> {
        (!self.exhausted).then_some(SearchError::NodeLimitExceeded { limit })
    }
}

/// Breadth-first order from vertex 0, restarting at the smallest unvisited
/// vertex for each further component.
pub fn bfs_order(x: &Graph) -> Vec<usize> {
    let n = x.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in x.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn resolve_order(x: &Graph, cfg: &SearchConfig) -> Result<Vec<usize>, SearchError> {
    match &cfg.order {
        None => Ok(bfs_order(x)),
        Some(order) => {
            let mut seen = vec![false; x.n()];
            for &v in order {
                if v >= x.n() || std::mem::replace(&mut seen[v], true) {
                    return Err(SearchError::BadOrder { n: x.n() });
                }
            }
            if order.len() != x.n() {
                return Err(SearchError::BadOrder { n: x.n() });
            }
            Ok(order.clone())
        }
    }
}

struct Search<'g> {
    x: &'g Graph,
    order: Vec<usize>,
    j: u64,
    k: u64,
    values: Vec<u64>,
    sums: Vec<u64>,
    unassigned: Vec<u64>,
    nodes: u64,
    limit: u64,
    limit_hit: bool,
}

impl<'g> Search<'g> {
    fn new(x: &'g Graph, order: Vec<usize>, j: u64, k: u64, limit: u64) -> Self {
        let unassigned = (0..x.n()).map(|v| x.degree(v) as u64 + 1).collect();
        Search {
            x,
            order,
            j,
            k,
            values: vec![0; x.n()],
            sums: vec![0; x.n()],
            unassigned,
            nodes: 0,
            limit,
            limit_hit: false,
        }
    }

    fn closed(&self, v: usize) -> impl Iterator<Item = usize> + 'g {
        std::iter::once(v).chain(self.x.neighbors(v).iter().copied())
    }

    /// Admissible values for `v` given the current partial assignment.
    fn range(&self, v: usize) -> Option<(u64, u64)> {
        let (mut lo, mut hi) = (0, self.j);
        for w in self.closed(v) {
            let s = self.sums[w];
            if s > self.k {
                return None;
            }
            hi = hi.min(self.k - s);
            let rest = self.j * (self.unassigned[w] - 1);
            lo = lo.max(self.k.saturating_sub(s + rest));
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn assign(&mut self, v: usize, value: u64) {
        self.values[v] = value;
        for w in self.closed(v) {
            self.sums[w] += value;
            self.unassigned[w] -= 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let value = self.values[v];
        for w in self.closed(v) {
            self.sums[w] -= value;
            self.unassigned[w] += 1;
        }
        self.values[v] = 0;
    }

    fn run<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u64]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(&self.values);
        }
        let v = self.order[depth];
        let Some((lo, hi)) = self.range(v) else {
            return ControlFlow::Continue(());
        };
        for value in lo..=hi {
            self.nodes += 1;
            if self.nodes > self.limit {
                self.limit_hit = true;
                return ControlFlow::Break(());
            }
            self.assign(v, value);
            let flow = self.run(depth + 1, visit);
            self.unassign(v);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn trivially_empty(x: &Graph, j: u64, k: u64) -> bool {
    let max_closed = x.max_degree() as u64 + 1;
    j.checked_mul(max_closed).is_some_and(|bound| k > bound)
}

/// All efficient (j,k)-dominating functions, sorted by value vector.
///
/// The tree is split across workers at the first vertex; `node_limit`
/// applies to each first-level branch, so the result does not depend on
/// scheduling.
pub fn enumerate_efficient(x: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let order = resolve_order(x, cfg)?;
    if x.n() == 0 || trivially_empty(x, cfg.j, cfg.k) {
        let functions = if x.n() == 0 {
            vec![DominatingFunction::new(cfg.j, cfg.k, Vec::new()).expect("empty")]
        } else {
            Vec::new()
        };
        return Ok(SearchOutcome {
            functions,
            exhausted: true,
            nodes: 0,
        });
    }
    let root = Search::new(x, order.clone(), cfg.j, cfg.k, cfg.node_limit);
    let Some((lo, hi)) = root.range(order[0]) else {
        return Ok(SearchOutcome {
            functions: Vec::new(),
            exhausted: true,
            nodes: 0,
        });
    };
    let branches: Vec<(Vec<Vec<u64>>, u64, bool)> = (lo..=hi)
        .into_par_iter()
        .map(|first| {
            let mut s = Search::new(x, order.clone(), cfg.j, cfg.k, cfg.node_limit);
            s.nodes = 1;
            s.assign(order[0], first);
            let mut found = Vec::new();
            let _ = s.run(1, &mut |values: &[u64]| {
                found.push(values.to_vec());
                ControlFlow::Continue(())
            });
            (found, s.nodes, !s.limit_hit)
        })
        .collect();
    let mut all = Vec::new();
    let mut nodes = 0;
    let mut exhausted = true;
    for (found, n, done) in branches {
        all.extend(found);
        nodes += n;
        exhausted &= done;
    }
    all.sort_unstable();
    let functions = all
        .into_iter()
        .map(|values| DominatingFunction::new(cfg.j, cfg.k, values).expect("values within [0, j]"))
        .collect();
    Ok(SearchOutcome {
        functions,
        exhausted,
        nodes,
    })
}

/// Number of efficient (j,k)-dominating functions, without storing them.
pub fn count_efficient(x: &Graph, cfg: &SearchConfig) -> Result<(u64, bool), SearchError> {
    let order = resolve_order(x, cfg)?;
    if x.n() == 0 {
        return Ok((1, true));
    }
    if trivially_empty(x, cfg.j, cfg.k) {
        return Ok((0, true));
    }
    let mut s = Search::new(x, order, cfg.j, cfg.k, cfg.node_limit);
    let mut count = 0;
    let _ = s.run(0, &mut |_: &[u64]| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok((count, !s.limit_hit))
}

/// The first solution in search order, if any.
pub fn exists_efficient(
    x: &Graph,
    cfg: &SearchConfig,
) -> Result<Option<DominatingFunction>, SearchError> {
    let order = resolve_order(x, cfg)?;
    if x.n() == 0 {
        return Ok(Some(
            DominatingFunction::new(cfg.j, cfg.k, Vec::new()).expect("empty"),
        ));
    }
    if trivially_empty(x, cfg.j, cfg.k) {
        return Ok(None);
    }
    let mut s = Search::new(x, order, cfg.j, cfg.k, cfg.node_limit);
    let mut witness = None;
    let _ = s.run(0, &mut |values: &[u64]| {
        witness = Some(values.to_vec());
        ControlFlow::Break(())
    });
    match witness {
        Some(values) => Ok(Some(
            DominatingFunction::new(cfg.j, cfg.k, values).expect("values within [0, j]"),
        )),
        None if s.limit_hit => Err(SearchError::NodeLimitExceeded {
            limit: cfg.node_limit,
        }),
        None => Ok(None),
    }
}

/// Solution counts for every `k` in `0..=j(r+1)` on a regular graph.
pub fn k_spectrum(x: &Graph, j: u64, node_limit: u64) -> Result<BTreeMap<u64, u64>, SearchError> {
    let r = x.regular_degree().ok_or(SearchError::NotRegular)? as u64;
    (0..=j * (r + 1))
        .into_par_iter()
        .map(|k| {
            let cfg = SearchConfig::new(j, k).with_node_limit(node_limit);
            match count_efficient(x, &cfg)? {
                (count, true) => Ok((k, count)),
                (_, false) => Err(SearchError::NodeLimitExceededAt {
                    k,
                    limit: node_limit,
                }),
            }
        })
        .collect()
}
