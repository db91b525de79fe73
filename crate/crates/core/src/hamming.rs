//! Efficient (1,k)-dominating functions on Hamming graphs H(q,d), q a
//! prime power.
//!
//! Write `(q−1)d + 1 = q^a · m` with `q ∤ m`. When `a ≥ 1` the coordinates
//! split into a block `S_0` of size `(m−1)/(q−1)` and `l = (q^a−1)/(q−1)`
//! blocks `S_1..S_l` of size `m`. The linear map `φ: GF(q)^d → GF(q)^l`
//! sums the coordinates of each block `S_i` into coordinate `i` and ignores
//! `S_0`. Pulling back the cosets of a Hamming code `C ⊆ GF(q)^l` (the zero
//! code when `a = 1`) along `φ` gives `q^a` fibres forming an m-cover of
//! `K_{q^a}`: each vertex has `m − 1` neighbors in its own fibre and `m` in
//! every other. Marking `t` fibres yields an efficient (1, t·m)-dominating
//! function.
//!
//! Fibres are labelled by the syndrome `H·φ(v) ∈ GF(q)^a`, where `H` is the
//! parity-check matrix of `C`, so no coset table is ever stored.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cover::{first_kcover_violation, verify_kcover, CoverCertificate};
use crate::domination::DominatingFunction;
use crate::field::{FieldError, FieldSpec};
use crate::graph::{complete, hamming_graph, vertex_rank, vertex_tuple, GraphError};
use crate::linalg::{FieldMatrix, LinalgError};
use crate::partition::{PartitionError, VertexPartition};

/// Which closed form the feasibility numbers are computed from. The same
/// expression `(q−1)d + 1` is used for both factorizations.
pub const EVALUATED_EXPRESSION: &str = "(q-1)d+1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfeasibleReason {
    /// `k` exceeds `(q−1)d + 1`.
    OutOfRange,
    /// `(r + 1) ∤ n·k`, so no efficient function exists.
    RuledOutByDivisibility,
    /// Allowed by divisibility but not reached by the m-cover construction.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HammingError {
    #[error("(q-1)d+1 = {value} is not divisible by q = {q}; only the constant functions exist")]
    TrivialCase { q: u32, value: u64 },
    #[error("k = {k} is infeasible: {}", describe_reason(*reason))]
    InfeasibleK { k: u64, reason: InfeasibleReason },
    #[error("H({q},{d}) has {requested} vertices, above the cap {cap}")]
    SizeCap {
        q: u32,
        d: usize,
        requested: u128,
        cap: usize,
    },
    #[error("m-cover condition fails at vertex {vertex}")]
    CertificateViolation { vertex: usize },
    #[error("basis audit failed: {0}")]
    AuditFailure(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn describe_reason(reason: InfeasibleReason) -> &'static str {
    match reason {
        InfeasibleReason::OutOfRange => "k exceeds (q-1)d+1",
        InfeasibleReason::RuledOutByDivisibility => {
            "ruled out by divisibility: (r+1) does not divide n*k"
        }
        InfeasibleReason::Open => {
            "open: allowed by divisibility, not reached by the m-cover construction"
        }
    }
}

/// Splits `value = base^a · m` with `base ∤ m`.
fn split_power(value: u64, base: u64) -> (u32, u64) {
    let mut a = 0;
    let mut m = value;
    while m.is_multiple_of(base) {
        m /= base;
        a += 1;
    }
    (a, m)
}

/// Which `k` are allowed by divisibility and which the construction reaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityProfile {
    pub q: u32,
    pub p: u32,
    pub b: u32,
    pub d: usize,
    pub r: u64,
    pub expression: &'static str,
    /// `(q−1)d + 1 = q^{a_q} m_q`.
    pub a_q: u32,
    pub m_q: u64,
    /// `(q−1)d + 1 = p^{a_p} m_p`.
    pub a_p: u32,
    pub m_p: u64,
    pub necessary_k: Vec<u64>,
    pub constructed_k: Vec<u64>,
    pub open_k: Vec<u64>,
    pub partition: String,
}

impl FeasibilityProfile {
    pub fn is_trivial(&self) -> bool {
        self.a_q == 0
    }

    /// `q^{a_q}`, the number of fibres of the construction.
    pub fn fibre_count(&self) -> u64 {
        (self.q as u64).pow(self.a_q)
    }
}

pub fn feasibility(field: &FieldSpec, d: usize) -> Result<FeasibilityProfile, HammingError> {
    if d == 0 {
        return Err(HammingError::BadParameter("d must be at least 1".into()));
    }
    let q = field.order();
    let p = field.characteristic();
    let r = (q as u64 - 1) * d as u64;
    let value = r + 1;
    let (a_q, m_q) = split_power(value, q as u64);
    let (a_p, m_p) = split_power(value, p as u64);
    let multiples = |m: u64| (0..=value).filter(|k| k % m == 0).collect::<Vec<_>>();
    let necessary_k = multiples(m_p);
    let constructed_k = multiples(m_q);
    let open_k = necessary_k
        .iter()
        .copied()
        .filter(|k| !constructed_k.contains(k))
        .collect();
    let base = (q as u64).pow(a_q);
    let partition = match (a_q, m_q) {
        (0, _) => "none (only the constant functions)".to_string(),
        (_, 1) => format!("cover of K_{base}"),
        (_, m) => format!("{m}-cover of K_{base}"),
    };
    Ok(FeasibilityProfile {
        q,
        p,
        b: field.degree(),
        d,
        r,
        expression: EVALUATED_EXPRESSION,
        a_q,
        m_q,
        a_p,
        m_p,
        necessary_k,
        constructed_k,
        open_k,
        partition,
    })
}

/// A linear code given by a basis and a parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSubspace {
    field: FieldSpec,
    length: usize,
    basis: Vec<Vec<u32>>,
    parity_check: FieldMatrix,
}

impl CodeSubspace {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn parity_check(&self) -> &FieldMatrix {
        &self.parity_check
    }

    pub fn syndrome(&self, word: &[u32]) -> Vec<u32> {
        self.parity_check
            .mul_vec(word)
            .expect("word has code length")
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        self.syndrome(word).iter().all(|&s| s == 0)
    }

    /// All codewords, as ranks in GF(q)^length. Intended for small codes.
    pub fn codeword_ranks(&self) -> Vec<usize> {
        let f = &self.field;
        let q = f.order();
        let count = (q as usize).pow(self.basis.len() as u32);
        let mut out: Vec<usize> = (0..count)
            .map(|c| {
                let coeffs = vertex_tuple(q, self.basis.len(), c);
                let mut word = vec![0; self.length];
                for (alpha, b) in coeffs.iter().zip(&self.basis) {
                    for (w, &x) in word.iter_mut().zip(b) {
                        *w = f.add(*w, f.mul(*alpha, x));
                    }
                }
                vertex_rank(q, &word)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Nonzero, pairwise non-proportional parity-check columns, which is
    /// equivalent to minimum distance at least 3.
    pub fn has_distance_three(&self) -> bool {
        let f = &self.field;
        let cols: Vec<Vec<u32>> = (0..self.length)
            .map(|c| self.parity_check.column(c))
            .collect();
        cols.iter().all(|c| c.iter().any(|&x| x != 0))
            && cols.iter().enumerate().all(|(i, ci)| {
                cols[i + 1..].iter().all(|cj| {
                    (1..f.order())
                        .all(|alpha| ci.iter().zip(cj).any(|(&x, &y)| f.mul(alpha, x) != y))
                })
            })
    }
}

/// The q-ary Hamming code with `a` check symbols, of length
/// `(q^a − 1)/(q − 1)`. The parity-check columns are the vectors of
/// GF(q)^a whose first nonzero coordinate is 1, in increasing rank order.
/// For `a = 1` this is the zero code of length 1 with `H = [1]`.
pub fn hamming_code(field: &FieldSpec, a: u32) -> Result<CodeSubspace, HammingError> {
    if a == 0 {
        return Err(HammingError::BadParameter("a must be at least 1".into()));
    }
    let q = field.order();
    let total = (q as u128)
        .checked_pow(a)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| HammingError::BadParameter(format!("q^a = {q}^{a} is too large")))?
        as usize;
    let columns: Vec<Vec<u32>> = (1..total)
        .map(|rank| vertex_tuple(q, a as usize, rank))
        .filter(|t| t.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    let length = columns.len();
    let rows = a as usize;
    let mut h = FieldMatrix::zeros(field, rows, length);
    for (c, col) in columns.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            h.set(r, c, x);
        }
    }
    Ok(CodeSubspace {
        field: field.clone(),
        length,
        basis: h.kernel_basis(),
        parity_check: h,
    })
}

/// The m-cover of `K_{q^a}` by `H(q, d)`.
#[derive(Debug, Clone)]
pub struct MCoverPlan {
    profile: FeasibilityProfile,
    field: FieldSpec,
    s0: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    phi: FieldMatrix,
    code: CodeSubspace,
    /// Column `j` is `H·φ(e_j)`, the syndrome contribution of coordinate `j`.
    syndrome_columns: Vec<Vec<u32>>,
}

pub fn build_plan(field: &FieldSpec, d: usize) -> Result<MCoverPlan, HammingError> {
    let profile = feasibility(field, d)?;
    if profile.is_trivial() {
        return Err(HammingError::TrivialCase {
            q: profile.q,
            value: profile.r + 1,
        });
    }
    let q = field.order() as u64;
    let a = profile.a_q;
    let m = profile.m_q as usize;
    let l = ((q.pow(a) - 1) / (q - 1)) as usize;
    let s0_len = (m - 1) / (q as usize - 1);
    debug_assert_eq!(l * m + s0_len, d);
    let s0: Vec<usize> = (0..s0_len).collect();
    let blocks: Vec<Vec<usize>> = (0..l)
        .map(|i| (s0_len + i * m..s0_len + (i + 1) * m).collect())
        .collect();
    let mut phi = FieldMatrix::zeros(field, l, d);
    for (i, block) in blocks.iter().enumerate() {
        for &j in block {
            phi.set(i, j, 1);
        }
    }
    let code = hamming_code(field, a)?;
    let syndrome_columns = (0..d).map(|j| code.syndrome(&phi.column(j))).collect();
    Ok(MCoverPlan {
        profile,
        field: field.clone(),
        s0,
        blocks,
        phi,
        code,
        syndrome_columns,
    })
}

impl MCoverPlan {
    pub fn profile(&self) -> &FeasibilityProfile {
        &self.profile
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.profile.d
    }

    pub fn a(&self) -> u32 {
        self.profile.a_q
    }

    pub fn m(&self) -> u64 {
        self.profile.m_q
    }

    /// `l = (q^a − 1)/(q − 1)`.
    pub fn l(&self) -> usize {
        self.blocks.len()
    }

    pub fn s0(&self) -> &[usize] {
        &self.s0
    }

    /// `S_1..S_l`.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn phi(&self) -> &FieldMatrix {
        &self.phi
    }

    pub fn code(&self) -> &CodeSubspace {
        &self.code
    }

    pub fn fibre_count(&self) -> usize {
        self.profile.fibre_count() as usize
    }

    pub fn vertex_count(&self) -> u128 {
        (self.profile.q as u128).pow(self.d() as u32)
    }

    /// Syndrome `H·φ(v)` of a tuple.
    pub fn fibre_label(&self, tuple: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut label = vec![0; self.a() as usize];
        for (&x, col) in tuple.iter().zip(&self.syndrome_columns) {
            if x == 0 {
                continue;
            }
            for (s, &c) in label.iter_mut().zip(col) {
                *s = f.add(*s, f.mul(x, c));
            }
        }
        label
    }

    /// Fibre index of a vertex: the rank of its label in GF(q)^a.
    pub fn fibre_of(&self, vertex: usize) -> usize {
        let q = self.profile.q;
        vertex_rank(q, &self.fibre_label(&vertex_tuple(q, self.d(), vertex)))
    }

    fn check_cap(&self, cap: usize) -> Result<usize, HammingError> {
        let n = self.vertex_count();
        if n > cap as u128 {
            return Err(HammingError::SizeCap {
                q: self.profile.q,
                d: self.d(),
                requested: n,
                cap,
            });
        }
        Ok(n as usize)
    }

    /// Fibre index of every vertex.
    pub fn fibre_labels(&self, cap: usize) -> Result<Vec<usize>, HammingError> {
        let n = self.check_cap(cap)?;
        Ok((0..n).into_par_iter().map(|v| self.fibre_of(v)).collect())
    }

    /// The fibres as a partition; cell `i` holds the vertices with label rank `i`.
    pub fn partition(&self, cap: usize) -> Result<VertexPartition, HammingError> {
        Ok(VertexPartition::from_labels(&self.fibre_labels(cap)?)?)
    }

    /// Neighbor counts of `vertex` into each fibre, from implicit adjacency.
    fn implicit_profile(&self, vertex: usize) -> (usize, Vec<u64>) {
        let f = &self.field;
        let q = self.profile.q;
        let tuple = vertex_tuple(q, self.d(), vertex);
        let label = self.fibre_label(&tuple);
        let home = vertex_rank(q, &label);
        let mut counts = vec![0u64; self.fibre_count()];
        for (&x, col) in tuple.iter().zip(&self.syndrome_columns) {
            for s in 0..q {
                if s == x {
                    continue;
                }
                let delta = f.sub(s, x);
                let shifted: Vec<u32> = label
                    .iter()
                    .zip(col)
                    .map(|(&l, &c)| f.add(l, f.mul(delta, c)))
                    .collect();
                counts[vertex_rank(q, &shifted)] += 1;
            }
        }
        (home, counts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Full,
    Sampled { count: usize, seed: u64 },
}

/// Outcome of [`verify_plan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanVerification {
    pub mode: VerifyMode,
    /// `q^a`.
    pub base_size: usize,
    /// `q^(d−a)`.
    pub fold: u128,
    /// `m`: fibres induce (m−1)-regular graphs and adjacent fibres m-regular
    /// bipartite ones.
    pub k: u64,
    pub vertices_checked: usize,
    /// The materialized certificate (full mode only).
    #[serde(skip)]
    pub certificate: Option<CoverCertificate>,
}

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then the output mix
/// `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
/// z *= 0x94D049BB133111EB; z ^= z >> 31`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// `next_u64() mod bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Certifies the m-cover, either by materializing `H(q,d)` or at sampled
/// vertices using implicit adjacency.
pub fn verify_plan(
    plan: &MCoverPlan,
    mode: VerifyMode,
    cap: usize,
) -> Result<PlanVerification, HammingError> {
    let profile = &plan.profile;
    let q = profile.q as u64;
    let m = profile.m_q;
    let base_size = plan.fibre_count();
    // Every vertex has m − 1 neighbors at home and m in each of the q^a − 1
    // other fibres, which must add up to the degree (q − 1)d.
    if m * (base_size as u64 - 1) != profile.r - (m - 1) {
        return Err(HammingError::AuditFailure(format!(
            "degree identity m(q^a-1) = (q-1)d-(m-1) fails: {} != {}",
            m * (base_size as u64 - 1),
            profile.r - (m - 1)
        )));
    }
    let fold = (q as u128).pow(plan.d() as u32 - plan.a());
    match mode {
        VerifyMode::Full => {
            let n = plan.check_cap(cap)?;
            let x = hamming_graph(q as usize, plan.d(), cap)?;
            let fibres = plan.partition(cap)?;
            if fibres.len() != base_size || fibres.cells().iter().any(|c| c.len() as u128 != fold) {
                return Err(HammingError::AuditFailure(format!(
                    "expected {base_size} fibres of size {fold}"
                )));
            }
            let base = complete(base_size)?;
            let cert = verify_kcover(&x, &fibres, &base, m as usize)?;
            match cert {
                Some(cert) => Ok(PlanVerification {
                    mode,
                    base_size,
                    fold,
                    k: m,
                    vertices_checked: n,
                    certificate: Some(cert),
                }),
                None => {
                    let vertex = first_kcover_violation(&x, &fibres, &base, m as usize)
                        .expect("some vertex violates a failed certificate");
                    Err(HammingError::CertificateViolation { vertex })
                }
            }
        }
        VerifyMode::Sampled { count, seed } => {
            let n = plan.vertex_count();
            if n > u64::MAX as u128 {
                return Err(HammingError::BadParameter(
                    "graph too large to sample".into(),
                ));
            }
            let mut rng = SplitMix64::new(seed);
            let samples: Vec<usize> = (0..count).map(|_| rng.below(n as u64) as usize).collect();
            let violation = samples
                .par_iter()
                .copied()
                .filter(|&v| {
                    let (home, counts) = plan.implicit_profile(v);
                    counts
                        .iter()
                        .enumerate()
                        .any(|(b, &c)| if b == home { c != m - 1 } else { c != m })
                })
                .min();
            match violation {
                Some(vertex) => Err(HammingError::CertificateViolation { vertex }),
                None => Ok(PlanVerification {
                    mode,
                    base_size,
                    fold,
                    k: m,
                    vertices_checked: count,
                    certificate: None,
                }),
            }
        }
    }
}

/// Where a constructed function came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub a: u32,
    pub m: u64,
    pub fibres: u64,
}

/// An efficient (1,k)-dominating function on `H(q,d)` for `k` a multiple
/// of `m_q`: the indicator of the `k/m` fibres with the smallest labels.
pub fn construct_function(
    field: &FieldSpec,
    d: usize,
    k: u64,
    cap: usize,
) -> Result<(DominatingFunction, Provenance), HammingError> {
    let profile = feasibility(field, d)?;
    let total = profile.r + 1;
    if k > total {
        return Err(HammingError::InfeasibleK {
            k,
            reason: InfeasibleReason::OutOfRange,
        });
    }
    if !k.is_multiple_of(profile.m_q) {
        let reason = if !k.is_multiple_of(profile.m_p) {
            InfeasibleReason::RuledOutByDivisibility
        } else {
            InfeasibleReason::Open
        };
        return Err(HammingError::InfeasibleK { k, reason });
    }
    let provenance = Provenance {
        a: profile.a_q,
        m: profile.m_q,
        fibres: profile.fibre_count(),
    };
    let n = (profile.q as u128).pow(d as u32);
    if n > cap as u128 {
        return Err(HammingError::SizeCap {
            q: profile.q,
            d,
            requested: n,
            cap,
        });
    }
    let n = n as usize;
    if k == 0 || k == total {
        let f =
            DominatingFunction::new(1, k, vec![u64::from(k == total); n]).expect("values are 0/1");
        return Ok((f, provenance));
    }
    let plan = build_plan(field, d)?;
    let marked = (k / profile.m_q) as usize;
    let values = plan
        .fibre_labels(cap)?
        .into_iter()
        .map(|label| u64::from(label < marked))
        .collect();
    let f = DominatingFunction::new(1, k, values).expect("values are 0/1");
    Ok((f, provenance))
}

/// The explicit bases from the dimension count of `T = φ⁻¹(C)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisAudit {
    /// `|B|`, a basis of `ker φ`.
    pub kernel_basis_size: usize,
    /// `q^a (m−1)/(q−1)`.
    pub expected_kernel_basis_size: u64,
    /// `|B_C|`.
    pub code_basis_size: usize,
    /// `|B′| = |B| + |B_C|`.
    pub t_basis_size: usize,
    /// `d − a`.
    pub expected_t_basis_size: usize,
    /// `B′` as vectors of GF(q)^d.
    pub t_basis: Vec<Vec<u32>>,
}

/// Builds `B = B_0 ∪ B_1 ∪ … ∪ B_l` and `B′ = B ∪ {b_φ}`, checks their sizes
/// against the closed forms, and checks that `B′` is an independent subset
/// of `T` of dimension `dim ker φ + dim C`.
pub fn basis_audit(plan: &MCoverPlan) -> Result<BasisAudit, HammingError> {
    let f = &plan.field;
    let d = plan.d();
    let q = plan.profile.q as u64;
    let a = plan.a();
    let m = plan.m() as usize;
    let l = plan.l();
    let fail = |msg: String| Err(HammingError::AuditFailure(msg));

    let unit = |j: usize| {
        let mut v = vec![0; d];
        v[j] = 1;
        v
    };
    let mut b: Vec<Vec<u32>> = plan.s0.iter().map(|&j| unit(j)).collect();
    if b.len() as u64 != (m as u64 - 1) / (q - 1) {
        return fail(format!("|B_0| = {} != (m-1)/(q-1)", b.len()));
    }
    // B_i: vectors supported on S_i whose coordinates sum to zero.
    let sum_row = FieldMatrix::new(f, 1, m, vec![1; m])?;
    let local = sum_row.kernel_basis();
    for (i, block) in plan.blocks.iter().enumerate() {
        if local.len() != m - 1 {
            return fail(format!("|B_{}| = {} != m-1", i + 1, local.len()));
        }
        for w in &local {
            let mut v = vec![0; d];
            for (&j, &x) in block.iter().zip(w) {
                v[j] = x;
            }
            b.push(v);
        }
    }
    let expected_b = (q.pow(a) * (m as u64 - 1)) / (q - 1);
    if b.len() != l * (m - 1) + (m - 1) / (q as usize - 1) || b.len() as u64 != expected_b {
        return fail(format!(
            "|B| = {} != q^a(m-1)/(q-1) = {expected_b}",
            b.len()
        ));
    }
    for v in &b {
        if plan.phi.mul_vec(v)?.iter().any(|&x| x != 0) {
            return fail(format!("{v:?} is not in ker(phi)"));
        }
    }

    let code_basis = plan.code.basis();
    let mut t_basis = b.clone();
    for word in code_basis {
        let Some(pre) = plan.phi.solve_affine(word)? else {
            return fail(format!("codeword {word:?} has no preimage under phi"));
        };
        t_basis.push(pre);
    }
    let expected_t = d - a as usize;
    if t_basis.len() != expected_t {
        return fail(format!("|B'| = {} != d-a = {expected_t}", t_basis.len()));
    }
    for v in &t_basis {
        if !plan.code.contains(&plan.phi.mul_vec(v)?) {
            return fail(format!("{v:?} is not in the preimage of the code"));
        }
    }
    if !t_basis.is_empty() {
        let stacked = FieldMatrix::from_row_vectors(f, d, &t_basis)?;
        if stacked.rank() != t_basis.len() {
            return fail("B' is linearly dependent".into());
        }
    }
    let dim_ker_phi = d - plan.phi.rank();
    let dim_code = plan.code.length() - plan.code.parity_check().rank();
    if dim_ker_phi + dim_code != t_basis.len() {
        return fail(format!(
            "dim ker(phi) + dim C = {} != |B'| = {}",
            dim_ker_phi + dim_code,
            t_basis.len()
        ));
    }
    Ok(BasisAudit {
        kernel_basis_size: b.len(),
        expected_kernel_basis_size: expected_b,
        code_basis_size: code_basis.len(),
        t_basis_size: t_basis.len(),
        expected_t_basis_size: expected_t,
        t_basis,
    })
}
