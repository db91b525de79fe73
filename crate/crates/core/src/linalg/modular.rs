//! Multi-modular null space computation with exact certification.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::integer::{primitive, IntMatrix};
use crate::field::is_prime;

const MAX_PRIMES: usize = 48;

/// The largest primes below 2^31, descending.
fn moduli() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        (1u64 << 20..(1u64 << 31))
            .rev()
            .filter(|&n| is_prime(n))
            .take(MAX_PRIMES)
            .collect()
    })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Reduced row-echelon form modulo `p`: pivot columns and, for each pivot
/// row, its entries on the free columns.
fn rref_mod(m: &IntMatrix, p: u64) -> (Vec<usize>, Vec<usize>, Vec<Vec<u64>>) {
    let (rows, cols) = (m.rows(), m.cols());
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| {
                    if x.is_zero() {
                        0
                    } else {
                        x.mod_floor(&pb).to_u64().expect("reduced below p")
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(src) = (row..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, src);
        let inv = inv_mod(a[row][col], p);
        for x in a[row][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[row].clone();
        let nz: Vec<usize> = (col..cols).filter(|&c| pivot_row[c] != 0).collect();
        for (r, cur) in a.iter_mut().enumerate() {
            if r == row || cur[col] == 0 {
                continue;
            }
            let factor = p - cur[col];
            for &c in &nz {
                cur[c] = (cur[c] + factor * pivot_row[c]) % p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let table = (0..pivots.len())
        .map(|i| free.iter().map(|&f| a[i][f]).collect())
        .collect();
    (pivots, free, table)
}

/// Rational `num/den` congruent to `a` modulo `modulus` with both bounded
/// by sqrt(modulus / 2), if one exists.
fn rational_reconstruct(a: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (modulus / 2u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), a.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    if s1.is_negative() {
        Some((-r1, -s1))
    } else {
        Some((r1, s1))
    }
}

struct Candidate {
    pivots: Vec<usize>,
    free: Vec<usize>,
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
}

pub(super) fn certified_kernel(m: &IntMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let sparse: Vec<Vec<(usize, BigInt)>> = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect()
        })
        .collect();
    let mut best: Option<Candidate> = None;
    for &p in moduli() {
        let (pivots, free, table) = rref_mod(m, p);
        let better = match &best {
            None => true,
            Some(b) => {
                pivots.len() > b.pivots.len()
                    || (pivots.len() == b.pivots.len() && pivots < b.pivots)
            }
        };
        if better {
            best = Some(Candidate {
                pivots,
                free,
                residues: table
                    .into_iter()
                    .map(|row| row.into_iter().map(BigInt::from).collect())
                    .collect(),
                modulus: BigInt::from(p),
            });
        } else {
            let b = best.as_mut().expect("set above");
            if b.pivots != pivots {
                continue;
            }
            // CRT: x = r mod M, x = t mod p.
            let pb = BigInt::from(p);
            let m_inv = BigInt::from(inv_mod((&b.modulus % &pb).to_u64().unwrap(), p));
            let new_mod = &b.modulus * &pb;
            for (row, trow) in b.residues.iter_mut().zip(&table) {
                for (r, &t) in row.iter_mut().zip(trow) {
                    let diff = (BigInt::from(t) - &*r).mod_floor(&pb);
                    let k = (diff * &m_inv).mod_floor(&pb);
                    *r = &*r + k * &b.modulus;
                }
            }
            b.modulus = new_mod;
        }
        let cand = best.as_ref().expect("set above");
        if let Some(basis) = reconstruct_and_verify(cand, &sparse, m.cols()) {
            return Some((cand.pivots.len(), basis));
        }
    }
    None
}

fn reconstruct_and_verify(
    cand: &Candidate,
    sparse: &[Vec<(usize, BigInt)>],
    cols: usize,
) -> Option<Vec<Vec<BigInt>>> {
    let mut basis = Vec::with_capacity(cand.free.len());
    for (fi, &free) in cand.free.iter().enumerate() {
        let mut fracs = Vec::with_capacity(cand.pivots.len());
        let mut lcm = BigInt::one();
        for row in &cand.residues {
            let (num, den) = rational_reconstruct(&row[fi], &cand.modulus)?;
            lcm = lcm.lcm(&den);
            fracs.push((num, den));
        }
        let mut v = vec![BigInt::zero(); cols];
        v[free] = lcm.clone();
        for ((num, den), &piv) in fracs.iter().zip(&cand.pivots) {
            v[piv] = -(num * (&lcm / den));
        }
        let in_kernel = sparse.iter().all(|row| {
            row.iter()
                .map(|(c, a)| a * &v[*c])
                .sum::<BigInt>()
                .is_zero()
        });
        if !in_kernel {
            return None;
        }
        basis.push(primitive(v));
    }
    Some(basis)
}
