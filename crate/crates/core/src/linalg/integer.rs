use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::modular;
use super::LinalgError;

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(serialize_with = "serialize_bigints")]
    entries: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        let entries = rows.iter().flatten().map(|&x| x.into()).collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Matrix product; zero entries of `self` are skipped, so sparse left
    /// factors are cheap.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect())
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn int_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(src) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, src);
        let (top, rest) = a.split_at_mut(row + 1);
        let pivot_row = &top[row];
        let pivot = pivot_row[col].clone();
        for r in rest.iter_mut() {
            let factor = r[col].clone();
            for c in col + 1..m.cols {
                let mut v = &pivot * &r[c];
                if !factor.is_zero() && !pivot_row[c].is_zero() {
                    v -= &factor * &pivot_row[c];
                }
                r[c] = v / &prev;
            }
            r[col] = BigInt::zero();
        }
        prev = pivot;
        row += 1;
    }
    row
}

/// Fraction-free Gauss-Jordan reduction. Returns the reduced rows (every
/// pivot entry equal to the common pivot value) and the pivot columns.
fn fraction_free_rref(m: &IntMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(src) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, src);
        let pivot_row = a[row].clone();
        let pivot = pivot_row[col].clone();
        for (r, cur) in a.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = cur[col].clone();
            for c in 0..m.cols {
                if c == col {
                    continue;
                }
                let mut v = &pivot * &cur[c];
                if !factor.is_zero() && !pivot_row[c].is_zero() {
                    v -= &factor * &pivot_row[c];
                }
                cur[c] = v / &prev;
            }
            cur[col] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

/// Scales a nonzero integer vector to gcd 1 with its first nonzero entry
/// positive.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let negate = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    v
}

/// Integer basis of the rational null space, one primitive vector per
/// free column in increasing order. The vectors are the rational
/// free-column completions of the reduced row-echelon form, rescaled.
pub fn int_kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (red, pivots) = fraction_free_rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigInt::zero(); m.cols];
            // Every pivot entry of the reduced rows has the same value d, so
            // the kernel vector is d at `free` and -row[free] at each pivot.
            let d = red
                .first()
                .map_or_else(BigInt::one, |r| r[pivots[0]].clone());
            v[free] = d;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red[i][free].clone();
            }
            primitive(v)
        })
        .collect()
}

/// Rank and canonical integer kernel basis computed modulo word-sized primes
/// and certified exactly.
///
/// The rank modulo any prime is a lower bound on the rational rank. Each
/// candidate kernel vector is reconstructed from the modular reduced forms
/// and checked against `m` with exact integer arithmetic; once `cols - rank_p`
/// independent kernel vectors are verified the two bounds meet. The result
/// equals `(int_rank(m), int_kernel_basis(m))`.
pub fn certified_kernel(m: &IntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    match modular::certified_kernel(m) {
        Some(res) => res,
        None => {
            let basis = int_kernel_basis(m);
            (m.cols - basis.len(), basis)
        }
    }
}

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coefficients.last()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(IntPolynomial::from_i64(&[1]), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Pseudo-remainder `lc(divisor)^(deg self - deg divisor + 1) · self mod divisor`.
    fn pseudo_remainder(&self, divisor: &IntPolynomial) -> Vec<BigInt> {
        let dd = divisor.coefficients.len() - 1;
        let lc = divisor.coefficients[dd].clone();
        let mut rem = self.coefficients.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            for x in rem.iter_mut() {
                *x *= &lc;
            }
            for (i, dc) in divisor.coefficients.iter().enumerate() {
                rem[top - dd + i] -= &c * dc;
            }
            rem.pop();
        }
        rem
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match (deg, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{deg}")?,
                (_, false) => write!(f, "{mag}x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - m)` by the Faddeev-LeVerrier
/// recurrence. All divisions in the trace recurrence are exact.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let n = m.rows;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // aux = M_k, starting from M_1 = I.
    let mut aux = IntMatrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&aux)?;
        let c = -(am.trace() / BigInt::from(k));
        coeffs[n - k] = c.clone();
        if k < n {
            aux = am;
            for i in 0..n {
                aux.entries[i * n + i] += &c;
            }
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

/// True iff `divisor` divides `dividend` over the rationals.
pub fn poly_divides(
    divisor: &IntPolynomial,
    dividend: &IntPolynomial,
) -> Result<bool, LinalgError> {
    if divisor.is_zero() {
        return Err(LinalgError::ZeroDivisor);
    }
    if dividend.is_zero() {
        return Ok(true);
    }
    Ok(dividend.pseudo_remainder(divisor).iter().all(Zero::is_zero))
}
