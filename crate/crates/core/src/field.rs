//! Arithmetic in GF(q), q = p^b.
//!
//! Elements are carried around as integer codes in `[0, q)`. For a prime
//! field the code is the residue itself; for an extension field it is the
//! base-p digit packing of the polynomial representative, constant term in
//! the least significant digit. Extension-field products are computed by
//! polynomial multiplication followed by reduction modulo the built-in
//! modulus, so a [`FieldSpec`] holds no tables.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u32),
    #[error("exponent must be at least 1")]
    BadExponent,
    #[error(
        "no built-in modulus for GF({0}); supported extension orders are 4, 8, 9, 16, 25, 27, 32"
    )]
    UnsupportedExtension(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("code {code} is not an element of GF({q})")]
    BadCode { code: u64, q: u32 },
}

/// Monic moduli, coefficients lowest degree first (leading 1 included).
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
];

/// The finite field GF(p^b).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    p: u32,
    b: u32,
    q: u32,
    /// Monic modulus, lowest coefficient first. Empty for prime fields.
    modulus: Vec<u32>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^b). Extension fields use the built-in modulus table.
    pub fn new(p: u32, b: u32) -> Result<Self, FieldError> {
        if b == 0 {
            return Err(FieldError::BadExponent);
        }
        if !is_prime(p as u64) {
            return Err(FieldError::NonPrimeP(p));
        }
        let q = (p as u64).checked_pow(b).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER as u64 {
            return Err(FieldError::FieldTooLarge(q));
        }
        let q = q as u32;
        if b == 1 {
            return Ok(FieldSpec {
                p,
                b,
                q,
                modulus: Vec::new(),
            });
        }
        let modulus = BUILTIN_MODULI
            .iter()
            .find(|(mp, mb, _)| *mp == p && *mb == b)
            .map(|(_, _, m)| m.to_vec())
            .ok_or(FieldError::UnsupportedExtension(q as u64))?;
        assert!(
            is_irreducible(p, &modulus),
            "built-in modulus for GF({q}) is reducible"
        );
        Ok(FieldSpec { p, b, q, modulus })
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// Field of order `q`, factoring `q` as a prime power.
    pub fn of_order(q: u32) -> Result<Self, FieldError> {
        let p = (2..=q.max(2)).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
        let mut rest = q;
        let mut b = 0;
        while rest > 1 && rest.is_multiple_of(p) {
            rest /= p;
            b += 1;
        }
        if rest != 1 || q < 2 {
            return Err(FieldError::NonPrimeP(q));
        }
        Self::new(p, b)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.b
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.b == 1
    }

    /// Wraps a code, checking its range.
    pub fn element(&self, code: u32) -> Result<FieldElement<'_>, FieldError> {
        if code >= self.q {
            return Err(FieldError::BadCode {
                code: code as u64,
                q: self.q,
            });
        }
        Ok(FieldElement { field: self, code })
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> Vec<FieldElement<'_>> {
        (0..self.q)
            .map(|code| FieldElement { field: self, code })
            .collect()
    }

    /// Image of an integer under the prime-subfield embedding.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    // Code-level arithmetic. Callers guarantee codes are in range.

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.b == 1 {
            return (x + y) % self.p;
        }
        if self.p == 2 {
            return x ^ y;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.b {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.b == 1 {
            return (self.p - x) % self.p;
        }
        if self.p == 2 {
            return x;
        }
        let mut x = x;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.b {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if self.b == 1 {
            return ((x as u64 * y as u64) % self.p as u64) as u32;
        }
        let b = self.b as usize;
        let p = self.p;
        let xd = self.digits(x);
        let yd = self.digits(y);
        let mut prod = vec![0u32; 2 * b - 1];
        for (i, &xi) in xd.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in yd.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        // Reduce by the monic modulus from the top down.
        for top in (b..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &mi) in self.modulus[..b].iter().enumerate() {
                let idx = top - b + i;
                prod[idx] = (prod[idx] + (p - c) * mi % p) % p;
            }
            prod[top] = 0;
        }
        self.pack(&prod[..b])
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u32) -> Result<u32, FieldError> {
        if x == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(x, self.q as u64 - 2))
    }

    pub fn div(&self, x: u32, y: u32) -> Result<u32, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.b as usize);
        for _ in 0..self.b {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// True if the monic polynomial `poly` (lowest coefficient first) has no
/// monic factor of degree 1..=deg/2 over GF(p).
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    for fdeg in 1..=deg / 2 {
        let count = (p as u64).pow(fdeg as u32);
        for lower in 0..count {
            let mut factor = Vec::with_capacity(fdeg + 1);
            let mut rest = lower;
            for _ in 0..fdeg {
                factor.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            factor.push(1);
            if remainder_is_zero(p, poly, &factor) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(p: u32, num: &[u32], monic: &[u32]) -> bool {
    let mut rem = num.to_vec();
    let dd = monic.len() - 1;
    for top in (dd..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in monic.iter().enumerate() {
            let idx = top - dd + i;
            rem[idx] = (rem[idx] + (p - c) * mi % p) % p;
        }
    }
    rem[..dd].iter().all(|&c| c == 0)
}

/// A field element bound to its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldElement<'a> {
    field: &'a FieldSpec,
    code: u32,
}

impl<'a> FieldElement<'a> {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &'a FieldSpec {
        self.field
    }

    fn same_field(&self, other: &FieldElement<'_>) -> Result<(), FieldError> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn wrap(&self, code: u32) -> FieldElement<'a> {
        FieldElement {
            field: self.field,
            code,
        }
    }

    pub fn add(&self, other: &FieldElement<'_>) -> Result<FieldElement<'a>, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &FieldElement<'_>) -> Result<FieldElement<'a>, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &FieldElement<'_>) -> Result<FieldElement<'a>, FieldError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> FieldElement<'a> {
        self.wrap(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<FieldElement<'a>, FieldError> {
        Ok(self.wrap(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement<'a> {
        self.wrap(self.field.pow(self.code, e))
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: &[(u32, u32)] = &[
        (2, 1),
        (3, 1),
        (5, 1),
        (7, 1),
        (2, 2),
        (2, 3),
        (3, 2),
        (2, 4),
        (5, 2),
        (3, 3),
        (2, 5),
    ];

    #[test]
    fn construction() {
        let gf2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(gf2.order(), 2);
        assert!(gf2.modulus().is_empty());
        let gf4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(gf4.modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(4, 1), Err(FieldError::NonPrimeP(4)));
        assert_eq!(
            FieldSpec::new(7, 2),
            Err(FieldError::UnsupportedExtension(49))
        );
        assert_eq!(
            FieldSpec::new(2, 17),
            Err(FieldError::FieldTooLarge(1 << 17))
        );
        assert_eq!(FieldSpec::new(2, 0), Err(FieldError::BadExponent));
        assert_eq!(
            FieldSpec::of_order(9).unwrap(),
            FieldSpec::new(3, 2).unwrap()
        );
        assert!(FieldSpec::of_order(6).is_err());
        assert!(FieldSpec::new(65521, 1).is_ok());
    }

    #[test]
    fn quadratic_over_gf2_is_unique_irreducible() {
        // monic quadratics over GF(2): x^2, x^2+1, x^2+x, x^2+x+1
        let irreducible: Vec<_> = (0..4u32)
            .map(|c| vec![c & 1, c >> 1, 1])
            .filter(|poly| is_irreducible(2, poly))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for (p, _, m) in BUILTIN_MODULI {
            assert!(is_irreducible(*p, m));
        }
        assert!(!is_irreducible(2, &[1, 0, 1])); // (x+1)^2
        assert!(!is_irreducible(2, &[1, 0, 1, 0, 1])); // (x^2+x+1)^2
        assert!(is_irreducible(2, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn small_products() {
        let gf5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(gf5.mul(2, 4), 3);
        let gf4 = FieldSpec::new(2, 2).unwrap();
        // x * x = x + 1 modulo x^2 + x + 1
        assert_eq!(gf4.mul(2, 2), 3);
        let three = gf4.element(3).unwrap();
        assert_eq!(three.inv().unwrap().code(), 2);
        // oracle: exhaustive search for the inverse
        let y = (1..4).find(|&y| gf4.mul(3, y) == 1).unwrap();
        assert_eq!(y, 2);
        assert_eq!(gf4.inv(0), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn element_listing() {
        let codes = |f: &FieldSpec| f.elements().iter().map(|e| e.code()).collect::<Vec<_>>();
        assert_eq!(codes(&FieldSpec::new(2, 1).unwrap()), vec![0, 1]);
        assert_eq!(codes(&FieldSpec::new(3, 1).unwrap()), vec![0, 1, 2]);
        assert_eq!(codes(&FieldSpec::new(2, 2).unwrap()), vec![0, 1, 2, 3]);
    }

    #[test]
    fn mismatched_fields() {
        let a = FieldSpec::new(2, 2).unwrap();
        let b = FieldSpec::new(3, 1).unwrap();
        let x = a.element(1).unwrap();
        let y = b.element(1).unwrap();
        assert_eq!(x.add(&y), Err(FieldError::FieldMismatch));
        assert!(a.element(4).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for &(p, b) in SUPPORTED {
            let f = FieldSpec::new(p, b).unwrap();
            let q = f.order();
            for x in 0..q {
                assert_eq!(f.add(x, f.neg(x)), 0);
                assert_eq!(f.mul(x, 1), x);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1, "{f} inverse of {x}");
                    assert_eq!(f.pow(x, q as u64 - 1), 1, "{f} order of {x}");
                }
                for y in 0..q {
                    let s = f.add(x, y);
                    let m = f.mul(x, y);
                    assert!(s < q && m < q);
                    assert_eq!(m, f.mul(y, x));
                    assert_eq!(s, f.add(y, x));
                    assert_eq!(
                        f.pow(s, p as u64),
                        f.add(f.pow(x, p as u64), f.pow(y, p as u64))
                    );
                }
            }
        }
    }

    #[test]
    fn distributivity_small_extensions() {
        for &(p, b) in &[(2, 2), (3, 2), (2, 3)] {
            let f = FieldSpec::new(p, b).unwrap();
            let q = f.order();
            for x in 0..q {
                for y in 0..q {
                    for z in 0..q {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        assert_eq!(f.mul(x, f.mul(y, z)), f.mul(f.mul(x, y), z));
                    }
                }
            }
        }
    }
}
