//! Exact arithmetic in GF(p) for primes `p < 2^16` and in GF(2^k) for
//! `1 <= k <= 16` (polynomial basis).
//!
//! Elements are canonical integer codes: residues `0..p` for prime fields and
//! coefficient bitmasks (bit `i` is the coefficient of `x^i`) for binary
//! fields. Two elements are equal exactly when their codes are equal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime characteristic is below this bound.
pub const MAX_PRIME_EXCLUSIVE: u32 = 1 << 16;
/// Largest supported extension degree for binary fields.
pub const MAX_BINARY_DEGREE: u32 = 16;

/// Default irreducible polynomials for GF(2^k), indexed by `k - 1`.
///
/// Degree 8 is the AES polynomial `x^8 + x^4 + x^3 + x + 1`.
pub const DEFAULT_MODULI: [u32; 16] = [
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xb,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11b,   // x^8 + x^4 + x^3 + x + 1
    0x203,   // x^9 + x + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201b,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1002b, // x^16 + x^5 + x^3 + x + 1
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Prime,
    Binary,
}

/// A field element, stored as its canonical code.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Validated description of a finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
    characteristic: u32,
    degree: u32,
    modulus: u32,
    order: u32,
}

impl FieldSpec {
    /// Builds a field from its kind and parameter: the prime for
    /// [`FieldKind::Prime`], the extension degree for [`FieldKind::Binary`].
    /// A missing binary modulus falls back to [`DEFAULT_MODULI`].
    pub fn make(kind: FieldKind, p_or_k: u32, modulus: Option<u32>) -> Result<Self> {
        match kind {
            FieldKind::Prime => Self::prime(p_or_k),
            FieldKind::Binary => match modulus {
                Some(m) => Self::binary_with_modulus(p_or_k, m),
                None => Self::binary(p_or_k),
            },
        }
    }

    pub fn prime(p: u32) -> Result<Self> {
        if p >= MAX_PRIME_EXCLUSIVE {
            return Err(Error::UnsupportedSize(format!("prime {p} is not below 2^16")));
        }
        if !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        Ok(FieldSpec { kind: FieldKind::Prime, characteristic: p, degree: 1, modulus: 0, order: p })
    }

    /// GF(2^k) with the default modulus for `k`.
    pub fn binary(k: u32) -> Result<Self> {
        check_degree(k)?;
        Self::binary_with_modulus(k, DEFAULT_MODULI[k as usize - 1])
    }

    pub fn binary_with_modulus(k: u32, modulus: u32) -> Result<Self> {
        check_degree(k)?;
        if poly_degree(modulus) != Some(k) {
            return Err(Error::DegreeMismatch { modulus, degree: k });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReduciblePolynomial(modulus));
        }
        Ok(FieldSpec { kind: FieldKind::Binary, characteristic: 2, degree: k, modulus, order: 1 << k })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn extension_degree(&self) -> u32 {
        self.degree
    }

    /// Modulus bitmask; `None` for prime fields.
    pub fn modulus_polynomial(&self) -> Option<u32> {
        match self.kind {
            FieldKind::Prime => None,
            FieldKind::Binary => Some(self.modulus),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Validates a code and wraps it as an element.
    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.order {
            Ok(FieldElement(code))
        } else {
            Err(Error::ElementOutOfRange { code, order: self.order })
        }
    }

    /// The element `1 + 1 + ... + 1` (`n` terms).
    pub fn from_int(&self, n: u64) -> FieldElement {
        FieldElement((n % u64::from(self.characteristic)) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Binary => FieldElement(a.0 ^ b.0),
            FieldKind::Prime => {
                let s = a.0 + b.0;
                FieldElement(if s >= self.order { s - self.order } else { s })
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Binary => a,
            FieldKind::Prime if a.0 == 0 => a,
            FieldKind::Prime => FieldElement(self.order - a.0),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Prime => FieldElement(((u64::from(a.0) * u64::from(b.0)) % u64::from(self.order)) as u32),
            FieldKind::Binary => FieldElement(clmul_mod(a.0, b.0, self.modulus, self.degree)),
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `a^(q-2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, u64::from(self.order) - 2))
    }

    /// `dst[i] -= factor * src[i]` over the whole slice.
    pub(crate) fn sub_scaled(&self, dst: &mut [FieldElement], src: &[FieldElement], factor: FieldElement) {
        if factor.is_zero() {
            return;
        }
        match self.kind {
            FieldKind::Binary => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    d.0 ^= clmul_mod(s.0, factor.0, self.modulus, self.degree);
                }
            }
            FieldKind::Prime => {
                let q = u64::from(self.order);
                let neg = q - u64::from(factor.0);
                for (d, &s) in dst.iter_mut().zip(src) {
                    d.0 = ((u64::from(d.0) + neg * u64::from(s.0)) % q) as u32;
                }
            }
        }
    }

    pub(crate) fn scale_in_place(&self, row: &mut [FieldElement], factor: FieldElement) {
        if factor == FieldElement::ONE {
            return;
        }
        for x in row {
            *x = self.mul(*x, factor);
        }
    }

    /// Iterator over all elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }
}

fn check_degree(k: u32) -> Result<()> {
    if k == 0 || k > MAX_BINARY_DEGREE {
        return Err(Error::UnsupportedSize(format!("extension degree {k} is not in 1..=16")));
    }
    Ok(())
}

#[inline]
fn clmul_mod(mut a: u32, mut b: u32, modulus: u32, degree: u32) -> u32 {
    let top = 1u32 << degree;
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: u32) -> bool {
    let Some(d) = poly_degree(poly) else { return false };
    if d == 0 {
        return false;
    }
    let max_divisor = 1u32 << (d / 2 + 1);
    (2..max_divisor).all(|div| poly_rem(poly, div) != 0)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `q = p^k` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let (mut rest, mut k) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl fmt::Display for FieldSpec {
    /// `gf(p)`, `gf(2^k)` for the default modulus, `gf(2^k;0xMASK)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime => write!(f, "gf({})", self.characteristic),
            FieldKind::Binary if self.modulus == DEFAULT_MODULI[self.degree as usize - 1] => {
                write!(f, "gf(2^{})", self.degree)
            }
            FieldKind::Binary => write!(f, "gf(2^{};{:#x})", self.degree, self.modulus),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::FieldNotation(s.to_string());
        let lower = s.to_ascii_lowercase();
        let inner = lower.strip_prefix("gf(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let parse_num = |t: &str| -> Result<u32> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<u32>().map_err(|_| Error::UnsupportedSize(format!("{t} is too large")))
        };
        match inner.split_once('^') {
            None => FieldSpec::prime(parse_num(inner)?),
            Some((base, rest)) => {
                if base != "2" {
                    return Err(Error::UnsupportedSize(format!(
                        "only binary extension fields are supported, got base {base}"
                    )));
                }
                let (k, modulus) = match rest.split_once(';') {
                    None => (parse_num(rest)?, None),
                    Some((k, m)) => {
                        let hex = m.strip_prefix("0x").ok_or_else(bad)?;
                        if hex.is_empty() || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
                            return Err(bad());
                        }
                        let m = u32::from_str_radix(hex, 16)
                            .map_err(|_| Error::UnsupportedSize(format!("modulus {m} is too large")))?;
                        (parse_num(k)?, Some(m))
                    }
                };
                FieldSpec::make(FieldKind::Binary, k, modulus)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
