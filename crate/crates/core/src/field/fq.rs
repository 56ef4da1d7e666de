//! Finite fields `F_q = F_p[g]/(modulus)`.
//!
//! An element is packed into a single `u32`: its coefficient vector
//! `(c_0, .., c_{e-1})` over `F_p` read as the base-`p` integer
//! `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`. Small fields (q <= 256) precompute
//! their addition and multiplication tables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::FieldError;
use crate::arith::is_prime;
use crate::ring::Ring;

const TABLE_LIMIT: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElement(pub(crate) u32);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);
    pub const ONE: FqElement = FqElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Base-`p` packed index of the element, in `0..q`.
    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The finite field `F_{p^e}`.
#[derive(Clone)]
pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, constant term first, length `e + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)?;
        if self.e > 1 {
            write!(f, "[modulus {:?}]", self.modulus)?;
        }
        Ok(())
    }
}

/// Dense polynomial helpers over `F_p`, coefficients constant term first.
mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top];
            if c != 0 {
                let shift = top - dm;
                for (k, &mk) in m.iter().enumerate() {
                    let idx = shift + k;
                    r[idx] = (r[idx] + (p - c) * mk % p) % p;
                }
            }
            r.pop();
        }
        r
    }

    /// Monic polynomials of degree `d` enumerated by packed lower coefficients.
    pub fn monic_of_degree(d: u32, p: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(d);
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(d as usize + 1);
            for _ in 0..d {
                coeffs.push((idx % p as u64) as u32);
                idx /= p as u64;
            }
            coeffs.push(1);
            coeffs
        })
    }

    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() as u32 - 1;
        if deg <= 1 {
            return deg == 1;
        }
        (1..=deg / 2).all(|d| monic_of_degree(d, p).all(|f| !trim(rem(m, &f, p)).is_empty()))
    }
}

pub use fp_poly::is_irreducible;

impl FqField {
    /// Builds `F_{p^e}`. With no modulus given, the first irreducible monic
    /// polynomial in enumeration order is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<FqField, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(FieldError::BadModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64 / 2)
            .ok_or_else(|| FieldError::BadModulus(format!("field of order {p}^{e} is too large")))?
            as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(FieldError::BadModulus(format!(
                        "modulus needs {} coefficients, got {}",
                        e + 1,
                        m.len()
                    )));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::BadModulus(format!("coefficient {c} is not a residue mod {p}")));
                }
                if m[e as usize] != 1 {
                    return Err(FieldError::BadModulus("modulus is not monic".into()));
                }
                if !fp_poly::is_irreducible(&m, p) {
                    return Err(FieldError::Reducible(m));
                }
                m
            }
            None if e == 1 => vec![0, 1],
            None => fp_poly::monic_of_degree(e, p)
                .find(|m| fp_poly::is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree"),
        };
        let mut field = FqField {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<FqField, FieldError> {
        FqField::new(p, 1, None)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add_slow(a as u32, b as u32);
                mul[a * q + b] = self.mul_slow(a as u32, b as u32);
            }
        }
        let neg = (0..q as u32).map(|a| self.neg_slow(a)).collect();
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field elements are invertible") as u32;
        }
        Tables { add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement::ZERO
    }

    pub fn one(&self) -> FqElement {
        FqElement::ONE
    }

    /// The class of `g`; `None` for prime fields.
    pub fn generator(&self) -> Option<FqElement> {
        (self.e > 1).then_some(FqElement(self.p))
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.q).map(FqElement)
    }

    pub fn contains(&self, a: FqElement) -> bool {
        a.0 < self.q
    }

    pub fn check(&self, a: FqElement) -> Result<FqElement, FieldError> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    /// Coefficient vector `(c_0, .., c_{e-1})`.
    pub fn coeffs(&self, a: FqElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FqElement {
        let reduced = if coeffs.len() > self.e as usize {
            fp_poly::rem(coeffs, &self.modulus, self.p)
        } else {
            coeffs.to_vec()
        };
        let mut packed = 0u32;
        for &c in reduced.iter().rev() {
            packed = packed * self.p + c % self.p;
        }
        FqElement(packed)
    }

    pub fn from_i64(&self, n: i64) -> FqElement {
        FqElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_bigint(&self, n: &BigInt) -> FqElement {
        let r = n.mod_floor(&BigInt::from(self.p));
        FqElement(r.to_u32().expect("residue fits in u32"))
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let ca = self.coeffs(FqElement(a));
        let cb = self.coeffs(FqElement(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * self.e as usize - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        self.from_coeffs(&prod).0
    }

    #[inline]
    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        match &self.tables {
            Some(t) => FqElement(t.add[(a.0 * self.q + b.0) as usize]),
            None if self.e == 1 => FqElement((a.0 + b.0) % self.p),
            None => FqElement(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElement) -> FqElement {
        match &self.tables {
            Some(t) => FqElement(t.neg[a.0 as usize]),
            None => FqElement(self.neg_slow(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        match &self.tables {
            Some(t) => FqElement(t.mul[(a.0 * self.q + b.0) as usize]),
            None => FqElement(self.mul_slow(a.0, b.0)),
        }
    }

    pub fn pow(&self, a: FqElement, mut exp: u64) -> FqElement {
        let mut result = FqElement::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    pub fn inv(&self, a: FqElement) -> Result<FqElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => FqElement(t.inv[a.0 as usize]),
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    /// `a^p`.
    pub fn frobenius(&self, a: FqElement) -> FqElement {
        self.pow(a, self.p as u64)
    }

    /// The unique `b` with `b^p = a`, namely `a^{p^{e-1}}`.
    pub fn pth_root(&self, a: FqElement) -> FqElement {
        self.pow(a, (self.p as u64).pow(self.e - 1))
    }

    /// Absolute trace `a + a^p + .. + a^{p^{e-1}}`, as a residue mod `p`.
    pub fn trace(&self, a: FqElement) -> u32 {
        let mut acc = FqElement::ZERO;
        let mut conj = a;
        for _ in 0..self.e {
            acc = self.add(acc, conj);
            conj = self.frobenius(conj);
        }
        debug_assert!(acc.0 < self.p, "trace must lie in the prime field");
        acc.0
    }

    /// Checked binary arithmetic for elements from untrusted sources.
    pub fn checked(&self, a: FqElement, b: FqElement, op: FqOp) -> Result<FqElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            FqOp::Add => self.add(a, b),
            FqOp::Mul => self.mul(a, b),
            FqOp::Neg => self.neg(a),
            FqOp::Inv => self.inv(a)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Mul,
    Neg,
    Inv,
}

impl Ring for FqField {
    type Elem = FqElement;

    fn zero(&self) -> FqElement {
        FqElement::ZERO
    }
    fn one(&self) -> FqElement {
        FqElement::ONE
    }
    fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        FqField::add(self, *a, *b)
    }
    fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        FqField::mul(self, *a, *b)
    }
    fn neg(&self, a: &FqElement) -> FqElement {
        FqField::neg(self, *a)
    }
    fn integer(&self, n: &BigInt) -> FqElement {
        self.from_bigint(n)
    }
    fn is_zero(&self, a: &FqElement) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn frobenius(&self, a: &FqElement) -> FqElement {
        FqField::frobenius(self, *a)
    }
}

/// A fixed embedding of a small finite field into a larger one of the same
/// characteristic, sending `g` to a chosen root of the small modulus.
#[derive(Clone, Debug)]
pub struct FqEmbedding {
    root: FqElement,
    small_degree: u32,
}

impl FqEmbedding {
    /// Picks the smallest (by packed index) root of the small modulus in `big`.
    pub fn new(small: &FqField, big: &FqField) -> Result<FqEmbedding, FieldError> {
        if small.p != big.p {
            return Err(FieldError::FieldMismatch);
        }
        if small.e == 1 {
            return Ok(FqEmbedding {
                root: FqElement::ZERO,
                small_degree: 1,
            });
        }
        let root = big
            .elements()
            .find(|&r| {
                let mut acc = FqElement::ZERO;
                for &c in small.modulus.iter().rev() {
                    acc = big.add(big.mul(acc, r), FqElement(c));
                }
                acc.is_zero()
            })
            .ok_or(FieldError::NoRootFound)?;
        Ok(FqEmbedding {
            root,
            small_degree: small.e,
        })
    }

    pub fn root(&self) -> FqElement {
        self.root
    }

    pub fn apply(&self, small: &FqField, big: &FqField, a: FqElement) -> FqElement {
        debug_assert_eq!(small.e, self.small_degree);
        let mut acc = FqElement::ZERO;
        for c in small.coeffs(a).into_iter().rev() {
            acc = big.add(big.mul(acc, self.root), FqElement(c));
        }
        acc
    }
}
