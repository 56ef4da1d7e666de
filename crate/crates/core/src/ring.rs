//! Coefficient-ring interface shared by Witt polynomial evaluation and Witt
//! vector arithmetic.
//!
//! Rings are context objects: an implementation carries whatever descriptor
//! its elements need (a finite field, a polynomial arity, an extension tower)
//! and the elements themselves stay plain values.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The minimal surface every Witt operation needs.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Canonical image of an integer; characteristic reduction happens here.
    fn integer(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Zero for characteristic-zero rings such as `Z`.
    fn characteristic(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `a^p` where `p` is the characteristic. Implementations override this
    /// with a cheaper termwise formula where one exists.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }
}

/// The integers, used for phantom-identity checks on concrete assignments.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn frobenius(&self, _a: &BigInt) -> BigInt {
        panic!("Frobenius is undefined over a characteristic-zero ring")
    }
}
