//! Witt vectors of length `n` over any [`Ring`], with the ring operations
//! realized by evaluating the universal polynomials.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::field::{LaurentPoly, LaurentRing};
use crate::ring::Ring;
use crate::sample;
use crate::wittpoly::{witt_polys, Block, IntPolynomial, PolyError, Var, WittPolySet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("shape mismatch: expected length {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("cut {cut} out of range 1..={max}")]
    CutOutOfRange { cut: usize, max: usize },
    #[error("operation needs characteristic {p}, ring has characteristic {got}")]
    CharacteristicMismatch { p: u64, got: u64 },
    #[error("identity {identity} violated: {witness}")]
    IdentityViolation { identity: String, witness: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `(c_0, .., c_{n-1})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittVec<E> {
    comps: Vec<E>,
}

impl<E> WittVec<E> {
    pub fn new(comps: Vec<E>) -> Self {
        WittVec { comps }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[E] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &E {
        &self.comps[i]
    }

    pub fn into_components(self) -> Vec<E> {
        self.comps
    }

    pub fn map<F, T>(&self, f: F) -> WittVec<T>
    where
        F: FnMut(&E) -> T,
    {
        WittVec {
            comps: self.comps.iter().map(f).collect(),
        }
    }
}

impl<E: fmt::Debug> fmt::Display for WittVec<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

/// `W_n(R)` for a fixed prime `p` and length `n`.
pub struct WittRing<'r, R: Ring> {
    ring: &'r R,
    p: u64,
    n: usize,
    polys: Arc<WittPolySet>,
}

impl<'r, R: Ring> WittRing<'r, R> {
    pub fn new(ring: &'r R, p: u64, n: usize) -> Result<Self, WittError> {
        Ok(WittRing {
            ring,
            p,
            n,
            polys: witt_polys(p, n)?,
        })
    }

    pub fn base(&self) -> &'r R {
        self.ring
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn polys(&self) -> &WittPolySet {
        &self.polys
    }

    fn check(&self, a: &WittVec<R::Elem>) -> Result<(), WittError> {
        if a.len() == self.n {
            Ok(())
        } else {
            Err(WittError::ShapeMismatch {
                expected: self.n,
                got: a.len(),
            })
        }
    }

    fn check_char_p(&self) -> Result<(), WittError> {
        let got = self.ring.characteristic();
        if got == self.p {
            Ok(())
        } else {
            Err(WittError::CharacteristicMismatch { p: self.p, got })
        }
    }

    pub fn vector(&self, comps: Vec<R::Elem>) -> Result<WittVec<R::Elem>, WittError> {
        let v = WittVec::new(comps);
        self.check(&v)?;
        Ok(v)
    }

    pub fn zero(&self) -> WittVec<R::Elem> {
        WittVec::new(vec![self.ring.zero(); self.n])
    }

    /// `1_n = (1, 0, .., 0)`.
    pub fn one(&self) -> WittVec<R::Elem> {
        let mut comps = vec![self.ring.zero(); self.n];
        comps[0] = self.ring.one();
        WittVec::new(comps)
    }

    pub fn is_zero(&self, a: &WittVec<R::Elem>) -> bool {
        a.comps.iter().all(|c| self.ring.is_zero(c))
    }

    fn binary(
        &self,
        family: &[IntPolynomial],
        a: &WittVec<R::Elem>,
        b: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a)?;
        self.check(b)?;
        let comps = family
            .iter()
            .map(|poly| {
                poly.eval_with(self.ring, |v: Var| match v.block {
                    Block::X => a.comps.get(v.index),
                    Block::Y => b.comps.get(v.index),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WittVec::new(comps))
    }

    /// `a (+) b`.
    pub fn add(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>, WittError> {
        self.binary(&self.polys.sum, a, b)
    }

    /// `a (*) b`.
    pub fn mul(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>, WittError> {
        self.binary(&self.polys.prod, a, b)
    }

    /// `(-) a`, through the negation polynomials.
    pub fn neg(&self, a: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a)?;
        let comps = self
            .polys
            .neg
            .iter()
            .map(|poly| {
                poly.eval_with(self.ring, |v: Var| match v.block {
                    Block::X => a.comps.get(v.index),
                    Block::Y => None,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WittVec::new(comps))
    }

    /// `a (-) b = a (+) ((-) b)`.
    pub fn sub(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>, WittError> {
        self.add(a, &self.neg(b)?)
    }

    /// Componentwise `p`-th power.
    pub fn frobenius(&self, a: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a)?;
        self.check_char_p()?;
        Ok(a.map(|c| self.ring.frobenius(c)))
    }

    /// `p . a = (0, a_0^p, .., a_{n-2}^p)` in characteristic `p`.
    pub fn times_p(&self, a: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a)?;
        self.check_char_p()?;
        let mut comps = Vec::with_capacity(self.n);
        comps.push(self.ring.zero());
        comps.extend(a.comps[..self.n - 1].iter().map(|c| self.ring.frobenius(c)));
        Ok(WittVec::new(comps))
    }

    /// `k . 1_n` by double-and-add in the Witt group.
    pub fn int_image(&self, k: u64) -> Result<WittVec<R::Elem>, WittError> {
        let mut result = self.zero();
        let mut base = self.one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.add(&result, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(result)
    }

    fn check_cut(&self, i: usize) -> Result<(), WittError> {
        if (1..self.n).contains(&i) {
            Ok(())
        } else {
            Err(WittError::CutOutOfRange {
                cut: i,
                max: self.n.saturating_sub(1),
            })
        }
    }

    /// `mu_i(a) = (a_0, .., a_{i-1}, 0, .., 0)`.
    pub fn mu(&self, a: &WittVec<R::Elem>, i: usize) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a)?;
        self.check_cut(i)?;
        Ok(self.keep_below(a, i))
    }

    /// `lambda_i(a) = (0, .., 0, a_i, .., a_{n-1})`.
    pub fn lambda(&self, a: &WittVec<R::Elem>, i: usize) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a)?;
        self.check_cut(i)?;
        Ok(self.keep_from(a, i))
    }

    /// Unchecked `mu_i` for any `0 <= i <= n`.
    pub(crate) fn keep_below(&self, a: &WittVec<R::Elem>, i: usize) -> WittVec<R::Elem> {
        WittVec::new(
            a.comps
                .iter()
                .enumerate()
                .map(|(k, c)| if k < i { c.clone() } else { self.ring.zero() })
                .collect(),
        )
    }

    /// Unchecked `lambda_i` for any `0 <= i <= n`; `lambda_n` is zero.
    pub(crate) fn keep_from(&self, a: &WittVec<R::Elem>, i: usize) -> WittVec<R::Elem> {
        WittVec::new(
            a.comps
                .iter()
                .enumerate()
                .map(|(k, c)| if k >= i { c.clone() } else { self.ring.zero() })
                .collect(),
        )
    }

    /// The vector with `value` in slot `i` and zeros elsewhere.
    pub fn single(&self, i: usize, value: R::Elem) -> WittVec<R::Elem> {
        let mut comps = vec![self.ring.zero(); self.n];
        comps[i] = value;
        WittVec::new(comps)
    }
}

/// Summary of a successful [`check_structural_identities`] run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub p: u64,
    pub n: usize,
    pub samples: usize,
    pub checks: usize,
}

fn violation<E: fmt::Debug>(identity: &str, witness: &[&WittVec<E>]) -> WittError {
    let witness = witness.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("; ");
    WittError::IdentityViolation {
        identity: identity.to_string(),
        witness,
    }
}

/// On random vectors over `F_q((t))`: the shift identity for the sum
/// polynomials, `mu_i(a (+) b) = mu_i(mu_i(a) (+) mu_i(b))`,
/// `a = lambda_i(a) (+) mu_i(a)`, and the free-variable chain
/// `a (+) m (-) mu_i(mu_i(a) (+) m) = lambda_i(a (+) m)` for `m = mu_i(m)`.
pub fn check_structural_identities<G: rand::Rng>(
    ring: &LaurentRing,
    n: usize,
    samples: usize,
    rng: &mut G,
) -> Result<StructuralReport, WittError> {
    let p = ring.characteristic();
    let w = WittRing::new(ring, p, n)?;
    w.polys().check_shift_identity()?;
    let mut checks = 1;
    let shape = sample::VectorShape::default();
    for _ in 0..samples {
        let a = sample::random_witt(rng, &ring.field, n, &shape);
        let b = sample::random_witt(rng, &ring.field, n, &shape);
        for i in 1..n {
            let lhs = w.mu(&w.add(&a, &b)?, i)?;
            let rhs = w.mu(&w.add(&w.mu(&a, i)?, &w.mu(&b, i)?)?, i)?;
            if lhs != rhs {
                return Err(violation("mu_i(a + b) = mu_i(mu_i(a) + mu_i(b))", &[&a, &b]));
            }
            if w.add(&w.lambda(&a, i)?, &w.mu(&a, i)?)? != a {
                return Err(violation("a = lambda_i(a) + mu_i(a)", &[&a]));
            }
            let m = w.mu(&b, i)?;
            let a_plus_m = w.add(&a, &m)?;
            let lhs = w.sub(&a_plus_m, &w.mu(&w.add(&w.mu(&a, i)?, &m)?, i)?)?;
            if lhs != w.lambda(&a_plus_m, i)? {
                return Err(violation("a + m - mu_i(mu_i(a) + m) = lambda_i(a + m)", &[&a, &m]));
            }
            checks += 3;
        }
    }
    Ok(StructuralReport { p, n, samples, checks })
}

/// Integer image helper for rings whose `integer` is the only way in.
pub fn int_elem<R: Ring>(ring: &R, k: i64) -> R::Elem {
    ring.integer(&BigInt::from(k))
}

impl WittVec<LaurentPoly> {
    /// `-v_K(a_i)` for each component, `None` for exact zeros.
    pub fn neg_valuations(&self) -> Vec<Option<i64>> {
        self.comps
            .iter()
            .map(|c| c.valuation().finite().map(|v| -v))
            .collect()
    }
}
