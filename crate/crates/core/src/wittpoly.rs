//! Universal Witt polynomials over the integers.
//!
//! Polynomials live in `Z[X_0..X_{n-1}, Y_0..Y_{n-1}]` with a dense exponent
//! vector of arity `2n`. The sum, product and negation polynomials are
//! produced by the phantom recursion: `p^i P_i` is computed as an integer
//! polynomial and every coefficient is then divided by `p^i`, with the
//! division checked for exactness.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::is_prime;
use crate::ring::{IntegerRing, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("inexact division: coefficient {coeff} of {monomial} is not divisible by {divisor}")]
    InexactDivision {
        coeff: BigInt,
        monomial: String,
        divisor: BigInt,
    },
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(Var),
    #[error("identity {identity} violated at {witness}")]
    IdentityViolation { identity: String, witness: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Witt length must be at least 1")]
    ZeroLength,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    X,
    Y,
}

/// A named variable `X_i` or `Y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub block: Block,
    pub index: usize,
}

impl Var {
    pub fn x(index: usize) -> Var {
        Var { block: Block::X, index }
    }

    pub fn y(index: usize) -> Var {
        Var { block: Block::Y, index }
    }

    fn slot(self, half: usize) -> usize {
        match self.block {
            Block::X => self.index,
            Block::Y => half + self.index,
        }
    }

    fn from_slot(slot: usize, half: usize) -> Var {
        if slot < half {
            Var::x(slot)
        } else {
            Var::y(slot - half)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.block {
            Block::X => write!(f, "X_{}", self.index),
            Block::Y => write!(f, "Y_{}", self.index),
        }
    }
}

/// Dense exponent vector with its cached total degree.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vector compared from `Y_{n-1}` down to `X_0`, so `X_0 < X_1 < ... < Y_0 < ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    fn one(arity: usize) -> Monomial {
        Monomial {
            exps: vec![0; arity].into_boxed_slice(),
            degree: 0,
        }
    }

    fn from_exps(exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree + other.degree,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over `Z` in `X_0..X_{n-1}, Y_0..Y_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    half: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero(half: usize) -> Self {
        IntPolynomial {
            half,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(half: usize, c: BigInt) -> Self {
        let mut poly = Self::zero(half);
        if !c.is_zero() {
            poly.terms.insert(Monomial::one(2 * half), c);
        }
        poly
    }

    pub fn var(half: usize, v: Var) -> Self {
        assert!(v.index < half, "{v} out of range for arity {half}");
        let mut exps = vec![0; 2 * half];
        exps[v.slot(half)] = 1;
        let mut poly = Self::zero(half);
        poly.terms.insert(Monomial::from_exps(exps), BigInt::one());
        poly
    }

    /// Builds a polynomial from `(variable powers, coefficient)` records.
    pub fn from_terms<I>(half: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<(Var, u32)>, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (powers, coeff) in terms {
            let mut exps = vec![0u32; 2 * half];
            for (v, e) in powers {
                exps[v.slot(half)] += e;
            }
            *acc.entry(Monomial::from_exps(exps)).or_default() += coeff;
        }
        Self::from_accumulator(half, acc)
    }

    fn from_accumulator(half: usize, acc: HashMap<Monomial, BigInt>) -> Self {
        IntPolynomial {
            half,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Number of variables in each of the X and Y blocks.
    pub fn half_arity(&self) -> usize {
        self.half
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Coefficient of the monomial `prod v^e`, zero when absent.
    pub fn coefficient(&self, powers: &[(Var, u32)]) -> BigInt {
        let mut exps = vec![0u32; 2 * self.half];
        for &(v, e) in powers {
            exps[v.slot(self.half)] += e;
        }
        self.terms
            .get(&Monomial::from_exps(exps))
            .cloned()
            .unwrap_or_default()
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.half, other.half, "polynomial arity mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_default();
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        IntPolynomial {
            half: self.half,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            half: self.half,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.times(mb)).or_default() += ca * cb;
            }
        }
        Self::from_accumulator(self.half, acc)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.half);
        }
        IntPolynomial {
            half: self.half,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::constant(self.half, BigInt::one());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divides every coefficient by `d`, failing on the first remainder.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision {
                    coeff: c.clone(),
                    monomial: self.monomial_string(m),
                    divisor: d.clone(),
                });
            }
            terms.insert(m.clone(), q);
        }
        Ok(IntPolynomial {
            half: self.half,
            terms,
        })
    }

    /// Variables that occur with a positive exponent somewhere.
    pub fn variables(&self) -> Vec<Var> {
        let mut used = vec![false; 2 * self.half];
        for m in self.terms.keys() {
            for (slot, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    used[slot] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(slot, _)| Var::from_slot(slot, self.half))
            .collect()
    }

    /// Evaluates the polynomial over `ring`, looking values up through `value`.
    pub fn eval_with<'a, R, F>(&self, ring: &R, value: F) -> Result<R::Elem, PolyError>
    where
        R: Ring,
        R::Elem: 'a,
        F: Fn(Var) -> Option<&'a R::Elem>,
    {
        let arity = 2 * self.half;
        let mut max_exp = vec![0u32; arity];
        for m in self.terms.keys() {
            for (slot, &e) in m.exps.iter().enumerate() {
                max_exp[slot] = max_exp[slot].max(e);
            }
        }
        // powers[slot][k] = value^(k+1)
        let mut powers: Vec<Vec<R::Elem>> = Vec::with_capacity(arity);
        for (slot, &top) in max_exp.iter().enumerate() {
            let mut table = Vec::with_capacity(top as usize);
            if top > 0 {
                let v = Var::from_slot(slot, self.half);
                let base = value(v).ok_or(PolyError::UnassignedVariable(v))?;
                table.push(base.clone());
                for k in 1..top as usize {
                    let next = ring.mul(&table[k - 1], base);
                    table.push(next);
                }
            }
            powers.push(table);
        }

        let mut total = ring.zero();
        for (m, c) in &self.terms {
            let coeff = ring.integer(c);
            if ring.is_zero(&coeff) {
                continue;
            }
            let mut term: Option<R::Elem> = None;
            for (slot, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = &powers[slot][e as usize - 1];
                term = Some(match term {
                    None => factor.clone(),
                    Some(acc) => ring.mul(&acc, factor),
                });
            }
            let term = match term {
                None => coeff,
                Some(t) if c.is_one() => t,
                Some(t) => ring.mul(&coeff, &t),
            };
            total = ring.add(&total, &term);
        }
        Ok(total)
    }

    fn monomial_string(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(slot, &e)| {
                let v = Var::from_slot(slot, self.half);
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// JSON term records, highest monomial first.
    pub fn to_term_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord {
                vars: m
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(slot, &e)| (Var::from_slot(slot, self.half).to_string(), e))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.monomial_string(m);
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TermRecord {
    pub vars: BTreeMap<String, u32>,
    pub coeff: String,
}

/// `Z[X, Y]` of a fixed arity as a coefficient ring, for symbolic checks.
#[derive(Clone, Copy, Debug)]
pub struct IntPolyRing {
    pub half: usize,
}

impl Ring for IntPolyRing {
    type Elem = IntPolynomial;

    fn zero(&self) -> IntPolynomial {
        IntPolynomial::zero(self.half)
    }
    fn one(&self) -> IntPolynomial {
        IntPolynomial::constant(self.half, BigInt::one())
    }
    fn add(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        a.add(b)
    }
    fn mul(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        a.mul(b)
    }
    fn neg(&self, a: &IntPolynomial) -> IntPolynomial {
        a.neg()
    }
    fn integer(&self, n: &BigInt) -> IntPolynomial {
        IntPolynomial::constant(self.half, n.clone())
    }
    fn is_zero(&self, a: &IntPolynomial) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn pow(&self, a: &IntPolynomial, exp: u64) -> IntPolynomial {
        a.pow(exp)
    }
    fn frobenius(&self, _a: &IntPolynomial) -> IntPolynomial {
        panic!("Frobenius is undefined over Z[X, Y]")
    }
}

/// Evaluates a polynomial under an explicit variable assignment.
pub fn eval_poly<R: Ring>(
    poly: &IntPolynomial,
    assignment: &BTreeMap<Var, R::Elem>,
    ring: &R,
) -> Result<R::Elem, PolyError> {
    poly.eval_with(ring, |v| assignment.get(&v))
}

/// `X_0^{p^i} + p X_1^{p^{i-1}} + ... + p^i X_i`, in arity `i + 1`.
pub fn phantom_poly(p: u64, i: usize) -> IntPolynomial {
    phantom_in(p, i, i + 1, Block::X)
}

fn phantom_in(p: u64, i: usize, half: usize, block: Block) -> IntPolynomial {
    let p_big = BigInt::from(p);
    IntPolynomial::from_terms(
        half,
        (0..=i).map(|k| {
            let v = Var { block, index: k };
            let exp = p.pow((i - k) as u32) as u32;
            (vec![(v, exp)], num_traits::pow(p_big.clone(), k))
        }),
    )
}

/// `i`-th phantom coordinate of a concrete vector over any ring.
pub fn phantom_value<R: Ring>(ring: &R, p: u64, comps: &[R::Elem], i: usize) -> R::Elem {
    let mut total = ring.zero();
    for (k, c) in comps.iter().enumerate().take(i + 1) {
        let power = ring.pow(c, p.pow((i - k) as u32));
        let weight = ring.integer(&num_traits::pow(BigInt::from(p), k));
        total = ring.add(&total, &ring.mul(&weight, &power));
    }
    total
}

/// Sum, product and negation polynomials for a fixed `(p, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPolySet {
    pub p: u64,
    pub n: usize,
    pub sum: Vec<IntPolynomial>,
    pub prod: Vec<IntPolynomial>,
    pub neg: Vec<IntPolynomial>,
}

/// Solves `phi_i(P_0..P_i) = target_i` for `P_i` over the integers.
fn solve_phantom(
    p: u64,
    n: usize,
    target: impl Fn(usize) -> IntPolynomial,
) -> Result<Vec<IntPolynomial>, PolyError> {
    let p_big = BigInt::from(p);
    let mut solved: Vec<IntPolynomial> = Vec::with_capacity(n);
    // raised[k] = P_k^{p^{i-k}} for the current i
    let mut raised: Vec<IntPolynomial> = Vec::with_capacity(n);
    for i in 0..n {
        for r in raised.iter_mut() {
            *r = r.pow(p);
        }
        let mut rest = target(i);
        for (k, r) in raised.iter().enumerate() {
            rest = rest.sub(&r.scale(&num_traits::pow(p_big.clone(), k)));
        }
        let next = rest.div_exact(&num_traits::pow(p_big.clone(), i))?;
        raised.push(next.clone());
        solved.push(next);
    }
    Ok(solved)
}

pub fn gen_witt_polys(p: u64, n: usize) -> Result<WittPolySet, PolyError> {
    if !is_prime(p) {
        return Err(PolyError::NotPrime(p));
    }
    if n == 0 {
        return Err(PolyError::ZeroLength);
    }
    let phi_x = |i: usize| phantom_in(p, i, n, Block::X);
    let phi_y = |i: usize| phantom_in(p, i, n, Block::Y);
    let sum = solve_phantom(p, n, |i| phi_x(i).add(&phi_y(i)))?;
    let prod = solve_phantom(p, n, |i| phi_x(i).mul(&phi_y(i)))?;
    let neg = solve_phantom(p, n, |i| phi_x(i).neg())?;
    Ok(WittPolySet { p, n, sum, prod, neg })
}

type PolyCache = Mutex<HashMap<(u64, usize), Arc<WittPolySet>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized [`gen_witt_polys`]; generation runs outside the lock.
pub fn witt_polys(p: u64, n: usize) -> Result<Arc<WittPolySet>, PolyError> {
    if let Some(set) = cache().lock().unwrap().get(&(p, n)) {
        return Ok(set.clone());
    }
    let set = Arc::new(gen_witt_polys(p, n)?);
    let mut guard = cache().lock().unwrap();
    Ok(guard.entry((p, n)).or_insert(set).clone())
}

impl WittPolySet {
    fn vars_ring(&self) -> IntPolyRing {
        IntPolyRing { half: self.n }
    }

    /// Generic variables `X_0..X_{n-1}` (or the Y block) as polynomials.
    fn block_vars(&self, block: Block) -> Vec<IntPolynomial> {
        (0..self.n)
            .map(|k| IntPolynomial::var(self.n, Var { block, index: k }))
            .collect()
    }

    /// Checks the three phantom identities as exact polynomial equalities.
    pub fn check_symbolic(&self) -> Result<(), PolyError> {
        let ring = self.vars_ring();
        let xs = self.block_vars(Block::X);
        let ys = self.block_vars(Block::Y);
        for i in 0..self.n {
            let phi_x = phantom_value(&ring, self.p, &xs, i);
            let phi_y = phantom_value(&ring, self.p, &ys, i);
            let checks = [
                ("phi(S) = phi(X) + phi(Y)", &self.sum, phi_x.add(&phi_y)),
                ("phi(M) = phi(X) * phi(Y)", &self.prod, phi_x.mul(&phi_y)),
                ("phi(I) = -phi(X)", &self.neg, phi_x.neg()),
            ];
            for (name, family, expected) in checks {
                if phantom_value(&ring, self.p, family, i) != expected {
                    return Err(PolyError::IdentityViolation {
                        identity: format!("{name} (index {i}, p = {}, n = {})", self.p, self.n),
                        witness: "symbolic".to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `S_j(X_0..X_j, Y_0..Y_j) = S_{j+1}(0, X_0..X_j, 0, Y_0..Y_j)` for all `j <= n - 2`.
    pub fn check_shift_identity(&self) -> Result<(), PolyError> {
        let ring = self.vars_ring();
        let zero = ring.zero();
        let xs = self.block_vars(Block::X);
        let ys = self.block_vars(Block::Y);
        for j in 0..self.n.saturating_sub(1) {
            let shifted = self.sum[j + 1].eval_with(&ring, |v| {
                let block = match v.block {
                    Block::X => &xs,
                    Block::Y => &ys,
                };
                if v.index == 0 {
                    Some(&zero)
                } else {
                    block.get(v.index - 1)
                }
            })?;
            if shifted != self.sum[j] {
                return Err(PolyError::IdentityViolation {
                    identity: format!("S_{j} = S_{}(0, X, 0, Y)", j + 1),
                    witness: format!("got {shifted}, expected {}", self.sum[j]),
                });
            }
        }
        Ok(())
    }

    /// `S_j(X_0, 0, .., 0, Y_0, 0, .., 0)` by substitution into the generated `S_j`.
    pub fn restricted_sum(&self, j: usize) -> IntPolynomial {
        let ring = self.vars_ring();
        let zero = ring.zero();
        let x0 = IntPolynomial::var(self.n, Var::x(0));
        let y0 = IntPolynomial::var(self.n, Var::y(0));
        self.sum[j]
            .eval_with(&ring, |v| match (v.block, v.index) {
                (_, k) if k > 0 => Some(&zero),
                (Block::X, _) => Some(&x0),
                (Block::Y, _) => Some(&y0),
            })
            .expect("all variables are assigned")
    }
}

/// `f_j(X_0, Y_0) = S_j(X_0, 0, .., 0, Y_0, 0, .., 0)` computed directly from the
/// two-variable phantom recursion `phi_j(f) = X_0^{p^j} + Y_0^{p^j}`, without
/// generating the full `S_j`. Returned in arity `j + 1`.
pub fn restricted_sum_poly(p: u64, j: usize) -> Result<IntPolynomial, PolyError> {
    if !is_prime(p) {
        return Err(PolyError::NotPrime(p));
    }
    let half = j + 1;
    let x0 = IntPolynomial::var(half, Var::x(0));
    let y0 = IntPolynomial::var(half, Var::y(0));
    let fs = solve_phantom(p, j + 1, |i| {
        let e = p.pow(i as u32);
        x0.pow(e).add(&y0.pow(e))
    })?;
    Ok(fs.into_iter().next_back().expect("j + 1 >= 1 polynomials"))
}

/// Report of a successful [`check_phantom_identities`] run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhantomReport {
    pub p: u64,
    pub n: usize,
    pub trials: usize,
    pub symbolic: bool,
}

/// Random small-integer trials of the phantom identities, followed by the
/// symbolic check.
pub fn check_phantom_identities<G: rand::Rng>(
    set: &WittPolySet,
    trials: usize,
    rng: &mut G,
) -> Result<PhantomReport, PolyError> {
    let ring = IntegerRing;
    let n = set.n;
    for _ in 0..trials {
        let values: Vec<BigInt> = (0..2 * n).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect();
        let (xs, ys) = values.split_at(n);
        let lookup = |v: Var| match v.block {
            Block::X => xs.get(v.index),
            Block::Y => ys.get(v.index),
        };
        let eval_family = |family: &[IntPolynomial]| -> Result<Vec<BigInt>, PolyError> {
            family.iter().map(|poly| poly.eval_with(&ring, lookup)).collect()
        };
        let s = eval_family(&set.sum)?;
        let m = eval_family(&set.prod)?;
        let neg = eval_family(&set.neg)?;
        for i in 0..n {
            let px = phantom_value(&ring, set.p, xs, i);
            let py = phantom_value(&ring, set.p, ys, i);
            let ok = phantom_value(&ring, set.p, &s, i) == &px + &py
                && phantom_value(&ring, set.p, &m, i) == &px * &py
                && phantom_value(&ring, set.p, &neg, i) == -&px;
            if !ok {
                return Err(PolyError::IdentityViolation {
                    identity: format!("phantom homomorphism at index {i}"),
                    witness: format!("X = {xs:?}, Y = {ys:?}"),
                });
            }
        }
    }
    set.check_symbolic()?;
    Ok(PhantomReport {
        p: set.p,
        n,
        trials,
        symbolic: true,
    })
}
