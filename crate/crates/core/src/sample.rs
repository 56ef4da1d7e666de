//! Seeded random generators for Laurent polynomials and Witt vectors.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{FqElement, FqField, LaurentPoly};
use crate::witt::WittVec;

/// Support window and density for random Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorShape {
    pub min_exp: i64,
    pub max_exp: i64,
    pub max_terms: usize,
    /// Chance in percent that a component is exactly zero.
    pub zero_percent: u32,
}

impl Default for VectorShape {
    fn default() -> Self {
        VectorShape {
            min_exp: -6,
            max_exp: 3,
            max_terms: 3,
            zero_percent: 10,
        }
    }
}

pub fn random_fq<G: Rng>(rng: &mut G, field: &FqField) -> FqElement {
    FqElement(rng.gen_range(0..field.order()))
}

pub fn random_unit<G: Rng>(rng: &mut G, field: &FqField) -> FqElement {
    FqElement(rng.gen_range(1..field.order()))
}

pub fn random_laurent<G: Rng>(rng: &mut G, field: &Arc<FqField>, shape: &VectorShape) -> LaurentPoly {
    if rng.gen_range(0..100) < shape.zero_percent {
        return LaurentPoly::zero(field);
    }
    let count = rng.gen_range(1..=shape.max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| (rng.gen_range(shape.min_exp..=shape.max_exp), random_unit(rng, field)))
        .collect();
    LaurentPoly::from_terms(field, terms)
}

pub fn random_witt<G: Rng>(rng: &mut G, field: &Arc<FqField>, n: usize, shape: &VectorShape) -> WittVec<LaurentPoly> {
    WittVec::new((0..n).map(|_| random_laurent(rng, field, shape)).collect())
}

/// A random `m` in `1..=max_m` with `p` not dividing it.
pub fn random_prime_to_p<G: Rng>(rng: &mut G, p: u64, max_m: i64) -> i64 {
    let choices: Vec<i64> = (1..=max_m).filter(|m| m % p as i64 != 0).collect();
    *choices.choose(rng).expect("max_m admits a value prime to p")
}

/// Component `i` has valuation `-m_i` with `p` not dividing `m_i`,
/// `1 <= m_i <= max_m`, and up to `extra` further terms of higher degree
/// inside `(-m_i, 2]`.
pub fn random_strongly_reduced<G: Rng>(
    rng: &mut G,
    field: &Arc<FqField>,
    n: usize,
    max_m: i64,
    extra: usize,
) -> WittVec<LaurentPoly> {
    let p = field.characteristic() as u64;
    let comps = (0..n)
        .map(|_| {
            let m = random_prime_to_p(rng, p, max_m);
            let mut terms = vec![(-m, random_unit(rng, field))];
            for _ in 0..rng.gen_range(0..=extra) {
                terms.push((rng.gen_range(-m + 1..=2), random_unit(rng, field)));
            }
            LaurentPoly::from_terms(field, terms)
        })
        .collect();
    WittVec::new(comps)
}
