//! Randomized identity suites behind `wittbreak verify`.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asw::{is_reduced, reduce, CharacterVec};
use crate::field::{FqField, LaurentRing};
use crate::sample::{self, VectorShape};
use crate::witt::{check_structural_identities, WittRing};
use crate::wittpoly::{check_phantom_identities, restricted_sum_poly, witt_polys, Var};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub pass: bool,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

type SuiteFn = fn(&mut ChaCha8Rng, usize) -> Result<usize, String>;

const SUITES: [(&str, SuiteFn); 5] = [
    ("witt-polynomials", witt_polynomials),
    ("restricted-sums", restricted_sums),
    ("witt-structure", witt_structure),
    ("witt-ring", witt_ring),
    ("reduction", reduction),
];

/// Runs every suite with its own generator seeded from `seed`.
pub fn run_suites(seed: u64, samples: usize) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .map(|(k, (name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            match suite(&mut rng, samples) {
                Ok(checks) => SuiteResult {
                    name,
                    pass: true,
                    checks,
                    error: None,
                },
                Err(e) => SuiteResult {
                    name,
                    pass: false,
                    checks: 0,
                    error: Some(e),
                },
            }
        })
        .collect()
}

fn witt_polynomials(rng: &mut ChaCha8Rng, samples: usize) -> Result<usize, String> {
    let mut checks = 0;
    for (p, n) in [(2u64, 3usize), (3, 2), (5, 2), (7, 1)] {
        let set = witt_polys(p, n).map_err(|e| e.to_string())?;
        check_phantom_identities(&set, samples, rng).map_err(|e| e.to_string())?;
        set.check_shift_identity().map_err(|e| e.to_string())?;
        checks += samples * n + 2;
    }
    Ok(checks)
}

/// `f_j(X_0, Y_0)`: two constructions agree, `X_0 Y_0^{p^j - 1}` has
/// coefficient `-1 mod p`, total degree `p^j`, no `Y_0^{p^j}` term.
pub fn check_restricted_sum(p: u64, j: usize) -> Result<(), String> {
    let set = witt_polys(p, j + 1).map_err(|e| e.to_string())?;
    let by_substitution = set.restricted_sum(j);
    let direct = restricted_sum_poly(p, j).map_err(|e| e.to_string())?;
    if by_substitution != direct {
        return Err(format!("f_{j} for p = {p}: substitution and recursion disagree"));
    }
    let pj = p.pow(j as u32) as u32;
    let lead = direct.coefficient(&[(Var::x(0), 1), (Var::y(0), pj - 1)]);
    let p_big = BigInt::from(p);
    if ((lead + 1) % &p_big) != BigInt::from(0) {
        return Err(format!("f_{j} for p = {p}: X_0 Y_0^{} coefficient is not -1 mod p", pj - 1));
    }
    if direct.total_degree() != Some(pj) {
        return Err(format!("f_{j} for p = {p}: total degree {:?}", direct.total_degree()));
    }
    if direct.coefficient(&[(Var::y(0), pj)]) != BigInt::from(0) {
        return Err(format!("f_{j} for p = {p}: Y_0^{pj} term present"));
    }
    Ok(())
}

fn restricted_sums(_rng: &mut ChaCha8Rng, _samples: usize) -> Result<usize, String> {
    let mut checks = 0;
    for (p, jmax) in [(2u64, 3usize), (3, 2)] {
        for j in 1..=jmax {
            check_restricted_sum(p, j)?;
            checks += 4;
        }
    }
    Ok(checks)
}

fn witt_structure(rng: &mut ChaCha8Rng, samples: usize) -> Result<usize, String> {
    let mut checks = 0;
    for (p, n) in [(2u32, 3usize), (3, 2), (2, 1)] {
        let ring = LaurentRing::new(Arc::new(FqField::prime(p).map_err(|e| e.to_string())?));
        let report = check_structural_identities(&ring, n, samples, rng).map_err(|e| e.to_string())?;
        checks += report.checks;
    }
    Ok(checks)
}

fn witt_ring(rng: &mut ChaCha8Rng, samples: usize) -> Result<usize, String> {
    let mut checks = 0;
    let shape = VectorShape::default();
    for (p, e, n) in [(2u32, 1u32, 3usize), (2, 2, 2), (3, 1, 2)] {
        let field = Arc::new(FqField::new(p, e, None).map_err(|e| e.to_string())?);
        let ring = LaurentRing::new(field.clone());
        let w = WittRing::new(&ring, p as u64, n).map_err(|e| e.to_string())?;
        for _ in 0..samples {
            let a = sample::random_witt(rng, &field, n, &shape);
            let b = sample::random_witt(rng, &field, n, &shape);
            let run = || -> Result<bool, crate::witt::WittError> {
                let mut fold = w.zero();
                for _ in 0..p {
                    fold = w.add(&fold, &a)?;
                }
                let fa = w.frobenius(&a)?;
                let fb = w.frobenius(&b)?;
                Ok(w.times_p(&a)? == fold
                    && w.is_zero(&w.sub(&a, &a)?)
                    && w.add(&a, &b)? == w.add(&b, &a)?
                    && w.frobenius(&w.add(&a, &b)?)? == w.add(&fa, &fb)?
                    && w.frobenius(&w.mul(&a, &b)?)? == w.mul(&fa, &fb)?)
            };
            if !run().map_err(|e| e.to_string())? {
                return Err(format!("ring identity failed for a = {a}, b = {b}"));
            }
            checks += 5;
        }
    }
    Ok(checks)
}

fn reduction(rng: &mut ChaCha8Rng, samples: usize) -> Result<usize, String> {
    let mut checks = 0;
    let shape = VectorShape {
        min_exp: -12,
        max_exp: 3,
        max_terms: 3,
        zero_percent: 10,
    };
    for (p, e, n) in [(2u32, 1u32, 3usize), (2, 2, 2), (3, 1, 2), (3, 2, 2)] {
        let field = Arc::new(FqField::new(p, e, None).map_err(|e| e.to_string())?);
        for _ in 0..samples {
            let a = CharacterVec::from_witt(field.clone(), sample::random_witt(rng, &field, n, &shape))
                .map_err(|e| e.to_string())?;
            let cert = reduce(&a).map_err(|e| e.to_string())?;
            if !cert.verify().map_err(|e| e.to_string())? || !is_reduced(&cert.reduced).map_err(|e| e.to_string())? {
                return Err(format!("reduction certificate failed for {}", a.vector()));
            }
            checks += 2;
        }
    }
    Ok(checks)
}
