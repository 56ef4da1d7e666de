//! Ground truth for break computations: the tower of Artin-Schreier
//! extensions cut out by a Witt vector is built explicitly and the lower
//! ramification filtration is read from the action on a uniformizer. No
//! break formula is used here.

mod galois;
mod tower;

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

pub use galois::{apply_galois, apply_with_images, filtration_breaks, generator_images, uniformizer, GaloisElt};
pub use tower::{build_tower, Level, Node, RhsReduction, Tower, TowerElement, TowerRing, MAX_DEPTH};

use crate::asw::{AswError, CharacterVec};
use crate::breaks::{full_profile, BreakProfile, BreaksError};
use crate::field::{FieldError, FqField};
use crate::ring::Ring;
use crate::witt::WittError;
use crate::wittpoly::{restricted_sum_poly, Block, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("tower depth {0} unsupported (1..=3, at most the vector length)")]
    UnsupportedDepth(usize),
    #[error("vector is not reduced")]
    NotReduced,
    #[error("level {level} is not totally ramified (right-hand side valuation {valuation:?})")]
    NotTotallyRamified { level: usize, valuation: Option<i64> },
    #[error("valuation of zero requested")]
    ZeroElement,
    #[error("valuation minimum not unique at level {level}")]
    NonUniqueMinimum { level: usize },
    #[error("no coefficient in F_q cancels the leading term at level {level}")]
    NoCancellingCoefficient { level: usize },
    #[error("filtration breaks not strictly increasing: {0:?}")]
    NonIncreasingBreaks(Vec<i64>),
    #[error("two generators of one subgroup disagree at break {index}: {first:?} vs {second:?}")]
    InconsistentBreaks {
        index: usize,
        first: Option<i64>,
        second: Option<i64>,
    },
    #[error("uniformizer has valuation {0}")]
    UniformizerCheck(i64),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Asw(#[from] AswError),
    #[error(transparent)]
    Breaks(#[from] BreaksError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Formula breaks against tower breaks for one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub profile: BreakProfile,
    pub oracle_lower: Vec<i64>,
    pub equal: bool,
}

fn truncated(a: &CharacterVec, depth: usize) -> Result<CharacterVec, OracleError> {
    if depth == 0 || depth > a.len() {
        return Err(OracleError::UnsupportedDepth(depth));
    }
    Ok(CharacterVec::new(
        a.field().clone(),
        a.vector().components()[..depth].to_vec(),
    )?)
}

/// Compares the closed-form lower breaks of `mu_depth(a)` with the
/// filtration breaks of its tower.
pub fn compare(a: &CharacterVec, depth: usize) -> Result<Verdict, OracleError> {
    let a = truncated(a, depth)?;
    let tower = build_tower(&a, depth)?;
    let oracle_lower = filtration_breaks(&tower)?;
    let profile = full_profile(&a)?;
    let equal = profile.lower.len() == oracle_lower.len()
        && profile
            .lower
            .iter()
            .zip(&oracle_lower)
            .all(|(f, o)| *f == BigInt::from(*o));
    Ok(Verdict {
        profile,
        oracle_lower,
        equal,
    })
}

/// [`compare`] over a batch, in parallel; results keep the input order.
pub fn compare_batch(cases: &[CharacterVec], depth: usize) -> Vec<Result<Verdict, OracleError>> {
    cases.par_iter().map(|a| compare(a, depth)).collect()
}

/// [`compare`] after moving `a` to `F_{q^p}((t))`; the breaks must not move.
pub fn compare_base_changed(a: &CharacterVec, depth: usize) -> Result<(Verdict, Verdict), OracleError> {
    let here = compare(a, depth)?;
    let f = a.field();
    let big = Arc::new(FqField::new(f.characteristic(), f.degree() * f.characteristic(), None)?);
    let there = compare(&a.embed(&big)?, depth)?;
    Ok((here, there))
}

/// `v_{K_1}(f_j(x_0, a_0))` with `f_j(X_0, Y_0) = S_j(X_0, 0, .., Y_0, 0, ..)`.
pub fn restricted_sum_valuation(tower: &Tower, j: usize) -> Result<Option<i64>, OracleError> {
    let f = restricted_sum_poly(tower.prime(), j)?;
    let ring = tower.ring(1);
    let x0 = tower.witt_solution_component(0, 1);
    let a0 = tower.from_base(1, tower.input().component(0).clone());
    let value = f.eval_with(&ring, |v| match (v.block, v.index) {
        (Block::X, 0) => Some(&x0),
        (Block::Y, 0) => Some(&a0),
        _ => None,
    })?;
    if ring.is_zero(&value) {
        return Ok(None);
    }
    tower.valuation(1, &value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FqElement, LaurentPoly};
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cv_over(f: &Arc<FqField>, comps: &[&[(i64, u32)]]) -> CharacterVec {
        let comps = comps
            .iter()
            .map(|t| LaurentPoly::from_terms(f, t.iter().map(|&(e, c)| (e, FqElement(c)))))
            .collect();
        CharacterVec::new(f.clone(), comps).unwrap()
    }

    fn cv(p: u32, comps: &[&[(i64, u32)]]) -> CharacterVec {
        cv_over(&Arc::new(FqField::prime(p).unwrap()), comps)
    }

    #[test]
    fn two_level_example_by_hand() {
        let a = cv(2, &[&[(-1, 1)], &[(-3, 1)]]);
        let tower = build_tower(&a, 2).unwrap();
        assert_eq!(tower.levels()[0].gen_valuation, -1);
        // raw right-hand side t^-3 + x_0 t^-1 has even valuation -6
        assert_eq!(tower.valuation(1, &tower.levels()[1].raw_rhs).unwrap(), Some(-6));
        let x0 = tower.generator(1);
        let expected_offset = tower.mul(1, &x0, &tower.t_pow(1, -1));
        assert_eq!(tower.levels()[1].offset, expected_offset);
        let expected_rhs = tower.mul(1, &x0, &tower.t_pow(1, -2));
        assert_eq!(tower.levels()[1].rhs, expected_rhs);
        assert_eq!(tower.levels()[1].gen_valuation, -5);

        let pi = uniformizer(&tower).unwrap();
        let y1 = tower.generator(2);
        let expected_pi = tower.mul(2, &tower.pow(2, &y1, 3), &tower.t_pow(2, 4));
        assert_eq!(pi.node, expected_pi);
        assert_eq!(filtration_breaks(&tower).unwrap(), vec![1, 5]);
        // v(y_1') = -5 inside K_2
        let y = TowerElement { level: 2, node: y1 };
        assert_eq!(tower.element_valuation(&y).unwrap(), -5);
    }

    #[test]
    fn one_level_example() {
        let a = cv(2, &[&[(-3, 1)]]);
        let tower = build_tower(&a, 1).unwrap();
        assert_eq!(tower.levels()[0].gen_valuation, -3);
        let z = TowerElement {
            level: 1,
            node: tower.mul(1, &tower.generator(1), &tower.t_pow(1, 2)),
        };
        assert_eq!(tower.element_valuation(&z).unwrap(), 1);
        assert_eq!(filtration_breaks(&tower).unwrap(), vec![3]);
    }

    #[test]
    fn vanishing_later_components() {
        for a in [
            cv(2, &[&[(-3, 1)], &[], &[(-5, 1)]]),
            cv(3, &[&[(-2, 1)], &[], &[]]),
            cv(2, &[&[(-3, 1)], &[(2, 1)]]),
        ] {
            let v = compare(&a, a.len()).unwrap();
            assert!(v.equal, "{} {:?} vs {:?}", a.vector(), v.profile.lower, v.oracle_lower);
        }
    }

    #[test]
    fn valuation_of_t() {
        let a = cv(3, &[&[(-2, 1)], &[(-1, 2)]]);
        let tower = build_tower(&a, 2).unwrap();
        for l in 0..=2 {
            assert_eq!(tower.valuation(l, &tower.t_pow(l, 1)).unwrap(), Some(3i64.pow(l as u32)));
        }
    }

    #[test]
    fn depth_and_precondition_errors() {
        let a = cv(2, &[&[(-1, 1)], &[(-3, 1)], &[(-1, 1)], &[(-1, 1)]]);
        assert_eq!(build_tower(&a, 4).unwrap_err(), OracleError::UnsupportedDepth(4));
        assert_eq!(build_tower(&a, 0).unwrap_err(), OracleError::UnsupportedDepth(0));
        let unreduced = cv(2, &[&[(-2, 1)]]);
        assert_eq!(build_tower(&unreduced, 1).unwrap_err(), OracleError::NotReduced);
        let unit = cv(2, &[&[(0, 1)]]);
        assert!(matches!(
            build_tower(&unit, 1).unwrap_err(),
            OracleError::NotTotallyRamified { .. }
        ));
    }

    #[test]
    fn galois_examples() {
        let a = cv(2, &[&[(-1, 1)], &[(-3, 1)]]);
        let tower = build_tower(&a, 2).unwrap();
        let y0 = TowerElement { level: 1, node: tower.generator(1) };
        let y1 = TowerElement { level: 2, node: tower.generator(2) };
        let y0_top = tower.embed(y0.node.clone(), 1, 2);
        let one = tower.one(2);
        // sigma_2 = p.1 fixes x_0 and moves the top generator by 1
        let s2 = GaloisElt::new(2, 2, 2);
        assert_eq!(apply_galois(&tower, &y0, s2).unwrap().node, y0_top);
        assert_eq!(apply_galois(&tower, &y1, s2).unwrap().node, tower.add(&y1.node, &one));
        let s1 = GaloisElt::new(1, 2, 2);
        assert_eq!(apply_galois(&tower, &y0, s1).unwrap().node, tower.add(&y0_top, &one));
        let id = GaloisElt::new(0, 2, 2);
        assert_eq!(apply_galois(&tower, &y1, id).unwrap(), y1);
        assert_eq!(s1.order(), 4);
        assert_eq!(s2.order(), 2);
        assert_eq!(s1.compose(GaloisElt::new(3, 2, 2)), id);

        let b = cv(2, &[&[(-3, 1)]]);
        let t1 = build_tower(&b, 1).unwrap();
        let x = TowerElement { level: 1, node: t1.generator(1) };
        let moved = apply_galois(&t1, &x, GaloisElt::new(1, 2, 1)).unwrap();
        assert_eq!(moved.node, t1.add(&x.node, &t1.one(1)));
    }

    #[test]
    fn galois_action_is_a_ring_map_of_order_p_to_the_d() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in [2u32, 3] {
            let f = Arc::new(FqField::prime(p).unwrap());
            let a = CharacterVec::from_witt(f.clone(), sample::random_strongly_reduced(&mut rng, &f, 2, 5, 1)).unwrap();
            let tower = build_tower(&a, 2).unwrap();
            let sigma = GaloisElt::new(1, p as u64, 2);
            let images = generator_images(&tower, sigma).unwrap();
            for _ in 0..5 {
                let z = random_element(&tower, &mut rng);
                let w = random_element(&tower, &mut rng);
                let sz = apply_with_images(&tower, &z, &images);
                let sw = apply_with_images(&tower, &w, &images);
                let zw = TowerElement { level: 2, node: tower.mul(2, &z.node, &w.node) };
                let z_plus_w = TowerElement { level: 2, node: tower.add(&z.node, &w.node) };
                assert_eq!(apply_with_images(&tower, &zw, &images).node, tower.mul(2, &sz.node, &sw.node));
                assert_eq!(apply_with_images(&tower, &z_plus_w, &images).node, tower.add(&sz.node, &sw.node));
                assert_eq!(tower.valuation(2, &sz.node).unwrap(), tower.valuation(2, &z.node).unwrap());
            }
            // sigma has exact order p^2 on the top generator
            let mut y = TowerElement { level: 2, node: tower.generator(2) };
            let start = y.clone();
            for step in 1..=p * p {
                y = apply_with_images(&tower, &y, &images);
                assert_eq!(y == start, step == p * p);
            }
        }
    }

    fn random_element(tower: &Tower, rng: &mut ChaCha8Rng) -> TowerElement {
        let shape = sample::VectorShape {
            min_exp: -3,
            max_exp: 3,
            max_terms: 2,
            zero_percent: 30,
        };
        fn build(tower: &Tower, level: usize, rng: &mut ChaCha8Rng, shape: &sample::VectorShape) -> Node {
            match level {
                0 => Node::Base(sample::random_laurent(rng, tower.field(), shape)),
                l => Node::Ext((0..tower.prime()).map(|_| build(tower, l - 1, rng, shape)).collect()),
            }
        }
        TowerElement {
            level: tower.depth(),
            node: build(tower, tower.depth(), rng, &shape),
        }
    }

    #[test]
    fn tower_valuation_is_a_valuation() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = cv(3, &[&[(-2, 1)], &[(-5, 1)]]);
        let tower = build_tower(&a, 2).unwrap();
        for _ in 0..30 {
            let z = random_element(&tower, &mut rng);
            let w = random_element(&tower, &mut rng);
            let (vz, vw) = (tower.valuation(2, &z.node).unwrap(), tower.valuation(2, &w.node).unwrap());
            let (Some(vz), Some(vw)) = (vz, vw) else { continue };
            let prod = tower.mul(2, &z.node, &w.node);
            assert_eq!(tower.valuation(2, &prod).unwrap(), Some(vz + vw));
            if let Some(vs) = tower.valuation(2, &tower.add(&z.node, &w.node)).unwrap() {
                assert!(vs >= vz.min(vw));
                if vz != vw {
                    assert_eq!(vs, vz.min(vw));
                }
            }
        }
    }

    #[test]
    fn compare_examples() {
        let v = compare(&cv(2, &[&[(-1, 1)], &[(-3, 1)]]), 2).unwrap();
        assert!(v.equal);
        assert_eq!(v.oracle_lower, vec![1, 5]);
        let v = compare(&cv(2, &[&[(-3, 1)], &[(-1, 1)]]), 2).unwrap();
        assert!(v.equal);
        assert_eq!(v.oracle_lower, vec![3, 9]);
        let v = compare(&cv(3, &[&[(-1, 1)], &[(-1, 1)]]), 2).unwrap();
        assert!(v.equal);
        assert_eq!(v.oracle_lower, vec![1, 7]);
    }

    #[test]
    fn rhs_reduction_over_f4_takes_a_square_root() {
        let f4 = Arc::new(FqField::new(2, 2, Some(vec![1, 1, 1])).unwrap());
        let g = f4.generator().unwrap();
        let a = cv_over(&f4, &[&[(-1, 1)], &[(-3, g.index())]]);
        let tower = build_tower(&a, 1).unwrap();
        let raw = tower.add(
            &tower.from_base(1, LaurentPoly::monomial(&f4, g, -3)),
            &tower.mul(1, &tower.generator(1), &tower.t_pow(1, -1)),
        );
        let red = tower.reduce_rhs(1, &raw).unwrap();
        assert_eq!(red.steps[0], f4.mul(g, g));
        assert_eq!(f4.mul(red.steps[0], red.steps[0]), g);
        let full = build_tower(&a, 2).unwrap();
        assert_eq!(full.levels()[1].rhs, red.rhs);
    }

    #[test]
    fn single_level_breaks_equal_m0() {
        for p in [2u32, 3, 5] {
            for m in (1..12).filter(|m| m % p as i64 != 0) {
                let v = compare(&cv(p, &[&[(-m, 1), (1, 1)]]), 1).unwrap();
                assert_eq!(v.oracle_lower, vec![m]);
                assert!(v.equal);
            }
        }
    }

    #[test]
    fn restricted_sums_have_predicted_valuation() {
        let a = cv(2, &[&[(-3, 1)], &[(-1, 1)]]);
        let tower = build_tower(&a, 2).unwrap();
        for j in 1..=3 {
            let expected = -(2i64.pow(j as u32 + 1) - 2 + 1) * 3;
            assert_eq!(restricted_sum_valuation(&tower, j).unwrap(), Some(expected));
        }
    }

    #[test]
    fn base_change_keeps_breaks() {
        let a = cv(2, &[&[(-1, 1)], &[(-3, 1)]]);
        let (here, there) = compare_base_changed(&a, 2).unwrap();
        assert!(here.equal && there.equal);
        assert_eq!(here.oracle_lower, there.oracle_lower);
    }

    #[test]
    fn depth_three_example() {
        let a = cv(2, &[&[(-1, 1)], &[(-1, 1)], &[(-1, 1)]]);
        let v = compare(&a, 3).unwrap();
        assert!(v.equal, "{v:?}");
    }
}
