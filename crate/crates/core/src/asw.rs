//! Artin-Schreier-Witt bookkeeping over `K = F_q((t))`: reduced forms,
//! reduction with certificates, and the character shift.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{wp_inverse_positive, FieldError, FqElement, FqEmbedding, FqField, LaurentPoly, LaurentRing, Valuation};
use crate::ring::Ring;
use crate::witt::{WittError, WittRing, WittVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AswError {
    #[error("component {0} carries a precision bound; reducedness is only decided for exact data")]
    PrecisionPresent(usize),
    #[error("a precision bound is required to strip non-negative components")]
    PrecisionRequired,
    #[error("element has negative valuation {0}")]
    NegativeValuation(i64),
    #[error("vector is not reduced (component {0})")]
    NotReduced(usize),
    #[error("vector must have at least one component")]
    Empty,
    #[error("components do not share one residue field")]
    MixedFields,
    #[error("shift {shift} out of range for target length {len}")]
    ShiftOutOfRange { shift: usize, len: usize },
    #[error("certificate identity failed at component {0}")]
    CertificateFailed(usize),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A Witt vector over `F_q((t))`, the data of the character it defines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVec {
    field: Arc<FqField>,
    vec: WittVec<LaurentPoly>,
}

impl CharacterVec {
    pub fn new(field: Arc<FqField>, comps: Vec<LaurentPoly>) -> Result<Self, AswError> {
        if comps.is_empty() {
            return Err(AswError::Empty);
        }
        if comps.iter().any(|c| **c.field() != *field) {
            return Err(AswError::MixedFields);
        }
        Ok(CharacterVec {
            field,
            vec: WittVec::new(comps),
        })
    }

    pub fn from_witt(field: Arc<FqField>, vec: WittVec<LaurentPoly>) -> Result<Self, AswError> {
        Self::new(field, vec.into_components())
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.characteristic() as u64
    }

    pub fn len(&self) -> usize {
        self.vec.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vector(&self) -> &WittVec<LaurentPoly> {
        &self.vec
    }

    pub fn component(&self, i: usize) -> &LaurentPoly {
        self.vec.component(i)
    }

    pub fn ring(&self) -> LaurentRing {
        LaurentRing::new(self.field.clone())
    }

    /// `m_i = -v_K(a_i)`, `None` for `a_i = 0`.
    pub fn neg_valuations(&self) -> Vec<Option<i64>> {
        self.vec.neg_valuations()
    }

    /// The same vector over a larger residue field.
    pub fn embed(&self, big: &Arc<FqField>) -> Result<Self, AswError> {
        let emb = FqEmbedding::new(&self.field, big)?;
        Ok(CharacterVec {
            field: big.clone(),
            vec: self.vec.map(|c| c.embed(big, &emb)),
        })
    }
}

fn exact_components(a: &WittVec<LaurentPoly>) -> Result<(), AswError> {
    match a.components().iter().position(|c| !c.is_exact()) {
        Some(i) => Err(AswError::PrecisionPresent(i)),
        None => Ok(()),
    }
}

fn divides(p: u64, v: i64) -> bool {
    v.rem_euclid(p as i64) == 0
}

/// Every component has `v >= 0` or valuation prime to `p`.
pub fn is_reduced(a: &CharacterVec) -> Result<bool, AswError> {
    exact_components(a.vector())?;
    Ok(first_unreduced(a.vector(), a.prime()).is_none())
}

fn first_unreduced(a: &WittVec<LaurentPoly>, p: u64) -> Option<usize> {
    a.components().iter().position(|c| match c.valuation() {
        Valuation::Finite(v) => v < 0 && divides(p, v),
        _ => false,
    })
}

/// Every component is zero or has valuation prime to `p`.
pub fn is_strongly_reduced(a: &CharacterVec) -> Result<bool, AswError> {
    exact_components(a.vector())?;
    Ok(strongly_reduced_up_to_precision(a.vector(), a.prime()))
}

/// As [`is_strongly_reduced`], reading `O(t^N)` remainders as zero.
pub fn strongly_reduced_up_to_precision(a: &WittVec<LaurentPoly>, p: u64) -> bool {
    a.components().iter().all(|c| match c.valuation() {
        Valuation::Finite(v) => !divides(p, v),
        _ => true,
    })
}

/// `a' = a (+) F(c) (-) c`, checked when built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub original: CharacterVec,
    pub reduced: CharacterVec,
    pub witness: WittVec<LaurentPoly>,
}

/// `a (+) F(c) (-) c`.
pub fn twist(w: &WittRing<LaurentRing>, a: &WittVec<LaurentPoly>, c: &WittVec<LaurentPoly>) -> Result<WittVec<LaurentPoly>, AswError> {
    Ok(w.sub(&w.add(a, &w.frobenius(c)?)?, c)?)
}

impl ReductionCertificate {
    pub fn new(original: CharacterVec, witness: WittVec<LaurentPoly>) -> Result<Self, AswError> {
        let ring = original.ring();
        let w = WittRing::new(&ring, original.prime(), original.len())?;
        let reduced = twist(&w, original.vector(), &witness)?;
        let reduced = CharacterVec::from_witt(original.field.clone(), reduced)?;
        if let Some(i) = first_unreduced(reduced.vector(), original.prime()) {
            return Err(AswError::NotReduced(i));
        }
        Ok(ReductionCertificate {
            original,
            reduced,
            witness,
        })
    }

    /// Recomputes `a (+) F(c) (-) c` and compares with the stored result.
    pub fn verify(&self) -> Result<bool, AswError> {
        let ring = self.original.ring();
        let w = WittRing::new(&ring, self.original.prime(), self.original.len())?;
        let again = twist(&w, self.original.vector(), &self.witness)?;
        Ok(&again == self.reduced.vector() && first_unreduced(&again, self.original.prime()).is_none())
    }
}

/// Componentwise reduction: while `v(a_i) = -pm < 0`, subtract
/// `F(c) (-) c` for `c = u^{1/p} t^{-m}` placed in slot `i`.
pub fn reduce(a: &CharacterVec) -> Result<ReductionCertificate, AswError> {
    exact_components(a.vector())?;
    let p = a.prime();
    let ring = a.ring();
    let w = WittRing::new(&ring, p, a.len())?;
    let mut cur = a.vector().clone();
    let mut witness = w.zero();
    for i in 0..a.len() {
        while let Valuation::Finite(v) = cur.component(i).valuation() {
            if v >= 0 || !divides(p, v) {
                break;
            }
            let lead = cur.component(i).leading_coeff()?;
            let root = LaurentPoly::monomial(&ring.field, a.field.pth_root(lead), v / p as i64);
            let step = w.single(i, root);
            cur = w.sub(&cur, &w.sub(&w.frobenius(&step)?, &step)?)?;
            witness = w.sub(&witness, &step)?;
        }
    }
    let cert = ReductionCertificate::new(a.clone(), witness)?;
    if cert.reduced.vector() != &cur {
        return Err(AswError::CertificateFailed(
            (0..a.len()).find(|&i| cert.reduced.component(i) != cur.component(i)).unwrap_or(0),
        ));
    }
    Ok(cert)
}

/// Output of [`strongly_reduce`]: data over `field`, valid modulo
/// `t^precision` in every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongReduction {
    pub field: Arc<FqField>,
    pub extended: bool,
    pub reduced: WittVec<LaurentPoly>,
    pub witness: WittVec<LaurentPoly>,
    pub precision: Option<i64>,
    pub verified: bool,
}

fn solve_wp_constant(field: &FqField, alpha: FqElement) -> Option<FqElement> {
    field
        .elements()
        .find(|&b| field.sub(field.frobenius(b), b) == alpha)
}

fn min_precision(a: &WittVec<LaurentPoly>) -> Option<i64> {
    a.components().iter().filter_map(|c| c.precision()).min()
}

fn agrees_mod(a: &LaurentPoly, b: &LaurentPoly, n: Option<i64>) -> bool {
    let diff = a.add_unchecked(&b.neg());
    match n {
        Some(n) => diff.truncate(n).is_zero(),
        None => diff.is_zero(),
    }
}

/// Removes non-negative components of a reduced vector: positive tails via
/// `wp^{-1}` on the maximal ideal, constants by solving `b^p - b = alpha`
/// in `F_q` or, when the trace obstructs, in `F_{q^p}`.
pub fn strongly_reduce(a: &CharacterVec, precision: Option<i64>) -> Result<StrongReduction, AswError> {
    exact_components(a.vector())?;
    let p = a.prime();
    if let Some(i) = first_unreduced(a.vector(), p) {
        return Err(AswError::NotReduced(i));
    }
    let mut base = a.clone();
    let mut extended = false;
    let n = a.len();
    let mut ring = base.ring();
    let mut cur = base.vector().clone();
    let mut witness = WittVec::new(vec![ring.zero(); n]);
    for i in 0..n {
        loop {
            let comp = cur.component(i).clone();
            let v = match comp.valuation() {
                Valuation::Finite(v) => v,
                _ => break,
            };
            if v < 0 && !divides(p, v) {
                break;
            }
            let c = if v < 0 {
                let lead = comp.leading_coeff()?;
                LaurentPoly::monomial(&ring.field, ring.field.pth_root(lead), v / p as i64)
            } else {
                let alpha = comp.constant_term();
                if alpha.is_zero() {
                    let bound = match (precision, comp.precision()) {
                        (None, _) => return Err(AswError::PrecisionRequired),
                        (Some(x), Some(y)) => Some(x.min(y)),
                        (x, None) => x,
                    };
                    wp_inverse_positive(&comp, bound)?
                } else {
                    if precision.is_none() && comp.terms().len() > 1 {
                        return Err(AswError::PrecisionRequired);
                    }
                    match solve_wp_constant(&ring.field, alpha) {
                        Some(b) => LaurentPoly::constant(&ring.field, b),
                        None => {
                            if extended {
                                return Err(AswError::Field(FieldError::NoRootFound));
                            }
                            let big = Arc::new(FqField::new(
                                ring.field.characteristic(),
                                ring.field.degree() * p as u32,
                                None,
                            )?);
                            let emb = FqEmbedding::new(&ring.field, &big)?;
                            cur = cur.map(|x| x.embed(&big, &emb));
                            witness = witness.map(|x| x.embed(&big, &emb));
                            base = base.embed(&big)?;
                            ring = LaurentRing::new(big);
                            extended = true;
                            continue;
                        }
                    }
                }
            };
            let w = WittRing::new(&ring, p, n)?;
            let step = w.single(i, c);
            cur = w.sub(&cur, &w.sub(&w.frobenius(&step)?, &step)?)?;
            witness = w.sub(&witness, &step)?;
        }
    }
    let w = WittRing::new(&ring, p, n)?;
    let again = twist(&w, base.vector(), &witness)?;
    let bound = min_precision(&again).or(min_precision(&cur));
    let verified = again
        .components()
        .iter()
        .zip(cur.components())
        .all(|(x, y)| agrees_mod(x, y, bound))
        && strongly_reduced_up_to_precision(&cur, p);
    Ok(StrongReduction {
        field: ring.field.clone(),
        extended,
        reduced: cur,
        witness,
        precision: bound,
        verified,
    })
}

/// Whether a unit-or-better `a0` lies in `wp(K)`: exactly when the trace
/// of its constant term vanishes.
pub fn wp_member_unit(a0: &LaurentPoly) -> Result<bool, AswError> {
    match a0.valuation() {
        Valuation::Finite(v) if v < 0 => Err(AswError::NegativeValuation(v)),
        _ => Ok(a0.field().trace(a0.constant_term()) == 0),
    }
}

/// Prepends `shift` zero components to a vector of length `len - shift`.
pub fn shift_char(c: &CharacterVec, shift: usize, len: usize) -> Result<CharacterVec, AswError> {
    if shift == 0 || shift >= len || c.len() != len - shift {
        return Err(AswError::ShiftOutOfRange { shift, len });
    }
    let mut comps = vec![LaurentPoly::zero(c.field()); shift];
    comps.extend(c.vector().components().iter().cloned());
    CharacterVec::new(c.field().clone(), comps)
}

/// `lambda_i(mu_i(x) (+) a)` for any ring carrying the Witt operations;
/// `x_prefix` supplies `x_0, .., x_{i-1}`.
pub fn subext_vector<R: Ring>(
    w: &WittRing<R>,
    a: &WittVec<R::Elem>,
    x_prefix: &[R::Elem],
    i: usize,
) -> Result<WittVec<R::Elem>, WittError> {
    let n = w.len();
    if a.len() != n {
        return Err(WittError::ShapeMismatch { expected: n, got: a.len() });
    }
    if i >= n {
        return Ok(w.zero());
    }
    if x_prefix.len() < i {
        return Err(WittError::ShapeMismatch {
            expected: i,
            got: x_prefix.len(),
        });
    }
    let ring = w.base();
    let mut mu = vec![ring.zero(); n];
    mu[..i].clone_from_slice(&x_prefix[..i]);
    let sum = w.add(&WittVec::new(mu), a)?;
    Ok(w.keep_from(&sum, i))
}
