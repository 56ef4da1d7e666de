//! Finite-support Laurent polynomials over `F_q`, standing in for elements of
//! `K = F_q((t))`.
//!
//! A value may carry a precision bound `N`: it then denotes a coset modulo
//! `t^N` and every stored exponent is below `N`. Exact values have no bound.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::text::print_fq;
use super::{FieldError, FqElement, FqEmbedding, FqField};
use crate::ring::Ring;

/// Valuation of a Laurent polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    /// Exact zero.
    Infinity,
    /// Zero modulo `t^N`: the true valuation is only known to be `>= N`.
    BoundedBelow(i64),
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lower bound usable in precision bookkeeping; `None` means `+inf`.
    fn lower_bound(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) | Valuation::BoundedBelow(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

#[derive(Clone)]
pub struct LaurentPoly {
    field: Arc<FqField>,
    /// Ascending exponents, no zero coefficients.
    terms: Vec<(i64, FqElement)>,
    precision: Option<i64>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
            && self.terms == other.terms
            && self.precision == other.precision
    }
}

impl Eq for LaurentPoly {}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentPoly {
    pub fn zero(field: &Arc<FqField>) -> Self {
        LaurentPoly {
            field: field.clone(),
            terms: Vec::new(),
            precision: None,
        }
    }

    /// Zero modulo `t^n`.
    pub fn zero_mod(field: &Arc<FqField>, n: i64) -> Self {
        LaurentPoly {
            field: field.clone(),
            terms: Vec::new(),
            precision: Some(n),
        }
    }

    pub fn monomial(field: &Arc<FqField>, coeff: FqElement, exp: i64) -> Self {
        let terms = if coeff.is_zero() { Vec::new() } else { vec![(exp, coeff)] };
        LaurentPoly {
            field: field.clone(),
            terms,
            precision: None,
        }
    }

    pub fn constant(field: &Arc<FqField>, c: FqElement) -> Self {
        Self::monomial(field, c, 0)
    }

    /// `t^exp`.
    pub fn t_pow(field: &Arc<FqField>, exp: i64) -> Self {
        Self::monomial(field, FqElement::ONE, exp)
    }

    /// Sums duplicate exponents and drops zeros.
    pub fn from_terms<I>(field: &Arc<FqField>, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, FqElement)>,
    {
        let mut raw: Vec<(i64, FqElement)> = terms.into_iter().collect();
        raw.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i64, FqElement)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = field.add(*lc, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly {
            field: field.clone(),
            terms: out,
            precision: None,
        }
    }

    /// Reduces modulo `t^n`, keeping the tighter of the old and new bounds.
    pub fn truncate(&self, n: i64) -> Self {
        let bound = min_opt(self.precision, Some(n));
        let mut out = self.clone();
        out.set_precision(bound);
        out
    }

    fn set_precision(&mut self, bound: Option<i64>) {
        if let Some(n) = bound {
            self.terms.retain(|&(e, _)| e < n);
        }
        self.precision = bound;
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// True for exact zero and for zero modulo the precision bound.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, FqElement)] {
        &self.terms
    }

    pub fn coefficient(&self, exp: i64) -> FqElement {
        self.terms
            .binary_search_by_key(&exp, |&(e, _)| e)
            .map(|i| self.terms[i].1)
            .unwrap_or(FqElement::ZERO)
    }

    pub fn constant_term(&self) -> FqElement {
        self.coefficient(0)
    }

    pub fn valuation(&self) -> Valuation {
        match (self.terms.first(), self.precision) {
            (Some(&(e, _)), _) => Valuation::Finite(e),
            (None, Some(n)) => Valuation::BoundedBelow(n),
            (None, None) => Valuation::Infinity,
        }
    }

    /// Largest stored exponent.
    pub fn degree(&self) -> Option<i64> {
        self.terms.last().map(|&(e, _)| e)
    }

    pub fn leading_coeff(&self) -> Result<FqElement, FieldError> {
        self.terms.first().map(|&(_, c)| c).ok_or(FieldError::ZeroOperand)
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(e, c)| (e, f.neg(c))).collect(),
            precision: self.precision,
        }
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                terms.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                terms.push(b[j]);
                j += 1;
            } else {
                let c = f.add(a[i].1, b[j].1);
                if !c.is_zero() {
                    terms.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        let mut out = LaurentPoly {
            field: f.clone(),
            terms,
            precision: None,
        };
        out.set_precision(min_opt(self.precision, other.precision));
        out
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let va = self.valuation();
        let vb = other.valuation();
        if va == Valuation::Infinity || vb == Valuation::Infinity {
            return LaurentPoly::zero(f);
        }
        // v(a) + N_b and v(b) + N_a; an exact operand contributes no bound
        let bound = min_opt(
            other.precision.map(|nb| va.lower_bound().unwrap() + nb),
            self.precision.map(|na| vb.lower_bound().unwrap() + na),
        );
        if self.terms.is_empty() || other.terms.is_empty() {
            return LaurentPoly::zero_mod(f, bound.expect("inexact zero operand carries a bound"));
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let mut hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        if let Some(n) = bound {
            hi = hi.min(n - 1);
        }
        let mut terms = Vec::new();
        if hi >= lo {
            let span = (hi - lo + 1) as usize;
            if f.degree() == 1 {
                let p = f.characteristic() as u64;
                let mut acc = vec![0u64; span];
                for &(ea, ca) in &self.terms {
                    for &(eb, cb) in &other.terms {
                        let e = ea + eb;
                        if e <= hi {
                            let slot = &mut acc[(e - lo) as usize];
                            *slot = (*slot + ca.0 as u64 * cb.0 as u64) % p;
                        }
                    }
                }
                terms.extend(
                    acc.into_iter()
                        .enumerate()
                        .filter(|&(_, c)| c != 0)
                        .map(|(k, c)| (lo + k as i64, FqElement(c as u32))),
                );
            } else {
                let mut acc = vec![FqElement::ZERO; span];
                for &(ea, ca) in &self.terms {
                    for &(eb, cb) in &other.terms {
                        let e = ea + eb;
                        if e <= hi {
                            let slot = &mut acc[(e - lo) as usize];
                            *slot = f.add(*slot, f.mul(ca, cb));
                        }
                    }
                }
                terms.extend(
                    acc.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (lo + k as i64, c)),
                );
            }
        }
        LaurentPoly {
            field: f.clone(),
            terms,
            precision: bound,
        }
    }

    pub fn scale(&self, c: FqElement) -> Self {
        let f = &self.field;
        if c.is_zero() {
            return match self.precision {
                Some(_) => LaurentPoly {
                    field: f.clone(),
                    terms: Vec::new(),
                    // 0 * (a + O(t^N)) is exact zero
                    precision: None,
                },
                None => LaurentPoly::zero(f),
            };
        }
        LaurentPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(e, x)| (e, f.mul(c, x))).collect(),
            precision: self.precision,
        }
    }

    /// `a^p`, termwise; a bound `N` becomes `pN` in characteristic `p`.
    pub fn frobenius(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as i64;
        LaurentPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(e, c)| (e * p, f.frobenius(c))).collect(),
            precision: self.precision.map(|n| n * p),
        }
    }

    /// Termwise `p`-th root; every exponent must be divisible by `p`.
    pub fn pth_root(&self) -> Result<Self, FieldError> {
        let f = &self.field;
        let p = f.characteristic() as i64;
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| {
                if e % p == 0 {
                    Ok((e / p, f.pth_root(c)))
                } else {
                    Err(FieldError::NotAPthPower(e))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly {
            field: f.clone(),
            terms,
            precision: self.precision.map(|n| (n + p - 1).div_euclid(p)),
        })
    }

    /// Moves every coefficient into a larger field through `embedding`.
    pub fn embed(&self, big: &Arc<FqField>, embedding: &FqEmbedding) -> Self {
        LaurentPoly {
            field: big.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (e, embedding.apply(&self.field, big, c)))
                .collect(),
            precision: self.precision,
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| {
                let coeff = print_fq(&self.field, c);
                let coeff = if coeff.contains('+') { format!("({coeff})") } else { coeff };
                match (coeff.as_str(), e) {
                    (c, 0) => c.to_string(),
                    ("1", 1) => "t".to_string(),
                    ("1", e) => format!("t^{e}"),
                    (c, 1) => format!("{c}*t"),
                    (c, e) => format!("{c}*t^{e}"),
                }
            })
            .collect();
        if let Some(n) = self.precision {
            parts.push(format!("O(t^{n})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `c` with `c^p - c = a (mod t^N)` for `v(a) >= 1`, as the truncated series
/// `c = -(a + a^p + a^{p^2} + ..)`.
pub fn wp_inverse_positive(a: &LaurentPoly, precision: Option<i64>) -> Result<LaurentPoly, FieldError> {
    let n = precision.ok_or(FieldError::PrecisionRequired)?;
    match a.valuation() {
        Valuation::Finite(v) if v < 1 => {
            return Err(FieldError::NonPositiveValuation(v.to_string()));
        }
        _ => {}
    }
    let n = min_opt(Some(n), a.precision()).unwrap();
    let mut sum = LaurentPoly::zero_mod(a.field(), n);
    let mut power = a.truncate(n);
    while !power.is_zero() {
        sum = sum.add_unchecked(&power);
        power = power.frobenius().truncate(n);
    }
    Ok(sum.neg())
}

/// `F_q((t))` (finite supports) as a coefficient ring.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    pub field: Arc<FqField>,
}

impl LaurentRing {
    pub fn new(field: Arc<FqField>) -> Self {
        LaurentRing { field }
    }
}

impl Ring for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(&self.field)
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(&self.field, FqElement::ONE)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add_unchecked(b)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul_unchecked(b)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.neg()
    }
    fn integer(&self, n: &BigInt) -> LaurentPoly {
        LaurentPoly::constant(&self.field, self.field.from_bigint(n))
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero() && a.is_exact()
    }
    fn characteristic(&self) -> u64 {
        self.field.characteristic() as u64
    }
    fn frobenius(&self, a: &LaurentPoly) -> LaurentPoly {
        a.frobenius()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FqField> {
        Arc::new(FqField::prime(2).unwrap())
    }

    fn lp(field: &Arc<FqField>, terms: &[(i64, u32)]) -> LaurentPoly {
        LaurentPoly::from_terms(field, terms.iter().map(|&(e, c)| (e, FqElement(c))))
    }

    #[test]
    fn arithmetic_examples() {
        let f = f2();
        let a = lp(&f, &[(-1, 1), (0, 1)]);
        let b = lp(&f, &[(-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), lp(&f, &[(-2, 1), (-1, 1)]));
        assert!(a.add(&a).unwrap().is_zero());
        let trunc = lp(&f, &[(-3, 1)]).truncate(2);
        let sum = trunc.add(&lp(&f, &[(5, 1)])).unwrap();
        assert_eq!(sum, trunc);
        assert_eq!(sum.precision(), Some(2));
    }

    #[test]
    fn field_mismatch() {
        let f3 = Arc::new(FqField::prime(3).unwrap());
        let a = lp(&f2(), &[(0, 1)]);
        let b = lp(&f3, &[(0, 1)]);
        assert_eq!(a.add(&b), Err(FieldError::FieldMismatch));
    }

    #[test]
    fn valuations() {
        let f = f2();
        assert_eq!(lp(&f, &[(-3, 1), (2, 1)]).valuation(), Valuation::Finite(-3));
        assert_eq!(LaurentPoly::zero(&f).valuation(), Valuation::Infinity);
        assert_eq!(LaurentPoly::zero_mod(&f, 5).valuation(), Valuation::BoundedBelow(5));
    }

    #[test]
    fn leading_coefficients() {
        let f3 = Arc::new(FqField::prime(3).unwrap());
        assert_eq!(lp(&f3, &[(-1, 2), (1, 1)]).leading_coeff(), Ok(FqElement(2)));
        assert_eq!(lp(&f3, &[(5, 1)]).leading_coeff(), Ok(FqElement(1)));
        let f4 = Arc::new(FqField::new(2, 2, Some(vec![1, 1, 1])).unwrap());
        let g = f4.generator().unwrap();
        let a = LaurentPoly::from_terms(&f4, [(-2, g), (-1, FqElement::ONE)]);
        assert_eq!(a.leading_coeff(), Ok(g));
        assert_eq!(LaurentPoly::zero(&f3).leading_coeff(), Err(FieldError::ZeroOperand));
    }

    #[test]
    fn pth_roots() {
        let f = f2();
        assert_eq!(lp(&f, &[(-4, 1)]).pth_root().unwrap(), lp(&f, &[(-2, 1)]));
        assert_eq!(lp(&f, &[(-1, 1)]).pth_root(), Err(FieldError::NotAPthPower(-1)));
        let f4 = Arc::new(FqField::new(2, 2, Some(vec![1, 1, 1])).unwrap());
        let g = f4.generator().unwrap();
        let root = LaurentPoly::monomial(&f4, g, -2).pth_root().unwrap();
        assert_eq!(root, LaurentPoly::monomial(&f4, f4.mul(g, g), -1));
    }

    #[test]
    fn precision_propagates_through_products() {
        let f = f2();
        // (t^-1 + O(t^3)) * t^-2 is known mod t^1
        let a = lp(&f, &[(-1, 1)]).truncate(3);
        let b = lp(&f, &[(-2, 1)]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.precision(), Some(1));
        assert_eq!(prod.valuation(), Valuation::Finite(-3));
        // (O(t^4)) * (t^-1 + O(t^2)) = O(t^3)
        let z = LaurentPoly::zero_mod(&f, 4);
        let c = lp(&f, &[(-1, 1)]).truncate(2);
        assert_eq!(z.mul(&c).unwrap().valuation(), Valuation::BoundedBelow(3));
        assert_eq!(a.frobenius().precision(), Some(6));
    }

    #[test]
    fn wp_inverse_examples() {
        let f = f2();
        let a = lp(&f, &[(1, 1)]);
        let c = wp_inverse_positive(&a, Some(5)).unwrap();
        assert_eq!(c, lp(&f, &[(1, 1), (2, 1), (4, 1)]).truncate(5));
        let check = c.frobenius().sub(&c).unwrap();
        assert_eq!(check, a.truncate(5));
        assert!(wp_inverse_positive(&LaurentPoly::zero(&f), Some(5)).unwrap().is_zero());
        assert!(matches!(
            wp_inverse_positive(&lp(&f, &[(-1, 1)]), Some(5)),
            Err(FieldError::NonPositiveValuation(_))
        ));
        assert_eq!(wp_inverse_positive(&a, None), Err(FieldError::PrecisionRequired));
    }

    #[test]
    fn wp_inverse_over_f9() {
        let f9 = Arc::new(FqField::new(3, 2, None).unwrap());
        let g = f9.generator().unwrap();
        let a = LaurentPoly::from_terms(&f9, [(1, g), (2, FqElement::ONE), (4, f9.add(g, g))]);
        let c = wp_inverse_positive(&a, Some(20)).unwrap();
        assert_eq!(c.frobenius().sub(&c).unwrap(), a.truncate(20));
    }
}
