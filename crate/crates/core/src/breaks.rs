//! Ramification breaks of the extension cut out by a reduced Witt vector,
//! in both numberings, and the Hasse-Herbrand functions linking them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::asw::{is_reduced, wp_member_unit, AswError, CharacterVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BreaksError {
    #[error("m_0 must be positive for a totally ramified profile")]
    NotTotallyRamifiedProfile,
    #[error("breaks must be strictly increasing positive integers")]
    NotIncreasing,
    #[error("lower break differences are not divisible by the index jumps")]
    NonIntegral,
    #[error("vector is not reduced")]
    NotReduced,
    #[error("degenerate character: {0}")]
    DegenerateCharacter(String),
    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error(transparent)]
    Asw(#[from] AswError),
}

fn pow_p(p: u64, k: usize) -> BigInt {
    BigInt::from(p).pow(k as u32)
}

/// `u_i = max{p^{i-1} m_0, p^{i-2} m_1, .., m_{i-1}}` for `i = 1..n`,
/// skipping absent and non-positive `m_j`.
pub fn upper_breaks(p: u64, m: &[Option<i64>]) -> Result<Vec<BigInt>, BreaksError> {
    match m.first() {
        Some(Some(m0)) if *m0 > 0 => {}
        _ => return Err(BreaksError::NotTotallyRamifiedProfile),
    }
    Ok((1..=m.len())
        .map(|i| {
            m[..i]
                .iter()
                .enumerate()
                .filter_map(|(j, mj)| mj.filter(|&x| x > 0).map(|x| pow_p(p, i - 1 - j) * x))
                .max()
                .expect("m_0 is a positive candidate")
        })
        .collect())
}

fn check_increasing(xs: &[BigInt]) -> Result<(), BreaksError> {
    if xs.first().is_some_and(|x| !x.is_positive()) || xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(BreaksError::NotIncreasing);
    }
    Ok(())
}

/// `b_1 = u_1`, `b_{i+1} - b_i = p^i (u_{i+1} - u_i)`.
pub fn lower_from_upper(p: u64, upper: &[BigInt]) -> Result<Vec<BigInt>, BreaksError> {
    check_increasing(upper)?;
    let mut lower: Vec<BigInt> = Vec::with_capacity(upper.len());
    for (i, u) in upper.iter().enumerate() {
        let b = match i {
            0 => u.clone(),
            _ => &lower[i - 1] + pow_p(p, i) * (u - &upper[i - 1]),
        };
        lower.push(b);
    }
    Ok(lower)
}

/// Inverse of [`lower_from_upper`]; fails rather than rounding.
pub fn upper_from_lower(p: u64, lower: &[BigInt]) -> Result<Vec<BigInt>, BreaksError> {
    check_increasing(lower)?;
    let mut upper: Vec<BigInt> = Vec::with_capacity(lower.len());
    for (i, b) in lower.iter().enumerate() {
        let u = match i {
            0 => b.clone(),
            _ => {
                let (q, r) = (b - &lower[i - 1]).div_rem(&pow_p(p, i));
                if !r.is_zero() {
                    return Err(BreaksError::NonIntegral);
                }
                &upper[i - 1] + q
            }
        };
        upper.push(u);
    }
    Ok(upper)
}

/// Ramification data of a cyclic extension of degree `p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakProfile {
    pub p: u64,
    pub n: usize,
    /// `-v_K(a_i)`, `None` when `a_i = 0`.
    pub m: Vec<Option<i64>>,
    pub upper: Vec<BigInt>,
    pub lower: Vec<BigInt>,
    /// Residue degree is `p^r`, ramification index `p^{n-r}`.
    pub r: usize,
    pub residue_degree: BigInt,
    pub ram_index: BigInt,
    pub minus_one_break: bool,
}

impl BreakProfile {
    /// Totally ramified profile from valuations with `m_0 > 0`.
    pub fn totally_ramified(p: u64, m: &[Option<i64>]) -> Result<Self, BreaksError> {
        Self::with_residue_degree(p, m, 0)
    }

    /// Positive breaks from `m_r, .., m_{n-1}`, residue degree `p^r`.
    pub fn with_residue_degree(p: u64, m: &[Option<i64>], r: usize) -> Result<Self, BreaksError> {
        let n = m.len();
        let upper = if r < n { upper_breaks(p, &m[r..])? } else { Vec::new() };
        let lower = lower_from_upper(p, &upper)?;
        Ok(BreakProfile {
            p,
            n,
            m: m.to_vec(),
            upper,
            lower,
            r,
            residue_degree: pow_p(p, r),
            ram_index: pow_p(p, n - r),
            minus_one_break: r >= 1,
        })
    }

    /// Number of positive breaks.
    pub fn s(&self) -> usize {
        self.upper.len()
    }
}

/// Classifies a reduced vector: leading zero components are dropped, then
/// `m_0 > 0` gives a totally ramified profile and `m_0 = 0` with
/// `a_0` outside `wp(K)` the mixed one with residue degree `p^r`.
pub fn full_profile(a: &CharacterVec) -> Result<BreakProfile, BreaksError> {
    if !is_reduced(a)? {
        return Err(BreaksError::NotReduced);
    }
    let p = a.prime();
    let m_all = a.neg_valuations();
    let start = m_all
        .iter()
        .position(|m| m.is_some())
        .ok_or_else(|| BreaksError::DegenerateCharacter("all components are zero".into()))?;
    let m = &m_all[start..];
    let m0 = m[0].expect("first kept component is nonzero");
    if m0 > 0 {
        return BreakProfile::totally_ramified(p, m);
    }
    if wp_member_unit(a.component(start))? {
        return Err(BreaksError::DegenerateCharacter(
            "a_0 lies in wp(K), so the character has order below p^n".into(),
        ));
    }
    let r = m.iter().position(|mi| mi.is_some_and(|x| x > 0)).unwrap_or(m.len());
    BreakProfile::with_residue_degree(p, m, r)
}

/// A continuous increasing piecewise-linear function on `[0, oo)`, fixing 0,
/// extended by the identity to negative arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    /// Breakpoints after the origin, increasing in `x`.
    points: Vec<(BigRational, BigRational)>,
    /// Slope on each segment: `slopes[k]` runs up to `points[k]`, the last
    /// entry continues past the final breakpoint.
    slopes: Vec<BigRational>,
}

impl PLFunction {
    pub fn breakpoints(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    pub fn slopes(&self) -> &[BigRational] {
        &self.slopes
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        if !x.is_positive() {
            return x.clone();
        }
        let mut prev = (BigRational::zero(), BigRational::zero());
        for (k, pt) in self.points.iter().enumerate() {
            if *x <= pt.0 {
                return &prev.1 + &self.slopes[k] * (x - &prev.0);
            }
            prev = pt.clone();
        }
        &prev.1 + self.slopes.last().expect("at least one slope") * (x - &prev.0)
    }

    /// The inverse function, swapping coordinates and inverting slopes.
    pub fn inverse(&self) -> PLFunction {
        PLFunction {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            slopes: self.slopes.iter().map(|s| s.recip()).collect(),
        }
    }
}

/// `phi(x) = int_0^x dt / |G_0 : G_t|` from the lower breaks, and its inverse.
pub fn hasse_herbrand(profile: &BreakProfile) -> (PLFunction, PLFunction) {
    hasse_herbrand_from_lower(profile.p, &profile.lower)
}

/// As [`hasse_herbrand`] for a totally ramified cyclic extension with the
/// given lower breaks.
pub fn hasse_herbrand_from_lower(p: u64, lower: &[BigInt]) -> (PLFunction, PLFunction) {
    let p = BigRational::from_integer(BigInt::from(p));
    let mut points = Vec::new();
    let mut slopes = Vec::new();
    let mut slope = BigRational::one();
    let mut at = (BigRational::zero(), BigRational::zero());
    for b in lower {
        let x = BigRational::from_integer(b.clone());
        let y = &at.1 + &slope * (&x - &at.0);
        slopes.push(slope.clone());
        at = (x, y);
        points.push(at.clone());
        slope /= &p;
    }
    slopes.push(slope);
    let phi = PLFunction { points, slopes };
    let psi = phi.inverse();
    (phi, psi)
}

/// Breaks of the degree-`p^i` subextension, plus the lower breaks of the
/// top piece over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubextensionProfile {
    pub sub: BreakProfile,
    pub top_lower: Vec<BigInt>,
}

pub fn subextension_profile(profile: &BreakProfile, i: usize) -> Result<SubextensionProfile, BreaksError> {
    let s = profile.s();
    if profile.r != 0 {
        return Err(BreaksError::NotTotallyRamifiedProfile);
    }
    if i == 0 || i > s {
        return Err(BreaksError::OutOfRange { index: i, max: s });
    }
    let upper = profile.upper[..i].to_vec();
    let lower = lower_from_upper(profile.p, &upper)?;
    let sub = BreakProfile {
        p: profile.p,
        n: i,
        m: profile.m[..i].to_vec(),
        upper,
        lower,
        r: 0,
        residue_degree: BigInt::one(),
        ram_index: pow_p(profile.p, i),
        minus_one_break: false,
    };
    Ok(SubextensionProfile {
        sub,
        top_lower: profile.lower[i..].to_vec(),
    })
}
