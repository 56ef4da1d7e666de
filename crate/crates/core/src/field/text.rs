//! Textual element syntax: `F_q` elements are polynomial expressions in the
//! generator `g` (`2g^2+g+1`, `g+1`, `2`), Laurent polynomials are lists of
//! `[exponent, coefficient]` pairs.

use std::sync::Arc;

use super::{FieldError, FqElement, FqField, LaurentPoly};

/// Canonical form: descending powers of `g`, coefficient omitted when 1.
pub fn print_fq(field: &FqField, a: FqElement) -> String {
    let coeffs = field.coeffs(a);
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "g".to_string(),
            (1, c) => format!("{c}g"),
            (k, 1) => format!("g^{k}"),
            (k, c) => format!("{c}g^{k}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> FieldError {
    FieldError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parses a sum of terms `[c][*]g[^k]` or `c`, with optional `+`/`-` signs.
/// Integer coefficients are reduced mod `p` and powers of `g` mod the modulus.
pub fn parse_fq(field: &FqField, input: &str) -> Result<FqElement, FieldError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_error(input, "empty coefficient"));
    }
    let bytes = s.as_bytes();
    let mut acc = FqElement::ZERO;
    let mut pos = 0;
    while pos < bytes.len() {
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
        } else if pos > 0 {
            return Err(parse_error(input, format!("expected sign at offset {pos}")));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: Option<i64> = if pos > start {
            Some(
                s[start..pos]
                    .parse()
                    .map_err(|_| parse_error(input, "coefficient out of range"))?,
            )
        } else {
            None
        };
        if pos < bytes.len() && bytes[pos] == b'*' {
            if coeff.is_none() {
                return Err(parse_error(input, "'*' without a coefficient"));
            }
            pos += 1;
            if pos >= bytes.len() || bytes[pos] != b'g' {
                return Err(parse_error(input, "expected 'g' after '*'"));
            }
        }
        let mut power = 0u64;
        if pos < bytes.len() && bytes[pos] == b'g' {
            if field.generator().is_none() {
                return Err(parse_error(input, "prime field has no generator g"));
            }
            pos += 1;
            power = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let exp_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                power = s[exp_start..pos]
                    .parse()
                    .map_err(|_| parse_error(input, "bad exponent after '^'"))?;
            }
        } else if coeff.is_none() {
            return Err(parse_error(input, format!("unexpected character at offset {pos}")));
        }
        let base = match field.generator() {
            Some(g) => field.pow(g, power),
            None => FqElement::ONE,
        };
        let mut term = field.mul(field.from_i64(coeff.unwrap_or(1)), base);
        if negative {
            term = field.neg(term);
        }
        acc = field.add(acc, term);
    }
    Ok(acc)
}

pub fn laurent_to_pairs(a: &LaurentPoly) -> Vec<(i64, String)> {
    a.terms()
        .iter()
        .map(|&(e, c)| (e, print_fq(a.field(), c)))
        .collect()
}

/// Exponents must be strictly increasing and coefficients nonzero.
pub fn laurent_from_pairs(field: &Arc<FqField>, pairs: &[(i64, String)]) -> Result<LaurentPoly, FieldError> {
    let mut terms = Vec::with_capacity(pairs.len());
    let mut last: Option<i64> = None;
    for (e, text) in pairs {
        if last.is_some_and(|l| *e <= l) {
            return Err(parse_error(text, format!("exponent {e} is not strictly increasing")));
        }
        last = Some(*e);
        let c = parse_fq(field, text)?;
        if c.is_zero() {
            return Err(parse_error(text, format!("zero coefficient at exponent {e}")));
        }
        terms.push((*e, c));
    }
    Ok(LaurentPoly::from_terms(field, terms))
}
