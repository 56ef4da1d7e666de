//! Problem files: a Witt vector over `F_q((t))` as JSON.
//!
//! ```json
//! {
//!   "p": 2,
//!   "residue_field": {"degree": 2, "modulus": [1, 1, 1]},
//!   "n": 2,
//!   "components": [
//!     [[-1, "g+1"]],
//!     [[-3, "1"], [2, "g"]]
//!   ]
//! }
//! ```
//!
//! Each component lists `[exponent, coefficient]` pairs with strictly
//! increasing exponents; coefficients are polynomials in the generator `g`.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asw::CharacterVec;
use crate::field::text::{laurent_from_pairs, laurent_to_pairs};
use crate::field::{FqField, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid problem: {0}")]
    Validation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueFieldSpec {
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub p: u64,
    pub residue_field: ResidueFieldSpec,
    pub n: usize,
    pub components: Vec<Vec<(i64, String)>>,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    serde_json::from_str(text).map_err(|e| ProblemError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Canonical text: one component per line, a trailing newline.
pub fn print_problem(f: &ProblemFile) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"p\": {},", f.p);
    let _ = write!(out, "  \"residue_field\": {{\"degree\": {}", f.residue_field.degree);
    if let Some(m) = &f.residue_field.modulus {
        let list: Vec<String> = m.iter().map(|c| c.to_string()).collect();
        let _ = write!(out, ", \"modulus\": [{}]", list.join(", "));
    }
    out.push_str("},\n");
    let _ = writeln!(out, "  \"n\": {},", f.n);
    if f.components.is_empty() {
        out.push_str("  \"components\": []\n");
    } else {
        out.push_str("  \"components\": [\n");
        for (k, comp) in f.components.iter().enumerate() {
            let pairs: Vec<String> = comp.iter().map(|(e, c)| format!("[{e}, {}]", json_str(c))).collect();
            let sep = if k + 1 < f.components.len() { "," } else { "" };
            let _ = writeln!(out, "    [{}]{sep}", pairs.join(", "));
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

fn invalid(msg: impl Into<String>) -> ProblemError {
    ProblemError::Validation(msg.into())
}

/// Builds the residue field and the vector, checking every invariant.
pub fn validate(f: &ProblemFile) -> Result<CharacterVec, ProblemError> {
    let p = u32::try_from(f.p).map_err(|_| invalid(format!("p = {} is too large", f.p)))?;
    let field = FqField::new(p, f.residue_field.degree, f.residue_field.modulus.clone())
        .map_err(|e| invalid(e.to_string()))?;
    let field = Arc::new(field);
    if f.n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if f.components.len() != f.n {
        return Err(invalid(format!(
            "n = {} but {} components given",
            f.n,
            f.components.len()
        )));
    }
    let comps = f
        .components
        .iter()
        .enumerate()
        .map(|(i, pairs)| laurent_from_pairs(&field, pairs).map_err(|e| invalid(format!("component {i}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    CharacterVec::new(field, comps).map_err(|e| invalid(e.to_string()))
}

pub fn load_problem(text: &str) -> Result<(ProblemFile, CharacterVec), ProblemError> {
    let f = parse_problem(text)?;
    let a = validate(&f)?;
    Ok((f, a))
}

/// Exact components in canonical coefficient syntax.
pub fn components_to_pairs(comps: &[LaurentPoly]) -> Vec<Vec<(i64, String)>> {
    comps.iter().map(laurent_to_pairs).collect()
}

/// The problem file describing `a`; the modulus is written out for
/// extension fields so the file does not depend on the default choice.
pub fn problem_from_vector(a: &CharacterVec) -> ProblemFile {
    let f = a.field();
    let modulus = (f.degree() > 1).then(|| f.modulus().to_vec());
    ProblemFile {
        p: a.prime(),
        residue_field: ResidueFieldSpec {
            degree: f.degree(),
            modulus,
        },
        n: a.len(),
        components: components_to_pairs(a.vector().components()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqElement;

    #[test]
    fn parses_the_basic_example() {
        let text = r#"{"p":2,"residue_field":{"degree":1},"n":2,"components":[[[-1,"1"]],[[-3,"1"]]]}"#;
        let (f, a) = load_problem(text).unwrap();
        assert_eq!(f.n, 2);
        let field = a.field().clone();
        assert_eq!(a.component(0), &LaurentPoly::t_pow(&field, -1));
        assert_eq!(a.component(1), &LaurentPoly::t_pow(&field, -3));
        assert_eq!(parse_problem(&print_problem(&f)).unwrap(), f);
    }

    #[test]
    fn extension_field_coefficients() {
        let text = r#"{"p":2,"residue_field":{"degree":2,"modulus":[1,1,1]},"n":1,"components":[[[0,"g+1"]]]}"#;
        let (_, a) = load_problem(text).unwrap();
        let f = a.field();
        let g = f.generator().unwrap();
        assert_eq!(a.component(0).constant_term(), f.add(g, FqElement::ONE));
    }

    #[test]
    fn validation_errors() {
        let bad = [
            r#"{"p":4,"residue_field":{"degree":1},"n":1,"components":[[]]}"#,
            r#"{"p":2,"residue_field":{"degree":2,"modulus":[1,0,1]},"n":1,"components":[[]]}"#,
            r#"{"p":2,"residue_field":{"degree":1},"n":2,"components":[[]]}"#,
            r#"{"p":2,"residue_field":{"degree":1},"n":1,"components":[[[1,"1"],[0,"1"]]]}"#,
            r#"{"p":2,"residue_field":{"degree":1},"n":1,"components":[[[1,"0"]]]}"#,
            r#"{"p":3,"residue_field":{"degree":1},"n":1,"components":[[[1,"g"]]]}"#,
            r#"{"p":2,"residue_field":{"degree":1},"n":0,"components":[]}"#,
        ];
        for text in bad {
            assert!(matches!(load_problem(text), Err(ProblemError::Validation(_))), "{text}");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_problem("{\n  \"p\": 2,\n  oops\n}").unwrap_err();
        match err {
            ProblemError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_problem(r#"{"p":2,"residue_field":{"degree":1},"n":1,"components":[[]],"extra":1}"#),
            Err(ProblemError::Parse { .. })
        ));
    }

    #[test]
    fn canonical_print_is_stable() {
        let text = r#"{"p":3,"residue_field":{"degree":2},"n":2,"components":[[[-2,"2g+1"],[1,"g"]],[]]}"#;
        let f = parse_problem(text).unwrap();
        let printed = print_problem(&f);
        assert_eq!(print_problem(&parse_problem(&printed).unwrap()), printed);
        assert!(printed.contains("    []\n"));
        let a = validate(&f).unwrap();
        assert_eq!(validate(&problem_from_vector(&a)).unwrap(), a);
    }
}
