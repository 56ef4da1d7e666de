//! Command-line front end. Exit codes: 0 success, 1 usage or parse error,
//! 2 invalid problem, 3 mathematical precondition, 4 internal invariant
//! violation, 5 oracle mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::asw::{reduce, strongly_reduce, AswError, CharacterVec};
use crate::breaks::{full_profile, hasse_herbrand, hasse_herbrand_from_lower, lower_from_upper, upper_from_lower, BreakProfile, BreaksError, PLFunction};
use crate::field::{FieldError, FqField, LaurentPoly};
use crate::oracle::{compare_batch, OracleError, Verdict, MAX_DEPTH};
use crate::problem::{components_to_pairs, load_problem, print_problem, problem_from_vector, ProblemError};
use crate::sample;
use crate::verify::run_suites;
use crate::witt::WittError;
use crate::wittpoly::{witt_polys, PolyError, TermRecord};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "wittbreak", version, about = "Witt vectors over F_q((t)) and ramification breaks of their extensions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Upper and lower breaks, residue degree and ramification index.
    Breaks {
        file: PathBuf,
        /// Reduce the vector first instead of rejecting unreduced input.
        #[arg(long)]
        reduce: bool,
    },
    /// Reduced representative with its witness; with --precision also a
    /// strongly reduced one, valid modulo t^precision.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        precision: Option<i64>,
    },
    /// Compare formula breaks with breaks read off an explicit tower.
    OracleCompare {
        /// A problem file; omit when using --random.
        file: Option<PathBuf>,
        /// Number of random strongly reduced vectors.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        /// Residue field size, a power of p (default p).
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 9)]
        max_m: i64,
        /// Tower depth (default: vector length).
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the randomized identity suites.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Hasse-Herbrand breakpoint tables, from a problem file or a break list.
    Hh {
        file: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        upper: Vec<BigInt>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lower: Vec<BigInt>,
    },
    /// Print the Witt sum, product and negation polynomials.
    WittPolys {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
    /// Print a problem file in canonical form.
    Fmt { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitClass {
    Parse = 1,
    Validation = 2,
    Precondition = 3,
    Internal = 4,
    Mismatch = 5,
}

#[derive(Debug)]
pub struct CliError {
    pub class: ExitClass,
    pub message: String,
}

impl CliError {
    fn new(class: ExitClass, message: impl Into<String>) -> Self {
        CliError {
            class,
            message: message.into(),
        }
    }
}

fn field_class(e: &FieldError) -> ExitClass {
    match e {
        FieldError::NotPrime(_) | FieldError::BadModulus(_) | FieldError::Reducible(_) | FieldError::Parse { .. } => {
            ExitClass::Validation
        }
        FieldError::FieldMismatch => ExitClass::Internal,
        _ => ExitClass::Precondition,
    }
}

fn poly_class(e: &PolyError) -> ExitClass {
    match e {
        PolyError::NotPrime(_) | PolyError::ZeroLength => ExitClass::Validation,
        _ => ExitClass::Internal,
    }
}

fn witt_class(e: &WittError) -> ExitClass {
    match e {
        WittError::CutOutOfRange { .. } => ExitClass::Precondition,
        WittError::Poly(p) => poly_class(p),
        _ => ExitClass::Internal,
    }
}

fn asw_class(e: &AswError) -> ExitClass {
    match e {
        AswError::CertificateFailed(_) | AswError::MixedFields => ExitClass::Internal,
        AswError::Witt(w) => witt_class(w),
        AswError::Field(f) => field_class(f),
        _ => ExitClass::Precondition,
    }
}

fn breaks_class(e: &BreaksError) -> ExitClass {
    match e {
        BreaksError::Asw(a) => asw_class(a),
        _ => ExitClass::Precondition,
    }
}

fn oracle_class(e: &OracleError) -> ExitClass {
    match e {
        OracleError::UnsupportedDepth(_) | OracleError::NotReduced | OracleError::NotTotallyRamified { .. } => {
            ExitClass::Precondition
        }
        OracleError::Witt(w) => witt_class(w),
        OracleError::Poly(p) => poly_class(p),
        OracleError::Asw(a) => asw_class(a),
        OracleError::Breaks(b) => breaks_class(b),
        OracleError::Field(f) => field_class(f),
        _ => ExitClass::Internal,
    }
}

macro_rules! classified {
    ($ty:ty, $f:ident) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::new($f(&e), e.to_string())
            }
        }
    };
}

classified!(FieldError, field_class);
classified!(PolyError, poly_class);
classified!(WittError, witt_class);
classified!(AswError, asw_class);
classified!(BreaksError, breaks_class);
classified!(OracleError, oracle_class);

impl From<ProblemError> for CliError {
    fn from(e: ProblemError) -> Self {
        let class = match e {
            ProblemError::Parse { .. } => ExitClass::Parse,
            ProblemError::Validation(_) => ExitClass::Validation,
        };
        CliError::new(class, e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitClass::Parse as i32 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.class as i32
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::new(ExitClass::Internal, format!("cannot write output: {e}")))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("output values serialize");
    text.push('\n');
    emit(out, &text)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(ExitClass::Parse, format!("cannot read {}: {e}", path.display())))
}

fn read_vector(path: &Path) -> Result<CharacterVec, CliError> {
    Ok(load_problem(&read_file(path)?)?.1)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Breaks { file, reduce: pre } => cmd_breaks(file, *pre, fmt, out),
        Command::Reduce { file, precision } => cmd_reduce(file, *precision, fmt, out),
        Command::OracleCompare {
            file,
            random,
            p,
            q,
            n,
            max_m,
            depth,
            seed,
        } => {
            let cases = match (file, random) {
                (Some(path), None) => vec![read_vector(path)?],
                (None, Some(count)) => random_cases(*count, *p, *q, *n, *max_m, *seed)?,
                _ => {
                    return Err(CliError::new(ExitClass::Parse, "give either a problem file or --random COUNT"));
                }
            };
            let depth = depth.unwrap_or_else(|| cases.first().map_or(1, |a| a.len().min(MAX_DEPTH)));
            cmd_oracle_compare(&cases, depth, fmt, out)
        }
        Command::Verify { seed, samples } => cmd_verify(*seed, *samples, fmt, out),
        Command::Hh { file, p, upper, lower } => cmd_hh(file.as_deref(), *p, upper, lower, fmt, out),
        Command::WittPolys { p, n } => cmd_witt_polys(*p, *n, fmt, out),
        Command::Fmt { file } => {
            let (problem, _) = load_problem(&read_file(file)?)?;
            emit(out, &print_problem(&problem))?;
            Ok(0)
        }
    }
}

fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn rational_json(x: &BigRational) -> Value {
    if x.denom().is_one() {
        big_json(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

fn list(xs: &[BigInt]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn m_list(m: &[Option<i64>]) -> String {
    m.iter()
        .map(|x| x.map_or("-".to_string(), |v| v.to_string()))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Serialize)]
struct BreaksOut {
    p: u64,
    n: usize,
    m: Vec<Option<i64>>,
    upper: Vec<Value>,
    lower: Vec<Value>,
    residue_degree: Value,
    ram_index: Value,
    minus_one_break: bool,
    phi_breakpoints: Vec<[Value; 2]>,
}

fn cmd_breaks(file: &Path, pre_reduce: bool, fmt: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut a = read_vector(file)?;
    if pre_reduce {
        a = reduce(&a)?.reduced;
    }
    let profile = full_profile(&a)?;
    let (phi, _) = hasse_herbrand(&profile);
    match fmt {
        Format::Json => emit_json(
            out,
            &BreaksOut {
                p: profile.p,
                n: profile.n,
                m: profile.m.clone(),
                upper: profile.upper.iter().map(big_json).collect(),
                lower: profile.lower.iter().map(big_json).collect(),
                residue_degree: big_json(&profile.residue_degree),
                ram_index: big_json(&profile.ram_index),
                minus_one_break: profile.minus_one_break,
                phi_breakpoints: phi
                    .breakpoints()
                    .iter()
                    .map(|(x, y)| [rational_json(x), rational_json(y)])
                    .collect(),
            },
        )?,
        Format::Text => emit(out, &profile_text(&profile))?,
    }
    Ok(0)
}

fn profile_text(profile: &BreakProfile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p = {}, n = {}, m = ({})", profile.p, profile.n, m_list(&profile.m));
    let _ = writeln!(s, "upper breaks: {}", list(&profile.upper));
    let _ = writeln!(s, "lower breaks: {}", list(&profile.lower));
    let _ = writeln!(
        s,
        "residue degree {}, ramification index {}",
        profile.residue_degree, profile.ram_index
    );
    if profile.minus_one_break {
        s.push_str("-1 is an upper break\n");
    }
    s
}

#[derive(Serialize)]
struct StrongOut {
    field_degree: u32,
    modulus: Vec<u32>,
    extended: bool,
    precision: Option<i64>,
    reduced: Vec<Vec<(i64, String)>>,
    witness: Vec<Vec<(i64, String)>>,
    verified: bool,
}

#[derive(Serialize)]
struct ReduceOut {
    p: u64,
    n: usize,
    reduced: Vec<Vec<(i64, String)>>,
    witness: Vec<Vec<(i64, String)>>,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    strong: Option<StrongOut>,
}

fn cmd_reduce(file: &Path, precision: Option<i64>, fmt: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = read_vector(file)?;
    let cert = reduce(&a)?;
    let verified = cert.verify()?;
    let strong = match precision {
        Some(n) => Some(strongly_reduce(&cert.reduced, Some(n))?),
        None => None,
    };
    let all_verified = verified && strong.as_ref().is_none_or(|s| s.verified);
    match fmt {
        Format::Json => emit_json(
            out,
            &ReduceOut {
                p: a.prime(),
                n: a.len(),
                reduced: components_to_pairs(cert.reduced.vector().components()),
                witness: components_to_pairs(cert.witness.components()),
                verified,
                strong: strong.as_ref().map(|s| StrongOut {
                    field_degree: s.field.degree(),
                    modulus: s.field.modulus().to_vec(),
                    extended: s.extended,
                    precision: s.precision,
                    reduced: components_to_pairs(s.reduced.components()),
                    witness: components_to_pairs(s.witness.components()),
                    verified: s.verified,
                }),
            },
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "reduced: {}", cert.reduced.vector());
            let _ = writeln!(s, "witness: {}", cert.witness);
            let _ = writeln!(s, "verified: {verified}");
            if let Some(st) = &strong {
                let _ = writeln!(s, "strongly reduced over {:?}: {}", st.field, st.reduced);
                let _ = writeln!(s, "strong witness: {}", st.witness);
                let _ = writeln!(s, "strong verified: {}", st.verified);
            }
            emit(out, &s)?;
        }
    }
    if all_verified {
        Ok(0)
    } else {
        Err(CliError::new(ExitClass::Internal, "certificate did not verify"))
    }
}

fn random_cases(
    count: usize,
    p: Option<u64>,
    q: Option<u64>,
    n: usize,
    max_m: i64,
    seed: u64,
) -> Result<Vec<CharacterVec>, CliError> {
    let p = p.ok_or_else(|| CliError::new(ExitClass::Parse, "--random needs --p"))?;
    let q = q.unwrap_or(p);
    let p32 = u32::try_from(p).map_err(|_| CliError::new(ExitClass::Validation, format!("p = {p} is too large")))?;
    let mut e = 0u32;
    let mut power = 1u64;
    while power < q && p > 1 {
        power = power.saturating_mul(p);
        e += 1;
    }
    if power != q || e == 0 {
        return Err(CliError::new(ExitClass::Validation, format!("q = {q} is not a positive power of p = {p}")));
    }
    if n == 0 {
        return Err(CliError::new(ExitClass::Validation, "n must be at least 1"));
    }
    if (1..=max_m).all(|m| m % p as i64 == 0) {
        return Err(CliError::new(ExitClass::Validation, "--max-m leaves no valuation prime to p"));
    }
    let field = Arc::new(FqField::new(p32, e, None)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = sample::random_strongly_reduced(&mut rng, &field, n, max_m, 1);
            Ok(CharacterVec::from_witt(field.clone(), v)?)
        })
        .collect()
}

#[derive(Serialize)]
struct CaseOut {
    case: usize,
    components: Vec<Vec<(i64, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<Vec<Option<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula_upper: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula_lower: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_lower: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct SummaryOut {
    cases: usize,
    equal: usize,
    mismatches: usize,
    errors: usize,
}

fn truncated_pairs(a: &CharacterVec, depth: usize) -> Vec<Vec<(i64, String)>> {
    let comps: Vec<LaurentPoly> = a.vector().components().iter().take(depth).cloned().collect();
    components_to_pairs(&comps)
}

fn cmd_oracle_compare(cases: &[CharacterVec], depth: usize, fmt: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let results = compare_batch(cases, depth);
    let mut text = String::new();
    let mut equal = 0;
    let mut mismatches = 0;
    let mut first_error: Option<CliError> = None;
    for (k, (a, res)) in cases.iter().zip(&results).enumerate() {
        let components = truncated_pairs(a, depth);
        let case = match res {
            Ok(Verdict {
                profile,
                oracle_lower,
                equal: same,
            }) => {
                if *same {
                    equal += 1;
                } else {
                    mismatches += 1;
                }
                CaseOut {
                    case: k,
                    components,
                    m: Some(profile.m.clone()),
                    formula_upper: Some(profile.upper.iter().map(big_json).collect()),
                    formula_lower: Some(profile.lower.iter().map(big_json).collect()),
                    oracle_lower: Some(oracle_lower.clone()),
                    equal: Some(*same),
                    error: None,
                }
            }
            Err(e) => {
                if first_error.is_none() {
                    first_error = Some(CliError::from(e.clone()));
                }
                CaseOut {
                    case: k,
                    components,
                    m: None,
                    formula_upper: None,
                    formula_lower: None,
                    oracle_lower: None,
                    equal: None,
                    error: Some(e.to_string()),
                }
            }
        };
        match fmt {
            Format::Json => {
                text.push_str(&serde_json::to_string(&case).expect("case serializes"));
                text.push('\n');
            }
            Format::Text => {
                let _ = match (&case.error, res) {
                    (Some(e), _) => writeln!(text, "case {k}: error: {e}"),
                    (None, Ok(v)) => writeln!(
                        text,
                        "case {k}: m = ({}) formula lower ({}) oracle lower ({}) {}",
                        m_list(&v.profile.m),
                        list(&v.profile.lower),
                        v.oracle_lower.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", "),
                        if v.equal { "equal" } else { "MISMATCH" }
                    ),
                    (None, Err(_)) => unreachable!("error cases carry a message"),
                };
            }
        }
    }
    let errors = cases.len() - equal - mismatches;
    let summary = SummaryOut {
        cases: cases.len(),
        equal,
        mismatches,
        errors,
    };
    match fmt {
        Format::Json => {
            text.push_str(&serde_json::to_string(&summary).expect("summary serializes"));
            text.push('\n');
        }
        Format::Text => {
            let _ = writeln!(
                text,
                "summary: {} cases, {equal} equal, {mismatches} mismatches, {errors} errors",
                cases.len()
            );
        }
    }
    emit(out, &text)?;
    if let Some(e) = first_error {
        return Err(e);
    }
    if mismatches > 0 {
        return Err(CliError::new(ExitClass::Mismatch, format!("{mismatches} mismatches")));
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyOut {
    seed: u64,
    samples: usize,
    suites: Vec<crate::verify::SuiteResult>,
    all_pass: bool,
}

fn cmd_verify(seed: u64, samples: usize, fmt: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let suites = run_suites(seed, samples);
    let all_pass = suites.iter().all(|s| s.pass);
    match fmt {
        Format::Json => emit_json(
            out,
            &VerifyOut {
                seed,
                samples,
                suites: suites.clone(),
                all_pass,
            },
        )?,
        Format::Text => {
            let mut s = String::new();
            for suite in &suites {
                let _ = match &suite.error {
                    None => writeln!(s, "{}: pass ({} checks)", suite.name, suite.checks),
                    Some(e) => writeln!(s, "{}: FAIL: {e}", suite.name),
                };
            }
            s.push_str(if all_pass { "all suites pass\n" } else { "some suites FAILED\n" });
            emit(out, &s)?;
        }
    }
    if all_pass {
        Ok(0)
    } else {
        Err(CliError::new(ExitClass::Internal, "identity suite failed"))
    }
}

#[derive(Serialize)]
struct PlOut {
    breakpoints: Vec<[Value; 2]>,
    slopes: Vec<Value>,
}

#[derive(Serialize)]
struct HhOut {
    p: u64,
    upper: Vec<Value>,
    lower: Vec<Value>,
    phi: PlOut,
    psi: PlOut,
}

fn pl_out(f: &PLFunction) -> PlOut {
    PlOut {
        breakpoints: f
            .breakpoints()
            .iter()
            .map(|(x, y)| [rational_json(x), rational_json(y)])
            .collect(),
        slopes: f.slopes().iter().map(rational_json).collect(),
    }
}

fn pl_text(name: &str, f: &PLFunction) -> String {
    let mut s = String::new();
    let mut start = "0".to_string();
    for (k, (x, y)) in f.breakpoints().iter().enumerate() {
        let _ = writeln!(s, "{name}: slope {} on [{start}, {x}], {name}({x}) = {y}", f.slopes()[k]);
        start = x.to_string();
    }
    let _ = writeln!(s, "{name}: slope {} on [{start}, oo)", f.slopes().last().expect("slopes"));
    s
}

fn cmd_hh(
    file: Option<&Path>,
    p: Option<u64>,
    upper: &[BigInt],
    lower: &[BigInt],
    fmt: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (p, upper, lower) = match (file, p) {
        (Some(path), None) if upper.is_empty() && lower.is_empty() => {
            let profile = full_profile(&read_vector(path)?)?;
            (profile.p, profile.upper, profile.lower)
        }
        (None, Some(p)) => {
            if !crate::arith::is_prime(p) {
                return Err(CliError::new(ExitClass::Validation, format!("{p} is not prime")));
            }
            match (upper.is_empty(), lower.is_empty()) {
                (false, true) => (p, upper.to_vec(), lower_from_upper(p, upper)?),
                (true, false) => (p, upper_from_lower(p, lower)?, lower.to_vec()),
                _ => return Err(CliError::new(ExitClass::Parse, "give exactly one of --upper or --lower")),
            }
        }
        _ => {
            return Err(CliError::new(
                ExitClass::Parse,
                "give a problem file, or --p with --upper or --lower",
            ))
        }
    };
    let (phi, psi) = hasse_herbrand_from_lower(p, &lower);
    match fmt {
        Format::Json => emit_json(
            out,
            &HhOut {
                p,
                upper: upper.iter().map(big_json).collect(),
                lower: lower.iter().map(big_json).collect(),
                phi: pl_out(&phi),
                psi: pl_out(&psi),
            },
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "p = {p}, upper breaks ({}), lower breaks ({})", list(&upper), list(&lower));
            s.push_str(&pl_text("phi", &phi));
            s.push_str(&pl_text("psi", &psi));
            emit(out, &s)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct PolysOut {
    p: u64,
    n: usize,
    sum: Vec<Vec<TermRecord>>,
    prod: Vec<Vec<TermRecord>>,
    neg: Vec<Vec<TermRecord>>,
}

fn cmd_witt_polys(p: u64, n: usize, fmt: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let set = witt_polys(p, n)?;
    match fmt {
        Format::Json => {
            let records = |family: &[crate::wittpoly::IntPolynomial]| family.iter().map(|f| f.to_term_records()).collect();
            emit_json(
                out,
                &PolysOut {
                    p,
                    n,
                    sum: records(&set.sum),
                    prod: records(&set.prod),
                    neg: records(&set.neg),
                },
            )?
        }
        Format::Text => {
            let mut s = String::new();
            for (name, family) in [("S", &set.sum), ("M", &set.prod), ("I", &set.neg)] {
                for (i, poly) in family.iter().enumerate() {
                    let _ = writeln!(s, "{name}_{i} = {poly}");
                }
            }
            emit(out, &s)?;
        }
    }
    Ok(0)
}

/// Writes the canonical problem file for `a`.
pub fn problem_text(a: &CharacterVec) -> String {
    print_problem(&problem_from_vector(a))
}
