//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All checks are exact; the only pinned tolerance is the 60 s
//! budget for polynomial generation.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wittbreak::asw::{is_reduced, reduce, shift_char, CharacterVec};
use wittbreak::breaks::{full_profile, hasse_herbrand, lower_from_upper, upper_from_lower, BreakProfile};
use wittbreak::field::{FqElement, FqField, LaurentPoly, LaurentRing};
use wittbreak::oracle::{build_tower, compare_batch, restricted_sum_valuation, Verdict};
use wittbreak::problem::{parse_problem, print_problem};
use wittbreak::sample::{self, VectorShape};
use wittbreak::verify::check_restricted_sum;
use wittbreak::witt::{check_structural_identities, WittRing};
use wittbreak::wittpoly::gen_witt_polys;

const SEED: u64 = 20240611;
const GENERATION_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn field(p: u32, e: u32) -> Arc<FqField> {
    Arc::new(FqField::new(p, e, None).expect("valid field"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn generation() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (p, nmax) in [(2u64, 4usize), (3, 3), (5, 2), (7, 2)] {
        for n in 1..=nmax {
            let set = gen_witt_polys(p, n).map_err(|e| format!("p={p} n={n}: {e}"))?;
            set.check_symbolic().map_err(|e| format!("p={p} n={n}: {e}"))?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < GENERATION_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{count} sets, phantom identities exact, {:.1}s", elapsed.as_secs_f64()))
}

fn shift_and_times_p() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let shape = VectorShape::default();
    let mut vectors = 0;
    for p in [2u32, 3] {
        let f = field(p, 1);
        let ring = LaurentRing::new(f.clone());
        for n in 1..=4usize {
            let w = WittRing::new(&ring, p as u64, n).map_err(|e| e.to_string())?;
            w.polys().check_shift_identity().map_err(|e| format!("p={p} n={n}: {e}"))?;
            for _ in 0..100 {
                let a = sample::random_witt(&mut rng, &f, n, &shape);
                let mut fold = w.zero();
                for _ in 0..p {
                    fold = w.add(&fold, &a).map_err(|e| e.to_string())?;
                }
                let tp = w.times_p(&a).map_err(|e| e.to_string())?;
                ensure(tp == fold, || format!("p={p} n={n}: times_p({a}) = {tp}, fold {fold}"))?;
                vectors += 1;
            }
        }
    }
    Ok(format!("shift identity n<=4, times_p on {vectors} vectors"))
}

fn restricted_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut towers = 0;
    for p in [2u64, 3] {
        for j in 1..=3 {
            check_restricted_sum(p, j)?;
        }
        let f = field(p as u32, 1);
        for _ in 0..10 {
            let m0 = sample::random_prime_to_p(&mut rng, p, 9);
            let mut v = sample::random_strongly_reduced(&mut rng, &f, 2, 9, 1);
            let mut comps = v.components().to_vec();
            comps[0] = LaurentPoly::from_terms(&f, [(-m0, sample::random_unit(&mut rng, &f))]);
            v = wittbreak::witt::WittVec::new(comps);
            let a = CharacterVec::from_witt(f.clone(), v).map_err(|e| e.to_string())?;
            let tower = build_tower(&a, 2).map_err(|e| e.to_string())?;
            for j in 1..=3u32 {
                let got = restricted_sum_valuation(&tower, j as usize).map_err(|e| e.to_string())?;
                let want = -((p.pow(j + 1) - p + 1) as i64) * m0;
                ensure(got == Some(want), || {
                    format!("p={p} j={j} m0={m0}: v(f_j(x_0, a_0)) = {got:?}, expected {want}")
                })?;
            }
            towers += 1;
        }
    }
    Ok(format!("symbolic claims j<=3, valuations in {towers} depth-2 towers"))
}

fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut checks = 0;
    for p in [2u32, 3] {
        let ring = LaurentRing::new(field(p, 1));
        for n in 2..=4 {
            let report = check_structural_identities(&ring, n, 100, &mut rng).map_err(|e| format!("p={p} n={n}: {e}"))?;
            checks += report.checks;
        }
    }
    Ok(format!("{checks} exact identity checks"))
}

fn reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let shape = VectorShape {
        min_exp: -12,
        max_exp: 3,
        max_terms: 3,
        zero_percent: 10,
    };
    let mut total = 0;
    for p in [2u32, 3] {
        for e in [1u32, 2] {
            let f = field(p, e);
            for n in 1..=3 {
                for _ in 0..100 {
                    let a = CharacterVec::from_witt(f.clone(), sample::random_witt(&mut rng, &f, n, &shape))
                        .map_err(|e| e.to_string())?;
                    let cert = reduce(&a).map_err(|e| format!("{}: {e}", a.vector()))?;
                    let ok = is_reduced(&cert.reduced).map_err(|e| e.to_string())?
                        && cert.verify().map_err(|e| e.to_string())?;
                    ensure(ok, || format!("certificate failed for {}", a.vector()))?;
                    total += 1;
                }
            }
        }
    }
    Ok(format!("{total} certificates re-verified"))
}

fn central_cases() -> Vec<(String, Vec<CharacterVec>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut groups = Vec::new();
    for p in [2u32, 3] {
        for e in [1u32, 2] {
            let f = field(p, e);
            let cases = (0..50)
                .map(|_| CharacterVec::from_witt(f.clone(), sample::random_strongly_reduced(&mut rng, &f, 2, 9, 2)).unwrap())
                .collect();
            groups.push((format!("p={p} q={}", f.order()), cases, 2));
        }
    }
    for p in [2u32, 3, 5] {
        let f = field(p, 1);
        let cases = (0..20)
            .map(|_| CharacterVec::from_witt(f.clone(), sample::random_strongly_reduced(&mut rng, &f, 1, 9, 2)).unwrap())
            .collect();
        groups.push((format!("p={p} n=1"), cases, 1));
    }
    groups
}

fn central(verdicts: &mut Vec<Verdict>) -> Outcome {
    let mut total = 0;
    for (label, cases, depth) in central_cases() {
        for (a, res) in cases.iter().zip(compare_batch(&cases, depth)) {
            let v = res.map_err(|e| format!("{label} {}: {e}", a.vector()))?;
            ensure(v.equal, || {
                format!(
                    "{label} {}: formula {:?}, oracle {:?}",
                    a.vector(),
                    v.profile.lower,
                    v.oracle_lower
                )
            })?;
            verdicts.push(v);
            total += 1;
        }
    }
    Ok(format!("{total}/{total} formula breaks equal oracle breaks"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-50i64..2000)), BigInt::from(rng.gen_range(1i64..30)))
}

fn herbrand(verdicts: &[Verdict]) -> Outcome {
    ensure(!verdicts.is_empty(), || "no profiles from the central check".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    for v in verdicts {
        let prof = &v.profile;
        let (phi, psi) = hasse_herbrand(prof);
        for (b, u) in prof.lower.iter().zip(&prof.upper) {
            let img = phi.eval(&BigRational::from_integer(b.clone()));
            ensure(img == BigRational::from_integer(u.clone()), || format!("phi({b}) = {img}, expected {u}"))?;
        }
        let mut points: Vec<BigRational> = phi.breakpoints().iter().map(|(x, _)| x.clone()).collect();
        points.extend((0..10).map(|_| random_rational(&mut rng)));
        for x in points {
            let back = psi.eval(&phi.eval(&x));
            ensure(back == x, || format!("psi(phi({x})) = {back}"))?;
        }
        let lower = lower_from_upper(prof.p, &prof.upper).map_err(|e| e.to_string())?;
        let upper = upper_from_lower(prof.p, &prof.lower).map_err(|e| e.to_string())?;
        ensure(lower == prof.lower && upper == prof.upper, || format!("round trip failed for {:?}", prof.upper))?;
    }
    Ok(format!("{} profiles coherent", verdicts.len()))
}

fn unramified_first() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut count = 0;
    for e in [1u32, 2] {
        let f = field(2, e);
        let units: Vec<FqElement> = f.elements().filter(|&x| f.trace(x) != 0).collect();
        for _ in 0..20 {
            let u = units[rng.gen_range(0..units.len())];
            let m = 2 * rng.gen_range(0i64..10) + 1;
            let a = CharacterVec::new(f.clone(), vec![LaurentPoly::constant(&f, u), LaurentPoly::t_pow(&f, -m)])
                .map_err(|e| e.to_string())?;
            let prof = full_profile(&a).map_err(|e| format!("u={u:?} m={m}: {e}"))?;
            let two = BigInt::from(2);
            ensure(
                prof.residue_degree == two
                    && prof.ram_index == two
                    && prof.upper == vec![BigInt::from(m)]
                    && prof.minus_one_break,
                || format!("u={u:?} m={m}: {prof:?}"),
            )?;
            let single = CharacterVec::new(f.clone(), vec![LaurentPoly::t_pow(&f, -m)]).map_err(|e| e.to_string())?;
            let shifted = shift_char(&single, 1, 2).map_err(|e| e.to_string())?;
            let expect: BreakProfile = full_profile(&single).map_err(|e| e.to_string())?;
            let got = full_profile(&shifted).map_err(|e| e.to_string())?;
            ensure(got == expect, || format!("m={m}: shifted {got:?} vs {expect:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} vectors"))
}

fn corpus_files() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_wittbreak"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn cli_round_trip() -> Outcome {
    let files = corpus_files();
    ensure(files.len() == 20, || format!("corpus has {} files", files.len()))?;
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let parsed = parse_problem(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(print_problem(&parsed) == text, || format!("{} is not in canonical form", path.display()))?;
        let arg = path.to_str().expect("utf-8 path");
        let (code, out) = run_cli(&["fmt", arg])?;
        ensure(code == 0 && out == text.as_bytes(), || format!("fmt {} changed the file", path.display()))?;
        let first = run_cli(&["--format", "json", "breaks", "--reduce", arg])?;
        let second = run_cli(&["--format", "json", "breaks", "--reduce", arg])?;
        ensure(first.0 == 0 && first == second, || format!("breaks {} not reproducible", path.display()))?;
    }
    let seeded = ["--format", "json", "oracle-compare", "--random", "6", "--p", "3", "--q", "9", "--seed", "11"];
    let first = run_cli(&seeded)?;
    ensure(first.0 == 0 && first == run_cli(&seeded)?, || "oracle-compare reruns differ".into())?;
    let verify = ["verify", "--seed", "5", "--samples", "5"];
    let first = run_cli(&verify)?;
    ensure(first.0 == 0 && first == run_cli(&verify)?, || "verify reruns differ".into())?;
    Ok(format!("{} files round-trip, seeded reruns byte-identical", files.len()))
}

fn report(index: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS {index} {name}: {detail} [{secs:.1}s]");
            true
        }
        Err(detail) => {
            println!("FAIL {index} {name}: {detail} [{secs:.1}s]");
            false
        }
    }
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; listing
    // requests get an empty answer.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut verdicts = Vec::new();
    let results = [
        report(1, "witt polynomial generation", generation),
        report(2, "shift identity and times_p", shift_and_times_p),
        report(3, "restricted sums", restricted_sums),
        report(4, "mu/lambda and free-variable identities", structural),
        report(5, "reduction certificates", reduction),
        report(6, "formula breaks against tower breaks", || central(&mut verdicts)),
        report(7, "Hasse-Herbrand coherence", || herbrand(&verdicts)),
        report(8, "unramified first component", unramified_first),
        report(9, "CLI round trip", cli_round_trip),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria pass", results.len());
}
