use std::path::PathBuf;

use proptest::prelude::*;
use serde_json::Value;
use wittbreak::cli::run;
use wittbreak::problem::{parse_problem, print_problem, ProblemFile, ResidueFieldSpec};

fn corpus(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "corpus", name].iter().collect();
    path.to_str().unwrap().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wittbreak").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("wittbreak-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn breaks_json_fields() {
    let (code, out, _) = call(&["--format", "json", "breaks", &corpus("p2_n2_basic.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["upper"], serde_json::json!([1, 3]));
    assert_eq!(v["lower"], serde_json::json!([1, 5]));
    assert_eq!(v["ram_index"], 4);
    assert_eq!(v["minus_one_break"], false);
}

#[test]
fn unramified_first_component() {
    let (code, out, _) = call(&["--format", "json", "breaks", &corpus("p2_q4_constant_unit.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["residue_degree"], 2);
    assert_eq!(v["ram_index"], 2);
    assert_eq!(v["upper"], serde_json::json!([3]));
    assert_eq!(v["minus_one_break"], true);
}

#[test]
fn reduce_then_breaks() {
    let file = corpus("p2_n2_unreduced.json");
    assert_eq!(call(&["breaks", &file]).0, 3);
    let (code, out, _) = call(&["--format", "json", "reduce", &file, "--precision", "6"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["strong"]["verified"], true);
    assert_eq!(call(&["breaks", "--reduce", &file]).0, 0);
}

#[test]
fn oracle_compare_lines() {
    let (code, out, _) = call(&["--format", "json", "oracle-compare", "--random", "4", "--p", "2", "--q", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[..4].iter().all(|l| l["equal"] == true));
    assert_eq!(lines[4]["equal"], 4);
    let (code, out, _) = call(&["oracle-compare", &corpus("p3_n3.json"), "--depth", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("1 equal"));
}

#[test]
fn hh_tables() {
    let (code, out, _) = call(&["--format", "json", "hh", "--p", "2", "--upper", "1,3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lower"], serde_json::json!([1, 5]));
    assert_eq!(v["phi"]["slopes"], serde_json::json!([1, "1/2", "1/4"]));
    assert_eq!(v["psi"]["breakpoints"], serde_json::json!([[1, 1], [3, 5]]));
    let (code, out, _) = call(&["hh", "--p", "3", "--lower", "1,13"]);
    assert_eq!(code, 0);
    assert!(out.contains("upper breaks (1, 5)"));
    assert_eq!(call(&["hh", "--p", "2"]).0, 1);
    assert_eq!(call(&["hh", "--p", "2", "--lower", "1,4"]).0, 3);
}

#[test]
fn witt_polys_output() {
    let (code, out, _) = call(&["witt-polys", "--p", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("S_1 = -X_0*Y_0 + Y_1 + X_1"));
    let (code, out, _) = call(&["--format", "json", "witt-polys", "--p", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sum"].as_array().unwrap().len(), 2);
    assert_eq!(call(&["witt-polys", "--p", "4", "--n", "2"]).0, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["--help"]).0, 0);
    assert_eq!(call(&["--version"]).0, 0);
    assert_eq!(call(&[]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["breaks", "/nonexistent/problem.json"]).0, 1);
    assert_eq!(call(&["breaks", &temp_file("trunc.json", "{\"p\": 2,")]).0, 1);
    let bad_p = temp_file("bad_p.json", r#"{"p":6,"residue_field":{"degree":1},"n":1,"components":[[]]}"#);
    let (code, _, err) = call(&["breaks", &bad_p]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"));
    let trivial = temp_file("trivial.json", r#"{"p":2,"residue_field":{"degree":1},"n":1,"components":[[[1,"1"]]]}"#);
    assert_eq!(call(&["breaks", &trivial]).0, 3);
    assert_eq!(call(&["oracle-compare", &trivial]).0, 3);
    assert_eq!(call(&["oracle-compare"]).0, 1);
    assert_eq!(call(&["oracle-compare", "--random", "2", "--p", "2", "--q", "8", "--max-m", "2"]).0, 0);
    assert_eq!(call(&["oracle-compare", "--random", "2", "--p", "3", "--q", "6"]).0, 2);
}

#[test]
fn verify_passes() {
    let (code, out, _) = call(&["verify", "--samples", "3"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("all suites pass\n"));
}

fn arb_problem() -> impl Strategy<Value = ProblemFile> {
    let comp = prop::collection::vec((-20i64..5, prop::sample::select(vec!["1", "2", "g", "2g+1", "g+2"])), 0..4)
        .prop_map(|mut pairs| {
            pairs.sort_by_key(|(e, _)| *e);
            pairs.dedup_by_key(|(e, _)| *e);
            pairs.into_iter().map(|(e, c)| (e, c.to_string())).collect::<Vec<_>>()
        });
    prop::collection::vec(comp, 1..4).prop_map(|components| ProblemFile {
        p: 3,
        residue_field: ResidueFieldSpec {
            degree: 2,
            modulus: Some(vec![2, 2, 1]),
        },
        n: components.len(),
        components,
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(f in arb_problem()) {
        let text = print_problem(&f);
        prop_assert_eq!(parse_problem(&text).unwrap(), f);
        let compact = serde_json::to_string(&parse_problem(&text).unwrap()).unwrap();
        prop_assert_eq!(print_problem(&parse_problem(&compact).unwrap()), text);
    }
}
