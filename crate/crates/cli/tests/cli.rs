use std::process::Command;
use std::sync::Arc;

use clap::Parser;
use proptest::prelude::*;
use serde_json::{json, Value};
use stratakit_cli::dsl::{self, Presentation, Structure};
use stratakit_cli::{execute, Args, FIXTURES};
use stratakit_core::fixtures;
use stratakit_core::linalg::Field;

fn report(argv: &[&str]) -> Value {
    let args = Args::try_parse_from(std::iter::once("stratakit").chain(argv.iter().copied())).unwrap();
    execute(&args).unwrap().to_value()
}

fn bin(argv: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_stratakit")).args(argv).output().unwrap()
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("stratakit-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn char2_resolution_of_b() {
    let r = report(&["example", "ei-char2", "resolve", "B"]);
    let a = &r["analyses"]["resolve B"];
    assert_eq!(a["dims"], json!([2, 0]));
    assert_eq!(a["pattern"], json!("P_y(2,1), P_x(0,2), P_x(0,2), ..."));
    assert_eq!(a["status"]["summary"], json!("CertifiedInfinite(1,2)"));
}

#[test]
fn five_vertex_stratifications() {
    let r = report(&["example", "five-vertex", "stratify"]);
    let all = r["analyses"]["stratify"]["stratifications"].as_array().unwrap().clone();
    assert!(all.iter().any(|s| s["objects"] == json!(["1+2+3+4", "5"])));
    assert!(all.iter().any(|s| s["length"] == json!(5)));
}

#[test]
fn five_vertex_fixture_file() {
    let doc = dsl::parse(FIXTURES[2].1).unwrap();
    let Structure::Quiver { vertices, arrows, relations } = &doc.structure else { panic!("quiver expected") };
    assert_eq!((vertices.len(), arrows.len(), relations.len()), (5, 8, 10));
    assert!(relations.iter().any(|r| dsl::print_terms(&r.terms) == "rho*rho*rho*rho*rho"));
}

#[test]
fn fixture_files_match_library_fixtures() {
    let built = |name: &str, f: Field| dsl::parse(FIXTURES.iter().find(|x| x.0 == name).unwrap().1).unwrap().build(Some(f)).unwrap();
    let f2 = Field::prime(2).unwrap();
    let c = built("ei-char2", f2);
    assert!(c.algebra.same_tables(&fixtures::ei_char2().algebra(f2).unwrap()));
    let r = built("ei-remark", Field::prime(3).unwrap());
    assert!(r.algebra.same_tables(&fixtures::ei_remark().algebra(Field::prime(3).unwrap()).unwrap()));
    let v = built("five-vertex", Field::RATIONALS);
    assert!(v.algebra.same_tables(fixtures::five_vertex(Field::RATIONALS).unwrap().build().unwrap().algebra()));
    let a3 = built("acyclic-a3", Field::RATIONALS);
    assert!(a3.algebra.same_tables(fixtures::acyclic_a3(Field::RATIONALS).unwrap().build().unwrap().algebra()));
    assert!(matches!(v.presentation, Presentation::Path(_)));
}

#[test]
fn loop_with_square_zero_is_minimal() {
    let path = temp_file("loop.sk", "field Q\nquiver\n  vertex v\n  arrow x : v -> v\nrelations\n  x*x\n");
    let r = report(&["info", &path]);
    let i = &r["analyses"]["info"];
    assert_eq!(i["dim"], json!(2));
    assert_eq!(i["gabriel_quiver"]["arrows"], json!(["v -> v"]));
    assert_eq!(i["minimal"], json!(true));
}

#[test]
fn semisimple_gldim_is_zero() {
    let path = temp_file("two-points.sk", "field F2\nquiver\n  vertex 1\n  vertex 2\n");
    let r = report(&["gldim", &path, "--format", "json"]);
    assert_eq!(r["analyses"]["gldim"]["gldim"], json!({ "status": "finite", "value": 0 }));
}

#[test]
fn remark_depends_on_the_field() {
    for (field, standard) in [("F2", false), ("F3", true)] {
        let r = report(&["example", "ei-remark", "--field", field]);
        let a = &r["analyses"];
        assert_eq!(a["verify standard"]["standard"], json!(standard), "{field}");
        assert_eq!(a["verify stratifying y"]["passed"], json!(true), "{field}");
    }
}

#[test]
fn examples_run_without_unknowns() {
    for (name, _) in FIXTURES {
        let text = serde_json::to_string(&report(&["example", name])).unwrap();
        assert!(!text.contains("\"unknown\""), "{name}");
        assert!(!text.contains("Cutoff("), "{name}");
    }
}

#[test]
fn findim_bound_with_oracle() {
    let r = report(&["example", "ei-char2", "findim-bound"]);
    assert_eq!(r["analyses"]["findim-bound"]["bound"], json!({ "status": "known", "value": 1 }));
    let r = report(&["example", "ei-char2", "findim-bound", "--oracle", "x=3"]);
    assert_eq!(r["analyses"]["findim-bound"]["bound"]["value"], json!(4));
}

#[test]
fn obstruction_and_recollement() {
    let r = report(&["example", "five-vertex", "verify", "obstruction", "beta", "alpha"]);
    assert_eq!(r["analyses"]["verify obstruction beta alpha"]["present"], json!(true));
    let r = report(&["example", "five-vertex", "verify", "recollement", "1,2,3,4"]);
    assert_eq!(r["analyses"]["verify recollement 1,2,3,4"]["obstructed"], json!(true));
}

#[test]
fn run_executes_analyze_lines() {
    let text = format!("{}analyze gldim\nanalyze resolve simple:1\n", FIXTURES[3].1);
    let r = report(&["run", &temp_file("a3.sk", &text)]);
    assert_eq!(r["analyses"]["gldim"]["gldim"]["value"], json!(2));
    assert_eq!(r["analyses"]["resolve simple:1"]["status"]["proj_dim"], json!(2));
}

#[test]
fn output_is_deterministic() {
    for format in ["text", "json"] {
        let argv = ["example", "five-vertex", "resolve", "simple:2", "--format", format];
        let (a, b) = (bin(&argv), bin(&argv));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn exit_codes() {
    let bad = temp_file("bad.sk", "field F2\neicategory\n  object x\n  object y\n  identity 1_x at x\n  identity 1_y at y\n  mor a : x -> y\n  compose a a = a\n");
    let out = bin(&["info", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("8:11: a∘a is not composable"));
    assert_eq!(bin(&["frobnicate", &bad]).status.code(), Some(1));
    assert_eq!(bin(&["example", "nope"]).status.code(), Some(1));
    assert_eq!(bin(&["--cutoff"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["example", "acyclic-a3", "verify", "obstruction", "a", "a"]).status.code(), Some(1));
}

fn label(i: usize) -> String {
    format!("v{i}")
}

/// Document text from a random quiver, relations with fractional
/// coefficients and a module with arbitrary matrices.
fn document_text(n: usize, edges: &[(usize, usize)], coeffs: &[(i64, i64)], f: &str) -> String {
    let mut t = format!("field {f}\nquiver\n");
    for i in 0..n {
        t.push_str(&format!("  vertex {}\n", label(i)));
    }
    for (k, (s, d)) in edges.iter().enumerate() {
        t.push_str(&format!("  arrow a{k} : {} -> {}\n", label(*s), label(*d)));
    }
    let mut rels = Vec::new();
    for (k, (s, d)) in edges.iter().enumerate() {
        for (l, (s2, d2)) in edges.iter().enumerate() {
            if d == s2 && rels.len() < coeffs.len() {
                let (p, q) = coeffs[rels.len()];
                let _ = (s, d2);
                rels.push(format!("{p}/{q}*a{l}*a{k}"));
            }
        }
    }
    if !rels.is_empty() {
        t.push_str("relations\n");
        for r in rels {
            t.push_str(&format!("  {r}\n"));
        }
    }
    t.push_str("module M\n");
    for i in 0..n {
        t.push_str(&format!("  dim {} = 1\n", label(i)));
    }
    for (k, (p, q)) in coeffs.iter().enumerate().take(edges.len()) {
        t.push_str(&format!("  act a{k} = [[{p}/{q}]]\n"));
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(
        n in 1usize..5,
        edges in prop::collection::vec((0usize..4, 0usize..4), 0..6),
        coeffs in prop::collection::vec((-5i64..6, 1i64..4), 6..8),
        rational in any::<bool>(),
    ) {
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(s, t)| (s % n, t % n)).collect();
        let coeffs: Vec<(i64, i64)> = coeffs.into_iter().map(|(p, q)| (if p == 0 { 1 } else { p }, q)).collect();
        let text = document_text(n, &edges, &coeffs, if rational { "Q" } else { "F5" });
        let doc = dsl::parse(&text).unwrap();
        let printed = doc.to_string();
        let again = dsl::parse(&printed).unwrap();
        prop_assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn module_relations_are_enforced_on_build() {
    // b*a = 0 but the module acts by identities
    let text = format!("{}module M\n  dim 1 = 1\n  dim 2 = 1\n  dim 3 = 1\n  act a = [[1]]\n  act b = [[1]]\n", FIXTURES[3].1);
    let doc = dsl::parse(&text).unwrap();
    let err = doc.build(None).unwrap_err();
    assert!(err[0].message.contains("does not satisfy the relations"));
    let ok = text.replace("act b = [[1]]", "act b = [[0]]");
    let m = &dsl::parse(&ok).unwrap().build(None).unwrap().modules[0].1;
    assert_eq!(m.dim(), 3);
    let _ = Arc::clone(m.algebra());
}
