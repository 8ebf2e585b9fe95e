use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use taulab::algebra::find_isomorphism;
use taulab::cli::file::*;
use taulab::cli::{verify, Status, VerifyOptions};
use taulab::error::Error;
use taulab::instances::*;
use taulab::tau::TauTilting;
use taulab::tors::Lattice;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../examples").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_taulab")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const MINIMAL: &str = r#"
field = { p = 2, n = 1 }
[quiver]
vertices = ["1", "2"]
arrows = [{ name = "a", source = "1", target = "2" }]
"#;

#[test]
fn minimal_quiver_file() {
    let spec = AlgebraSpecFile::parse(MINIMAL).unwrap();
    let q = spec.quiver.as_ref().unwrap();
    assert_eq!((q.vertices.len(), q.arrows.len()), (2, 1));
    let alg = spec.algebra().unwrap();
    assert_eq!(alg.dim(), 3);
    assert!(find_isomorphism(&alg, &a2(&f2()), 1 << 10).is_some());
}

#[test]
fn undeclared_vertex_is_named() {
    let src = MINIMAL.replace("target = \"2\"", "target = \"9\"");
    match AlgebraSpecFile::parse(&src) {
        Err(Error::Parse { line, msg, .. }) => {
            assert!(msg.contains("undeclared vertex 9"), "{msg}");
            assert_eq!(line, 5);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_files_are_rejected() {
    let two_blocks = format!("{MINIMAL}\n[species]\nvertices = []\n");
    assert!(matches!(AlgebraSpecFile::parse(&two_blocks), Err(Error::Parse { .. })));
    assert!(matches!(AlgebraSpecFile::parse("field = { p = 4, n = 1 }\n[quiver]\nvertices = []\n"), Err(Error::Parse { .. })));
    let reducible = MINIMAL.replace("n = 1 }", "n = 2, modulus = [1, 0, 1] }");
    match AlgebraSpecFile::parse(&reducible) {
        Err(Error::Parse { msg, .. }) => assert!(msg.contains("reducible")),
        other => panic!("{other:?}"),
    }
    let canonical = MINIMAL.replace("n = 1 }", "n = 2, modulus = [1, 1, 1] }");
    assert!(AlgebraSpecFile::parse(&canonical).is_ok());
    let bad_rel = MINIMAL.replace("}]\n", "}]\nrelations = [\"a*a\"]\n");
    assert!(AlgebraSpecFile::parse(&bad_rel).is_err());
    let bad_toml = "field = { p = 2, n = 1 \n";
    assert!(matches!(AlgebraSpecFile::parse(bad_toml), Err(Error::Parse { line: 1, .. })));
}

#[test]
fn relations_parse_to_path_combinations() {
    let f = f4();
    let q = taulab::algebra::Quiver::new(&["1", "2"], &[("a", 0, 1), ("b", 1, 0), ("c", 0, 1)]);
    assert_eq!(parse_relation(&f, &q, "a*b + 2*c*b").unwrap(), vec![(1, vec![0, 1]), (2, vec![2, 1])]);
    assert_eq!(parse_relation(&f, &q, " b * a ").unwrap(), vec![(1, vec![1, 0])]);
    assert!(parse_relation(&f, &q, "a*c").is_err());
    assert!(parse_relation(&f, &q, "5*a*b").is_err());
    assert!(parse_relation(&f, &q, "a*d").is_err());
    let f3 = taulab::gf::Field::new(3, 1).unwrap();
    assert_eq!(parse_relation(&f3, &q, "a*b - c*b").unwrap(), vec![(1, vec![0, 1]), (2, vec![2, 1])]);
}

#[test]
fn example_files_build_the_desk_instances() {
    let tw = AlgebraSpecFile::read(&example("lambda_tw.alg")).unwrap();
    assert_eq!(tw.algebra().unwrap().table(), lambda_tw().table());
    assert_eq!(tw.truncation_level, Some(4));
    let sp = AlgebraSpecFile::read(&example("lambda_tw_species.alg")).unwrap();
    let block = sp.species.as_ref().unwrap();
    assert_eq!(block.arrows[0].twist, 1);
    assert_eq!(sp.algebra().unwrap().table(), lambda_tw_species().table());
    let b2 = AlgebraSpecFile::read(&example("b2_species.alg")).unwrap();
    assert_eq!(b2.algebra().unwrap().table(), b2_species().table());
    for (file, alg) in [("a2_f2.alg", a2(&f2())), ("dual_numbers_f2.alg", dual_numbers(&f2())), ("preproj_a2_f4.alg", preproj_a2(&f4())), ("a3_rad2_f2.alg", a3_rad2(&f2()))] {
        let a = AlgebraSpecFile::read(&example(file)).unwrap().algebra().unwrap();
        assert!(find_isomorphism(&a, &alg, 1 << 16).is_some(), "{file}");
    }
}

#[test]
fn every_example_round_trips() {
    for e in std::fs::read_dir(example("")).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "alg") {
            let spec = AlgebraSpecFile::read(&p).unwrap();
            assert_eq!(AlgebraSpecFile::parse(&spec.to_toml()).unwrap(), spec, "{}", p.display());
        }
    }
}

#[test]
fn verify_is_deterministic_and_passes() {
    let opts = VerifyOptions { extend: Some(2), ..Default::default() };
    let a = verify(&a2(&f2()), "A2", &opts);
    let b = verify(&a2(&f2()), "A2", &opts);
    assert!(a.ok(), "{}", a.to_text());
    assert_eq!(a.exit_code(), 0);
    let strip = |r: &taulab::cli::VerifyReport| serde_json::to_string(&r.entries).unwrap();
    assert_eq!(strip(&a), strip(&b));
    let order: Vec<&str> = a.entries.iter().map(|e| e.suite).collect::<Vec<_>>();
    let mut suites = order.clone();
    suites.dedup();
    assert_eq!(suites, ["rep-finiteness", "scalarext", "tau", "tors", "stability", "wcat", "hall", "groups"]);

    let no_ext = verify(&dual_numbers(&f2()), "k[x]/x^2", &VerifyOptions::default());
    assert_eq!(no_ext.exit_code(), 3);
    assert!(no_ext.entries.iter().any(|e| e.suite == "scalarext" && e.status == Status::Skipped));
    assert!(no_ext.failures().is_empty());
}

#[test]
fn named_checks_select_suites() {
    let src = r#"
field = { p = 2, n = 1 }
extension_degree = 2
checks = ["tau", "stability"]
[quiver]
vertices = ["1", "2"]
arrows = [{ name = "a", source = "1", target = "2" }]
"#;
    let spec = AlgebraSpecFile::parse(src).unwrap();
    let opts = VerifyOptions { extend: spec.extension_degree, suites: spec.checks.clone(), ..Default::default() };
    let r = verify(&spec.algebra().unwrap(), "A2", &opts);
    let suites: std::collections::BTreeSet<&str> = r.entries.iter().map(|e| e.suite).collect();
    assert_eq!(suites, ["rep-finiteness", "stability", "tau"].into_iter().collect());
    assert_eq!(r.exit_code(), 0);
    // the extension checks of the stability suite still run
    assert!(r.entries.iter().filter(|e| e.suite == "stability").count() > 3);

    let bad = src.replace("\"stability\"", "\"walls\"");
    match AlgebraSpecFile::parse(&bad) {
        Err(Error::Parse { line, msg, .. }) => assert_eq!((line, msg.as_str()), (4, "unknown check suite walls")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn lattice_dot_shapes() {
    let t = TauTilting::of_algebra(&dual_numbers(&f2())).unwrap();
    let dot = Lattice::new(&t).unwrap().to_dot(&t);
    assert_eq!((dot.matches("label").count(), dot.matches("->").count()), (3, 1));
    let t = TauTilting::of_algebra(&preproj_a2(&f4())).unwrap();
    let dot = Lattice::new(&t).unwrap().to_dot(&t);
    assert_eq!(dot.matches("->").count(), 6);
    assert_eq!(dot.matches("label").count() - 6, 6);
}

#[test]
fn binary_exit_codes() {
    let a2f = example("a2_f2.alg");
    let a2f = a2f.to_str().unwrap();
    let (code, out) = run(&["verify", a2f, "--extend", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("checks passed"));
    let (code, out) = run(&["verify", "--algebra", example("lambda_tw.alg").to_str().unwrap(), "--extend", "2", "--truncate", "4", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["truncation_level"], 4);
    assert_eq!(run(&["ind", "/nonexistent.alg"]).0, 2);
    assert_eq!(run(&["verify", example("rs_three_loops.alg").to_str().unwrap()]).0, 2);
    let (code, out) = run(&["complexify", example("rs_conjugate_loop.alg").to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["arrows"].as_array().unwrap().len(), 2);
    let (code, out) = run(&["stt", a2f, "--dot"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("->").count(), 5);
    let (code, out) = run(&["stability", a2f, "--theta", "1,-1", "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("P1"));
    assert_eq!(run(&["groups", a2f, "--int-heart", "--gap-format"]).0, 0);
    assert_eq!(run(&["hall", a2f, "--verify-factorization", "--verify-inverse", "--heart-check"]).0, 0);
    assert_eq!(run(&["wcat", a2f, "--extend", "2", "--check-faithful", "--dot"]).0, 0);
}

#[test]
fn infinite_type_is_a_loud_skip() {
    let src = r#"
field = { p = 2, n = 1 }
[quiver]
vertices = ["1", "2"]
arrows = [
    { name = "a", source = "1", target = "2" },
    { name = "b", source = "1", target = "2" },
    { name = "c", source = "1", target = "2" },
]
"#;
    let alg = AlgebraSpecFile::parse(src).unwrap().algebra().unwrap();
    let r = verify(&alg, "3-Kronecker", &VerifyOptions::default());
    assert_eq!(r.exit_code(), 3);
    assert!(r.entries.iter().filter(|e| e.suite != "rep-finiteness").all(|e| e.status == Status::Skipped));
}

fn arb_quiver() -> impl Strategy<Value = AlgebraSpecFile> {
    (1usize..4, prop::collection::vec((0usize..4, 0usize..4), 0..4), any::<bool>(), prop::option::of(1u32..4)).prop_map(
        |(nv, arrows, named, ext)| {
            let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let arrows = arrows
                .iter()
                .enumerate()
                .map(|(k, &(s, t))| ArrowSpec { name: format!("x{k}"), source: vertices[s % nv].clone(), target: vertices[t % nv].clone() })
                .collect();
            AlgebraSpecFile {
                name: named.then(|| "generated".to_string()),
                field: FieldSpec { p: 2, n: 1, modulus: None },
                extension_degree: ext,
                truncation_level: None,
                checks: if named { vec!["tau".into()] } else { vec![] },
                quiver: Some(QuiverBlock { vertices, arrows, relations: vec![] }),
                structure_constants: None,
                species: None,
                r_species: None,
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_serialize_parse_is_identity(spec in arb_quiver()) {
        let text = spec.to_toml();
        let back = AlgebraSpecFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.to_toml(), text);
    }
}
