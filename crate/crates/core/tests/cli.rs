use std::path::{Path, PathBuf};

use proptest::prelude::*;

use novikov::algebras::PreNovikovTables;
use novikov::cli::run;
use novikov::io::{canonicalize, parse_bundle, parse_report, read_bundle, serialize_bundle, Body, Bundle, Kind};
use novikov::{Identity, Scalar, StructureConstants};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn f(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn novikov(args: &[&str]) -> Out {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("novikov").chain(args.iter().copied());
    let code = run(argv, &mut stdout, &mut stderr);
    Out { code, stdout: String::from_utf8(stdout).unwrap(), stderr: String::from_utf8(stderr).unwrap() }
}

#[test]
fn check_dispatches_on_kind() {
    let cases: &[(&[&str], i32)] = &[
        (&["check", &f("ex1_algebra")], 0),
        (&["check", &f("ex1_coalgebra")], 0),
        (&["check", &f("ex1_bialgebra")], 0),
        (&["check", &f("ex1_double")], 0),
        (&["check", &f("ex2_B")], 0),
        (&["check", &f("ex2_r"), "--algebra", &f("ex2_B")], 0),
        (&["check", &f("ex2_adjoint_rep"), "--algebra", &f("ex1_algebra")], 0),
        (&["check", &f("ex2_T"), "--algebra", &f("ex1_algebra"), "--rep", &f("ex2_adjoint_rep")], 0),
        (&["check", &f("ex1_mutated_lhd")], 1),
        // missing context
        (&["check", &f("ex2_r")], 2),
        (&["check", &f("ex2_T"), "--algebra", &f("ex1_algebra")], 2),
        (&["check", "/nonexistent.json"], 2),
    ];
    for (args, code) in cases {
        let out = novikov(args);
        assert_eq!(out.code, *code, "{args:?}\n{}{}", out.stdout, out.stderr);
    }
}

#[test]
fn failures_name_identity_and_witness() {
    let out = novikov(&["check", &f("ex1_mutated_lhd")]);
    assert_eq!(out.code, 1);
    let label = Identity::PreNovikov(4).label();
    assert!(out.stdout.lines().any(|l| l.contains(&format!("FAIL {label} at (e"))), "{}", out.stdout);
    assert!(out.stdout.contains("verdict: FAIL"));
    assert!(out.stderr.contains("elapsed"));
}

#[test]
fn machine_format_round_trips() {
    for (name, pass) in [("ex1_bialgebra", true), ("ex1_mutated_lhd", false)] {
        let out = novikov(&["--format", "machine", "check", &f(name)]);
        let doc = parse_report(&out.stdout).unwrap();
        assert_eq!(doc.passed(), pass);
        assert_eq!(out.code, if pass { 0 } else { 1 });
        let again = novikov(&["check", &f(name), "--format", "machine"]);
        assert_eq!(again.stdout, out.stdout);
    }
}

#[test]
fn double_writes_the_construction() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("double.json");
    let out = novikov(&["double", &f("ex1_bialgebra"), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    let written = read_bundle(&out_path).unwrap();
    let reference = read_bundle(&fixture("ex1_double")).unwrap();
    match (&written.body, &reference.body) {
        (Body::Double(w), Body::Double(r)) => {
            assert_eq!(w.product, r.product);
            assert_eq!(w.form, r.form);
            assert!(w.compatible.is_some());
        }
        _ => panic!("not doubles"),
    }
    assert_eq!(novikov(&["check", out_path.to_str().unwrap()]).code, 0);
}

#[test]
fn double_refuses_a_non_bialgebra() {
    let mut b = read_bundle(&fixture("ex1_bialgebra")).unwrap();
    if let Body::Bialgebra(_, co) = &mut b.body {
        co.beta = -co.beta.clone();
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serialize_bundle(&b)).unwrap();
    let out = novikov(&["double", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL"));
    assert_eq!(novikov(&["double", &f("ex1_algebra")]).code, 2);
}

#[test]
fn coboundary_and_ybe() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bialg.json");
    let out = novikov(&["coboundary", &f("ex2_B"), &f("ex2_r"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(read_bundle(&path).unwrap().kind(), Kind::Bialgebra);
    assert_eq!(novikov(&["check", path.to_str().unwrap()]).code, 0);

    let out = novikov(&["ybe", &f("ex2_B"), &f("ex2_r")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("residual: 0"));
    assert!(out.stdout.contains("equivalence.residual_zero: true"));

    // e1⊗e1 is symmetric but not a solution in A
    let r = Bundle::from(Body::Tensor2(novikov::Tensor2::basis(2, 0, 0)));
    let rp = dir.path().join("r.json");
    std::fs::write(&rp, serialize_bundle(&r)).unwrap();
    let out = novikov(&["ybe", &f("ex1_algebra"), rp.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("residual: [1,1,1]=1"), "{}", out.stdout);
}

#[test]
fn oper_lifts_to_the_reference_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let (r, b) = (dir.path().join("r.json"), dir.path().join("b.json"));
    let out = novikov(&[
        "oper",
        &f("ex1_algebra"),
        &f("ex2_adjoint_rep"),
        &f("ex2_T"),
        "--lift",
        "--out",
        r.to_str().unwrap(),
        "--out-algebra",
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("lift.solution: true"));
    let strip = |p: &Path| {
        let mut x = read_bundle(p).unwrap();
        x.labels = None;
        x
    };
    assert_eq!(strip(&r), strip(&fixture("ex2_r")));
    assert_eq!(strip(&b), strip(&fixture("ex2_B")));
}

#[test]
fn search_and_check_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sols.json");
    let out = novikov(&["search", &f("ex1_algebra"), "--values=-1,0,1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    match parse_bundle(&out.stdout).unwrap().body {
        Body::SolutionList { solutions, .. } => assert_eq!(solutions.len(), 3),
        _ => panic!("not a solution list"),
    }
    let out = novikov(&["search", &f("ex1_algebra"), "--values", "-1,0,1", "--out", path.to_str().unwrap()]);
    assert!(out.stdout.contains("solutions: 3"));
    assert_eq!(novikov(&["check", path.to_str().unwrap(), "--algebra", &f("ex1_algebra")]).code, 0);
    assert_eq!(novikov(&["search", &f("ex2_B"), "--values=-1,0,1", "--budget", "10"]).code, 2);
    assert_eq!(novikov(&["search", &f("ex1_algebra"), "--values=1/0"]).code, 2);
}

#[test]
fn derive_targets_produce_valid_bundles() {
    let alg = f("ex1_algebra");
    for target in ["novikov", "odot", "star", "adjoint", "pre-adjoint", "dual-adjoint", "dual-pre-adjoint"] {
        let out = novikov(&["derive", &alg, target]);
        assert_eq!(out.code, 0, "{target}: {}", out.stderr);
        let b = parse_bundle(&out.stdout).unwrap();
        assert_eq!(serialize_bundle(&b), out.stdout);
    }
    let out = novikov(&["derive", &alg, "dual", "--rep", &f("ex2_adjoint_rep")]);
    assert_eq!(out.code, 0);
    assert_eq!(novikov(&["derive", &alg, "dual"]).code, 2);
    let out = novikov(&["derive", &f("ex1_coalgebra"), "dual-algebra"]);
    let dual = parse_bundle(&out.stdout).unwrap();
    match dual.body {
        Body::PreNovikov(t) => {
            // e2*◁*e2* = e1*, e2*▷*e2* = -e1*
            assert_eq!(t.lhd.get(1, 1, 0), &Scalar::one());
            assert_eq!(t.rhd.get(1, 1, 0), &-Scalar::one());
        }
        _ => panic!("not an algebra"),
    }
    // a table that is not pre-Novikov has no associated Novikov algebra
    assert_eq!(novikov(&["derive", &f("ex1_mutated_lhd"), "novikov"]).code, 1);
}

#[test]
fn diag_dumps_named_tensors() {
    let out = novikov(&["diag", &f("ex2_B"), &f("ex2_r")]);
    assert_eq!(out.code, 0);
    for name in ["R11", "R12", "R13", "R21", "R22", "R31", "R41"] {
        assert!(out.stdout.contains(&format!("tensor.{name}: ")), "{name}");
    }
}

#[test]
fn workers_flag_and_env() {
    assert_eq!(novikov(&["--workers", "2", "check", &f("ex2_B")]).code, 0);
    assert_eq!(novikov(&["--workers", "0", "check", &f("ex2_B")]).code, 0);
    assert_eq!(novikov(&["--workers", "many", "check", &f("ex2_B")]).code, 2);
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(novikov(&["--help"]).code, 0);
    assert_eq!(novikov(&["frobnicate"]).code, 2);
    assert_eq!(novikov(&["check"]).code, 2);
}

#[test]
fn binary_matches_in_process_run() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(["check", &f("ex1_mutated_lhd")])
        .env("NOVIKOV_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), novikov(&["check", &f("ex1_mutated_lhd")]).stdout);
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn table(n: usize) -> impl Strategy<Value = StructureConstants> {
    proptest::collection::vec(scalar(), n * n * n).prop_map(move |v| {
        let mut it = v.into_iter();
        StructureConstants::from_fn(n, |_, _, _| it.next().unwrap())
    })
}

fn pre_novikov_bundle() -> impl Strategy<Value = Bundle> {
    (1usize..=3)
        .prop_flat_map(|n| (table(n), table(n), proptest::option::of(Just(n))))
        .prop_map(|(lhd, rhd, labelled)| Bundle {
            labels: labelled.map(|n| (1..=n).map(|i| format!("b{i}")).collect()),
            body: Body::PreNovikov(PreNovikovTables { lhd, rhd }),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_inverts_serialize(b in pre_novikov_bundle()) {
        let text = serialize_bundle(&b);
        let back = parse_bundle(&text).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn verdicts_and_parse_failures_map_to_exit_codes(b in pre_novikov_bundle(), cut in 0usize..400) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.json");
        let text = serialize_bundle(&b);
        std::fs::write(&path, &text).unwrap();
        let verdict = match &b.body {
            Body::PreNovikov(t) => t.check().passed(),
            _ => unreachable!(),
        };
        let code = novikov(&["check", path.to_str().unwrap()]).code;
        prop_assert_eq!(code, if verdict { 0 } else { 1 });

        // truncating the file breaks it; parse failures exit 2
        let cut = cut.min(text.trim_end().len() - 1);
        std::fs::write(&path, &text[..cut]).unwrap();
        prop_assert!(parse_bundle(&text[..cut]).is_err());
        prop_assert_eq!(novikov(&["check", path.to_str().unwrap()]).code, 2);
    }
}
