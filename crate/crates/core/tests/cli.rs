//! Golden outputs, exit codes and determinism of the `graded` command line.

use std::fs;
use std::path::Path;

use graded_core::cli::{run, Outcome};

fn graded(args: &[&str]) -> Outcome {
    run(std::iter::once("graded").chain(args.iter().copied()))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const GRADED_PAIR: &str = "\
structure m chain=luk:3
elements a b
default 0
< a a = 2
< a b = 1
< b b = 2
";

const PATH: &str = "\
structure path chain=bool
elements a b c
default 0
< a b = 1
< b a = 1
< b c = 1
< c b = 1
";

const TRIANGLE: &str = "\
structure triangle chain=bool
elements a b c
default 1
< a a = 0
< b b = 0
< c c = 0
";

fn fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.gs"), GRADED_PAIR).unwrap();
    fs::write(dir.path().join("path.gs"), PATH).unwrap();
    fs::write(dir.path().join("triangle.gs"), TRIANGLE).unwrap();
    dir
}

#[test]
fn enumerate_count_golden() {
    let out = graded(&["enumerate", "--class", "k1", "--chain", "bool", "--max-size", "3", "--count-only"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "7\n"));
}

#[test]
fn ap_check_golden() {
    let out = graded(&["check", "--class", "k1", "--chain", "luk:3", "--k", "3", "--property", "ap"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "AP k1 chain=luk:3 k=3: types=67 instances=14173 constructor=14173 fallback=0\nno counterexamples\n"
    );
}

#[test]
fn eval_golden() {
    let dir = fixtures();
    let m = dir.path().join("m.gs");
    let out = graded(&["eval", "--structure", path_str(&m), "--formula", "forall x (x < x)"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "value 2\nin filter: yes\n"));
    let out = graded(&[
        "eval",
        "--structure",
        path_str(&m),
        "--formula",
        "((x < y) & (y < x)) -> (x < x)",
        "--assign",
        "x=a,y=b",
    ]);
    assert_eq!(out.stdout, "value 2\nin filter: yes\n");
    let out = graded(&["--format", "tsv", "eval", "--structure", path_str(&m), "--formula", "x < y", "--assign", "x=a,y=b"]);
    assert_eq!(out.stdout, "1\tfalse\n");
    let out = graded(&["eval", "--structure", path_str(&m), "--formula", "x < y"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("unbound"));
}

#[test]
fn algebra_show_golden() {
    let out = graded(&["algebra", "show", "godel:3"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "chain godel:3 size=3 one=2 zero=0 bot=0 top=2\nconj:\n    0 | 0 0 0\n    1 | 0 1 1\n    2 | 0 1 2\nres:\n    0 | 2 2 2\n    1 | 0 2 2\n    2 | 0 1 2\n"
    );
}

#[test]
fn algebra_validate_reports_axioms() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("u3.chain");
    fs::write(&good, "chain u3 3 one=1 zero=0\n0 0 0\n0 1 2\n0 2 2\n").unwrap();
    let out = graded(&["algebra", "validate", path_str(&good)]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "valid chain u3 size=3 one=1 zero=0\n"));
    let bad = dir.path().join("bad.chain");
    fs::write(&bad, "chain u3 3 one=2 zero=0\n0 0 0\n0 1 2\n0 2 2\n").unwrap();
    let out = graded(&["algebra", "validate", path_str(&bad)]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("neutrality"), "{}", out.stderr);
}

#[test]
fn iso_sub_and_age() {
    let dir = fixtures();
    let (p, t) = (dir.path().join("path.gs"), dir.path().join("triangle.gs"));
    let out = graded(&["iso", path_str(&p), path_str(&t)]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "not isomorphic\n"));
    let out = graded(&["iso", path_str(&p), path_str(&p)]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("isomorphic: "));
    let out = graded(&["sub", path_str(&p), path_str(&t)]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "not a substructure\n"));
    let out = graded(&["age", path_str(&t), "--k", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("age k=2 types=2\n"));
}

#[test]
fn homogeneity_exit_codes() {
    let dir = fixtures();
    let out = graded(&["homogeneity", path_str(&dir.path().join("triangle.gs")), "--k", "2"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "defects=0 classes=0\n"));
    let out = graded(&["homogeneity", path_str(&dir.path().join("path.gs")), "--k", "1"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "defects=4 classes=1\nclass {a->b} count=4\n"));
}

#[test]
fn limit_build_is_byte_identical_and_replayable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = |dir: &Path| {
        vec![
            "limit".to_string(),
            "build".into(),
            "--class".into(),
            "k1".into(),
            "--chain".into(),
            "bool".into(),
            "--stages".into(),
            "3".into(),
            "--budget".into(),
            "2".into(),
            "--out".into(),
            path_str(dir).into(),
        ]
    };
    let first = run(std::iter::once("graded".to_string()).chain(args(a.path())));
    let second = run(std::iter::once("graded".to_string()).chain(args(b.path())));
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first, second);
    let names = ["stage_0.gs", "stage_1.gs", "stage_2.gs", "stage_3.gs", "transcript.txt"];
    for name in names {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }

    let replayed = tempfile::tempdir().unwrap();
    let transcript = a.path().join("transcript.txt");
    let out = graded(&["limit", "replay", path_str(&transcript), "--out", path_str(replayed.path())]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    for name in &names[..4] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(replayed.path().join(name)).unwrap());
    }

    let out = graded(&[
        "limit",
        "check",
        "--stage",
        path_str(&a.path().join("stage_3.gs")),
        "--class",
        "k1",
        "--budget",
        "2",
        "--base",
        path_str(&a.path().join("stage_0.gs")),
    ]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "defects=0\n"));
}

#[test]
fn randgraph_build_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rg.gs");
    let out = graded(&["randgraph", "build", "--chain", "luk:3", "--rounds", "2", "--out", path_str(&file)]);
    assert_eq!(out.stdout, "round 0: 1 vertices\nround 1: 3 vertices\nround 2: 66 vertices\n");
    let out = graded(&["randgraph", "check", "--structure", path_str(&file), "--max-x", "1", "--within", "w0,w1,w2,w3"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "defects=0\n"));
    let out = graded(&["randgraph", "check", "--structure", path_str(&file), "--max-x", "2"]);
    assert_eq!(out.code, 1);
}

#[test]
fn amalgamate_and_union() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    };
    let base = write("base.gs", "structure b chain=bool\nelements x\ndefault 1\n");
    let left = write("left.gs", "structure l chain=bool\nelements a x\ndefault 1\n< x a = 0\n");
    let right = write("right.gs", "structure r chain=bool\nelements x b\ndefault 1\n< b x = 0\n");
    let out = graded(&[
        "amalgamate",
        "--class",
        "k3",
        "--base",
        path_str(&base),
        "--left",
        path_str(&left),
        "--right",
        path_str(&right),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "# witness: class construction\nstructure amalgam chain=bool\nelements a x b\ndefault 1\n< x a = 0\n< b a = 0\n< b x = 0\n"
    );
    let out = graded(&["union", "--class", "k0", "--chain", "luk:3", "--max-size", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("# members: 7\nstructure union chain=luk:3\n"));
}

#[test]
fn outputs_are_deterministic_across_runs_and_thread_counts() {
    let cases: [&[&str]; 3] = [
        &["enumerate", "--class", "k2", "--chain", "luk:3", "--max-size", "3"],
        &["--format", "tsv", "enumerate", "--class", "k3", "--chain", "godel:3", "--max-size", "3"],
        &["check", "--class", "k2", "--chain", "bool", "--k", "3", "--property", "ap"],
    ];
    for args in cases {
        let base = graded(args);
        assert_eq!(base.code, 0, "{}", base.stderr);
        assert_eq!(graded(args), base);
        let mut threaded = vec!["--jobs", "3"];
        threaded.extend_from_slice(args);
        assert_eq!(graded(&threaded), base);
    }
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(graded(&["frobnicate"]).code, 2);
    assert_eq!(graded(&["check", "--class", "k1", "--chain", "bool", "--k", "2", "--property", "xp"]).code, 2);
    assert_eq!(graded(&["enumerate", "--class", "k1", "--chain", "nope:3", "--max-size", "2"]).code, 1);
    assert_eq!(graded(&["enumerate", "--class", "k1", "--chain", "luk:5", "--max-size", "4"]).code, 1);
    let help = graded(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("randgraph"));
}
