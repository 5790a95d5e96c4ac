use std::path::Path;
use std::process::{Command, Output};

fn ybx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybx")).args(args).output().expect("run ybx")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

const PASS: [&str; 8] = [
    "verify",
    "qdouble",
    "--W",
    "catalog:W[q=2,s=3,t=q]",
    "--X",
    "catalog:X1[a=1,b=2,c=1,d=1]",
    "--Z",
    "catalog:Z10[x=1,y=2,z=3]",
];

const FAIL: [&str; 8] =
    ["verify", "qdouble", "--W", "catalog:P", "--X", "random[dim=4,seed=7]", "--Z", "catalog:W[q=2,s=3,t=q]"];

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&ybx(&PASS)), 0);
    assert_eq!(code(&ybx(&["verify", "ybe", "--R", "catalog:P"])), 0);
    let fail = ybx(&FAIL);
    assert_eq!(code(&fail), 1);
    assert!(stdout(&fail).contains("[X,X,Z]  46 nonzero"));
    assert_eq!(code(&ybx(&["verify", "nosuch", "--R", "catalog:P"])), 2);
    assert_eq!(code(&ybx(&["verify", "ybe", "--R", "catalog:W[q=1,s=1,t=1]"])), 2);
    assert_eq!(code(&ybx(&["verify", "ybe"])), 2);
}

#[test]
fn json_matches_golden() {
    let mut args = PASS.to_vec();
    args.push("--json");
    assert_eq!(stdout(&ybx(&args)), golden("verify_pass.json"));
    let mut args = FAIL.to_vec();
    args.push("--json");
    assert_eq!(stdout(&ybx(&args)), golden("verify_fail.json"));
    assert_eq!(stdout(&ybx(&FAIL)), golden("verify_fail.txt"));
}

#[test]
fn json_round_trips_to_text() {
    let dir = tempfile::tempdir().unwrap();
    for base in [&PASS[..], &FAIL[..], &["verify", "ybe", "--R", "catalog:W", "--samples", "3"][..]] {
        let mut args = base.to_vec();
        args.push("--json");
        let path = dir.path().join("r.json");
        std::fs::write(&path, stdout(&ybx(&args))).unwrap();
        let rendered = ybx(&["report", "render", path.to_str().unwrap()]);
        assert_eq!(code(&rendered), 0);
        assert_eq!(stdout(&rendered), stdout(&ybx(base)));
        let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for key in ["system", "roles", "mode", "reports", "passed"] {
            assert!(doc.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn sampled_runs_are_reproducible() {
    let args = ["verify", "qdouble", "--W", "catalog:W", "--X", "catalog:X1", "--Z", "catalog:Z10", "--seed", "4"];
    let a = ybx(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&ybx(&args)));
    assert_eq!(stdout(&a).matches("point ").count(), 10);
    let sym = ybx(&["verify", "qdouble", "--W", "catalog:W", "--X", "catalog:X1", "--Z", "catalog:Z10", "--symbolic"]);
    assert_eq!(code(&sym), 0);
    assert!(stdout(&sym).contains("mode: symbolic"));
}

#[test]
fn solve_z() {
    let out = ybx(&["solve-z", "--X", "catalog:X3[a=1,b=2,c=3,d=5]"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("dimension 6\n"));
    assert_eq!(text.matches("# basis").count(), 6);

    let out = ybx(&["solve-z", "--X", "catalog:P"]);
    assert!(stdout(&out).starts_with("dimension 1\n"));

    let with = ybx(&["solve-z", "--X", "catalog:X3[a=1,b=2,c=3,d=5]", "--emit-ybe"]);
    assert!(stdout(&with).contains("unknowns c1 c2 c3 c4 c5 c6"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "dim 4\nvars a\na, 0, 0, 0\n0, 1, 0, 0\n0, 0, 1, 0\n0, 0, 0, 1\n").unwrap();
    let out = ybx(&["solve-z", "--X", &format!("file:{}", path.display())]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("symbolic"));
}

#[test]
fn orbit() {
    let base = ["orbit", "--W", "catalog:W[q=2,s=3,t=q]", "--X", "catalog:X1[a=1,b=2,c=1,d=1]", "--Z", "catalog:P"];
    let echo = ybx(&base);
    assert_eq!(code(&echo), 0);
    assert!(stdout(&echo).starts_with("# W\ndim 4\n2, 0, 0, 0\n0, 1/3, 0, 0\n0, 3/2, 3, 0\n0, 0, 0, 2\n"));

    let mut args = base.to_vec();
    args.extend(["--word", "dsym3:++", "--check"]);
    let out = ybx(&args);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("# W\ndim 4\n1, 0, 0, 0\n0, 0, 1, 0\n0, 1, 0, 0\n0, 0, 0, 1\n"), "{text}");
    assert!(text.contains("# Z\ndim 4\n2, 0, 0, 0\n0, 3, 3/2, 0\n0, 0, 1/3, 0\n0, 0, 0, 2\n"), "{text}");
    assert!(text.ends_with("result: PASS\n"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.txt");
    std::fs::write(&path, "dim 4\n0,0,0,0\n0,0,0,0\n0,0,0,0\n0,0,0,0\n").unwrap();
    let x = format!("file:{}", path.display());
    let out = ybx(&["orbit", "--W", "catalog:P", "--X", &x, "--Z", "catalog:P", "--word", "dsym2:+-"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("X is not invertible"));
    assert_eq!(code(&ybx(&["orbit", "--W", "catalog:P", "--X", "catalog:P", "--Z", "catalog:P", "--word", "dsym9"])), 2);
}

#[test]
fn catalog_commands() {
    let show = ybx(&["catalog", "show", "W"]);
    assert_eq!(code(&show), 0);
    let text = stdout(&show);
    for c in ["q != 0", "s != 0", "q^2-1 != 0", "t = q or t = -q^-1", "q-q^-1"] {
        assert!(text.contains(c), "{c}");
    }
    assert_eq!(code(&ybx(&["catalog", "show", "NOPE"])), 2);
    assert!(stdout(&ybx(&["catalog", "list"])).lines().count() >= 25);

    let dir = tempfile::tempdir().unwrap();
    let out = ybx(&["catalog", "export", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let w = std::fs::read_to_string(dir.path().join("W.txt")).unwrap();
    assert!(w.starts_with("# W\ndim 4\nvars q s t\n"));
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(files >= 25);
    let p = format!("file:{}", dir.path().join("P.txt").display());
    assert_eq!(code(&ybx(&["verify", "ybe", "--R", &p])), 0);
}

#[test]
fn bridge_and_spectral() {
    let out = ybx(&["bridge", "--Q", "catalog:W[q=2,s=3,t=q]", "--R", "catalog:W[q=2,s=3,t=q]"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).matches("dim 4").count(), 3);
    let out = ybx(&["bridge", "--Q", "random[dim=4,seed=1]", "--R", "catalog:P"]);
    assert_eq!(code(&out), 1);
    let out = ybx(&["spectral"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("correction: D = plus - P"));
}

#[test]
fn braided_family_members() {
    let args = [
        "verify",
        "braided-family",
        "--family-size",
        "2",
        "--W",
        "catalog:P",
        "--X",
        "catalog:P",
        "--Y",
        "catalog:P",
        "--Z",
        "catalog:P",
        "--Y12",
        "catalog:Id",
    ];
    let out = ybx(&args);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("role Y12: catalog:Id"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&ybx(&[])), 2);
    assert_eq!(code(&ybx(&["solve-z", "--X", "bogus"])), 2);
    assert_eq!(code(&ybx(&["verify", "ybe", "--R", "catalog:W[q=2"])), 2);
    assert_eq!(code(&ybx(&["report", "render", "/nonexistent.json"])), 2);
}
