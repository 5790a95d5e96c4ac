use proptest::prelude::*;

use super::*;
use crate::catalog::{self, parse_assignment};
use crate::random::{random_matrix, rng};
use crate::scalar::{Assignment, Scalar};
use crate::tensor::ybc_oracle;

fn entry(name: &str, pairs: &[(&str, &str)]) -> SquareMatrix {
    catalog::get(name).unwrap().instantiate(&parse_assignment(pairs.iter().copied()).unwrap()).unwrap()
}

fn w23() -> SquareMatrix {
    entry("W", &[("q", "2"), ("s", "3"), ("t", "q")])
}

fn qd(w: &SquareMatrix, x: &SquareMatrix, z: &SquareMatrix) -> Roles {
    roles([("W", w.clone()), ("X", x.clone()), ("Z", z.clone())])
}

#[test]
fn equations_parse_and_print() {
    for text in ["[W,X,X]", "[[A,C,B‡]]", "{[Y‡,X,W]}", "[A,B+,B+]", "[W#,X-,Z^t]"] {
        let eq: Equation = text.parse().unwrap();
        assert_eq!(eq.to_string(), text);
    }
    assert_eq!("[[A,B^dagger,C]]".parse::<Equation>().unwrap().to_string(), "[[A,B‡,C]]");
    assert!("[A,B]".parse::<Equation>().is_err());
    assert!("A,B,C".parse::<Equation>().is_err());
    assert!("[A,B,C*]".parse::<Equation>().is_err());
}

#[test]
fn definitions_are_validated() {
    assert!(matches!(
        SystemDef::parse("s", &["A"], "[A,A,B]"),
        Err(SystemError::UndeclaredRole { ref role, .. }) if role == "B"
    ));
    assert!(matches!(
        SystemDef::parse("s", &["A"], "[A,A‡,A]"),
        Err(SystemError::InvalidTransform { transform: Transform::Dagger, kind: Kind::Const })
    ));
    assert!(SystemDef::parse("s", &["A"], "[[A,A‡,A]]").is_ok());
    for name in SystemDef::BUILTIN {
        assert_eq!(SystemDef::builtin(name).unwrap().name, name);
    }
    assert_eq!(SystemDef::builtin("QDOUBLE").unwrap(), SystemDef::qdouble());
    assert!(SystemDef::builtin("nope").is_err());
    assert_eq!(SystemDef::reflection().equations.len(), 8);
    assert_eq!(SystemDef::braided_family().equations.len(), 8);
}

#[test]
fn declared_system_needs_no_code() {
    let s = SystemDef::parse("custom", &["R", "S"], "[R,S,S]; [S,S,R]").unwrap();
    let p = SquareMatrix::flip(2);
    assert!(verify(&s, &roles([("R", p.clone()), ("S", p)])).unwrap().0);
}

#[test]
fn p_x_p_solves_qdouble() {
    let p = SquareMatrix::flip(2);
    for seed in 0..5 {
        let (ok, rep) = verify(&SystemDef::qdouble(), &qd(&p, &random_matrix(4, seed), &p)).unwrap();
        assert!(ok, "{rep:?}");
    }
}

#[test]
fn identity_x_pairs_any_two_solutions() {
    let id = SquareMatrix::identity(4);
    let z = entry("Rexc3", &[("x", "1"), ("y", "2"), ("z", "3")]);
    assert!(verify(&SystemDef::qdouble(), &qd(&w23(), &id, &z)).unwrap().0);
}

#[test]
fn w_x1_z10_symbolically() {
    let w = catalog::get("W").unwrap();
    let x1 = catalog::get("X1").unwrap().symbolic().clone();
    let z10 = catalog::get("Z10").unwrap().symbolic().clone();
    for b in 0..2 {
        let wm = w.instantiate(w.branch(b)).unwrap();
        assert!(!wm.is_numeric());
        let (ok, rep) = verify(&SystemDef::qdouble(), &qd(&wm, &x1, &z10)).unwrap();
        assert!(ok, "{rep:?}");
    }
}

#[test]
fn exceptional_r_solves_ybe() {
    let r = catalog::get("Rexc3").unwrap().symbolic().clone();
    assert!(verify(&SystemDef::ybe(), &roles([("R", r)])).unwrap().0);
}

#[test]
fn simple_qbg_solutions() {
    let r = w23();
    let p = SquareMatrix::flip(2);
    let q = p.mul(&r.inverse().unwrap()).unwrap().mul(&p).unwrap();
    assert!(verify(&SystemDef::qbg(), &roles([("Q", r.clone()), ("R", r.clone())])).unwrap().0);
    assert!(verify(&SystemDef::qbg(), &roles([("Q", q), ("R", r)])).unwrap().0);
}

#[test]
fn failing_run_reports_witnesses() {
    let (ok, rep) =
        verify(&SystemDef::qdouble(), &qd(&SquareMatrix::flip(2), &random_matrix(4, 7), &w23())).unwrap();
    assert!(!ok);
    let xxz = &rep.equations[2];
    assert_eq!(xxz.equation, "[X,X,Z]");
    assert!(!xxz.zero && xxz.nonzero > 0);
    assert_eq!(xxz.entries.len(), xxz.nonzero.min(RESIDUAL_CAP));
    assert!(xxz.entries.iter().all(|e| e.index.len() == 6 && e.index.iter().all(|&d| (1..=2).contains(&d))));
    assert!(rep.equations[0].zero);
}

#[test]
fn errors_name_the_role() {
    let s = SystemDef::parse("s", &["A", "B"], "[A,B-,B]").unwrap();
    let singular = SquareMatrix::zeros(4);
    let err = residual(&s, &roles([("A", SquareMatrix::flip(2)), ("B", singular)])).unwrap_err();
    assert_eq!(err, SystemError::NotInvertible { role: "B".into(), transform: Transform::Minus });
    let err = residual(&s, &roles([("A", SquareMatrix::flip(2))])).unwrap_err();
    assert_eq!(err, SystemError::MissingRole("B".into()));
    let err = residual(&s, &roles([("A", SquareMatrix::flip(2)), ("B", SquareMatrix::identity(9))])).unwrap_err();
    assert!(matches!(err, SystemError::DimensionMismatch { ref role, .. } if role == "B"));
}

#[test]
fn reflection_matches_qdouble() {
    // A = W, C = X, B = X⁺, D = Z⁺: each reflection equation is a quantum
    // double equation conjugated by the leg reversal.
    let map = [0, 3, 1, 2, 1, 2, 1, 2];
    for seed in 0..4 {
        let (w, x, z) = (random_matrix(4, seed), random_matrix(4, seed + 100), random_matrix(4, seed + 200));
        let q = residual(&SystemDef::qdouble(), &qd(&w, &x, &z)).unwrap();
        let r = residual(
            &SystemDef::reflection(),
            &roles([("A", w), ("B", x.plus().unwrap()), ("C", x), ("D", z.plus().unwrap())]),
        )
        .unwrap();
        for (k, &m) in map.iter().enumerate() {
            assert_eq!(r.equations[k].nonzero, q.equations[m].nonzero, "seed {seed} equation {k}");
        }
    }
}

#[test]
fn second_inversion_reading() {
    assert!(has_second_inversion(&w23()));
    assert!(!has_second_inversion(&SquareMatrix::flip(2)));
    let w = w23();
    let si = second_inversion(&w).unwrap();
    let t1 = partial_transpose_leg1(&w).unwrap();
    assert_eq!(si.mul(&t1).unwrap(), SquareMatrix::identity(4));
}

#[test]
fn rational_yang_solution() {
    let a = catalog::get("A").unwrap().instantiate_colour(&Assignment::new()).unwrap();
    let s = SystemDef::parse("s", &["A"], "[[A,A,A]]").unwrap();
    assert!(verify(&s, &roles([("A", a)])).unwrap().0);
}

#[test]
fn spectral_a_c_c_vanishes() {
    let get = |n: &str| catalog::get(n).unwrap().instantiate_colour(&Assignment::new()).unwrap();
    let s = SystemDef::parse("s", &["A", "C"], "[[A,C,C]]").unwrap();
    assert!(verify(&s, &roles([("A", get("A")), ("C", get("C"))])).unwrap().0);
    let b = get("B");
    assert_eq!(Transform::Dagger.apply_colour(&get("C")).unwrap(), b);
}

#[test]
fn spectral_investigation_finds_the_catalog_correction() {
    let inv = spectral::investigate().unwrap();
    let printed = catalog::get("D").unwrap().instantiate_colour(&Assignment::new()).unwrap();
    assert_eq!(spectral::d_candidate(spectral::Reading::Plus, 0), printed);
    assert!(inv.candidates.iter().all(|c| c.shift != 0 || !c.solves()));
    let c = inv.correction().unwrap();
    assert_eq!(c.label(), "plus - P");
    let fixed = catalog::get("D_corrected").unwrap().instantiate_colour(&Assignment::new()).unwrap();
    assert_eq!(c.matrix, fixed);
}

fn colour_id() -> ColourMatrix {
    ColourMatrix::standard(SquareMatrix::identity(4))
}

#[test]
fn family_structure() {
    let a = catalog::get("A").unwrap().instantiate_colour(&Assignment::new()).unwrap();
    let fam = MatrixFamily::from_fn(2, |_, _| a.clone()).unwrap();
    let s = SystemDef::parse("f", &["Z"], "{[Z,Z,Z]}").unwrap();
    assert!(verify(&s, &roles([("Z", fam)])).unwrap().0);

    // one member off: only index triples touching it fail
    let bad = MatrixFamily::from_fn(2, |j, k| if (j, k) == (0, 1) { colour_id() } else { a.clone() }).unwrap();
    let rep = residual(&s, &roles([("Z", bad)])).unwrap();
    let eq = &rep.equations[0];
    assert!(!eq.zero);
    assert!(eq.entries.iter().all(|e| e.index.len() == 9));

    let mixed = MatrixFamily::from_fn(2, |j, k| if j <= k { a.clone() } else { colour_id() }).unwrap();
    let d = mixed.transform(Transform::Dagger).unwrap();
    assert_eq!(d.get(1, 0), &mixed.get(0, 1).dagger().unwrap());
    assert_eq!(d.get(0, 1), &mixed.get(1, 0).dagger().unwrap());
}

#[test]
fn braided_family_requires_invertible_members() {
    let zero = ColourMatrix::standard(SquareMatrix::zeros(4));
    let fam = MatrixFamily::from_fn(2, |j, k| if j == k { colour_id() } else { zero.clone() }).unwrap();
    let ids = MatrixFamily::from_fn(2, |_, _| colour_id()).unwrap();
    let r = roles([("W", ids.clone()), ("X", ids.clone()), ("Y", ids.clone()), ("Z", fam)]);
    assert!(matches!(
        residual(&SystemDef::braided_family(), &r),
        Err(SystemError::NotInvertible { ref role, .. }) if role == "Z"
    ));
    let r = roles([("W", ids.clone()), ("X", ids.clone()), ("Y", ids.clone()), ("Z", ids)]);
    assert!(verify(&SystemDef::braided_family(), &r).unwrap().0);
}

#[test]
fn family_of_size_one_is_the_colour_system() {
    let get = |n: &str| catalog::get(n).unwrap().instantiate_colour(&Assignment::new()).unwrap();
    let one = |m: ColourMatrix| MatrixFamily::new(vec![vec![m]]).unwrap();
    let fam = SystemDef::parse("f", &["A", "C"], "{[A,C,C‡]}").unwrap();
    let col = SystemDef::parse("f", &["A", "C"], "[[A,C,C‡]]").unwrap();
    let rf = residual(&fam, &roles([("A", one(get("A"))), ("C", one(get("C")))])).unwrap();
    let rc = residual(&col, &roles([("A", get("A")), ("C", get("C"))])).unwrap();
    assert_eq!(rf.equations[0].nonzero, rc.equations[0].nonzero);
}

#[test]
fn report_cap_and_json_round_trip() {
    let (_, rep) =
        verify(&SystemDef::qdouble(), &qd(&random_matrix(4, 1), &random_matrix(4, 2), &random_matrix(4, 3))).unwrap();
    assert!(rep.equations.iter().any(|e| e.nonzero > RESIDUAL_CAP && e.entries.len() == RESIDUAL_CAP));
    let doc = VerificationDocument {
        system: "qdouble".into(),
        roles: vec![RoleSource { role: "W".into(), source: "random[dim=4,seed=1]".into() }],
        mode: "numeric".into(),
        reports: vec![rep.with_assignment("")],
        passed: false,
    };
    let text = render_text(&doc);
    let back = VerificationDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(render_text(&back), text);
    assert!(text.contains("... ") && text.ends_with("result: FAIL\n"));
}

fn small_matrix() -> impl Strategy<Value = SquareMatrix> {
    proptest::collection::vec(-3i64..=3, 16).prop_map(|v| {
        SquareMatrix::new(4, v.into_iter().map(Scalar::from_i64).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residual_matches_oracle(r in small_matrix(), s in small_matrix(), t in small_matrix()) {
        let sys = SystemDef::parse("rst", &["R", "S", "T"], "[R,S,T]").unwrap();
        let got = residual_matrices(&sys, &roles([("R", r.clone()), ("S", s.clone()), ("T", t.clone())])).unwrap();
        prop_assert_eq!(&got[0], &ybc_oracle(&r, &s, &t));
    }

    #[test]
    fn verify_is_scale_invariant(seed in 0u64..1000, a in 1i64..5, b in -4i64..-1, c in 1i64..7) {
        let w = w23();
        let x = random_matrix(4, seed);
        let z = SquareMatrix::flip(2);
        let plain = verify(&SystemDef::qdouble(), &qd(&w, &x, &z)).unwrap().0;
        let (a, b, c) = (Scalar::from_i64(a), Scalar::ratio(b, 3), Scalar::from_i64(c));
        let scaled = verify(&SystemDef::qdouble(), &qd(&w.scale(&a), &x.scale(&b), &z.scale(&c))).unwrap().0;
        prop_assert_eq!(plain, scaled);
    }
}

#[test]
fn seeded_samples_are_independent_of_threads() {
    let mut r = rng(1);
    let t = &catalog::conclusions()[3];
    let at = t.sample(0, &mut r).unwrap();
    let [w, x, z] = t.instantiate(&at).unwrap();
    let a = residual(&SystemDef::qdouble(), &qd(&w, &x, &z)).unwrap();
    let b = residual(&SystemDef::qdouble(), &qd(&w, &x, &z)).unwrap();
    assert_eq!(a, b);
    assert!(a.is_zero());
}
