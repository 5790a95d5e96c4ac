//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero only when an outcome differs from the recorded one in `EXPECTED`.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use num_integer::Integer;
use ybx_core::catalog::{self, conclusions, parse_assignment, BranchKind, NamedMatrix};
use ybx_core::expr;
use ybx_core::random::{random_matrix, rng};
use ybx_core::solver::{apply_transform, qbg_to_qdouble, solve_z_linear, z_linear_system, SolverError, TransformSpec};
use ybx_core::systems::{roles, spectral, verify, SystemDef};
use ybx_core::tensor::format::{parse_matrix, write_matrix};
use ybx_core::tensor::{ybc_colour, ybc_const, ybc_oracle, ColourMatrix};
use ybx_core::{Assignment, GaussianRational, Ring, Scalar, SquareMatrix};

/// Exact zero everywhere: residuals are compared with `is_zero`, never
/// against an epsilon.
const SAMPLES: usize = 10;
const CRIT1_LIMIT: Duration = Duration::from_secs(10);
const CRIT2_LIMIT: Duration = Duration::from_secs(120);
const CRIT7_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_X_SEEDS: u64 = 100;
const TRANSFORM_SPECS: usize = 100;
const MALFORMED: usize = 50;
const ORACLE_TRIPLES: u64 = 50;

/// Recorded outcomes. Criteria 2 and 4 fail on printed errata; see
/// `ERRATA` and the README.
const EXPECTED: [bool; 9] = [true, false, true, false, true, true, true, true, true];

/// Branches of the conclusions that fail as printed.
const ERRATA: [&str; 4] = ["(W, X2, Z21)", "(W, X4, Z41)", "(W, X5, Z51)", "(W, X5, Z53)"];

struct Outcome {
    pass: bool,
    detail: String,
    /// Internal consistency of the recorded analysis.
    consistent: bool,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, consistent: true }
    }
}

fn qdouble_ok(t: &[SquareMatrix; 3]) -> bool {
    let r = roles([("W", t[0].clone()), ("X", t[1].clone()), ("Z", t[2].clone())]);
    verify(&SystemDef::qdouble(), &r).expect("qdouble roles").0
}

fn ybe_zero(r: &SquareMatrix) -> bool {
    ybc_const(r, r, r).expect("square").is_zero()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Every constant catalog entry that solves the Yang-Baxter equation, at
/// the witness point of its first solving branch.
fn ybe_solutions() -> Vec<(&'static NamedMatrix, SquareMatrix)> {
    catalog::catalog()
        .iter()
        .filter(|m| !m.is_colour() && m.dim() == 4)
        .filter_map(|m| {
            let b = (0..m.branches.len()).find(|&b| m.solves_ybe(b))?;
            Some((m, m.instantiate(&m.witness(b)).expect("witness admissible")))
        })
        .collect()
}

fn criterion1() -> Outcome {
    let (result, took) = timed(|| {
        let mut checked = Vec::new();
        let mut failed = Vec::new();
        let w = catalog::get("W").unwrap();
        let mut cases: Vec<(String, SquareMatrix)> = (0..w.branches.len())
            .map(|b| (format!("W[{}]", w.branch(b)), w.instantiate(w.branch(b)).unwrap()))
            .collect();
        cases.push(("P".into(), SquareMatrix::flip(2)));
        for name in ["Rexc1", "Rexc2", "Rexc3", "Rdiag"] {
            let m = catalog::get(name).unwrap();
            cases.push((name.into(), m.instantiate(m.branch(0)).unwrap()));
        }
        for (name, m) in cases {
            if ybe_zero(&m) {
                checked.push(name);
            } else {
                failed.push(name);
            }
        }
        (checked, failed)
    });
    let (checked, failed) = result;
    let pass = failed.is_empty() && took < CRIT1_LIMIT;
    Outcome::new(pass, format!("symbolic [R,R,R] = 0 for {}; failed {:?}; {took:.2?}", checked.join(" "), failed))
}

fn criterion2() -> Outcome {
    let mut r = rng(2024);
    let (result, took) = timed(|| {
        let mut printed_fail = Vec::new();
        let mut unexpected = Vec::new();
        let mut points = 0;
        let mut corrected = 0;
        for t in conclusions() {
            for (k, b) in t.branches.iter().enumerate() {
                let mut ok = true;
                for _ in 0..SAMPLES {
                    let at = t.sample(k, &mut r).expect("admissible point");
                    points += 1;
                    if !qdouble_ok(&t.instantiate(&at).unwrap()) {
                        ok = false;
                        break;
                    }
                }
                if b.kind == BranchKind::Corrected && ok {
                    corrected += 1;
                }
                if b.kind != BranchKind::Corrected && !ok && !printed_fail.contains(&t.label) {
                    printed_fail.push(t.label.clone());
                }
                if ok != b.expected_to_verify() {
                    unexpected.push(format!("{} [{}]", t.label, b.bind));
                }
            }
        }
        let mut symbolic = Vec::new();
        for t in conclusions().iter().filter(|t| ["(W, X1, Z10)", "(W, X2, Z20)"].contains(&t.label.as_str())) {
            for k in 0..t.branches.len() {
                if qdouble_ok(&t.instantiate(&t.symbolic(k)).unwrap()) {
                    symbolic.push(format!("{} [{}]", t.label, t.branches[k].bind));
                } else {
                    unexpected.push(format!("symbolic {}", t.label));
                }
            }
        }
        (printed_fail, unexpected, points, corrected, symbolic)
    });
    let (printed_fail, unexpected, points, corrected, symbolic) = result;
    let pass = printed_fail.is_empty() && unexpected.is_empty() && took < CRIT2_LIMIT;
    let mut o = Outcome::new(
        pass,
        format!(
            "{points} sampled points; printed triples failing: {}; {corrected} corrected branches verify; \
             symbolic: {}; {took:.2?}",
            if printed_fail.is_empty() { "none".to_owned() } else { printed_fail.join(" ") },
            symbolic.join(", ")
        ),
    );
    let mut expected: Vec<String> = ERRATA.iter().map(|s| (*s).to_owned()).collect();
    expected.sort();
    let mut found = printed_fail.clone();
    found.sort();
    o.consistent = unexpected.is_empty() && found == expected && symbolic.len() == 4;
    o
}

fn criterion3() -> Outcome {
    let p = SquareMatrix::flip(2);
    let id = SquareMatrix::identity(4);
    let a = (0..RANDOM_X_SEEDS).filter(|&s| qdouble_ok(&[p.clone(), random_matrix(4, s), p.clone()])).count();
    let sols = ybe_solutions();
    let mut b = 0;
    for (_, r1) in &sols {
        for (_, r2) in &sols {
            b += qdouble_ok(&[r1.clone(), id.clone(), r2.clone()]) as usize;
        }
    }
    let c = sols.iter().filter(|(_, r)| qdouble_ok(&[r.clone(), r.clone(), r.clone()])).count();
    let n = sols.len();
    let pass = a == RANDOM_X_SEEDS as usize && b == n * n && c == n;
    Outcome::new(pass, format!("(a) {a}/{RANDOM_X_SEEDS} seeds, (b) {b}/{} pairs, (c) {c}/{n} solutions", n * n))
}

type Q = GaussianRational;

/// Fraction-free elimination over the Gaussian integers after clearing
/// denominators row by row.
fn bareiss_rank(rows: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.re().denom()).lcm(x.im().denom()));
            let l = Q::real(num_rational::BigRational::from_integer(l));
            r.iter().map(|x| x.mul_ref(&l)).collect()
        })
        .collect();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let mut prev = Q::one();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv_prev = prev.inv().unwrap();
        for i in rank + 1..m {
            for j in c + 1..n {
                let num = a[i][j].mul_ref(&a[rank][c]).sub_ref(&a[i][c].mul_ref(&a[rank][j]));
                a[i][j] = num.mul_ref(&inv_prev);
            }
            a[i][c] = Q::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

fn criterion4() -> Outcome {
    let d = |v: [i64; 4]| SquareMatrix::diagonal(v.iter().map(|&x| Scalar::from_i64(x)).collect());
    let mut dims = Vec::new();
    let mut dims_ok = true;
    for (x, want) in [([2, 2, 5, 5], 16), ([2, 2, 5, -5], 8), ([2, 3, 5, 7], 6)] {
        let m = d(x);
        let got = solve_z_linear(&m).unwrap().dim();
        let oracle = 16 - bareiss_rank(&z_linear_system(&m).unwrap());
        dims_ok &= got == want && oracle == want;
        dims.push(format!("{x:?}: {got} (oracle {oracle}, want {want})"));
    }
    let mut members = 0;
    let mut outside = Vec::new();
    let mut corrected_ok = true;
    for t in conclusions() {
        for (k, b) in t.branches.iter().enumerate() {
            let [_, x, z] = t.instantiate(&t.witness(k)).unwrap();
            let inside = solve_z_linear(&x).unwrap().contains(&z.to_numeric().unwrap());
            match b.kind {
                BranchKind::Corrected => corrected_ok &= inside,
                _ if inside => members += 1,
                _ => {
                    if !outside.contains(&t.label) {
                        outside.push(t.label.clone());
                    }
                }
            }
        }
    }
    let pass = dims_ok && outside.is_empty();
    let mut o = Outcome::new(
        pass,
        format!(
            "{}; {members} printed pairs in the nullspace; outside: {}; corrected pairs inside: {corrected_ok}",
            dims.join(", "),
            if outside.is_empty() { "none".to_owned() } else { outside.join(" ") }
        ),
    );
    outside.sort();
    o.consistent = dims_ok && corrected_ok && outside == ERRATA;
    o
}

fn criterion5() -> Outcome {
    let at = |pairs: &[(&str, &str)]| parse_assignment(pairs.iter().copied()).unwrap();
    let inst = |name: &str, pairs: &[(&str, &str)]| catalog::get(name).unwrap().instantiate(&at(pairs)).unwrap();
    let w = |q: &str, s: &str| inst("W", &[("q", q), ("s", s), ("t", "q")]);
    let triples = [
        [w("2", "3"), inst("X1", &[("a", "1"), ("b", "2"), ("c", "1"), ("d", "1")]), inst("Z10", &[("x", "1"), ("y", "2"), ("z", "3")])],
        [w("2", "3"), inst("X2", &[("q", "2"), ("s", "3"), ("t", "q"), ("a", "1"), ("b", "5")]), SquareMatrix::flip(2)],
        [w("3", "1/2"), inst("X3", &[("a", "1"), ("b", "2"), ("c", "3"), ("d", "5")]), inst("Z31", &[("p", "2"), ("r", "3")])],
        [w("i", "-i"), inst("X5", &[("a", "1"), ("b", "2"), ("c", "3")]), inst("Z52", &[("k", "3")])],
        [w("2", "3"), inst("X1", &[("a", "2"), ("b", "-1"), ("c", "0"), ("d", "1")]), SquareMatrix::zeros(4)],
    ];
    let verified = triples.iter().filter(|t| qdouble_ok(t)).count();
    let mut r = rng(55);
    let (mut images, mut refused, mut wrong, mut bad_refusal) = (0, 0, 0, 0);
    for _ in 0..TRANSFORM_SPECS {
        let spec = TransformSpec::random(&mut r);
        for t in &triples {
            match apply_transform(t, &spec) {
                Ok(img) => {
                    images += 1;
                    if !qdouble_ok(&img) {
                        wrong += 1;
                    }
                }
                Err(SolverError::NotInvertible { matrix, .. }) => {
                    refused += 1;
                    // dsym3 swaps the W and Z slots, so either may be the source.
                    let sources: &[usize] = if matrix == "X" { &[1] } else { &[0, 2] };
                    let det_zero = sources.iter().any(|&k| t[k].determinant().is_zero());
                    if !det_zero {
                        bad_refusal += 1;
                    }
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }
    let pass = verified == triples.len() && wrong == 0 && bad_refusal == 0;
    Outcome::new(
        pass,
        format!(
            "{verified}/5 base triples verify; {images} images verify ({wrong} wrong); \
             {refused} NotInvertible refusals ({bad_refusal} unjustified)"
        ),
    )
}

fn criterion6() -> Outcome {
    let p = SquareMatrix::flip(2);
    let (mut direct, mut conj, mut bridged, mut singular, mut total) = (0, 0, 0, 0, 0);
    for (_, r) in ybe_solutions() {
        total += 1;
        let qbg = |q: &SquareMatrix| verify(&SystemDef::qbg(), &roles([("Q", q.clone()), ("R", r.clone())])).unwrap().0;
        direct += qbg(&r) as usize;
        let Ok(inv) = r.inverse() else {
            singular += 1;
            continue;
        };
        let q = p.mul(&inv).unwrap().mul(&p).unwrap();
        conj += qbg(&q) as usize;
        let ok = [&r, &q].iter().all(|q| qbg_to_qdouble(q, &r).map(|t| qdouble_ok(&t)).unwrap_or(false));
        bridged += ok as usize;
    }
    let invertible = total - singular;
    let pass = direct == total && conj == invertible && bridged == invertible;
    Outcome::new(
        pass,
        format!(
            "(R,R) {direct}/{total}; (PR^-1P,R) {conj}/{invertible}; bridge triples verify {bridged}/{invertible}; \
             {singular} singular solutions skipped"
        ),
    )
}

fn criterion7() -> Outcome {
    let (result, took) = timed(|| {
        let a = catalog::get("A").unwrap().instantiate_colour(&Assignment::new()).unwrap();
        let aaa = ybc_colour(&a, &a, &a).unwrap().is_zero();
        let alt = ColourMatrix::standard(
            SquareMatrix::identity(4).scale(&(&Scalar::symbol("u") - &Scalar::symbol("v"))).add(&SquareMatrix::flip(2)).unwrap(),
        );
        let same = alt.base == a.base;
        let inv = spectral::investigate().unwrap();
        let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/spectral_investigation.txt"))
            .expect("golden file");
        let rendered = inv.render();
        let label = inv.correction().map(|c| c.label());
        let printed_solves = inv.candidates.iter().filter(|c| c.shift == 0).any(|c| c.solves());
        (aaa && same, rendered == golden, label, printed_solves)
    });
    let (aaa, golden, label, printed_solves) = result;
    let pass = aaa && golden && label.is_some() && took < CRIT7_LIMIT;
    let mut o = Outcome::new(
        pass,
        format!(
            "[[A,A,A]] = 0: {aaa}; printed D with any operator solves: {printed_solves}; correction: {}; \
             golden matches: {golden}; {took:.2?}",
            label.clone().unwrap_or_else(|| "none".into())
        ),
    );
    o.consistent = !printed_solves && label.as_deref() == Some("plus - P");
    o
}

/// Deterministic malformed expressions: fixed cases plus single-character
/// corruptions of valid catalog entries.
fn malformed_inputs() -> Vec<String> {
    let mut out: Vec<String> = [
        "", "+", "1+", "(1", "1)", "q^", "q^x", "q^1.5", "2**3", "a b", "1//2", "q^-", "()", "((q)", "q+*s", "#", "q$",
        "1/", "^2", "s^(1/2)", "@", "q^^2", "q-", "q,", "[q]",
    ]
    .iter()
    .map(|s| (*s).to_owned())
    .collect();
    let bad = ['*', ')', '^', '$', '/'];
    let mut k = 0;
    'outer: for m in catalog::catalog() {
        for src in m.sources.iter().flatten().filter(|s| s.len() > 2) {
            let pos = src.len() / 2 + k % 2;
            let mut s = src.clone();
            if !s.is_char_boundary(pos) {
                continue;
            }
            s.insert_str(pos, &format!("{0}{0}", bad[k % bad.len()]));
            k += 1;
            out.push(s);
            if out.len() >= MALFORMED {
                break 'outer;
            }
        }
    }
    out
}

fn criterion8() -> Outcome {
    let mut identical = 0;
    for m in catalog::catalog() {
        let text = write_matrix(m.symbolic(), m.colour, Some(&m.name));
        if let Ok(f) = parse_matrix(&text) {
            identical += (write_matrix(&f.matrix, f.colour, Some(&m.name)) == text) as usize;
        }
    }
    let inputs = malformed_inputs();
    let (mut positioned, mut crashed, mut accepted) = (0, 0, Vec::new());
    for s in &inputs {
        match panic::catch_unwind(AssertUnwindSafe(|| expr::parse_scalar(s))) {
            Err(_) => crashed += 1,
            Ok(Ok(_)) => accepted.push(s.clone()),
            Ok(Err(e)) => positioned += e.offset().is_some() as usize,
        }
    }
    let n = catalog::catalog().len();
    let pass = identical == n && inputs.len() == MALFORMED && positioned == MALFORMED && crashed == 0;
    Outcome::new(
        pass,
        format!(
            "{identical}/{n} entries re-export byte-identically; {positioned}/{} malformed inputs give positioned \
             errors; {crashed} crashes; accepted {accepted:?}",
            inputs.len()
        ),
    )
}

fn criterion9() -> Outcome {
    let mut equal = 0;
    for k in 0..ORACLE_TRIPLES {
        let [r, s, t] = [0, 1, 2].map(|j| random_matrix(4, 1000 + 3 * k + j));
        equal += (ybc_const(&r, &s, &t).unwrap() == ybc_oracle(&r, &s, &t)) as usize;
    }
    Outcome::new(equal == ORACLE_TRIPLES as usize, format!("{equal}/{ORACLE_TRIPLES} random triples agree exactly"))
}

fn main() {
    let criteria: [fn() -> Outcome; 9] =
        [criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8, criterion9];
    let mut surprises = Vec::new();
    for (k, c) in criteria.iter().enumerate() {
        let o = c();
        println!("criterion {}: {}  {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if o.pass != EXPECTED[k] || !o.consistent {
            surprises.push(k + 1);
        }
    }
    if !surprises.is_empty() {
        println!("outcome differs from the recorded analysis for criteria {surprises:?}");
        std::process::exit(1);
    }
}
