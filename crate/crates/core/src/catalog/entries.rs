use std::collections::BTreeSet;

use crate::expr;
use crate::scalar::{Assignment, Var};
use crate::tensor::SquareMatrix;

use super::{Constraint, ConstraintSet, NamedMatrix, YbeStatus};

pub(super) struct Def {
    name: &'static str,
    rows: &'static [&'static str],
    colour: bool,
    /// `(expression, label)` with the expression required to vanish.
    eqs: &'static [(&'static str, &'static str)],
    /// Expressions required nonzero.
    neqs: &'static [&'static str],
    defaults: &'static [(&'static str, &'static str)],
    branches: &'static [&'static [(&'static str, &'static str)]],
    ybe: Ybe,
    note: &'static str,
}

#[derive(Clone, Copy)]
enum Ybe {
    No,
    Yes,
    Only(&'static [usize]),
}

const T_BRANCH: (&str, &str) = ("(t-q)*(t+q^-1)", "t = q or t = -q^-1");
const T_BRANCHES: &[&[(&str, &str)]] = &[&[("t", "q")], &[("t", "-q^-1")]];
const ONE: &[&[(&str, &str)]] = &[&[]];
const EPS: &[&[(&str, &str)]] = &[&[("eps", "1")], &[("eps", "-1")]];
const EPS_SQ: (&str, &str) = ("eps^2-1", "eps^2 = 1");

const fn def(name: &'static str, rows: &'static [&'static str]) -> Def {
    Def {
        name,
        rows,
        colour: false,
        eqs: &[],
        neqs: &[],
        defaults: &[],
        branches: ONE,
        ybe: Ybe::No,
        note: "",
    }
}

pub(super) const DEFS: &[Def] = &[
    Def {
        eqs: &[T_BRANCH],
        neqs: &["q", "s", "q^2-1"],
        defaults: &[("q", "2"), ("s", "3")],
        branches: T_BRANCHES,
        ybe: Ybe::Yes,
        note: "Standard (t = q) or nonstandard (t = -q^-1) solution W_{q,s}.",
        ..def("W", &["q, 0, 0, 0", "0, s^-1, 0, 0", "0, q-q^-1, s, 0", "0, 0, 0, t"])
    },
    Def {
        neqs: &["a", "b"],
        defaults: &[("a", "1"), ("b", "2"), ("c", "1"), ("d", "1")],
        note: "Solves [W,X,X] = 0 for any q, s.",
        ..def("X1", &["a, 0, 0, 0", "c, a, 0, 0", "0, 0, b, 0", "0, 0, d, b"])
    },
    Def {
        eqs: &[T_BRANCH],
        neqs: &["q", "s", "b", "q^2-1"],
        defaults: &[("q", "2"), ("s", "3"), ("a", "1"), ("b", "2")],
        branches: T_BRANCHES,
        note: "Solves [W,X,X] = 0; shares q, s, t with W.",
        ..def("X2", &["q, 0, 0, 0", "0, s^-1, 0, 0", "0, a, b, 0", "0, 0, 0, b/s*t"])
    },
    Def {
        ybe: Ybe::Yes,
        neqs: &["a", "b", "c", "d"],
        defaults: &[("a", "1"), ("b", "2"), ("c", "3"), ("d", "5")],
        note: "Diagonal solution of [W,X,X] = 0; every six-vertex Z solves [X,X,Z] = 0.",
        ..def("X3", &["a, 0, 0, 0", "0, b, 0, 0", "0, 0, c, 0", "0, 0, 0, d"])
    },
    Def {
        ybe: Ybe::Yes,
        neqs: &["a", "b"],
        defaults: &[("a", "1"), ("b", "2")],
        note: "diag(a,-a,b,b) from the Conclusions list; pairs with eight-vertex Z.",
        ..def("X3_8v", &["a, 0, 0, 0", "0, -a, 0, 0", "0, 0, b, 0", "0, 0, 0, b"])
    },
    Def {
        ybe: Ybe::Yes,
        neqs: &["a", "c"],
        defaults: &[("a", "2"), ("c", "3")],
        note: "X3 with a = b, c = -d as stated in the running text; pairs with eight-vertex Z.",
        ..def("X3_8v_alt", &["a, 0, 0, 0", "0, a, 0, 0", "0, 0, c, 0", "0, 0, 0, -c"])
    },
    Def {
        ybe: Ybe::Yes,
        neqs: &["a", "c"],
        defaults: &[("a", "2"), ("c", "3")],
        note: "X3 with a = b, c = d: any Yang-Baxter solution Z completes (W, X, Z).",
        ..def("X3_ybe", &["a, 0, 0, 0", "0, a, 0, 0", "0, 0, c, 0", "0, 0, 0, c"])
    },
    Def {
        eqs: &[T_BRANCH, ("s^2-1", "s^2 = 1")],
        neqs: &["q", "b", "q^2-1"],
        defaults: &[("q", "2"), ("a", "1"), ("b", "2"), ("c", "1")],
        branches: &[
            &[("t", "q"), ("s", "1")],
            &[("t", "q"), ("s", "-1")],
            &[("t", "-q^-1"), ("s", "1")],
            &[("t", "-q^-1"), ("s", "-1")],
        ],
        note: "Special solution of [W,X,X] = 0 for s^2 = 1.",
        ..def("X4", &["q, 0, 0, c", "0, s^-1, 0, 0", "0, a, b, 0", "0, 0, 0, b/s*t"])
    },
    Def {
        neqs: &["a", "c"],
        defaults: &[("a", "1"), ("b", "2"), ("c", "3")],
        note: "Special solution of [W,X,X] = 0 for q = -s = i.",
        ..def("X5", &["a, 0, 0, b", "0, -a, b, 0", "0, 0, c, 0", "0, 0, 0, c"])
    },
    Def {
        neqs: &["a", "b", "c"],
        defaults: &[("a", "1"), ("b", "1"), ("c", "1")],
        note: "Special solution of [W,X,X] = 0 for q = i, s = 1; entry 2iab/c taken verbatim.",
        ..def("X6", &["0, 0, i*a, 0", "2*i*a*b/c, 0, 0, a", "i*b, 0, 0, c", "0, b, 0, 0"])
    },
    Def {
        ybe: Ybe::Yes,
        note: "Permutation matrix.",
        ..def("P", &["1, 0, 0, 0", "0, 0, 1, 0", "0, 1, 0, 0", "0, 0, 0, 1"])
    },
    Def {
        ybe: Ybe::Yes,
        note: "Identity; X = 1 pairs any two Yang-Baxter solutions W, Z.",
        ..def("Id", &["1, 0, 0, 0", "0, 1, 0, 0", "0, 0, 1, 0", "0, 0, 0, 1"])
    },
    Def {
        defaults: &[("x", "1"), ("y", "2"), ("z", "3")],
        ybe: Ybe::Yes,
        note: "Completes (W, X1, Z). The Conclusions call this pair Z11, Z12; the displayed labels are Z10, Z11.",
        ..def("Z10", &["1, 0, 0, 0", "x, 1, 0, 0", "y, 0, 1, 0", "z, y, x, 1"])
    },
    Def {
        defaults: &[("x", "1"), ("y", "2")],
        ybe: Ybe::Yes,
        note: "Completes (W, X1, Z); listed as Z12 in the Conclusions.",
        ..def("Z11", &["1, 0, 0, 0", "x, 1, 0, 0", "-x, 0, 1, 0", "-x*y, -y, y, 1"])
    },
    Def {
        eqs: &[T_BRANCH],
        neqs: &["q", "b", "q^2-1"],
        defaults: &[("q", "2"), ("b", "2")],
        branches: T_BRANCHES,
        ybe: Ybe::Yes,
        note: "Completes (W, X2, Z); shares q, t with W and b with X2.",
        ..def("Z20", &["q, 0, 0, 0", "0, b^-1, 0, 0", "0, q-q^-1, b, 0", "0, 0, 0, t"])
    },
    Def {
        eqs: &[("q^2+1", "q^2 = -1"), ("delta*(b^2+1)", "delta = 0 if b^2 != -1")],
        neqs: &["r", "b"],
        defaults: &[("r", "2"), ("b", "3"), ("delta", "1")],
        branches: &[&[("q", "i"), ("delta", "0")], &[("q", "i"), ("b", "i")]],
        ybe: Ybe::Yes,
        note: "Completes (W, X2, Z) at q^2 = -1. With delta != 0 the triple also needs s^2 = -1.",
        ..def("Z21", &["q, 0, 0, delta", "0, r, 0, 0", "0, q-r*b*q^-1, b, 0", "0, 0, 0, -r*b*q^-1"])
    },
    Def {
        neqs: &["p", "r", "x", "y"],
        defaults: &[("p", "2"), ("r", "3"), ("x", "5"), ("y", "7")],
        ybe: Ybe::Yes,
        note: "Diagonal completion of (W, X3, Z).",
        ..def("Z30", &["p, 0, 0, 0", "0, r, 0, 0", "0, 0, x, 0", "0, 0, 0, y"])
    },
    Def {
        neqs: &["p", "r"],
        defaults: &[("p", "2"), ("r", "3")],
        ybe: Ybe::Yes,
        note: "Standard six-vertex completion of (W, X3, Z).",
        ..def("Z31", &["p, 0, 0, 0", "0, r^-1, 0, 0", "0, p-p^-1, r, 0", "0, 0, 0, p"])
    },
    Def {
        neqs: &["p", "r"],
        defaults: &[("p", "2"), ("r", "3")],
        ybe: Ybe::Yes,
        note: "Nonstandard six-vertex completion of (W, X3, Z).",
        ..def("Z32", &["p, 0, 0, 0", "0, r^-1, 0, 0", "0, p-p^-1, r, 0", "0, 0, 0, -p^-1"])
    },
    Def {
        eqs: &[EPS_SQ],
        neqs: &["x", "y"],
        defaults: &[("x", "1"), ("y", "2")],
        branches: EPS,
        ybe: Ybe::Yes,
        note: "Eight-vertex matrices with middle diagonal +-x.",
        ..def("Z8V", &["x, 0, 0, y", "0, eps*x, y, 0", "0, y, eps*x, 0", "y, 0, 0, x"])
    },
    Def {
        eqs: &[("b^2-1", "b^2 = 1")],
        neqs: &["p"],
        defaults: &[("p", "2"), ("a", "1"), ("c", "1")],
        branches: &[&[("b", "1")], &[("b", "-1")]],
        ybe: Ybe::Yes,
        note: "As printed. Fails [X4,X4,Z] on every branch; see Z41_corrected.",
        ..def("Z41", &["p, 0, 0, a*c/2*(p+p^-1)", "0, b*p^-1, 0, 0", "0, p-p^-1, b*p, 0", "0, 0, 0, -p^-1"])
    },
    Def {
        eqs: &[("b^2+1", "b^2 = -1")],
        neqs: &["p"],
        defaults: &[("p", "2"), ("a", "1"), ("c", "1")],
        branches: &[&[("b", "i")], &[("b", "-i")]],
        ybe: Ybe::Yes,
        note: "Z41 re-derived from the nullspace of [X4,X4,Z] at q = i: b is X4's b with b^2 = -1, and the corner sign is flipped.",
        ..def(
            "Z41_corrected",
            &["p, 0, 0, -a*c/2*(p+p^-1)", "0, -i*b*p^-1, 0, 0", "0, p-p^-1, -i*b*p, 0", "0, 0, 0, -p^-1"],
        )
    },
    Def {
        eqs: &[EPS_SQ],
        branches: EPS,
        ybe: Ybe::Yes,
        note: "Completes (W_{i,-i}, X5, Z) only for eps = -1.",
        ..def("Z51", &["1, 0, 0, 1", "0, eps, 1, 0", "0, 1, -eps, 0", "-1, 0, 0, 1"])
    },
    Def {
        neqs: &["k"],
        defaults: &[("k", "3")],
        ybe: Ybe::Yes,
        note: "Completes (W_{i,-i}, X5, Z) with k = c/a.",
        ..def(
            "Z52",
            &[
                "k-k^-1+2, 0, 0, k-k^-1",
                "0, k+k^-1, k-k^-1, 0",
                "0, k-k^-1, k+k^-1, 0",
                "k-k^-1, 0, 0, k-k^-1-2",
            ],
        )
    },
    Def {
        eqs: &[EPS_SQ],
        neqs: &["k"],
        defaults: &[("k", "3")],
        branches: EPS,
        ybe: Ybe::Only(&[0]),
        note: "Completes (W_{i,-i}, X5, Z) with k = c/a only for eps = 1; eps = -1 fails the Yang-Baxter equation.",
        ..def("Z53", &["k, 0, 0, 0", "0, eps*k, 0, 0", "0, k-1, 1, 0", "eps*(k-1), 0, 0, -1"])
    },
    Def {
        neqs: &["k"],
        defaults: &[("k", "3")],
        ybe: Ybe::Yes,
        note: "Completes (W_{i,-i}, X5, Z) with k = c/a.",
        ..def("Z54", &["k, 0, 0, 0", "0, 1, 0, 0", "0, k-k^-1, 1, 0", "0, 0, 0, -k^-1"])
    },
    Def {
        ybe: Ybe::Yes,
        note: "Exceptional R of the braided-group system.",
        ..def("Rexc1", &["1, 0, 0, 0", "0, 1, 0, 0", "0, 0, 1, 0", "1, 0, 0, -1"])
    },
    Def {
        neqs: &["t"],
        defaults: &[("t", "2")],
        ybe: Ybe::Yes,
        note: "Exceptional R of the braided-group system.",
        ..def("Rexc2", &["0, 0, 0, 1", "0, 0, t, 0", "0, t, 0, 0", "1, 0, 0, 0"])
    },
    Def {
        defaults: &[("x", "1"), ("y", "2"), ("z", "3")],
        ybe: Ybe::Yes,
        note: "Exceptional R of the braided-group system.",
        ..def("Rexc3", &["1, 0, 0, 0", "x, 1, 0, 0", "y, 0, 1, 0", "z, y, x, 1"])
    },
    Def {
        neqs: &["a", "b", "c", "d"],
        defaults: &[("a", "2"), ("b", "3"), ("c", "5"), ("d", "7")],
        ybe: Ybe::Yes,
        note: "Exceptional diagonal R of the braided-group system.",
        ..def("Rdiag", &["a, 0, 0, 0", "0, b, 0, 0", "0, 0, c, 0", "0, 0, 0, d"])
    },
    Def {
        colour: true,
        ybe: Ybe::Yes,
        note: "Rational solution (u-v)1 + P.",
        ..def("A", &["u-v+1, 0, 0, 0", "0, u-v, 1, 0", "0, 1, u-v, 0", "0, 0, 0, u-v+1"])
    },
    Def {
        colour: true,
        note: "B = C^dagger = u1 + sigma_+ (x) sigma_-.",
        ..def("B", &["u, 0, 0, 0", "0, u, 1, 0", "0, 0, u, 0", "0, 0, 0, u"])
    },
    Def {
        colour: true,
        note: "C = v1 + sigma_- (x) sigma_+.",
        ..def("C", &["v, 0, 0, 0", "0, v, 0, 0", "0, 1, v, 0", "0, 0, 0, v"])
    },
    Def {
        colour: true,
        note: "Printed D read with '+' between its last two terms. Fails [[D,D,D]]; see D_corrected.",
        ..def("D", &["u-v, 0, 0, 0", "0, u-v, 1-v/u, 0", "0, 1-u/v, u-v, 0", "0, 0, 0, u-v"])
    },
    Def {
        colour: true,
        ybe: Ybe::Yes,
        note: "D minus P: the reading under which all eight spectral equations vanish.",
        ..def("D_corrected", &["u-v-1, 0, 0, 0", "0, u-v, -v/u, 0", "0, -u/v, u-v, 0", "0, 0, 0, u-v-1"])
    },
];

fn parse(src: &str) -> crate::scalar::Scalar {
    expr::parse_scalar(src).unwrap_or_else(|e| panic!("catalog expression '{src}': {e}"))
}

fn assignment(pairs: &[(&str, &str)]) -> Assignment {
    pairs.iter().map(|(k, v)| (Var::new(k), parse(v))).collect()
}

pub(super) fn build(d: &Def) -> NamedMatrix {
    let sources: Vec<Vec<String>> =
        d.rows.iter().map(|r| r.split(',').map(|c| c.trim().to_owned()).collect()).collect();
    let asts: Vec<Vec<_>> = sources
        .iter()
        .map(|r| r.iter().map(|c| expr::parse(c).unwrap_or_else(|e| panic!("{}: '{c}': {e}", d.name))).collect())
        .collect();
    let symbolic = SquareMatrix::from_rows(
        asts.iter().map(|r| r.iter().map(|a| expr::eval(a).expect("catalog entry evaluates")).collect()).collect(),
    )
    .expect("square catalog entry");
    let constraints = ConstraintSet {
        equalities: d.eqs.iter().map(|(e, l)| Constraint { label: (*l).to_owned(), expr: parse(e) }).collect(),
        inequations: d.neqs.iter().map(|e| Constraint { label: format!("{e} != 0"), expr: parse(e) }).collect(),
    };
    let colour = d.colour.then(|| (Var::new("u"), Var::new("v")));
    let mut params: BTreeSet<Var> = symbolic.vars();
    params.extend(constraints.vars());
    if let Some((u, v)) = colour {
        params.remove(&u);
        params.remove(&v);
    }
    let ybe = match d.ybe {
        Ybe::No => YbeStatus::No,
        Ybe::Yes => YbeStatus::Yes,
        Ybe::Only(b) => YbeStatus::Branches(b.to_vec()),
    };
    NamedMatrix {
        name: d.name.to_owned(),
        params: params.into_iter().collect(),
        colour,
        constraints,
        sources,
        asts,
        symbolic,
        defaults: assignment(d.defaults),
        branches: d.branches.iter().map(|b| assignment(b)).collect(),
        ybe,
        note: d.note.to_owned(),
    }
}
