use proptest::prelude::*;

use super::*;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, 1i64..=4, prop_oneof![Just(0i64), -3i64..=3], 1i64..=3).prop_map(|(a, b, c, d)| {
        GaussianRational::ratio(a, b) + GaussianRational::ratio(c, d) * GaussianRational::i()
    })
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    let term = (gaussian(), -2i32..=2, -2i32..=2).prop_map(|(c, eq, es)| {
        Polynomial::term(c, Monomial::from_pairs([(Var::new("q"), eq), (Var::new("s"), es)]))
    });
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.iter().fold(Polynomial::zero(), |acc, t| acc.add(t)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        gaussian().prop_map(Scalar::Const),
        polynomial().prop_map(Scalar::from_polynomial),
        (polynomial(), polynomial()).prop_filter_map("zero denominator", |(n, d)| {
            RationalFunction::new(n, d).ok().map(Scalar::from_rational)
        }),
    ]
}

fn point() -> impl Strategy<Value = Assignment> {
    let nonzero = prop_oneof![-4i64..=-1, 1i64..=4];
    (nonzero.clone(), nonzero).prop_map(|(a, b)| Assignment::new().with("q", a).with("s", Scalar::ratio(b, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_associates(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((&a + &b) + c.clone(), a.clone() + (&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn add_then_sub_is_exact(a in scalar(), b in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equality_is_an_equivalence(a in scalar(), b in scalar(), c in scalar(), k in gaussian()) {
        prop_assert!(a == a);
        prop_assert_eq!(a == b, b == a);
        // A rescaled representative of the same class stays equal.
        if !k.is_zero() {
            if let Scalar::Rat(r) = &a {
                let num = r.numer().scale(&k);
                let den = r.denom().scale(&k);
                let twin = Scalar::Rat(RationalFunction::new(num, den).unwrap());
                prop_assert!(twin == a && a == twin);
            }
        }
        if a == b && b == c {
            prop_assert!(a == c);
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(a in scalar(), b in scalar(), at in point()) {
        let lhs = (&a * &b).substitute(&at);
        let ra = a.substitute(&at);
        let rb = b.substitute(&at);
        if let (Ok(l), Ok(x), Ok(y)) = (lhs, ra, rb) {
            prop_assert_eq!(l, &x * &y);
        }
    }

    #[test]
    fn double_inverse(a in scalar()) {
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, Scalar::one());
            prop_assert_eq!(inv.inv().unwrap(), a);
        }
    }
}
