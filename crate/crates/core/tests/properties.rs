use mvsheaf_core::mcnaughton::{
    compile, pwl_equal, truncate, truncation_term, Compiler, LinearForm, RationalPolyhedron,
};
use mvsheaf_core::rational::{cap_one, ratio};
use mvsheaf_core::spectrum::{build_spectrum, congruent_mod, glue, glue_many};
use mvsheaf_core::term::parse;
use mvsheaf_core::{FiniteMvAlgebra, MvValue, Rational, Term};
use num_traits::Zero;
use proptest::prelude::*;

fn term(n: usize) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::one()),
        (0..n).prop_map(Term::var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::oplus(a, b)),
            inner.clone().prop_map(Term::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::odot(a, b)),
            (2u64..4, inner).prop_map(|(k, a)| Term::scalar(k, a)),
        ]
    })
}

fn unit(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|d| (0..=d).prop_map(move |k| ratio(k, d)))
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(unit(24), n)
}

fn algebra() -> impl Strategy<Value = FiniteMvAlgebra> {
    prop_oneof![
        (1usize..7).prop_map(|k| FiniteMvAlgebra::chain(k).unwrap()),
        (1usize..4, 1usize..4).prop_map(|(i, j)| {
            FiniteMvAlgebra::product(
                &FiniteMvAlgebra::chain(i).unwrap(),
                &FiniteMvAlgebra::chain(j).unwrap(),
            )
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn printed_terms_parse_back(t in term(2), p in point(2)) {
        let back = parse(&t.to_text()).unwrap();
        prop_assert_eq!(back.eval_unit(&p).unwrap(), t.eval_unit(&p).unwrap());
    }

    #[test]
    fn compiled_functions_evaluate_like_terms(t in term(2), ps in proptest::collection::vec(point(2), 8)) {
        let f = compile(&t, 2).unwrap();
        prop_assert!(f.check_invariants().is_ok());
        for p in &ps {
            prop_assert_eq!(f.eval(p).unwrap(), t.eval_unit(p).unwrap());
        }
    }

    #[test]
    fn pwl_equality_respects_de_morgan(s in term(2), t in term(2)) {
        let lhs = Term::neg(Term::oplus(s.clone(), t.clone()));
        let rhs = Term::odot(Term::neg(s), Term::neg(t));
        let mut k = Compiler::new(2).unwrap();
        let (f, g) = (k.compile(&lhs).unwrap(), k.compile(&rhs).unwrap());
        prop_assert!(pwl_equal(&f, &g).equal);
    }

    #[test]
    fn truncation_clamps(c in -3i64..4, a in -3i64..4, b in -3i64..4, p in point(2)) {
        let h = LinearForm::from_i64(c, &[a, b]);
        let direct = h.eval(&p);
        let expected = if direct < Rational::zero() { Rational::zero() } else { cap_one(direct) };
        prop_assert_eq!(truncate(&h, 2).eval(&p).unwrap(), expected.clone());
        prop_assert_eq!(truncation_term(&h).eval_unit(&p).unwrap(), expected);
    }

    #[test]
    fn split_halves_partition_membership(c in -3i64..4, a in -3i64..4, b in -3i64..4, p in point(2)) {
        let h = LinearForm::from_i64(c, &[a, b]);
        let (pos, neg) = RationalPolyhedron::unit_box(2).split(&h);
        let v = h.eval(&p);
        // halves are kept only when full-dimensional
        if let Some(q) = &pos {
            prop_assert_eq!(q.contains(&p), v >= Rational::zero());
        }
        if let Some(q) = &neg {
            prop_assert_eq!(q.contains(&p), v <= Rational::zero());
        }
        prop_assert!(pos.iter().chain(&neg).any(|q| q.contains(&p)));
    }

    #[test]
    fn glue_restricts_correctly(a in algebra(), seed in any::<[usize; 4]>()) {
        let m = a.size();
        let [a1, a2, b1, b2] = seed.map(|s| MvValue::new(s % m));
        match glue(&a, a1, a2, b1, b2) {
            Ok(b) => {
                prop_assert!(congruent_mod(&a, a1, b, b1));
                prop_assert!(congruent_mod(&a, a2, b, b2));
            }
            Err(_) => prop_assert!(!congruent_mod(&a, a.join(a1, a2), b1, b2)),
        }
    }

    #[test]
    fn sections_are_reconstructed_by_glue_many(a in algebra(), x in any::<usize>()) {
        let x = MvValue::new(x % a.size());
        let s = build_spectrum(&a).unwrap();
        let section = s.eta(x);
        prop_assert_eq!(glue_many(&a, &section.witness).unwrap(), x);
    }
}
