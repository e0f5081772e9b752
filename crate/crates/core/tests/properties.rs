//! Property tests for the exact-algebra substrate.

use flagjacobi_core::poly::{parse_poly, DivOutcome, MultiPoly};
use flagjacobi_core::qsqrt2::QSqrt2;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-99i64..100, 1i64..24).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn qsqrt2() -> impl Strategy<Value = QSqrt2> {
    (rational(), rational()).prop_map(|(a, b)| QSqrt2::new(a, b))
}

fn monomial() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..4, 6)
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((monomial(), qsqrt2()), 0..6).prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (exps, c) in terms {
            let mut mono = MultiPoly::constant(c);
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    mono = mono.mul(&MultiPoly::var(i));
                }
            }
            p = p.add(&mono);
        }
        p
    })
}

fn point() -> impl Strategy<Value = [QSqrt2; 6]> {
    proptest::collection::vec(qsqrt2(), 6).prop_map(|v| std::array::from_fn(|i| v[i].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_addition_associates(a in qsqrt2(), b in qsqrt2(), c in qsqrt2()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn field_multiplication_associates_and_distributes(
        a in qsqrt2(), b in qsqrt2(), c in qsqrt2()
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn field_inverses_round_trip(a in qsqrt2()) {
        prop_assume!(!a.is_zero());
        let inv = QSqrt2::one().checked_div(&a).unwrap();
        prop_assert_eq!(&a * &inv, QSqrt2::one());
    }

    #[test]
    fn qsqrt2_text_round_trips(a in qsqrt2()) {
        let s = a.to_string();
        let back: QSqrt2 = s.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn eval_is_multiplicative(p in poly(), q in poly(), x in point()) {
        let lhs = p.mul(&q).eval_exact(&x);
        let rhs = &p.eval_exact(&x) * &q.eval_exact(&x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divexact_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        match p.mul(&q).divexact(&q).unwrap() {
            DivOutcome::Exact(r) => prop_assert_eq!(r, p),
            DivOutcome::NotDivisible { .. } => prop_assert!(false, "p*q must divide by q"),
        }
    }

    #[test]
    fn poly_text_round_trips(p in poly()) {
        let s = p.to_string();
        let back = parse_poly(&s).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn float_eval_tracks_exact_eval(p in poly()) {
        // rational points with moderate magnitudes keep the comparison fair
        let x: [QSqrt2; 6] = std::array::from_fn(|i| QSqrt2::from_ratio(2 * i as i64 - 5, 7));
        let xf: [f64; 6] = std::array::from_fn(|i| (2.0 * i as f64 - 5.0) / 7.0);
        let exact = p.eval_exact(&x).to_f64();
        let float = p.eval_f64(&xf);
        let scale = p
            .terms()
            .map(|(_, c)| c.to_f64().abs())
            .fold(1.0f64, f64::max);
        prop_assert!((float - exact).abs() <= 1e-12 * scale.max(exact.abs()));
    }
}
