use std::sync::Arc;

use proptest::prelude::*;

use super::*;

fn ring() -> Arc<PolyRing> {
    PolyRing::from_names(["x1", "x2", "y1"], MonomialOrder::DegRevLex).unwrap()
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..3), -5i64..6, 1i64..4), 0..6).prop_map(|ts| {
        let r = ring();
        let terms = ts
            .into_iter()
            .map(|((a, b, c), n, d)| (Monomial::from_exps(vec![a, b, c]), rat(n, d)))
            .collect();
        Polynomial::from_terms(&r, terms)
    })
}

fn arb_point() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-4i64..5).prop_map(int), 3)
}

fn same(a: &Polynomial, b: &Polynomial) -> bool {
    a.terms() == b.terms()
}

proptest! {
    #[test]
    fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        prop_assert!(same(&(&f + &g), &(&g + &f)));
        prop_assert!(same(&(&f * &g), &(&g * &f)));
        prop_assert!(same(&(&(&f * &g) * &h), &(&f * &(&g * &h))));
        prop_assert!(same(&(&f * &(&g + &h)), &(&(&f * &g) + &(&f * &h))));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn terms_stay_sorted(f in arb_poly(), g in arb_poly()) {
        let p = &f * &g;
        let ord = p.ring().order().clone();
        for w in p.terms().windows(2) {
            prop_assert_eq!(ord.cmp(&w[0].0, &w[1].0), std::cmp::Ordering::Greater);
        }
        prop_assert!(p.terms().iter().all(|(_, c)| !num_traits::Zero::is_zero(c)));
    }

    #[test]
    fn eval_is_a_homomorphism(f in arb_poly(), g in arb_poly(), pt in arb_point()) {
        prop_assert_eq!((&f * &g).eval(&pt), f.eval(&pt) * g.eval(&pt));
        prop_assert_eq!((&f + &g).eval(&pt), f.eval(&pt) + g.eval(&pt));
    }

    #[test]
    fn display_parses_back(f in arb_poly()) {
        let r = ring();
        let back = r.parse(&f.to_string()).unwrap();
        prop_assert!(same(&back, &f));
    }

    #[test]
    fn derivative_leibniz(f in arb_poly(), g in arb_poly(), v in 0usize..3) {
        let lhs = (&f * &g).derivative(v);
        let rhs = &(&f.derivative(v) * &g) + &(&f * &g.derivative(v));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn binary_gcd_divides(a in prop::collection::vec(-3i64..4, 1..4),
                          b in prop::collection::vec(-3i64..4, 1..4),
                          c in prop::collection::vec(-3i64..4, 1..3)) {
        let r = binary_ring();
        let form = |cs: &[i64]| {
            let d = cs.len() as u16 - 1;
            let terms = cs.iter().enumerate()
                .map(|(k, &v)| (Monomial::from_exps(vec![k as u16, d - k as u16]), int(v)))
                .collect();
            Polynomial::from_terms(&r, terms)
        };
        let common = form(&c);
        prop_assume!(!common.is_zero());
        let f = &form(&a) * &common;
        let g = &form(&b) * &common;
        prop_assume!(!f.is_zero() || !g.is_zero());
        let d = binary_form_gcd(&[f.clone(), g.clone()], 0, 1).unwrap();
        // common factor divides the gcd; checked at several points through the degree
        let dd = d.total_degree().unwrap();
        prop_assert!(dd >= common.total_degree().unwrap());
        for p in [&f, &g] {
            if p.is_zero() { continue; }
            prop_assert!(divides_binary(&d, p));
        }
    }
}

/// Exact division test for binary forms by dehomogenized long division.
fn divides_binary(d: &Polynomial, p: &Polynomial) -> bool {
    let mut rem = p.clone();
    let ld = d.leading_term().unwrap().clone();
    while let Some((m, c)) = rem.leading_term().cloned() {
        let Some(q) = ld.0.quotient_of(&m) else { return false };
        let coef = c / &ld.1;
        rem = &rem - &d.mul_term(&q, &coef);
    }
    true
}
