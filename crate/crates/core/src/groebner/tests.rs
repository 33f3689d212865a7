use proptest::prelude::*;

use super::*;
use crate::exactpoly::{int, Monomial, MonomialOrder, PolyRing, Polynomial, SimpleOrder};

fn ring(names: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
    PolyRing::from_names(names.iter().copied(), order).unwrap()
}

fn strs(gb: &GroebnerBasis) -> Vec<String> {
    gb.basis().iter().map(|p| p.to_string()).collect()
}

#[test]
fn lex_example() {
    let r = ring(&["x", "y"], MonomialOrder::Lex);
    let i = Ideal::new(&r, vec![r.parse("x^2 - y").unwrap(), r.parse("y").unwrap()]).unwrap();
    let gb = groebner_basis(&i, &MonomialOrder::Lex, Caps::none());
    assert_eq!(strs(&gb), ["y", "x^2"]);
    assert!(gb.is_complete());
}

#[test]
fn normal_form_examples() {
    let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
    let p = |s: &str| r.parse(s).unwrap();
    let gb = groebner_basis(&Ideal::new(&r, vec![p("x")]).unwrap(), r.order(), Caps::none());
    assert!(gb.normal_form(&p("x^2")).unwrap().is_zero());
    let gb = groebner_basis(&Ideal::new(&r, vec![p("x^2 - y")]).unwrap(), r.order(), Caps::none());
    assert_eq!(gb.normal_form(&p("x^2 + y")).unwrap(), p("2*y"));
}

#[test]
fn twisted_cubic() {
    let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
    let p = |s: &str| r.parse(s).unwrap();
    let i = Ideal::new(&r, vec![p("y - x^2"), p("z - x^3")]).unwrap();
    let e = eliminate(&i, &["x"], ElimOptions::default()).unwrap();
    let rr = e.ring().clone();
    let gb = groebner_basis(&e, rr.order(), Caps::none());
    assert!(gb.contains(&rr.parse("z^2 - y^3").unwrap()).unwrap());
    assert_eq!(e.gens().len(), 1);
    let same = eliminate(&i, &[], ElimOptions::default()).unwrap();
    let g1 = groebner_basis(&same, same.ring().order(), Caps::none());
    let g0 = groebner_basis(&i, &MonomialOrder::DegRevLex, Caps::none());
    assert!(g0.same_basis(&g1));
}

#[test]
fn kernel_and_membership() {
    let r = ring(&["x"], MonomialOrder::DegRevLex);
    let x = r.var("x").unwrap();
    let k = ring_map_kernel(
        &[("t1".into(), x.clone()), ("t2".into(), x.pow(2))],
        &Ideal::zero(&r),
        ElimOptions::default(),
    )
    .unwrap();
    let strs: Vec<String> = k.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(strs, ["t1^2 - t2"]);
    let m = subalgebra_member(&x.pow(2), &[x.clone()], &Ideal::zero(&r), ElimOptions::default()).unwrap();
    match m {
        Membership::Yes { witness } => assert_eq!(witness.to_string(), "t1^2"),
        Membership::No => panic!("x^2 is in Q[x]"),
    }
    let m = subalgebra_member(&x, &[x.pow(2)], &Ideal::zero(&r), ElimOptions::default()).unwrap();
    assert!(!m.is_member());
}

#[test]
fn plucker_relation_is_the_kernel() {
    let names = ["x1", "x2", "y1", "y2", "z1", "z2", "w1", "w2"];
    let r = ring(&names, MonomialOrder::DegRevLex);
    let psi = crate::exactpoly::PolyMatrix::new(4, 2, r.gens());
    let minors = psi.minors(2).unwrap();
    let tags = ["p12", "p13", "p14", "p23", "p24", "p34"];
    let images: Vec<(String, Polynomial)> =
        tags.iter().map(|t| t.to_string()).zip(minors).collect();
    let k = ring_map_kernel(&images, &Ideal::zero(&r), ElimOptions::default()).unwrap();
    assert_eq!(k.gens().len(), 1);
    let expect = k.ring().parse("p12*p34 - p13*p24 + p14*p23").unwrap();
    assert_eq!(k.gens()[0], expect.monic());
}

#[test]
fn degree_cap_marks_output() {
    let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
    let p = |s: &str| r.parse(s).unwrap();
    let i = Ideal::new(&r, vec![p("x*y - z^2"), p("x^2 - y*z"), p("y^3 - x*z^2")]).unwrap();
    let full = groebner_basis(&i, r.order(), Caps::none());
    let capped = groebner_basis(&i, r.order(), Caps::degree(2));
    assert_eq!(capped.status(), GbStatus::Capped { degree_reached: 2 });
    assert!(capped.normal_form(&p("x^3*y")).is_err());
    assert!(capped.contains(&p("x*y - z^2")).unwrap());
    assert!(full.is_complete());
    assert!(matches!(
        eliminate_capped(&i),
        Err(GbError::Capped { .. })
    ));
}

fn eliminate_capped(i: &Ideal) -> Result<Ideal, GbError> {
    eliminate(
        i,
        &["x"],
        ElimOptions {
            caps: Caps::degree(1),
            prefix: SimpleOrder::Lex,
        },
    )
}

#[test]
fn intersection_of_coordinate_ideals() {
    let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
    let p = |s: &str| r.parse(s).unwrap();
    let a = Ideal::new(&r, vec![p("x")]).unwrap();
    let b = Ideal::new(&r, vec![p("y")]).unwrap();
    let c = intersect(&a, &b, ElimOptions::default()).unwrap();
    let s: Vec<String> = c.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(s, ["x*y"]);
}

#[test]
fn graded_kernel_of_squares() {
    let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
    let p = |s: &str| r.parse(s).unwrap();
    let gens = WeightedGenerators {
        names: vec!["a".into(), "b".into(), "c".into()],
        polys: vec![p("x^2"), p("x*y"), p("y^2")],
        weights: vec![vec![1], vec![1], vec![1]],
        chi: vec![1],
    };
    let gb = groebner_basis(&Ideal::zero(&r), r.order(), Caps::none());
    let k = graded_kernel_upto(&gens, 3, &gb).unwrap();
    assert!(k.piece(1).unwrap().relations.is_empty());
    let two = k.piece(2).unwrap();
    assert_eq!(two.image_rank, 5);
    assert_eq!(two.new_relations.len(), 1);
    let three = k.piece(3).unwrap();
    assert_eq!(three.relations.len(), 3);
    assert!(three.new_relations.is_empty());
    assert_eq!(k.minimal_relations()[0].to_string(), "b^2 - a*c");
}

fn arb_ideal() -> impl Strategy<Value = Vec<Vec<((u16, u16, u16), i64)>>> {
    prop::collection::vec(prop::collection::vec(((0u16..3, 0u16..3, 0u16..3), -3i64..4), 1..4), 1..4)
}

fn build(r: &Arc<PolyRing>, spec: &[Vec<((u16, u16, u16), i64)>]) -> Vec<Polynomial> {
    spec.iter()
        .map(|ts| {
            Polynomial::from_terms(
                r,
                ts.iter()
                    .map(|&((a, b, c), k)| (Monomial::from_exps(vec![a, b, c]), int(k)))
                    .collect(),
            )
        })
        .collect()
}

fn spoly_reduces_to_zero(gb: &GroebnerBasis) -> bool {
    let b = gb.basis();
    let one = int(1);
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let (li, lj) = (b[i].leading_monomial().unwrap(), b[j].leading_monomial().unwrap());
            let l = li.lcm(lj);
            let s = &b[i].mul_term(&li.quotient_of(&l).unwrap(), &one)
                - &b[j].mul_term(&lj.quotient_of(&l).unwrap(), &one);
            if !gb.normal_form(&s).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

fn is_reduced(gb: &GroebnerBasis) -> bool {
    let b = gb.basis();
    b.iter().enumerate().all(|(i, g)| {
        g.leading_coeff() == Some(&int(1))
            && b.iter().enumerate().all(|(j, h)| {
                i == j
                    || g.terms()
                        .iter()
                        .all(|(m, _)| !h.leading_monomial().unwrap().divides(m))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_properties(spec in arb_ideal(), mults in prop::collection::vec(((0u16..2, 0u16..2, 0u16..2), -2i64..3), 1..4)) {
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::elimination(1)] {
            let r = ring(&["x", "y", "z"], order.clone());
            let gens = build(&r, &spec);
            let ideal = Ideal::new(&r, gens.clone()).unwrap();
            let gb = groebner_basis(&ideal, &order, Caps::none());
            prop_assert!(gb.is_complete());
            prop_assert!(spoly_reduces_to_zero(&gb));
            prop_assert!(is_reduced(&gb));
            let mut rev = gens.clone();
            rev.reverse();
            let gb2 = groebner_basis(&Ideal::new(&r, rev).unwrap(), &order, Caps::none());
            prop_assert!(gb.same_basis(&gb2));
            let mut comb = Polynomial::zero(&r);
            for (g, &((a, b, c), k)) in gens.iter().zip(mults.iter().cycle()) {
                comb = &comb + &g.mul_term(&Monomial::from_exps(vec![a, b, c]), &int(k));
            }
            prop_assert!(gb.contains(&comb).unwrap());
            for g in &gens {
                prop_assert!(gb.contains(g).unwrap());
            }
        }
    }

    #[test]
    fn elimination_properties(spec in arb_ideal()) {
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let ideal = Ideal::new(&r, build(&r, &spec)).unwrap();
        let gb = groebner_basis(&ideal, r.order(), Caps::none());
        let e = eliminate(&ideal, &["x"], ElimOptions::default()).unwrap();
        for g in e.gens() {
            prop_assert!(!g.ring().vars().names().iter().any(|n| n == "x"));
            prop_assert!(gb.contains(g).unwrap());
        }
    }
}
