use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::exactpoly::MonomialOrder;
use crate::gitmodel::{build_problem, SliceSampler};
use crate::invariants::case_generators;

fn gens(s: &str) -> CaseGenerators {
    let p = Arc::new(build_problem(&CycleType::parse(s).unwrap()).unwrap());
    case_generators(&p).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// Two lists of polynomials generate the same ideal of `ring`.
fn same_ideal(a: &[Polynomial], b: &[Polynomial], ring: &Arc<PolyRing>) -> bool {
    ideals_equal(a, b, ring).unwrap().0
}

#[test]
fn stated_relations_vanish_on_the_slice() {
    for c in CycleType::length_four() {
        let g = gens(&c.csv());
        for set in [TagSet::Generators, TagSet::Homogeneous] {
            let tags = tag_system(&g, set).unwrap();
            for f in stated_relations(&g, set).unwrap() {
                assert!(on_slice(&g, &tags, &f).unwrap().is_zero(), "{c} {f}");
            }
        }
    }
}

#[test]
fn a_false_relation_is_detected() {
    let g = gens("1,1,2");
    let tags = tag_system(&g, TagSet::Generators).unwrap();
    let f = tags.tag_ring().unwrap().parse("xi_5^2 - xi_4*xi_8").unwrap();
    assert!(!on_slice(&g, &tags, &f).unwrap().is_zero());
}

#[test]
fn four_points_by_degree() {
    let g = gens("1,1,1,1");
    let (p, k) = relations_upto_degree(&g, TagSet::Homogeneous, 3).unwrap();
    assert_eq!(p.relation_strings(), ["u_0 - u_1 + u_2"]);
    // Degree n relations are the multiples of the linear one.
    for n in 1..=3u32 {
        assert_eq!(k.piece(n).unwrap().relations.len(), binomial(n as usize + 1, 2));
    }
    assert_eq!(hilbert_values(&p, 3).unwrap(), [1, 2, 3, 4]);
    assert!(matches!(
        relations_upto_degree(&g, TagSet::Homogeneous, 1),
        Err(PresentationError::DegreeTooSmall(1))
    ));
}

#[test]
fn two_double_points_by_degree() {
    let g = gens("2,2");
    let (p, k) = relations_upto_degree(&g, TagSet::Homogeneous, 3).unwrap();
    assert_eq!(p.relations.len(), 1);
    let q = p.tag_ring.parse("u_1*u_4 - u_2*u_3").unwrap();
    assert_eq!(p.relations[0].monic(), q.monic());
    assert_eq!(k.piece(2).unwrap().relations.len(), 1);
    assert_eq!(k.piece(3).unwrap().relations.len(), 5);
    // 15 quadratic monomials in five variables minus the single relation.
    assert_eq!(hilbert_values(&p, 2).unwrap(), [1, 5, binomial(6, 2) - 1]);
    assert!(matches!(
        hilbert_values(&p, 4),
        Err(PresentationError::InsufficientDegree { have: 3, need: 4 })
    ));
}

#[test]
fn double_point_ring_is_free() {
    let g = gens("1,1,2");
    let p = full_kernel(&g, TagSet::Homogeneous, KernelOptions::default()).unwrap();
    assert!(p.relations.is_empty());
    let h = hilbert_values(&p, 3).unwrap();
    let oracle: Vec<usize> = (0..=3).map(|n| binomial(n + 2, 2)).collect();
    assert_eq!(h, oracle);
    assert_eq!(h, [1, 3, 6, 10]);
}

#[test]
fn full_kernels_match_the_stated_ideals() {
    for case in ["1,1,1,1", "1,1,2", "2,2", "1,3"] {
        let g = gens(case);
        let p = full_kernel(&g, TagSet::Generators, KernelOptions::default()).unwrap();
        let stated = stated_relations(&g, TagSet::Generators).unwrap();
        assert!(same_ideal(&p.relations, &stated, &p.tag_ring), "{case}: {:?}", p.relation_strings());
        assert_eq!(p.status, Completeness::Full);
    }
    let g = gens("1,1,1,1");
    let p = full_kernel(&g, TagSet::Homogeneous, KernelOptions::default()).unwrap();
    assert_eq!(p.relation_strings(), ["u_0 - u_1 + u_2"]);
    let g = gens("1,3");
    let p = full_kernel(&g, TagSet::Generators, KernelOptions::default()).unwrap();
    assert_eq!(p.relation_strings(), ["xi_4^2 - xi_3*xi_5"]);
}

#[test]
fn double_point_relations_need_all_six() {
    let g = gens("1,1,2");
    let p = full_kernel(&g, TagSet::Generators, KernelOptions::default()).unwrap();
    let stated = stated_relations(&g, TagSet::Generators).unwrap();
    for skip in 0..stated.len() {
        let fewer: Vec<Polynomial> = stated
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, f)| f.clone())
            .collect();
        assert!(!same_ideal(&p.relations, &fewer, &p.tag_ring));
    }
}

#[test]
fn quadruple_elimination_needs_override() {
    let g = gens("4");
    let r = full_kernel(&g, TagSet::Homogeneous, KernelOptions::default());
    assert!(matches!(r, Err(PresentationError::RequiresOverride(_))));
    let opts = KernelOptions {
        caps: Caps::none(),
        unsafe_full_elimination: true,
    };
    assert!(matches!(
        full_kernel(&g, TagSet::Homogeneous, opts),
        Err(PresentationError::RequiresOverride(_))
    ));
}

/// Kernel dimension of the degree-two tag monomials by evaluation at
/// random slice points.
fn evaluation_kernel_dimension(g: &CaseGenerators, seed: u64) -> usize {
    let tags = tag_system(g, TagSet::Homogeneous).unwrap();
    let mons = tags.monomials_of_degree(2).unwrap();
    let mut sampler = SliceSampler::new(seed);
    let rows: Vec<Vec<Scalar>> = (0..3 * mons.len())
        .map(|_| {
            let pt = sampler.sample(&g.problem);
            let c = pt.slice_coords(&g.problem).unwrap();
            let vals: Vec<Scalar> = tags.polys.iter().map(|p| p.eval(&c)).collect();
            mons.iter()
                .map(|e| {
                    e.iter()
                        .zip(&vals)
                        .fold(int(1), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
                })
                .collect()
        })
        .collect();
    mons.len() - QMatrix::from_rows(rows).rank()
}

#[test]
fn quadruple_point_degree_two_kernel() {
    let g = gens("4");
    let (dim, rank) = quadruple_degree_two(&g).unwrap();
    let o1 = evaluation_kernel_dimension(&g, 3);
    let o2 = evaluation_kernel_dimension(&g, 4);
    assert_eq!(o1, o2);
    assert_eq!(dim, o1);
    assert_eq!(rank, dim);
    assert_eq!(dim, 13);
    let (p, _) = relations_upto_degree(&g, TagSet::Homogeneous, 2).unwrap();
    let stated = stated_relations(&g, TagSet::Homogeneous).unwrap();
    assert!(same_ideal(&p.relations, &stated, &p.tag_ring));
    assert_eq!(hilbert_values(&p, 2).unwrap(), [1, 10, 55 - 13]);
}

#[test]
fn one_three_products_have_witnesses() {
    let g = gens("1,3");
    let res = one_three_products(&g).unwrap();
    assert_eq!(res.len(), 49);
    let tags = tag_system(&g, TagSet::Homogeneous).unwrap();
    let gb = g.problem.slice_basis();
    for (name, w) in &res {
        let w = w.as_ref().unwrap_or_else(|| panic!("{name} not a member"));
        // The witness, evaluated on the xi, reproduces the product.
        let (i, j) = name.split_once('*').unwrap();
        let prod = &g.get(i).unwrap().slice_expr * &g.get(j).unwrap().slice_expr;
        let back = w.substitute(g.problem.slice_ring(), &tags.polys);
        assert!(gb.normal_form(&(&back - &prod)).unwrap().is_zero(), "{name}");
        assert!(w.is_homogeneous() && w.total_degree() == Some(3), "{name}: {w}");
    }
}

#[test]
fn quadric_examples() {
    let r = PolyRing::from_names(["u_0", "u_1", "u_2", "u_3", "u_4"], MonomialOrder::DegRevLex).unwrap();
    let cone = r.parse("u_1*u_4 - u_2*u_3").unwrap();
    let q = quadric_report(&cone, &[]).unwrap();
    assert_eq!((q.rank, q.singular_dim, q.ambient_dim), (4, 0, 4));
    assert_eq!(q.vertex, [["1", "0", "0", "0", "0"]]);
    let s = quadric_report(&cone, &[r.parse("u_0").unwrap()]).unwrap();
    assert!(s.is_smooth());
    assert_eq!(s.ambient_dim, 3);
    // A section through the vertex is singular.
    let t = quadric_report(&cone, &[r.parse("u_1").unwrap()]).unwrap();
    assert!(!t.is_smooth());

    let x = PolyRing::from_names(["xi_1", "xi_2", "xi_3", "xi_4", "xi_5"], MonomialOrder::DegRevLex).unwrap();
    let q = quadric_report(&x.parse("xi_4^2 - xi_3*xi_5").unwrap(), &[]).unwrap();
    assert_eq!((q.rank, q.singular_dim), (3, 1));
    assert!(same_span(
        &q.vertex_space,
        &[
            vec![int(1), int(0), int(0), int(0), int(0)],
            vec![int(0), int(1), int(0), int(0), int(0)]
        ]
    ));

    assert!(matches!(
        quadric_report(&x.parse("xi_1^3").unwrap(), &[]),
        Err(PresentationError::NotQuadratic(_))
    ));
    assert!(matches!(
        quadric_report(&x.parse("xi_1^2").unwrap(), &[x.parse("xi_1*xi_2").unwrap()]),
        Err(PresentationError::NotLinear(_))
    ));
}

#[test]
fn case_quadrics() {
    let (q, s) = case_quadric(&gens("2,2")).unwrap().unwrap();
    assert_eq!((q.rank, q.singular_dim), (4, 0));
    assert!(s.unwrap().is_smooth());
    let (q, _) = case_quadric(&gens("1,3")).unwrap().unwrap();
    assert_eq!((q.rank, q.singular_dim), (3, 1));
    let (q, _) = case_quadric(&gens("4")).unwrap().unwrap();
    assert_eq!((q.rank, q.singular_dim, q.ambient_dim), (3, -1, 2));
    assert!(case_quadric(&gens("1,1,2")).unwrap().is_none());
}

#[test]
fn scroll_model() {
    let s = scroll_check().unwrap();
    assert!(s.ok());
    let cof: Vec<&str> = s.pullbacks.iter().map(|p| p.cofactor.as_deref().unwrap()).collect();
    assert_eq!(cof, ["t2^2", "t1*t2", "t1^2"]);
    let f = &s.fibers[0];
    assert_eq!(f.t, [1, 0]);
    assert_eq!(f.vertex_line, "zeta4 = zeta5 = 0, zeta3 = 0");
    assert_eq!((f.rank, f.singular_dim), (3, 1));
    assert!(s.fibers.len() >= 5);
    let r = PolyRing::from_names(["xi_1", "xi_2", "xi_3"], MonomialOrder::DegRevLex).unwrap();
    assert_eq!(r.parse(&s.envelope).unwrap().monic(), r.parse("xi_1*xi_3 - xi_2^2").unwrap().monic());
}

#[test]
fn cofactor_rejects_non_multiples() {
    let r = scroll::tests_support::ring();
    let strict = scroll::tests_support::strict(&r);
    let bumped = &strict + &r.parse("zeta1^2").unwrap();
    assert!(scroll::tests_support::cofactor(&(&bumped * &r.parse("t1").unwrap()), &strict).is_none());
    assert!(scroll::tests_support::cofactor(&(&strict * &r.parse("zeta1").unwrap()), &strict).is_none());
    let ok = scroll::tests_support::cofactor(&(&strict * &r.parse("3*t1*t2^2").unwrap()), &strict);
    assert_eq!(ok.unwrap().to_string(), "3*t1*t2^2");
}

#[test]
fn every_case_verifies() {
    for c in CycleType::length_four() {
        let g = gens(&c.csv());
        let checks = verify_case(&g, VerifyOptions::default()).unwrap();
        for ch in &checks {
            assert!(ch.passed(), "{c} {}: {}", ch.id, ch.details);
        }
    }
}

#[test]
fn report_layout() {
    let g = gens("1,1,1,1");
    let r = presentation_report(&g, VerifyOptions::default()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["case"], "[1^4]");
    assert_eq!(v["status"], "full");
    assert_eq!(v["relations"][0], "u_0 - u_1 + u_2");
    assert_eq!(v["hilbert"], serde_json::json!([1, 2, 3, 4]));
    assert!(v.get("quadric").is_none());
    let r = presentation_report(&gens("4"), VerifyOptions::default()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["status"], serde_json::json!({"verified-to-degree": 2}));
    assert_eq!(v["quadric"]["rank"], 3);
    assert_eq!(v["scroll"]["pullback_ok"], true);
}

proptest! {
    #[test]
    fn rank_is_invariant_under_linear_change(
        d in proptest::collection::vec(-2i64..=2, 4),
        m in proptest::collection::vec(-3i64..=3, 16),
    ) {
        let mat = QMatrix::from_rows((0..4).map(|i| (0..4).map(|j| int(m[4 * i + j])).collect()).collect());
        prop_assume!(mat.rank() == 4);
        let r = PolyRing::from_names(["a", "b", "c", "d"], MonomialOrder::DegRevLex).unwrap();
        let diag = (0..4).fold(Polynomial::zero(&r), |acc, i| &acc + &(&r.gen(i) * &r.gen(i)).scale_int(d[i]));
        prop_assume!(!diag.is_zero());
        let images: Vec<Polynomial> = (0..4)
            .map(|i| (0..4).fold(Polynomial::zero(&r), |acc, j| &acc + &r.gen(j).scale_int(m[4 * i + j])))
            .collect();
        let changed = diag.substitute(&r, &images);
        let q = quadric_report(&changed, &[]).unwrap();
        let nonzero = d.iter().filter(|&&x| x != 0).count();
        prop_assert_eq!(q.rank, nonzero);
        prop_assert_eq!(q.singular_dim, 3 - nonzero as i64);
    }
}
