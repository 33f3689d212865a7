use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Complex};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactpoly::{int, QMatrix, Scalar};
use crate::gitmodel::{build_problem, CycleType, GroupElement, OnePS, PointY, SliceSampler};
use crate::invariants::{case_generators, CaseGenerators};

fn gens(s: &str) -> CaseGenerators {
    let p = Arc::new(build_problem(&CycleType::parse(s).unwrap()).unwrap());
    case_generators(&p).unwrap()
}

fn point(g: &CaseGenerators, vals: &[(&str, i64)]) -> PointY {
    let m: HashMap<String, Scalar> = vals.iter().map(|(n, v)| (n.to_string(), int(*v))).collect();
    PointY::from_map(&g.problem, &m).unwrap()
}

fn coords(g: &CaseGenerators, p: &PointY) -> Vec<Scalar> {
    homogeneous_values(g, p).unwrap().into_iter().map(|(_, v)| v).collect()
}

const CASES: [&str; 5] = ["1,1,1,1", "1,1,2", "2,2", "1,3", "4"];

// Floating-point oracle: rank of M(w) at the roots of a random combination
// of k x k minors, built from the raw matrices.

fn to_f(m: &QMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64().unwrap())
}

fn pencil(g: &CaseGenerators, p: &PointY) -> (DMatrix<f64>, DMatrix<f64>) {
    let problem = &g.problem;
    let mut cols0: Vec<DVector<f64>> = Vec::new();
    let mut cols1: Vec<DVector<f64>> = Vec::new();
    let n: usize = problem.factors().iter().map(|f| f.m).sum();
    let mut off = 0;
    for (k, f) in problem.factors().iter().enumerate() {
        let a = to_f(&p.nil(problem, k, crate::gitmodel::Which::A));
        let b = to_f(&p.nil(problem, k, crate::gitmodel::Which::B));
        let psi = to_f(&p.psi(problem, k));
        for i in 0..f.m {
            for j in 0..f.m - i {
                let prod = a.pow(i as u32) * b.pow(j as u32) * &psi;
                let mut c0 = DVector::zeros(n);
                let mut c1 = DVector::zeros(n);
                for r in 0..f.m {
                    c0[off + r] = prod[(r, 0)];
                    c1[off + r] = prod[(r, 1)];
                }
                cols0.push(c0);
                cols1.push(c1);
            }
        }
        off += f.m;
    }
    (DMatrix::from_columns(&cols0), DMatrix::from_columns(&cols1))
}

fn numeric_rank(m: DMatrix<Complex<f64>>) -> usize {
    let s = m.svd(false, false).singular_values;
    let top = s.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > 1e-7 * top).count()
}

/// Whether `rank M(w) >= k` for every `w`, judged at the candidate roots.
fn oracle_rank_at_least(m1: &DMatrix<f64>, m2: &DMatrix<f64>, k: usize, rng: &mut ChaCha8Rng) -> bool {
    let (rows, cols) = m1.shape();
    if k > rows.min(cols) {
        return false;
    }
    let size = m1.norm() + m2.norm() + 1.0;
    let mut coeffs = None;
    for _ in 0..6 {
        let p = DMatrix::from_fn(k, rows, |_, _| rng.gen_range(-3..=3) as f64);
        let q = DMatrix::from_fn(cols, k, |_, _| rng.gen_range(-3..=3) as f64);
        let at = |w1: f64, w2: f64| (&p * (m1 * w1 + m2 * w2) * &q).determinant();
        // coefficients of det(t m1 + m2) by interpolation at k + 1 nodes
        let nodes: Vec<f64> = (0..=k).map(|i| i as f64 - (k as f64) / 2.0).collect();
        let v = DMatrix::from_fn(k + 1, k + 1, |i, j| nodes[i].powi(j as i32));
        let y = DVector::from_iterator(k + 1, nodes.iter().map(|&t| at(t, 1.0)));
        let c = v.lu().solve(&y).unwrap();
        let reference = (p.norm() * q.norm() * size).powi(k as i32);
        if c.iter().map(|x| x.abs()).fold(0.0, f64::max) > 1e-9 * reference {
            coeffs = Some(c);
            break;
        }
    }
    let Some(c) = coeffs else { return false };
    let scale = c.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut roots: Vec<(Complex<f64>, Complex<f64>)> = vec![(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))];
    let deg = (0..=k).rev().find(|&d| c[d].abs() > 1e-9 * scale).unwrap();
    if deg > 0 {
        let comp = DMatrix::from_fn(deg, deg, |i, j| {
            if i == 0 {
                -c[deg - 1 - j] / c[deg]
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        for t in comp.complex_eigenvalues().iter() {
            roots.push((*t, Complex::new(1.0, 0.0)));
        }
    }
    let m1c = m1.map(|x| Complex::new(x, 0.0));
    let m2c = m2.map(|x| Complex::new(x, 0.0));
    roots.into_iter().all(|(w1, w2)| numeric_rank(&m1c * w1 + &m2c * w2) >= k)
}

fn oracle_verdict(g: &CaseGenerators, p: &PointY, seed: u64) -> Verdict {
    let (m1, m2) = pencil(g, p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !is_surjective(&g.problem, p) || !oracle_rank_at_least(&m1, &m2, 2, &mut rng) {
        Verdict::Unstable
    } else if !oracle_rank_at_least(&m1, &m2, 3, &mut rng) {
        Verdict::StrictlySemistable
    } else {
        Verdict::Stable
    }
}

#[test]
fn verdicts_agree_with_numeric_oracle() {
    for case in CASES {
        let g = gens(case);
        let pts = suite_points(&g.problem, 11, 40).unwrap();
        for (i, p) in pts.iter().enumerate() {
            let exact = semistability_status(&g.problem, p).unwrap().verdict;
            assert_eq!(exact, oracle_verdict(&g, p, i as u64), "{case} point {i}");
        }
    }
}

#[test]
fn generic_slice_points_are_stable() {
    for case in CASES {
        let g = gens(case);
        let mut seen = 0;
        for seed in 100..120 {
            let p = SliceSampler::new(seed).sample(&g.problem);
            // generic: off every coordinate hyperplane
            if coords(&g, &p).iter().any(|x| x.is_zero()) {
                continue;
            }
            seen += 1;
            let r = semistability_status(&g.problem, &p).unwrap();
            assert_eq!(r.verdict, Verdict::Stable, "{case} seed {seed}");
            assert!(r.surjective);
            assert_eq!(r.gcd3, "1");
            assert_eq!(oracle_verdict(&g, &p, seed), Verdict::Stable);
            assert!(destabilizer_search(&g.problem, &p, SearchOptions { radius: 3, trials: 20, seed }).is_none());
        }
        assert!(seen >= 5, "{case}: only {seen} generic samples");
    }
}

#[test]
fn x_row_zero_is_not_surjective() {
    let g = gens("1,1,2");
    let (r, _, p) = tabulated_cases(&g.problem).unwrap().remove(0);
    let rep = semistability_status(&g.problem, &p).unwrap();
    assert_eq!(rep.verdict, Verdict::Unstable);
    assert!(!rep.surjective);
    let d = destabilizer_search(&g.problem, &p, SearchOptions::default()).unwrap();
    assert_eq!(d.r.0, r.to_vec());
    assert_eq!(d.pairing, -1);
    assert!(d.refutes_semistability());
}

#[test]
fn vanishing_z_is_destabilized() {
    let g = gens("1,1,2");
    let (r, _, p) = tabulated_cases(&g.problem).unwrap().remove(1);
    assert_eq!(r, [0, 0, 0, 0, -1, -1]);
    let d = destabilizer_search(&g.problem, &p, SearchOptions::default()).unwrap();
    assert_eq!(d.r.0, r.to_vec());
    assert_eq!(d.trial, 0);
}

#[test]
fn zero_second_column_is_strictly_semistable() {
    let g = gens("1,1,2");
    let p = point(
        &g,
        &[("x1", 1), ("x2", 2), ("y1", 3), ("y2", -1), ("z11", 2), ("z21", 1), ("a21", 1), ("b21", 3)],
    );
    let rep = check_point(&g, &p, SearchOptions::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::StrictlySemistable);
    let d = rep.destabilizer.unwrap();
    assert_eq!(d.pairing, 0);
    assert_eq!(d.r.0, vec![0, 1, 1, 1, 0, 0]);
    let s = rep.stratum.unwrap();
    assert_eq!(s.stratum, Stratum::Sigma0);
    assert!(s.on_locus);
}

#[test]
fn every_tabulated_vector_is_reproduced() {
    let g = gens("1,1,2");
    let checks = tabulated_destabilizers(&g.problem).unwrap();
    assert_eq!(checks.len(), 8);
    for c in checks {
        assert!(c.passed(), "{}: {}", c.id, c.details);
    }
}

#[test]
fn tabulated_points_match_the_oracle() {
    let g = gens("1,1,2");
    for (i, (_, expected, p)) in tabulated_cases(&g.problem).unwrap().into_iter().enumerate() {
        assert_eq!(oracle_verdict(&g, &p, i as u64), expected);
    }
}

#[test]
fn trivial_subgroup_is_not_a_certificate() {
    let g = gens("1,1,1,1");
    let p = SliceSampler::new(3).sample(&g.problem);
    let c = verify_certificate(&g.problem, &p, &OnePS(vec![2; 6])).unwrap();
    assert!(c.limit_exists);
    assert_eq!(c.pairing, 0);
    assert!(!c.refutes_stability());
}

#[test]
fn plucker_rows_proportional_lie_on_a_line() {
    let g = gens("1,1,1,1");
    let p = point(&g, &[("x1", 1), ("x2", 2), ("y1", 2), ("y2", 4), ("z1", 1), ("z2", -1), ("w1", 3), ("w2", 1)]);
    let c = coords(&g, &p);
    assert!(c[0].is_zero());
    let s = classify_stratum(&g, &p).unwrap();
    assert_eq!(s.stratum, Stratum::Sigma0);
    assert_eq!(s.locus, "u_0 = 0");
}

#[test]
fn double_point_coordinates_on_the_slice() {
    let g = gens("1,1,2");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let p = SliceSampler::new(rng.gen()).sample(&g.problem);
        let v = |n: &str| p.value(&g.problem, n).unwrap().clone();
        let det = |a: &str, b: &str, c: &str, d: &str| &v(a) * &v(d) - &v(b) * &v(c);
        let xz = det("x1", "x2", "z11", "z12");
        let yz = det("y1", "y2", "z11", "z12");
        let c = coords(&g, &p);
        assert_eq!(c[0], &det("x1", "x2", "y1", "y2") * &det("z11", "z12", "z21", "z22"));
        // det(A w_1 | w_2) = -a |x z_1| |y z_1| for A = [[0, 0], [a, 0]]
        assert_eq!(c[1], -(&(&v("a21") * &xz) * &yz));
        assert_eq!(c[2], -(&(&v("b21") * &xz) * &yz));
    }
}

#[test]
fn two_double_points_coordinates_on_the_slice() {
    let g = gens("2,2");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let p = SliceSampler::new(rng.gen()).sample(&g.problem);
        let v = |n: &str| p.value(&g.problem, n).unwrap().clone();
        let det = |a: &str, b: &str, c: &str, d: &str| &v(a) * &v(d) - &v(b) * &v(c);
        let d = det("x11", "x12", "y11", "y12");
        let d2 = &d * &d;
        let c = coords(&g, &p);
        assert_eq!(c[0], &det("x11", "x12", "x21", "x22") * &det("y11", "y12", "y21", "y22"));
        assert_eq!(c[1], &(&v("a1_21") * &v("a2_21")) * &d2);
        assert_eq!(c[2], &(&v("a1_21") * &v("b2_21")) * &d2);
        assert_eq!(c[3], &(&v("b1_21") * &v("a2_21")) * &d2);
        assert_eq!(c[4], &(&v("b1_21") * &v("b2_21")) * &d2);
    }
}

#[test]
fn cross_determinant_zero_is_the_vertex() {
    let g = gens("2,2");
    let p = point(
        &g,
        &[
            ("x11", 1),
            ("x12", 2),
            ("x21", 0),
            ("x22", 1),
            ("y11", 2),
            ("y12", 4),
            ("y21", 1),
            ("y22", -1),
            ("a1_21", 1),
            ("b1_21", 2),
            ("a2_21", -1),
            ("b2_21", 3),
        ],
    );
    let c = coords(&g, &p);
    assert!(c[1..].iter().all(|x| x.is_zero()));
    assert!(!c[0].is_zero());
    let rep = check_point(&g, &p, SearchOptions::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::StrictlySemistable);
    assert_eq!(rep.stratum.unwrap().stratum, Stratum::Sigma1);
}

#[test]
fn quadruple_point_conic_is_the_deepest_stratum() {
    let g = gens("4");
    let psi = [("x11", 1), ("x32", 1)];
    let on = point(&g, &[psi[0], psi[1], ("a21", 1), ("a43", 2), ("b21", 3), ("b43", 6)]);
    let off = point(&g, &[psi[0], psi[1], ("a21", 1), ("a43", 2), ("b21", 3), ("b43", 5)]);
    let rep_on = check_point(&g, &on, SearchOptions::default());
    let s_on = classify_stratum(&g, &on);
    match (rep_on, s_on) {
        (Ok(r), Ok(s)) => {
            assert_eq!(r.verdict, Verdict::StrictlySemistable);
            assert_eq!(s.stratum, Stratum::Sigma1);
            assert!(s.on_locus);
        }
        (r, s) => panic!("{r:?} {s:?}"),
    }
    let s_off = classify_stratum(&g, &off).unwrap();
    assert_eq!(s_off.stratum, Stratum::Sigma0);
    assert!(s_off.on_locus);
}

#[test]
fn stable_points_have_no_stratum() {
    let g = gens("2,2");
    let p = SliceSampler::new(100).sample(&g.problem);
    assert!(matches!(
        classify_stratum(&g, &p),
        Err(StabilityError::NotStrictlySemistable(Verdict::Stable))
    ));
}

#[test]
fn report_json_layout() {
    let g = gens("1,1,2");
    let (_, _, p) = tabulated_cases(&g.problem).unwrap().remove(0);
    let rep = check_point(&g, &p, SearchOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["verdict"], "unstable");
    assert_eq!(v["surjective"], false);
    assert!(v.get("gcd2").is_some() && v.get("gcd3").is_some());
    assert_eq!(v["destabilizer"]["r"], serde_json::json!([0, 0, -1, 0, 0, 0]));
    assert!(v.get("stratum").is_none());
    let stable = semistability_status(&g.problem, &SliceSampler::new(100).sample(&g.problem)).unwrap();
    let v = serde_json::to_value(&stable).unwrap();
    assert_eq!(v["verdict"], "stable");
    assert!(v.get("destabilizer").is_none());
}

#[test]
fn small_suites_pass() {
    for case in CASES {
        let g = gens(case);
        let s = stability_suite(
            &g,
            SuiteOptions { samples: 60, base_changes: 30, seed: 3, search: SearchOptions { radius: 2, trials: 3, seed: 0 } },
        )
        .unwrap();
        for c in &s.checks {
            assert!(c.passed(), "{case} {}: {}", c.id, c.details);
        }
    }
}

fn case_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(CASES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_is_invariant_under_base_change(case in case_strategy(), seed in 0u64..10_000, bias in 0usize..3) {
        let g = gens(case);
        let mut s = SliceSampler::new(seed).with_zero_bias([0.0, 0.3, 0.6][bias]);
        let p = s.sample(&g.problem);
        let h = GroupElement::random(&g.problem, s.rng(), 3);
        let q = h.act(&g.problem, &p).unwrap();
        prop_assert_eq!(
            semistability_status(&g.problem, &p).unwrap().verdict,
            semistability_status(&g.problem, &q).unwrap().verdict
        );
    }

    #[test]
    fn certificates_are_sound(case in case_strategy(), seed in 0u64..10_000, bias in 0usize..3) {
        let g = gens(case);
        let p = SliceSampler::new(seed).with_zero_bias([0.2, 0.4, 0.6][bias]).sample(&g.problem);
        let verdict = semistability_status(&g.problem, &p).unwrap().verdict;
        if let Some(d) = destabilizer_search(&g.problem, &p, SearchOptions { radius: 2, trials: 3, seed }) {
            prop_assert_ne!(verdict, Verdict::Stable);
            if d.refutes_semistability() {
                prop_assert_eq!(verdict, Verdict::Unstable);
            }
        }
    }
}

