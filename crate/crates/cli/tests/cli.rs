use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ogfiber_core::exactpoly::{QMatrix, Scalar};
use ogfiber_core::gitmodel::{build_problem, CycleType, GITProblem, PointY, SliceSampler};
use ogfiber_core::invariants::{case_generators, CaseGenerators};
use ogfiber_core::presentations::{tag_system, TagSet};
use ogfiber_core::stability::{homogeneous_values, semistability_status, special_point, tabulated_cases, Verdict};

fn ogfiber(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ogfiber"))
        .args(args)
        .env_remove("OGFIBER_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

fn gens(case: &str) -> CaseGenerators {
    let p = Arc::new(build_problem(&CycleType::parse(case).unwrap()).unwrap());
    case_generators(&p).unwrap()
}

fn write_point(dir: &Path, problem: &GITProblem, p: &PointY) -> String {
    let path = dir.join("point.json");
    std::fs::write(&path, serde_json::to_string(&p.to_json_map(problem)).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

/// Graded dimensions of the subalgebra of homogeneous tags, from the rank of
/// monomial evaluations at random slice points.
fn hilbert_oracle(case: &str, n_max: u32) -> Vec<usize> {
    let g = gens(case);
    let tags = tag_system(&g, TagSet::Homogeneous).unwrap();
    let problem = &g.problem;
    let mut sampler = SliceSampler::new(99);
    (0..=n_max)
        .map(|n| {
            let mons = if n == 0 {
                vec![vec![0u16; tags.names.len()]]
            } else {
                tags.monomials_of_degree(n).unwrap()
            };
            let rows: Vec<Vec<Scalar>> = (0..mons.len() + 8)
                .map(|_| {
                    let p = sampler.sample(problem);
                    let c = p.slice_coords(problem).unwrap();
                    let v: Vec<Scalar> = tags.polys.iter().map(|f| f.eval(&c)).collect();
                    mons.iter()
                        .map(|e| {
                            e.iter().zip(&v).fold(Scalar::from_integer(1.into()), |acc, (&k, x)| {
                                (0..k).fold(acc, |a, _| a * x)
                            })
                        })
                        .collect()
                })
                .collect();
            QMatrix::from_rows(rows).rank()
        })
        .collect()
}

#[test]
fn four_points_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = ogfiber(&["case", "--case", "1,1,1,1", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v, json_of(&out));
    assert_eq!(v["generators"].as_array().unwrap().len(), 6);
    assert_eq!(v["generators"][0]["weight"], "-1; 1, 1, 0, 0");
    assert_eq!(v["presentation"]["relations"].as_array().unwrap().len(), 1);
    let h: Vec<usize> = serde_json::from_value(v["presentation"]["hilbert"].clone()).unwrap();
    assert_eq!(h, [1, 2, 3, 4]);
    assert_eq!(h, hilbert_oracle("1,1,1,1", 3));
    assert_eq!(v["seed"], 0);
}

#[test]
fn hilbert_values_match_the_evaluation_oracle() {
    for (case, n) in [("1,1,2", 3), ("2,2", 2)] {
        let out = ogfiber(&["case", "--case", case, "--only", "relations"]);
        let v = json_of(&out);
        let h: Vec<usize> = serde_json::from_value(v["presentation"]["hilbert"].clone()).unwrap();
        assert_eq!(h, hilbert_oracle(case, n), "{case}");
    }
}

#[test]
fn two_double_points_report() {
    let out = ogfiber(&["case", "--case", "2^2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let rel = v["presentation"]["relations"].as_array().unwrap();
    assert_eq!(rel.len(), 1);
    assert!(rel[0] == "u_2*u_3 - u_1*u_4" || rel[0] == "u_1*u_4 - u_2*u_3", "{}", rel[0]);
    assert_eq!(v["presentation"]["quadric"]["rank"], 4);
    assert_eq!(v["presentation"]["quadric"]["singular_dim"], 0);
    assert_eq!(v["presentation"]["quadric"]["section_smooth"], true);
    let strata = &v["stability"]["strata"];
    assert!(strata["sigma0"].as_u64().unwrap() > 0 && strata["sigma1"].as_u64().unwrap() > 0);
}

#[test]
fn quadruple_point_is_capped_without_override() {
    let out = ogfiber(&["case", "--case", "4", "--degree-cap", "2", "--only", "relations"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&out);
    let checks = v["presentation"]["checks"].as_array().unwrap();
    let find = |id: &str| checks.iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("{id}"));
    let k = find("degree-two-kernel-spanned-by-stated");
    assert_eq!(k["status"], "pass");
    assert!(k["details"].as_str().unwrap().contains("dimension 13"));
    for id in ["stated-relations-vanish", "scroll-pullbacks", "scroll-fibers", "scroll-envelope"] {
        assert_eq!(find(id)["status"], "pass", "{id}");
    }
    assert_eq!(v["checks"][0]["id"], "full-elimination");
    assert_eq!(v["checks"][0]["status"], "capped");
    assert!(String::from_utf8_lossy(&out.stderr).contains("CAPPED full-elimination"));
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        vec!["case", "--case", "1,2"],
        vec!["case", "--case", "x"],
        vec!["case", "--case", "1,1,2", "--degree-cap", "1"],
        vec!["case", "--case", "4", "--unsafe-full-elimination"],
        vec!["reproduce", "--samples", "0"],
        vec!["case", "--bogus"],
        vec!["check-point", "/nonexistent/point.json", "--case", "4"],
    ] {
        assert_eq!(ogfiber(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_ogfiber"));
        c.args(["case", "--case", "1,1,1,1", "--only", "stability", "--samples", "20"]).args(extra);
        match env {
            Some(s) => c.env("OGFIBER_SEED", s),
            None => c.env_remove("OGFIBER_SEED"),
        };
        json_of(&c.output().unwrap())
    };
    assert_eq!(run(Some("7"), &[])["seed"], 7);
    assert_eq!(run(Some("7"), &[])["stability"]["seed"], 7);
    assert_eq!(run(Some("7"), &["--seed", "11"])["seed"], 11);
    assert_eq!(run(None, &[])["seed"], 0);
}

#[test]
fn seeds_change_only_the_sampled_suite() {
    let a = json_of(&ogfiber(&["case", "--case", "2,2", "--seed", "7"]));
    let b = json_of(&ogfiber(&["case", "--case", "2,2", "--seed", "11"]));
    assert_eq!(a["presentation"], b["presentation"]);
    assert_eq!(a["generators"], b["generators"]);
    assert_eq!(a["stability"]["checks"].as_array().unwrap().len(), b["stability"]["checks"].as_array().unwrap().len());
    assert_ne!(a["stability"]["verdicts"], b["stability"]["verdicts"]);
}

#[test]
fn reproduce_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = (0..2).map(|i| dir.path().join(format!("r{i}.json")).to_str().unwrap().to_string()).collect();
    let jobs = ["1", "2"];
    for (p, j) in paths.iter().zip(jobs) {
        let out = ogfiber(&["reproduce", "--case", "1,1,1,1", "--case", "2,2", "--jobs", j, "--json", p]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn reproduce_subset_by_section() {
    let out = ogfiber(&["reproduce", "--case", "1,3", "--only", "relations"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("criterion")).collect();
    assert_eq!(lines.len(), 2, "{text}");
    assert!(lines[0].starts_with("criterion 4") && lines[0].contains("PASS"), "{text}");
    assert!(lines[1].starts_with("criterion 7"));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reproduce_reports_failing_criteria() {
    let out = ogfiber(&["reproduce", "--case", "1,3", "--only", "generators"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL survey-count"), "{text}");
}

#[test]
fn check_point_x_row_zero_is_unstable() {
    let g = gens("1,1,2");
    let (_, _, p) = tabulated_cases(&g.problem).unwrap().remove(0);
    let dir = tempfile::tempdir().unwrap();
    let path = write_point(dir.path(), &g.problem, &p);
    let out = ogfiber(&["check-point", &path, "--case", "1,1,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["report"]["verdict"], "unstable");
    assert_eq!(v["report"]["surjective"], false);
    assert!(v["report"]["destabilizer"]["pairing"].as_i64().unwrap() < 0);
}

#[test]
fn check_point_vertex_is_deepest_stratum() {
    let g = gens("2,2");
    let p = (0..)
        .map(|seed| special_point(&g.problem, &mut ChaCha8Rng::seed_from_u64(seed), 0).unwrap())
        .find(|p| semistability_status(&g.problem, p).unwrap().verdict == Verdict::StrictlySemistable)
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vertex.json");
    let wrapped = serde_json::json!({"case": "2,2", "values": p.to_json_map(&g.problem)});
    std::fs::write(&path, wrapped.to_string()).unwrap();
    let out = ogfiber(&["check-point", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["report"]["verdict"], "strictly-semistable");
    assert_eq!(v["report"]["stratum"]["stratum"], "sigma1");
    assert_eq!(v["report"]["stratum"]["on_locus"], true);
}

#[test]
fn check_point_generic_is_stable() {
    let g = gens("1,1,2");
    let mut sampler = SliceSampler::new(100);
    let p = loop {
        let p = sampler.sample(&g.problem);
        if homogeneous_values(&g, &p).unwrap().iter().all(|(_, x)| !x.is_zero()) {
            break p;
        }
    };
    let dir = tempfile::tempdir().unwrap();
    let path = write_point(dir.path(), &g.problem, &p);
    let v = json_of(&ogfiber(&["check-point", &path, "--case", "1^2,2"]));
    assert_eq!(v["report"]["verdict"], "stable");
    assert_eq!(v["report"]["gcd3"], "1");
    assert!(v["report"].get("destabilizer").is_none());
}

#[test]
fn check_point_lists_every_violated_generator() {
    let g = gens("1,3");
    let p = &g.problem;
    let q = SliceSampler::new(5).sample(p);
    let mut map = q.to_json_map(p);
    // A^2 and AB - BA pick up the upper-corner entries.
    map.insert("a13".into(), "1".into());
    map.insert("b12".into(), "2".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&map).unwrap()).unwrap();
    let out = ogfiber(&["check-point", path.to_str().unwrap(), "--case", "1,3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    let listed = err.lines().filter(|l| l.starts_with("  ")).count();
    assert!(listed >= 2, "{err}");
    assert!(err.contains("nilpotency generators do not vanish"), "{err}");
}

#[test]
fn check_point_rejects_unknown_variables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"{"nope": "1"}"#).unwrap();
    let out = ogfiber(&["check-point", path.to_str().unwrap(), "--case", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown variables nope"));
}
