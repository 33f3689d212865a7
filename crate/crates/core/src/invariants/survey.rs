//! Systematic enumeration of candidate invariants, classified against the
//! candidates accepted before them.

use serde::Serialize;

use crate::exactpoly::{PolyMatrix, Polynomial};

use super::build::{self, FourContext};
use super::{format_character, weight_of, CaseGenerators, Filter, InvariantError, Novelty};

#[derive(Clone, Debug, Serialize)]
pub struct SurveyEntry {
    pub label: String,
    pub novelty: Novelty,
    /// Determinant-unit character, empty for a zero candidate.
    pub character: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Survey {
    pub entries: Vec<SurveyEntry>,
    /// Number of candidates classified as new.
    pub new_count: usize,
    /// Names of curated generators that are not polynomials in the new
    /// candidates (empty when the curated list is covered).
    pub uncovered: Vec<String>,
}

fn label_word(letters: &[&str], word: &[usize]) -> String {
    word.iter().map(|&k| letters[k]).collect::<Vec<_>>().join(" ")
}

fn candidates(gens: &CaseGenerators) -> Result<Vec<(String, Polynomial)>, InvariantError> {
    let p = &gens.problem;
    let m = build::slice_mats(p);
    let mut out = Vec::new();
    match p.cycle().csv().as_str() {
        "1,1,1,1" => out.extend(build::plucker(&m).gens),
        "1,1,2" => {
            let b = build::one_one_two(&m);
            out.push(("|x; y|".into(), b.gens[0].1.clone()));
            out.push(("det Z".into(), b.gens[1].1.clone()));
            let w = [b.helpers[0].1.col(0), b.helpers[1].1.col(0)];
            let ring = p.slice_ring();
            let (a, bb) = (m[2].a.clone().unwrap(), m[2].b.clone().unwrap());
            let words = [("", PolyMatrix::identity(ring, 2)), ("A ", a), ("B ", bb)];
            for (n1, w1) in &words {
                for (n2, w2) in &words {
                    for i in 0..2 {
                        for j in 0..2 {
                            let c1 = w1.mul(&PolyMatrix::column_vector(w[i].clone())).col(0);
                            let c2 = w2.mul(&PolyMatrix::column_vector(w[j].clone())).col(0);
                            out.push((
                                format!("det({n1}w_{} | {n2}w_{})", i + 1, j + 1),
                                PolyMatrix::from_columns(&[c1, c2]).det(),
                            ));
                        }
                    }
                }
            }
        }
        "2,2" => {
            let b = build::two_two(&m);
            out.push(("det X".into(), b.gens[0].1.clone()));
            out.push(("det Y".into(), b.gens[1].1.clone()));
            let x1 = b.helpers.iter().find(|h| h.0 == "X_1").unwrap().1.clone();
            let x2 = b.helpers.iter().find(|h| h.0 == "X_2").unwrap().1.clone();
            let mats = [m[1].a.clone().unwrap(), m[1].b.clone().unwrap(), x1, x2];
            let letters = ["A_2", "B_2", "X_1", "X_2"];
            let mut words: Vec<Vec<usize>> = (0..4).map(|k| vec![k]).collect();
            let mut frontier = words.clone();
            for _ in 1..3 {
                let mut next = Vec::new();
                for w in &frontier {
                    for k in 0..4 {
                        let mut v = w.clone();
                        v.push(k);
                        next.push(v);
                    }
                }
                words.extend(next.iter().cloned());
                frontier = next;
            }
            for w in words {
                let mut prod = mats[w[0]].clone();
                for &k in &w[1..] {
                    prod = prod.mul(&mats[k]);
                }
                out.push((format!("tr({})", label_word(&letters, &w)), prod.trace()));
            }
        }
        "1,3" => {
            let c = build::one_three_candidates(&m);
            out.extend(c.pairings);
            out.extend(c.vector_dets);
            out.extend(c.covector_dets);
        }
        "4" => {
            let ctx = FourContext::new(&m);
            let names: Vec<String> = ctx
                .words
                .iter()
                .map(|&(i, j)| {
                    let part = |s: &str, e: u32| match e {
                        0 => String::new(),
                        1 => s.to_string(),
                        _ => format!("{s}^{e}"),
                    };
                    format!("T({}{})", part("A", i), part("B", j))
                })
                .collect();
            let nil: Vec<u32> = ctx.words.iter().map(|&(i, j)| i + j).collect();
            // Multisets of word indices, non-decreasing, total length at most 4.
            fn rec(start: usize, left: u32, nil: &[u32], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                out.push(cur.clone());
                for k in start..nil.len() {
                    if nil[k] <= left {
                        cur.push(k);
                        rec(k, left - nil[k], nil, cur, out);
                        cur.pop();
                    }
                }
            }
            let mut sets = Vec::new();
            rec(0, 4, &nil, &mut Vec::new(), &mut sets);
            sets.sort_by_key(|s| (s.len(), s.clone()));
            for s in sets {
                let label = if s.is_empty() {
                    "<u, u>".to_string()
                } else {
                    format!("<u, {} u>", s.iter().map(|&k| names[k].as_str()).collect::<Vec<_>>().join(" "))
                };
                out.push((label, ctx.pairing(&s)));
            }
        }
        _ => return Err(InvariantError::Unsupported(p.cycle().to_string())),
    }
    Ok(out)
}

/// Runs the systematic enumeration of the case and checks that every
/// curated generator is a polynomial in the accepted candidates.
pub fn systematic_survey(gens: &CaseGenerators) -> Result<Survey, InvariantError> {
    let p = &gens.problem;
    let gb = p.slice_basis();
    let mut filter = Filter::new(p, &gb);
    let mut entries = Vec::new();
    for (label, poly) in candidates(gens)? {
        let novelty = filter.offer(&label, &poly)?;
        let character = match weight_of(p, &poly)? {
            Some(w) => format_character(&p.det_units(&w)),
            None => String::new(),
        };
        entries.push(SurveyEntry { label, novelty, character });
    }
    let mut uncovered = Vec::new();
    for g in &gens.generators {
        if filter.classify(&g.slice_expr)? == Novelty::New {
            uncovered.push(g.name.clone());
        }
    }
    let new_count = entries.iter().filter(|e| e.novelty == Novelty::New).count();
    Ok(Survey { entries, new_count, uncovered })
}
