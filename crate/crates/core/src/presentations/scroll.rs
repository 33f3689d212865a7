//! Coordinate checks on the scroll model of the quadruple-point case.

use std::sync::Arc;

use serde::Serialize;

use crate::exactpoly::{int, Monomial, MonomialOrder, PolyRing, Polynomial, Scalar};
use crate::groebner::{eliminate, ElimOptions, Ideal};

use super::quadric::{quadric_report, same_span};
use super::{stated_quadruple_forms, PresentationError};

#[derive(Clone, Debug, Serialize)]
pub struct PullbackCheck {
    pub form: String,
    pub pullback: String,
    /// `c t1^i t2^j` with pullback = cofactor * strict transform, if any.
    pub cofactor: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberCheck {
    pub t: [i64; 2],
    pub form: String,
    pub rank: usize,
    pub singular_dim: i64,
    pub vertex_line: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScrollModel {
    pub strict_transform: String,
    pub pullbacks: Vec<PullbackCheck>,
    pub pullback_ok: bool,
    pub fibers: Vec<FiberCheck>,
    pub envelope: String,
    pub envelope_ok: bool,
}

impl ScrollModel {
    pub fn ok(&self) -> bool {
        self.pullback_ok && self.envelope_ok && self.fibers.iter().all(|f| f.ok)
    }
}

pub const SAMPLE_FIBERS: [[i64; 2]; 6] = [[1, 0], [0, 1], [1, 1], [1, 2], [2, 1], [1, -1]];

fn bihomogeneous_ring() -> Arc<PolyRing> {
    PolyRing::from_names(
        ["t1", "t2", "zeta1", "zeta2", "zeta3", "zeta4", "zeta5"],
        MonomialOrder::DegRevLex,
    )
    .expect("fixed names")
}

/// `mu^*` images of `xi_1..xi_10`.
fn pullback_images(r: &Arc<PolyRing>) -> Vec<Polynomial> {
    [
        "zeta1",
        "zeta2",
        "zeta3",
        "t1^4*zeta4",
        "t1^3*t2*zeta4",
        "t1^2*t2^2*zeta4",
        "t1*t2^3*zeta4",
        "t2^4*zeta4",
        "t1*zeta5",
        "-t2*zeta5",
    ]
    .iter()
    .map(|s| r.parse(s).expect("fixed text"))
    .collect()
}

fn strict_transform(r: &Arc<PolyRing>) -> Polynomial {
    r.parse("t2^2*zeta1*zeta4 - 2*t1*t2*zeta2*zeta4 + t1^2*zeta3*zeta4 - zeta5^2")
        .expect("fixed text")
}

/// Pure t-monomial multiple `q` with `f = q * g`, if one exists.
fn monomial_cofactor(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let (mf, cf) = f.leading_term()?;
    let (mg, cg) = g.leading_term()?;
    let e: Vec<u16> = mf
        .exps()
        .iter()
        .zip(mg.exps())
        .map(|(a, b)| a.checked_sub(*b))
        .collect::<Option<_>>()?;
    if e[2..].iter().any(|&x| x != 0) {
        return None;
    }
    let q = Polynomial::monomial(f.ring(), Monomial::from_exps(e), cf / cg);
    (&q * g == *f).then_some(q)
}

fn fiber(t: [i64; 2], strict: &Polynomial) -> Result<FiberCheck, PresentationError> {
    let zr = PolyRing::from_names(["zeta1", "zeta2", "zeta3", "zeta4", "zeta5"], MonomialOrder::DegRevLex)?;
    let mut img = vec![Polynomial::from_int(&zr, t[0]), Polynomial::from_int(&zr, t[1])];
    img.extend(zr.gens());
    let form = strict.substitute(&zr, &img);
    let q = quadric_report(&form, &[])?;
    // ell = t2^2 zeta1 - 2 t1 t2 zeta2 + t1^2 zeta3
    let ell = [t[1] * t[1], -2 * t[0] * t[1], t[0] * t[0], 0, 0];
    let predicted = crate::exactpoly::QMatrix::from_rows(vec![
        ell.iter().map(|&v| int(v)).collect(),
        vec![int(0), int(0), int(0), int(1), int(0)],
        vec![int(0), int(0), int(0), int(0), int(1)],
    ])
    .kernel();
    let ok = q.singular_dim == 1 && same_span(&q.vertex_space, &predicted);
    let ell_text = Polynomial::from_terms(
        &zr,
        ell.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| {
                let mut e = vec![0u16; 5];
                e[i] = 1;
                (Monomial::from_exps(e), Scalar::from_integer(v.into()))
            })
            .collect(),
    );
    Ok(FiberCheck {
        t,
        form: form.to_string(),
        rank: q.rank,
        singular_dim: q.singular_dim,
        vertex_line: format!("zeta4 = zeta5 = 0, {ell_text} = 0"),
        ok,
    })
}

/// Envelope of the lines `t2^2 xi_1 - 2 t1 t2 xi_2 + t1^2 xi_3 = 0` on the
/// plane, by elimination of `t` on both affine charts of the pencil.
fn envelope() -> Result<(Polynomial, bool), PresentationError> {
    let r = PolyRing::from_names(["t1", "t2", "xi_1", "xi_2", "xi_3"], MonomialOrder::DegRevLex)?;
    let l = r.parse("t2^2*xi_1 - 2*t1*t2*xi_2 + t1^2*xi_3")?;
    let family = [l.clone(), l.derivative(0), l.derivative(1)];
    let target = PolyRing::from_names(["xi_1", "xi_2", "xi_3"], MonomialOrder::DegRevLex)?;
    let expected = target.parse("xi_1*xi_3 - xi_2^2")?;
    let mut result = None;
    let mut ok = true;
    for (fixed, free) in [(1usize, "t1"), (0usize, "t2")] {
        let mut img = r.gens();
        img[fixed] = Polynomial::one(&r);
        let gens: Vec<Polynomial> = family.iter().map(|f| f.substitute(&r, &img)).collect();
        let other = if fixed == 1 { "t2" } else { "t1" };
        let ideal = Ideal::new(&r, gens)?;
        let elim = eliminate(&ideal, &[free, other], ElimOptions::default())?;
        let gens: Vec<Polynomial> = elim
            .gens()
            .iter()
            .map(|g| g.to_ring(&target))
            .collect::<Result<_, _>>()?;
        let principal = gens.len() == 1 && gens[0].monic() == expected.monic();
        ok &= principal;
        if result.is_none() {
            result = gens.first().cloned();
        }
    }
    Ok((result.unwrap_or_else(|| Polynomial::zero(&target)), ok))
}

/// Pullback identities, fiber vertex lines and the envelope conic.
pub fn scroll_check() -> Result<ScrollModel, PresentationError> {
    let r = bihomogeneous_ring();
    let images = pullback_images(&r);
    let strict = strict_transform(&r);
    let mut pullbacks = Vec::new();
    for f in stated_quadruple_forms()?.1 {
        let pb = f.substitute(&r, &images);
        let cof = monomial_cofactor(&pb, &strict);
        pullbacks.push(PullbackCheck {
            form: f.to_string(),
            pullback: pb.to_string(),
            ok: cof.is_some(),
            cofactor: cof.map(|q| q.to_string()),
        });
    }
    let fibers = SAMPLE_FIBERS
        .iter()
        .map(|&t| fiber(t, &strict))
        .collect::<Result<Vec<_>, _>>()?;
    let (env, envelope_ok) = envelope()?;
    Ok(ScrollModel {
        strict_transform: strict.to_string(),
        pullback_ok: pullbacks.iter().all(|p| p.ok),
        pullbacks,
        fibers,
        envelope: env.to_string(),
        envelope_ok,
    })
}

#[cfg(test)]
pub(super) mod tests_support {
    use super::*;

    pub fn ring() -> Arc<PolyRing> {
        bihomogeneous_ring()
    }

    pub fn strict(r: &Arc<PolyRing>) -> Polynomial {
        strict_transform(r)
    }

    pub fn cofactor(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
        monomial_cofactor(f, g)
    }
}
