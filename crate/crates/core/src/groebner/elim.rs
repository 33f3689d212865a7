use std::sync::Arc;

use crate::exactpoly::{MonomialOrder, PolyRing, Polynomial, SimpleOrder, VarRegistry};

use super::{groebner_basis, Caps, GbError, GroebnerBasis, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElimOptions {
    pub caps: Caps,
    /// Order inside the eliminated block.
    pub prefix: SimpleOrder,
}

impl Default for ElimOptions {
    fn default() -> Self {
        ElimOptions {
            caps: Caps::none(),
            prefix: SimpleOrder::Lex,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Membership {
    /// `witness` is a polynomial in the tag ring whose image is the element.
    Yes { witness: Polynomial },
    No,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }
}

fn block_ring(front: &[String], back: &[String], prefix: SimpleOrder) -> Result<Arc<PolyRing>, GbError> {
    let vars = VarRegistry::new(front.iter().chain(back.iter()).cloned())?;
    Ok(PolyRing::new(
        vars,
        MonomialOrder::Block {
            split: front.len(),
            prefix,
            suffix: SimpleOrder::DegRevLex,
        },
    ))
}

/// Basis elements free of the first `split` variables, moved to `target`.
fn eliminated_part(gb: &GroebnerBasis, split: usize, target: &Arc<PolyRing>) -> Result<Ideal, GbError> {
    let mut keep = Vec::new();
    for g in gb.basis() {
        let lm = g.leading_monomial().unwrap();
        if lm.exps()[..split].iter().all(|&e| e == 0) {
            keep.push(g.to_ring(target)?);
        }
    }
    Ok(Ideal::new(target, keep)?)
}

/// `I` intersected with the subring without the `drop` variables. The result
/// is the reduced degrevlex basis of the elimination ideal.
pub fn eliminate(ideal: &Ideal, drop: &[&str], opts: ElimOptions) -> Result<Ideal, GbError> {
    let vars = ideal.ring().vars();
    for d in drop {
        if vars.index_of(d).is_none() {
            return Err(GbError::UnknownVariable(d.to_string()));
        }
    }
    let front: Vec<String> = vars
        .names()
        .iter()
        .filter(|n| drop.contains(&n.as_str()))
        .cloned()
        .collect();
    let back: Vec<String> = vars
        .names()
        .iter()
        .filter(|n| !drop.contains(&n.as_str()))
        .cloned()
        .collect();
    let big = block_ring(&front, &back, opts.prefix)?;
    let moved = ideal.to_ring(&big)?;
    let gb = groebner_basis(&moved, big.order(), opts.caps);
    gb.require_complete()?;
    let target = PolyRing::new(VarRegistry::new(back)?, MonomialOrder::DegRevLex);
    eliminated_part(&gb, front.len(), &target)
}

fn tagged_basis(
    tags: &[String],
    images: &[Polynomial],
    modulo: &Ideal,
    opts: ElimOptions,
) -> Result<(Arc<PolyRing>, GroebnerBasis), GbError> {
    let src = modulo.ring();
    for t in tags {
        if src.vars().index_of(t).is_some() {
            return Err(GbError::TagClash(t.clone()));
        }
    }
    let big = block_ring(src.vars().names(), tags, opts.prefix)?;
    let mut gens = Vec::with_capacity(modulo.gens().len() + tags.len());
    for g in modulo.gens() {
        gens.push(g.to_ring(&big)?);
    }
    for (t, img) in tags.iter().zip(images) {
        gens.push(&big.var(t)? - &img.to_ring(&big)?);
    }
    let ideal = Ideal::new(&big, gens)?;
    let gb = groebner_basis(&ideal, big.order(), opts.caps);
    gb.require_complete()?;
    Ok((big, gb))
}

/// Kernel of `Q[tags] -> Q[source]/modulo`, `tag_i -> image_i`.
pub fn ring_map_kernel(
    images: &[(String, Polynomial)],
    modulo: &Ideal,
    opts: ElimOptions,
) -> Result<Ideal, GbError> {
    let tags: Vec<String> = images.iter().map(|(t, _)| t.clone()).collect();
    let polys: Vec<Polynomial> = images.iter().map(|(_, p)| p.clone()).collect();
    let (_, gb) = tagged_basis(&tags, &polys, modulo, opts)?;
    let target = PolyRing::new(VarRegistry::new(tags)?, MonomialOrder::DegRevLex);
    eliminated_part(&gb, modulo.ring().nvars(), &target)
}

fn fresh_names(prefix: &str, n: usize, taken: &VarRegistry) -> Vec<String> {
    let mut p = prefix.to_string();
    loop {
        let names: Vec<String> = (1..=n).map(|i| format!("{p}{i}")).collect();
        if names.iter().all(|s| taken.index_of(s).is_none()) {
            return names;
        }
        p.push('t');
    }
}

/// Membership oracle for the subalgebra generated by `gens` inside
/// `Q[source]/modulo`, sharing one tagged basis across queries. Tags are
/// named `t1, t2, ...`.
pub struct Subalgebra {
    big: Arc<PolyRing>,
    gb: GroebnerBasis,
    nsrc: usize,
    tags: Arc<PolyRing>,
}

impl Subalgebra {
    pub fn new(gens: &[Polynomial], modulo: &Ideal, opts: ElimOptions) -> Result<Self, GbError> {
        let names = fresh_names("t", gens.len(), modulo.ring().vars());
        let (big, gb) = tagged_basis(&names, gens, modulo, opts)?;
        let tags = PolyRing::new(VarRegistry::new(names)?, MonomialOrder::DegRevLex);
        Ok(Subalgebra {
            big,
            gb,
            nsrc: modulo.ring().nvars(),
            tags,
        })
    }

    pub fn tag_ring(&self) -> &Arc<PolyRing> {
        &self.tags
    }

    pub fn member(&self, f: &Polynomial) -> Result<Membership, GbError> {
        let nf = self.gb.normal_form(&f.to_ring(&self.big)?)?;
        if nf.variables().iter().any(|&v| v < self.nsrc) {
            return Ok(Membership::No);
        }
        Ok(Membership::Yes {
            witness: nf.to_ring(&self.tags)?,
        })
    }
}

/// Decides whether `f` lies in the subalgebra generated by `gens` inside
/// `Q[source]/modulo`. Tags are named `t1, t2, ...`.
pub fn subalgebra_member(
    f: &Polynomial,
    gens: &[Polynomial],
    modulo: &Ideal,
    opts: ElimOptions,
) -> Result<Membership, GbError> {
    Subalgebra::new(gens, modulo, opts)?.member(f)
}

/// `I ∩ J` via `s I + (1 - s) J` with a fresh variable `s`.
pub fn intersect(a: &Ideal, b: &Ideal, opts: ElimOptions) -> Result<Ideal, GbError> {
    let ring = a.ring();
    if ring.vars() != b.ring().vars() {
        return Err(crate::exactpoly::PolyError::RingMismatch.into());
    }
    let s = fresh_names("s", 1, ring.vars()).pop().unwrap();
    let big = block_ring(std::slice::from_ref(&s), ring.vars().names(), opts.prefix)?;
    let sv = big.var(&s)?;
    let one_minus = &Polynomial::one(&big) - &sv;
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(&sv * &g.to_ring(&big)?);
    }
    for g in b.gens() {
        gens.push(&one_minus * &g.to_ring(&big)?);
    }
    let ideal = Ideal::new(&big, gens)?;
    let gb = groebner_basis(&ideal, big.order(), opts.caps);
    gb.require_complete()?;
    let target = PolyRing::new(ring.vars().clone(), MonomialOrder::DegRevLex);
    eliminated_part(&gb, 1, &target)
}
