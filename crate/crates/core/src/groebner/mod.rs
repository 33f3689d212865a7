//! Gröbner bases, elimination and graded kernels.

mod buchberger;
mod elim;
mod graded;
mod reduce;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{same_ring, MonomialOrder, PolyError, PolyRing, Polynomial};

pub use buchberger::groebner_basis;
pub use elim::{
    eliminate, intersect, ring_map_kernel, subalgebra_member, ElimOptions, Membership, Subalgebra,
};
pub use graded::{graded_kernel_upto, GradedKernel, GradedPiece, WeightedGenerators};
pub(crate) use graded::{canonical_span, Echelon};
pub use reduce::Reducer;

/// Resource limits for a basis computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_degree: Option<u32>,
    pub max_seconds: Option<u64>,
}

impl Caps {
    pub fn none() -> Self {
        Caps::default()
    }

    pub fn degree(d: u32) -> Self {
        Caps {
            max_degree: Some(d),
            max_seconds: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GbStatus {
    Complete,
    /// All S-pairs of sugar degree at most `degree_reached` were processed.
    Capped { degree_reached: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("basis is capped at degree {degree_reached}; operation needs a complete basis")]
    Capped { degree_reached: u32 },
    #[error("degree {needed} exceeds capped basis degree {degree_reached}")]
    BeyondCap { needed: u32, degree_reached: u32 },
    #[error("variable '{0}' is not in the registry")]
    UnknownVariable(String),
    #[error("tag variable '{0}' clashes with a source variable")]
    TagClash(String),
    #[error("{0}")]
    Weights(String),
}

/// Ideal given by generators in a fixed ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Drops zero and repeated generators and makes each one monic.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self, PolyError> {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(PolyError::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            if !out.iter().any(|h| h.terms() == g.terms()) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The same generators moved into `ring` by variable name.
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Result<Ideal, PolyError> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, PolyError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(PolyError::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }
}

/// Reduced Gröbner basis, monic and sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    ring: Arc<PolyRing>,
    basis: Vec<Polynomial>,
    status: GbStatus,
    stats: GbStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_pruned: usize,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Ring of the basis elements; carries the order the basis was computed for.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn status(&self) -> GbStatus {
        self.status
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    pub fn is_complete(&self) -> bool {
        self.status == GbStatus::Complete
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Ok when the basis can decide questions in degree `d`.
    pub fn check_degree(&self, d: u32) -> Result<(), GbError> {
        match self.status {
            GbStatus::Complete => Ok(()),
            GbStatus::Capped { degree_reached } if d <= degree_reached => Ok(()),
            GbStatus::Capped { degree_reached } => Err(GbError::BeyondCap {
                needed: d,
                degree_reached,
            }),
        }
    }

    pub fn require_complete(&self) -> Result<(), GbError> {
        match self.status {
            GbStatus::Complete => Ok(()),
            GbStatus::Capped { degree_reached } => Err(GbError::Capped { degree_reached }),
        }
    }

    /// Remainder of `f` modulo the basis. `f` may live in any ring with the
    /// same variable names.
    ///
    /// On a capped basis the answer is only trusted when `f` has degree at most
    /// the degree reached, which presumes homogeneous input and a graded order.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GbError> {
        let f = if same_ring(f.ring(), &self.ring) {
            f.clone()
        } else {
            f.to_ring(&self.ring)?
        };
        if let Some(d) = f.total_degree() {
            self.check_degree(d)?;
        }
        let red = Reducer::new(&self.ring, self.basis.clone());
        Ok(red.reduce(&f).0)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GbError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when both bases describe the same ideal for the same order.
    pub fn same_basis(&self, other: &GroebnerBasis) -> bool {
        self.ring.vars() == other.ring.vars()
            && self.order() == other.order()
            && self.basis.len() == other.basis.len()
            && self
                .basis
                .iter()
                .zip(other.basis.iter())
                .all(|(a, b)| a.terms() == b.terms())
    }
}

#[cfg(test)]
mod tests;
