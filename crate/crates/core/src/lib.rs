//! Exact computations for the GIT fibers of length-four cycle types:
//! polynomial arithmetic and Groebner bases over the rationals, the
//! representation model of each case, its semi-invariant generators, ring
//! presentations and stability of explicit points.

pub mod exactpoly;
pub mod gitmodel;
pub mod groebner;
pub mod invariants;
pub mod presentations;
pub mod report;
pub mod stability;
