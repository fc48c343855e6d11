//! Exact mod-2 algebra for real Stiefel manifolds.
//!
//! The library models the cohomology ring H*(V_k(R^n); Z_2) in its standard
//! presentation: a simple system of generators `a_{n-k}, ..., a_{n-1}` whose
//! square-free products form an additive basis, with squares given by
//! `a_i^2 = a_{2i}` when `2i <= n-1` and zero otherwise.  On top of the ring
//! sit the Steenrod squares, Wu-formula consistency checking for formal
//! total Stiefel-Whitney classes, exhaustive enumeration of such classes at
//! desk scale, and the truncated-polynomial computations that pin down which
//! degrees can carry a nonzero class at all.
//!
//! Everything is exact: coefficients live in GF(2) and the combinatorial
//! side runs on binomial-coefficient parities, never on full binomials.
//!
//! * [`parity`]: Lucas-style binomial parity and the mod-8 counting function.
//! * [`cohomology`]: the graded ring, its basis, products, and degree bands.
//! * [`steenrod`]: Steenrod squares and an axiom verifier.
//! * [`wu`]: formal class systems, Wu consistency, enumeration, relation tables.
//! * [`stunted`]: Z_2[t]/(t^N) arithmetic and admissible degree windows.
//! * [`cli`]: the command-line front end.

#![forbid(unsafe_code)]

pub mod cli;
pub mod cohomology;
mod error;
pub mod parity;
pub mod steenrod;
pub mod stunted;
pub mod wu;

pub use cohomology::{CohomologyClass, DegreeBand, Monomial, ReductionOrder, StiefelRing};
pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
