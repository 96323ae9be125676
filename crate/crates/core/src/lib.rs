//! Numerical laboratory for diagonal flows on the space of unimodular
//! lattices `SL_n(R)/SL_n(Z)`.
//!
//! The crate is organised by subsystem:
//!
//! - [`linalg`]: exact scalars (`Q` and real quadratic fields), matrices,
//!   exterior powers and Pfaffians.
//! - [`flows`]: the flows `g_t`, `b_t`, `c_t`, the embeddings `u(v)` and
//!   `g_A`, polynomial curves and their affine spans.
//! - [`diophantine`]: best approximations, exponent estimates, `A^ext`,
//!   membership probes and Dirichlet-improvability searches.
//! - [`lattice`]: reduction, shortest vectors, Siegel counts, translate
//!   experiments and the exterior-square and descent constructions.
//! - [`instability`]: weights, `m(v, λ)` and the torus optimum of Kempf.
//! - [`rootsys`]: root systems of types A to D, saturation, minuscule weights and
//!   the three-case reflection-number check.

pub mod diophantine;
pub mod error;
pub mod flows;
pub mod instability;
pub mod lattice;
pub mod linalg;
pub mod rng;
pub mod rootsys;

pub use error::{Error, Result};
