//! Exact-arithmetic kernel for the length-4 big-from-small construction.
//!
//! Given a length-4 differential graded algebra resolution `M` with divided
//! squares and Poincare duality, a regular sequence spanning a rank-3 direct
//! summand of `M_1`, and a ring element `r`, this crate builds every
//! intermediate object of the construction — the comparison map `alpha`, the
//! duality map `beta`, a Tate-like complex `B`, a morphism `c` into the
//! shifted Koszul complex, a constrained nullhomotopy `h`, and the induced
//! bilinear maps `X` and `Xt` — then assembles the five-term complex
//! `F(alpha, r)` with its multiplication and verifies, as exact polynomial
//! identities, that the result is a commutative associative DG algebra with
//! Poincare duality.
//!
//! Everything is exact: arbitrary-precision rationals or a prime field,
//! fraction-free linear algebra, and Groebner-basis lifting. There is no
//! floating point anywhere.
//!
//! The `examples/` directory is the best starting point; each example is a
//! runnable walkthrough of one capability. The `bfs4` binary wraps the same
//! entry points behind `gen`, `verify-dga`, `bfs`, and `report` subcommands.

// Index-based loops mirror the mathematical notation throughout; ranges
// over matrix rows/columns and degrees are clearer than iterator chains.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::len_without_is_empty)]

pub mod error;
pub mod scalar;
pub mod poly;
pub mod parse;
pub mod matrix;
pub mod grobner;
pub mod complexes;
pub mod multialg;
pub mod bfs;
pub mod instance;
pub mod report;
pub mod pipeline;

pub use error::{Error, Result};
