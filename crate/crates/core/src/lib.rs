//! Exact lattice invariants of normal surface singularities.
//!
//! A singularity is described by the weighted dual graph of an exceptional
//! divisor ([`ResolutionGraph`]). From that graph alone this crate computes the
//! quantities determined by the quadratic lattice `(H, p_a)`: the canonical
//! cycle, the fundamental cycle (Laufer's algorithm), the fundamental and
//! arithmetic genus, and the characteristic cycle. It also simulates the
//! Kulikov blow-up construction on fibre graphs and generates Brieskorn–Pham
//! resolution graphs from their exponents.
//!
//! All arithmetic is exact: intersection numbers are machine integers, while
//! determinants, linear solves and quadratic-form decompositions go through
//! arbitrary-precision integers and rationals.

pub mod arith;
pub mod cycles;
mod error;
pub mod io;
pub mod iso;
pub mod kulikov;
pub mod lattice;
pub mod report;
pub mod seifert;

pub use error::{Error, Result};
pub use lattice::{Cycle, RationalCycle, ResolutionGraph, Vertex};
