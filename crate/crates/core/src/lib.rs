//! Approximate and exact minimum-weight `H`-hitting sets.
//!
//! Given a fixed connected pattern `H` on `k` vertices and a vertex-weighted
//! graph `G`, find a cheap vertex set meeting every (not necessarily induced)
//! copy of `H` in `G`. [`solve`] returns a `(k - 1/2)`-approximation whenever
//! `H` has a semi-symmetric cut vertex, and falls back to the `k`-factor
//! local-ratio baseline otherwise. Every solution carries an exact rational
//! lower bound on the optimum.
//!
//! All weights and LP values are exact rationals. Solver code is generic over
//! [`Scalar`]; [`Rational`] (arbitrary precision) is the default everywhere
//! and [`Rational64`] is available for small instances.

pub mod catalog;
pub mod coloring;
pub mod document;
mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod local_ratio;
pub mod lp;
pub mod oracle;
pub mod pattern;
pub mod pipeline;
pub mod scalar;
pub mod subgraph;

pub use error::{Error, ParseError, Result};
pub use graph::{CopyHypergraph, Digraph, Graph};
pub use pattern::{classify_pattern, Classification, Pattern};
pub use pipeline::{baseline_solve, semi_symmetric_solve, solve, verify_solution};
pub use scalar::Scalar;
pub use subgraph::EnumerationBudget;

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;
/// Exact rational over `i64`; may overflow on large instances.
pub type Rational64 = num_rational::Rational64;

pub type WeightedGraph<W = Rational> = graph::WeightedGraph<W>;
pub type GoodGraph<W = Rational> = pattern::GoodGraph<W>;
pub type Solution<W = Rational> = pipeline::Solution<W>;
pub type FractionalCover<W = Rational> = lp::FractionalCover<W>;
pub type FractionalMatching<W = Rational> = lp::FractionalMatching<W>;
pub type DecompositionTrace<W = Rational> = local_ratio::DecompositionTrace<W>;
