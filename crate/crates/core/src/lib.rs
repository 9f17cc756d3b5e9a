//! Multilinear polynomials of perfect-matching membership functions.
//!
//! For a weight function `w` on the edges of `K_{n,n}`, the Boolean function
//! "does `G ⊆ K_{n,n}` contain a minimum-weight perfect matching?" has the
//! unique multilinear representation
//!
//! ```text
//! f(x) = Σ_{G covered by min-weight perfect matchings} (-1)^χ(G) · Π_{e ∈ G} x_e
//! ```
//!
//! where `χ(G) = |E| - |V| + C` is the cyclomatic number. Unit weights give
//! the plain perfect-matching polynomial. The crate builds these polynomials,
//! answers single-coefficient queries in polynomial time, and carries the
//! lattice and Möbius machinery used to cross-check them, including the
//! non-bipartite lattice on `K_6`, which is neither graded nor Eulerian.

pub mod covered;
pub mod edge_set;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod matching;
pub mod polynomial;

pub use covered::{coefficient_query, covered_closure, is_covered, CoefficientOracle, CoveredSet};
pub use edge_set::EdgeSet;
pub use error::{Error, Result};
pub use graph::{parse_graph, union_graphs, Family, Graph, GroundGraph};
pub use lattice::{Lattice, RankLabels};
pub use matching::{
    enumerate_min_weight_pms, enumerate_perfect_matchings, has_perfect_matching, min_weight, min_weight_forced,
    support_union, AssignmentSolver, Weight, WeightFunction,
};
pub use polynomial::{MultilinearPolynomial, Term};
