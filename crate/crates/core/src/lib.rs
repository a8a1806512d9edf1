//! Exact forest/Tutte polynomial evaluation and two executable counting
//! reductions: perfect matchings through a forest-polynomial oracle, and
//! independent sets through a bipartite vertex-cover oracle. A Boolean #CSP
//! layer and brute-force ground-truth counters complete the toolkit.

pub mod bis_reduction;
pub mod csp;
pub mod error;
pub mod forest;
pub mod generate;
pub mod graph;
pub mod oracles;
pub mod pm_reduction;
pub mod polynomial;
pub mod rational;
pub mod transcript;
pub mod unionfind;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, Label, Multigraph, Weight, WeightAssignment};
pub use polynomial::SparsePolynomial;
pub use rational::Rational;
