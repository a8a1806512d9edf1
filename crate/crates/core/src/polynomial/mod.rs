//! Exact polynomials, grid interpolation and the structured linear algebra
//! behind both reductions.

mod interpolate;
mod kronecker;
mod matrix;
mod sparse;

pub use interpolate::{
    default_nodes, grid_interpolate, interpolate_grid, interpolate_univariate, GridValues,
};
pub use kronecker::{
    build_vandermonde, kronecker_solve_dense, tau_base, FactorInverse, KroneckerSolution, KroneckerSystem, Tau,
    VandermondeFactor,
};
pub use matrix::{kron_det_check, Matrix};
pub use sparse::{Exponents, PolynomialJson, SparsePolynomial};
