//! Linear representations of functions on finite sets.
//!
//! Any `f: {0, .., n-1} -> {0, .., n-1}` can be written as multiplication by
//! a constant after an injective embedding into `Z/mZ`:
//! `j(f(i)) = a j(i) (mod m)`. This crate builds such a representation from
//! the adjugate of the characteristic matrix `xI - A_f`, verifies it, and
//! searches for the smallest possible modulus on small inputs.

pub mod cli;
pub mod error;
pub mod funcgraph;
pub mod linrep;
pub mod oracle;
pub mod poly;
pub mod polymat;

pub use error::{Error, Result};
pub use funcgraph::{enumerate_functions, parse_function, FiniteFunction};
pub use linrep::{
    construct, row_polynomials, threshold, verify, Certificate, LinearRepresentation, Mode,
    RowPolynomials, XChoice,
};
pub use oracle::{search_minimal, SearchBudget, SearchOutcome};
pub use poly::IntPoly;
pub use polymat::{adjugate, apply_vector, char_matrix, determinant, IntMatrix, PolyMatrix};
