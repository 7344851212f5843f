//! Exact arithmetic kernel: polynomials and rational functions in one
//! indeterminate `t`, matrices over them, Taylor coefficients and residues
//! at `t = 1`.

mod matrix;
mod poly;
mod ratfunc;
mod text;

use thiserror::Error;

pub use matrix::{solve_fraction_free, solve_linear, solve_scalar, FractionFreeSolution, Matrix, PolyMatrix, RFMatrix};
pub use poly::Polynomial;
pub use ratfunc::{ArithOp, RationalFunction};
pub use text::integer_form;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at t = 0")]
    PoleAtZero,
    #[error("pole of order {0} at t = 1")]
    HigherOrderPole(usize),
    #[error("pole at t = {0}")]
    PoleAtPoint(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse rational function: {0}")]
    Parse(String),
}
