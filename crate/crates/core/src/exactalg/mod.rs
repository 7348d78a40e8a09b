//! Exact integer and rational matrix algebra.
//!
//! Nothing in here touches floating point. Integer entries are
//! arbitrary precision because Smith-form pivoting can blow entries up well
//! past machine width on modest inputs.

mod matrix;
mod rational;
mod smith;

pub use matrix::IntegerMatrix;
pub use rational::{Echelon, RationalMatrix};
pub use smith::{
    integer_kernel_basis, invariant_factors, rank, smith_normal_form, SmithDecomposition,
};
