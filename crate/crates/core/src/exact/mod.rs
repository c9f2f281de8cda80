//! Exact arithmetic substrate: rationals, univariate polynomials and dense
//! linear algebra. Nothing in the classification paths uses floating point.

pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{Echelon, RatMatrix};
pub use poly::{
    compose_mod, discriminant, poly_gcd, poly_inverse_mod, resultant, squarefree_decomposition, squarefree_part,
    Degree, UniPoly,
};
pub use rational::Rational;

/// `rank(M)`
pub fn matrix_rank(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

pub fn char_poly(m: &RatMatrix) -> crate::Result<UniPoly> {
    m.char_poly()
}

pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> crate::Result<Vec<Rational>> {
    a.solve_linear(b)
}
