//! Exact classifiers for the geometry of Fano–Mukai fourfolds of genus 10.
//!
//! * [`exact`]: rational arithmetic, polynomials and linear algebra.
//! * [`g2`]: the Lie algebra g2 in a Chevalley basis, adjoint-orbit data and
//!   the two invariant sextics.
//! * [`flag_sextic`]: hyperplane sections of the flag variety of P^2.
//! * [`conic_pairs`]: even-tangency classification of pairs of conics.
//! * [`ledger`]: degree-4 intersection numbers on rank-2 lattices.
//! * [`binary_cubic`]: GL2-orbits on P(M3 + C).
//! * [`pipeline`]: the decision table from g in g2 to Aut(V).
//! * [`selftest`]: seeded property suites and table reproduction.

pub mod binary_cubic;
pub mod conic_pairs;
pub mod error;
pub mod exact;
pub mod flag_sextic;
pub mod g2;
pub mod groups;
pub mod ledger;
pub mod pipeline;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
pub use exact::{RatMatrix, Rational, UniPoly};
